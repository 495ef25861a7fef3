// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Numeric evaluation of the probabilistic bounds behind the randomized
//! phase: binomial tail bounds, the constants `λ`, `M`, `p`, `c0`, and the
//! local-lemma conditions. Everything that can underflow is carried as a
//! natural logarithm.

use alloc::vec::Vec;
use core::f64::consts::{E, LN_2, SQRT_2};

use libm::{ceil, exp, log, log1p};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("argument out of domain: {0}")]
    Domain(&'static str),
    #[error("c0 deficit for case {case} is not positive ({deficit})")]
    Infeasible { case: u8, deficit: f64 },
}

/// A non-negative quantity stored as its natural logarithm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogValue {
    pub ln: f64,
}

impl LogValue {
    pub fn value(self) -> f64 {
        exp(self.ln)
    }

    /// The linear value is not representable as a normal `f64`.
    pub fn underflows(self) -> bool {
        self.ln < log(f64::MIN_POSITIVE)
    }
}

/// `P(X ≥ m) ≤ e^{m−np} (np/m)^m` for `X ~ Bin(n, p)` and `np < m < n`.
pub fn binom_upper_tail_bound(n: u64, p: f64, m: f64) -> Result<LogValue, AnalysisError> {
    let np = n as f64 * p;
    if !(p > 0.0 && p < 1.0) {
        return Err(AnalysisError::Domain("p must lie in (0, 1)"));
    }
    if !(m > np && m < n as f64) {
        return Err(AnalysisError::Domain("upper tail needs np < m < n"));
    }
    Ok(LogValue {
        ln: (m - np) + m * log(np / m),
    })
}

/// `P(X < m) ≤ e^{−(m−np)²/(2np)}` for `X ~ Bin(n, p)` and `0 < m < np`.
pub fn binom_lower_tail_bound(n: u64, p: f64, m: f64) -> Result<LogValue, AnalysisError> {
    let np = n as f64 * p;
    if !(p > 0.0 && p < 1.0) {
        return Err(AnalysisError::Domain("p must lie in (0, 1)"));
    }
    if !(m > 0.0 && m < np) {
        return Err(AnalysisError::Domain("lower tail needs 0 < m < np"));
    }
    Ok(LogValue {
        ln: -(m - np) * (m - np) / (2.0 * np),
    })
}

/// Resampling constants for a graph of maximum degree `Δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub lambda: f64,
    /// Incidence cap for `E1`; an integer since degrees are.
    pub big_m: u32,
    /// Edge inclusion probability `min(1, λ/Δ)`.
    pub p: f64,
}

/// `λ = 2(1+√2)(m + ln(3/ε))`, `M = ⌈2eλ⌉`, `p = min(1, λ/Δ)`.
pub fn derive_constants(m: u32, d: u32, eps: f64, delta: usize) -> Result<Constants, AnalysisError> {
    derive_constants_with(m, d, eps, delta, None, None)
}

/// [`derive_constants`] with optional replacements for `λ` and `M`.
pub fn derive_constants_with(
    m: u32,
    d: u32,
    eps: f64,
    delta: usize,
    lambda: Option<f64>,
    big_m: Option<u32>,
) -> Result<Constants, AnalysisError> {
    if m < d + 4 {
        return Err(AnalysisError::Domain("need m ≥ d + 4"));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(AnalysisError::Domain("ε must lie in (0, 1)"));
    }
    if delta == 0 {
        return Err(AnalysisError::Domain("Δ must be at least 1"));
    }
    let lambda = match lambda {
        Some(l) if l > 0.0 && l.is_finite() => l,
        Some(_) => return Err(AnalysisError::Domain("λ override must be positive")),
        None => formula_lambda(m, eps),
    };
    let big_m = big_m.unwrap_or_else(|| ceil(2.0 * E * lambda) as u32);
    Ok(Constants {
        lambda,
        big_m,
        p: (lambda / delta as f64).min(1.0),
    })
}

fn formula_lambda(m: u32, eps: f64) -> f64 {
    2.0 * (1.0 + SQRT_2) * (m as f64 + log(3.0 / eps))
}

/// `c0` together with its three candidate terms.
#[derive(Debug, Clone, PartialEq)]
pub struct C0Report {
    pub ln_c0: f64,
    /// `ln` of each `(ε/3 − tail)² / size` term, before the `3/(8ε)` factor.
    pub ln_terms: [f64; 3],
    pub deficits: [f64; 3],
    /// Index of the smallest term.
    pub dominant: usize,
    /// The third tail is evaluated as `e^{−(m−λ/2)²/λ}`; the unsquared
    /// exponent gives a value above 1 at the default parameters.
    pub case3_squared_exponent: bool,
}

impl C0Report {
    pub fn c0(&self) -> f64 {
        exp(self.ln_c0)
    }
}

/// `c0 = 3/(8ε) · min{ (ε/3 − t1)²/M, (ε/3 − λ t1)²/M³, (ε/3 − t3)²/m }`
/// with `t1 = e^{M−λ/2}(λ/M)^M` and `t3 = e^{−(m−λ/2)²/λ}`.
pub fn compute_c0(m: u32, eps: f64, lambda: f64, big_m: u32) -> Result<C0Report, AnalysisError> {
    if !(eps > 0.0 && eps < 1.0) || lambda <= 0.0 || big_m == 0 || m == 0 {
        return Err(AnalysisError::Domain("need ε ∈ (0,1), λ > 0, M ≥ 1, m ≥ 1"));
    }
    let mm = big_m as f64;
    let ln_t1 = (mm - lambda / 2.0) + mm * log(lambda / mm);
    let ln_t2 = log(lambda) + ln_t1;
    let half = m as f64 - lambda / 2.0;
    let ln_t3 = -(half * half) / lambda;

    let target = eps / 3.0;
    let deficits = [target - exp(ln_t1), target - exp(ln_t2), target - exp(ln_t3)];
    for (i, &d) in deficits.iter().enumerate() {
        if !(d > 0.0) {
            return Err(AnalysisError::Infeasible {
                case: i as u8 + 1,
                deficit: d,
            });
        }
    }
    let ln_terms = [
        2.0 * log(deficits[0]) - log(mm),
        2.0 * log(deficits[1]) - 3.0 * log(mm),
        2.0 * log(deficits[2]) - log(m as f64),
    ];
    let mut dominant = 0;
    for i in 1..3 {
        if ln_terms[i] < ln_terms[dominant] {
            dominant = i;
        }
    }
    Ok(C0Report {
        ln_c0: log(3.0 / (8.0 * eps)) + ln_terms[dominant],
        ln_terms,
        deficits,
        dominant,
        case3_squared_exponent: true,
    })
}

/// Symmetric local lemma: `p (d + 1) e ≤ 1`.
pub fn lll_symmetric_check(p_event: f64, d_dep: u64) -> bool {
    p_event * (d_dep as f64 + 1.0) * E <= 1.0
}

/// Parameters of the asymmetric local-lemma instantiation for `E1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LllParams {
    pub m: u32,
    pub d: u32,
    pub eps: f64,
    pub lambda: f64,
    pub big_m: u32,
}

impl LllParams {
    /// Formula values of `λ` and `M` for the given `m`, `d`, `ε`.
    pub fn from_formula(m: u32, d: u32, eps: f64) -> Result<Self, AnalysisError> {
        let c = derive_constants(m, d, eps, 1)?;
        Ok(LllParams {
            m,
            d,
            eps,
            lambda: c.lambda,
            big_m: c.big_m,
        })
    }
}

/// Log-margins `ln LHS − ln RHS` of the two local-lemma inequalities with
/// `γ1 = ln Δ / Δ⁵` and `γ2 = 1/Δ⁵`:
///
/// * pair events: `γ1 (1−γ1)^{Δ⁴} (1−γ2)^{Δ⁴} ≥ 2^{2M+d} (λ/Δ)^{m−d+1}`
/// * vertex events: `γ2 (1−γ1)^{Δ⁵} (1−γ2)^{Δ⁵} ≥ 3 e^{−c0 Δ}`
#[derive(Debug, Clone, PartialEq)]
pub struct LllReport {
    pub ln_delta: f64,
    pub margin_pair: f64,
    pub margin_vertex: f64,
    pub c0: C0Report,
}

impl LllReport {
    pub fn pair_holds(&self) -> bool {
        self.margin_pair >= 0.0
    }

    pub fn vertex_holds(&self) -> bool {
        self.margin_vertex >= 0.0
    }

    pub fn holds(&self) -> bool {
        self.pair_holds() && self.vertex_holds()
    }
}

pub fn lll_asymmetric_check(params: &LllParams, delta: f64) -> Result<LllReport, AnalysisError> {
    if !(delta >= 2.0) {
        return Err(AnalysisError::Domain("Δ must be at least 2"));
    }
    lll_asymmetric_check_ln(params, log(delta))
}

/// [`lll_asymmetric_check`] taking `ln Δ`, so astronomically large `Δ` stay
/// representable.
pub fn lll_asymmetric_check_ln(params: &LllParams, ln_delta: f64) -> Result<LllReport, AnalysisError> {
    if !(ln_delta >= LN_2) || !ln_delta.is_finite() {
        return Err(AnalysisError::Domain("Δ must be at least 2"));
    }
    if params.m < params.d + 4 {
        return Err(AnalysisError::Domain("need m − d + 1 ≥ 5"));
    }
    let c0 = compute_c0(params.m, params.eps, params.lambda, params.big_m)?;
    let l = ln_delta;
    let ln_g1 = log(l) - 5.0 * l;
    let ln_g2 = -5.0 * l;
    let e = (params.m - params.d + 1) as f64;

    // ln γ1 + Δ⁴ ln(1−γ1) + Δ⁴ ln(1−γ2) − (2M+d) ln 2 − e ln λ + e ln Δ,
    // with the −5 ln Δ of γ1 folded into the last term
    let t_pair = pow_log1m(4.0, ln_g1, l) + pow_log1m(4.0, ln_g2, l);
    let margin_pair = log(l) + t_pair
        - (2.0 * params.big_m as f64 + params.d as f64) * LN_2
        - e * log(params.lambda)
        + (e - 5.0) * l;

    let t_vertex = pow_log1m(5.0, ln_g1, l) + pow_log1m(5.0, ln_g2, l);
    let margin_vertex = ln_g2 + t_vertex - log(3.0) + c0.c0() * exp(l);

    Ok(LllReport {
        ln_delta,
        margin_pair,
        margin_vertex,
        c0,
    })
}

/// `Δ^a · ln(1 − γ)` for `γ = e^{ln_gamma}` and `Δ = e^{ln_delta}`.
fn pow_log1m(a: f64, ln_gamma: f64, ln_delta: f64) -> f64 {
    if ln_gamma < -20.0 {
        // ln(1−γ) = −γ − γ²/2 − O(γ³)
        -exp(a * ln_delta + ln_gamma) - 0.5 * exp(a * ln_delta + 2.0 * ln_gamma)
    } else {
        exp(a * ln_delta) * log1p(-exp(ln_gamma))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    /// Smallest `ln Δ` in the range at which both inequalities hold.
    pub smallest_ln_delta: Option<f64>,
    pub pair_monotone: bool,
    pub vertex_monotone: bool,
    /// `(ln Δ, pair margin, vertex margin)` on the scan grid.
    pub scan: Vec<(f64, f64, f64)>,
}

/// Scans `ln Δ` over `[ln_lo, ln_hi]` on a geometric grid, records whether
/// each margin is non-decreasing, and bisects the first grid cell where
/// both inequalities start to hold.
pub fn lll_threshold(
    params: &LllParams,
    ln_lo: f64,
    ln_hi: f64,
    grid: usize,
) -> Result<ThresholdReport, AnalysisError> {
    if !(ln_lo >= LN_2 && ln_hi > ln_lo && grid >= 2) {
        return Err(AnalysisError::Domain("need ln 2 ≤ ln_lo < ln_hi and grid ≥ 2"));
    }
    let ratio = log(ln_hi / ln_lo) / (grid - 1) as f64;
    let mut scan = Vec::with_capacity(grid);
    for i in 0..grid {
        let l = if i + 1 == grid { ln_hi } else { ln_lo * exp(ratio * i as f64) };
        let r = lll_asymmetric_check_ln(params, l)?;
        scan.push((l, r.margin_pair, r.margin_vertex));
    }
    let pair_monotone = scan.windows(2).all(|w| w[1].1 >= w[0].1);
    let vertex_monotone = scan.windows(2).all(|w| w[1].2 >= w[0].2);

    let holds = |l: f64| -> Result<bool, AnalysisError> {
        Ok(lll_asymmetric_check_ln(params, l)?.holds())
    };
    let smallest_ln_delta = match scan.iter().position(|&(_, a, b)| a >= 0.0 && b >= 0.0) {
        None => None,
        Some(0) => Some(ln_lo),
        Some(i) => {
            let (mut lo, mut hi) = (scan[i - 1].0, scan[i].0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if holds(mid)? {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            Some(hi)
        }
    };
    Ok(ThresholdReport {
        smallest_ln_delta,
        pair_monotone,
        vertex_monotone,
        scan,
    })
}

/// Extra colours spent on `E1 ∪ E2` when every vertex meets at most `M`
/// edges of `E1` and `B` of `E2`: Vizing on a graph of maximum degree
/// `M + B` needs `M + B + 1`.
pub fn palette_growth_bound(big_m: u32, b: u32) -> u32 {
    big_m + b + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upper_tail_example() {
        let b = binom_upper_tail_bound(100, 0.1, 20.0).unwrap();
        assert!((b.value() - exp(10.0) * 0.5f64.powi(20)).abs() < 1e-12);
        assert!((b.value() - 0.021006).abs() < 1e-6);
        let near = binom_upper_tail_bound(100, 0.1, 10.0 + 1e-9).unwrap();
        assert!((near.value() - 1.0).abs() < 1e-6);
        assert!(binom_upper_tail_bound(100, 0.1, 5.0).is_err());
        assert!(binom_upper_tail_bound(100, 0.1, 100.0).is_err());
    }

    #[test]
    fn lower_tail_example() {
        let b = binom_lower_tail_bound(100, 0.5, 40.0).unwrap();
        assert!((b.value() - 0.367_879_441).abs() < 1e-9);
        let near = binom_lower_tail_bound(100, 0.5, 50.0 - 1e-9).unwrap();
        assert!((near.value() - 1.0).abs() < 1e-9);
        assert!(binom_lower_tail_bound(100, 0.5, 0.0).is_err());
        assert!(binom_lower_tail_bound(100, 0.5, 60.0).is_err());
    }

    #[test]
    fn default_constants() {
        let c = derive_constants(8, 4, 1.0 / 3.0, 100).unwrap();
        assert!((c.lambda - 49.2365).abs() < 1e-3, "{}", c.lambda);
        assert_eq!(c.big_m, 268);
        assert!((c.p - c.lambda / 100.0).abs() < 1e-15);
        assert_eq!(derive_constants(8, 4, 1.0 / 3.0, 10).unwrap().p, 1.0);
        assert!(derive_constants(7, 4, 1.0 / 3.0, 10).is_err());
        assert!(derive_constants(8, 4, 1.5, 10).is_err());
    }

    #[test]
    fn overrides_accepted() {
        let c = derive_constants_with(8, 4, 1.0 / 3.0, 1000, Some(34.0), Some(81)).unwrap();
        assert_eq!((c.lambda, c.big_m), (34.0, 81));
        assert_eq!(c.p, 0.034);
        assert_eq!(palette_growth_bound(81, 2), 84);
    }

    #[test]
    fn lambda_monotone() {
        let mut prev = 0.0;
        for m in 5..30 {
            let l = formula_lambda(m, 0.3);
            assert!(l > prev);
            prev = l;
        }
        assert!(formula_lambda(8, 0.1) > formula_lambda(8, 0.2));
    }

    #[test]
    fn c0_defaults() {
        let c = derive_constants(8, 4, 1.0 / 3.0, 1).unwrap();
        let r = compute_c0(8, 1.0 / 3.0, c.lambda, c.big_m).unwrap();
        assert_eq!(r.dominant, 1);
        // the tail t1 underflows, leaving (1/9)² / M³ · 9/8
        let expected = 9.0 / 8.0 / 81.0 / (268.0f64).powi(3);
        assert!((r.c0() / expected - 1.0).abs() < 1e-9, "{}", r.c0());
        assert!((r.c0() - 7.2e-10).abs() < 0.05e-10);
    }

    #[test]
    fn c0_infeasible_when_third_tail_too_big() {
        // λ = 2m makes the third tail e⁰ = 1 ≥ ε/3
        let r = compute_c0(8, 1.0 / 3.0, 16.0, 200);
        assert!(matches!(r, Err(AnalysisError::Infeasible { case: 3, .. })));
    }

    #[test]
    fn symmetric_lll() {
        assert!(lll_symmetric_check(0.0, 100));
        assert!(!lll_symmetric_check(1.0, 0));
        assert!(lll_symmetric_check(0.01, 10));
    }

    #[test]
    fn asymmetric_fails_at_small_delta() {
        let params = LllParams::from_formula(8, 4, 1.0 / 3.0).unwrap();
        let r = lll_asymmetric_check(&params, 10.0).unwrap();
        assert!(!r.holds());
        assert!(!r.pair_holds());
        assert_eq!(r, lll_asymmetric_check(&params, 10.0).unwrap());
    }

    #[test]
    fn huge_delta_is_finite() {
        let params = LllParams::from_formula(8, 4, 1.0 / 3.0).unwrap();
        let r = lll_asymmetric_check_ln(&params, 1e200).unwrap();
        assert!(r.margin_pair.is_finite());
        assert!(r.holds());
    }
}
