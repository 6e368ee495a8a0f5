//! Global functionals of an additive function at scale `X`.
//!
//! The two pillars are the asymptotic mean
//! `A_g(X) = sum_{p^k <= X} g(p^k) p^{-k} (1 - 1/p)` and the approximate
//! variance `B_g(X)^2 = sum_{p^k <= X} |g(p^k)|^2 / p^k`; everything else in
//! this module (tail functionals, Ruzsa's `lambda_0` and its bracket,
//! centred moments, empirical-mean comparisons) is a finite-`X` diagnostic
//! built from those sums plus one sieved pass over `[1, X]`.
//!
//! All prime-power sums run with compensated accumulation; scans over `n`
//! reduce window partials in ascending order, so outputs are reproducible
//! across thread counts.

use crate::additive::AdditiveFunctionSpec;
use crate::error::{Error, Result};
use crate::num::{Kahan, KahanComplex};
use crate::sieve::{PrimePowers, Segmenter};
use num_complex::Complex64;

/// `A_g(X) = sum_{p^k <= X} g(p^k) p^{-k} (1 - 1/p)`.
pub fn asymptotic_mean(g: &AdditiveFunctionSpec, pp: &PrimePowers) -> Result<Complex64> {
    asymptotic_mean_over(g, pp.entries())
}

/// The asymptotic-mean sum restricted to an explicit entry slice (used for
/// sub-scale evaluations `A_g(t)` against one shared prime-power list).
pub fn asymptotic_mean_over(
    g: &AdditiveFunctionSpec,
    entries: &[crate::sieve::PrimePower],
) -> Result<Complex64> {
    let mut acc = KahanComplex::new();
    for e in entries {
        let v = g.rule(e.p, e.k)?;
        acc.add(v / e.value as f64 * (1.0 - 1.0 / e.p as f64));
    }
    Ok(acc.value())
}

/// `B_g(X)^2 = sum_{p^k <= X} |g(p^k)|^2 / p^k`; nonnegative and
/// nondecreasing in `X`.
pub fn approx_variance_sq(g: &AdditiveFunctionSpec, pp: &PrimePowers) -> Result<f64> {
    approx_variance_sq_over(g, pp.entries())
}

/// The approximate-variance sum over an explicit entry slice.
pub fn approx_variance_sq_over(
    g: &AdditiveFunctionSpec,
    entries: &[crate::sieve::PrimePower],
) -> Result<f64> {
    let mut acc = Kahan::new();
    for e in entries {
        acc.add(g.rule(e.p, e.k)?.norm_sqr() / e.value as f64);
    }
    Ok(acc.value())
}

/// Finite-`X` tail functional: the share of `B_g(X)^2` carried by primes with
/// `|g(p)| > B_g(X) / eps` (strict inequality, `k = 1` terms only).
pub fn tail_functional(g: &AdditiveFunctionSpec, pp: &PrimePowers, eps: f64) -> Result<f64> {
    if !(0.0 < eps && eps < 1.0) {
        return Err(Error::Domain(format!(
            "tail functional requires 0 < eps < 1, got {eps}"
        )));
    }
    let b2 = approx_variance_sq(g, pp)?;
    if b2 <= 0.0 {
        return Err(Error::Degenerate("tail functional with B_g(X) = 0".into()));
    }
    let threshold = b2.sqrt() / eps;
    let mut acc = Kahan::new();
    for e in pp.entries() {
        if e.k != 1 {
            continue;
        }
        let v = g.rule(e.p, 1)?;
        if v.norm() > threshold {
            acc.add(v.norm_sqr() / e.p as f64);
        }
    }
    Ok(acc.value() / b2)
}

/// Share of `B_g(X)^2` carried by proper prime powers (`k >= 2`); the
/// vanishing of this ratio as `X` grows is what admits a function to the
/// prime-dominated class.
pub fn prime_power_tail(g: &AdditiveFunctionSpec, pp: &PrimePowers) -> Result<f64> {
    let b2 = approx_variance_sq(g, pp)?;
    if b2 <= 0.0 {
        return Err(Error::Degenerate("prime-power tail with B_g(X) = 0".into()));
    }
    let mut acc = Kahan::new();
    for e in pp.entries() {
        if e.k >= 2 {
            acc.add(g.rule(e.p, e.k)?.norm_sqr() / e.value as f64);
        }
    }
    Ok(acc.value() / b2)
}

/// Ruzsa's regression coefficient
/// `lambda_0(X) = 2 (log X)^{-2} sum_{p <= X} g(p) log p / p` (real `g`).
pub fn ruzsa_lambda0(g: &AdditiveFunctionSpec, pp: &PrimePowers) -> Result<f64> {
    g.require_real("ruzsa_lambda0")?;
    if pp.limit() < 3 {
        return Err(Error::Domain("ruzsa_lambda0 requires X >= 3".into()));
    }
    let mut acc = Kahan::new();
    for e in pp.entries() {
        if e.k == 1 {
            acc.add(g.rule(e.p, 1)?.re * (e.p as f64).ln() / e.p as f64);
        }
    }
    let logx = (pp.limit() as f64).ln();
    Ok(2.0 * acc.value() / (logx * logx))
}

/// `B_{g_{lambda_0}}(X)^2 + lambda_0^2`, the two-sided comparator for the
/// centred second moment.
pub fn ruzsa_bracket(g: &AdditiveFunctionSpec, pp: &PrimePowers) -> Result<f64> {
    let lam0 = ruzsa_lambda0(g, pp)?;
    let shifted = g.shift_by_log(lam0)?;
    Ok(approx_variance_sq(&shifted, pp)? + lam0 * lam0)
}

/// `(1/X) sum_{n <= X} |g(n) - center|^alpha` in one sieved pass.
pub fn centred_moment(
    g: &AdditiveFunctionSpec,
    x: u64,
    alpha: f64,
    center: Complex64,
    seg: &Segmenter,
) -> Result<f64> {
    if x < 2 {
        return Err(Error::Domain("centred_moment requires X >= 2".into()));
    }
    if alpha < 1.0 {
        return Err(Error::Domain(format!(
            "centred_moment requires alpha >= 1, got {alpha}"
        )));
    }
    let partials = seg.par_map_windows(1, x + 1, |w| {
        let vals = g.values_in(w)?;
        let mut acc = Kahan::new();
        for v in vals {
            let d = (v - center).norm();
            acc.add(if alpha == 2.0 {
                d * d
            } else if alpha == 1.0 {
                d
            } else {
                d.powf(alpha)
            });
        }
        Ok(acc)
    })?;
    let mut total = Kahan::new();
    for p in partials {
        total.merge(p);
    }
    Ok(total.value() / x as f64)
}

/// Empirical mean versus the asymptotic mean, with the deviation scaled by
/// `sqrt(log X) / B_g(X)`.
#[derive(Debug, Clone)]
pub struct MeanComparison {
    pub empirical: Complex64,
    pub asymptotic: Complex64,
    /// `|empirical - A| sqrt(log X) / B`, or the raw absolute difference when
    /// `degenerate` is set (B = 0).
    pub deviation_scaled: f64,
    pub degenerate: bool,
}

pub fn mean_vs_empirical(
    g: &AdditiveFunctionSpec,
    pp: &PrimePowers,
    seg: &Segmenter,
) -> Result<MeanComparison> {
    let x = pp.limit();
    if x < 3 {
        return Err(Error::Domain("mean_vs_empirical requires X >= 3".into()));
    }
    let partials = seg.par_map_windows(1, x + 1, |w| {
        let vals = g.values_in(w)?;
        let mut acc = KahanComplex::new();
        for v in vals {
            acc.add(v);
        }
        Ok(acc)
    })?;
    let mut total = KahanComplex::new();
    for p in partials {
        total.merge(p);
    }
    let empirical = total.value() / x as f64;
    let asymptotic = asymptotic_mean(g, pp)?;
    let b2 = approx_variance_sq(g, pp)?;
    let diff = (empirical - asymptotic).norm();
    if b2 <= 0.0 {
        Ok(MeanComparison {
            empirical,
            asymptotic,
            deviation_scaled: diff,
            degenerate: true,
        })
    } else {
        Ok(MeanComparison {
            empirical,
            asymptotic,
            deviation_scaled: diff * (x as f64).ln().sqrt() / b2.sqrt(),
            degenerate: false,
        })
    }
}

/// `sum_{X^delta < p^k <= X} 1/p^k` with its ratio to `log(1/delta)`.
#[derive(Debug, Clone, Copy)]
pub struct PpSumRange {
    pub sum: f64,
    pub ratio_to_log_inv_delta: f64,
}

pub fn pp_sum_range(pp: &PrimePowers, delta: f64) -> Result<PpSumRange> {
    if !(0.0 < delta && delta <= 1.0) {
        return Err(Error::Domain(format!(
            "pp_sum_range requires 0 < delta <= 1, got {delta}"
        )));
    }
    let (sum, ratio) = pp.tail_reciprocal_sum(delta);
    Ok(PpSumRange {
        sum,
        ratio_to_log_inv_delta: ratio,
    })
}

/// The bundle of global functionals for one `(g, X)`.
#[derive(Debug, Clone)]
pub struct GlobalStats {
    pub x: u64,
    pub a: Complex64,
    pub b2: f64,
    /// `None` for complex-valued functions (the regression needs an order).
    pub lambda0: Option<f64>,
    pub tail_f: Vec<(f64, f64)>,
    pub pp_tail: f64,
    /// Centred moments `(alpha, (1/X) sum |g(n) - A|^alpha)`.
    pub moments: Vec<(f64, f64)>,
}

pub fn global_stats(
    g: &AdditiveFunctionSpec,
    pp: &PrimePowers,
    seg: &Segmenter,
    eps_list: &[f64],
    moment_orders: &[f64],
) -> Result<GlobalStats> {
    let x = pp.limit();
    let a = asymptotic_mean(g, pp)?;
    let b2 = approx_variance_sq(g, pp)?;
    if b2 <= 0.0 {
        return Err(Error::Degenerate(
            "global_stats: B_g(X) = 0; the tail and moment ratios are undefined".into(),
        ));
    }
    let lambda0 = if g.is_real() {
        Some(ruzsa_lambda0(g, pp)?)
    } else {
        None
    };
    let mut tail_f = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        tail_f.push((eps, tail_functional(g, pp, eps)?));
    }
    let pp_tail = prime_power_tail(g, pp)?;
    let mut moments = Vec::with_capacity(moment_orders.len());
    for &alpha in moment_orders {
        moments.push((alpha, centred_moment(g, x, alpha, a, seg)?));
    }
    Ok(GlobalStats {
        x,
        a,
        b2,
        lambda0,
        tail_f,
        pp_tail,
        moments,
    })
}
