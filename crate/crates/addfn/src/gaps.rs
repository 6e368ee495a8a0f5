//! Gap statistics `|g(n) - g(n-1)|`, the decrease set
//! `{n : g(n) < g(n-1)}`, and the exact telescoping identity tying them
//! together.
//!
//! Throughout this module `g(0) = 0` by convention, so the gap at `n = 1`
//! is `|g(1)| = 0`. Membership in the decrease set uses the strict
//! comparison `g(n) < g(n-1)`; ties are non-members.
//!
//! Scans are single-pass: each window carries one boundary value
//! (`g(lo - 1)`, evaluated by trial division), windows are processed in
//! parallel, and partials merge in ascending order.

use crate::additive::AdditiveFunctionSpec;
use crate::error::{Error, Result};
use crate::num::Kahan;
use crate::sieve::{PrimePowers, Segmenter};
use crate::stats;

/// Moment order for gap averages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapOrder {
    L1,
    L2,
}

fn boundary_value(g: &AdditiveFunctionSpec, n: u64, seg: &Segmenter) -> Result<num_complex::Complex64> {
    if n == 0 {
        Ok(num_complex::Complex64::new(0.0, 0.0))
    } else {
        g.value_at(n, seg.base())
    }
}

/// `(1/X) sum_{n <= X} |g(n) - g(n-1)|^order` with `g(0) = 0`.
pub fn gap_moment(g: &AdditiveFunctionSpec, x: u64, order: GapOrder, seg: &Segmenter) -> Result<f64> {
    if x < 2 {
        return Err(Error::Domain("gap_moment requires X >= 2".into()));
    }
    let partials = seg.par_map_windows(1, x + 1, |w| {
        let vals = g.values_in(w)?;
        let mut prev = boundary_value(g, w.lo() - 1, seg)?;
        let mut acc = Kahan::new();
        for v in vals {
            let d = (v - prev).norm();
            acc.add(match order {
                GapOrder::L1 => d,
                GapOrder::L2 => d * d,
            });
            prev = v;
        }
        Ok(acc)
    })?;
    let mut total = Kahan::new();
    for p in partials {
        total.merge(p);
    }
    Ok(total.value() / x as f64)
}

/// The decrease set `{n <= X : g(n) < g(n-1)}` with its density and, when
/// requested, the count of members divisible by each listed prime.
#[derive(Debug, Clone)]
pub struct DecreaseCensus {
    pub x: u64,
    pub members: Vec<u64>,
    pub density: f64,
    pub per_prime_counts: Vec<(u64, u64)>,
}

/// Exact decrease-set membership for a real-valued `g`.
pub fn decrease_census(
    g: &AdditiveFunctionSpec,
    x: u64,
    primes: Option<&[u64]>,
    seg: &Segmenter,
) -> Result<DecreaseCensus> {
    g.require_real("decrease_census")?;
    if x < 1 {
        return Err(Error::Domain("decrease_census requires X >= 1".into()));
    }
    let partials = seg.par_map_windows(1, x + 1, |w| {
        let vals = g.real_values_in(w)?;
        let mut prev = boundary_value(g, w.lo() - 1, seg)?.re;
        let mut members = Vec::new();
        for (i, &v) in vals.iter().enumerate() {
            if v < prev {
                members.push(w.lo() + i as u64);
            }
            prev = v;
        }
        Ok(members)
    })?;
    let members: Vec<u64> = partials.into_iter().flatten().collect();
    let density = members.len() as f64 / x as f64;
    let per_prime_counts = primes
        .unwrap_or(&[])
        .iter()
        .map(|&p| (p, members.iter().filter(|&&n| n % p == 0).count() as u64))
        .collect();
    Ok(DecreaseCensus {
        x,
        members,
        density,
        per_prime_counts,
    })
}

/// Both sides of the exact identity
/// `sum_{n <= X} |g(n) - g(n-1)| = g(floor(X)) + 2 sum_{n in B(X)} (g(n-1) - g(n))`.
#[derive(Debug, Clone, Copy)]
pub struct TelescopingCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub abs_diff: f64,
}

/// Computes both sides independently in one pass; `abs_diff` should be below
/// `1e-8 * (1 + |lhs|)` for any real `g`.
pub fn telescoping_check(g: &AdditiveFunctionSpec, x: u64, seg: &Segmenter) -> Result<TelescopingCheck> {
    g.require_real("telescoping_check")?;
    if x < 1 {
        return Err(Error::Domain("telescoping_check requires X >= 1".into()));
    }
    let partials = seg.par_map_windows(1, x + 1, |w| {
        let vals = g.real_values_in(w)?;
        let mut prev = boundary_value(g, w.lo() - 1, seg)?.re;
        let mut lhs = Kahan::new();
        let mut decrease = Kahan::new();
        for &v in &vals {
            lhs.add((v - prev).abs());
            if v < prev {
                decrease.add(prev - v);
            }
            prev = v;
        }
        Ok((lhs, decrease))
    })?;
    let mut lhs = Kahan::new();
    let mut decrease = Kahan::new();
    for (l, d) in partials {
        lhs.merge(l);
        decrease.merge(d);
    }
    let g_at_x = g.value_at(x, seg.base())?.re;
    let lhs = lhs.value();
    let rhs = g_at_x + 2.0 * decrease.value();
    Ok(TelescopingCheck {
        lhs,
        rhs,
        abs_diff: (lhs - rhs).abs(),
    })
}

/// One row of the gap-versus-moment table: averages over `n <= y`.
#[derive(Debug, Clone, Copy)]
pub struct GapMomentRow {
    pub y: u64,
    pub gap_l1: f64,
    pub gap_l2: f64,
    /// First centred moment `(1/y) sum |g(n) - A_g(y)|`.
    pub moment1: f64,
    /// Second centred moment.
    pub moment2: f64,
}

/// Gap averages and centred moments across a dyadic grid of scales
/// `y in (X / log X, X]`, plus the decay bound term implied by the measured
/// gap ratio: `sqrt(loglog(1/eps) / log(1/eps)) + (log X)^{-1/800}`.
#[derive(Debug, Clone)]
pub struct GapVsMomentReport {
    pub x: u64,
    pub b: f64,
    pub rows: Vec<GapMomentRow>,
    /// Max over rows of `gap_l1 / B_g(X)`.
    pub eps: f64,
    /// `None` when the measured eps is too large for the double log.
    pub bound_term: Option<f64>,
}

pub fn gap_vs_moment_report(
    g: &AdditiveFunctionSpec,
    x: u64,
    pp: &PrimePowers,
    seg: &Segmenter,
) -> Result<GapVsMomentReport> {
    if x < 1000 {
        return Err(Error::Domain("gap_vs_moment_report requires X >= 10^3".into()));
    }
    if pp.limit() < x {
        return Err(Error::Domain(
            "gap_vs_moment_report: prime powers do not reach X".into(),
        ));
    }
    let b2 = stats::approx_variance_sq_over(g, pp.up_to(x))?;
    let b = b2.sqrt();
    let floor = (x as f64 / (x as f64).ln()) as u64;
    let mut scales = Vec::new();
    let mut y = x;
    while y > floor.max(10) {
        scales.push(y);
        y /= 2;
    }
    scales.reverse();

    let mut rows = Vec::with_capacity(scales.len());
    let mut eps = 0.0f64;
    for &y in &scales {
        let gap_l1 = gap_moment(g, y, GapOrder::L1, seg)?;
        let gap_l2 = gap_moment(g, y, GapOrder::L2, seg)?;
        let a = stats::asymptotic_mean_over(g, pp.up_to(y))?;
        let moment1 = stats::centred_moment(g, y, 1.0, a, seg)?;
        let moment2 = stats::centred_moment(g, y, 2.0, a, seg)?;
        if b > 0.0 {
            eps = eps.max(gap_l1 / b);
        }
        rows.push(GapMomentRow {
            y,
            gap_l1,
            gap_l2,
            moment1,
            moment2,
        });
    }
    let bound_term = decay_bound_term(eps, x);
    Ok(GapVsMomentReport {
        x,
        b,
        rows,
        eps,
        bound_term,
    })
}

/// `sqrt(loglog(1/eps)/log(1/eps)) + (log X)^{-1/800}` when
/// `log(1/eps) > 1`, else `None`.
pub fn decay_bound_term(eps: f64, x: u64) -> Option<f64> {
    let tail = ((x as f64).ln()).powf(-1.0 / 800.0);
    if eps <= 0.0 {
        return Some(tail);
    }
    let l = (1.0 / eps).ln();
    if l <= 1.0 {
        return None;
    }
    Some((l.ln() / l).sqrt() + tail)
}
