//! The acceptance suite: sixteen checks covering exact identities and
//! calibrated finite-scale properties. Every tolerance here was confirmed by
//! an independent oracle run before being frozen.
//!
//! Runtime limits are part of the stated checks and are asserted alongside
//! the numeric conditions.

use crate::additive::{big_omega, c_log, erdos_counterexample, omega};
use crate::error::Result;
use crate::gaps::{self, GapOrder};
use crate::interval;
use crate::num::{close_rel, ln_u64};
use crate::pretentious;
use crate::report::run::{build_sequence, mini_suite};
use crate::rigidity;
use crate::sieve::{prime_powers_up_to, BasePrimes, PrimePowers, Segmenter};
use crate::sparse::{self, TwoPrimeMode};
use crate::stats;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use std::time::Instant;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub seconds: f64,
    pub details: String,
}

struct Ctx {
    segment_size: usize,
    pp5: PrimePowers,
    pp6: PrimePowers,
    seg5: Segmenter,
    seg6: Segmenter,
}

impl Ctx {
    fn build(segment_size: usize) -> Result<Ctx> {
        Ok(Ctx {
            segment_size,
            pp5: prime_powers_up_to(100_000)?,
            pp6: prime_powers_up_to(1_000_000)?,
            seg5: Segmenter::covering(100_001).with_segment_size(segment_size),
            seg6: Segmenter::covering(1_000_001).with_segment_size(segment_size),
        })
    }

    fn seg7(&self) -> Segmenter {
        Segmenter::covering(10_000_001).with_segment_size(self.segment_size)
    }
}

fn check(
    out: &mut Vec<CriterionResult>,
    id: usize,
    name: &'static str,
    runtime_limit: Option<f64>,
    f: impl FnOnce() -> Result<(bool, String)>,
) {
    let start = Instant::now();
    let (passed, details) = match f() {
        Ok((p, d)) => (p, d),
        Err(e) => (false, format!("error: {e}")),
    };
    let seconds = start.elapsed().as_secs_f64();
    let (passed, details) = match runtime_limit {
        Some(limit) if seconds >= limit => (
            false,
            format!("{details}; runtime {seconds:.2}s exceeded {limit}s"),
        ),
        _ => (passed, details),
    };
    out.push(CriterionResult {
        id,
        name,
        passed,
        seconds,
        details,
    });
}

/// Runs all sixteen criteria; results come back in order.
pub fn run_all(segment_size: usize) -> Vec<CriterionResult> {
    let mut out = Vec::new();
    let ctx = match Ctx::build(segment_size) {
        Ok(c) => c,
        Err(e) => {
            out.push(CriterionResult {
                id: 0,
                name: "context",
                passed: false,
                seconds: 0.0,
                details: format!("failed to build shared context: {e}"),
            });
            return out;
        }
    };

    check(&mut out, 1, "exact telescoping identity", Some(1.0), || {
        let mut details = String::new();
        let mut ok = true;
        for g in [
            big_omega(),
            omega(),
            c_log(3.0)?,
            erdos_counterexample(5)?,
        ] {
            let t = gaps::telescoping_check(&g, 100_000, &ctx.seg5)?;
            let pass = t.abs_diff <= 1e-8 * (1.0 + t.lhs.abs());
            ok &= pass;
            details.push_str(&format!("{}: |lhs-rhs|={:.2e}; ", g.name(), t.abs_diff));
        }
        Ok((ok, details))
    });

    check(&mut out, 2, "counterexample census", Some(5.0), || {
        let x = 1_000_000u64;
        let g = erdos_counterexample(101)?;
        let census = gaps::decrease_census(&g, x, None, &ctx.seg6)?;
        let expected: Vec<u64> = (1..).map(|m| 101 * m + 1).take_while(|&n| n <= x).collect();
        let progression_ok = census.members == expected && census.members.len() == 9900;
        // g(n) = log n exactly off the multiples of 101; sampled n also avoid
        // the decrease set itself so each sampled point satisfies both facts.
        let base = BasePrimes::covering(x + 1);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xADD);
        let mut checked = 0u32;
        let mut log_ok = true;
        while checked < 10_000 {
            let n = rng.gen_range(1..=x);
            if n % 101 == 0 || n % 101 == 1 {
                continue;
            }
            let v = g.value_at(n, &base)?.re;
            if (v - (n as f64).ln()).abs() > 1e-9 {
                log_ok = false;
                break;
            }
            checked += 1;
        }
        Ok((
            progression_ok && log_ok,
            format!(
                "census count = {} (progression match: {progression_ok}), {checked} sampled points match log n",
                census.members.len()
            ),
        ))
    });

    check(&mut out, 3, "B_{c log} asymptotic ratio", Some(10.0), || {
        let pp7 = prime_powers_up_to(10_000_000)?;
        let b = stats::approx_variance_sq(&c_log(2.0)?, &pp7)?.sqrt();
        let ratio = b / ((2.0 / 2f64.sqrt()) * (1e7f64).ln());
        Ok((
            (0.9..=1.1).contains(&ratio),
            format!("ratio = {ratio:.6} (oracle 1.0152)"),
        ))
    });

    check(&mut out, 4, "tail functional of c log vanishes", None, || {
        let f = stats::tail_functional(&c_log(1.0)?, &ctx.pp6, 0.4)?;
        Ok((f == 0.0, format!("F(0.4) = {f}")))
    });

    check(&mut out, 5, "CRT exponential-sum identity", Some(1.0), || {
        let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29];
        for &p in &primes {
            for &q in &primes {
                if p == q {
                    continue;
                }
                for n in 1..=(p * q) {
                    let c = sparse::crt_exp_identity_check(p, q, n)?;
                    if c.lhs != c.ramanujan {
                        return Ok((false, format!("integer mismatch at ({p},{q},{n})")));
                    }
                    if (c.rhs - Complex64::new(c.lhs as f64, 0.0)).norm() > 1e-9 * (p * q) as f64 {
                        return Ok((false, format!("sum mismatch at ({p},{q},{n})")));
                    }
                }
            }
        }
        Ok((true, "exact for all distinct p, q <= 30 and n <= pq".into()))
    });

    check(&mut out, 6, "Turan-Kubilius ratio <= 4", Some(10.0), || {
        let mut details = String::new();
        let mut ok = true;
        for g in [omega(), big_omega()] {
            for (pp, seg, x) in [
                (&ctx.pp5, &ctx.seg5, 100_000u64),
                (&ctx.pp6, &ctx.seg6, 1_000_000),
            ] {
                let a = stats::asymptotic_mean(&g, pp)?;
                let m2 = stats::centred_moment(&g, x, 2.0, a, seg)?;
                let ratio = m2 / stats::approx_variance_sq(&g, pp)?;
                ok &= ratio <= 4.0;
                details.push_str(&format!("{}@{x}: {ratio:.4}; ", g.name()));
            }
        }
        Ok((ok, details))
    });

    check(&mut out, 7, "Ruzsa bracket two-sidedness", None, || {
        let mut details = String::new();
        let mut ok = true;
        for g in [
            omega(),
            big_omega(),
            c_log(1.0)?,
            erdos_counterexample(101)?,
        ] {
            let a = stats::asymptotic_mean(&g, &ctx.pp6)?;
            let m2 = stats::centred_moment(&g, 1_000_000, 2.0, a, &ctx.seg6)?;
            let bracket = stats::ruzsa_bracket(&g, &ctx.pp6)?;
            let ratio = m2 / bracket;
            ok &= (1.0 / 64.0..=64.0).contains(&ratio);
            details.push_str(&format!("{}: {ratio:.4}; ", g.name()));
        }
        Ok((ok, details))
    });

    check(&mut out, 8, "interval l1 decay for bigomega", Some(60.0), || {
        let x = 10_000_000u64;
        let pp7 = prime_powers_up_to(x)?;
        let seg7 = ctx.seg7();
        let g = big_omega();
        let mut l1s = Vec::new();
        for h in [10u64, 1000, 100_000] {
            let r = interval::interval_discrepancy(&g, x, h, &pp7, &seg7)?;
            if r.l1 > r.trivial_bound_chain {
                return Ok((false, format!("l1 > chain at h = {h}")));
            }
            l1s.push((h, r.l1, r.l1_over_b));
        }
        let decreasing = l1s[0].1 > l1s[1].1 && l1s[1].1 > l1s[2].1;
        let small = l1s[2].2 <= 0.2;
        Ok((
            decreasing && small,
            format!(
                "l1 = {:.5} > {:.5} > {:.5}, l1/B(1e5) = {:.5}",
                l1s[0].1, l1s[1].1, l1s[2].1, l1s[2].2
            ),
        ))
    });

    check(&mut out, 9, "interval l2 smallness", Some(60.0), || {
        let r_log = interval::interval_discrepancy(
            &c_log(1.0)?,
            1_000_000,
            1000,
            &ctx.pp6,
            &ctx.seg6,
        )?;
        let pp7 = prime_powers_up_to(10_000_000)?;
        let r_om =
            interval::interval_discrepancy(&big_omega(), 10_000_000, 10_000, &pp7, &ctx.seg7())?;
        let ok = r_log.l2_over_b2 <= 1e-3 && r_om.l2_over_b2 <= 0.3;
        Ok((
            ok,
            format!(
                "clog: l2/B2 = {:.2e} (cap 1e-3); bigomega: {:.2e} (cap 0.3)",
                r_log.l2_over_b2, r_om.l2_over_b2
            ),
        ))
    });

    check(&mut out, 10, "gap lower bound for omega", None, || {
        let gap = gaps::gap_moment(&omega(), 1_000_000, GapOrder::L1, &ctx.seg6)?;
        let bound = 0.5 * (1e6f64).ln().ln().sqrt();
        Ok((
            gap >= bound,
            format!("gap l1 = {gap:.4} >= {bound:.4}"),
        ))
    });

    check(&mut out, 11, "dual Turan-Kubilius ratios <= 8", None, || {
        let mut details = String::new();
        let mut ok = true;
        for x in [10_000u64, 100_000] {
            let primes = BasePrimes::up_to(x).primes().to_vec();
            for name in ["ones", "erdos:101", "pm1"] {
                let a = build_sequence(name, x, 42)?;
                let r1 = sparse::dual_tk_ratio(&a, &primes)?.ratio;
                let r2 =
                    sparse::dual_tk_two_prime_ratio(&a, &primes, TwoPrimeMode::default())?.ratio;
                ok &= r1 <= 8.0 && r2 <= 8.0;
                details.push_str(&format!("{name}@{x}: {r1:.3}/{r2:.3}; "));
            }
        }
        Ok((ok, details))
    });

    check(&mut out, 12, "pretentious minimizer and triangle", None, || {
        let x = 1_000_000u64;
        let primes = ctx.pp6.primes();
        let f = pretentious::MultiplicativeSpec::from_fn("p^2i", |p, k| {
            let theta = 2.0 * k as f64 * ln_u64(p);
            Some(Complex64::new(theta.cos(), theta.sin()))
        });
        let r = pretentious::distance_minimize(&f, &primes, x, 5.0)?;
        let min_ok = (r.lambda_star - 2.0).abs() <= 2.0 * r.grid_resolution && r.value <= 0.05;

        let pr4: Vec<u64> = BasePrimes::up_to(10_000).primes().to_vec();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        let mut tri_ok = true;
        for _ in 0..1000 {
            let mut mk = || {
                let angles: Vec<f64> = (0..pr4.len())
                    .map(|_| rng.gen::<f64>() * std::f64::consts::TAU)
                    .collect();
                let pr = pr4.clone();
                pretentious::MultiplicativeSpec::from_fn("rand", move |p, _| {
                    let i = pr.binary_search(&p).ok()?;
                    Some(Complex64::new(angles[i].cos(), angles[i].sin()))
                })
            };
            let (f, g, h) = (mk(), mk(), mk());
            let (d_fh, d_fg, d_gh) = pretentious::triangle_check(&f, &g, &h, &pr4)?;
            if d_fh > d_fg + d_gh + 1e-9 {
                tri_ok = false;
                break;
            }
        }
        Ok((
            min_ok && tri_ok,
            format!(
                "lambda* = {:.5} (grid {:.5}), M = {:.5}; triangle x1000: {}",
                r.lambda_star, r.grid_resolution, r.value, tri_ok
            ),
        ))
    });

    check(&mut out, 13, "affine rigidity fit for c log", None, || {
        let x = 1_000_000u64;
        let g = c_log(3.0)?;
        let fit = rigidity::affine_fit(&g, x, 0.25, 16, &ctx.pp6)?;
        let ae = rigidity::ae_log_report(&g, x, fit.lambda, fit.eta, 0.1, &ctx.pp6, &ctx.seg6)?;
        let lambda_ok = (2.94..=3.06).contains(&fit.lambda);
        let resid_ok = fit.max_scaled_residual <= 0.05;
        let slow_ok = fit
            .slow_variation
            .iter()
            .all(|d| d.d_lambda_scaled.abs() <= 0.1);
        let ae_ok = ae <= 0.01;
        Ok((
            lambda_ok && resid_ok && slow_ok && ae_ok,
            format!(
                "lambda = {:.4}, max resid/B = {:.4}, slow deltas = {:?}, ae = {ae:.4}",
                fit.lambda,
                fit.max_scaled_residual,
                fit.slow_variation
                    .iter()
                    .map(|d| (d.u, (d.d_lambda_scaled * 1e4).round() / 1e4))
                    .collect::<Vec<_>>()
            ),
        ))
    });

    check(&mut out, 14, "weak-rigidity verdicts", None, || {
        let x = 1_000_000u64;
        let params = rigidity::WeakErdosParams::default();
        let r_log = rigidity::weak_erdos_pipeline(&c_log(2.0)?, x, &params, &ctx.pp6, &ctx.seg6)?;
        let r_cx =
            rigidity::weak_erdos_pipeline(&erdos_counterexample(101)?, x, &params, &ctx.pp6, &ctx.seg6)?;
        let r_om = rigidity::weak_erdos_pipeline(&big_omega(), x, &params, &ctx.pp6, &ctx.seg6)?;
        let ok = r_log.verdict == rigidity::WeakErdosVerdict::ConsistentWithCLog
            && r_cx.verdict == rigidity::WeakErdosVerdict::HypothesisFailedDecreaseDensity
            && (r_cx.decrease_density - 0.0099).abs() < 1e-12
            && r_om.verdict == rigidity::WeakErdosVerdict::HypothesisFailedDecreaseDensity
            // measured 0.432 (the early ~0.3 guess undercounted; both fail
            // the (log X)^{-2.1} threshold of 0.004 by a wide margin)
            && (0.25..=0.5).contains(&r_om.decrease_density);
        Ok((
            ok,
            format!(
                "clog2: {}; erdos101: {} (density {:.4}); bigomega: {} (density {:.4})",
                r_log.verdict, r_cx.verdict, r_cx.decrease_density, r_om.verdict, r_om.decrease_density
            ),
        ))
    });

    check(&mut out, 15, "sieve-set density vs Euler product", None, || {
        let x = 1_000_000u64;
        let params = interval::mr_sieve_params(10_000, x, 0.05, Some(&[(100, 10_000)]))?;
        let d = interval::s_complement_density(x, &params, &ctx.seg6)?;
        let euler = d.euler_product.unwrap_or(f64::NAN);
        let within = (d.measured / euler - 1.0).abs() <= 0.2;
        let formula = interval::mr_sieve_params(10_000, x, 0.05, None)?;
        Ok((
            within && formula.degenerate,
            format!(
                "measured = {:.4}, product = {:.4} (ratio {:.3}); formula params J = {} (degenerate {})",
                d.measured,
                euler,
                d.measured / euler,
                formula.level_count(),
                formula.degenerate
            ),
        ))
    });

    check(&mut out, 16, "determinism across threads and segments", None, || {
        let run_with = |threads: usize, seg: usize| -> Result<(String, Vec<f64>)> {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| crate::error::Error::Configuration(format!("pool: {e}")))?;
            pool.install(|| mini_suite(200_000, 50, seg))
        };
        let (json_a, nums_a) = run_with(1, 1 << 12)?;
        let (json_b, nums_b) = run_with(4, 1 << 12)?;
        let (_, nums_c) = run_with(1, 1 << 20)?;
        let bytes_ok = json_a == json_b;
        let thread_ok = nums_a
            .iter()
            .zip(&nums_b)
            .all(|(a, b)| close_rel(*a, *b, 1e-9));
        let segment_ok = nums_a
            .iter()
            .zip(&nums_c)
            .all(|(a, b)| close_rel(*a, *b, 1e-9));
        Ok((
            bytes_ok && thread_ok && segment_ok,
            format!(
                "byte-identical across threads: {bytes_ok}; segment-size agreement to 1e-9: {segment_ok}"
            ),
        ))
    });

    out
}
