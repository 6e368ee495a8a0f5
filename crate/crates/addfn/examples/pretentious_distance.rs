//! Pretentious distances: recovering a known archimedean twist by grid
//! minimization, the triangle inequality on random unimodular functions, and
//! Euler-product diagnostics of a divisor-bounded companion function.
//!
//! Run with: `cargo run --release --example pretentious_distance`

use addfn::additive::omega;
use addfn::num::ln_u64;
use addfn::pretentious::{
    condition_ii_check, distance_minimize, divisor_bound_check, euler_products, exp_additive,
    power_spec, rho_minimize, triangle_check, MultiplicativeSpec,
};
use addfn::sieve::prime_powers_up_to;
use addfn::stats;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};

fn main() -> addfn::Result<()> {
    let x = 1_000_000u64;
    let pp = prime_powers_up_to(x)?;
    let primes = pp.primes();

    // f(p) = p^{2i} pretends to be n^{2i}: the minimizer finds lambda = 2.
    let f = MultiplicativeSpec::from_fn("p^2i", |p, k| {
        let theta = 2.0 * k as f64 * ln_u64(p);
        Some(Complex64::new(theta.cos(), theta.sin()))
    });
    let r = distance_minimize(&f, &primes, x, 5.0)?;
    println!(
        "twist recovery: lambda* = {:.5} (grid {:.5}), M = {:.6}",
        r.lambda_star, r.grid_resolution, r.value
    );

    // e(t g / B) for g = omega with small t barely pretends at all.
    let g = omega();
    let gt = exp_additive(&g, 0.05, &pp)?;
    let rg = distance_minimize(&gt, &primes, x, 5.0)?;
    println!(
        "e(0.05 omega / B): lambda* = {:.5}, M = {:.6}",
        rg.lambda_star, rg.value
    );

    // Triangle inequality on seeded random unimodular triples.
    let pr: Vec<u64> = primes.iter().copied().take_while(|&p| p <= 10_000).collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = f64::NEG_INFINITY;
    for _ in 0..200 {
        let mut mk = || {
            let angles: Vec<f64> = (0..pr.len())
                .map(|_| rng.gen::<f64>() * std::f64::consts::TAU)
                .collect();
            let pr = pr.clone();
            MultiplicativeSpec::from_fn("rand", move |p, _| {
                let i = pr.binary_search(&p).ok()?;
                Some(Complex64::new(angles[i].cos(), angles[i].sin()))
            })
        };
        let (a, b, c) = (mk(), mk(), mk());
        let (d_ac, d_ab, d_bc) = triangle_check(&a, &b, &c, &pr)?;
        worst = worst.max(d_ac - d_ab - d_bc);
    }
    println!("triangle inequality slack over 200 random triples: max(d_fh - d_fg - d_gh) = {worst:.4}");

    // Divisor-bounded companion F_z = z^{g/B}: Euler products near 1, the
    // d_3 bound satisfied, prime means above 0.99 of the unsieved mean.
    let b = stats::approx_variance_sq(&g, &pp)?.sqrt();
    let fz = power_spec(Complex64::new(1.01, 0.0), &g, b)?;
    let (h, p_euler) = euler_products(&fz, &primes)?;
    let t0 = rho_minimize(&fz, &primes, x)?;
    let div = divisor_bound_check(&fz, &pp, 3.0, 500)?;
    let cond = condition_ii_check(&fz, &primes, 0.99)?;
    println!("F_z (z = 1.01): H = {h:.5}, P = {p_euler:.5}, t0*logX = {:.4}", t0.t0_scaled);
    println!(
        "divisor bound (B = 3): {} prime powers + {} samples checked, violations: {:?}",
        div.prime_powers_checked, div.samples_checked, div.violation
    );
    println!("prime-mean margin at A = 0.99: {:.5} (worst pair {:?})", cond.min_margin, cond.worst_pair);
    Ok(())
}
