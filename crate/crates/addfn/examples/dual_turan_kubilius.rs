//! Dual Turan-Kubilius ratios for three test sequences, plus the exact
//! Ramanujan-sum identity that powers the two-prime variant.
//!
//! Run with: `cargo run --release --example dual_turan_kubilius`

use addfn::sieve::BasePrimes;
use addfn::sparse::{crt_exp_identity_check, dual_tk_ratio, dual_tk_two_prime_ratio, TwoPrimeMode};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};

fn main() -> addfn::Result<()> {
    let x = 100_000usize;
    let primes = BasePrimes::up_to(x as u64).primes().to_vec();

    let ones = vec![Complex64::new(1.0, 0.0); x];
    let mut progression = vec![Complex64::new(0.0, 0.0); x];
    let mut n = 102;
    while n <= x {
        progression[n - 1] = Complex64::new(1.0, 0.0);
        n += 101;
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let pm1: Vec<Complex64> = (0..x)
        .map(|_| Complex64::new(if rng.gen::<bool>() { 1.0 } else { -1.0 }, 0.0))
        .collect();

    println!("{:>14} {:>12} {:>12}", "sequence", "one-prime", "two-prime");
    for (name, a) in [("ones", &ones), ("progression", &progression), ("pm1", &pm1)] {
        let r1 = dual_tk_ratio(a, &primes)?;
        let r2 = dual_tk_two_prime_ratio(a, &primes, TwoPrimeMode::default())?;
        println!("{name:>14} {:>12.5} {:>12.5}", r1.ratio, r2.ratio);
    }

    println!("\nCRT identity (p 1_(p|n) - 1)(q 1_(q|n) - 1) = Ramanujan sum c_pq(n):");
    for (p, q, n) in [(3u64, 5u64, 7u64), (3, 5, 15), (3, 5, 3), (7, 11, 22)] {
        let c = crt_exp_identity_check(p, q, n)?;
        println!(
            "  p={p} q={q} n={n}: lhs = {}, closed form = {}, |sum - lhs| = {:.2e}",
            c.lhs,
            c.ramanujan,
            (c.rhs - Complex64::new(c.lhs as f64, 0.0)).norm()
        );
    }
    Ok(())
}
