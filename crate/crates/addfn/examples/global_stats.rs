//! Global functionals across scales: asymptotic mean A_g(X), approximate
//! variance B_g(X)^2, Ruzsa's lambda_0, tail functionals, and the
//! Turan-Kubilius ratio (centred second moment over B^2).
//!
//! Run with: `cargo run --release --example global_stats`

use addfn::additive::{big_omega, c_log, erdos_counterexample, omega};
use addfn::sieve::{prime_powers_up_to, Segmenter};
use addfn::stats;

fn main() -> addfn::Result<()> {
    let functions = [
        omega(),
        big_omega(),
        c_log(1.0)?,
        erdos_counterexample(101)?,
    ];
    println!(
        "{:>10} {:>10} {:>10} {:>10} {:>9} {:>9} {:>9}",
        "g", "X", "A", "B^2", "lambda0", "pp_tail", "TK ratio"
    );
    for x in [10_000u64, 100_000, 1_000_000] {
        let pp = prime_powers_up_to(x)?;
        let seg = Segmenter::covering(x + 1);
        for g in &functions {
            let s = stats::global_stats(g, &pp, &seg, &[0.25], &[2.0])?;
            println!(
                "{:>10} {:>10} {:>10.4} {:>10.4} {:>9.4} {:>9.4} {:>9.4}",
                g.name(),
                x,
                s.a.re,
                s.b2,
                s.lambda0.unwrap_or(f64::NAN),
                s.pp_tail,
                s.moments[0].1 / s.b2,
            );
        }
    }

    // The empirical mean tracks A_g(X) with an O(B/sqrt(log X)) deviation.
    println!("\nempirical vs asymptotic mean at X = 10^6:");
    let pp = prime_powers_up_to(1_000_000)?;
    let seg = Segmenter::covering(1_000_001);
    for g in &functions {
        let m = stats::mean_vs_empirical(g, &pp, &seg)?;
        println!(
            "  {:>10}: empirical = {:.5}, A = {:.5}, scaled deviation = {:.4}",
            g.name(),
            m.empirical.re,
            m.asymptotic.re,
            m.deviation_scaled
        );
    }
    Ok(())
}
