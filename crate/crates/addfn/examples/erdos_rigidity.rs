//! Logarithm rigidity in action: affine fits of A_g(t), slow variation of
//! the fitted coefficient across scales, growth dichotomy, and the verdict
//! pipeline separating c log from everything else.
//!
//! Run with: `cargo run --release --example erdos_rigidity`

use addfn::additive::{big_omega, c_log, erdos_counterexample};
use addfn::rigidity::{
    affine_fit, ae_log_report, best_lambda_l2, elliott_sum, growth_dichotomy_report,
    weak_erdos_pipeline, WeakErdosParams,
};
use addfn::sieve::{prime_powers_up_to, Segmenter};

fn main() -> addfn::Result<()> {
    let x = 1_000_000u64;
    let pp = prime_powers_up_to(x)?;
    let seg = Segmenter::covering(x + 1);
    let functions = [c_log(3.0)?, erdos_counterexample(101)?, big_omega()];

    println!(
        "{:>10} {:>9} {:>9} {:>9} {:>11} {:>9}",
        "g", "lambda", "eta", "resid/B", "elliott/B", "ae(0.1)"
    );
    for g in &functions {
        let fit = affine_fit(g, x, 0.25, 16, &pp)?;
        let ae = ae_log_report(g, x, fit.lambda, fit.eta, 0.1, &pp, &seg)?;
        let es = elliott_sum(g, x, 0.25, &pp)?;
        println!(
            "{:>10} {:>9.4} {:>9.4} {:>9.4} {:>11.4} {:>9.4}",
            g.name(),
            fit.lambda,
            fit.eta,
            fit.max_scaled_residual,
            es / fit.b,
            ae
        );
    }

    println!("\nleast-squares lambda vs Ruzsa lambda0 at X = 10^6:");
    for g in &functions {
        let bl = best_lambda_l2(g, &pp)?;
        println!(
            "  {:>10}: lambda* = {:.4}, lambda0 = {:.4}, residual = {:.4}",
            g.name(),
            bl.lambda_star,
            bl.lambda0,
            bl.residual
        );
    }

    println!("\ngrowth dichotomy (log B / loglog X across scales):");
    let scales = [10_000u64, 100_000, 1_000_000];
    for g in &functions {
        let rows = growth_dichotomy_report(g, &scales, &pp)?;
        let cells: Vec<String> = rows
            .iter()
            .map(|r| format!("{:.3}", r.log_b_over_loglog))
            .collect();
        println!("  {:>10}: {}", g.name(), cells.join(" -> "));
    }

    println!("\nverdicts:");
    let params = WeakErdosParams::default();
    for g in [c_log(2.0)?, erdos_counterexample(101)?, big_omega()] {
        let r = weak_erdos_pipeline(&g, x, &params, &pp, &seg)?;
        println!(
            "  {:>10}: {} (decrease density {:.4}, gap l1 {:.5})",
            g.name(),
            r.verdict,
            r.decrease_density,
            r.gap_l1
        );
    }
    Ok(())
}
