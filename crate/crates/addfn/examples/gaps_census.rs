//! Gap statistics and the decrease set: the exact telescoping identity, the
//! census of {n : g(n) < g(n-1)}, and the counterexample family whose
//! decrease set is a single arithmetic progression.
//!
//! Run with: `cargo run --release --example gaps_census`

use addfn::additive::{big_omega, c_log, erdos_counterexample, omega};
use addfn::gaps::{decrease_census, gap_moment, telescoping_check, GapOrder};
use addfn::sieve::Segmenter;

fn main() -> addfn::Result<()> {
    let x = 1_000_000u64;
    let seg = Segmenter::covering(x + 1);
    println!(
        "{:>10} {:>12} {:>12} {:>10} {:>10} {:>12}",
        "g", "gap l1", "gap l2", "|B(X)|", "density", "telescope"
    );
    for g in [
        omega(),
        big_omega(),
        c_log(1.0)?,
        erdos_counterexample(101)?,
    ] {
        let l1 = gap_moment(&g, x, GapOrder::L1, &seg)?;
        let l2 = gap_moment(&g, x, GapOrder::L2, &seg)?;
        let census = decrease_census(&g, x, None, &seg)?;
        let tel = telescoping_check(&g, x, &seg)?;
        println!(
            "{:>10} {:>12.6} {:>12.6} {:>10} {:>10.4} {:>12.2e}",
            g.name(),
            l1,
            l2,
            census.members.len(),
            census.density,
            tel.abs_diff
        );
    }

    // The counterexample's decrease set is exactly {101 m + 1}.
    let census = decrease_census(&erdos_counterexample(101)?, x, Some(&[2, 101]), &seg)?;
    println!(
        "\nerdos:101 census: first members {:?}, count = {} = floor((X-1)/101)",
        &census.members[..4],
        census.members.len()
    );
    for (p, count) in census.per_prime_counts {
        println!("  members divisible by {p}: {count}");
    }
    Ok(())
}
