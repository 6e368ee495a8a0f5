//! Variance of an additive function restricted to a sparse set: the
//! decomposition into a main bound plus a heavy-prime sum, and shifted
//! variants of the restricted moment.
//!
//! Run with: `cargo run --release --example sparse_variance`

use addfn::additive::big_omega;
use addfn::sieve::{prime_powers_up_to, Segmenter};
use addfn::sparse::{shifted_sparse_moment, sparse_variance_decomposition, SparseSet};

fn main() -> addfn::Result<()> {
    let x = 1_000_000u64;
    let pp = prime_powers_up_to(x)?;
    let seg = Segmenter::covering(x + 1);
    let g = big_omega();

    // The progression {101 m + 1}. Its "heavy" primes are all large: any
    // p > eps X with a single multiple in S already satisfies
    // |S_p| > eps X / p, so only their reciprocal sum is informative.
    let prog = SparseSet::progression(x, 101, 1)?;
    let r = sparse_variance_decomposition(&g, &prog, &pp, 0.2, &seg)?;
    println!(
        "S = {{101m+1}}: |S| = {}, lhs = {:.5}, main bound = {:.4}, {} heavy primes (all > eps X), sum 1/p = {:.5}",
        r.set_size,
        r.lhs,
        r.main_bound,
        r.heavy_primes.len(),
        r.heavy_recip_sum
    );

    // Multiples of 101: the prime 101 carries the whole set.
    let multiples: Vec<u64> = (1..=x / 101).map(|m| 101 * m).collect();
    let mult = SparseSet::from_members(x, multiples)?;
    let r = sparse_variance_decomposition(&g, &mult, &pp, 0.05, &seg)?;
    println!(
        "S = 101 Z: heavy primes = {:?}, sum 1/p over heavy = {:.5} vs eps^-2 |S|/X = {:.3}",
        r.heavy_primes, r.heavy_recip_sum, r.sparse_bp_rhs
    );

    println!("\nshifted restricted moments (ratio to B^2):");
    for j in [-2i64, -1, 0, 1, 2] {
        let m = shifted_sparse_moment(&g, &prog, &pp, j, &seg)?;
        println!("  j = {j:>2}: {:.6}", m.ratio_to_b2);
    }
    Ok(())
}
