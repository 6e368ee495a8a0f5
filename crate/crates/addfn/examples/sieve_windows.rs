//! Segmented factorization basics: build an SPF table, factorize a few
//! integers, then stream windows over a range well beyond the table and
//! check the two routes agree.
//!
//! Run with: `cargo run --release --example sieve_windows`

use addfn::sieve::{build_spf_table, factorize, prime_powers_up_to, Segmenter};
use std::time::Instant;

fn main() -> addfn::Result<()> {
    let table = build_spf_table(1_000_000)?;
    println!("spf table up to 10^6: {} primes", table.prime_count());
    for n in [2u64, 97, 360, 999_983, 1] {
        let f = factorize(n, &table)?;
        println!("  {n} = {:?}", f.parts);
    }

    let pp = prime_powers_up_to(100)?;
    println!(
        "prime powers up to 100: {} entries, first few {:?}",
        pp.len(),
        pp.entries()[..6]
            .iter()
            .map(|e| e.value)
            .collect::<Vec<_>>()
    );

    // Stream a window far past the table limit and cross-check a few entries.
    let lo = 10_000_000_000u64;
    let hi = lo + (1 << 16);
    let seg = Segmenter::covering(hi).with_segment_size(1 << 14);
    let start = Instant::now();
    let mut checked = 0u64;
    for window in seg.windows(lo, hi)? {
        for (n, parts) in window.iter() {
            let product: u64 = parts.iter().map(|&(p, k)| p.pow(k as u32)).product();
            assert_eq!(product, n);
            checked += 1;
        }
    }
    println!(
        "factorized [{lo}, {hi}) in {:.2?} ({checked} integers, products verified)",
        start.elapsed()
    );
    Ok(())
}
