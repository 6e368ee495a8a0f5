//! Prime enumeration and complete factorization of integer ranges.
//!
//! Two routes are provided and cross-checked by the tests: a flat
//! smallest-prime-factor table ([`SpfTable`]) for ranges that fit in memory,
//! and a segmented sieve ([`Segmenter`]) that factorizes `[lo, hi)` window by
//! window with bounded memory. Both produce identical factorizations; the
//! segmented route is the workhorse for scans at the 10^7 scale.

use crate::error::{Error, Result};
use crate::num::Kahan;
use rayon::prelude::*;

/// Hard cap for the flat SPF table; beyond this only segmented mode works.
pub const SPF_TABLE_CAP: u64 = 1 << 31;

/// Default window length for segmented scans (L2-friendly, amortizes the
/// base-prime scan).
pub const DEFAULT_SEGMENT_SIZE: usize = 1 << 20;

/// A prime power `p^k <= limit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePower {
    pub p: u64,
    pub k: u8,
    pub value: u64,
}

/// Complete factorization of `n`, parts sorted by increasing prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    pub parts: Vec<(u64, u8)>,
}

impl Factorization {
    /// Multiplies the parts back together (used by consistency checks).
    pub fn product(&self) -> u64 {
        self.parts
            .iter()
            .fold(1u64, |acc, &(p, k)| acc * p.pow(k as u32))
    }
}

fn isqrt_u64(n: u64) -> u64 {
    n.isqrt()
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let words = n / 128 + 1;
    // odd-only bitset: bit i represents 2i+1
    let mut composite = vec![0u64; words];
    let mut p = 3u64;
    while p * p <= limit {
        let idx = (p / 2) as usize;
        if composite[idx / 64] & (1 << (idx % 64)) == 0 {
            let mut m = p * p;
            while m <= limit {
                let j = (m / 2) as usize;
                composite[j / 64] |= 1 << (j % 64);
                m += 2 * p;
            }
        }
        p += 2;
    }
    let mut primes = Vec::with_capacity((limit as f64 / (limit as f64).ln().max(1.0) * 1.2) as usize + 16);
    primes.push(2);
    let mut q = 3u64;
    while q <= limit {
        let idx = (q / 2) as usize;
        if composite[idx / 64] & (1 << (idx % 64)) == 0 {
            primes.push(q);
        }
        q += 2;
    }
    primes
}

/// An immutable, shareable list of all primes up to `limit`.
#[derive(Debug, Clone)]
pub struct BasePrimes {
    limit: u64,
    primes: Vec<u64>,
}

impl BasePrimes {
    pub fn up_to(limit: u64) -> BasePrimes {
        BasePrimes {
            limit,
            primes: simple_sieve(limit),
        }
    }

    /// Primes sufficient to factorize every `n < hi`.
    pub fn covering(hi: u64) -> BasePrimes {
        let need = if hi <= 2 { 2 } else { isqrt_u64(hi - 1).max(2) };
        BasePrimes::up_to(need)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn covers(&self, hi: u64) -> bool {
        hi <= 2 || self.limit >= isqrt_u64(hi - 1)
    }

    /// Trial-division factorization; needs `self` to cover `n + 1`.
    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::Domain("factorize: n must be >= 1".into()));
        }
        if !self.covers(n + 1) {
            return Err(Error::Configuration(format!(
                "base primes up to {} cannot factorize {} (need primes up to {})",
                self.limit,
                n,
                isqrt_u64(n)
            )));
        }
        let mut rem = n;
        let mut parts = Vec::new();
        for &p in &self.primes {
            if p * p > rem {
                break;
            }
            if rem.is_multiple_of(p) {
                let mut k = 0u8;
                while rem.is_multiple_of(p) {
                    rem /= p;
                    k += 1;
                }
                parts.push((p, k));
            }
        }
        if rem > 1 {
            parts.push((rem, 1));
        }
        Ok(Factorization { n, parts })
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        if n < 2 {
            return Ok(false);
        }
        let f = self.factorize(n)?;
        Ok(f.parts.len() == 1 && f.parts[0].1 == 1)
    }
}

/// Smallest-prime-factor table for `2 <= n <= limit`.
#[derive(Debug)]
pub struct SpfTable {
    limit: u64,
    spf: Vec<u32>,
}

/// Builds the SPF table; answers smallest-prime-factor queries for all
/// `2 <= n <= limit`.
pub fn build_spf_table(limit: u64) -> Result<SpfTable> {
    if limit < 2 {
        return Err(Error::Capacity(format!(
            "spf table limit {limit} below minimum 2"
        )));
    }
    if limit > SPF_TABLE_CAP {
        return Err(Error::Capacity(format!(
            "spf table limit {limit} above cap {SPF_TABLE_CAP}; use segmented mode"
        )));
    }
    let n = limit as usize;
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    Ok(SpfTable { limit, spf })
}

impl SpfTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Smallest prime factor of `n` (`2 <= n <= limit`).
    pub fn spf(&self, n: u64) -> Result<u64> {
        if n < 2 || n > self.limit {
            return Err(Error::Domain(format!(
                "spf query {n} outside [2, {}]",
                self.limit
            )));
        }
        Ok(self.spf[n as usize] as u64)
    }

    pub fn prime_count(&self) -> u64 {
        (2..=self.limit as usize)
            .filter(|&i| self.spf[i] as usize == i)
            .count() as u64
    }
}

/// Complete prime factorization via the SPF table, parts sorted by `p`.
pub fn factorize(n: u64, table: &SpfTable) -> Result<Factorization> {
    if n == 0 || n > table.limit {
        return Err(Error::Domain(format!(
            "factorize: n = {n} outside [1, {}]",
            table.limit
        )));
    }
    let mut parts = Vec::new();
    let mut rem = n;
    while rem > 1 {
        let p = table.spf[rem as usize] as u64;
        let mut k = 0u8;
        while rem.is_multiple_of(p) {
            rem /= p;
            k += 1;
        }
        parts.push((p, k));
    }
    Ok(Factorization { n, parts })
}

/// Factorizations of every integer in `[lo, hi)`, stored in one flat buffer.
#[derive(Debug, Clone)]
pub struct FactorizationWindow {
    lo: u64,
    hi: u64,
    starts: Vec<u32>,
    lens: Vec<u8>,
    parts: Vec<(u64, u8)>,
}

impl FactorizationWindow {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.hi == self.lo
    }

    /// Factorization parts of `n` (which must lie in `[lo, hi)`).
    pub fn parts_of(&self, n: u64) -> &[(u64, u8)] {
        let i = (n - self.lo) as usize;
        let s = self.starts[i] as usize;
        &self.parts[s..s + self.lens[i] as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &[(u64, u8)])> {
        (self.lo..self.hi).map(move |n| (n, self.parts_of(n)))
    }

    pub fn factorization(&self, n: u64) -> Factorization {
        Factorization {
            n,
            parts: self.parts_of(n).to_vec(),
        }
    }
}

/// Sieves one window `[lo, hi)` against `base`; `base` must cover `hi`.
fn factorize_window(lo: u64, hi: u64, base: &BasePrimes) -> FactorizationWindow {
    debug_assert!(lo >= 1 && hi >= lo);
    let len = (hi - lo) as usize;
    let sqrt_cap = if hi <= 2 { 1 } else { isqrt_u64(hi - 1) };

    // Pass 1: count distinct marking primes per index (no division).
    let mut counts = vec![0u8; len];
    for &p in base.primes() {
        if p > sqrt_cap {
            break;
        }
        let mut m = lo.div_ceil(p) * p;
        while m < hi {
            counts[(m - lo) as usize] += 1;
            m += p;
        }
    }

    // Offsets with one slack slot per index for a possible large cofactor.
    let mut starts = vec![0u32; len];
    let mut total = 0u32;
    for i in 0..len {
        starts[i] = total;
        total += counts[i] as u32 + 1;
    }

    // Pass 2: divide out marking primes, then record leftovers.
    let mut parts = vec![(0u64, 0u8); total as usize];
    let mut lens = vec![0u8; len];
    let mut rem: Vec<u64> = (lo..hi).collect();
    for &p in base.primes() {
        if p > sqrt_cap {
            break;
        }
        let mut m = lo.div_ceil(p) * p;
        while m < hi {
            let i = (m - lo) as usize;
            let mut k = 0u8;
            while rem[i].is_multiple_of(p) {
                rem[i] /= p;
                k += 1;
            }
            parts[starts[i] as usize + lens[i] as usize] = (p, k);
            lens[i] += 1;
            m += p;
        }
    }
    for i in 0..len {
        if rem[i] > 1 {
            parts[starts[i] as usize + lens[i] as usize] = (rem[i], 1);
            lens[i] += 1;
        }
    }

    FactorizationWindow {
        lo,
        hi,
        starts,
        lens,
        parts,
    }
}

/// Segmented factorization driver. Immutable and shareable; windows can be
/// produced in parallel but are always delivered (or merged) in ascending
/// `lo` order so downstream reductions are deterministic.
#[derive(Debug, Clone)]
pub struct Segmenter {
    base: BasePrimes,
    segment_size: usize,
}

impl Segmenter {
    /// A segmenter able to factorize any `n < hi`, with the default segment size.
    pub fn covering(hi: u64) -> Segmenter {
        Segmenter {
            base: BasePrimes::covering(hi),
            segment_size: DEFAULT_SEGMENT_SIZE,
        }
    }

    pub fn new(base: BasePrimes, segment_size: usize) -> Result<Segmenter> {
        if segment_size == 0 {
            return Err(Error::Configuration("segment size must be positive".into()));
        }
        Ok(Segmenter { base, segment_size })
    }

    pub fn with_segment_size(mut self, segment_size: usize) -> Segmenter {
        assert!(segment_size > 0, "segment size must be positive");
        self.segment_size = segment_size;
        self
    }

    pub fn base(&self) -> &BasePrimes {
        &self.base
    }

    pub fn segment_size(&self) -> usize {
        self.segment_size
    }

    fn check_range(&self, lo: u64, hi: u64) -> Result<()> {
        if lo < 1 || hi < lo {
            return Err(Error::Domain(format!("bad range [{lo}, {hi})")));
        }
        if !self.base.covers(hi) {
            return Err(Error::Configuration(format!(
                "base primes up to {} are insufficient for range ending at {} (need primes up to {})",
                self.base.limit(),
                hi,
                isqrt_u64(hi.saturating_sub(1))
            )));
        }
        Ok(())
    }

    fn window_bounds(&self, lo: u64, hi: u64) -> Vec<(u64, u64)> {
        let mut bounds = Vec::new();
        let mut a = lo;
        while a < hi {
            let b = hi.min(a + self.segment_size as u64);
            bounds.push((a, b));
            a = b;
        }
        bounds
    }

    /// Sequential stream of factorization windows covering `[lo, hi)`.
    pub fn windows(&self, lo: u64, hi: u64) -> Result<impl Iterator<Item = FactorizationWindow> + '_> {
        self.check_range(lo, hi)?;
        Ok(self
            .window_bounds(lo, hi)
            .into_iter()
            .map(move |(a, b)| factorize_window(a, b, &self.base)))
    }

    /// Applies `f` to every window (possibly in parallel) and returns the
    /// results in ascending window order.
    pub fn par_map_windows<T, F>(&self, lo: u64, hi: u64, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&FactorizationWindow) -> Result<T> + Sync,
    {
        self.check_range(lo, hi)?;
        self.window_bounds(lo, hi)
            .into_par_iter()
            .map(|(a, b)| f(&factorize_window(a, b, &self.base)))
            .collect()
    }

    /// Parallel map over windows followed by an in-order sequential fold.
    pub fn fold_windows<T, A, F, G>(&self, lo: u64, hi: u64, map: F, init: A, fold: G) -> Result<A>
    where
        T: Send,
        F: Fn(&FactorizationWindow) -> Result<T> + Sync,
        G: FnMut(A, T) -> A,
    {
        let partials = self.par_map_windows(lo, hi, map)?;
        Ok(partials.into_iter().fold(init, fold))
    }
}

/// Streamed equivalent of factorizing `[lo, hi)` in one pass; the
/// concatenated windows give the complete factorization of every `n` in the
/// range, independent of segment size.
pub fn segmented_factorizations(
    lo: u64,
    hi: u64,
    seg: &Segmenter,
) -> Result<impl Iterator<Item = FactorizationWindow> + '_> {
    seg.windows(lo, hi)
}

/// All primes up to `limit`, exposed as sorted prime powers with cached values.
#[derive(Debug, Clone)]
pub struct PrimePowers {
    limit: u64,
    entries: Vec<PrimePower>,
}

/// All `p^k <= x`, each exactly once, sorted by value.
pub fn prime_powers_up_to(x: u64) -> Result<PrimePowers> {
    if x < 2 {
        return Err(Error::Domain(format!("prime powers require x >= 2, got {x}")));
    }
    let primes = simple_sieve(x);
    let mut entries = Vec::with_capacity(primes.len() + 64);
    for &p in &primes {
        let mut value = p;
        let mut k = 1u8;
        loop {
            entries.push(PrimePower { p, k, value });
            if value > x / p {
                break;
            }
            value *= p;
            k += 1;
        }
    }
    entries.sort_unstable_by_key(|pp| pp.value);
    Ok(PrimePowers { limit: x, entries })
}

impl PrimePowers {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn entries(&self) -> &[PrimePower] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The primes `p <= limit` in increasing order.
    pub fn primes(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .entries
            .iter()
            .filter(|pp| pp.k == 1)
            .map(|pp| pp.p)
            .collect();
        v.sort_unstable();
        v
    }

    /// Entries restricted to `value <= t` (a prefix, since entries are sorted).
    pub fn up_to(&self, t: u64) -> &[PrimePower] {
        let idx = self.entries.partition_point(|pp| pp.value <= t);
        &self.entries[..idx]
    }

    /// `sum over p^k in (x^delta, x] of 1/p^k`, and its ratio to `log(1/delta)`.
    pub fn tail_reciprocal_sum(&self, delta: f64) -> (f64, f64) {
        let x = self.limit as f64;
        let cut = x.powf(delta);
        let mut acc = Kahan::new();
        for pp in &self.entries {
            if (pp.value as f64) > cut {
                acc.add(1.0 / pp.value as f64);
            }
        }
        let sum = acc.value();
        if delta >= 1.0 {
            (0.0, 0.0)
        } else {
            (sum, sum / (1.0 / delta).ln())
        }
    }
}
