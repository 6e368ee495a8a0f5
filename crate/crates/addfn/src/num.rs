//! Numeric kernels: compensated summation, double-double prefix sums, and a
//! memoized logarithm table.
//!
//! The determinism contract of this crate (identical results across thread
//! counts, 1e-9 agreement across segment sizes) hinges on error-free
//! transformations: per-window partial sums use Neumaier's compensated
//! accumulator, and sliding-window statistics use double-double prefix sums
//! so that differences of distant prefixes stay exact to well below 1e-12.

use num_complex::Complex64;
use std::sync::OnceLock;

/// Neumaier (Kahan-Babuska) compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Fold another accumulator in, preserving both compensations.
    #[inline]
    pub fn merge(&mut self, other: Kahan) {
        self.add(other.sum);
        self.comp += other.comp;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    pub fn sum_iter<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
        let mut k = Kahan::new();
        for x in iter {
            k.add(x);
        }
        k.value()
    }
}

/// Compensated accumulator for complex values (componentwise Neumaier).
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanComplex {
    re: Kahan,
    im: Kahan,
}

impl KahanComplex {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn merge(&mut self, other: KahanComplex) {
        self.re.merge(other.re);
        self.im.merge(other.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    (s, b - (s - a))
}

/// Unevaluated double-double value `hi + lo`; enough headroom that prefix
/// sums over 10^7 terms can be differenced without visible rounding.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn add_f64(self, x: f64) -> Dd {
        let (s, e) = two_sum(self.hi, x);
        let lo = self.lo + e;
        let (hi, lo) = fast_two_sum(s, lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl std::ops::Sub for Dd {
    type Output = Dd;

    #[inline]
    fn sub(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, -other.hi);
        let lo = self.lo - other.lo + e;
        let (hi, lo) = fast_two_sum(s, lo);
        Dd { hi, lo }
    }
}

const LN_TABLE_SIZE: usize = 1 << 16;
static LN_TABLE: OnceLock<Box<[f64]>> = OnceLock::new();

/// `ln(n)` with a memoized table for small `n`; base primes repeat heavily in
/// factorizations, so the table absorbs nearly every lookup in a sieve pass.
#[inline]
pub fn ln_u64(n: u64) -> f64 {
    if (n as usize) < LN_TABLE_SIZE {
        let table = LN_TABLE.get_or_init(|| {
            let mut t = vec![0.0f64; LN_TABLE_SIZE];
            for (i, slot) in t.iter_mut().enumerate().skip(1) {
                *slot = (i as f64).ln();
            }
            t.into_boxed_slice()
        });
        table[n as usize]
    } else {
        (n as f64).ln()
    }
}

/// `e(x) = exp(2*pi*i*x)` with the argument reduced mod 1 first, so large
/// phases keep full precision.
#[inline]
pub fn e_of(x: f64) -> Complex64 {
    let frac = x - x.floor();
    let theta = std::f64::consts::TAU * frac;
    Complex64::new(theta.cos(), theta.sin())
}

/// Round to `digits` significant decimal digits (used by serializers).
pub fn round_sig(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let mag = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(digits - 1 - mag);
    (x * factor).round() / factor
}

/// Relative agreement check used by determinism tests: `|a-b| <= tol * (1 + max(|a|,|b|))`.
pub fn close_rel(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_recovers_catastrophic_sum() {
        let mut k = Kahan::new();
        k.add(1e16);
        for _ in 0..10 {
            k.add(1.0);
        }
        k.add(-1e16);
        assert_eq!(k.value(), 10.0);
    }

    #[test]
    fn kahan_merge_matches_sequential() {
        let xs: Vec<f64> = (1..=1000).map(|i| 1.0 / i as f64).collect();
        let seq = Kahan::sum_iter(xs.iter().copied());
        let mut a = Kahan::new();
        let mut b = Kahan::new();
        for (i, x) in xs.iter().enumerate() {
            if i < 500 {
                a.add(*x);
            } else {
                b.add(*x);
            }
        }
        a.merge(b);
        assert!((a.value() - seq).abs() < 1e-15);
    }

    #[test]
    fn dd_prefix_differences_are_exact() {
        // Prefix sums of an awkward sequence; differences must recover the
        // slice sums to ~1e-15 even though the running total is ~1e8.
        let vals: Vec<f64> = (1..=100_000u64).map(|i| (i as f64).sqrt()).collect();
        let mut prefix = Vec::with_capacity(vals.len() + 1);
        prefix.push(Dd::ZERO);
        let mut acc = Dd::ZERO;
        for &v in &vals {
            acc = acc.add_f64(v);
            prefix.push(acc);
        }
        let window = (prefix[90_000] - prefix[89_000]).to_f64();
        let direct = Kahan::sum_iter(vals[89_000..90_000].iter().copied());
        assert!((window - direct).abs() < 1e-9 * direct.abs());
    }

    #[test]
    fn ln_table_matches_libm() {
        for n in [1u64, 2, 3, 97, 65_535, 65_536, 1_000_003] {
            assert_eq!(ln_u64(n), (n as f64).ln());
        }
    }

    #[test]
    fn e_of_reduces_argument() {
        let a = e_of(0.25);
        assert!((a.re).abs() < 1e-15 && (a.im - 1.0).abs() < 1e-15);
        let b = e_of(1e9 + 0.25);
        assert!((b - a).norm() < 1e-6);
    }

    #[test]
    fn round_sig_basics() {
        assert_eq!(round_sig(123.456789, 4), 123.5);
        assert_eq!(round_sig(0.0, 4), 0.0);
        assert_eq!(round_sig(-1.23456e-7, 3), -1.23e-7);
    }
}
