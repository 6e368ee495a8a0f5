//! Sieve-backed statistics for additive arithmetic functions.
//!
//! An arithmetic function `g` is *additive* when `g(nm) = g(n) + g(m)` for
//! coprime `n, m`; it is determined by its values on prime powers. This crate
//! evaluates such functions over large integer ranges with a segmented
//! smallest-prime-factor sieve and computes the finite-`X` functionals that
//! drive their local/global comparison theory:
//!
//! * global functionals: asymptotic mean `A_g(X)`, approximate variance
//!   `B_g(X)^2`, tail functionals, centred moments, Ruzsa's `lambda_0`
//!   ([`stats`]),
//! * gap statistics, the decrease set `{n : g(n) < g(n-1)}`, and the exact
//!   telescoping identity that relates them ([`gaps`]),
//! * short-interval discrepancies between window averages and dyadic long
//!   averages, with the associated sieve-band machinery ([`interval`]),
//! * pretentious distances of multiplicative twists `e(t g / B)` and Euler
//!   product diagnostics ([`pretentious`]),
//! * dual Turan-Kubilius ratios, Ramanujan-sum identities, and sparse-set
//!   variance decompositions ([`sparse`]),
//! * least-squares logarithm fits, slow-variation profiles, and the
//!   weak-rigidity verdict pipeline ([`rigidity`]).
//!
//! Everything is deterministic: window production may be parallel, but all
//! reductions merge in ascending window order with compensated summation, so
//! results do not depend on thread count.
//!
//! The `addfn` binary (see [`report`]) exposes the same operations as CLI
//! subcommands; the crate's `examples/` directory has one runnable example
//! per subsystem.
//!
//! ```
//! use addfn::{additive, sieve, stats};
//!
//! let g = additive::big_omega();
//! let pp = sieve::prime_powers_up_to(10_000)?;
//! let seg = sieve::Segmenter::covering(10_001);
//! let s = stats::global_stats(&g, &pp, &seg, &[0.25], &[1.0, 2.0])?;
//! assert!(s.b2 > 9.0 && s.b2 < 10.0);
//! # Ok::<(), addfn::Error>(())
//! ```

pub mod additive;
pub mod error;
pub mod gaps;
pub mod interval;
pub mod num;
pub mod pretentious;
pub mod report;
pub mod rigidity;
pub mod sieve;
pub mod sparse;
pub mod stats;

pub use additive::{AdditiveFunctionSpec, Mode, ValueKind};
pub use error::{Error, Result};
pub use sieve::{BasePrimes, Factorization, FactorizationWindow, PrimePower, PrimePowers, Segmenter, SpfTable};
