//! Additive arithmetic functions represented by their prime-power rule.
//!
//! A spec pairs a rule `(p, k) -> g(p^k)` with an extension mode:
//! *strongly additive* functions satisfy `g(p^k) = g(p)`, *completely
//! additive* ones `g(p^k) = k g(p)`, and *general* ones carry an explicit
//! per-prime-power table. Values may be real or complex; operations that
//! need an order relation (decrease sets, least-squares log fits) reject
//! complex-valued specs.
//!
//! Custom functions load from a text file:
//!
//! ```text
//! mode=strong            # or general | complete
//! # optional horizon; evaluations at prime powers beyond it are errors
//! limit=1000000
//! 2 1.0                  # strong/complete rows: p value
//! 3 0.5
//! ```
//!
//! General-mode rows are `p k value`. Unlisted prime powers evaluate to 0
//! (within the declared horizon, when one is given).

use crate::error::{Error, Result};
use crate::num::ln_u64;
use crate::sieve::{BasePrimes, Factorization, FactorizationWindow, PrimePowers};
use num_complex::Complex64;
use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    General,
    StronglyAdditive,
    CompletelyAdditive,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::General => write!(f, "general"),
            Mode::StronglyAdditive => write!(f, "strong"),
            Mode::CompletelyAdditive => write!(f, "complete"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueKind {
    Real,
    Complex,
}

type Rule = Arc<dyn Fn(u64, u8) -> Option<Complex64> + Send + Sync>;

/// An additive function, immutable and cheap to clone; evaluation is pure
/// and reentrant.
#[derive(Clone)]
pub struct AdditiveFunctionSpec {
    name: String,
    mode: Mode,
    value_kind: ValueKind,
    rule: Rule,
}

impl fmt::Debug for AdditiveFunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AdditiveFunctionSpec")
            .field("name", &self.name)
            .field("mode", &self.mode)
            .field("value_kind", &self.value_kind)
            .finish()
    }
}

/// The built-in functions reachable from the CLI `--g` grammar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin {
    /// Number of distinct prime factors.
    Omega,
    /// Number of prime factors with multiplicity.
    BigOmega,
    /// `c log n`.
    CLog(f64),
    /// Completely additive; `log p` at every prime except `g(p0) = p0`.
    ErdosCounterexample(u64),
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl AdditiveFunctionSpec {
    /// Spec from a rule on primes, extended by `mode` (must not be `General`).
    pub fn from_prime_fn<F>(name: impl Into<String>, mode: Mode, value_kind: ValueKind, f: F) -> Result<Self>
    where
        F: Fn(u64) -> Option<Complex64> + Send + Sync + 'static,
    {
        if mode == Mode::General {
            return Err(Error::Domain(
                "from_prime_fn requires strong or complete mode".into(),
            ));
        }
        let complete = mode == Mode::CompletelyAdditive;
        let rule: Rule = Arc::new(move |p, k| {
            let v = f(p)?;
            Some(if complete { v * k as f64 } else { v })
        });
        Ok(Self {
            name: name.into(),
            mode,
            value_kind,
            rule,
        })
    }

    /// Spec from an explicit `(p, k)` rule (general mode).
    pub fn from_general_fn<F>(name: impl Into<String>, value_kind: ValueKind, f: F) -> Self
    where
        F: Fn(u64, u8) -> Option<Complex64> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            mode: Mode::General,
            value_kind,
            rule: Arc::new(f),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn value_kind(&self) -> ValueKind {
        self.value_kind
    }

    pub fn is_real(&self) -> bool {
        self.value_kind == ValueKind::Real
    }

    pub fn require_real(&self, op: &'static str) -> Result<()> {
        if self.is_real() {
            Ok(())
        } else {
            Err(Error::ComplexValued(op))
        }
    }

    /// `g(p^k)`; errors if the rule is undefined there.
    #[inline]
    pub fn rule(&self, p: u64, k: u8) -> Result<Complex64> {
        (self.rule)(p, k).ok_or(Error::Evaluation { p, k })
    }

    /// `g(p)`.
    #[inline]
    pub fn prime_value(&self, p: u64) -> Result<Complex64> {
        self.rule(p, 1)
    }

    /// Sum of the rule over factorization parts; `g(1) = 0`.
    pub fn evaluate_parts(&self, parts: &[(u64, u8)]) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(p, k) in parts {
            acc += self.rule(p, k)?;
        }
        Ok(acc)
    }

    pub fn evaluate(&self, f: &Factorization) -> Result<Complex64> {
        self.evaluate_parts(&f.parts)
    }

    /// `g(n)` by trial division against `base`.
    pub fn value_at(&self, n: u64, base: &BasePrimes) -> Result<Complex64> {
        if n == 0 {
            // the g(0) = 0 convention is applied by gap/telescoping callers
            return Ok(Complex64::new(0.0, 0.0));
        }
        self.evaluate(&base.factorize(n)?)
    }

    /// `g(n)` for every `n` in a factorization window, in order.
    pub fn values_in(&self, w: &FactorizationWindow) -> Result<Vec<Complex64>> {
        let mut out = Vec::with_capacity(w.len());
        for (_, parts) in w.iter() {
            out.push(self.evaluate_parts(parts)?);
        }
        Ok(out)
    }

    /// Real parts of `g(n)` over a window; callers check `is_real` first.
    pub fn real_values_in(&self, w: &FactorizationWindow) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(w.len());
        for (_, parts) in w.iter() {
            out.push(self.evaluate_parts(parts)?.re);
        }
        Ok(out)
    }

    /// Pointwise scalar multiple `c * g`.
    pub fn scale(&self, c: Complex64) -> Self {
        let inner = Arc::clone(&self.rule);
        let value_kind = if self.value_kind == ValueKind::Complex || c.im != 0.0 {
            ValueKind::Complex
        } else {
            ValueKind::Real
        };
        Self {
            name: format!("scale({},{c})", self.name),
            mode: self.mode,
            value_kind,
            rule: Arc::new(move |p, k| inner(p, k).map(|v| c * v)),
        }
    }

    /// Pointwise sum `g + h` (additive functions form a vector space).
    pub fn add(&self, other: &Self) -> Self {
        let a = Arc::clone(&self.rule);
        let b = Arc::clone(&other.rule);
        let mode = match (self.mode, other.mode) {
            (Mode::CompletelyAdditive, Mode::CompletelyAdditive) => Mode::CompletelyAdditive,
            (Mode::StronglyAdditive, Mode::StronglyAdditive) => Mode::StronglyAdditive,
            _ => Mode::General,
        };
        let value_kind = if self.value_kind == ValueKind::Complex || other.value_kind == ValueKind::Complex {
            ValueKind::Complex
        } else {
            ValueKind::Real
        };
        Self {
            name: format!("{}+{}", self.name, other.name),
            mode,
            value_kind,
            rule: Arc::new(move |p, k| Some(a(p, k)? + b(p, k)?)),
        }
    }

    /// The strongly additive function agreeing with `g` at primes:
    /// `g*(p^k) = g(p)`.
    pub fn strongly_additive_projection(&self) -> Self {
        if self.mode == Mode::StronglyAdditive {
            return self.clone();
        }
        let inner = Arc::clone(&self.rule);
        Self {
            name: format!("strong({})", self.name),
            mode: Mode::StronglyAdditive,
            value_kind: self.value_kind,
            rule: Arc::new(move |p, _| inner(p, 1)),
        }
    }

    /// `g(p^k) - lambda * k * log p`; complete additivity is preserved, any
    /// other mode becomes general (the shift is k-dependent).
    pub fn shift_by_log(&self, lambda: f64) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::Domain("shift_by_log: lambda must be finite".into()));
        }
        let inner = Arc::clone(&self.rule);
        let mode = match self.mode {
            Mode::CompletelyAdditive => Mode::CompletelyAdditive,
            _ => Mode::General,
        };
        Ok(Self {
            name: format!("shift({},{lambda})", self.name),
            mode,
            value_kind: self.value_kind,
            rule: Arc::new(move |p, k| {
                inner(p, k).map(|v| v - lambda * k as f64 * ln_u64(p))
            }),
        })
    }

    /// Splits the strong projection of `g` by prime size: the first returned
    /// function lives on primes `p <= X` with `|g(p)| <= B_g(X)/delta`, the
    /// second on the complement. Both are strongly additive and sum to `g*`
    /// at primes.
    pub fn split_by_prime_size(&self, x: u64, delta: f64, pp: &PrimePowers) -> Result<(Self, Self)> {
        if !(0.0 < delta && delta < 1.0) {
            return Err(Error::Domain(format!(
                "split_by_prime_size: delta = {delta} outside (0, 1)"
            )));
        }
        let b2 = crate::stats::approx_variance_sq(self, pp)?;
        if b2 <= 0.0 {
            return Err(Error::Degenerate(
                "split_by_prime_size: B_g(X) = 0".into(),
            ));
        }
        let threshold = b2.sqrt() / delta;
        let inner_c = Arc::clone(&self.rule);
        let inner_r = Arc::clone(&self.rule);
        let in_class = move |rule: &Rule, p: u64| -> Option<bool> {
            if p > x {
                return Some(false);
            }
            rule(p, 1).map(|v| v.norm() <= threshold)
        };
        let g_c = Self {
            name: format!("{}|small", self.name),
            mode: Mode::StronglyAdditive,
            value_kind: self.value_kind,
            rule: Arc::new(move |p, _| {
                let keep = in_class(&inner_c, p)?;
                if keep {
                    inner_c(p, 1)
                } else {
                    Some(Complex64::new(0.0, 0.0))
                }
            }),
        };
        let inner_c2 = Arc::clone(&self.rule);
        let in_class2 = move |p: u64| -> Option<bool> {
            if p > x {
                return Some(false);
            }
            inner_c2(p, 1).map(|v| v.norm() <= threshold)
        };
        let g_rest = Self {
            name: format!("{}|large", self.name),
            mode: Mode::StronglyAdditive,
            value_kind: self.value_kind,
            rule: Arc::new(move |p, _| {
                let keep = in_class2(p)?;
                if keep {
                    Some(Complex64::new(0.0, 0.0))
                } else {
                    inner_r(p, 1)
                }
            }),
        };
        Ok((g_c, g_rest))
    }
}

/// Constructs one of the named functions.
pub fn builtin(b: Builtin) -> Result<AdditiveFunctionSpec> {
    match b {
        Builtin::Omega => AdditiveFunctionSpec::from_prime_fn(
            "omega",
            Mode::StronglyAdditive,
            ValueKind::Real,
            |_| Some(Complex64::new(1.0, 0.0)),
        ),
        Builtin::BigOmega => AdditiveFunctionSpec::from_prime_fn(
            "bigomega",
            Mode::CompletelyAdditive,
            ValueKind::Real,
            |_| Some(Complex64::new(1.0, 0.0)),
        ),
        Builtin::CLog(c) => {
            if !c.is_finite() {
                return Err(Error::Domain("c_log: c must be finite".into()));
            }
            AdditiveFunctionSpec::from_prime_fn(
                format!("clog:{c}"),
                Mode::CompletelyAdditive,
                ValueKind::Real,
                move |p| Some(Complex64::new(c * ln_u64(p), 0.0)),
            )
        }
        Builtin::ErdosCounterexample(p0) => {
            if !is_prime_u64(p0) {
                return Err(Error::Domain(format!(
                    "erdos counterexample: p0 = {p0} is not prime"
                )));
            }
            AdditiveFunctionSpec::from_prime_fn(
                format!("erdos:{p0}"),
                Mode::CompletelyAdditive,
                ValueKind::Real,
                move |p| {
                    Some(Complex64::new(
                        if p == p0 { p0 as f64 } else { ln_u64(p) },
                        0.0,
                    ))
                },
            )
        }
    }
}

pub fn omega() -> AdditiveFunctionSpec {
    builtin(Builtin::Omega).expect("omega is always valid")
}

pub fn big_omega() -> AdditiveFunctionSpec {
    builtin(Builtin::BigOmega).expect("big_omega is always valid")
}

pub fn c_log(c: f64) -> Result<AdditiveFunctionSpec> {
    builtin(Builtin::CLog(c))
}

pub fn erdos_counterexample(p0: u64) -> Result<AdditiveFunctionSpec> {
    builtin(Builtin::ErdosCounterexample(p0))
}

/// Loads a custom function from the `mode=`/rows text format.
pub fn from_file(path: &Path) -> Result<AdditiveFunctionSpec> {
    let text = std::fs::read_to_string(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "file".into());
    from_str(&name, &text)
}

/// Parses the custom-function format from a string (see module docs).
pub fn from_str(name: &str, text: &str) -> Result<AdditiveFunctionSpec> {
    let mut mode: Option<Mode> = None;
    let mut limit: Option<u64> = None;
    let mut prime_rows: HashMap<u64, f64> = HashMap::new();
    let mut general_rows: HashMap<(u64, u8), f64> = HashMap::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse(format!("line {}: {msg}", lineno + 1));
        if let Some(rest) = line.strip_prefix("mode=") {
            mode = Some(match rest.trim() {
                "general" => Mode::General,
                "strong" => Mode::StronglyAdditive,
                "complete" => Mode::CompletelyAdditive,
                other => return Err(err(format!("unknown mode `{other}`"))),
            });
            continue;
        }
        if let Some(rest) = line.strip_prefix("limit=") {
            limit = Some(
                rest.trim()
                    .parse::<u64>()
                    .map_err(|e| err(format!("bad limit: {e}")))?,
            );
            continue;
        }
        let mode = mode.ok_or_else(|| err("rows before mode= line".into()))?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        match mode {
            Mode::General => {
                if fields.len() != 3 {
                    return Err(err(format!(
                        "general rows need `p k value`, got {} fields",
                        fields.len()
                    )));
                }
                let p: u64 = fields[0].parse().map_err(|e| err(format!("bad p: {e}")))?;
                let k: u8 = fields[1].parse().map_err(|e| err(format!("bad k: {e}")))?;
                let v: f64 = fields[2].parse().map_err(|e| err(format!("bad value: {e}")))?;
                if !is_prime_u64(p) {
                    return Err(err(format!("{p} is not prime")));
                }
                if k == 0 {
                    return Err(err("exponent k must be >= 1".into()));
                }
                general_rows.insert((p, k), v);
            }
            _ => {
                if fields.len() != 2 {
                    return Err(err(format!(
                        "strong/complete rows need `p value`, got {} fields",
                        fields.len()
                    )));
                }
                let p: u64 = fields[0].parse().map_err(|e| err(format!("bad p: {e}")))?;
                let v: f64 = fields[1].parse().map_err(|e| err(format!("bad value: {e}")))?;
                if !is_prime_u64(p) {
                    return Err(err(format!("{p} is not prime")));
                }
                prime_rows.insert(p, v);
            }
        }
    }

    let mode = mode.ok_or_else(|| Error::Parse("missing mode= line".into()))?;
    let beyond_limit = move |p: u64, k: u8| -> bool {
        match limit {
            None => false,
            Some(l) => k as f64 * ln_u64(p) > (l as f64).ln() * (1.0 + 1e-12),
        }
    };
    let name = name.to_string();
    match mode {
        Mode::General => Ok(AdditiveFunctionSpec::from_general_fn(
            name,
            ValueKind::Real,
            move |p, k| {
                if beyond_limit(p, k) {
                    return None;
                }
                Some(Complex64::new(
                    general_rows.get(&(p, k)).copied().unwrap_or(0.0),
                    0.0,
                ))
            },
        )),
        m => {
            // Built directly so the horizon check sees the full (p, k); the
            // mode law holds on every prime power within the horizon.
            let complete = m == Mode::CompletelyAdditive;
            Ok(AdditiveFunctionSpec {
                name,
                mode: m,
                value_kind: ValueKind::Real,
                rule: Arc::new(move |p, k| {
                    if beyond_limit(p, k) {
                        return None;
                    }
                    let v = prime_rows.get(&p).copied().unwrap_or(0.0);
                    Some(Complex64::new(if complete { v * k as f64 } else { v }, 0.0))
                }),
            })
        }
    }
}
