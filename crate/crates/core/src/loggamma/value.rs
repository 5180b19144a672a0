//! Exact values of the form `r + q_π·log π + Σ_p q_p·log p`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::precise::{fixed_to_decimal, LogTable};
use crate::error::{invalid, Error, Result};
use crate::exact::rational::{frac, magnitude_bits, Rational};

/// A rational combination of `1`, `log π` and `log p` over primes `p`.
///
/// Every integer logarithm is stored decomposed into prime logarithms and
/// zero coefficients are dropped, so derived equality is mathematical
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClosedFormValue {
    constant: Rational,
    log_pi: Rational,
    log_primes: BTreeMap<u64, Rational>,
}

/// Prime factorization by trial division, ascending.
pub fn factorize(mut k: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            let mut e = 0;
            while k.is_multiple_of(p) {
                k /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if k > 1 {
        out.push((k, 1));
    }
    out
}

impl ClosedFormValue {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(r: Rational) -> Self {
        ClosedFormValue {
            constant: r,
            ..Self::default()
        }
    }

    /// `log k` for an integer `k >= 1`.
    pub fn log_int(k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain {
                function: "log",
                value: "0".into(),
            });
        }
        let mut v = Self::zero();
        for (p, e) in factorize(k) {
            v.log_primes
                .insert(p, Rational::from_integer(BigInt::from(e)));
        }
        Ok(v)
    }

    pub fn log_pi_unit() -> Self {
        ClosedFormValue {
            log_pi: Rational::one(),
            ..Self::default()
        }
    }

    /// `½ log(2π)`, which is `∫₀¹ log Γ(t) dt`.
    pub fn half_log_two_pi() -> Self {
        let half = frac(1, 2);
        let mut v = ClosedFormValue {
            log_pi: half.clone(),
            ..Self::default()
        };
        v.log_primes.insert(2, half);
        v
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn log_pi(&self) -> &Rational {
        &self.log_pi
    }

    pub fn log_primes(&self) -> &BTreeMap<u64, Rational> {
        &self.log_primes
    }

    /// Coefficient of `log p`, zero when absent.
    pub fn log_prime(&self, p: u64) -> Rational {
        self.log_primes
            .get(&p)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.log_pi.is_zero() && self.log_primes.is_empty()
    }

    /// Rebuilds a value from raw parts, canonicalizing any composite keys.
    pub fn from_parts(
        constant: Rational,
        log_pi: Rational,
        logs: impl IntoIterator<Item = (u64, Rational)>,
    ) -> Result<Self> {
        let mut v = ClosedFormValue {
            constant,
            log_pi,
            log_primes: BTreeMap::new(),
        };
        for (k, q) in logs {
            v = v + Self::log_int(k)?.scale(&q);
        }
        Ok(v)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ClosedFormValue {
            constant: &self.constant * c,
            log_pi: &self.log_pi * c,
            log_primes: self.log_primes.iter().map(|(&p, q)| (p, q * c)).collect(),
        }
    }

    /// Decimal rendering with `digits` places after the point, for `digits`
    /// in `1..=50`.
    pub fn numeric_value(&self, digits: u32) -> Result<String> {
        if !(1..=50).contains(&digits) {
            return Err(invalid(format!("digits must be in 1..=50, got {digits}")));
        }
        // Cancellation between large coefficients needs headroom above the
        // requested precision.
        let headroom = std::iter::once(&self.log_pi)
            .chain(self.log_primes.values())
            .map(magnitude_bits)
            .max()
            .unwrap_or(0)
            + (self.log_primes.len() as u64 + 2).ilog2() as u64
            + 1;
        let bits = (digits as u64 * 3322).div_ceil(1000) + headroom + 64;
        let table = LogTable::new(bits);
        let mut acc = (self.constant.numer() << bits) / self.constant.denom();
        if !self.log_pi.is_zero() {
            acc += self.log_pi.numer() * table.ln_pi() / self.log_pi.denom();
        }
        for (&p, q) in &self.log_primes {
            acc += q.numer() * table.ln(p) / q.denom();
        }
        Ok(fixed_to_decimal(&acc, bits, digits))
    }

    pub fn to_f64(&self) -> f64 {
        self.numeric_value(25)
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(f64::NAN)
    }

    fn add_log(&mut self, p: u64, q: &Rational) {
        let entry = self.log_primes.entry(p).or_insert_with(Rational::zero);
        *entry += q;
        if entry.is_zero() {
            self.log_primes.remove(&p);
        }
    }
}

impl Add for ClosedFormValue {
    type Output = ClosedFormValue;
    fn add(mut self, rhs: ClosedFormValue) -> ClosedFormValue {
        self.constant += rhs.constant;
        self.log_pi += rhs.log_pi;
        for (p, q) in &rhs.log_primes {
            self.add_log(*p, q);
        }
        self
    }
}

impl Neg for ClosedFormValue {
    type Output = ClosedFormValue;
    fn neg(self) -> ClosedFormValue {
        self.scale(&-Rational::one())
    }
}

impl Sub for ClosedFormValue {
    type Output = ClosedFormValue;
    fn sub(self, rhs: ClosedFormValue) -> ClosedFormValue {
        self + (-rhs)
    }
}

impl Mul<&Rational> for ClosedFormValue {
    type Output = ClosedFormValue;
    fn mul(self, rhs: &Rational) -> ClosedFormValue {
        self.scale(rhs)
    }
}

impl std::iter::Sum for ClosedFormValue {
    fn sum<I: Iterator<Item = ClosedFormValue>>(iter: I) -> ClosedFormValue {
        iter.fold(ClosedFormValue::zero(), |a, b| a + b)
    }
}

impl From<Rational> for ClosedFormValue {
    fn from(r: Rational) -> Self {
        ClosedFormValue::rational(r)
    }
}

/// Symbolic rendering, e.g. `-3/4 + 1/2·logπ + 1/2·log2`.
impl fmt::Display for ClosedFormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(Rational, Option<String>)> = Vec::new();
        if !self.constant.is_zero() {
            terms.push((self.constant.clone(), None));
        }
        if !self.log_pi.is_zero() {
            terms.push((self.log_pi.clone(), Some("logπ".into())));
        }
        for (p, q) in &self.log_primes {
            terms.push((q.clone(), Some(format!("log{p}"))));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, sym)) in terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match sym {
                None => write!(f, "{mag}")?,
                Some(s) if mag.is_one() => write!(f, "{s}")?,
                Some(s) => write!(f, "{mag}·{s}")?,
            }
        }
        Ok(())
    }
}
