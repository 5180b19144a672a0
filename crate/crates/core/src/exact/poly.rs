//! Dense univariate polynomials over [`Rational`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::float::FloatCore;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::combin::binomial;
use super::rational::{int, is_one, Rational};

/// Coefficient `i` multiplies `t^i`. Trailing zeros are always trimmed, so
/// the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact `∫₀¹ p(t) dt`.
    pub fn integrate_01(&self) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c / int(i as i64 + 1))
            .sum()
    }

    /// The antiderivative vanishing at `t = 0`.
    pub fn antiderivative(&self) -> Poly {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Rational::zero());
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c / int(i as i64 + 1)),
        );
        Poly::new(out)
    }

    /// `p(a·t + b)`.
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> Poly {
        let inner = Poly::new(vec![b.clone(), a.clone()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * &inner) + &Poly::constant(c.clone())
        })
    }

    /// Taylor shift `p(t + c)`.
    pub fn shift(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return self.clone();
        }
        // coefficient j of p(t+c) is sum_i a_i C(i,j) c^(i-j)
        let d = self.coeffs.len();
        let mut powers = Vec::with_capacity(d);
        let mut p = Rational::one();
        for _ in 0..d {
            powers.push(p.clone());
            p *= c;
        }
        let out = (0..d)
            .map(|j| {
                (j..d)
                    .map(|i| &self.coeffs[i] * binomial(i as u64, j as i64) * &powers[i - j])
                    .sum()
            })
            .collect();
        Poly::new(out)
    }

    /// `p(1 - t)`.
    pub fn reflect(&self) -> Poly {
        self.compose_linear(&int(-1), &int(1))
    }

    pub fn evaluator(&self) -> DyadicEvaluator {
        DyadicEvaluator::new(self)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o += c;
        }
        Poly::new(out)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |acc, p| &acc + &p)
    }
}

impl<'a> std::iter::Sum<&'a Poly> for Poly {
    fn sum<I: Iterator<Item = &'a Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |acc, p| &acc + p)
    }
}

/// Renders ascending by power, e.g. `1 + 2·t - 2·t^2`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, is_one(&mag)) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}·t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{mag}·t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Evaluates a rational polynomial at a binary float exactly, rounding only
/// the final result.
///
/// Coefficients are stored over a common denominator `L`; a float argument
/// `x = N / 2^k` is dyadic, so `L · 2^(k·d) · p(x)` is an integer computed by
/// integer Horner.
#[derive(Debug, Clone)]
pub struct DyadicEvaluator {
    numerators: Vec<BigInt>,
    denominator: BigInt,
}

impl DyadicEvaluator {
    pub fn new(p: &Poly) -> Self {
        let denominator = p.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let numerators = p
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denominator / c.denom()))
            .collect();
        DyadicEvaluator {
            numerators,
            denominator,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let d = match self.numerators.len() {
            0 => return 0.0,
            len => len - 1,
        };
        if d == 0 || x == 0.0 {
            return Ratio::new_raw(self.numerators[0].clone(), self.denominator.clone())
                .to_f64()
                .unwrap_or(f64::NAN);
        }
        if !x.is_finite() {
            return f64::NAN;
        }
        let (mut mant, mut exp, sign) = x.integer_decode();
        let tz = mant.trailing_zeros().min(63);
        mant >>= tz;
        exp += tz as i16;
        let mut num = BigInt::from(mant) * BigInt::from(sign);
        let k = if exp >= 0 {
            num <<= exp as usize;
            0usize
        } else {
            (-exp) as usize
        };
        let mut acc = self.numerators[d].clone();
        for j in (0..d).rev() {
            acc = acc * &num + (&self.numerators[j] << (k * (d - j)));
        }
        let den = &self.denominator << (k * d);
        Ratio::new_raw(acc, den).to_f64().unwrap_or(f64::NAN)
    }
}
