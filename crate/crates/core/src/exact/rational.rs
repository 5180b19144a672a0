//! Arbitrary-precision rationals.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value
//! reduced with a positive denominator, so structural equality is
//! mathematical equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn big(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

/// `p/q` as a reduced rational. Panics if `q == 0`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"`, `"p/q"`, or a plain decimal such as `"-1.25"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse {
        what: "rational",
        token: s.to_string(),
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, fracpart)) = t.split_once('.') {
        if fracpart.is_empty() || !fracpart.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{whole_digits}{fracpart}");
        let mut num: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), fracpart.len());
        return Ok(Rational::new(num, den));
    }
    let p: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// Exact `"p/q"` rendering; integers render without a denominator.
pub fn to_fraction_string(r: &Rational) -> String {
    r.to_string()
}

pub fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

/// `base^exp` for a (possibly negative) integer base, with `0^0 = 1`.
pub fn ipow(base: i64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

pub fn sign(k: u32) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Number of bits needed to bound `|r|` from above, at least 0.
pub(crate) fn magnitude_bits(r: &Rational) -> u64 {
    if r.is_zero() {
        return 0;
    }
    let nb = r.numer().abs().bits();
    let db = r.denom().bits();
    (nb + 1).saturating_sub(db)
}

pub(crate) fn is_one(r: &Rational) -> bool {
    r.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = frac(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(frac(2, 4), frac(1, 2));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), frac(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), frac(-3, 4));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("-1.25").unwrap(), frac(-5, 4));
        assert_eq!(parse_rational("0.5").unwrap(), frac(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn fraction_strings() {
        assert_eq!(to_fraction_string(&frac(-3, 4)), "-3/4");
        assert_eq!(to_fraction_string(&int(5)), "5");
        assert_eq!(
            parse_rational(&to_fraction_string(&frac(22, 7))).unwrap(),
            frac(22, 7)
        );
    }

    #[test]
    fn zero_to_zero_is_one() {
        assert_eq!(ipow(0, 0), BigInt::from(1));
        assert_eq!(ipow(-2, 3), BigInt::from(-8));
    }

    #[test]
    fn magnitude() {
        assert!(magnitude_bits(&int(1000)) >= 10);
        assert_eq!(magnitude_bits(&int(0)), 0);
        assert_eq!(magnitude_bits(&frac(1, 1000)), 0);
    }
}
