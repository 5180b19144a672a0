//! Binomials, factorials, harmonic numbers and binomial expansions.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{big, int, Rational};
use crate::error::{invalid, Result};

/// `C(n, k)` as an integer; zero outside `0 <= k <= n`.
pub fn binomial_int(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `C(n, k)`; zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> Rational {
    big(binomial_int(n, k))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn factorial_q(n: u64) -> Rational {
    big(factorial(n))
}

/// `H_n = 1 + 1/2 + ... + 1/n`.
pub fn harmonic(n: i64) -> Result<Rational> {
    if n < 1 {
        return Err(invalid(format!("harmonic number needs n >= 1, got {n}")));
    }
    Ok((1..=n)
        .map(|k| Rational::new(BigInt::one(), BigInt::from(k)))
        .sum())
}

/// `(t + c)^e` expanded by the binomial theorem.
pub fn shifted_power(c: &Rational, e: u32) -> Poly {
    let mut coeffs = Vec::with_capacity(e as usize + 1);
    // coefficient of t^j is C(e, j) c^(e-j)
    let mut cpow = vec![Rational::one()];
    for _ in 0..e {
        let next = cpow.last().unwrap() * c;
        cpow.push(next);
    }
    for j in 0..=e {
        coeffs.push(binomial(e as u64, j as i64) * &cpow[(e - j) as usize]);
    }
    Poly::new(coeffs)
}

/// `(t + c)^e` for an integer shift.
pub fn shifted_power_int(c: i64, e: u32) -> Poly {
    shifted_power(&int(c), e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::frac;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2), int(10));
        for n in 0..8 {
            assert_eq!(binomial(n, 0), int(1));
            assert_eq!(binomial(n, -1), int(0));
            assert_eq!(binomial(n, n as i64 + 1), int(0));
        }
        assert_eq!(binomial(4, 2), int(6));
        // a_1 = C(m+n-i-1, n-1) with n = 3, m = 2, i = 1
        assert_eq!(binomial(3, 2), int(3));
    }

    #[test]
    fn pascal_rule() {
        for n in 1..25u64 {
            for k in 0..=n as i64 {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic(1).unwrap(), int(1));
        assert_eq!(harmonic(3).unwrap(), frac(11, 6));
        assert_eq!(harmonic(4).unwrap(), frac(25, 12));
        // (n-1)/2 · H_4 is the rational part of I(4)
        assert_eq!(frac(3, 2) * harmonic(4).unwrap(), frac(25, 8));
        assert!(harmonic(0).is_err());
        assert!(harmonic(-3).is_err());
    }

    #[test]
    fn shifted_power_examples() {
        assert_eq!(shifted_power_int(0, 3), Poly::monomial(3));
        assert_eq!(shifted_power_int(1, 2), Poly::from_ints(&[1, 2, 1]));
        assert_eq!(shifted_power_int(2, 2), Poly::from_ints(&[4, 4, 1]));
        assert_eq!(shifted_power_int(5, 0), Poly::from_ints(&[1]));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
