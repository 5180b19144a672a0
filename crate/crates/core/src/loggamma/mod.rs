//! Exact value of `I(n) = ∫_{[0,1]^n} log Γ(x₁+…+xₙ) dx`.
//!
//! Two routes produce the same [`ClosedFormValue`]:
//!
//! * [`closed_form`]: `½log(2π) - (n-1)/2·H_n + Σ_{k=2}^{n-1} (-1)^{n+k+1} kⁿ/n! · C(n-1,k) · log k`
//! * [`closed_form_via_derivation`]: starts from the reduced integral with
//!   `Σ_{m≥k} G_m = (n-1)! - T_{k-1}`, then substitutes the closed sums for
//!   `Σ S₁(k)` and `Σ S₂(k) = R₁ + R₂`.
//!
//! `∫₀¹ log Γ(t) dt = ½ log(2π)` is taken as a defining constant.

pub mod precise;
pub mod value;

pub use value::ClosedFormValue;

use num_bigint::BigInt;

use crate::error::{invalid, Error, Result};
use crate::exact::combin::{binomial, factorial_q, harmonic};
use crate::exact::rational::{big, int, ipow, sign, Rational};

fn require_n2(n: u32, what: &str) -> Result<()> {
    if n < 2 {
        return Err(invalid(format!("{what} needs n >= 2, got {n}")));
    }
    Ok(())
}

/// `I(n)` in canonical form.
pub fn closed_form(n: u32) -> Result<ClosedFormValue> {
    if n == 0 {
        return Err(invalid("n must be >= 1"));
    }
    let nn = n as i64;
    let h = harmonic(nn)?;
    let nfact = factorial_q(n as u64);
    let mut v =
        ClosedFormValue::half_log_two_pi() + ClosedFormValue::rational(-int(nn - 1) / int(2) * h);
    for k in 2..n {
        let coeff = int(sign(n + k + 1)) * big(ipow(k as i64, n)) / &nfact
            * binomial(n as u64 - 1, k as i64);
        v = v + ClosedFormValue::log_int(k as u64)?.scale(&coeff);
    }
    Ok(v)
}

/// `Σ_{k=1}^{n-1} S₁(k) = (1/n) Σ_{k=2}^{n-2} C(n-1,k)(-1)^k(-k)ⁿ log k
///                       + (log(n-1)/n)·[n!(n-1) - (n-1)ⁿ]`.
pub fn s1_total(n: u32) -> Result<ClosedFormValue> {
    require_n2(n, "s1_total")?;
    let nn = n as i64;
    let nq = int(nn);
    let mut v = ClosedFormValue::zero();
    for k in 2..=n.saturating_sub(2) {
        let coeff =
            binomial(n as u64 - 1, k as i64) * int(sign(k)) * big(ipow(-(k as i64), n)) / &nq;
        v = v + ClosedFormValue::log_int(k as u64)?.scale(&coeff);
    }
    let bracket = factorial_q(n as u64) * int(nn - 1) - big(ipow(nn - 1, n));
    v = v + ClosedFormValue::log_int(n as u64 - 1)?.scale(&(bracket / nq));
    Ok(v)
}

/// `Σ_{k=1}^{n-1} S₂(k) = (n-1)!(n-1) - (n-1)/2 · H_n · (n-1)!`.
pub fn s2_total(n: u32) -> Result<Rational> {
    require_n2(n, "s2_total")?;
    let nn = n as i64;
    let f = factorial_q(n as u64 - 1);
    Ok(&f * int(nn - 1) - int(nn - 1) / int(2) * harmonic(nn)? * &f)
}

/// `R₁ = (H_n/n)·[(n-1)ⁿ - (n-1)/2 · n!]`.
pub fn r1(n: u32) -> Result<Rational> {
    require_n2(n, "r1")?;
    let nn = n as i64;
    let bracket = big(ipow(nn - 1, n)) - int(nn - 1) / int(2) * factorial_q(n as u64);
    Ok(harmonic(nn)? / int(nn) * bracket)
}

/// `R₂ = (n-1)!(n-1) - (H_n/n)·(n-1)ⁿ`.
pub fn r2(n: u32) -> Result<Rational> {
    require_n2(n, "r2")?;
    let nn = n as i64;
    Ok(factorial_q(n as u64 - 1) * int(nn - 1) - harmonic(nn)? / int(nn) * big(ipow(nn - 1, n)))
}

/// Intermediate quantities of the derivation route.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTrace {
    pub n: u32,
    pub s1_total: ClosedFormValue,
    pub s2_total: Rational,
    pub r1: Rational,
    pub r2: Rational,
    /// `∫₀¹ Σ_{k=1}^{n-1} T_k(t) log(t+k-1) dt = Σ S₁ - Σ S₂`.
    pub tk_integral_total: ClosedFormValue,
    pub final_value: ClosedFormValue,
}

/// Assembles `I(n) = ½log(2π) + (n-1)log(n-1) - n + 1 - (1/(n-1)!)·∫Σ T_k log(t+k-1)`
/// and checks it against [`closed_form`].
pub fn closed_form_via_derivation(n: u32) -> Result<DerivationTrace> {
    require_n2(n, "the derivation route")?;
    let nn = n as i64;
    let s1 = s1_total(n)?;
    let s2 = s2_total(n)?;
    let (r1v, r2v) = (r1(n)?, r2(n)?);
    if &r1v + &r2v != s2 {
        return Err(Error::Inconsistent(format!(
            "R1 + R2 = {} but sum of S2 = {s2} for n = {n}",
            &r1v + &r2v
        )));
    }
    let tk_total = s1.clone() - ClosedFormValue::rational(s2.clone());
    let inv_fact = Rational::from_integer(BigInt::from(1)) / factorial_q(n as u64 - 1);
    let final_value = ClosedFormValue::half_log_two_pi()
        + ClosedFormValue::log_int(n as u64 - 1)?.scale(&int(nn - 1))
        + ClosedFormValue::rational(int(1 - nn))
        - tk_total.scale(&inv_fact);
    let direct = closed_form(n)?;
    if final_value != direct {
        return Err(Error::Inconsistent(format!(
            "derivation gives {final_value}, closed form gives {direct} for n = {n}"
        )));
    }
    Ok(DerivationTrace {
        n,
        s1_total: s1,
        s2_total: s2,
        r1: r1v,
        r2: r2v,
        tk_integral_total: tk_total,
        final_value,
    })
}

/// Decimal rendering of a closed-form value; see [`ClosedFormValue::numeric_value`].
pub fn numeric_value(v: &ClosedFormValue, digits: u32) -> Result<String> {
    v.numeric_value(digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::frac;

    fn half_log_2pi_plus(constant: Rational, logs: &[(u64, Rational)]) -> ClosedFormValue {
        ClosedFormValue::half_log_two_pi()
            + ClosedFormValue::from_parts(constant, int(0), logs.iter().cloned()).unwrap()
    }

    #[test]
    fn reference_values() {
        assert_eq!(closed_form(1).unwrap(), ClosedFormValue::half_log_two_pi());
        assert_eq!(closed_form(2).unwrap(), half_log_2pi_plus(frac(-3, 4), &[]));
        assert_eq!(
            closed_form(3).unwrap(),
            half_log_2pi_plus(frac(-11, 6), &[(2, frac(4, 3))])
        );
        assert_eq!(
            closed_form(4).unwrap(),
            half_log_2pi_plus(frac(-25, 8), &[(2, int(-2)), (3, frac(27, 8))])
        );
        assert_eq!(
            closed_form(4).unwrap().to_string(),
            "-25/8 + 1/2·logπ - 3/2·log2 + 27/8·log3"
        );
        assert!(closed_form(0).is_err());
    }

    #[test]
    fn closed_sums_small_n() {
        assert_eq!(s1_total(2).unwrap(), ClosedFormValue::zero());
        assert_eq!(
            s1_total(3).unwrap(),
            ClosedFormValue::log_int(2).unwrap().scale(&frac(4, 3))
        );
        assert_eq!(s2_total(3).unwrap(), frac(1, 3));
        assert_eq!(s2_total(2).unwrap(), frac(1, 4));
        assert_eq!(r1(3).unwrap(), frac(11, 9));
        assert_eq!(r1(2).unwrap(), int(0));
        assert_eq!(r2(3).unwrap(), frac(-8, 9));
        assert_eq!(r2(2).unwrap(), frac(1, 4));
        for n in 2..=10 {
            assert_eq!(r1(n).unwrap() + r2(n).unwrap(), s2_total(n).unwrap());
        }
        assert!(s1_total(1).is_err());
        assert!(s2_total(1).is_err());
        assert!(r1(0).is_err());
        assert!(r2(1).is_err());
    }

    #[test]
    fn derivation_route_small_n() {
        let t3 = closed_form_via_derivation(3).unwrap();
        assert_eq!(
            t3.final_value,
            half_log_2pi_plus(frac(-11, 6), &[(2, frac(4, 3))])
        );
        let t2 = closed_form_via_derivation(2).unwrap();
        assert_eq!(t2.final_value, half_log_2pi_plus(frac(-3, 4), &[]));
        for n in 4..=12 {
            let t = closed_form_via_derivation(n).unwrap();
            assert_eq!(t.final_value, closed_form(n).unwrap());
        }
        assert!(closed_form_via_derivation(1).is_err());
    }

    #[test]
    fn decimals() {
        assert_eq!(
            numeric_value(&closed_form(2).unwrap(), 10).unwrap(),
            "0.1689385332"
        );
        assert_eq!(
            numeric_value(&closed_form(1).unwrap(), 10).unwrap(),
            "0.9189385332"
        );
    }
}
