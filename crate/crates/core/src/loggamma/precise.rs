//! Fixed-point logarithms for decimal rendering of closed forms.
//!
//! Values are `BigInt`s scaled by `2^bits`. Each routine works with 32
//! extra guard bits and truncates at the end, so results are within a few
//! units in the last place.

use num_bigint::BigInt;
use num_traits::{One, Zero};

const GUARD: u64 = 32;

/// `Σ (a/b)^{2k+1} / (2k+1)` for `|a/b| < 1`, scaled by `2^bits`.
fn atanh_ratio(a: &BigInt, b: &BigInt, bits: u64) -> BigInt {
    let a2 = a * a;
    let b2 = b * b;
    let mut power = (a << bits) / b;
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power = power * &a2 / &b2;
        if power.is_zero() {
            break;
        }
        sum += &power / BigInt::from(2 * k + 1);
        k += 1;
    }
    sum
}

/// `Σ (-1)^k / ((2k+1) x^{2k+1})`, scaled by `2^bits`.
fn atan_recip(x: u64, bits: u64) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = (BigInt::one() << bits) / &x;
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power /= &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

fn ln2_raw(bits: u64) -> BigInt {
    atanh_ratio(&BigInt::one(), &BigInt::from(3), bits) << 1
}

fn ln_u64_raw(p: u64, bits: u64, ln2: &BigInt) -> BigInt {
    debug_assert!(p >= 1);
    let e = 63 - p.leading_zeros() as u64;
    let base = 1u64 << e;
    let mut out = ln2 * BigInt::from(e);
    if p != base {
        // ln(p / 2^e) = 2 atanh((p - 2^e) / (p + 2^e)), ratio below 1/3
        let a = BigInt::from(p - base);
        let b = BigInt::from(p) + BigInt::from(base);
        out += atanh_ratio(&a, &b, bits) << 1;
    }
    out
}

fn pi_raw(bits: u64) -> BigInt {
    (atan_recip(5, bits) << 4) - (atan_recip(239, bits) << 2)
}

/// `ln y` for a fixed-point `y` near 1.
fn ln_fixed_raw(y: &BigInt, bits: u64) -> BigInt {
    let one = BigInt::one() << bits;
    let num = y - &one;
    let den = y + &one;
    atanh_ratio(&num, &den, bits) << 1
}

/// `ln p` for an integer `p >= 1`, scaled by `2^bits`.
pub fn ln_u64(p: u64, bits: u64) -> BigInt {
    let w = bits + GUARD;
    ln_u64_raw(p, w, &ln2_raw(w)) >> GUARD
}

/// `π`, scaled by `2^bits`.
pub fn pi(bits: u64) -> BigInt {
    pi_raw(bits + GUARD) >> GUARD
}

/// `ln π`, scaled by `2^bits`.
pub fn ln_pi(bits: u64) -> BigInt {
    let w = bits + GUARD;
    let pi_over_3 = pi_raw(w) / BigInt::from(3);
    let ln3 = ln_u64_raw(3, w, &ln2_raw(w));
    (ln3 + ln_fixed_raw(&pi_over_3, w)) >> GUARD
}

/// A batch of logarithms sharing one working precision.
pub struct LogTable {
    bits: u64,
    ln2: BigInt,
}

impl LogTable {
    pub fn new(bits: u64) -> Self {
        let w = bits + GUARD;
        LogTable {
            bits,
            ln2: ln2_raw(w),
        }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn ln(&self, p: u64) -> BigInt {
        ln_u64_raw(p, self.bits + GUARD, &self.ln2) >> GUARD
    }

    pub fn ln_pi(&self) -> BigInt {
        let w = self.bits + GUARD;
        let pi_over_3 = pi_raw(w) / BigInt::from(3);
        let ln3 = ln_u64_raw(3, w, &self.ln2);
        (ln3 + ln_fixed_raw(&pi_over_3, w)) >> GUARD
    }
}

/// Rounds `value / 2^bits` to `digits` decimal places, half away from zero.
pub fn fixed_to_decimal(value: &BigInt, bits: u64, digits: u32) -> String {
    let scaled = value * num_traits::pow(BigInt::from(10), digits as usize);
    let negative = scaled < BigInt::zero();
    let mag = if negative { -scaled } else { scaled };
    let half = BigInt::one() << (bits - 1);
    let rounded: BigInt = (mag + half) >> bits;
    let ten_d = num_traits::pow(BigInt::from(10), digits as usize);
    let whole = &rounded / &ten_d;
    let frac = &rounded % &ten_d;
    let sign = if negative && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    format!(
        "{sign}{whole}.{:0>width$}",
        frac.to_string(),
        width = digits as usize
    )
}
