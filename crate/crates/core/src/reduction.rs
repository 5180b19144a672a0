//! Weight polynomials for the slab decomposition of the unit cube.
//!
//! The cube `[0,1]^n` splits into shells `K_m = {m-1 <= Σx <= m}`, and
//!
//! ```text
//! ∫_{[0,1]^n} f(Σx) dx = 1/(n-1)! · Σ_{m=1}^{n} ∫₀¹ G_m(t) f(t+m-1) dt
//! G_m(t) = Σ_{i=1}^{m} (-1)^{i-1} C(n, i-1) (t+m-i)^{n-1}
//! ```
//!
//! [`gm_closed`] is the production path. [`gm_recursive`] builds the same
//! polynomials from the shell-subtraction recursion and only serves as a
//! witness; the two must agree exactly.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exact::combin::{binomial, factorial_q, shifted_power_int};
use crate::exact::rational::{int, sign, Rational};
use crate::exact::Poly;

/// Index `m` of the shell `m-1 <= x₁+…+xₙ <= m`, always within `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShellIndex(u32);

impl ShellIndex {
    pub fn new(m: i64, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(invalid("n must be >= 1"));
        }
        if m < 1 || m > n as i64 {
            return Err(Error::ShellOutOfRange { m, n });
        }
        Ok(ShellIndex(m as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// The integer shift `m - 1` applied to the argument of `f`.
    pub fn shift(self) -> u32 {
        self.0 - 1
    }
}

/// Closed form `G_m(t)` for dimension `n`.
pub fn gm_closed(n: u32, m: i64) -> Result<Poly> {
    let m = ShellIndex::new(m, n)?.get();
    Ok(closed_unchecked(n, m))
}

fn closed_unchecked(n: u32, m: u32) -> Poly {
    (1..=m)
        .map(|i| {
            let c = int(sign(i - 1)) * binomial(n as u64, i as i64 - 1);
            shifted_power_int((m - i) as i64, n - 1).scale(&c)
        })
        .sum()
}

/// `G_m(t)` from `G_1 = t^{n-1}`, `G_m = (t+m-1)^{n-1} - Σ_{i<m} a_i G_i`
/// with `a_i = C(m+n-i-1, n-1)` counting the unit boxes of the enlarged
/// shell that are translates of `K_i`.
pub fn gm_recursive(n: u32, m: i64) -> Result<Poly> {
    let m = ShellIndex::new(m, n)?.get();
    Ok(recursive_table(n, m).pop().expect("m >= 1"))
}

/// `[G_1, …, G_m]` by the recursion.
pub fn recursive_table(n: u32, m: u32) -> Vec<Poly> {
    let mut table: Vec<Poly> = Vec::with_capacity(m as usize);
    for j in 1..=m {
        let mut g = shifted_power_int(j as i64 - 1, n - 1);
        for (idx, gi) in table.iter().enumerate() {
            let i = idx as u32 + 1;
            g = &g - &gi.scale(&composition_count(n, j, i));
        }
        table.push(g);
    }
    table
}

/// `a_i = C(m+n-i-1, n-1)`: the number of positive integer solutions of
/// `i₁+…+iₙ = m+n-i`.
pub fn composition_count(n: u32, m: u32, i: u32) -> Rational {
    binomial((m + n - i - 1) as u64, n as i64 - 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellWeight {
    pub shell: ShellIndex,
    pub weight: Poly,
}

impl ShellWeight {
    pub fn shift(&self) -> u32 {
        self.shell.shift()
    }
}

/// Everything needed to turn the `n`-dimensional integral into `n`
/// one-dimensional ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionPlan {
    n: u32,
    weights: Vec<ShellWeight>,
    prefactor: Rational,
}

impl ReductionPlan {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn weights(&self) -> &[ShellWeight] {
        &self.weights
    }

    /// `1/(n-1)!`.
    pub fn prefactor(&self) -> &Rational {
        &self.prefactor
    }

    /// Exact value of the cube integral for a polynomial integrand:
    /// `prefactor · Σ_m ∫₀¹ G_m(t) p(t+m-1) dt`.
    pub fn integrate_poly(&self, p: &Poly) -> Rational {
        let total: Rational = self
            .weights
            .iter()
            .map(|w| (&w.weight * &p.shift(&int(w.shift() as i64))).integrate_01())
            .sum();
        total * &self.prefactor
    }
}

/// Builds the plan for dimension `n` and checks `Σ G_m = (n-1)!` before
/// returning it.
pub fn reduction_plan(n: u32) -> Result<ReductionPlan> {
    if n == 0 {
        return Err(invalid("n must be >= 1"));
    }
    let weights: Vec<ShellWeight> = (1..=n)
        .map(|m| ShellWeight {
            shell: ShellIndex(m),
            weight: closed_unchecked(n, m),
        })
        .collect();
    let fact = factorial_q(n as u64 - 1);
    let total: Poly = weights.iter().map(|w| &w.weight).sum();
    if total != Poly::constant(fact.clone()) {
        return Err(Error::Inconsistent(format!(
            "weights for n = {n} sum to {total}, expected {fact}"
        )));
    }
    for w in &weights {
        if w.weight.degree() != Some(n as usize - 1) {
            return Err(Error::Inconsistent(format!(
                "G_{} for n = {n} has degree {:?}",
                w.shell.get(),
                w.weight.degree()
            )));
        }
    }
    Ok(ReductionPlan {
        n,
        weights,
        prefactor: Rational::one() / fact,
    })
}

/// `Σ_{m=k}^{n} G_m(t) = (n-1)! - Σ_{m=1}^{k-1} C(n-1, k-m-1) (-1)^{k-m-1} (t+m-1)^{n-1}`.
pub fn gm_partial_sum(n: u32, k: i64) -> Result<Poly> {
    if n == 0 {
        return Err(invalid("n must be >= 1"));
    }
    if k < 1 || k > n as i64 {
        return Err(invalid(format!(
            "partial-sum index k = {k} outside 1..={n}"
        )));
    }
    let k = k as u32;
    let tail: Poly = (1..k)
        .map(|m| {
            let e = k - m - 1;
            let c = int(sign(e)) * binomial(n as u64 - 1, e as i64);
            shifted_power_int(m as i64 - 1, n - 1).scale(&c)
        })
        .sum();
    Ok(&Poly::constant(factorial_q(n as u64 - 1)) - &tail)
}

/// `T_k(t) = Σ_{m=1}^{k} C(n-1, k-m) (-1)^{k-m} (t+m-1)^{n-1}`, which equals
/// `Σ_{m=1}^{k} G_m(t)`.
pub fn tk_poly(n: u32, k: i64) -> Result<Poly> {
    if n < 2 {
        return Err(invalid("T_k needs n >= 2"));
    }
    if k < 1 || k > n as i64 - 1 {
        return Err(invalid(format!("T_k index k = {k} outside 1..={}", n - 1)));
    }
    let k = k as u32;
    Ok((1..=k)
        .map(|m| {
            let e = k - m;
            let c = int(sign(e)) * binomial(n as u64 - 1, e as i64);
            shifted_power_int(m as i64 - 1, n - 1).scale(&c)
        })
        .sum())
}
