//! The six binomial-sum identities the log-gamma derivation leans on, each
//! evaluated exactly on both sides.

use std::fmt;
use std::ops::RangeInclusive;

use num_traits::{One, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::combin::{binomial, factorial_q, harmonic};
use super::poly::Poly;
use super::rational::{frac, int, pow, sign, Rational};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityId {
    /// (a) `Σ_{i=0}^{m} (-1)^i C(n,i) = (-1)^m C(n-1,m)`
    AlternatingPartialSum,
    /// (b) `Σ_{k=0}^{n} (-1)^k C(n,k) (x+n-k)^n = n!`
    FactorialDifference,
    /// (c) `Σ_{k=0}^{n} (-1)^k C(n,k) (x-k)^{n+1} = (x - n/2)(n+1)!`
    CenteredDifference,
    /// (d) `Σ_{k=1}^{n} (-1)^{k+1}/k · C(n,k) = H_n`
    AlternatingHarmonic,
    /// (e) `Σ_{k=1}^{n} (-1)^{k+1}/k · C(n,k) [1-(1-x)^k] = Σ_{k=1}^{n} x^k/k`
    HarmonicGenerating,
    /// (f) `Σ_{k=0}^{n} (-1)^k C(n,k) P(k) = 0` for `deg P < n`
    PolynomialAnnihilation,
}

impl IdentityId {
    pub const ALL: [IdentityId; 6] = [
        IdentityId::AlternatingPartialSum,
        IdentityId::FactorialDifference,
        IdentityId::CenteredDifference,
        IdentityId::AlternatingHarmonic,
        IdentityId::HarmonicGenerating,
        IdentityId::PolynomialAnnihilation,
    ];

    pub fn letter(self) -> char {
        match self {
            IdentityId::AlternatingPartialSum => 'a',
            IdentityId::FactorialDifference => 'b',
            IdentityId::CenteredDifference => 'c',
            IdentityId::AlternatingHarmonic => 'd',
            IdentityId::HarmonicGenerating => 'e',
            IdentityId::PolynomialAnnihilation => 'f',
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            IdentityId::AlternatingPartialSum => "alternating-partial-sum",
            IdentityId::FactorialDifference => "factorial-difference",
            IdentityId::CenteredDifference => "centered-difference",
            IdentityId::AlternatingHarmonic => "alternating-harmonic",
            IdentityId::HarmonicGenerating => "harmonic-generating",
            IdentityId::PolynomialAnnihilation => "polynomial-annihilation",
        };
        write!(f, "({}) {name}", self.letter())
    }
}

/// One instance of an identity: the identity plus its free parameter.
#[derive(Debug, Clone, Copy)]
pub enum IdentityCase<'a> {
    AlternatingPartialSum { m: u32 },
    FactorialDifference { x: &'a Rational },
    CenteredDifference { x: &'a Rational },
    AlternatingHarmonic,
    HarmonicGenerating { x: &'a Rational },
    PolynomialAnnihilation { p: &'a Poly },
}

impl IdentityCase<'_> {
    pub fn id(&self) -> IdentityId {
        match self {
            IdentityCase::AlternatingPartialSum { .. } => IdentityId::AlternatingPartialSum,
            IdentityCase::FactorialDifference { .. } => IdentityId::FactorialDifference,
            IdentityCase::CenteredDifference { .. } => IdentityId::CenteredDifference,
            IdentityCase::AlternatingHarmonic => IdentityId::AlternatingHarmonic,
            IdentityCase::HarmonicGenerating { .. } => IdentityId::HarmonicGenerating,
            IdentityCase::PolynomialAnnihilation { .. } => IdentityId::PolynomialAnnihilation,
        }
    }

    fn params(&self) -> String {
        match self {
            IdentityCase::AlternatingPartialSum { m } => format!("m={m}"),
            IdentityCase::FactorialDifference { x }
            | IdentityCase::CenteredDifference { x }
            | IdentityCase::HarmonicGenerating { x } => format!("x={x}"),
            IdentityCase::AlternatingHarmonic => String::new(),
            IdentityCase::PolynomialAnnihilation { p } => format!("P={p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: Rational,
    pub rhs: Rational,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn alt_binom(n: u32, k: u32) -> Rational {
    int(sign(k)) * binomial(n as u64, k as i64)
}

/// Evaluates both sides of one identity instance exactly.
///
/// Rejects `n = 0` and, for (f), any `P` with `deg P >= n`; those are
/// precondition violations rather than identity failures.
pub fn check_identity(n: u32, case: &IdentityCase<'_>) -> Result<IdentityCheck> {
    if n == 0 {
        return Err(invalid("identities are checked for n >= 1"));
    }
    let nq = int(n as i64);
    let check = match *case {
        IdentityCase::AlternatingPartialSum { m } => IdentityCheck {
            lhs: (0..=m).map(|i| alt_binom(n, i)).sum(),
            rhs: alt_binom(n - 1, m),
        },
        IdentityCase::FactorialDifference { x } => IdentityCheck {
            lhs: (0..=n)
                .map(|k| alt_binom(n, k) * pow(&(x + int((n - k) as i64)), n))
                .sum(),
            rhs: factorial_q(n as u64),
        },
        IdentityCase::CenteredDifference { x } => IdentityCheck {
            lhs: (0..=n)
                .map(|k| alt_binom(n, k) * pow(&(x - int(k as i64)), n + 1))
                .sum(),
            rhs: (x - &nq / int(2)) * factorial_q(n as u64 + 1),
        },
        IdentityCase::AlternatingHarmonic => IdentityCheck {
            lhs: (1..=n).map(|k| -alt_binom(n, k) / int(k as i64)).sum(),
            rhs: harmonic(n as i64)?,
        },
        IdentityCase::HarmonicGenerating { x } => {
            let one_minus = Rational::one() - x;
            IdentityCheck {
                lhs: (1..=n)
                    .map(|k| {
                        -alt_binom(n, k) / int(k as i64) * (Rational::one() - pow(&one_minus, k))
                    })
                    .sum(),
                rhs: (1..=n).map(|k| pow(x, k) / int(k as i64)).sum(),
            }
        }
        IdentityCase::PolynomialAnnihilation { p } => {
            if let Some(d) = p.degree() {
                if d >= n as usize {
                    return Err(Error::DegreeTooHigh { degree: d, n });
                }
            }
            IdentityCheck {
                lhs: (0..=n)
                    .map(|k| alt_binom(n, k) * p.eval(&int(k as i64)))
                    .sum(),
                rhs: Rational::zero(),
            }
        }
    };
    Ok(check)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub n: u32,
    pub params: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub n_range: (u32, u32),
    pub instances: usize,
    pub status: Status,
    pub witness: Option<Witness>,
}

/// Parameter samples for the suite runner.
#[derive(Debug, Clone)]
pub struct IdentitySamples {
    /// Sample points for (b), (c) and (e).
    pub xs: Vec<Rational>,
    /// Random polynomials drawn per `n` for (f).
    pub polys_per_n: usize,
    pub seed: u64,
}

impl Default for IdentitySamples {
    fn default() -> Self {
        IdentitySamples {
            xs: vec![int(-2), frac(-1, 2), int(0), frac(1, 3), int(5)],
            polys_per_n: 4,
            seed: 0,
        }
    }
}

/// A random polynomial of degree exactly `degree` with small rational
/// coefficients.
pub fn random_poly(rng: &mut impl RngCore, degree: usize) -> Poly {
    let mut coeffs: Vec<Rational> = (0..=degree)
        .map(|_| {
            let p = (rng.next_u32() % 19) as i64 - 9;
            let q = (rng.next_u32() % 6) as i64 + 1;
            frac(p, q)
        })
        .collect();
    if coeffs[degree].is_zero() {
        coeffs[degree] = int(1);
    }
    Poly::new(coeffs)
}

/// Checks every instance of `id` for `n` in `range`, stopping at the first
/// failure, which is recorded as the witness.
pub fn run_identity(
    id: IdentityId,
    range: RangeInclusive<u32>,
    samples: &IdentitySamples,
) -> Result<IdentityReport> {
    let (lo, hi) = (*range.start(), *range.end());
    if lo == 0 {
        return Err(invalid("identity range must start at n >= 1"));
    }
    let mut instances = 0;
    for n in range {
        let mut rng = ChaCha8Rng::seed_from_u64(samples.seed ^ ((n as u64) << 32));
        let polys: Vec<Poly> = (0..samples.polys_per_n)
            .map(|j| {
                let degree = if j == 0 {
                    n as usize - 1
                } else {
                    rng.next_u32() as usize % n as usize
                };
                random_poly(&mut rng, degree)
            })
            .collect();
        let cases: Vec<IdentityCase<'_>> = match id {
            IdentityId::AlternatingPartialSum => (0..=n)
                .map(|m| IdentityCase::AlternatingPartialSum { m })
                .collect(),
            IdentityId::FactorialDifference => samples
                .xs
                .iter()
                .map(|x| IdentityCase::FactorialDifference { x })
                .collect(),
            IdentityId::CenteredDifference => samples
                .xs
                .iter()
                .map(|x| IdentityCase::CenteredDifference { x })
                .collect(),
            IdentityId::AlternatingHarmonic => vec![IdentityCase::AlternatingHarmonic],
            IdentityId::HarmonicGenerating => samples
                .xs
                .iter()
                .map(|x| IdentityCase::HarmonicGenerating { x })
                .collect(),
            IdentityId::PolynomialAnnihilation => polys
                .iter()
                .map(|p| IdentityCase::PolynomialAnnihilation { p })
                .collect(),
        };
        for case in &cases {
            instances += 1;
            if !check_identity(n, case)?.holds() {
                return Ok(IdentityReport {
                    id,
                    n_range: (lo, hi),
                    instances,
                    status: Status::Fail,
                    witness: Some(Witness {
                        n,
                        params: case.params(),
                    }),
                });
            }
        }
    }
    Ok(IdentityReport {
        id,
        n_range: (lo, hi),
        instances,
        status: Status::Pass,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_identity_n3() {
        let c = check_identity(3, &IdentityCase::AlternatingHarmonic).unwrap();
        assert_eq!(c.lhs, frac(11, 6));
        assert_eq!(c.rhs, frac(11, 6));
    }

    #[test]
    fn factorial_difference_n2_x0() {
        let x = int(0);
        let c = check_identity(2, &IdentityCase::FactorialDifference { x: &x }).unwrap();
        assert_eq!(c.lhs, int(2));
        assert_eq!(c.rhs, int(2));
    }

    #[test]
    fn partial_sum_n4_m2() {
        let c = check_identity(4, &IdentityCase::AlternatingPartialSum { m: 2 }).unwrap();
        assert_eq!(c.lhs, int(3));
        assert_eq!(c.rhs, int(3));
    }

    #[test]
    fn annihilation_rejects_high_degree() {
        let p = Poly::monomial(3);
        let err = check_identity(3, &IdentityCase::PolynomialAnnihilation { p: &p }).unwrap_err();
        assert_eq!(err, Error::DegreeTooHigh { degree: 3, n: 3 });
        // n^n does not vanish, so degree n genuinely breaks the identity
        let p2 = Poly::monomial(2);
        assert!(
            check_identity(3, &IdentityCase::PolynomialAnnihilation { p: &p2 })
                .unwrap()
                .holds()
        );
    }

    #[test]
    fn rejects_n_zero() {
        assert!(check_identity(0, &IdentityCase::AlternatingHarmonic).is_err());
    }

    #[test]
    fn all_identities_small_range() {
        let samples = IdentitySamples::default();
        for id in IdentityId::ALL {
            let r = run_identity(id, 1..=12, &samples).unwrap();
            assert_eq!(r.status, Status::Pass, "{id}: {:?}", r.witness);
            assert!(r.instances > 0);
        }
    }
}
