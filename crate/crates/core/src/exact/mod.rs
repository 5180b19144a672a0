//! Exact scalars, polynomials and combinatorial primitives.

pub mod combin;
pub mod identities;
pub mod poly;
pub mod rational;

pub use combin::{binomial, factorial, harmonic, shifted_power};
pub use identities::{check_identity, IdentityCase, IdentityCheck, IdentityId, IdentityReport};
pub use poly::{DyadicEvaluator, Poly};
pub use rational::{frac, int, parse_rational, Rational};

/// Exact `∫₀¹ p(t) dt`.
pub fn integrate_01(p: &Poly) -> Rational {
    p.integrate_01()
}
