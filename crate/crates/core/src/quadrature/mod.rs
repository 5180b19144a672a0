//! Numeric oracles: 1-D quadrature of `weight(t)·f(t+shift)`, the reduced
//! integral assembled from shells, Monte Carlo over the cube, and an exact
//! cube integral for polynomial `f` that bypasses the reduction entirely.

pub mod lgamma;
pub mod mc;
pub mod rules;

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exact::poly::DyadicEvaluator;
use crate::exact::rational::{int, parse_rational, Rational};
use crate::exact::Poly;
use crate::reduction::reduction_plan;

pub use lgamma::loggamma_numeric;
pub use mc::{mc_cube, mc_cube_with_threads};

/// The function `f` applied to `x₁+…+xₙ`.
#[derive(Debug, Clone)]
pub enum Integrand {
    LogGamma,
    Polynomial(PolyIntegrand),
    Exp,
    Sin,
    /// `1 / (1 + x)`
    ReciprocalShift,
}

/// Polynomial `f` with a precomputed exact evaluator.
#[derive(Debug, Clone)]
pub struct PolyIntegrand {
    poly: Poly,
    evaluator: DyadicEvaluator,
}

impl PolyIntegrand {
    pub fn poly(&self) -> &Poly {
        &self.poly
    }
}

impl Integrand {
    pub fn polynomial(p: Poly) -> Self {
        let evaluator = p.evaluator();
        Integrand::Polynomial(PolyIntegrand { poly: p, evaluator })
    }

    pub fn constant_one() -> Self {
        Self::polynomial(Poly::from_ints(&[1]))
    }

    /// Pointwise value. Log-gamma returns NaN outside `x > 0`.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Integrand::LogGamma => {
                if x > 0.0 {
                    lgamma::ln_gamma(x)
                } else {
                    f64::NAN
                }
            }
            Integrand::Polynomial(p) => p.evaluator.eval(x),
            Integrand::Exp => x.exp(),
            Integrand::Sin => x.sin(),
            Integrand::ReciprocalShift => 1.0 / (1.0 + x),
        }
    }

    /// True when `f` blows up at the left end of the first shell.
    pub fn singular_at_zero(&self) -> bool {
        matches!(self, Integrand::LogGamma)
    }

    /// Rejects shifts whose interval `(shift, shift+1]` leaves the domain.
    fn check_shift(&self, shift: &Rational) -> Result<()> {
        if shift.is_negative() {
            return Err(Error::Domain {
                function: "shift",
                value: shift.to_string(),
            });
        }
        Ok(())
    }
}

/// Parses `loggamma`, `poly:c0,c1,...`, `exp`, `sin` or `recip`.
impl FromStr for Integrand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "loggamma" | "log-gamma" => return Ok(Integrand::LogGamma),
            "exp" => return Ok(Integrand::Exp),
            "sin" => return Ok(Integrand::Sin),
            "recip" | "reciprocal-shift" => return Ok(Integrand::ReciprocalShift),
            _ => {}
        }
        let Some(body) = s.strip_prefix("poly:") else {
            return Err(Error::Parse {
                what: "integrand",
                token: s.to_string(),
            });
        };
        let coeffs = body
            .split(',')
            .map(|tok| {
                parse_rational(tok).map_err(|_| Error::Parse {
                    what: "polynomial coefficient",
                    token: tok.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Integrand::polynomial(Poly::new(coeffs)))
    }
}

impl fmt::Display for Integrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integrand::LogGamma => write!(f, "loggamma"),
            Integrand::Polynomial(p) => {
                let cs: Vec<String> = p.poly.coeffs().iter().map(|c| c.to_string()).collect();
                if cs.is_empty() {
                    write!(f, "poly:0")
                } else {
                    write!(f, "poly:{}", cs.join(","))
                }
            }
            Integrand::Exp => write!(f, "exp"),
            Integrand::Sin => write!(f, "sin"),
            Integrand::ReciprocalShift => write!(f, "recip"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadMethod {
    GaussLegendre,
    TanhSinh,
}

/// Tag stored in a [`NumericReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodTag {
    GaussLegendre,
    TanhSinh,
    /// Shell sum; individual shells may use either rule.
    Reduced,
    MonteCarlo,
}

impl From<QuadMethod> for MethodTag {
    fn from(m: QuadMethod) -> Self {
        match m {
            QuadMethod::GaussLegendre => MethodTag::GaussLegendre,
            QuadMethod::TanhSinh => MethodTag::TanhSinh,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadPolicy {
    pub method: QuadMethod,
    pub target_abs_tol: f64,
    pub max_level: u32,
}

impl Default for QuadPolicy {
    fn default() -> Self {
        QuadPolicy {
            method: QuadMethod::GaussLegendre,
            target_abs_tol: 1e-13,
            max_level: 8,
        }
    }
}

impl QuadPolicy {
    pub fn with_method(mut self, method: QuadMethod) -> Self {
        self.method = method;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.target_abs_tol = tol;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.target_abs_tol.is_nan()
            || self.target_abs_tol <= 0.0
            || self.target_abs_tol.is_infinite()
        {
            return Err(invalid(format!(
                "target tolerance must be positive, got {}",
                self.target_abs_tol
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericReport {
    pub value: f64,
    pub error_estimate: f64,
    pub method: MethodTag,
    /// Function evaluations (quadrature) or samples (Monte Carlo).
    pub effort: u64,
    pub seed: Option<u64>,
    pub converged: bool,
    /// Shells (1-based) whose quadrature did not reach tolerance.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unconverged_shells: Vec<u32>,
}

/// `∫₀¹ weight(t)·f(t+shift) dt`.
///
/// Polynomial `f` is folded into one exact polynomial before evaluation,
/// so the only rounding is one per node.
pub fn integrate_1d(
    f: &Integrand,
    shift: &Rational,
    weight: &Poly,
    policy: &QuadPolicy,
) -> Result<NumericReport> {
    policy.validate()?;
    f.check_shift(shift)?;
    let outcome = match f {
        Integrand::Polynomial(p) => {
            let combined = (weight * &p.poly.shift(shift)).evaluator();
            run_rule(&|t| combined.eval(t), policy)
        }
        _ => {
            let w = weight.evaluator();
            let s = shift.to_f64().unwrap_or(f64::NAN);
            if s == 0.0 {
                run_rule(&|t| w.eval(t) * f.eval(t), policy)
            } else {
                run_rule(&|t| w.eval(t) * f.eval(t + s), policy)
            }
        }
    };
    Ok(NumericReport {
        value: outcome.value,
        error_estimate: outcome.error_estimate,
        method: policy.method.into(),
        effort: outcome.evaluations,
        seed: None,
        converged: outcome.converged && outcome.value.is_finite(),
        unconverged_shells: Vec::new(),
    })
}

fn run_rule(g: &dyn Fn(f64) -> f64, policy: &QuadPolicy) -> rules::RuleOutcome {
    match policy.method {
        QuadMethod::GaussLegendre => {
            rules::integrate_gauss(g, policy.target_abs_tol, policy.max_level)
        }
        QuadMethod::TanhSinh => {
            rules::integrate_tanh_sinh(g, policy.target_abs_tol, policy.max_level)
        }
    }
}

/// `prefactor · Σ_m ∫₀¹ G_m(t) f(t+m-1) dt`.
///
/// Each shell gets `tol·(n-1)!/n` so the assembled error stays within the
/// policy tolerance. The first shell switches to tanh-sinh when `f` is
/// singular at 0. Shells run in parallel and are summed in ascending order.
pub fn integrate_reduced(n: u32, f: &Integrand, policy: &QuadPolicy) -> Result<NumericReport> {
    policy.validate()?;
    let plan = reduction_plan(n)?;
    let prefactor = plan.prefactor().to_f64().unwrap_or(0.0);
    let shell_tol = policy.target_abs_tol / (prefactor * n as f64);
    let reports: Vec<Result<NumericReport>> = plan
        .weights()
        .par_iter()
        .map(|sw| {
            let mut p = policy.with_tol(shell_tol);
            if sw.shift() == 0 && f.singular_at_zero() {
                p.method = QuadMethod::TanhSinh;
            }
            integrate_1d(f, &int(sw.shift() as i64), &sw.weight, &p)
        })
        .collect();
    let mut sum = rules::NeumaierSum::default();
    let mut err = 0.0;
    let mut effort = 0;
    let mut unconverged = Vec::new();
    for (i, r) in reports.into_iter().enumerate() {
        let r = r.map_err(|e| invalid(format!("shell m = {}: {e}", i + 1)))?;
        sum.add(r.value);
        err += r.error_estimate;
        effort += r.effort;
        if !r.converged {
            unconverged.push(i as u32 + 1);
        }
    }
    Ok(NumericReport {
        value: prefactor * sum.value(),
        error_estimate: prefactor * err,
        method: MethodTag::Reduced,
        effort,
        seed: None,
        converged: unconverged.is_empty(),
        unconverged_shells: unconverged,
    })
}

/// Exact `∫_{[0,1]^n} p(x₁+…+xₙ) dx` by integrating out one coordinate at a
/// time: with `P' = q`, `∫₀¹ q(s+x) dx = P(s+1) - P(s)`.
pub fn exact_poly_cube(n: u32, p: &Poly) -> Result<Rational> {
    if n == 0 {
        return Err(invalid("n must be >= 1"));
    }
    let one = int(1);
    let mut q = p.clone();
    for _ in 0..n {
        let big_p = q.antiderivative();
        q = &big_p.shift(&one) - &big_p;
    }
    Ok(q.eval(&Rational::zero()))
}
