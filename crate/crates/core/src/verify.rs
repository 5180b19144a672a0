//! Self-check suites run by the `verify` command.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exact::combin::factorial_q;
use crate::exact::identities::{run_identity, IdentityId, IdentitySamples, Status};
use crate::exact::rational::{big, int, Rational};
use crate::exact::Poly;
use crate::loggamma::{closed_form, closed_form_via_derivation};
use crate::quadrature::{
    integrate_1d, integrate_reduced, mc_cube, Integrand, QuadMethod, QuadPolicy,
};
use crate::reduction::{gm_closed, gm_partial_sum, gm_recursive, reduction_plan, tk_poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Reduction,
    Loggamma,
    All,
}

impl Suite {
    /// Largest accepted `n_max`.
    pub fn n_max_limit(self) -> u32 {
        match self {
            Suite::Identities => 30,
            _ => 12,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identities" => Ok(Suite::Identities),
            "reduction" => Ok(Suite::Reduction),
            "loggamma" => Ok(Suite::Loggamma),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse {
                what: "suite",
                token: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Identities => "identities",
            Suite::Reduction => "reduction",
            Suite::Loggamma => "loggamma",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    /// Largest `n` covered, or the single `n` checked.
    pub n: u32,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn new(
        suite: &str,
        name: impl Into<String>,
        n: u32,
        ok: bool,
        witness: impl FnOnce() -> String,
    ) -> Self {
        Check {
            suite: suite.to_string(),
            name: name.into(),
            n,
            status: if ok { Status::Pass } else { Status::Fail },
            witness: if ok { None } else { Some(witness()) },
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Monte Carlo samples per `n` in the log-gamma triangle.
    pub mc_samples: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            mc_samples: 1_000_000,
        }
    }
}

/// Runs `suite` for `1 ≤ n ≤ n_max`.
pub fn run_suite(suite: Suite, n_max: u32, opts: &VerifyOptions) -> Result<Vec<Check>> {
    if n_max == 0 || n_max > suite.n_max_limit() {
        return Err(invalid(format!(
            "n-max must be in 1..={} for suite {suite}, got {n_max}",
            suite.n_max_limit()
        )));
    }
    Ok(match suite {
        Suite::Identities => identity_checks(n_max, opts.seed)?,
        Suite::Reduction => reduction_checks(n_max)?,
        Suite::Loggamma => loggamma_checks(n_max, opts)?,
        Suite::All => {
            let mut v = identity_checks(n_max, opts.seed)?;
            v.extend(reduction_checks(n_max)?);
            v.extend(loggamma_checks(n_max, opts)?);
            v
        }
    })
}

fn identity_checks(n_max: u32, seed: u64) -> Result<Vec<Check>> {
    let samples = IdentitySamples {
        seed,
        ..IdentitySamples::default()
    };
    IdentityId::ALL
        .iter()
        .map(|&id| {
            let r = run_identity(id, 1..=n_max, &samples)?;
            let name = serde_json::to_value(id)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default();
            Ok(Check {
                suite: "identities".into(),
                name: format!("({}) {name}", id.letter()),
                n: n_max,
                status: r.status,
                witness: r.witness.map(|w| format!("n = {}, {}", w.n, w.params)),
            })
        })
        .collect()
}

/// Eulerian numbers `A(n, k)` for `0 ≤ k < n`, by the row recurrence.
pub fn eulerian_row(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for j in 2..=n as usize {
        let mut next = vec![BigInt::zero(); j];
        for (k, slot) in next.iter_mut().enumerate() {
            if k < row.len() {
                *slot += &row[k] * BigInt::from(k + 1);
            }
            if k >= 1 {
                *slot += &row[k - 1] * BigInt::from(j - k);
            }
        }
        row = next;
    }
    row
}

fn reduction_checks(n_max: u32) -> Result<Vec<Check>> {
    const S: &str = "reduction";
    let mut out = Vec::new();
    for n in 1..=n_max {
        let ni = n as i64;
        let closed: Vec<Poly> = (1..=ni).map(|m| gm_closed(n, m)).collect::<Result<_>>()?;
        let rec: Vec<Poly> = (1..=ni)
            .map(|m| gm_recursive(n, m))
            .collect::<Result<_>>()?;
        let bad = (0..n as usize).find(|&i| closed[i] != rec[i]);
        out.push(Check::new(
            S,
            "closed-vs-recursive",
            n,
            bad.is_none(),
            || format!("m = {}", bad.unwrap_or(0) + 1),
        ));

        let total: Poly = closed.iter().sum();
        let fact = factorial_q(n as u64 - 1);
        out.push(Check::new(
            S,
            "partition",
            n,
            total == Poly::constant(fact.clone()),
            || format!("sum = {total}"),
        ));

        let bad = (0..n as usize).find(|&i| closed[n as usize - 1 - i].reflect() != closed[i]);
        out.push(Check::new(S, "reflection", n, bad.is_none(), || {
            format!("m = {}", bad.unwrap_or(0) + 1)
        }));

        let row = eulerian_row(n);
        let nq = int(ni);
        let bad = (0..n as usize).find(|&i| closed[i].integrate_01() != big(row[i].clone()) / &nq);
        out.push(Check::new(S, "eulerian-volumes", n, bad.is_none(), || {
            format!("m = {}", bad.unwrap_or(0) + 1)
        }));

        let bad = (1..=ni).find(|&k| {
            let suffix: Poly = closed[k as usize - 1..].iter().sum();
            let expect = if k == 1 {
                Poly::constant(fact.clone())
            } else {
                &Poly::constant(fact.clone()) - &tk_poly(n, k - 1).unwrap_or_else(|_| Poly::zero())
            };
            gm_partial_sum(n, k)
                .map(|p| p != suffix || p != expect)
                .unwrap_or(true)
        });
        out.push(Check::new(S, "tail-sums", n, bad.is_none(), || {
            format!("k = {}", bad.unwrap_or(0))
        }));

        let plan = reduction_plan(n)?;
        let bad = (0..=n as usize + 2).find(|&d| {
            let p = Poly::monomial(d);
            crate::quadrature::exact_poly_cube(n, &p).map_or(true, |v| v != plan.integrate_poly(&p))
        });
        out.push(Check::new(
            S,
            "monomial-exactness",
            n,
            bad.is_none(),
            || format!("degree {}", bad.unwrap_or(0)),
        ));
    }
    Ok(out)
}

fn loggamma_checks(n_max: u32, opts: &VerifyOptions) -> Result<Vec<Check>> {
    const S: &str = "loggamma";
    let mut out = Vec::new();
    let raabe = integrate_1d(
        &Integrand::LogGamma,
        &Rational::zero(),
        &Poly::from_ints(&[1]),
        &QuadPolicy::default().with_method(QuadMethod::TanhSinh),
    )?;
    let half_log_2pi = closed_form(1)?.to_f64();
    let diff = (raabe.value - half_log_2pi).abs();
    out.push(Check::new(S, "raabe", 1, diff <= 1e-12, || {
        format!("|diff| = {diff:e}")
    }));
    for n in 1..=n_max {
        if n >= 2 {
            let r = closed_form_via_derivation(n);
            out.push(Check::new(S, "two-path", n, r.is_ok(), || {
                r.err().map(|e| e.to_string()).unwrap_or_default()
            }));
        }
        let target = closed_form(n)?
            .numeric_value(15)?
            .parse::<f64>()
            .unwrap_or(f64::NAN);
        let quad = integrate_reduced(n, &Integrand::LogGamma, &QuadPolicy::default())?;
        let d = (quad.value - target).abs();
        out.push(Check::new(S, "reduced-vs-closed", n, d <= 1e-10, || {
            format!("reduced {} vs closed {target}, |diff| = {d:e}", quad.value)
        }));
        let mc = mc_cube(n, &Integrand::LogGamma, opts.mc_samples, opts.seed)?;
        let z = (mc.value - target).abs() / mc.error_estimate;
        out.push(Check::new(S, "mc-vs-closed", n, z <= 4.0, || {
            format!(
                "mc {} ± {}, {z:.2} standard errors",
                mc.value, mc.error_estimate
            )
        }));
    }
    Ok(out)
}

/// True when every check passed.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(Check::passed)
}

/// Fraction `passed / total` for summaries.
pub fn pass_ratio(checks: &[Check]) -> f64 {
    let ok = checks.iter().filter(|c| c.passed()).count();
    ok as f64 / checks.len().max(1) as f64
}
