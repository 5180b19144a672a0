//! Acceptance gate: eight criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the summary lines always reach the
//! console. Exits non-zero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use cubeslice::exact::combin::{binomial, factorial_q, harmonic};
use cubeslice::exact::identities::{run_identity, IdentityId, IdentitySamples, Status};
use cubeslice::exact::rational::{frac, int, Rational};
use cubeslice::exact::Poly;
use cubeslice::loggamma::{
    closed_form, closed_form_via_derivation, r1, r2, s1_total, s2_total, ClosedFormValue,
};
use cubeslice::quadrature::{
    exact_poly_cube, integrate_1d, integrate_reduced, mc_cube, mc_cube_with_threads, Integrand,
    QuadMethod, QuadPolicy,
};
use cubeslice::reduction::{gm_closed, gm_recursive};
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
/// (n, constant, [(prime, coefficient)])
type Fixture = (u32, Rational, Vec<(u64, Rational)>);
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q_pow(base: i64, e: u32) -> Rational {
    // 0^0 = 1
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= int(base);
    }
    acc
}

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

fn c(n: i64, k: i64) -> Rational {
    binomial(n as u64, k)
}

// ---------------------------------------------------------------- 1

fn fixtures() -> Outcome {
    // canonical prime-log form; every fixture has 1/2·log π
    let half = frac(1, 2);
    let expected: [Fixture; 3] = [
        (2, frac(-3, 4), vec![(2, half.clone())]),
        (3, frac(-11, 6), vec![(2, half.clone() + frac(4, 3))]),
        (
            4,
            frac(-25, 8),
            vec![(2, half.clone() - int(2)), (3, frac(27, 8))],
        ),
    ];
    for (n, constant, logs) in expected {
        let v = closed_form(n).map_err(|e| e.to_string())?;
        ensure(v.constant() == &constant, || {
            format!("n = {n}: constant {}", v.constant())
        })?;
        ensure(v.log_pi() == &half, || {
            format!("n = {n}: log π coefficient {}", v.log_pi())
        })?;
        ensure(v.log_primes().len() == logs.len(), || {
            format!("n = {n}: extra logs in {v}")
        })?;
        for (p, q) in &logs {
            ensure(&v.log_prime(*p) == q, || {
                format!("n = {n}: log {p} coefficient in {v}")
            })?;
        }
    }
    let four = closed_form(4).map_err(|e| e.to_string())?.to_string();
    ensure(
        four == "-25/8 + 1/2·logπ - 3/2·log2 + 27/8·log3",
        || four.clone(),
    )?;
    Ok("I(2), I(3), I(4) match".into())
}

// ---------------------------------------------------------------- 2

fn two_path() -> Outcome {
    for n in 2..=30 {
        let direct = closed_form(n).map_err(|e| e.to_string())?;
        let trace = closed_form_via_derivation(n).map_err(|e| format!("n = {n}: {e}"))?;
        ensure(trace.final_value == direct, || {
            format!("n = {n}: {} vs {direct}", trace.final_value)
        })?;
    }
    Ok("2 ≤ n ≤ 30 agree exactly".into())
}

// ---------------------------------------------------------------- 3

fn random_poly(rng: &mut StdRng) -> Poly {
    let degree = rng.random_range(0..=6);
    Poly::new(
        (0..=degree)
            .map(|_| frac(rng.random_range(-12..=12), rng.random_range(1..=9)))
            .collect(),
    )
}

fn reduced_side(n: u32, p: &Poly) -> Rational {
    let pre = Rational::one() / factorial_q(n as u64 - 1);
    let total: Rational = (1..=n as i64)
        .map(|m| {
            let g = gm_closed(n, m).unwrap();
            (&g * &p.shift(&int(m - 1))).integrate_01()
        })
        .sum();
    pre * total
}

fn polynomial_exactness() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let polys: Vec<Poly> = (0..200).map(|_| random_poly(&mut rng)).collect();
    let mut count = 0;
    for n in 1..=8 {
        for p in &polys {
            let cube = exact_poly_cube(n, p).map_err(|e| e.to_string())?;
            let red = reduced_side(n, p);
            ensure(cube == red, || {
                format!("n = {n}, p = {p}: cube {cube} vs reduced {red}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} exact equalities"))
}

// ---------------------------------------------------------------- 4

/// `A(n, k)` by `A(n,k) = (k+1)A(n-1,k) + (n-k)A(n-1,k-1)`.
fn eulerian(n: usize) -> Vec<i128> {
    let mut row = vec![1i128];
    for j in 2..=n {
        let prev = row;
        row = (0..j)
            .map(|k| {
                let stay = prev.get(k).map_or(0, |a| (k as i128 + 1) * a);
                let rise = if k == 0 {
                    0
                } else {
                    (j - k) as i128 * prev[k - 1]
                };
                stay + rise
            })
            .collect();
    }
    row
}

fn weight_suite() -> Outcome {
    for n in 1..=12u32 {
        let ni = n as i64;
        let gs: Vec<Poly> = (1..=ni).map(|m| gm_closed(n, m).unwrap()).collect();
        for m in 1..=ni {
            let rec = gm_recursive(n, m).map_err(|e| e.to_string())?;
            ensure(rec == gs[m as usize - 1], || {
                format!("n = {n}, m = {m}: closed vs recursive")
            })?;
        }
        let fact = factorial_q(n as u64 - 1);
        let total: Poly = gs.iter().sum();
        ensure(total == Poly::constant(fact.clone()), || {
            format!("n = {n}: Σ G_m = {total}")
        })?;
        let euler = eulerian(n as usize);
        let n_fact = factorial_q(n as u64);
        for m in 0..n as usize {
            let mirrored = gs[n as usize - 1 - m].compose_linear(&int(-1), &int(1));
            ensure(mirrored == gs[m], || {
                format!("n = {n}, m = {}: reflection", m + 1)
            })?;
            let expect = Rational::from_integer(euler[m].into()) * &fact / &n_fact;
            let got = gs[m].integrate_01();
            ensure(got == expect, || {
                format!("n = {n}, m = {}: ∫G = {got}, want {expect}", m + 1)
            })?;
        }
    }
    Ok("n ≤ 12: closed = recursive, partition, reflection, Eulerian volumes".into())
}

// ---------------------------------------------------------------- 5

fn s1_defining(n: u32) -> ClosedFormValue {
    let ni = n as i64;
    let nq = int(ni);
    let mut total = ClosedFormValue::zero();
    for k in 1..ni {
        for m in 0..k {
            let w = c(ni - 1, m) * sign(m);
            let a = (q_pow(k - m, n) - q_pow(-m, n)) / &nq * &w;
            let b = (q_pow(k - m - 1, n) - q_pow(-m, n)) / &nq * &w;
            total = total + ClosedFormValue::log_int(k as u64).unwrap().scale(&a);
            if k > 1 {
                total = total - ClosedFormValue::log_int(k as u64 - 1).unwrap().scale(&b);
            } else {
                assert!(b.is_zero(), "log 0 with non-zero weight");
            }
        }
    }
    total
}

fn s2_defining(n: u32) -> Rational {
    let ni = n as i64;
    let mut total = Rational::zero();
    for k in 1..ni {
        for m in 0..k {
            let inner: Rational = (1..=ni)
                .map(|r| {
                    (q_pow(k, r as u32) - q_pow(k - 1, r as u32)) / int(r)
                        * c(ni, r)
                        * q_pow(-m, (ni - r) as u32)
                })
                .sum();
            total += c(ni - 1, m) * sign(m) * inner;
        }
    }
    total / int(ni)
}

fn r1_defining(n: u32) -> Rational {
    let ni = n as i64;
    let inner: Rational = (1..=ni).map(|r| c(ni, r) * sign(r) / int(r)).sum();
    let outer: Rational = (1..=ni - 2)
        .map(|k| c(ni - 1, k) * sign(k) * q_pow(-k, n))
        .sum();
    -(outer * inner) / int(ni)
}

fn r2_defining(n: u32) -> Rational {
    let ni = n as i64;
    let total: Rational = (0..=ni - 2)
        .map(|m| {
            let inner: Rational = (1..=ni)
                .map(|r| q_pow(-m, (ni - r) as u32) * q_pow(ni - 1, r as u32) / int(r) * c(ni, r))
                .sum();
            c(ni - 1, m) * sign(m) * inner
        })
        .sum();
    total / int(ni)
}

fn closed_sums() -> Outcome {
    for n in 2..=10 {
        let e = |x: cubeslice::Error| x.to_string();
        let (s1, s2, a, b) = (
            s1_total(n).map_err(e)?,
            s2_total(n).map_err(e)?,
            r1(n).map_err(e)?,
            r2(n).map_err(e)?,
        );
        let s1d = s1_defining(n);
        ensure(s1 == s1d, || {
            format!("n = {n}: ΣS₁ {s1} vs brute force {s1d}")
        })?;
        let s2d = s2_defining(n);
        ensure(s2 == s2d, || {
            format!("n = {n}: ΣS₂ {s2} vs brute force {s2d}")
        })?;
        let r1d = r1_defining(n);
        ensure(a == r1d, || format!("n = {n}: R₁ {a} vs brute force {r1d}"))?;
        let r2d = r2_defining(n);
        ensure(b == r2d, || format!("n = {n}: R₂ {b} vs brute force {r2d}"))?;
        ensure(&a + &b == s2, || format!("n = {n}: R₁ + R₂ ≠ ΣS₂"))?;
        ensure(&r1d + &r2d == s2d, || {
            format!("n = {n}: brute-force R₁ + R₂ ≠ ΣS₂")
        })?;
        // harmonic sanity for the closed sums: ΣS₂ = (n-1)!(n-1)(1 - H_n/2)
        let h = harmonic(n as i64).map_err(e)?;
        let alt = factorial_q(n as u64 - 1) * int(n as i64 - 1) * (int(1) - h / int(2));
        ensure(alt == s2, || format!("n = {n}: ΣS₂ rearrangement"))?;
    }
    Ok("2 ≤ n ≤ 10: ΣS₁, ΣS₂, R₁, R₂ match brute force".into())
}

// ---------------------------------------------------------------- 6

fn identities() -> Outcome {
    let samples = IdentitySamples {
        seed: 2024,
        polys_per_n: 6,
        ..IdentitySamples::default()
    };
    let mut instances = 0;
    for id in IdentityId::ALL {
        let r = run_identity(id, 1..=30, &samples).map_err(|e| e.to_string())?;
        ensure(r.status == Status::Pass, || {
            format!("{id:?} failed: {:?}", r.witness)
        })?;
        instances += r.instances;
    }
    Ok(format!("six identities, {instances} instances, n ≤ 30"))
}

// ---------------------------------------------------------------- 7

fn closed_decimal(n: u32) -> f64 {
    closed_form(n)
        .unwrap()
        .numeric_value(15)
        .unwrap()
        .parse()
        .unwrap()
}

fn numeric_triangle() -> Outcome {
    let raabe = integrate_1d(
        &Integrand::LogGamma,
        &Rational::zero(),
        &Poly::from_ints(&[1]),
        &QuadPolicy::default().with_method(QuadMethod::TanhSinh),
    )
    .map_err(|e| e.to_string())?;
    let half_log_2pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    let d = (raabe.value - half_log_2pi).abs();
    ensure(d <= 1e-12, || format!("Raabe: |diff| = {d:e}"))?;
    let mut worst_quad: f64 = 0.0;
    let mut worst_z: f64 = 0.0;
    for n in 1..=8 {
        let target = closed_decimal(n);
        let q = integrate_reduced(n, &Integrand::LogGamma, &QuadPolicy::default())
            .map_err(|e| e.to_string())?;
        let dq = (q.value - target).abs();
        ensure(dq <= 1e-10, || {
            format!("n = {n}: reduced {} vs {target}", q.value)
        })?;
        worst_quad = worst_quad.max(dq);
        let mc = mc_cube(n, &Integrand::LogGamma, 10_000_000, 42).map_err(|e| e.to_string())?;
        let z = (mc.value - target).abs() / mc.error_estimate;
        ensure(z <= 4.0, || {
            format!(
                "n = {n}: mc {} ± {} is {z:.2}σ off",
                mc.value, mc.error_estimate
            )
        })?;
        worst_z = worst_z.max(z);
    }
    Ok(format!(
        "Raabe |diff| {d:.1e}; max |reduced - closed| {worst_quad:.1e}; max MC deviation {worst_z:.2}σ"
    ))
}

// ---------------------------------------------------------------- 8

fn cli_mc_value(threads: Option<usize>) -> Result<String, String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cubeslice"));
    cmd.args([
        "--format", "json", "--seed", "42", "eval", "--n", "4", "--f", "loggamma",
    ])
    .args(["--method", "mc", "--samples", "300000"]);
    if let Some(k) = threads {
        cmd.args(["--threads", &k.to_string()]);
    }
    let out = cmd.output().map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || {
        String::from_utf8_lossy(&out.stderr).into_owned()
    })?;
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    Ok(doc["results"]["mc"].to_string())
}

fn determinism() -> Outcome {
    let base = cli_mc_value(Some(1))?;
    for threads in [None, Some(2), Some(3), Some(8), Some(1)] {
        let other = cli_mc_value(threads)?;
        ensure(other == base, || {
            format!("threads {threads:?}: {other} vs {base}")
        })?;
    }
    let f = Integrand::polynomial(Poly::new(vec![frac(1, 3), int(-2), frac(5, 7)]));
    let one = mc_cube_with_threads(6, &f, 123_457, 9, Some(1)).map_err(|e| e.to_string())?;
    for k in [2, 4, 16] {
        let r = mc_cube_with_threads(6, &f, 123_457, 9, Some(k)).map_err(|e| e.to_string())?;
        ensure(r.value.to_bits() == one.value.to_bits(), || {
            format!("{k} threads differ")
        })?;
        ensure(
            r.error_estimate.to_bits() == one.error_estimate.to_bits(),
            || format!("{k} threads differ"),
        )?;
    }
    Ok("CLI and library runs bit-identical across thread counts".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("closed-form fixtures", fixtures, Duration::from_secs(1)),
        ("two-path closed form", two_path, Duration::from_secs(10)),
        (
            "polynomial exactness",
            polynomial_exactness,
            Duration::from_secs(60),
        ),
        (
            "weight polynomial suite",
            weight_suite,
            Duration::from_secs(10),
        ),
        (
            "closed sums vs defining sums",
            closed_sums,
            Duration::from_secs(30),
        ),
        ("identity suite", identities, Duration::from_secs(10)),
        (
            "numeric consistency triangle",
            numeric_triangle,
            Duration::from_secs(300),
        ),
        (
            "Monte Carlo determinism",
            determinism,
            Duration::from_secs(300),
        ),
    ];
    let mut failures = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(msg) if elapsed > *budget => Err(format!("{msg}; over time budget {budget:?}")),
            other => other,
        };
        match result {
            Ok(msg) => println!(
                "PASS [{}] {name} ({:.2}s): {msg}",
                i + 1,
                elapsed.as_secs_f64()
            ),
            Err(msg) => {
                failures += 1;
                println!(
                    "FAIL [{}] {name} ({:.2}s): {msg}",
                    i + 1,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
