//! Gauss–Legendre and tanh-sinh rules on `[0, 1]` with level refinement.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{Arc, Mutex, OnceLock};

/// Nodes and weights of an `n`-point Gauss–Legendre rule mapped to `[0, 1]`.
#[derive(Debug)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn build_rule(n: usize) -> GaussRule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // x > 0 here; mirror pairs on [0, 1]
        nodes[i] = 0.5 * (1.0 - x);
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = 0.5 * w;
        weights[n - 1 - i] = 0.5 * w;
    }
    GaussRule { nodes, weights }
}

/// Cached `n`-point rule.
pub fn gauss_legendre(n: usize) -> Arc<GaussRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().unwrap().get(&n) {
        return r.clone();
    }
    let rule = Arc::new(build_rule(n));
    cache.lock().unwrap().insert(n, rule.clone());
    rule
}

/// Node count at refinement level `level`.
pub fn gauss_nodes_at(level: u32) -> usize {
    8 << level
}

#[derive(Debug, Clone, Copy)]
pub struct RuleOutcome {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
    pub converged: bool,
}

/// Gauss–Legendre with `8·2^L` nodes at level `L`; the error estimate is
/// the difference between the last two levels.
pub fn integrate_gauss(f: &dyn Fn(f64) -> f64, abs_tol: f64, max_level: u32) -> RuleOutcome {
    let mut evaluations = 0;
    let mut prev: Option<f64> = None;
    let mut last = RuleOutcome {
        value: f64::NAN,
        error_estimate: f64::INFINITY,
        evaluations: 0,
        converged: false,
    };
    for level in 0..=max_level {
        let rule = gauss_legendre(gauss_nodes_at(level));
        let value = neumaier_sum(
            rule.nodes
                .iter()
                .zip(&rule.weights)
                .map(|(&x, &w)| w * f(x)),
        );
        evaluations += rule.nodes.len() as u64;
        if let Some(p) = prev {
            let err = (value - p).abs();
            last = RuleOutcome {
                value,
                error_estimate: err,
                evaluations,
                converged: err <= abs_tol,
            };
            if last.converged {
                return last;
            }
        }
        prev = Some(value);
    }
    last.evaluations = evaluations;
    last
}

const TANH_SINH_T_MAX: f64 = 4.0;

/// Abscissa and weight for `t` under `x = ½(1 + tanh(π/2 · sinh t))`.
/// The abscissa is computed from its distance to the nearer endpoint so
/// points near 0 keep full relative precision.
fn tanh_sinh_point(t: f64) -> (f64, f64) {
    let u = FRAC_PI_2 * t.sinh();
    let e = (-2.0 * u.abs()).exp();
    let near = e / (1.0 + e);
    let x = if t < 0.0 { near } else { 1.0 - near };
    let cosh_u = 0.5 * (u.abs().exp() + (-u.abs()).exp());
    let w = 0.5 * FRAC_PI_2 * t.cosh() / (cosh_u * cosh_u);
    (x, w)
}

/// Tanh-sinh on `[0, 1]` truncated to `|t| <= 4`, step `2^-L` at level
/// `L`; each level only evaluates the new odd nodes.
pub fn integrate_tanh_sinh(f: &dyn Fn(f64) -> f64, abs_tol: f64, max_level: u32) -> RuleOutcome {
    let eval = |t: f64| {
        let (x, w) = tanh_sinh_point(t);
        if x <= 0.0 || x >= 1.0 || w == 0.0 {
            0.0
        } else {
            w * f(x)
        }
    };
    let mut h = 1.0;
    let steps = TANH_SINH_T_MAX as i64;
    let mut sum = neumaier_sum((-steps..=steps).map(|k| eval(k as f64)));
    let mut evaluations = (2 * steps + 1) as u64;
    let mut value = h * sum;
    let mut last = RuleOutcome {
        value,
        error_estimate: f64::INFINITY,
        evaluations,
        converged: false,
    };
    for level in 1..=max_level {
        h *= 0.5;
        let count = (TANH_SINH_T_MAX / h) as i64;
        let fresh = neumaier_sum(
            (-count..=count)
                .filter(|k| k.rem_euclid(2) == 1)
                .map(|k| eval(k as f64 * h)),
        );
        evaluations += count as u64 + 1;
        sum += fresh;
        let next = h * sum;
        let err = (next - value).abs();
        value = next;
        last = RuleOutcome {
            value,
            error_estimate: err,
            evaluations,
            converged: level >= 2 && err <= abs_tol,
        };
        if last.converged {
            return last;
        }
    }
    last
}

/// Compensated (Neumaier) summation in iteration order.
pub fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = NeumaierSum::default();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

#[derive(Debug, Default, Clone, Copy)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.compensation += (self.sum - t) + v;
        } else {
            self.compensation += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &NeumaierSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_weights_sum_to_one() {
        for n in [1, 2, 3, 8, 17, 64, 512] {
            let r = gauss_legendre(n);
            let s: f64 = r.weights.iter().sum();
            assert!((s - 1.0).abs() < 1e-14, "n = {n}: {s}");
            assert!(r.nodes.iter().all(|&x| x > 0.0 && x < 1.0));
        }
        let r = gauss_legendre(3);
        assert!((r.nodes[1] - 0.5).abs() < 1e-16);
        assert!((r.weights[1] - 4.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn gauss_exact_for_low_degree() {
        // n-point rule is exact through degree 2n-1
        let r = gauss_legendre(4);
        for d in 0..8 {
            let q: f64 = r
                .nodes
                .iter()
                .zip(&r.weights)
                .map(|(&x, &w)| w * x.powi(d))
                .sum();
            assert!((q - 1.0 / (d as f64 + 1.0)).abs() < 1e-15, "degree {d}");
        }
    }

    #[test]
    fn tanh_sinh_handles_log_singularity() {
        // ∫₀¹ -ln x dx = 1
        let out = integrate_tanh_sinh(&|x: f64| -x.ln(), 1e-14, 8);
        assert!(out.converged);
        assert!((out.value - 1.0).abs() < 1e-14, "{}", out.value);
        // ∫₀¹ x^{-1/2} dx = 2
        let out = integrate_tanh_sinh(&|x: f64| x.powf(-0.5), 1e-12, 8);
        assert!((out.value - 2.0).abs() < 1e-10, "{}", out.value);
    }

    #[test]
    fn gauss_smooth_integrand() {
        let out = integrate_gauss(&|x: f64| x.exp(), 1e-14, 6);
        assert!(out.converged);
        assert!((out.value - (std::f64::consts::E - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn neumaier_beats_naive() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(neumaier_sum(xs), 2.0);
    }
}
