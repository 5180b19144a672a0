//! Reduced 1-D quadrature against the closed form, for log Γ and a few
//! smooth integrands.

use cubeslice::loggamma::closed_form;
use cubeslice::quadrature::{integrate_reduced, Integrand, QuadPolicy};

fn main() -> cubeslice::Result<()> {
    let policy = QuadPolicy::default();
    println!(
        "{:>3} {:>22} {:>22} {:>10}",
        "n", "reduced quadrature", "closed form", "|diff|"
    );
    for n in 1..=10 {
        let q = integrate_reduced(n, &Integrand::LogGamma, &policy)?;
        let c: f64 = closed_form(n)?.numeric_value(20)?.parse().unwrap();
        println!(
            "{n:>3} {:>22.16} {c:>22.16} {:>10.1e}",
            q.value,
            (q.value - c).abs()
        );
    }
    for spec in ["exp", "sin", "recip", "poly:1/2,0,-3,1"] {
        let f: Integrand = spec.parse()?;
        let r = integrate_reduced(5, &f, &policy)?;
        println!(
            "n = 5, f = {spec}: {:.15} (est. error {:.1e}, {} evaluations)",
            r.value, r.error_estimate, r.effort
        );
    }
    Ok(())
}
