//! Seeded Monte Carlo over the cube; same seed, same bits, any thread count.

use cubeslice::loggamma::closed_form;
use cubeslice::quadrature::{mc_cube_with_threads, Integrand};

fn main() -> cubeslice::Result<()> {
    let n = 3;
    let target = closed_form(n)?.to_f64();
    for threads in [1, 2, 8] {
        let r = mc_cube_with_threads(n, &Integrand::LogGamma, 2_000_000, 42, Some(threads))?;
        println!(
            "{threads} threads: {:.12} ± {:.2e}  ({:+.2} σ from closed form), bits {:016x}",
            r.value,
            r.error_estimate,
            (r.value - target) / r.error_estimate,
            r.value.to_bits()
        );
    }
    Ok(())
}
