//! Shell weights for a few dimensions, and their sum.
//!
//! cargo run --example reduce_plan -- 5

use cubeslice::exact::Poly;
use cubeslice::reduction::{gm_recursive, reduction_plan};

fn main() -> cubeslice::Result<()> {
    let n: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);
    let plan = reduction_plan(n)?;
    println!("n = {n}, prefactor {}", plan.prefactor());
    for w in plan.weights() {
        let recursive = gm_recursive(n, w.shell.get() as i64)?;
        println!(
            "  G{} (shift {}) = {}   ∫ = {}   recursive agrees: {}",
            w.shell.get(),
            w.shift(),
            w.weight,
            w.weight.integrate_01(),
            recursive == w.weight
        );
    }
    let total: Poly = plan.weights().iter().map(|w| &w.weight).sum();
    println!("  Σ G_m = {total}");
    Ok(())
}
