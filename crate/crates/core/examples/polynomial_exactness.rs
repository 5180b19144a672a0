//! Exact cube integrals of polynomials two ways: iterated antiderivatives
//! over the cube, and the 1-D reduction.

use cubeslice::exact::Poly;
use cubeslice::quadrature::exact_poly_cube;
use cubeslice::reduction::reduction_plan;

fn main() -> cubeslice::Result<()> {
    let polys = [
        Poly::monomial(2),
        Poly::from_ints(&[3, -1, 0, 2]),
        Poly::from_ints(&[0, 0, 0, 0, 0, 0, 1]),
    ];
    for p in &polys {
        for n in [1, 2, 5, 8] {
            let cube = exact_poly_cube(n, p)?;
            let reduced = reduction_plan(n)?.integrate_poly(p);
            println!(
                "n = {n}, p = {p}: {cube} {} {reduced}",
                if cube == reduced { "=" } else { "≠" }
            );
        }
    }
    Ok(())
}
