//! The intermediate sums of the second route to the closed form.

use cubeslice::loggamma::closed_form_via_derivation;

fn main() -> cubeslice::Result<()> {
    for n in 2..=7 {
        let t = closed_form_via_derivation(n)?;
        println!("n = {n}");
        println!("  Σ S1     = {}", t.s1_total);
        println!(
            "  Σ S2     = {}  (R1 = {}, R2 = {})",
            t.s2_total, t.r1, t.r2
        );
        println!("  ∫Σ T·log = {}", t.tk_integral_total);
        println!("  I(n)     = {}", t.final_value);
    }
    Ok(())
}
