//! Exact value of the cube integral of log Γ(x₁+…+xₙ), with decimals.
//!
//! cargo run --example loggamma_closed_form -- 12 40

use cubeslice::loggamma::closed_form;

fn main() -> cubeslice::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u32>().ok());
    let n_max = args.next().flatten().unwrap_or(8);
    let digits = args.next().flatten().unwrap_or(20);
    for n in 1..=n_max {
        let v = closed_form(n)?;
        println!("I({n}) = {v}");
        println!("     ≈ {}", v.numeric_value(digits)?);
    }
    Ok(())
}
