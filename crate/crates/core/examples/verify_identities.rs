//! Runs the six binomial-sum identities exactly over a range of n.

use cubeslice::exact::identities::{run_identity, IdentityId, IdentitySamples};

fn main() -> cubeslice::Result<()> {
    let samples = IdentitySamples {
        seed: 7,
        ..IdentitySamples::default()
    };
    for id in IdentityId::ALL {
        let r = run_identity(id, 1..=30, &samples)?;
        println!(
            "({}) {:?}: {:?} over n in {:?}, {} instances",
            id.letter(),
            id,
            r.status,
            r.n_range,
            r.instances
        );
        if let Some(w) = r.witness {
            println!("    counterexample at n = {}: {}", w.n, w.params);
        }
    }
    Ok(())
}
