//! Monte Carlo over `[0,1]^n` with a counter-based stream.
//!
//! Sample `i` reads its `n` coordinates from the ChaCha8 keystream of `seed`
//! starting at word `2·n·i`, so any sample can be generated independently.
//! Samples are grouped into fixed blocks; block sums are combined in block
//! order, which makes the result independent of how blocks are scheduled.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::rules::NeumaierSum;
use super::{Integrand, MethodTag, NumericReport};
use crate::error::{invalid, Result};

const BLOCK: u64 = 1 << 14;

/// Maps 52 random bits to the open interval `(0, 1)`; the half-step offset
/// is exact at this width.
fn open_unit(u: u64) -> f64 {
    ((u >> 12) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64)
}

#[derive(Default, Clone, Copy)]
struct Moments {
    sum: NeumaierSum,
    sum_sq: NeumaierSum,
}

fn run_block(n: u32, f: &Integrand, seed: u64, start: u64, end: u64) -> Moments {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_word_pos(start as u128 * n as u128 * 2);
    let mut m = Moments::default();
    for _ in start..end {
        let mut s = 0.0;
        for _ in 0..n {
            s += open_unit(rng.next_u64());
        }
        let y = f.eval(s);
        m.sum.add(y);
        m.sum_sq.add(y * y);
    }
    m
}

/// Sample mean of `f(x₁+…+xₙ)` with its standard error.
pub fn mc_cube(n: u32, f: &Integrand, samples: u64, seed: u64) -> Result<NumericReport> {
    mc_cube_with_threads(n, f, samples, seed, None)
}

/// [`mc_cube`] on a dedicated pool of `threads` workers (`None` uses the
/// global pool). The value does not depend on the thread count.
pub fn mc_cube_with_threads(
    n: u32,
    f: &Integrand,
    samples: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<NumericReport> {
    if n == 0 {
        return Err(invalid("n must be >= 1"));
    }
    if samples < 2 {
        return Err(invalid(format!("samples must be >= 2, got {samples}")));
    }
    let blocks = samples.div_ceil(BLOCK);
    let work = || -> Vec<Moments> {
        (0..blocks)
            .into_par_iter()
            .map(|b| run_block(n, f, seed, b * BLOCK, ((b + 1) * BLOCK).min(samples)))
            .collect()
    };
    let parts = match threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| invalid(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };
    let mut total = Moments::default();
    for p in &parts {
        total.sum.merge(&p.sum);
        total.sum_sq.merge(&p.sum_sq);
    }
    let count = samples as f64;
    let mean = total.sum.value() / count;
    let var = ((total.sum_sq.value() - count * mean * mean) / (count - 1.0)).max(0.0);
    Ok(NumericReport {
        value: mean,
        error_estimate: (var / count).sqrt(),
        method: MethodTag::MonteCarlo,
        effort: samples,
        seed: Some(seed),
        converged: mean.is_finite(),
        unconverged_shells: Vec::new(),
    })
}
