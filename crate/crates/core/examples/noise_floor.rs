//! How large does the maximum avalanche bias of a perfect hash get?
//!
//! Runs the avalanche tally on a ChaCha20 generator that returns fresh output
//! for every query, so every cell is an exact binomial draw. Prints the spread
//! of per-sample maximum bias in units of the single-cell standard deviation
//! `0.5 / sqrt(iterations)`, and how often candidate cutoffs would pass.
//!
//! ```text
//! cargo run --release --example noise_floor -- [samples] [iterations] [size]
//! ```

use keyhash::quality::avalanche::noise_floor;
use keyhash::quality::rng::derive_seed;
use keyhash::quality::{avalanche_bias, CsprngBaseline, CSPRNG_MAX_BIAS_FACTOR};
use rayon::prelude::*;

fn main() -> keyhash::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("numeric argument"));
    let samples = args.next().unwrap_or(200);
    let iterations = args.next().unwrap_or(20_000);
    let size = args.next().unwrap_or(32) as usize;
    let sigma = noise_floor(iterations);

    let mut z: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|s| {
            avalanche_bias(&CsprngBaseline, size, iterations, derive_seed(0xca1b, &[s]))
                .map(|m| m.max_bias() / sigma)
        })
        .collect::<keyhash::Result<_>>()?;
    z.sort_by(f64::total_cmp);

    println!(
        "{samples} samples, size {size} ({} cells), {iterations} iterations, sigma {:.5}",
        size * 8 * 64,
        sigma
    );
    println!(
        "max bias / sigma: min {:.2}  median {:.2}  p99 {:.2}  max {:.2}",
        z[0],
        z[z.len() / 2],
        z[(z.len() * 99 / 100).min(z.len() - 1)],
        z[z.len() - 1]
    );
    println!("median max bias {:.4}%", 100.0 * z[z.len() / 2] * sigma);
    for k in [4.0, 4.5, 5.0, 5.5, 6.0] {
        let pass = z.iter().filter(|&&v| v <= k).count();
        let mark = if k == CSPRNG_MAX_BIAS_FACTOR { "  <- pinned" } else { "" };
        println!("cutoff {k:.1} sigma: {:.2}% pass{mark}", 100.0 * pass as f64 / z.len() as f64);
    }
    Ok(())
}
