//! Avalanche bias per input size: flip every input bit, count output flips,
//! report the median over samples of the worst cell.
//!
//! ```text
//! cargo run --release --example avalanche -- [hash] [iterations] [samples]
//! ```
//!
//! `hash` is any algorithm name or one of the harness hashes `first8bytes`,
//! `constant`, `length`, `chacha20-rng`.

use keyhash::quality::avalanche::noise_floor;
use keyhash::quality::{lookup, run_avalanche, AvalancheConfig};

fn main() -> keyhash::Result<()> {
    let mut args = std::env::args().skip(1);
    let hash = lookup(&args.next().unwrap_or_else(|| "highway64".into()))?;
    let iterations = args.next().map_or(20_000, |a| a.parse().expect("iterations"));
    let samples = args.next().map_or(5, |a| a.parse().expect("samples"));

    let config = AvalancheConfig {
        sizes: vec![4, 8, 16, 24, 32],
        iterations,
        samples,
        ..AvalancheConfig::default()
    };
    let report = run_avalanche(hash.as_ref(), &config)?;
    print!("{}", report.to_text());
    println!(
        "single-cell standard deviation at {iterations} iterations: {:.3}%",
        100.0 * noise_floor(iterations)
    );
    print!("{}", report.to_table());
    Ok(())
}
