//! Cycles per byte at the `table1` preset sizes (or the full sweep) for every hash.
//!
//! ```text
//! cargo run --release --example bench_table1 -- [table1|sweep]
//! ```
//!
//! Numbers are in timer ticks of this machine; the header line records which
//! timer, its frequency and the HighwayHash backend in use.

use keyhash::bench::{BenchConfig, BenchReport, Preset, Timer};
use keyhash::quality::HashUnderTest;
use keyhash::Algorithm;

fn main() -> keyhash::Result<()> {
    let preset: Preset = std::env::args().nth(1).as_deref().unwrap_or("table1").parse()?;
    let config = BenchConfig {
        sizes: preset.sizes(),
        ..BenchConfig::default()
    };
    let hashes: Vec<&dyn HashUnderTest> = Algorithm::ALL
        .iter()
        .filter(|a| **a != Algorithm::Highway256)
        .map(|a| a as &dyn HashUnderTest)
        .collect();
    let report = BenchReport::run(&hashes, &config, &Timer::detect())?;
    print!("{}", report.to_text());
    if let (Some(h), Some(s)) = (report.find("highway64", 1024), report.find("siphash24", 1024)) {
        println!("highway64 / siphash24 at 1024 bytes: {:.2}x", h.bytes_per_tick() / s.bytes_per_tick());
    }
    Ok(())
}
