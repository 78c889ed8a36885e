//! How many finalization rounds does HighwayHash need?
//!
//! Hashes 3-byte messages (the hardest case: one remainder packet, almost no
//! input entropy) with 1 to 4 permute-and-update rounds and reports the
//! largest and average deviation from a 50% bit-flip rate.
//!
//! ```text
//! cargo run --release --example finalization_rounds -- [log2 inputs | all]
//! ```

use keyhash::quality::{finalization_bias_experiment, InputSet};

fn main() {
    let inputs = match std::env::args().nth(1).as_deref() {
        Some("all") => InputSet::Exhaustive,
        Some(n) => InputSet::Sampled { count: 1 << n.parse::<u32>().expect("log2 of input count"), seed: 3 },
        None => InputSet::Sampled { count: 1 << 20, seed: 3 },
    };
    let floor = 0.5 / (inputs.len() as f64).sqrt();
    println!("{} inputs, binomial noise floor {:.5}%", inputs.len(), 100.0 * floor);
    println!("{:>6} {:>12} {:>12}", "rounds", "max bias", "mean bias");
    for rounds in 1..=4 {
        let r = finalization_bias_experiment(rounds, inputs, 0x5eed);
        println!("{:>6} {:>11.4}% {:>11.4}%", r.rounds, 100.0 * r.max_bias, 100.0 * r.mean_bias);
    }
}
