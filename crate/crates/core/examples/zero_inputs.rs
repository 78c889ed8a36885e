//! Zero-filled messages of every length: do any two collide, and is any
//! output bit stuck?
//!
//! ```text
//! cargo run --release --example zero_inputs -- [max length]
//! ```

use keyhash::quality::{zero_input_distinctness, HashUnderTest, LengthOnly};
use keyhash::Algorithm;

fn main() {
    let max = std::env::args().nth(1).map_or(1024, |a| a.parse().expect("max length"));
    let hashes: [&dyn HashUnderTest; 4] = [
        &Algorithm::Highway64,
        &Algorithm::SipHash24,
        &Algorithm::SipTree24,
        &LengthOnly,
    ];
    for h in hashes {
        let r = zero_input_distinctness(h, max, 1);
        let groups: Vec<String> = r
            .collisions
            .iter()
            .take(3)
            .map(|g| format!("{}..={}", g[0], g[g.len() - 1]))
            .collect();
        println!(
            "{:<10} lengths 0..={max}: {} colliding pairs {:?}, {} lopsided output bits",
            h.name(),
            r.colliding_pairs(),
            groups,
            r.imbalanced_bits().len()
        );
    }
}
