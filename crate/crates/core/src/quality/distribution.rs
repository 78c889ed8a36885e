use std::collections::HashMap;

use super::rng::HarnessRng;
use super::HashUnderTest;

/// Result of hashing zero-filled messages of every length `0..=max_size`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroInputReport {
    pub max_size: usize,
    /// Groups of message lengths that share a digest, each sorted ascending.
    pub collisions: Vec<Vec<usize>>,
    /// For each output bit, how many of the digests have it set.
    pub bit_counts: [u64; 64],
}

impl ZeroInputReport {
    /// Number of digests examined (`max_size + 1`).
    pub fn messages(&self) -> u64 {
        self.max_size as u64 + 1
    }

    /// Number of colliding pairs across all groups.
    pub fn colliding_pairs(&self) -> u64 {
        self.collisions
            .iter()
            .map(|g| (g.len() * (g.len() - 1) / 2) as u64)
            .sum()
    }

    /// Output bits whose population count is more than five binomial standard
    /// deviations from half the message count.
    pub fn imbalanced_bits(&self) -> Vec<usize> {
        let n = self.messages() as f64;
        let limit = 5.0 * n.sqrt() / 2.0;
        (0..64)
            .filter(|&b| (self.bit_counts[b] as f64 - n / 2.0).abs() > limit)
            .collect()
    }

    pub fn is_imbalanced(&self) -> bool {
        !self.imbalanced_bits().is_empty()
    }
}

/// Hashes zero-filled messages of every length `0..=max_size` under one key
/// drawn from `seed`, then reports digest collisions and per-bit population.
pub fn zero_input_distinctness<H: HashUnderTest + ?Sized>(
    hash: &H,
    max_size: usize,
    seed: u64,
) -> ZeroInputReport {
    let mut key = [0u8; 32];
    HarnessRng::new(seed).fill(&mut key);
    let mut f = hash.keyed(&key);

    let zeros = vec![0u8; max_size];
    let mut by_digest: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut bit_counts = [0u64; 64];
    for len in 0..=max_size {
        let d = f(&zeros[..len]);
        for (b, count) in bit_counts.iter_mut().enumerate() {
            *count += (d >> b) & 1;
        }
        by_digest.entry(d).or_default().push(len);
    }
    let mut collisions: Vec<Vec<usize>> =
        by_digest.into_values().filter(|g| g.len() > 1).collect();
    collisions.sort();
    ZeroInputReport {
        max_size,
        collisions,
        bit_counts,
    }
}
