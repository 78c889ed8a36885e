use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64;

use crate::error::{Error, Result};

/// log2 of the harness generator's period.
pub const PERIOD_LOG2: u32 = 128;

/// Largest number of 64-bit draws allowed from one generator stream: the cube
/// root of its period, rounded down to a power of two (2^42).
pub const DRAW_BUDGET: u128 = 1 << (PERIOD_LOG2 / 3);

/// Deterministic input generator for the statistical harness.
///
/// A 128-bit-state permuted congruential generator (period 2^128). Every
/// sample gets its own stream, seeded from the master seed through
/// [`derive_seed`].
#[derive(Clone, Debug)]
pub struct HarnessRng {
    inner: Pcg64,
    draws: u128,
}

impl HarnessRng {
    pub fn new(seed: u64) -> Self {
        HarnessRng {
            inner: Pcg64::seed_from_u64(seed),
            draws: 0,
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.draws += 1;
        self.inner.next_u64()
    }

    /// Fills `out` from whole 64-bit draws (a partial final word discards its
    /// unused bytes).
    #[inline]
    pub fn fill(&mut self, out: &mut [u8]) {
        for chunk in out.chunks_mut(8) {
            let word = self.next_u64().to_le_bytes();
            chunk.copy_from_slice(&word[..chunk.len()]);
        }
    }

    pub fn draws(&self) -> u128 {
        self.draws
    }
}

/// Fails when a run would need more than [`DRAW_BUDGET`] draws from one stream.
pub fn check_budget(draws: u128) -> Result<()> {
    if draws > DRAW_BUDGET {
        Err(Error::GeneratorBudget {
            requested: draws,
            budget: DRAW_BUDGET,
        })
    } else {
        Ok(())
    }
}

/// Seed for one harness stream, mixed from the master seed and stream labels.
pub fn derive_seed(master: u64, labels: &[u64]) -> u64 {
    labels
        .iter()
        .fold(mix64(master ^ 0x6a09_e667_f3bc_c908), |acc, &l| {
            mix64(acc ^ mix64(l.wrapping_add(0x9e37_79b9_7f4a_7c15)))
        })
}

// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
