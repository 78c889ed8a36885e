use rayon::prelude::*;

use super::avalanche::FlipTally;
use super::rng::HarnessRng;
use crate::highway::{HighwayState, Key256};

/// Input bits in a 3-byte message.
const INPUT_BITS: usize = 24;

/// Which 3-byte messages feed the experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputSet {
    /// All 2^24 messages.
    Exhaustive,
    /// `count` messages drawn uniformly (with replacement) from `seed`.
    Sampled { count: u64, seed: u64 },
}

impl InputSet {
    pub fn len(&self) -> u64 {
        match *self {
            InputSet::Exhaustive => 1 << INPUT_BITS,
            InputSet::Sampled { count, .. } => count,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn messages(&self) -> Vec<u32> {
        match *self {
            InputSet::Exhaustive => (0..1u32 << INPUT_BITS).collect(),
            InputSet::Sampled { count, seed } => {
                let mut rng = HarnessRng::new(seed);
                (0..count)
                    .map(|_| (rng.next_u64() & ((1 << INPUT_BITS) - 1)) as u32)
                    .collect()
            }
        }
    }
}

/// Avalanche of 3-byte messages through a HighwayHash variant with a chosen
/// number of finalization rounds.
#[derive(Clone, Debug, PartialEq)]
pub struct FinalizationBias {
    pub rounds: usize,
    pub inputs: u64,
    /// Largest `|flip_rate - 0.5|` over the 24 x 64 cells.
    pub max_bias: f64,
    /// Average `|flip_rate - 0.5|` over the 24 x 64 cells.
    pub mean_bias: f64,
}

fn hash3(key: &Key256, rounds: usize, msg: u32) -> u64 {
    let mut state = HighwayState::new(key);
    state.absorb(&msg.to_le_bytes()[..3]);
    state.finalize_with_rounds(rounds)[0]
}

/// Flips each of the 24 input bits of every message and tallies which bits of
/// the 64-bit digest (lane 0) change, using `rounds` finalization rounds.
///
/// The key is drawn from `key_seed`, so runs with different round counts but
/// the same seed see the same key and inputs.
pub fn finalization_bias_experiment(
    rounds: usize,
    inputs: InputSet,
    key_seed: u64,
) -> FinalizationBias {
    let mut key = [0u8; 32];
    HarnessRng::new(key_seed).fill(&mut key);
    let key = Key256::from_bytes(&key);
    let messages = inputs.messages();

    let counts = messages
        .par_chunks(1 << 14)
        .map(|chunk| {
            let mut tally = FlipTally::new(INPUT_BITS);
            for &msg in chunk {
                let base = hash3(&key, rounds, msg);
                for bit in 0..INPUT_BITS {
                    tally.add(bit, hash3(&key, rounds, msg ^ (1 << bit)) ^ base);
                }
                tally.end_trial();
            }
            tally.into_counts()
        })
        .reduce(
            || vec![0u64; INPUT_BITS * 64],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );

    let n = messages.len().max(1) as f64;
    let biases = counts.iter().map(|&c| (c as f64 / n - 0.5).abs());
    FinalizationBias {
        rounds,
        inputs: messages.len() as u64,
        max_bias: biases.clone().fold(0.0, f64::max),
        mean_bias: biases.sum::<f64>() / counts.len() as f64,
    }
}
