use std::fmt::Write as _;

use rayon::prelude::*;

use super::rng::{check_budget, derive_seed, HarnessRng};
use super::HashUnderTest;
use crate::error::{Error, Result};

/// A size passes when its median maximum bias is below 1%.
pub const PASS_THRESHOLD: f64 = 0.01;

/// Smallest and largest avalanche input sizes in bytes.
pub const MIN_SIZE: usize = 4;
pub const MAX_SIZE: usize = 32;

/// A perfect generator's maximum cell bias stays below this many binomial
/// standard deviations (`0.5 / sqrt(iterations)`) in at least 99% of
/// samples at every size up to 32 bytes.
///
/// Calibrated with the `noise_floor` example: over 2000 samples at 32 bytes
/// (16384 cells) and 20,000 iterations, the maximum was 5.43 sigma, with 99%
/// of samples at or below 5.02. Under the normal approximation the failure
/// rate at 5.5 sigma is about 0.06%.
pub const CSPRNG_MAX_BIAS_FACTOR: f64 = 5.5;

/// Standard deviation of a single cell's flip rate for a perfect hash.
pub fn noise_floor(iterations: u64) -> f64 {
    0.5 / (iterations as f64).sqrt()
}

/// Flip tallies for every (input bit, output bit) pair at one input size.
#[derive(Clone, Debug, PartialEq)]
pub struct BiasMatrix {
    pub size: usize,
    pub iterations: u64,
    pub seed: u64,
    /// Row-major: `counts[input_bit * 64 + output_bit]`.
    pub counts: Vec<u64>,
}

impl BiasMatrix {
    pub fn input_bits(&self) -> usize {
        8 * self.size
    }

    pub fn flip_rate(&self, input_bit: usize, output_bit: usize) -> f64 {
        self.counts[input_bit * 64 + output_bit] as f64 / self.iterations as f64
    }

    /// `|flip_rate - 0.5|`, in `[0, 0.5]`.
    pub fn bias(&self, input_bit: usize, output_bit: usize) -> f64 {
        (self.flip_rate(input_bit, output_bit) - 0.5).abs()
    }

    fn biases(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.iterations as f64;
        self.counts.iter().map(move |&c| (c as f64 / n - 0.5).abs())
    }

    pub fn max_bias(&self) -> f64 {
        self.biases().fold(0.0, f64::max)
    }

    pub fn mean_bias(&self) -> f64 {
        self.biases().sum::<f64>() / self.counts.len() as f64
    }
}

fn validate(size: usize, iterations: u64) -> Result<()> {
    if !(MIN_SIZE..=MAX_SIZE).contains(&size) {
        return Err(Error::AvalancheSize(size));
    }
    if iterations == 0 {
        return Err(Error::NoIterations);
    }
    // Four words of key, then one message per iteration.
    let words_per_message = size.div_ceil(8) as u128;
    check_budget(4 + iterations as u128 * words_per_message)
}

/// Tallies, over `iterations` random messages, which output bits change when
/// each input bit is flipped.
///
/// The key is drawn once from `seed`; each iteration draws a fresh message,
/// hashes it, then flips, hashes and restores every bit in turn.
pub fn avalanche_bias<H: HashUnderTest + ?Sized>(
    hash: &H,
    size: usize,
    iterations: u64,
    seed: u64,
) -> Result<BiasMatrix> {
    validate(size, iterations)?;
    let mut rng = HarnessRng::new(seed);
    let mut key = [0u8; 32];
    rng.fill(&mut key);
    let mut f = hash.keyed(&key);

    let bits = 8 * size;
    let mut tally = FlipTally::new(bits);
    let mut msg = [0u8; MAX_SIZE];
    let msg = &mut msg[..size];
    for _ in 0..iterations {
        rng.fill(msg);
        let base = f(msg);
        for bit in 0..bits {
            let mask = 1u8 << (bit % 8);
            msg[bit / 8] ^= mask;
            let diff = f(msg) ^ base;
            msg[bit / 8] ^= mask;
            tally.add(bit, diff);
        }
        tally.end_trial();
    }
    Ok(BiasMatrix {
        size,
        iterations,
        seed,
        counts: tally.into_counts(),
    })
}

/// Bit planes per input bit; a flush is due before any counter overflows.
const PLANES: usize = 16;

/// Per-(input bit, output bit) flip counters, kept bit-sliced: plane `j` of
/// a row holds bit `j` of all 64 counters, so adding a 64-bit difference mask
/// is a short ripple-carry over planes instead of one increment per set bit.
pub(crate) struct FlipTally {
    planes: Vec<[u64; PLANES]>,
    counts: Vec<u64>,
    pending: u64,
}

impl FlipTally {
    pub(crate) fn new(rows: usize) -> Self {
        FlipTally {
            planes: vec![[0; PLANES]; rows],
            counts: vec![0; rows * 64],
            pending: 0,
        }
    }

    /// Counts one flip for every output bit set in `diff`. Call at most once
    /// per row between [`end_trial`](Self::end_trial) calls.
    #[inline(always)]
    pub(crate) fn add(&mut self, row: usize, diff: u64) {
        let mut carry = diff;
        for plane in self.planes[row].iter_mut() {
            if carry == 0 {
                break;
            }
            let next = *plane & carry;
            *plane ^= carry;
            carry = next;
        }
    }

    #[inline]
    pub(crate) fn end_trial(&mut self) {
        self.pending += 1;
        if self.pending == (1 << PLANES) - 1 {
            self.flush();
        }
    }

    fn flush(&mut self) {
        for (planes, counts) in self.planes.iter_mut().zip(self.counts.chunks_exact_mut(64)) {
            for (bit, count) in counts.iter_mut().enumerate() {
                *count += planes
                    .iter()
                    .enumerate()
                    .map(|(j, p)| ((p >> bit) & 1) << j)
                    .sum::<u64>();
            }
            *planes = [0; PLANES];
        }
        self.pending = 0;
    }

    /// Row-major counts: `counts[row * 64 + output_bit]`.
    pub(crate) fn into_counts(mut self) -> Vec<u64> {
        self.flush();
        self.counts
    }
}

/// Median over samples of each sample's maximum cell bias.
#[derive(Clone, Debug, PartialEq)]
pub struct BiasSummary {
    pub size: usize,
    pub iterations: u64,
    pub median_max_bias: f64,
    pub sample_maxima: Vec<f64>,
    pub seeds: Vec<u64>,
}

impl BiasSummary {
    pub fn sample_count(&self) -> usize {
        self.sample_maxima.len()
    }

    pub fn passes(&self, threshold: f64) -> bool {
        self.median_max_bias < threshold
    }
}

/// Reduces each sample to its maximum bias and takes the median. Samples must
/// share one input size and number an odd count of at least three.
pub fn median_bias(samples: &[BiasMatrix]) -> Result<BiasSummary> {
    median_of_maxima(
        samples.iter().map(|m| (m.size, m.iterations, m.seed, m.max_bias())),
    )
}

fn median_of_maxima(
    samples: impl Iterator<Item = (usize, u64, u64, f64)>,
) -> Result<BiasSummary> {
    let samples: Vec<_> = samples.collect();
    if samples.len() < 3 || samples.len() % 2 == 0 {
        return Err(Error::SampleCount(samples.len()));
    }
    let (size, iterations, _, _) = samples[0];
    if let Some(&(other, ..)) = samples.iter().find(|s| s.0 != size) {
        return Err(Error::MixedSizes(size, other));
    }
    let sample_maxima: Vec<f64> = samples.iter().map(|s| s.3).collect();
    let mut sorted = sample_maxima.clone();
    sorted.sort_by(f64::total_cmp);
    Ok(BiasSummary {
        size,
        iterations,
        median_max_bias: sorted[sorted.len() / 2],
        sample_maxima,
        seeds: samples.iter().map(|s| s.2).collect(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct AvalancheConfig {
    pub sizes: Vec<usize>,
    pub iterations: u64,
    pub samples: usize,
    pub seed: u64,
    pub threshold: f64,
}

impl Default for AvalancheConfig {
    /// Every size 4..=32, 5 samples of 20,000 iterations, 1% threshold.
    fn default() -> Self {
        AvalancheConfig {
            sizes: (MIN_SIZE..=MAX_SIZE).collect(),
            iterations: 20_000,
            samples: 5,
            seed: 0,
            threshold: PASS_THRESHOLD,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AvalancheReport {
    pub hash: String,
    pub threshold: f64,
    pub rows: Vec<BiasSummary>,
}

impl AvalancheReport {
    pub fn passes(&self) -> bool {
        self.rows.iter().all(|r| r.passes(self.threshold))
    }

    pub fn worst(&self) -> Option<&BiasSummary> {
        self.rows
            .iter()
            .max_by(|a, b| a.median_max_bias.total_cmp(&b.median_max_bias))
    }

    /// Human-readable lines, one per size.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<14} size {:>2}: median max bias {:.4}% over {} x {} (threshold {:.2}%) {}",
                self.hash,
                r.size,
                100.0 * r.median_max_bias,
                r.sample_count(),
                r.iterations,
                100.0 * self.threshold,
                if r.passes(self.threshold) { "PASS" } else { "FAIL" },
            );
        }
        out
    }

    /// `size,median_max_bias,threshold,pass` rows with a header line.
    pub fn to_table(&self) -> String {
        let mut out = String::from("size,median_max_bias,threshold,pass\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{:.6},{},{}",
                r.size,
                r.median_max_bias,
                self.threshold,
                r.passes(self.threshold)
            );
        }
        out
    }
}

/// Runs every (size, sample) pair, in parallel, and summarizes per size.
///
/// Each pair has its own generator stream seeded from `(seed, size, sample)`,
/// so results do not depend on scheduling.
pub fn run_avalanche<H: HashUnderTest + ?Sized>(
    hash: &H,
    config: &AvalancheConfig,
) -> Result<AvalancheReport> {
    if config.samples < 3 || config.samples % 2 == 0 {
        return Err(Error::SampleCount(config.samples));
    }
    for &size in &config.sizes {
        validate(size, config.iterations)?;
    }
    let jobs: Vec<(usize, u64)> = config
        .sizes
        .iter()
        .flat_map(|&size| {
            (0..config.samples)
                .map(move |s| (size, derive_seed(config.seed, &[size as u64, s as u64])))
        })
        .collect();
    let maxima: Vec<(usize, u64, u64, f64)> = jobs
        .into_par_iter()
        .map(|(size, seed)| {
            avalanche_bias(hash, size, config.iterations, seed)
                .map(|m| (size, config.iterations, seed, m.max_bias()))
        })
        .collect::<Result<_>>()?;
    let rows = maxima
        .chunks(config.samples)
        .map(|chunk| median_of_maxima(chunk.iter().copied()))
        .collect::<Result<_>>()?;
    Ok(AvalancheReport {
        hash: hash.name(),
        threshold: config.threshold,
        rows,
    })
}
