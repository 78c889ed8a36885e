//! Per-size throughput with interleaved sizes and robust estimation.
//!
//! Each measurement times a batch of hash invocations between fenced
//! timestamps. Sizes are measured in a seeded random order so slow drifts
//! (frequency scaling, interrupts) spread evenly across sizes. Within a run the
//! estimate is the mode of the per-invocation ticks; across runs the median of
//! those modes is reported. Buffers stay cache-resident, so results are upper
//! bounds on throughput. Absolute numbers are only comparable on one machine;
//! reports carry a [`Fingerprint`].

pub mod timer;

use std::fmt::Write as _;
use std::hint::black_box;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quality::rng::derive_seed;
use crate::quality::HashUnderTest;
pub use timer::{Fingerprint, Timer, TimerKind};

/// Fewest samples [`robust_estimate`] accepts.
pub const MIN_SAMPLES: usize = 9;

/// Default number of independent runs whose modes are reduced to a median.
pub const DEFAULT_RUNS: usize = 9;

/// Default measurements per size per run.
pub const DEFAULT_REPS: usize = 31;

/// A batch is grown until it spans at least this many timer resolutions.
const MIN_RESOLUTIONS_PER_BATCH: u64 = 64;

/// Sizes of the `table1` preset: short, unaligned, aligned and one long input.
pub const TABLE1_SIZES: [usize; 6] = [8, 31, 32, 63, 64, 1024];

/// `32*i + {0, 9, 18, 27}` for `i` in `0..=12`, without the empty size.
pub fn sweep_sizes() -> Vec<usize> {
    (0..=12)
        .flat_map(|i| [0, 9, 18, 27].map(|o| 32 * i + o))
        .filter(|&s| s > 0)
        .collect()
}

/// Named size sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Table1,
    Sweep,
}

impl Preset {
    pub fn sizes(self) -> Vec<usize> {
        match self {
            Preset::Table1 => TABLE1_SIZES.to_vec(),
            Preset::Sweep => sweep_sizes(),
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "table1" => Ok(Preset::Table1),
            "sweep" | "default" | "fig1" => Ok(Preset::Sweep),
            other => Err(Error::InvalidArgument(format!("unknown preset {other:?}"))),
        }
    }
}

/// One timed batch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Measurement {
    pub size: usize,
    /// Timer ticks per invocation (batch total divided by `batch`).
    pub ticks: f64,
    /// Invocations timed together.
    pub batch: u32,
}

/// Robust per-size result.
#[derive(Clone, Debug, PartialEq)]
pub struct ThroughputEstimate {
    pub size: usize,
    /// Ticks per invocation: median over runs of each run's mode.
    pub ticks: f64,
    /// Mean absolute deviation around the mode, median over runs.
    pub dispersion: f64,
    /// Total measurements behind the estimate.
    pub sample_count: usize,
    pub batch: u32,
}

impl ThroughputEstimate {
    pub fn ticks_per_byte(&self) -> f64 {
        self.ticks / self.size as f64
    }

    pub fn bytes_per_tick(&self) -> f64 {
        self.size as f64 / self.ticks
    }

    /// [`dispersion`](Self::dispersion) scaled to ticks per byte.
    pub fn mad_per_byte(&self) -> f64 {
        self.dispersion / self.size as f64
    }
}

/// Mode of `values` after binning to multiples of `bin`, and the mean of the
/// values in the winning bin. Ties go to the bin nearest the median.
pub fn mode(values: &[f64], bin: f64) -> Option<f64> {
    if values.is_empty() || bin.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return None;
    }
    let mut keyed: Vec<(i64, f64)> = values.iter().map(|&v| ((v / bin).round() as i64, v)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let median = keyed[keyed.len() / 2].1;
    let mut best: Option<(usize, f64, &[(i64, f64)])> = None;
    for group in keyed.chunk_by(|a, b| a.0 == b.0) {
        let distance = (group[0].0 as f64 * bin - median).abs();
        let better = match best {
            None => true,
            Some((count, d, _)) => group.len() > count || (group.len() == count && distance < d),
        };
        if better {
            best = Some((group.len(), distance, group));
        }
    }
    let group = best?.2;
    Some(group.iter().map(|g| g.1).sum::<f64>() / group.len() as f64)
}

fn mean_abs_deviation(values: &[f64], center: f64) -> f64 {
    values.iter().map(|v| (v - center).abs()).sum::<f64>() / values.len() as f64
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    values[values.len() / 2]
}

/// Per-run summary: mode and its mean absolute deviation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunEstimate {
    pub mode: f64,
    pub mad: f64,
}

/// Mode (half-tick bins) and mean absolute deviation of one run's samples.
pub fn robust_estimate(samples: &[Measurement]) -> Result<RunEstimate> {
    robust_estimate_binned(samples, 0.5)
}

/// [`robust_estimate`] with an explicit bin width in ticks.
pub fn robust_estimate_binned(samples: &[Measurement], bin: f64) -> Result<RunEstimate> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            needed: MIN_SAMPLES,
            got: samples.len(),
        });
    }
    if let Some(other) = samples.iter().find(|m| m.size != samples[0].size) {
        return Err(Error::MixedSizes(samples[0].size, other.size));
    }
    let ticks: Vec<f64> = samples.iter().map(|m| m.ticks).collect();
    let mode = mode(&ticks, bin).expect("non-empty samples and positive bin");
    Ok(RunEstimate {
        mode,
        mad: mean_abs_deviation(&ticks, mode),
    })
}

/// Median of per-run modes (and of per-run deviations). Needs an odd,
/// non-zero number of runs to have a unique middle; even counts take the
/// upper middle.
pub fn combine_runs(size: usize, runs: &[RunEstimate], samples: usize, batch: u32) -> Result<ThroughputEstimate> {
    if runs.is_empty() {
        return Err(Error::SampleCount(0));
    }
    let mut modes: Vec<f64> = runs.iter().map(|r| r.mode).collect();
    let mut mads: Vec<f64> = runs.iter().map(|r| r.mad).collect();
    Ok(ThroughputEstimate {
        size,
        ticks: median(&mut modes),
        dispersion: median(&mut mads),
        sample_count: samples,
        batch,
    })
}

/// Pre-allocated input buffer: only the first 8 bytes carry a pattern.
fn input_buffer(size: usize) -> Vec<u8> {
    let mut buf = vec![0u8; size.max(8)];
    buf[..8].copy_from_slice(&0x0123_4567_89ab_cdef_u64.to_le_bytes());
    buf
}

fn time_batch(
    timer: &Timer,
    f: &mut dyn FnMut(&[u8]) -> u64,
    input: &[u8],
    batch: u32,
) -> u64 {
    let t0 = timer.start();
    for _ in 0..batch {
        // The sink: every digest reaches an optimization barrier.
        black_box(f(black_box(input)));
    }
    let t1 = timer.stop();
    t1.saturating_sub(t0).max(1)
}

/// Smallest power-of-two batch whose duration spans enough timer resolution
/// steps that quantization is negligible.
fn calibrate_batch(timer: &Timer, f: &mut dyn FnMut(&[u8]) -> u64, input: &[u8]) -> u32 {
    let target = MIN_RESOLUTIONS_PER_BATCH * timer.resolution();
    let mut batch = 1u32;
    while batch < 1 << 20 {
        let mut shortest = u64::MAX;
        for _ in 0..5 {
            shortest = shortest.min(time_batch(timer, f, input, batch));
        }
        if shortest >= target {
            break;
        }
        batch *= 2;
    }
    batch
}

fn measure(
    timer: &Timer,
    f: &mut dyn FnMut(&[u8]) -> u64,
    input: &[u8],
    batch: u32,
) -> Measurement {
    let ticks = time_batch(timer, f, input, batch);
    Measurement {
        size: input.len(),
        ticks: ticks as f64 / batch as f64,
        batch,
    }
}

/// `reps` measurements of one size. Batching kicks in automatically when a
/// single invocation is too short for the timer; the factor is recorded in
/// each [`Measurement`].
pub fn measure_one<H: HashUnderTest + ?Sized>(
    hash: &H,
    size: usize,
    reps: usize,
    timer: &Timer,
) -> Result<Vec<Measurement>> {
    if size == 0 || reps == 0 {
        return Err(Error::InvalidArgument(format!(
            "size and reps must be positive (size {size}, reps {reps})"
        )));
    }
    let mut f = hash.keyed(&[0x5a; 32]);
    let buf = input_buffer(size);
    let input = &buf[..size];
    let batch = calibrate_batch(timer, &mut *f, input);
    Ok((0..reps).map(|_| measure(timer, &mut *f, input, batch)).collect())
}

/// Order of measurements: each size index appears `runs * reps` times,
/// shuffled by `seed`.
pub fn schedule(sizes: usize, per_size: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..sizes).flat_map(|i| std::iter::repeat_n(i, per_size)).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    /// Measurements per size per run (at least [`MIN_SAMPLES`]).
    pub reps: usize,
    pub runs: usize,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: sweep_sizes(),
            reps: DEFAULT_REPS,
            runs: DEFAULT_RUNS,
            seed: 0,
        }
    }
}

/// Measures every size in interleaved random order and reduces each to a
/// [`ThroughputEstimate`]. Single-threaded.
pub fn sweep<H: HashUnderTest + ?Sized>(
    hash: &H,
    config: &BenchConfig,
    timer: &Timer,
) -> Result<Vec<ThroughputEstimate>> {
    if config.sizes.is_empty() {
        return Err(Error::InvalidArgument("no sizes to benchmark".into()));
    }
    if let Some(&bad) = config.sizes.iter().find(|&&s| s == 0) {
        return Err(Error::InvalidArgument(format!("size {bad} is not positive")));
    }
    if config.reps < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            needed: MIN_SAMPLES,
            got: config.reps,
        });
    }
    if config.runs == 0 {
        return Err(Error::SampleCount(0));
    }
    let mut key = [0u8; 32];
    let mut key_rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, &[0x6b6579]));
    rand::Rng::fill_bytes(&mut key_rng, &mut key);
    let mut f = hash.keyed(&key);

    let max = *config.sizes.iter().max().unwrap();
    let buf = input_buffer(max);
    let batches: Vec<u32> = config
        .sizes
        .iter()
        .map(|&s| calibrate_batch(timer, &mut *f, &buf[..s]))
        .collect();

    let per_size = config.reps * config.runs;
    let mut ticks: Vec<Vec<Measurement>> = vec![Vec::with_capacity(per_size); config.sizes.len()];
    for i in schedule(config.sizes.len(), per_size, config.seed) {
        let m = measure(timer, &mut *f, &buf[..config.sizes[i]], batches[i]);
        ticks[i].push(m);
    }

    let bin = 0.5;
    config
        .sizes
        .iter()
        .zip(ticks)
        .zip(batches)
        .map(|((&size, samples), batch)| {
            // Consecutive measurements of a size form one run.
            let runs = samples
                .chunks(config.reps)
                .map(|run| robust_estimate_binned(run, bin))
                .collect::<Result<Vec<_>>>()?;
            combine_runs(size, &runs, samples.len(), batch)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub algo: String,
    pub estimate: ThroughputEstimate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub fingerprint: Fingerprint,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    /// Sweeps each hash in turn with the same configuration.
    pub fn run(hashes: &[&dyn HashUnderTest], config: &BenchConfig, timer: &Timer) -> Result<Self> {
        let mut rows = Vec::new();
        for h in hashes {
            for estimate in sweep(*h, config, timer)? {
                rows.push(BenchRow {
                    algo: h.name(),
                    estimate,
                });
            }
        }
        Ok(BenchReport {
            fingerprint: Fingerprint::of(timer),
            rows,
        })
    }

    /// `algo,size,ticks_per_byte,bytes_per_tick,mad,samples` with a header;
    /// `mad` is in ticks per byte.
    pub fn to_rows(&self) -> String {
        let mut out = String::from("algo,size,ticks_per_byte,bytes_per_tick,mad,samples\n");
        for r in &self.rows {
            let e = &r.estimate;
            let _ = writeln!(
                out,
                "{},{},{:.4},{:.4},{:.4},{}",
                r.algo,
                e.size,
                e.ticks_per_byte(),
                e.bytes_per_tick(),
                e.mad_per_byte(),
                e.sample_count
            );
        }
        out
    }

    /// Aligned table preceded by the machine fingerprint.
    pub fn to_text(&self) -> String {
        let mut out = format!("# {}\n", self.fingerprint);
        let _ = writeln!(
            out,
            "{:<12} {:>6} {:>12} {:>12} {:>10} {:>8} {:>6}",
            "algo",
            "size",
            "ticks/byte",
            "bytes/tick",
            "mad/byte",
            "samples",
            "batch"
        );
        for r in &self.rows {
            let e = &r.estimate;
            let _ = writeln!(
                out,
                "{:<12} {:>6} {:>12.3} {:>12.3} {:>10.3} {:>8} {:>6}",
                r.algo,
                e.size,
                e.ticks_per_byte(),
                e.bytes_per_tick(),
                e.mad_per_byte(),
                e.sample_count,
                e.batch
            );
        }
        out
    }

    pub fn find(&self, algo: &str, size: usize) -> Option<&ThroughputEstimate> {
        self.rows
            .iter()
            .find(|r| r.algo == algo && r.estimate.size == size)
            .map(|r| &r.estimate)
    }
}
