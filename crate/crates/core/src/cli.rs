//! The `keyhash` command line: `hash`, `vectors`, `avalanche` and `bench`.
//!
//! Every command writes to the given writers and returns a process exit code,
//! so the binary is a one-line wrapper and tests can drive commands in-process.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::algo::Algorithm;
use crate::bench::{BenchConfig, BenchReport, Preset, Timer, DEFAULT_REPS, DEFAULT_RUNS};
use crate::error::{decode_hex, Error, Result};
use crate::quality::{self, AvalancheConfig, HashUnderTest, PASS_THRESHOLD};
use crate::vectors;

/// Input is read in chunks of this size, so memory stays constant.
pub const CHUNK_SIZE: usize = 64 * 1024;

/// Exit code for a failed avalanche check or an I/O failure.
pub const EXIT_FAILURE: i32 = 1;
/// Exit code for malformed arguments.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "keyhash", version, about = "Keyed hashing and hash quality tools")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hash a file (or standard input) and print `<hex digest>  <name>`.
    Hash(HashArgs),
    /// Write the cross-language conformance vector file.
    Vectors(VectorsArgs),
    /// Run the avalanche bias check; exits nonzero if any size fails.
    Avalanche(AvalancheArgs),
    /// Measure per-size throughput (informational, always exits 0).
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct HashArgs {
    /// highway64, highway256, siphash24, siphash13, siptree24, siptree13.
    #[arg(long, default_value = "highway64")]
    pub algo: String,
    /// Key as hex: 64 characters for highway, 32 for the SipHash family.
    /// Defaults to all zeros.
    #[arg(long)]
    pub key: Option<String>,
    /// Output width in bits (256 is HighwayHash only).
    #[arg(long)]
    pub width: Option<u32>,
    /// Input file; `-` or absent reads standard input.
    pub path: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VectorsArgs {
    /// Output file; standard output if absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Verify an existing vector file instead of writing one.
    #[arg(long)]
    pub check: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AvalancheArgs {
    /// Comma-separated hash names, including the harness-only `first8bytes`,
    /// `constant`, `length` and `chacha20-rng`.
    #[arg(long, default_value = "highway64")]
    pub algo: String,
    /// Input sizes: `4..32`, `4..=32`, `8,16,32` or a mix.
    #[arg(long, default_value = "4..=32")]
    pub sizes: String,
    /// Iterations per sample.
    #[arg(long, default_value_t = 20_000)]
    pub iters: u64,
    /// Samples per size (odd, at least 3).
    #[arg(long, default_value_t = 5)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Emit `size,median_max_bias,threshold,pass` rows instead of text.
    #[arg(long)]
    pub table: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated hash names.
    #[arg(long, default_value = "highway64,siphash24")]
    pub algo: String,
    /// `table1` or `sweep`; ignored when `--sizes` is given.
    #[arg(long, default_value = "sweep")]
    pub preset: String,
    #[arg(long)]
    pub sizes: Option<String>,
    /// Measurements per size in each run (at least 9).
    #[arg(long, default_value_t = DEFAULT_REPS)]
    pub samples: usize,
    /// Independent runs whose modes are reduced to a median.
    #[arg(long, default_value_t = DEFAULT_RUNS)]
    pub runs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Emit `algo,size,ticks_per_byte,bytes_per_tick,mad,samples` rows.
    #[arg(long)]
    pub table: bool,
}

/// Parses `4..32`, `4..=32` and comma lists (`8,31,32`) into sizes.
/// A half-open `a..b` range includes `b`, matching common usage on the
/// command line.
pub fn parse_sizes(spec: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidArgument(format!("bad size list {spec:?}"));
    let mut sizes = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..") {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let lo: usize = lo.trim().parse().map_err(|_| bad())?;
            let hi: usize = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            sizes.extend(lo..=hi);
        } else {
            sizes.push(part.parse().map_err(|_| bad())?);
        }
    }
    if sizes.is_empty() {
        return Err(bad());
    }
    Ok(sizes)
}

fn parse_key(algo: Algorithm, key: Option<&str>) -> Result<Vec<u8>> {
    let bytes = match key {
        Some(hex) => decode_hex(hex)?,
        None => vec![0; algo.key_len()],
    };
    if bytes.len() != algo.key_len() {
        return Err(Error::KeyLength {
            expected: algo.key_len(),
            got: bytes.len(),
        });
    }
    Ok(bytes)
}

fn hash_list(names: &str) -> Result<Vec<Box<dyn HashUnderTest>>> {
    names
        .split(',')
        .filter(|n| !n.trim().is_empty())
        .map(quality::lookup)
        .collect()
}

/// Digest of everything `input` yields, read in [`CHUNK_SIZE`] chunks.
pub fn hash_reader<R: Read>(algo: Algorithm, key: &[u8], mut input: R) -> io::Result<Vec<u8>> {
    let mut hasher = algo
        .hasher(key)
        .map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
    let mut chunk = vec![0u8; CHUNK_SIZE];
    loop {
        match input.read(&mut chunk) {
            Ok(0) => break,
            Ok(n) => hasher.append(&chunk[..n]),
            Err(e) if e.kind() == io::ErrorKind::Interrupted => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(hasher.finish())
}

fn usage(err: &mut dyn Write, e: impl std::fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {e}");
    EXIT_USAGE
}

fn failure(err: &mut dyn Write, e: impl std::fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {e}");
    EXIT_FAILURE
}

pub fn cmd_hash(args: &HashArgs, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let algo = match args
        .algo
        .parse::<Algorithm>()
        .and_then(|a| args.width.map_or(Ok(a), |w| a.with_width(w)))
    {
        Ok(a) => a,
        Err(e) => return usage(err, e),
    };
    let key = match parse_key(algo, args.key.as_deref()) {
        Ok(k) => k,
        Err(e) => return usage(err, e),
    };
    let (digest, name) = match args.path.as_deref() {
        None => (hash_reader(algo, &key, stdin), "-".to_string()),
        Some(p) if p.as_os_str() == "-" => (hash_reader(algo, &key, stdin), "-".to_string()),
        Some(p) => {
            let name = p.display().to_string();
            match File::open(p) {
                Ok(file) => (hash_reader(algo, &key, file), name),
                Err(e) => return failure(err, format_args!("{name}: {e}")),
            }
        }
    };
    match digest {
        Ok(d) => match writeln!(out, "{}  {name}", hex::encode(d)) {
            Ok(()) => 0,
            Err(e) => failure(err, e),
        },
        Err(e) => failure(err, format_args!("{name}: {e}")),
    }
}

pub fn cmd_vectors(args: &VectorsArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Some(path) = &args.check {
        let records = match File::open(path)
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
            .and_then(|f| vectors::read_records(io::BufReader::new(f)))
            .and_then(|r| vectors::mismatches(&r).map(|bad| (r.len(), bad)))
        {
            Ok(r) => r,
            Err(e) => return failure(err, e),
        };
        let (total, bad) = records;
        let _ = writeln!(out, "{} of {total} records reproduce", total - bad.len());
        return if bad.is_empty() { 0 } else { EXIT_FAILURE };
    }
    let records = vectors::generate();
    let written = match &args.out {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            vectors::write_records(&mut w, &records)?;
            w.flush()
        }),
        None => vectors::write_records(&mut *out, &records),
    };
    match written {
        Ok(()) => 0,
        Err(e) => failure(err, e),
    }
}

pub fn cmd_avalanche(args: &AvalancheArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let sizes = match parse_sizes(&args.sizes) {
        Ok(s) => s,
        Err(e) => return usage(err, e),
    };
    let hashes = match hash_list(&args.algo) {
        Ok(h) => h,
        Err(e) => return usage(err, e),
    };
    let config = AvalancheConfig {
        sizes,
        iterations: args.iters,
        samples: args.samples,
        seed: args.seed,
        threshold: PASS_THRESHOLD,
    };
    let mut all_pass = true;
    for h in &hashes {
        let report = match quality::run_avalanche(h.as_ref(), &config) {
            Ok(r) => r,
            Err(e) => return usage(err, e),
        };
        all_pass &= report.passes();
        let text = if args.table {
            report
                .to_table()
                .lines()
                .enumerate()
                .map(|(i, l)| if i == 0 { format!("algo,{l}\n") } else { format!("{},{l}\n", report.hash) })
                .collect()
        } else {
            report.to_text()
        };
        if let Err(e) = out.write_all(text.as_bytes()) {
            return failure(err, e);
        }
    }
    if all_pass {
        0
    } else {
        EXIT_FAILURE
    }
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let sizes = match &args.sizes {
        Some(s) => parse_sizes(s),
        None => args.preset.parse::<Preset>().map(Preset::sizes),
    };
    let sizes = match sizes {
        Ok(s) => s,
        Err(e) => return usage(err, e),
    };
    let hashes = match hash_list(&args.algo) {
        Ok(h) => h,
        Err(e) => return usage(err, e),
    };
    let config = BenchConfig {
        sizes,
        reps: args.samples,
        runs: args.runs,
        seed: args.seed,
    };
    let refs: Vec<&dyn HashUnderTest> = hashes.iter().map(|h| h.as_ref()).collect();
    let report = match BenchReport::run(&refs, &config, &Timer::detect()) {
        Ok(r) => r,
        Err(e) => return usage(err, e),
    };
    let text = if args.table {
        report.to_rows()
    } else {
        report.to_text()
    };
    let _ = out.write_all(text.as_bytes());
    0
}

/// Parses `argv` (program name first) and runs the chosen command.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match &cli.command {
        Command::Hash(a) => cmd_hash(a, stdin, out, err),
        Command::Vectors(a) => cmd_vectors(a, out, err),
        Command::Avalanche(a) => cmd_avalanche(a, out, err),
        Command::Bench(a) => cmd_bench(a, out, err),
    }
}
