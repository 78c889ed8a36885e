//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs as a plain binary (no test harness) so every criterion runs even when
//! an earlier one fails; the process exits nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use keyhash::bench::{
    robust_estimate, BenchConfig, BenchReport, Measurement, Preset, Timer, TABLE1_SIZES,
};
use keyhash::highway::{
    zipper_merge, Backend, HighwayState, Key256, Packet, INIT0, INIT1, ZIPPER_OFFSETS,
};
use keyhash::quality::avalanche::noise_floor;
use keyhash::quality::{
    finalization_bias_experiment, run_avalanche, zero_input_distinctness, AvalancheConfig,
    CsprngBaseline, HashUnderTest, InputSet, PASS_THRESHOLD,
};
use keyhash::sip::{siphash, Key128, SipParams};
use keyhash::Algorithm;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of one criterion: pass flag plus a one-line summary.
type Verdict = (bool, String);

fn update_bijectivity() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let mut failures = 0;
    for _ in 0..100_000 {
        let state = HighwayState {
            v0: rng.random(),
            v1: rng.random(),
            mul0: rng.random(),
            mul1: rng.random(),
        };
        let packet = Packet(rng.random());
        let mut s = state;
        s.update(&packet);
        s.update_inverse(&packet);
        failures += (s != state) as u32;
    }
    let elapsed = start.elapsed();
    (
        failures == 0 && elapsed < Duration::from_secs(5),
        format!("10^5 random (state, packet) pairs, {failures} failures, {elapsed:.2?}"),
    )
}

fn zipper_table() -> Verdict {
    let out = zipper_merge(core::array::from_fn(|i| i as u8));
    let expected = [
        0x03, 0x0C, 0x02, 0x05, 0x0E, 0x01, 0x0F, 0x00, 0x0B, 0x04, 0x0A, 0x0D, 0x09, 0x06, 0x08,
        0x07,
    ];
    let mut seen = [0u32; 16];
    for &o in &ZIPPER_OFFSETS {
        seen[o] += 1;
    }
    let once = seen.iter().all(|&n| n == 1);
    (
        out == expected && once,
        format!("00..0F -> {}", hex::encode(out)),
    )
}

fn backend_equivalence() -> Verdict {
    let backends = Backend::available();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut mismatches = 0;
    for _ in 0..10_000 {
        let key = Key256(rng.random());
        let len = rng.random_range(0..=1024);
        let mut msg = vec![0u8; len];
        rng.fill_bytes(&mut msg);
        let reference = Backend::Portable.hash256(&key, &msg);
        for &b in &backends[1..] {
            mismatches += (b.hash256(&key, &msg) != reference) as u32;
        }
    }
    let names: Vec<_> = backends.iter().map(|b| b.name()).collect();
    let vectorized = backends.len() > 1;
    (
        mismatches == 0,
        format!(
            "backends [{}], 10^4 random cases, {mismatches} mismatches{}",
            names.join(", "),
            if vectorized { "" } else { " (no vectorized backend on this CPU)" }
        ),
    )
}

fn chunk_split_invariance() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = 0;
    for _ in 0..1000 {
        let len = rng.random_range(0..=2048);
        let mut msg = vec![0u8; len];
        rng.fill_bytes(&mut msg);
        for algo in Algorithm::ALL {
            let key: Vec<u8> = (0..algo.key_len()).map(|_| rng.random()).collect();
            let mut h = algo.hasher(&key).unwrap();
            let mut rest = &msg[..];
            while !rest.is_empty() {
                let take = rng.random_range(0..=rest.len().min(100));
                h.append(&rest[..take]);
                rest = &rest[take..];
            }
            failures += (h.finish() != algo.hash(&key, &msg).unwrap()) as u32;
        }
    }
    (
        failures == 0,
        format!("1000 messages x {} algorithms, {failures} failures", Algorithm::ALL.len()),
    )
}

fn zero_input_distinctness_highway() -> Verdict {
    let report = zero_input_distinctness(&Algorithm::Highway64, 1024, 0x2e40);
    (
        report.collisions.is_empty(),
        format!(
            "highway64 zero-filled lengths 0..=1024, {} colliding pairs",
            report.colliding_pairs()
        ),
    )
}

fn siphash_conformance() -> Verdict {
    use siphasher::sip::SipHasher24;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    let mut mismatches = 0;
    // The reference key and message pattern first, then random ones.
    let reference_key = Key128::from_bytes(&core::array::from_fn(|i| i as u8));
    let (rk0, rk1) = (reference_key.k0, reference_key.k1);
    for len in 0..64usize {
        let msg: Vec<u8> = (0..len as u8).collect();
        mismatches += (siphash(&reference_key, &msg, SipParams::SIP24)
            != SipHasher24::new_with_keys(rk0, rk1).hash(&msg)) as u32;
        checked += 1;
    }
    for _ in 0..448 {
        let (k0, k1) = (rng.next_u64(), rng.next_u64());
        let len = rng.random_range(0..=300);
        let mut msg = vec![0u8; len];
        rng.fill_bytes(&mut msg);
        mismatches += (siphash(&Key128::new(k0, k1), &msg, SipParams::SIP24)
            != SipHasher24::new_with_keys(k0, k1).hash(&msg)) as u32;
        checked += 1;
    }
    (
        checked >= 256 && mismatches == 0,
        format!("{checked} vectors against the siphasher crate, {mismatches} mismatches"),
    )
}

fn avalanche() -> Verdict {
    let config = AvalancheConfig {
        sizes: (4..=32).collect(),
        iterations: 20_000,
        samples: 5,
        seed: 0,
        threshold: PASS_THRESHOLD,
    };
    let hashes: [&dyn HashUnderTest; 4] = [
        &Algorithm::Highway64,
        &Algorithm::SipHash24,
        &Algorithm::SipHash13,
        &Algorithm::SipTree24,
    ];
    let start = Instant::now();
    let mut all_pass = true;
    let mut parts = Vec::new();
    for h in hashes {
        let report = run_avalanche(h, &config).expect("valid configuration");
        let worst = report.worst().unwrap();
        let failing = report.rows.iter().filter(|r| !r.passes(PASS_THRESHOLD)).count();
        all_pass &= report.passes();
        parts.push(format!(
            "{} worst {:.3}% @{}B ({failing}/29 sizes >= 1%)",
            report.hash,
            100.0 * worst.median_max_bias,
            worst.size
        ));
    }
    let elapsed = start.elapsed();
    let baseline = run_avalanche(&CsprngBaseline, &config).expect("valid configuration");
    let best_baseline = baseline
        .rows
        .iter()
        .map(|r| r.median_max_bias)
        .fold(f64::INFINITY, f64::min);
    (
        all_pass,
        format!(
            "5 x 20,000 per size 4..32: {}; {elapsed:.1?}. Ideal generator on the same protocol: \
             smallest per-size median max bias {:.3}%, single-cell sigma {:.3}%",
            parts.join("; "),
            100.0 * best_baseline,
            100.0 * noise_floor(20_000)
        ),
    )
}

fn finalization_rounds() -> Verdict {
    let n = 1u64 << 20;
    let inputs = InputSet::Sampled { count: n, seed: 3 };
    let start = Instant::now();
    let key_seed = 0x5eed;
    let r2 = finalization_bias_experiment(2, inputs, key_seed);
    let r3 = finalization_bias_experiment(3, inputs, key_seed);
    let r4 = finalization_bias_experiment(4, inputs, key_seed);
    let ratio = r2.max_bias / r3.max_bias;
    let floor = noise_floor(n);
    let mean_delta = (r4.mean_bias - r3.mean_bias).abs();
    (
        ratio >= 10.0 && mean_delta < floor,
        format!(
            "2^20 sampled 3-byte inputs: max bias 2/3/4 rounds {:.4}%/{:.4}%/{:.4}%, ratio {ratio:.2} \
             (need >= 10); |mean4 - mean3| = {:.4}% vs noise floor {:.4}%; {:.1?}",
            100.0 * r2.max_bias,
            100.0 * r3.max_bias,
            100.0 * r4.max_bias,
            100.0 * mean_delta,
            100.0 * floor,
            start.elapsed()
        ),
    )
}

fn bench_estimator() -> Verdict {
    // Outlier robustness on timer-like samples: a floor plus small
    // right-skewed jitter, then every twentieth sample inflated tenfold.
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst_shift: f64 = 0.0;
    for trial in 0..100 {
        let floor = 50.0 + 5.0 * trial as f64;
        let clean: Vec<Measurement> = (0..200)
            .map(|_| {
                let u: f64 = rng.random();
                let ticks = floor + 0.5 * (-(1.0 - u).ln() * 1.5).floor();
                Measurement { size: 64, ticks, batch: 1 }
            })
            .collect();
        let mut dirty = clean.clone();
        for m in dirty.iter_mut().step_by(20) {
            m.ticks *= 10.0;
        }
        let a = robust_estimate(&clean).unwrap().mode;
        let b = robust_estimate(&dirty).unwrap().mode;
        worst_shift = worst_shift.max((b - a).abs() / a);
    }

    // Per-size estimates for the `table1` preset on this machine.
    let config = BenchConfig {
        sizes: Preset::Table1.sizes(),
        ..BenchConfig::default()
    };
    let hashes: [&dyn HashUnderTest; 2] = [&Algorithm::Highway64, &Algorithm::SipHash24];
    let timer = Timer::detect();
    let report = BenchReport::run(&hashes, &config, &timer).expect("valid configuration");
    let complete = TABLE1_SIZES
        .iter()
        .all(|&s| report.find("highway64", s).is_some() && report.find("siphash24", s).is_some());
    let ratio = report.find("highway64", 1024).unwrap().bytes_per_tick()
        / report.find("siphash24", 1024).unwrap().bytes_per_tick();
    (
        worst_shift < 0.02 && complete,
        format!(
            "worst mode shift with 5% 10x outliers {:.3}%; table1 sizes estimated for both hashes; \
             informational: highway64/siphash24 throughput at 1024 B = {ratio:.2}x ({})",
            100.0 * worst_shift,
            report.fingerprint
        ),
    )
}

fn constants_fixture() -> Verdict {
    // Values from the reference release's source.
    const RELEASE_INIT0: [u64; 4] = [
        0xdbe6d5d5fe4cce2f,
        0xa4093822299f31d0,
        0x13198a2e03707344,
        0x243f6a8885a308d3,
    ];
    const RELEASE_INIT1: [u64; 4] = [
        0x3bd39e10cb0ef593,
        0xc0acf169b5f18a8c,
        0xbe5466cf34e90c6c,
        0x452821e638d01377,
    ];
    let covered = INIT0.iter().fold(0u64, |acc, &l| acc | l);
    (
        INIT0 == RELEASE_INIT0 && INIT1 == RELEASE_INIT1 && covered == u64::MAX,
        format!("init0/init1 match release; bits covered by init0 lanes: {}/64", covered.count_ones()),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("update-bijectivity", update_bijectivity),
        ("zipper-merge-table", zipper_table),
        ("backend-equivalence", backend_equivalence),
        ("chunk-split-invariance", chunk_split_invariance),
        ("zero-input-distinctness", zero_input_distinctness_highway),
        ("siphash-conformance", siphash_conformance),
        ("avalanche-median-max-bias", avalanche),
        ("finalization-rounds", finalization_rounds),
        ("bench-robust-estimator", bench_estimator),
        ("constants-fixture", constants_fixture),
    ];
    let mut failed = 0;
    for (name, criterion) in criteria {
        let (pass, detail) = match panic::catch_unwind(AssertUnwindSafe(criterion)) {
            Ok(verdict) => verdict,
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                (false, format!("panicked: {msg}"))
            }
        };
        failed += !pass as u32;
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
