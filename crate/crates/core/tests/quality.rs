//! Statistical harness behaviour on hashes with known answers.

use keyhash::quality::avalanche::noise_floor;
use keyhash::quality::rng::derive_seed;
use keyhash::quality::{
    avalanche_bias, finalization_bias_experiment, median_bias, run_avalanche,
    zero_input_distinctness, AvalancheConfig, Constant, CsprngBaseline, FirstEightBytes, InputSet,
    LengthOnly, CSPRNG_MAX_BIAS_FACTOR, PASS_THRESHOLD,
};
use keyhash::{Algorithm, Error};

#[test]
fn pathological_hashes_have_maximal_bias() {
    for size in [4, 8, 17, 32] {
        assert_eq!(avalanche_bias(&Constant(1), size, 20, 0).unwrap().max_bias(), 0.5);
        let linear = avalanche_bias(&FirstEightBytes, size, 20, 0).unwrap();
        assert_eq!(linear.max_bias(), 0.5);
        assert_eq!(linear.counts.len(), 8 * size * 64);
    }
}

#[test]
fn matrix_invariants_hold_for_real_hashes() {
    for algo in Algorithm::ALL {
        let m = avalanche_bias(&algo, 7, 500, 1).unwrap();
        assert_eq!(m.counts.len(), 7 * 8 * 64);
        assert!(m.counts.iter().all(|&c| c <= 500));
        for i in 0..m.input_bits() {
            for o in 0..64 {
                let b = m.bias(i, o);
                assert!((0.0..=0.5).contains(&b));
            }
        }
    }
}

#[test]
fn csprng_baseline_stays_under_calibrated_floor() {
    let iterations = 4000;
    let limit = CSPRNG_MAX_BIAS_FACTOR * noise_floor(iterations);
    let samples = 100;
    let passed = (0..samples)
        .filter(|&s| {
            let m = avalanche_bias(&CsprngBaseline, 12, iterations, derive_seed(77, &[s])).unwrap();
            m.max_bias() <= limit
        })
        .count();
    assert!(passed >= 99, "{passed}/{samples} within {limit}");
}

#[test]
fn highway_at_size_8_is_near_the_noise_floor() {
    let samples: Vec<_> = (0..5)
        .map(|s| avalanche_bias(&Algorithm::Highway64, 8, 20_000, derive_seed(5, &[8, s])).unwrap())
        .collect();
    let summary = median_bias(&samples).unwrap();
    // The largest of 4096 cells sits a few standard deviations out for any
    // good hash; far beyond that would indicate real bias.
    let floor = noise_floor(20_000);
    assert!(summary.median_max_bias < CSPRNG_MAX_BIAS_FACTOR * floor, "{summary:?}");
    assert!(summary.median_max_bias > 2.0 * floor, "{summary:?}");
}

#[test]
fn runs_are_reproducible_and_seed_dependent() {
    let config = AvalancheConfig {
        sizes: vec![4, 9],
        iterations: 300,
        samples: 3,
        seed: 42,
        threshold: PASS_THRESHOLD,
    };
    let a = run_avalanche(&Algorithm::SipHash13, &config).unwrap();
    let b = run_avalanche(&Algorithm::SipHash13, &config).unwrap();
    assert_eq!(a, b);
    let c = run_avalanche(&Algorithm::SipHash13, &AvalancheConfig { seed: 43, ..config }).unwrap();
    assert_ne!(a.rows[0].sample_maxima, c.rows[0].sample_maxima);
    // Each sample has its own seed.
    let seeds = &a.rows[0].seeds;
    assert_eq!(seeds.len(), 3);
    assert!(seeds[0] != seeds[1] && seeds[1] != seeds[2]);
}

#[test]
fn run_rejects_bad_configurations() {
    let base = AvalancheConfig {
        sizes: vec![4],
        iterations: 10,
        samples: 3,
        seed: 0,
        threshold: PASS_THRESHOLD,
    };
    let even = AvalancheConfig { samples: 4, ..base.clone() };
    assert_eq!(run_avalanche(&Constant(0), &even).unwrap_err(), Error::SampleCount(4));
    let small = AvalancheConfig { sizes: vec![3], ..base.clone() };
    assert_eq!(run_avalanche(&Constant(0), &small).unwrap_err(), Error::AvalancheSize(3));
    let none = AvalancheConfig { iterations: 0, ..base };
    assert_eq!(run_avalanche(&Constant(0), &none).unwrap_err(), Error::NoIterations);
}

#[test]
fn zero_inputs() {
    let highway = zero_input_distinctness(&Algorithm::Highway64, 1024, 9);
    assert!(highway.collisions.is_empty());
    assert!(!highway.is_imbalanced());
    assert_eq!(highway.messages(), 1025);

    let constant = zero_input_distinctness(&Constant(3), 1024, 9);
    assert_eq!(constant.colliding_pairs(), 1025 * 1024 / 2);

    let length = zero_input_distinctness(&LengthOnly, 1024, 9);
    assert!(length.collisions.is_empty());
    assert!(length.is_imbalanced());
}

#[test]
fn fewer_finalization_rounds_leave_more_bias() {
    let inputs = InputSet::Sampled { count: 1 << 14, seed: 1 };
    let one = finalization_bias_experiment(1, inputs, 3);
    let two = finalization_bias_experiment(2, inputs, 3);
    let four = finalization_bias_experiment(4, inputs, 3);
    assert!(one.mean_bias > two.mean_bias);
    assert!(two.mean_bias > four.mean_bias);
    assert!(two.max_bias > 0.3, "{two:?}");
    // Four rounds sit at the sampling noise of 2^14 inputs.
    assert!(four.max_bias < CSPRNG_MAX_BIAS_FACTOR * noise_floor(1 << 14), "{four:?}");
}
