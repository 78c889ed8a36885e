//! HighwayHash against external vectors and a second, independently written
//! model that follows the published update listing statement by statement.

mod oracle {
    //! Deliberately naive: byte arrays for the zipper merge, 32-bit words for
    //! the finalization shuffle, no shared code with the library.

    pub type Lanes = [u64; 4];

    #[derive(Clone, Copy, Debug, PartialEq)]
    pub struct State {
        pub v0: Lanes,
        pub v1: Lanes,
        pub mul0: Lanes,
        pub mul1: Lanes,
    }

    pub const INIT0: Lanes = [
        0xdbe6d5d5fe4cce2f,
        0xa4093822299f31d0,
        0x13198a2e03707344,
        0x243f6a8885a308d3,
    ];
    pub const INIT1: Lanes = [
        0x3bd39e10cb0ef593,
        0xc0acf169b5f18a8c,
        0xbe5466cf34e90c6c,
        0x452821e638d01377,
    ];

    /// The byte permutation as printed, most significant byte first.
    const PRINTED_PERMUTATION: &str = "7 8 6 9 D A 4 B 0 F 1 E 5 2 C 3";

    fn zipper_sources() -> [usize; 16] {
        let printed: Vec<usize> = PRINTED_PERMUTATION
            .split(' ')
            .map(|h| usize::from_str_radix(h, 16).unwrap())
            .collect();
        // Output byte 15 comes first in the printed order.
        core::array::from_fn(|i| printed[15 - i])
    }

    fn to_bytes(v: &Lanes) -> [u8; 32] {
        let mut out = [0u8; 32];
        for (i, lane) in v.iter().enumerate() {
            out[8 * i..8 * i + 8].copy_from_slice(&lane.to_le_bytes());
        }
        out
    }

    fn from_bytes(b: &[u8; 32]) -> Lanes {
        core::array::from_fn(|i| u64::from_le_bytes(b[8 * i..8 * i + 8].try_into().unwrap()))
    }

    fn zipper_merge(v: &Lanes) -> Lanes {
        let src = zipper_sources();
        let bytes = to_bytes(v);
        let mut out = [0u8; 32];
        for half in 0..2 {
            for i in 0..16 {
                out[16 * half + i] = bytes[16 * half + src[i]];
            }
        }
        from_bytes(&out)
    }

    fn mul_epu32(a: u64, b: u64) -> u64 {
        (a as u32 as u64) * (b as u32 as u64)
    }

    pub fn initialize(key: &Lanes) -> State {
        let mut s = State {
            v0: [0; 4],
            v1: [0; 4],
            mul0: INIT0,
            mul1: INIT1,
        };
        for i in 0..4 {
            s.v0[i] = key[i] ^ INIT0[i];
            s.v1[i] = ((key[i] >> 32) | (key[i] << 32)) ^ INIT1[i];
        }
        s
    }

    pub fn update(s: &mut State, packet: &Lanes) {
        // v1 += packet;
        for i in 0..4 {
            s.v1[i] = s.v1[i].wrapping_add(packet[i]);
        }
        // v1 += mul0;
        for i in 0..4 {
            s.v1[i] = s.v1[i].wrapping_add(s.mul0[i]);
        }
        // mul0 ^= mul_epu32(v1, v0 >> 32);
        for i in 0..4 {
            s.mul0[i] ^= mul_epu32(s.v1[i], s.v0[i] >> 32);
        }
        // v0 += mul1;
        for i in 0..4 {
            s.v0[i] = s.v0[i].wrapping_add(s.mul1[i]);
        }
        // mul1 ^= mul_epu32(v0, v1 >> 32);
        for i in 0..4 {
            s.mul1[i] ^= mul_epu32(s.v0[i], s.v1[i] >> 32);
        }
        // v0 += ZipperMerge(v1);
        let z = zipper_merge(&s.v1);
        for i in 0..4 {
            s.v0[i] = s.v0[i].wrapping_add(z[i]);
        }
        // v1 += ZipperMerge(v0);
        let z = zipper_merge(&s.v0);
        for i in 0..4 {
            s.v1[i] = s.v1[i].wrapping_add(z[i]);
        }
    }

    fn dwords(v: &Lanes) -> [u32; 8] {
        core::array::from_fn(|i| (v[i / 2] >> (32 * (i % 2))) as u32)
    }

    fn from_dwords(d: &[u32; 8]) -> Lanes {
        core::array::from_fn(|i| d[2 * i] as u64 | (d[2 * i + 1] as u64) << 32)
    }

    pub fn remainder(s: &mut State, tail: &[u8]) {
        let r = tail.len();
        assert!((1..32).contains(&r));
        let mut d0 = dwords(&s.v0);
        for d in &mut d0 {
            *d = d.wrapping_add(r as u32);
        }
        s.v0 = from_dwords(&d0);
        let mut d1 = dwords(&s.v1);
        for d in &mut d1 {
            *d = (*d << r) | (*d >> (32 - r));
        }
        s.v1 = from_dwords(&d1);

        let mut packet = [0u8; 32];
        let whole = 4 * (r / 4);
        packet[..whole].copy_from_slice(&tail[..whole]);
        let mut word = 0u32;
        for (k, &b) in tail[whole..].iter().enumerate() {
            word |= (b as u32) << (8 * k);
        }
        packet[28..32].copy_from_slice(&word.to_le_bytes());
        update(s, &from_bytes(&packet));
    }

    pub fn finalize(mut s: State) -> Lanes {
        // 32-bit source indices as printed, for destination dwords 7 down to 0.
        let printed = [2usize, 3, 0, 1, 6, 7, 4, 5];
        for _ in 0..4 {
            let src = dwords(&s.v0);
            let mut dst = [0u32; 8];
            for (k, &from) in printed.iter().enumerate() {
                dst[7 - k] = src[from];
            }
            update(&mut s, &from_dwords(&dst));
        }
        core::array::from_fn(|i| {
            s.v0[i]
                .wrapping_add(s.v1[i])
                .wrapping_add(s.mul0[i])
                .wrapping_add(s.mul1[i])
        })
    }

    pub fn hash(key: &Lanes, msg: &[u8]) -> Lanes {
        let mut s = initialize(key);
        let mut chunks = msg.chunks_exact(32);
        for c in &mut chunks {
            update(&mut s, &from_bytes(c.try_into().unwrap()));
        }
        if !chunks.remainder().is_empty() {
            remainder(&mut s, chunks.remainder());
        }
        finalize(s)
    }
}

use keyhash::highway::{
    hash256, hash64, zipper_merge, Backend, HighwayHasher, HighwayState, Key256, Packet, INIT0,
    INIT1, ZIPPER_OFFSETS,
};
use proptest::prelude::*;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn counting_key() -> Key256 {
    Key256::from_bytes(&core::array::from_fn(|i| i as u8))
}

#[test]
fn empty_message_matches_published_vectors() {
    // Lane 0 of the 64-bit output for an empty message, from the reference
    // release's test suite (no padding involved).
    assert_eq!(hash64(&counting_key(), b""), 0x907A56DE22C26E53);
    assert_eq!(hash64(&Key256::default(), b""), 0x7035DA75B9D54469);
}

#[test]
fn pinned_constants_match_release_and_oracle() {
    assert_eq!(INIT0, oracle::INIT0);
    assert_eq!(INIT1, oracle::INIT1);
    let covered = INIT0.iter().fold(0u64, |acc, l| acc | l);
    assert_eq!(covered, u64::MAX);
}

#[test]
fn zipper_table_matches_printed_permutation() {
    let out = zipper_merge(core::array::from_fn(|i| i as u8));
    assert_eq!(
        out,
        [0x03, 0x0C, 0x02, 0x05, 0x0E, 0x01, 0x0F, 0x00, 0x0B, 0x04, 0x0A, 0x0D, 0x09, 0x06, 0x08, 0x07]
    );
    assert_eq!(out, ZIPPER_OFFSETS.map(|o| o as u8));
}

fn library_state(s: &HighwayState) -> oracle::State {
    oracle::State {
        v0: s.v0,
        v1: s.v1,
        mul0: s.mul0,
        mul1: s.mul1,
    }
}

#[test]
fn one_update_of_zero_packet_matches_transcription() {
    let key = counting_key();
    let mut lib = HighwayState::new(&key);
    let mut reference = oracle::initialize(&key.0);
    assert_eq!(library_state(&lib), reference);
    lib.update(&Packet([0; 32]));
    oracle::update(&mut reference, &[0; 4]);
    assert_eq!(library_state(&lib), reference);
}

#[test]
fn remainder_step_matches_transcription_for_every_length() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for r in 1..32 {
        let key = Key256(rng.random());
        let tail: Vec<u8> = (0..r).map(|_| rng.random()).collect();
        let mut lib = HighwayState::new(&key);
        lib.update_remainder(&tail).unwrap();
        let mut reference = oracle::initialize(&key.0);
        oracle::remainder(&mut reference, &tail);
        assert_eq!(library_state(&lib), reference, "tail length {r}");
    }
}

#[test]
fn full_hash_matches_transcription() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for len in (0..=200).chain([255, 256, 257, 1023, 1024]) {
        let key = Key256(rng.random());
        let mut msg = vec![0u8; len];
        rng.fill_bytes(&mut msg);
        let expected = oracle::hash(&key.0, &msg);
        for backend in Backend::available() {
            assert_eq!(backend.hash256(&key, &msg), expected, "{backend} len {len}");
        }
        assert_eq!(hash64(&key, &msg), expected[0]);
    }
}

#[test]
fn frozen_zero_key_fixture() {
    // Generated once by this library and frozen; lane 0 first, little-endian.
    let digest = hash256(&Key256::default(), b"");
    assert_eq!(digest[0], 0x7035DA75B9D54469);
    let bytes = keyhash::Algorithm::Highway64.hash(&[0; 32], b"").unwrap();
    assert_eq!(hex::encode(bytes), "6944d5b975da3570");
}

#[test]
fn backends_agree_on_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let backends = Backend::available();
    for _ in 0..2000 {
        let key = Key256(rng.random());
        let len = rng.random_range(0..=1024);
        let mut msg = vec![0u8; len];
        rng.fill_bytes(&mut msg);
        let reference = Backend::Portable.hash256(&key, &msg);
        for &b in &backends[1..] {
            assert_eq!(b.hash256(&key, &msg), reference, "{b} len {len}");
        }
    }
}

#[test]
fn empty_and_whole_zero_packet_differ() {
    let key = counting_key();
    assert_ne!(hash64(&key, b""), hash64(&key, &[0; 32]));
}

#[test]
fn zero_buffers_up_to_1024_are_distinct() {
    let key = Key256::from_bytes(&[0x42; 32]);
    let zeros = vec![0u8; 1024];
    let mut seen = std::collections::HashSet::new();
    for len in 0..=1024 {
        assert!(seen.insert(hash64(&key, &zeros[..len])), "length {len} collides");
    }
}

#[test]
fn remainder_is_deterministic_and_length_sensitive() {
    let key = counting_key();
    let after = |tail: &[u8]| {
        let mut s = HighwayState::new(&key);
        s.update_remainder(tail).unwrap();
        s
    };
    assert_eq!(after(&[0; 5]), after(&[0; 5]));
    assert_ne!(after(&[0; 5]), after(&[0; 6]));
    assert_ne!(after(&[0; 30]), after(&[0; 31]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn chunking_never_changes_the_digest(
        msg in proptest::collection::vec(any::<u8>(), 0..600),
        cuts in proptest::collection::vec(0usize..600, 0..12),
        key in any::<[u64; 4]>(),
    ) {
        let key = Key256(key);
        let mut cuts: Vec<usize> = cuts.into_iter().map(|c| c.min(msg.len())).collect();
        cuts.sort();
        let mut h = HighwayHasher::new(&key);
        let mut start = 0;
        for c in cuts.into_iter().chain([msg.len()]) {
            h.append(&msg[start..c]);
            start = c;
        }
        prop_assert_eq!(h.finish256(), hash256(&key, &msg));
    }

    #[test]
    fn update_inverse_round_trips(
        v0 in any::<[u64; 4]>(), v1 in any::<[u64; 4]>(),
        mul0 in any::<[u64; 4]>(), mul1 in any::<[u64; 4]>(),
        packet in any::<[u8; 32]>(),
    ) {
        let start = HighwayState { v0, v1, mul0, mul1 };
        let mut s = start;
        s.update(&Packet(packet));
        s.update_inverse(&Packet(packet));
        prop_assert_eq!(s, start);
    }
}
