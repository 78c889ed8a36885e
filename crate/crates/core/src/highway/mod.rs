//! HighwayHash: a keyed hash built from 32x32-bit multiplies and byte permutes.
//!
//! The state is four 256-bit vectors (`v0`, `v1`, `mul0`, `mul1`), each split
//! into four independent 64-bit lanes. Input is absorbed 32 bytes at a time by
//! [`HighwayState::update`]; a trailing partial packet goes through
//! [`HighwayState::update_remainder`], which injects only the length modulo 32
//! so that streaming callers never need a byte counter.
//!
//! ```
//! use keyhash::highway::{hash64, Key256};
//!
//! let key = Key256([1, 2, 3, 4]);
//! let digest = hash64(&key, b"hello");
//! assert_eq!(digest, hash64(&key, b"hello"));
//! ```
//!
//! Two backends exist: the portable scalar code in [`HighwayState`], which is
//! the reference, and an AVX2 implementation selected at runtime on x86-64.
//! They produce identical digests.

mod backend;
mod state;
mod stream;

#[cfg(target_arch = "x86_64")]
mod avx2;

pub use backend::Backend;
pub use state::HighwayState;
pub use stream::HighwayHasher;

use crate::error::{decode_hex, Error, Result};

/// 64-bit digest: lane 0 of the finalized lane sum.
pub type Digest64 = u64;
/// 256-bit digest: all four lanes of the finalized lane sum, lane 0 first.
pub type Digest256 = [u64; 4];

/// Number of permute-and-update rounds run by finalization.
pub const FINALIZATION_ROUNDS: usize = 4;

/// Bytes absorbed by one update.
pub const PACKET_SIZE: usize = 32;

/// Initial value of `mul0`; also XORed into the key to seed `v0`.
///
/// Hexadecimal digits of pi, lane 3 holding the leading digits. Lane 0 was then
/// adjusted so that every bit position is set in at least one lane.
pub const INIT0: [u64; 4] = [
    0xdbe6d5d5fe4cce2f,
    0xa4093822299f31d0,
    0x13198a2e03707344,
    0x243f6a8885a308d3,
];

/// Initial value of `mul1`; also XORed into the half-rotated key to seed `v1`.
/// The next digits of pi after [`INIT0`].
pub const INIT1: [u64; 4] = [
    0x3bd39e10cb0ef593,
    0xc0acf169b5f18a8c,
    0xbe5466cf34e90c6c,
    0x452821e638d01377,
];

/// Source offset for each byte of a zipper-merged 16-byte lane pair:
/// `out[i] = in[ZIPPER_OFFSETS[i]]`.
///
/// Written from byte 15 down to byte 0 this reads `7 8 6 9 D A 4 B 0 F 1 E 5 2 C 3`.
pub const ZIPPER_OFFSETS: [usize; 16] = [
    0x3, 0xC, 0x2, 0x5, 0xE, 0x1, 0xF, 0x0, 0xB, 0x4, 0xA, 0xD, 0x9, 0x6, 0x8, 0x7,
];

/// 256 bits of key material as four 64-bit lanes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Key256(pub [u64; 4]);

impl Key256 {
    /// Interprets 32 raw bytes as four little-endian lanes.
    pub fn from_bytes(bytes: &[u8; 32]) -> Self {
        let mut lanes = [0u64; 4];
        for (lane, chunk) in lanes.iter_mut().zip(bytes.chunks_exact(8)) {
            *lane = u64::from_le_bytes(chunk.try_into().unwrap());
        }
        Key256(lanes)
    }

    pub fn from_slice(bytes: &[u8]) -> Result<Self> {
        let array: &[u8; 32] = bytes.try_into().map_err(|_| Error::KeyLength {
            expected: 32,
            got: bytes.len(),
        })?;
        Ok(Self::from_bytes(array))
    }

    /// Parses 64 hex characters (32 bytes, little-endian lanes).
    pub fn from_hex(hex: &str) -> Result<Self> {
        Self::from_slice(&decode_hex(hex)?)
    }

    pub fn to_bytes(&self) -> [u8; 32] {
        let mut out = [0u8; 32];
        for (chunk, lane) in out.chunks_exact_mut(8).zip(self.0) {
            chunk.copy_from_slice(&lane.to_le_bytes());
        }
        out
    }
}

/// One 32-byte block of input.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Packet(pub [u8; PACKET_SIZE]);

impl Packet {
    /// Lane `i` is the little-endian value of bytes `8i..8i+8`.
    #[inline(always)]
    pub fn lanes(&self) -> [u64; 4] {
        load_lanes(&self.0)
    }

    pub fn from_lanes(lanes: [u64; 4]) -> Self {
        let mut bytes = [0u8; PACKET_SIZE];
        for (chunk, lane) in bytes.chunks_exact_mut(8).zip(lanes) {
            chunk.copy_from_slice(&lane.to_le_bytes());
        }
        Packet(bytes)
    }
}

#[inline(always)]
pub(crate) fn load_lanes(bytes: &[u8]) -> [u64; 4] {
    debug_assert_eq!(bytes.len(), PACKET_SIZE);
    [
        u64::from_le_bytes(bytes[0..8].try_into().unwrap()),
        u64::from_le_bytes(bytes[8..16].try_into().unwrap()),
        u64::from_le_bytes(bytes[16..24].try_into().unwrap()),
        u64::from_le_bytes(bytes[24..32].try_into().unwrap()),
    ]
}

/// Byte permutation of one 16-byte lane pair, driven by [`ZIPPER_OFFSETS`].
pub fn zipper_merge(half: [u8; 16]) -> [u8; 16] {
    ZIPPER_OFFSETS.map(|src| half[src])
}

/// [`zipper_merge`] on a lane pair held as two words (`lo` = bytes 0..8).
#[inline(always)]
pub(crate) fn zipper_merge_lanes(lo: u64, hi: u64) -> (u64, u64) {
    let out_lo = (((lo & 0xff00_0000) | (hi & 0xff_0000_0000)) >> 24)
        | (((lo & 0xff00_0000_0000) | (hi & 0xff_0000_0000_0000)) >> 16)
        | (lo & 0xff_0000)
        | ((lo & 0xff00) << 32)
        | ((hi & 0xff00_0000_0000_0000) >> 8)
        | (lo << 56);
    let out_hi = (((hi & 0xff00_0000) | (lo & 0xff_0000_0000)) >> 24)
        | (hi & 0xff_0000)
        | ((hi & 0xff00_0000_0000) >> 16)
        | ((hi & 0xff00) << 24)
        | ((lo & 0xff_0000_0000_0000) >> 8)
        | ((hi & 0xff) << 48)
        | (lo & 0xff00_0000_0000_0000);
    (out_lo, out_hi)
}

/// Zipper merge applied to both 16-byte halves of a 256-bit vector.
#[inline(always)]
pub(crate) fn zipper_merge_vector(v: &[u64; 4]) -> [u64; 4] {
    let (a, b) = zipper_merge_lanes(v[0], v[1]);
    let (c, d) = zipper_merge_lanes(v[2], v[3]);
    [a, b, c, d]
}

/// Product of the low 32 bits of each operand, as a full 64-bit value.
#[inline(always)]
pub fn mul32(a: u64, b: u64) -> u64 {
    (a & 0xffff_ffff) * (b & 0xffff_ffff)
}

/// Swaps 32-bit halves within each lane (a 32-bit rotation).
#[inline(always)]
pub fn rot32(x: u64) -> u64 {
    x.rotate_left(32)
}

/// Finalization permutation: `(a, b, c, d) -> (rot32(c), rot32(d), rot32(a), rot32(b))`.
///
/// Swaps the 128-bit halves and the 32-bit halves of every lane, so it is its own
/// inverse.
#[inline(always)]
pub fn permute_lanes(v: [u64; 4]) -> [u64; 4] {
    [rot32(v[2]), rot32(v[3]), rot32(v[0]), rot32(v[1])]
}

/// Packs a 1..=31 byte tail into the packet absorbed by the remainder update.
///
/// Whole 4-byte groups are copied to the front. The 0..=3 leftover bytes form a
/// little-endian word (first leftover byte least significant) stored in bytes
/// 28..32. Everything else is zero.
pub fn remainder_packet(tail: &[u8]) -> Result<Packet> {
    let r = tail.len();
    if r == 0 || r >= PACKET_SIZE {
        return Err(Error::RemainderLength(r));
    }
    let whole = r & !3;
    let mut packet = [0u8; PACKET_SIZE];
    packet[..whole].copy_from_slice(&tail[..whole]);
    let mut last = [0u8; 4];
    last[..r - whole].copy_from_slice(&tail[whole..]);
    packet[28..32].copy_from_slice(&last);
    Ok(Packet(packet))
}

/// 64-bit HighwayHash of `message`, using the best available backend.
pub fn hash64(key: &Key256, message: &[u8]) -> Digest64 {
    Backend::detect().hash64(key, message)
}

/// 256-bit HighwayHash of `message`, using the best available backend.
pub fn hash256(key: &Key256, message: &[u8]) -> Digest256 {
    Backend::detect().hash256(key, message)
}

/// Output width selector for callers that pick at runtime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Width {
    Bits64,
    Bits256,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Digest {
    Bits64(Digest64),
    Bits256(Digest256),
}

impl Digest {
    /// Little-endian bytes, lane 0 first.
    pub fn to_bytes(&self) -> Vec<u8> {
        match self {
            Digest::Bits64(d) => d.to_le_bytes().to_vec(),
            Digest::Bits256(d) => d.iter().flat_map(|l| l.to_le_bytes()).collect(),
        }
    }
}

/// HighwayHash at the requested width.
pub fn hash(key: &Key256, message: &[u8], width: Width) -> Digest {
    match width {
        Width::Bits64 => Digest::Bits64(hash64(key, message)),
        Width::Bits256 => Digest::Bits256(hash256(key, message)),
    }
}
