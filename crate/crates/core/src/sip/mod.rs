//! SipHash-c-d and SipTreeHash.
//!
//! [`siphash`] is the standard add-rotate-XOR PRF with configurable round
//! counts ([`SipParams::SIP24`], [`SipParams::SIP13`]). [`siptreehash`] splits
//! the input into four interleaved streams of 64-bit words, hashes each with
//! SipHash and then hashes the four results.

mod tree;

pub use tree::{siptreehash, SipTreeHasher, TreeLanes};

use crate::error::{decode_hex, Error, Result};

/// 128-bit SipHash key.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Key128 {
    pub k0: u64,
    pub k1: u64,
}

impl Key128 {
    pub fn new(k0: u64, k1: u64) -> Self {
        Key128 { k0, k1 }
    }

    pub fn from_bytes(bytes: &[u8; 16]) -> Self {
        Key128 {
            k0: u64::from_le_bytes(bytes[..8].try_into().unwrap()),
            k1: u64::from_le_bytes(bytes[8..].try_into().unwrap()),
        }
    }

    pub fn from_slice(bytes: &[u8]) -> Result<Self> {
        let array: &[u8; 16] = bytes.try_into().map_err(|_| Error::KeyLength {
            expected: 16,
            got: bytes.len(),
        })?;
        Ok(Self::from_bytes(array))
    }

    /// Parses 32 hex characters.
    pub fn from_hex(hex: &str) -> Result<Self> {
        Self::from_slice(&decode_hex(hex)?)
    }

    pub fn to_bytes(&self) -> [u8; 16] {
        let mut out = [0u8; 16];
        out[..8].copy_from_slice(&self.k0.to_le_bytes());
        out[8..].copy_from_slice(&self.k1.to_le_bytes());
        out
    }
}

/// Round counts: `c` compression rounds per word, `d` finalization rounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SipParams {
    pub c: usize,
    pub d: usize,
}

impl SipParams {
    pub const SIP24: SipParams = SipParams { c: 2, d: 4 };
    pub const SIP13: SipParams = SipParams { c: 1, d: 3 };
}

/// The four SipHash state words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SipState {
    pub s0: u64,
    pub s1: u64,
    pub s2: u64,
    pub s3: u64,
}

impl SipState {
    pub fn new(key: &Key128) -> Self {
        SipState {
            s0: key.k0 ^ 0x736f_6d65_7073_6575,
            s1: key.k1 ^ 0x646f_7261_6e64_6f6d,
            s2: key.k0 ^ 0x6c79_6765_6e65_7261,
            s3: key.k1 ^ 0x7465_6462_7974_6573,
        }
    }

    #[inline(always)]
    pub fn round(&mut self) {
        self.s0 = self.s0.wrapping_add(self.s1);
        self.s1 = self.s1.rotate_left(13);
        self.s1 ^= self.s0;
        self.s0 = self.s0.rotate_left(32);
        self.s2 = self.s2.wrapping_add(self.s3);
        self.s3 = self.s3.rotate_left(16);
        self.s3 ^= self.s2;
        self.s0 = self.s0.wrapping_add(self.s3);
        self.s3 = self.s3.rotate_left(21);
        self.s3 ^= self.s0;
        self.s2 = self.s2.wrapping_add(self.s1);
        self.s1 = self.s1.rotate_left(17);
        self.s1 ^= self.s2;
        self.s2 = self.s2.rotate_left(32);
    }

    /// Absorbs one little-endian message word with `c` rounds.
    #[inline(always)]
    pub fn compress(&mut self, word: u64, c: usize) {
        self.s3 ^= word;
        for _ in 0..c {
            self.round();
        }
        self.s0 ^= word;
    }

    /// Absorbs the final block (length byte plus `tail` bytes) and runs `d` rounds.
    #[inline(always)]
    pub fn finish(mut self, total_len: u64, tail: u64, params: SipParams) -> u64 {
        let last = ((total_len & 0xff) << 56) | tail;
        self.compress(last, params.c);
        self.s2 ^= 0xff;
        for _ in 0..params.d {
            self.round();
        }
        self.s0 ^ self.s1 ^ self.s2 ^ self.s3
    }
}

/// One SipRound on a copy of `state`.
pub fn sip_round(mut state: SipState) -> SipState {
    state.round();
    state
}

#[inline(always)]
fn load_tail(bytes: &[u8]) -> u64 {
    debug_assert!(bytes.len() < 8);
    let mut buf = [0u8; 8];
    buf[..bytes.len()].copy_from_slice(bytes);
    u64::from_le_bytes(buf)
}

/// SipHash-c-d of `message`.
pub fn siphash(key: &Key128, message: &[u8], params: SipParams) -> u64 {
    let mut state = SipState::new(key);
    let mut words = message.chunks_exact(8);
    for w in &mut words {
        state.compress(u64::from_le_bytes(w.try_into().unwrap()), params.c);
    }
    state.finish(message.len() as u64, load_tail(words.remainder()), params)
}

/// Incremental SipHash-c-d.
#[derive(Clone, Debug)]
pub struct SipHasher {
    state: SipState,
    params: SipParams,
    tail: [u8; 8],
    ntail: usize,
    length: u64,
}

impl SipHasher {
    pub fn new(key: &Key128, params: SipParams) -> Self {
        SipHasher {
            state: SipState::new(key),
            params,
            tail: [0; 8],
            ntail: 0,
            length: 0,
        }
    }

    pub fn append(&mut self, mut data: &[u8]) {
        self.length = self.length.wrapping_add(data.len() as u64);
        if self.ntail > 0 {
            let take = (8 - self.ntail).min(data.len());
            self.tail[self.ntail..self.ntail + take].copy_from_slice(&data[..take]);
            self.ntail += take;
            data = &data[take..];
            if self.ntail < 8 {
                return;
            }
            self.state
                .compress(u64::from_le_bytes(self.tail), self.params.c);
            self.ntail = 0;
        }
        let mut words = data.chunks_exact(8);
        for w in &mut words {
            self.state
                .compress(u64::from_le_bytes(w.try_into().unwrap()), self.params.c);
        }
        let rest = words.remainder();
        self.tail[..rest.len()].copy_from_slice(rest);
        self.ntail = rest.len();
    }

    pub fn finish(self) -> u64 {
        self.state.finish(
            self.length,
            load_tail(&self.tail[..self.ntail]),
            self.params,
        )
    }
}
