//! Runtime selection of the keyed hashes by name.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::highway::{self, HighwayHasher, Key256, Width};
use crate::sip::{self, Key128, SipHasher, SipParams, SipTreeHasher};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Highway64,
    Highway256,
    SipHash24,
    SipHash13,
    SipTree24,
    SipTree13,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Highway64,
        Algorithm::Highway256,
        Algorithm::SipHash24,
        Algorithm::SipHash13,
        Algorithm::SipTree24,
        Algorithm::SipTree13,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Highway64 => "highway64",
            Algorithm::Highway256 => "highway256",
            Algorithm::SipHash24 => "siphash24",
            Algorithm::SipHash13 => "siphash13",
            Algorithm::SipTree24 => "siptree24",
            Algorithm::SipTree13 => "siptree13",
        }
    }

    /// Key size in bytes.
    pub fn key_len(self) -> usize {
        match self {
            Algorithm::Highway64 | Algorithm::Highway256 => 32,
            _ => 16,
        }
    }

    /// Digest size in bytes.
    pub fn digest_len(self) -> usize {
        match self {
            Algorithm::Highway256 => 32,
            _ => 8,
        }
    }

    fn sip_params(self) -> SipParams {
        match self {
            Algorithm::SipHash13 | Algorithm::SipTree13 => SipParams::SIP13,
            _ => SipParams::SIP24,
        }
    }

    /// Replaces the output width of a HighwayHash variant; other algorithms
    /// only accept 64.
    pub fn with_width(self, bits: u32) -> Result<Algorithm> {
        match (self, bits) {
            (Algorithm::Highway64 | Algorithm::Highway256, 64) => Ok(Algorithm::Highway64),
            (Algorithm::Highway64 | Algorithm::Highway256, 256) => Ok(Algorithm::Highway256),
            (a, 64) => Ok(a),
            (a, bits) => Err(Error::InvalidArgument(format!(
                "{a} has no {bits}-bit output"
            ))),
        }
    }

    /// One-shot digest as little-endian bytes (lane 0 first for 256-bit output).
    pub fn hash(self, key: &[u8], message: &[u8]) -> Result<Vec<u8>> {
        let mut h = self.hasher(key)?;
        h.append(message);
        Ok(h.finish())
    }

    /// 64-bit digest from 32 bytes of key material; the SipHash family uses the
    /// first 16. 256-bit HighwayHash reports lane 0.
    pub fn hash64(self, key: &[u8; 32], message: &[u8]) -> u64 {
        match self {
            Algorithm::Highway64 | Algorithm::Highway256 => {
                highway::hash64(&Key256::from_bytes(key), message)
            }
            Algorithm::SipHash24 | Algorithm::SipHash13 => {
                sip::siphash(&sip_key(key), message, self.sip_params())
            }
            Algorithm::SipTree24 | Algorithm::SipTree13 => {
                sip::siptreehash(&sip_key(key), message, self.sip_params())
            }
        }
    }

    pub fn hasher(self, key: &[u8]) -> Result<StreamHasher> {
        if key.len() != self.key_len() {
            return Err(Error::KeyLength {
                expected: self.key_len(),
                got: key.len(),
            });
        }
        Ok(match self {
            Algorithm::Highway64 | Algorithm::Highway256 => {
                let width = if self == Algorithm::Highway64 {
                    Width::Bits64
                } else {
                    Width::Bits256
                };
                StreamHasher::Highway(HighwayHasher::new(&Key256::from_slice(key)?), width)
            }
            Algorithm::SipHash24 | Algorithm::SipHash13 => {
                StreamHasher::Sip(SipHasher::new(&Key128::from_slice(key)?, self.sip_params()))
            }
            Algorithm::SipTree24 | Algorithm::SipTree13 => StreamHasher::Tree(SipTreeHasher::new(
                &Key128::from_slice(key)?,
                self.sip_params(),
            )),
        })
    }
}

fn sip_key(material: &[u8; 32]) -> Key128 {
    Key128::from_bytes(material[..16].try_into().unwrap())
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let found = match lower.as_str() {
            "highway" => Some(Algorithm::Highway64),
            "siphash" => Some(Algorithm::SipHash24),
            "siptree" | "siptreehash" => Some(Algorithm::SipTree24),
            other => Algorithm::ALL.into_iter().find(|a| a.name() == other),
        };
        found.ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

/// Streaming state for any [`Algorithm`].
#[derive(Clone, Debug)]
pub enum StreamHasher {
    Highway(HighwayHasher, Width),
    Sip(SipHasher),
    Tree(SipTreeHasher),
}

impl StreamHasher {
    pub fn append(&mut self, data: &[u8]) {
        match self {
            StreamHasher::Highway(h, _) => h.append(data),
            StreamHasher::Sip(h) => h.append(data),
            StreamHasher::Tree(h) => h.append(data),
        }
    }

    /// Digest bytes, little-endian per 64-bit lane.
    pub fn finish(self) -> Vec<u8> {
        match self {
            StreamHasher::Highway(h, width) => h.finish(width).to_bytes(),
            StreamHasher::Sip(h) => h.finish().to_le_bytes().to_vec(),
            StreamHasher::Tree(h) => h.finish().to_le_bytes().to_vec(),
        }
    }
}
