//! Cross-language conformance vectors.
//!
//! One record per line: `algo,key_hex,message_hex,digest_hex`, all hex
//! lowercase. Digests are little-endian per 64-bit lane, lane 0 first. Blank
//! lines and lines starting with `#` are ignored by the parser.

use std::fmt;
use std::io::{BufRead, Write};

use crate::algo::Algorithm;
use crate::error::{decode_hex, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorRecord {
    pub algo: Algorithm,
    pub key: Vec<u8>,
    pub message: Vec<u8>,
    pub digest: Vec<u8>,
}

impl VectorRecord {
    /// Computes the digest for `(algo, key, message)`.
    pub fn compute(algo: Algorithm, key: &[u8], message: &[u8]) -> Result<Self> {
        Ok(VectorRecord {
            algo,
            key: key.to_vec(),
            message: message.to_vec(),
            digest: algo.hash(key, message)?,
        })
    }

    /// True when re-hashing reproduces the stored digest.
    pub fn verify(&self) -> Result<bool> {
        Ok(self.algo.hash(&self.key, &self.message)? == self.digest)
    }

    pub fn parse(line: &str, line_no: usize) -> Result<Self> {
        let bad = |reason: String| Error::Vector {
            line: line_no,
            reason,
        };
        let fields: Vec<&str> = line.trim().split(',').collect();
        let [algo, key, message, digest] = fields[..] else {
            return Err(bad(format!("expected 4 fields, got {}", fields.len())));
        };
        let algo: Algorithm = algo.parse().map_err(|e: Error| bad(e.to_string()))?;
        let hex = |s: &str| decode_hex(s).map_err(|e| bad(e.to_string()));
        let record = VectorRecord {
            algo,
            key: hex(key)?,
            message: hex(message)?,
            digest: hex(digest)?,
        };
        if record.key.len() != algo.key_len() {
            return Err(bad(format!(
                "{algo} key must be {} bytes, got {}",
                algo.key_len(),
                record.key.len()
            )));
        }
        if record.digest.len() != algo.digest_len() {
            return Err(bad(format!(
                "{algo} digest must be {} bytes, got {}",
                algo.digest_len(),
                record.digest.len()
            )));
        }
        Ok(record)
    }
}

impl fmt::Display for VectorRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            self.algo,
            hex::encode(&self.key),
            hex::encode(&self.message),
            hex::encode(&self.digest)
        )
    }
}

/// Message lengths covered by the standard file: 0..=64, 256, 1023, 1024.
pub fn standard_lengths() -> Vec<usize> {
    (0..=64).chain([256, 1023, 1024]).collect()
}

/// Key bytes `00 01 02 ...` of the algorithm's key length.
pub fn standard_key(algo: Algorithm) -> Vec<u8> {
    (0..algo.key_len() as u8).collect()
}

/// Message bytes `00 01 02 ... ff 00 01 ...`.
pub fn standard_message(len: usize) -> Vec<u8> {
    (0..len).map(|i| i as u8).collect()
}

/// Every algorithm over every standard length, algorithm-major.
pub fn generate() -> Vec<VectorRecord> {
    let lengths = standard_lengths();
    Algorithm::ALL
        .into_iter()
        .flat_map(|algo| {
            let key = standard_key(algo);
            lengths
                .iter()
                .map(move |&len| {
                    VectorRecord::compute(algo, &key, &standard_message(len))
                        .expect("standard key length matches")
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

pub fn write_records<W: Write>(mut out: W, records: &[VectorRecord]) -> std::io::Result<()> {
    for r in records {
        writeln!(out, "{r}")?;
    }
    Ok(())
}

pub fn read_records<R: BufRead>(input: R) -> Result<Vec<VectorRecord>> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line.map_err(|e| Error::Vector {
            line: i + 1,
            reason: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        out.push(VectorRecord::parse(trimmed, i + 1)?);
    }
    Ok(out)
}

/// Indices of records whose digest does not reproduce.
pub fn mismatches(records: &[VectorRecord]) -> Result<Vec<usize>> {
    let mut bad = Vec::new();
    for (i, r) in records.iter().enumerate() {
        if !r.verify()? {
            bad.push(i);
        }
    }
    Ok(bad)
}
