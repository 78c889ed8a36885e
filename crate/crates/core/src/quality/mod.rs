//! Statistical quality harness for keyed 64-bit hashes.
//!
//! - [`avalanche`]: flip every input bit and tally which output bits change,
//!   for input sizes 4..=32, then take the median of per-sample maximum biases.
//! - [`distribution`]: hash zero-filled messages of every length and look for
//!   collisions and lopsided output bits.
//! - [`finalization`]: measure how HighwayHash's avalanche depends on the
//!   number of finalization rounds, using 3-byte inputs.
//!
//! Anything implementing [`HashUnderTest`] can be plugged in, including the
//! deliberately broken [`Constant`] and [`FirstEightBytes`] and the
//! [`CsprngBaseline`] that sets the noise floor.

pub mod avalanche;
pub mod distribution;
pub mod finalization;
pub mod rng;

pub use avalanche::{
    avalanche_bias, median_bias, run_avalanche, AvalancheConfig, AvalancheReport, BiasMatrix,
    BiasSummary, CSPRNG_MAX_BIAS_FACTOR, PASS_THRESHOLD,
};
pub use distribution::{zero_input_distinctness, ZeroInputReport};
pub use finalization::{finalization_bias_experiment, FinalizationBias, InputSet};
pub use rng::HarnessRng;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::algo::Algorithm;
use crate::error::{Error, Result};
use crate::highway::{Backend, Key256};
use crate::sip::{Key128, SipParams};

/// A keyed 64-bit hash under test.
pub trait HashUnderTest: Sync {
    fn name(&self) -> String;

    /// The hash bound to 32 bytes of key material. The closure may keep state
    /// (the RNG baseline does) but must be deterministic for a given key.
    fn keyed(&self, key: &[u8; 32]) -> Box<dyn FnMut(&[u8]) -> u64 + '_>;
}

impl HashUnderTest for Algorithm {
    fn name(&self) -> String {
        Algorithm::name(*self).to_string()
    }

    fn keyed(&self, key: &[u8; 32]) -> Box<dyn FnMut(&[u8]) -> u64 + '_> {
        let sip_key = Key128::from_bytes(key[..16].try_into().unwrap());
        match self {
            Algorithm::Highway64 | Algorithm::Highway256 => {
                let key = Key256::from_bytes(key);
                let backend = Backend::detect();
                Box::new(move |m| backend.hash64(&key, m))
            }
            Algorithm::SipHash24 => {
                Box::new(move |m| crate::sip::siphash(&sip_key, m, SipParams::SIP24))
            }
            Algorithm::SipHash13 => {
                Box::new(move |m| crate::sip::siphash(&sip_key, m, SipParams::SIP13))
            }
            Algorithm::SipTree24 => {
                Box::new(move |m| crate::sip::siptreehash(&sip_key, m, SipParams::SIP24))
            }
            Algorithm::SipTree13 => {
                Box::new(move |m| crate::sip::siptreehash(&sip_key, m, SipParams::SIP13))
            }
        }
    }
}

/// Ignores its input. Nothing ever flips.
#[derive(Clone, Copy, Debug, Default)]
pub struct Constant(pub u64);

impl HashUnderTest for Constant {
    fn name(&self) -> String {
        "constant".into()
    }

    fn keyed(&self, _key: &[u8; 32]) -> Box<dyn FnMut(&[u8]) -> u64 + '_> {
        let value = self.0;
        Box::new(move |_| value)
    }
}

/// Returns the first eight message bytes (zero-padded): perfectly linear.
#[derive(Clone, Copy, Debug, Default)]
pub struct FirstEightBytes;

impl HashUnderTest for FirstEightBytes {
    fn name(&self) -> String {
        "first8bytes".into()
    }

    fn keyed(&self, _key: &[u8; 32]) -> Box<dyn FnMut(&[u8]) -> u64 + '_> {
        Box::new(|m| {
            let mut buf = [0u8; 8];
            let n = m.len().min(8);
            buf[..n].copy_from_slice(&m[..n]);
            u64::from_le_bytes(buf)
        })
    }
}

/// Digest is the message length: distinct on zero inputs but badly skewed.
#[derive(Clone, Copy, Debug, Default)]
pub struct LengthOnly;

impl HashUnderTest for LengthOnly {
    fn name(&self) -> String {
        "length".into()
    }

    fn keyed(&self, _key: &[u8; 32]) -> Box<dyn FnMut(&[u8]) -> u64 + '_> {
        Box::new(|m| m.len() as u64)
    }
}

/// A ChaCha20 generator posing as a hash: every query returns fresh output.
///
/// Its flip rates are exactly binomial, which makes it the reference for how
/// much bias pure sampling noise produces.
#[derive(Clone, Copy, Debug, Default)]
pub struct CsprngBaseline;

impl HashUnderTest for CsprngBaseline {
    fn name(&self) -> String {
        "chacha20-rng".into()
    }

    fn keyed(&self, key: &[u8; 32]) -> Box<dyn FnMut(&[u8]) -> u64 + '_> {
        let mut rng = ChaCha20Rng::from_seed(*key);
        Box::new(move |_| rng.next_u64())
    }
}

/// Looks up a hash by name: any [`Algorithm`] plus the harness-only
/// `first8bytes`, `constant`, `length` and `chacha20-rng`.
pub fn lookup(name: &str) -> Result<Box<dyn HashUnderTest>> {
    Ok(match name.trim().to_ascii_lowercase().as_str() {
        "first8bytes" => Box::new(FirstEightBytes),
        "constant" => Box::new(Constant(0)),
        "length" => Box::new(LengthOnly),
        "chacha20-rng" | "rng" => Box::new(CsprngBaseline),
        other => Box::new(
            other
                .parse::<Algorithm>()
                .map_err(|_| Error::UnknownAlgorithm(name.to_string()))?,
        ),
    })
}
