//! Keyed hashing with SIMD-friendly multiply/permute mixing.
//!
//! - [`highway`]: HighwayHash, with a portable backend and an AVX2 backend.
//! - [`sip`]: SipHash-c-d and the four-lane SipTreeHash construction.
//! - [`quality`]: avalanche, zero-input and finalization-round experiments.
//! - [`bench`](mod@bench): a cycle-counting micro-benchmark with robust estimation.
//! - [`algo`] and [`vectors`]: runtime algorithm selection and the
//!   `algo,key_hex,message_hex,digest_hex` conformance file.
//! - [`cli`]: the `keyhash` command line front end.
//!
//! Runnable walkthroughs, one per capability, live in `examples/`:
//!
//! | example | shows |
//! |---|---|
//! | `highway_hash` | one-shot, streaming and per-backend HighwayHash |
//! | `siphash` | SipHash-2-4/1-3 and SipTreeHash |
//! | `avalanche` | per-size avalanche bias of any hash |
//! | `zero_inputs` | zero-filled message collisions and stuck bits |
//! | `finalization_rounds` | bias after 2, 3 and 4 finalization rounds |
//! | `noise_floor` | how biased an ideal random function looks |
//! | `bench_table1` | cycles per byte across hashes and sizes |
//! | `conformance_vectors` | writing and checking the vector file |

pub mod algo;
pub mod bench;
pub mod cli;
pub mod error;
pub mod highway;
pub mod quality;
pub mod sip;
pub mod vectors;

pub use algo::Algorithm;
pub use error::{Error, Result};
