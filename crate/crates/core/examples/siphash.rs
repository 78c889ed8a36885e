//! SipHash-2-4, SipHash-1-3 and four-lane SipTreeHash.
//!
//! ```text
//! cargo run --release --example siphash -- [message]
//! ```

use keyhash::sip::{siphash, siptreehash, Key128, SipHasher, SipParams};

fn main() -> keyhash::Result<()> {
    let message = std::env::args().nth(1).unwrap_or_else(|| "The quick brown fox".into());
    let key = Key128::from_hex("000102030405060708090a0b0c0d0e0f")?;

    // The reference test vector: empty message under key 00..0f.
    let empty = siphash(&key, b"", SipParams::SIP24);
    println!("siphash24(\"\") = {} (little-endian bytes)", hex::encode(empty.to_le_bytes()));

    for (name, params) in [("2-4", SipParams::SIP24), ("1-3", SipParams::SIP13)] {
        println!("siphash{name}:    {:016x}", siphash(&key, message.as_bytes(), params));
        println!("siptree{name}:    {:016x}", siptreehash(&key, message.as_bytes(), params));
    }

    let mut streaming = SipHasher::new(&key, SipParams::SIP24);
    for byte in message.as_bytes() {
        streaming.append(std::slice::from_ref(byte));
    }
    println!("byte at a time: {:016x}", streaming.finish());
    Ok(())
}
