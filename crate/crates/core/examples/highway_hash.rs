//! HighwayHash one-shot and streaming, 64- and 256-bit output.
//!
//! ```text
//! cargo run --release --example highway_hash -- [message]
//! ```

use keyhash::highway::{hash, hash256, hash64, Backend, HighwayHasher, Key256, Width};

fn main() -> keyhash::Result<()> {
    let message = std::env::args().nth(1).unwrap_or_else(|| "The quick brown fox".into());
    let key = Key256::from_hex("000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f")?;

    println!("backend:   {}", Backend::detect());
    println!("hash64:    {:016x}", hash64(&key, message.as_bytes()));
    let wide = hash256(&key, message.as_bytes());
    println!("hash256:   {:016x} {:016x} {:016x} {:016x}", wide[0], wide[1], wide[2], wide[3]);
    println!("as bytes:  {}", hex::encode(hash(&key, message.as_bytes(), Width::Bits256).to_bytes()));

    // Streaming: pieces of any size give the same digest as one call.
    let mut hasher = HighwayHasher::new(&key);
    for word in message.split_inclusive(' ') {
        hasher.append(word.as_bytes());
    }
    println!("streamed:  {:016x}", hasher.finish64());

    // Every backend available on this CPU agrees with the portable one.
    for backend in Backend::available() {
        println!("{:<9}  {:016x}", backend.name(), backend.hash64(&key, message.as_bytes()));
    }
    Ok(())
}
