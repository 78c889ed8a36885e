//! Writes the cross-language vector file and checks it reads back.
//!
//! ```text
//! cargo run --example conformance_vectors -- [output path]
//! ```

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};

use keyhash::vectors::{generate, mismatches, read_records, write_records};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| std::env::temp_dir().join("keyhash-vectors.csv").display().to_string());
    let records = generate();
    let mut out = BufWriter::new(File::create(&path)?);
    write_records(&mut out, &records)?;
    out.flush()?;

    let back = read_records(BufReader::new(File::open(&path)?))?;
    let bad = mismatches(&back)?;
    println!("{} records written to {path}; {} fail to reproduce", back.len(), bad.len());
    for r in back.iter().filter(|r| r.message.len() == 3) {
        println!("{r}");
    }
    Ok(())
}
