use super::{siphash, Key128, SipParams, SipState};

const LANES: usize = 4;
const PACKET: usize = 8 * LANES;

/// Four independent SipHash states; lane `j` consumes stream words `4i + j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeLanes {
    pub lanes: [SipState; LANES],
    /// Words absorbed by each lane so far (identical for all lanes).
    pub words: u64,
}

impl TreeLanes {
    pub fn new(key: &Key128) -> Self {
        TreeLanes {
            lanes: [SipState::new(key); LANES],
            words: 0,
        }
    }

    /// Feeds one little-endian word of a 32-byte packet to each lane.
    #[inline]
    pub fn absorb(&mut self, packet: &[u8; PACKET], c: usize) {
        for (lane, word) in self.lanes.iter_mut().zip(packet.chunks_exact(8)) {
            lane.compress(u64::from_le_bytes(word.try_into().unwrap()), c);
        }
        self.words += 1;
    }

    /// Finishes every lane as a standard SipHash over its own sub-stream.
    pub fn finish(self, params: SipParams) -> [u64; LANES] {
        let len = self.words * 8;
        self.lanes.map(|lane| lane.finish(len, 0, params))
    }
}

/// Hashes the four lane digests, lane 0 first, as a 32-byte message.
fn fold(key: &Key128, lanes: [u64; LANES], params: SipParams) -> u64 {
    let mut msg = [0u8; PACKET];
    for (chunk, lane) in msg.chunks_exact_mut(8).zip(lanes) {
        chunk.copy_from_slice(&lane.to_le_bytes());
    }
    siphash(key, &msg, params)
}

/// SipTreeHash: four interleaved SipHash lanes folded by one more SipHash.
///
/// The message is zero-padded to a multiple of 32 bytes first. Digests differ
/// from plain [`siphash`] of the same input.
pub fn siptreehash(key: &Key128, message: &[u8], params: SipParams) -> u64 {
    let mut tree = TreeLanes::new(key);
    let mut packets = message.chunks_exact(PACKET);
    for p in &mut packets {
        tree.absorb(p.try_into().unwrap(), params.c);
    }
    let rest = packets.remainder();
    if !rest.is_empty() {
        let mut last = [0u8; PACKET];
        last[..rest.len()].copy_from_slice(rest);
        tree.absorb(&last, params.c);
    }
    fold(key, tree.finish(params), params)
}

/// Incremental [`siptreehash`].
#[derive(Clone, Debug)]
pub struct SipTreeHasher {
    key: Key128,
    params: SipParams,
    tree: TreeLanes,
    buffer: [u8; PACKET],
    buffered: usize,
}

impl SipTreeHasher {
    pub fn new(key: &Key128, params: SipParams) -> Self {
        SipTreeHasher {
            key: *key,
            params,
            tree: TreeLanes::new(key),
            buffer: [0; PACKET],
            buffered: 0,
        }
    }

    pub fn append(&mut self, mut data: &[u8]) {
        while !data.is_empty() {
            if self.buffered == 0 && data.len() >= PACKET {
                let (head, rest) = data.split_at(PACKET);
                self.tree.absorb(head.try_into().unwrap(), self.params.c);
                data = rest;
                continue;
            }
            let take = (PACKET - self.buffered).min(data.len());
            self.buffer[self.buffered..self.buffered + take].copy_from_slice(&data[..take]);
            self.buffered += take;
            data = &data[take..];
            if self.buffered == PACKET {
                self.tree.absorb(&self.buffer, self.params.c);
                self.buffered = 0;
            }
        }
    }

    pub fn finish(mut self) -> u64 {
        if self.buffered > 0 {
            self.buffer[self.buffered..].fill(0);
            self.tree.absorb(&self.buffer, self.params.c);
        }
        fold(&self.key, self.tree.finish(self.params), self.params)
    }
}
