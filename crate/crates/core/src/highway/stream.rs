use super::{Backend, Digest, Digest256, Digest64, HighwayState, Key256, Width, PACKET_SIZE};

/// Incremental HighwayHash.
///
/// Only the length modulo 32 is tracked (as the buffer fill), so the hasher
/// carries no byte counter. Any split of a message into [`append`](Self::append)
/// calls yields the one-shot digest. Finishing consumes the hasher.
#[derive(Clone, Debug)]
pub struct HighwayHasher {
    state: HighwayState,
    buffer: [u8; PACKET_SIZE],
    buffered: usize,
    backend: Backend,
}

impl HighwayHasher {
    pub fn new(key: &Key256) -> Self {
        Self::with_backend(key, Backend::detect())
    }

    pub fn with_backend(key: &Key256, backend: Backend) -> Self {
        HighwayHasher {
            state: HighwayState::new(key),
            buffer: [0; PACKET_SIZE],
            buffered: 0,
            backend,
        }
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    /// Number of bytes waiting for a full packet (always < 32).
    pub fn buffered_len(&self) -> usize {
        self.buffered
    }

    pub fn append(&mut self, mut data: &[u8]) {
        if self.buffered > 0 {
            let take = (PACKET_SIZE - self.buffered).min(data.len());
            self.buffer[self.buffered..self.buffered + take].copy_from_slice(&data[..take]);
            self.buffered += take;
            data = &data[take..];
            if self.buffered < PACKET_SIZE {
                return;
            }
            self.backend.update_packets(&mut self.state, &self.buffer);
            self.buffered = 0;
        }
        let whole = data.len() - data.len() % PACKET_SIZE;
        self.backend.update_packets(&mut self.state, &data[..whole]);
        let rest = &data[whole..];
        self.buffer[..rest.len()].copy_from_slice(rest);
        self.buffered = rest.len();
    }

    fn into_state(mut self) -> (Backend, HighwayState) {
        if self.buffered > 0 {
            self.backend
                .update_remainder(&mut self.state, &self.buffer[..self.buffered]);
        }
        (self.backend, self.state)
    }

    pub fn finish64(self) -> Digest64 {
        let (backend, state) = self.into_state();
        backend.finalize256(&state)[0]
    }

    pub fn finish256(self) -> Digest256 {
        let (backend, state) = self.into_state();
        backend.finalize256(&state)
    }

    pub fn finish(self, width: Width) -> Digest {
        match width {
            Width::Bits64 => Digest::Bits64(self.finish64()),
            Width::Bits256 => Digest::Bits256(self.finish256()),
        }
    }
}
