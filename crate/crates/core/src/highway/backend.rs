use std::sync::OnceLock;

use super::{Digest256, Digest64, HighwayState, Key256, PACKET_SIZE};

/// Implementation used for the hot loops.
///
/// [`Backend::Portable`] is always available and is the correctness reference.
/// Choose once with [`Backend::detect`] and keep the value outside inner loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Portable,
    #[cfg(target_arch = "x86_64")]
    Avx2,
}

static DETECTED: OnceLock<Backend> = OnceLock::new();

impl Backend {
    /// Best backend supported by the running CPU. Cached after the first call.
    pub fn detect() -> Backend {
        *DETECTED.get_or_init(|| {
            Backend::available()
                .into_iter()
                .last()
                .unwrap_or(Backend::Portable)
        })
    }

    /// Every backend usable on this CPU, portable first.
    pub fn available() -> Vec<Backend> {
        #[allow(unused_mut)]
        let mut out = vec![Backend::Portable];
        #[cfg(target_arch = "x86_64")]
        if std::arch::is_x86_feature_detected!("avx2") {
            out.push(Backend::Avx2);
        }
        out
    }

    pub fn name(self) -> &'static str {
        match self {
            Backend::Portable => "portable",
            #[cfg(target_arch = "x86_64")]
            Backend::Avx2 => "avx2",
        }
    }

    /// Absorbs whole packets; `bytes.len()` must be a multiple of 32.
    pub fn update_packets(self, state: &mut HighwayState, bytes: &[u8]) {
        debug_assert_eq!(bytes.len() % PACKET_SIZE, 0);
        match self {
            Backend::Portable => state.update_packets(bytes),
            #[cfg(target_arch = "x86_64")]
            // SAFETY: this variant is only handed out when AVX2 was detected.
            Backend::Avx2 => unsafe { super::avx2::update_packets(state, bytes) },
        }
    }

    /// Absorbs a 1..=31 byte tail. Callers guarantee the length.
    pub(crate) fn update_remainder(self, state: &mut HighwayState, tail: &[u8]) {
        match self {
            Backend::Portable => state.update_remainder(tail).unwrap(),
            #[cfg(target_arch = "x86_64")]
            Backend::Avx2 => unsafe { super::avx2::update_remainder(state, tail) },
        }
    }

    pub(crate) fn finalize256(self, state: &HighwayState) -> Digest256 {
        match self {
            Backend::Portable => state.finalize256(),
            #[cfg(target_arch = "x86_64")]
            Backend::Avx2 => unsafe { super::avx2::finalize256(state) },
        }
    }

    pub fn hash64(self, key: &Key256, message: &[u8]) -> Digest64 {
        self.hash256(key, message)[0]
    }

    pub fn hash256(self, key: &Key256, message: &[u8]) -> Digest256 {
        match self {
            Backend::Portable => {
                let mut state = HighwayState::new(key);
                state.absorb(message);
                state.finalize256()
            }
            #[cfg(target_arch = "x86_64")]
            // SAFETY: this variant is only handed out when AVX2 was detected.
            Backend::Avx2 => unsafe { super::avx2::hash256(key, message) },
        }
    }
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn portable_is_always_available() {
        assert_eq!(Backend::available()[0], Backend::Portable);
        assert!(Backend::available().contains(&Backend::detect()));
    }

    #[test]
    fn backends_agree_on_short_messages() {
        let key = Key256([0x0706_0504_0302_0100, 9, 10, u64::MAX]);
        let data: Vec<u8> = (0..200u32).map(|i| (i * 7) as u8).collect();
        for backend in Backend::available() {
            for len in 0..data.len() {
                assert_eq!(
                    backend.hash256(&key, &data[..len]),
                    Backend::Portable.hash256(&key, &data[..len]),
                    "{backend} len {len}"
                );
            }
        }
    }
}
