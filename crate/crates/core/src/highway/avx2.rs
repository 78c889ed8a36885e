//! AVX2 backend: each state vector lives in one `__m256i`.

use core::arch::x86_64::*;

use super::{remainder_packet, Digest256, HighwayState, Key256, PACKET_SIZE};

struct Regs {
    v0: __m256i,
    v1: __m256i,
    mul0: __m256i,
    mul1: __m256i,
}

#[inline]
#[target_feature(enable = "avx2")]
unsafe fn load(lanes: &[u64; 4]) -> __m256i {
    _mm256_loadu_si256(lanes.as_ptr().cast())
}

#[inline]
#[target_feature(enable = "avx2")]
unsafe fn store(v: __m256i) -> [u64; 4] {
    let mut out = [0u64; 4];
    _mm256_storeu_si256(out.as_mut_ptr().cast(), v);
    out
}

impl Regs {
    #[inline]
    #[target_feature(enable = "avx2")]
    unsafe fn load(s: &HighwayState) -> Self {
        Regs {
            v0: load(&s.v0),
            v1: load(&s.v1),
            mul0: load(&s.mul0),
            mul1: load(&s.mul1),
        }
    }

    #[inline]
    #[target_feature(enable = "avx2")]
    unsafe fn store(&self, s: &mut HighwayState) {
        s.v0 = store(self.v0);
        s.v1 = store(self.v1);
        s.mul0 = store(self.mul0);
        s.mul1 = store(self.mul1);
    }

    #[inline]
    #[target_feature(enable = "avx2")]
    unsafe fn update(&mut self, packet: __m256i) {
        // Within each 128-bit half, result byte i takes source byte ZIPPER_OFFSETS[i].
        let zipper = _mm256_setr_epi8(
            3, 12, 2, 5, 14, 1, 15, 0, 11, 4, 10, 13, 9, 6, 8, 7, //
            3, 12, 2, 5, 14, 1, 15, 0, 11, 4, 10, 13, 9, 6, 8, 7,
        );
        self.v1 = _mm256_add_epi64(self.v1, packet);
        self.v1 = _mm256_add_epi64(self.v1, self.mul0);
        self.mul0 = _mm256_xor_si256(
            self.mul0,
            _mm256_mul_epu32(self.v1, _mm256_srli_epi64::<32>(self.v0)),
        );
        self.v0 = _mm256_add_epi64(self.v0, self.mul1);
        self.mul1 = _mm256_xor_si256(
            self.mul1,
            _mm256_mul_epu32(self.v0, _mm256_srli_epi64::<32>(self.v1)),
        );
        self.v0 = _mm256_add_epi64(self.v0, _mm256_shuffle_epi8(self.v1, zipper));
        self.v1 = _mm256_add_epi64(self.v1, _mm256_shuffle_epi8(self.v0, zipper));
    }
}

#[target_feature(enable = "avx2")]
pub(super) unsafe fn update_packets(state: &mut HighwayState, bytes: &[u8]) {
    let mut regs = Regs::load(state);
    regs.update_packets(bytes);
    regs.store(state);
}

#[target_feature(enable = "avx2")]
pub(super) unsafe fn update_remainder(state: &mut HighwayState, tail: &[u8]) {
    let mut regs = Regs::load(state);
    regs.update_remainder(tail);
    regs.store(state);
}

#[target_feature(enable = "avx2")]
pub(super) unsafe fn finalize256(state: &HighwayState) -> Digest256 {
    Regs::load(state).finalize256()
}

/// Whole-message hash with the state held in registers throughout.
#[target_feature(enable = "avx2")]
pub(super) unsafe fn hash256(key: &Key256, message: &[u8]) -> Digest256 {
    let mut regs = Regs::load(&HighwayState::new(key));
    let whole = message.len() - message.len() % PACKET_SIZE;
    regs.update_packets(&message[..whole]);
    if whole != message.len() {
        regs.update_remainder(&message[whole..]);
    }
    regs.finalize256()
}

impl Regs {
    #[inline]
    #[target_feature(enable = "avx2")]
    unsafe fn update_packets(&mut self, bytes: &[u8]) {
        for chunk in bytes.chunks_exact(PACKET_SIZE) {
            self.update(_mm256_loadu_si256(chunk.as_ptr().cast()));
        }
    }

    #[inline]
    #[target_feature(enable = "avx2")]
    unsafe fn update_remainder(&mut self, tail: &[u8]) {
        let packet = remainder_packet(tail).expect("remainder length in 1..=31");
        let len = tail.len() as i32;
        self.v0 = _mm256_add_epi32(self.v0, _mm256_set1_epi32(len));
        let left = _mm_cvtsi32_si128(len);
        let right = _mm_cvtsi32_si128(32 - len);
        self.v1 = _mm256_or_si256(
            _mm256_sll_epi32(self.v1, left),
            _mm256_srl_epi32(self.v1, right),
        );
        self.update(_mm256_loadu_si256(packet.0.as_ptr().cast()));
    }

    #[inline]
    #[target_feature(enable = "avx2")]
    unsafe fn finalize256(mut self) -> Digest256 {
        // 32-bit source index for each destination dword: swap 128-bit halves
        // and the two halves of every 64-bit lane.
        let indices = _mm256_setr_epi32(5, 4, 7, 6, 1, 0, 3, 2);
        for _ in 0..super::FINALIZATION_ROUNDS {
            let permuted = _mm256_permutevar8x32_epi32(self.v0, indices);
            self.update(permuted);
        }
        let sum = _mm256_add_epi64(
            _mm256_add_epi64(self.v0, self.v1),
            _mm256_add_epi64(self.mul0, self.mul1),
        );
        store(sum)
    }
}
