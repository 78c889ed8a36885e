use super::{
    load_lanes, mul32, permute_lanes, remainder_packet, rot32, zipper_merge_vector, Digest256,
    Digest64, Key256, Packet, FINALIZATION_ROUNDS, INIT0, INIT1, PACKET_SIZE,
};
use crate::error::Result;

/// The 1024-bit HighwayHash state, as four vectors of four 64-bit lanes.
///
/// All lane arithmetic wraps modulo 2^64. This is the portable reference
/// implementation; the vectorized backend must match it bit for bit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct HighwayState {
    pub v0: [u64; 4],
    pub v1: [u64; 4],
    pub mul0: [u64; 4],
    pub mul1: [u64; 4],
}

#[inline(always)]
fn add_assign(dst: &mut [u64; 4], src: &[u64; 4]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d = d.wrapping_add(*s);
    }
}

#[inline(always)]
fn sub_assign(dst: &mut [u64; 4], src: &[u64; 4]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d = d.wrapping_sub(*s);
    }
}

impl HighwayState {
    /// Expands a key into the initial state.
    pub fn new(key: &Key256) -> Self {
        let mut state = HighwayState {
            mul0: INIT0,
            mul1: INIT1,
            ..Default::default()
        };
        for i in 0..4 {
            state.v0[i] = key.0[i] ^ INIT0[i];
            state.v1[i] = rot32(key.0[i]) ^ INIT1[i];
        }
        state
    }

    /// Absorbs one packet given as lanes.
    #[inline(always)]
    pub fn update_lanes(&mut self, packet: &[u64; 4]) {
        for i in 0..4 {
            self.v1[i] = self.v1[i].wrapping_add(packet[i]).wrapping_add(self.mul0[i]);
            self.mul0[i] ^= mul32(self.v1[i], self.v0[i] >> 32);
            self.v0[i] = self.v0[i].wrapping_add(self.mul1[i]);
            self.mul1[i] ^= mul32(self.v0[i], self.v1[i] >> 32);
        }
        add_assign(&mut self.v0, &zipper_merge_vector(&self.v1));
        add_assign(&mut self.v1, &zipper_merge_vector(&self.v0));
    }

    /// Absorbs one 32-byte packet.
    #[inline(always)]
    pub fn update(&mut self, packet: &Packet) {
        self.update_lanes(&packet.lanes());
    }

    /// Absorbs every whole packet in `bytes`; `bytes.len()` must be a multiple of 32.
    pub fn update_packets(&mut self, bytes: &[u8]) {
        debug_assert_eq!(bytes.len() % PACKET_SIZE, 0);
        for chunk in bytes.chunks_exact(PACKET_SIZE) {
            self.update_lanes(&load_lanes(chunk));
        }
    }

    /// Undoes [`update`](Self::update) for the same packet.
    ///
    /// Each update step adds or XORs a function of lanes that the step itself
    /// leaves unchanged, so the steps can be peeled off in reverse order.
    pub fn update_inverse(&mut self, packet: &Packet) {
        let lanes = packet.lanes();
        sub_assign(&mut self.v1, &zipper_merge_vector(&self.v0));
        sub_assign(&mut self.v0, &zipper_merge_vector(&self.v1));
        for i in 0..4 {
            self.mul1[i] ^= mul32(self.v0[i], self.v1[i] >> 32);
            self.v0[i] = self.v0[i].wrapping_sub(self.mul1[i]);
            self.mul0[i] ^= mul32(self.v1[i], self.v0[i] >> 32);
            self.v1[i] = self.v1[i].wrapping_sub(lanes[i]).wrapping_sub(self.mul0[i]);
        }
    }

    /// Absorbs a final partial packet of 1..=31 bytes.
    ///
    /// The length is added to every 32-bit half of `v0` and rotates every 32-bit
    /// half of `v1` before the packed tail is absorbed.
    pub fn update_remainder(&mut self, tail: &[u8]) -> Result<()> {
        let packet = remainder_packet(tail)?;
        self.inject_length(tail.len() as u32);
        self.update(&packet);
        Ok(())
    }

    /// Length injection half of the remainder step; `len` is in 1..=31.
    #[inline(always)]
    pub(crate) fn inject_length(&mut self, len: u32) {
        debug_assert!((1..32).contains(&len));
        for lane in &mut self.v0 {
            // Adding to each half separately keeps carries inside the half.
            let lo = (*lane as u32).wrapping_add(len);
            let hi = ((*lane >> 32) as u32).wrapping_add(len);
            *lane = ((hi as u64) << 32) | lo as u64;
        }
        for lane in &mut self.v1 {
            let lo = (*lane as u32).rotate_left(len);
            let hi = ((*lane >> 32) as u32).rotate_left(len);
            *lane = ((hi as u64) << 32) | lo as u64;
        }
    }

    #[inline(always)]
    fn permute_and_update(&mut self) {
        let permuted = permute_lanes(self.v0);
        self.update_lanes(&permuted);
    }

    /// Lane-wise sum of the four vectors after `rounds` permute-and-update rounds.
    ///
    /// The standard hash uses [`FINALIZATION_ROUNDS`]; other counts exist for
    /// the round-count experiments and are not HighwayHash.
    pub fn finalize_with_rounds(mut self, rounds: usize) -> Digest256 {
        for _ in 0..rounds {
            self.permute_and_update();
        }
        core::array::from_fn(|i| {
            self.v0[i]
                .wrapping_add(self.v1[i])
                .wrapping_add(self.mul0[i])
                .wrapping_add(self.mul1[i])
        })
    }

    pub fn finalize64(self) -> Digest64 {
        self.finalize_with_rounds(FINALIZATION_ROUNDS)[0]
    }

    pub fn finalize256(self) -> Digest256 {
        self.finalize_with_rounds(FINALIZATION_ROUNDS)
    }

    /// Absorbs a complete message: whole packets, then the remainder if any.
    pub fn absorb(&mut self, message: &[u8]) {
        let whole = message.len() - message.len() % PACKET_SIZE;
        self.update_packets(&message[..whole]);
        if whole != message.len() {
            // Length is 1..=31 here, so this cannot fail.
            self.update_remainder(&message[whole..]).unwrap();
        }
    }
}
