//! Portable seeded randomness for reproducible fixtures.
//!
//! Every stochastic generator in the crate draws from SplitMix64, a 64-bit
//! counter-based mixer with published constants.  The algorithm is small
//! enough to restate so ports to other languages can reproduce fixtures
//! bit-for-bit: the state advances by the golden-ratio increment
//! `0x9E3779B97F4A7C15` and the output is the finalizer
//! `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
//!  z *= 0x94D049BB133111EB; z ^= z >> 31`.

/// SplitMix64 stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 random bits; exactly representable in f64.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[-1, 1)`.
    pub fn next_symmetric(&mut self) -> f64 {
        self.next_f64() * 2.0 - 1.0
    }
}

/// Mixes a base seed with a stream tag so derived generators are decorrelated
/// but still fully determined by the base seed.
pub fn derive_seed(base: u64, tag: u64) -> u64 {
    let mut h = base ^ 0x9E37_79B9_7F4A_7C15;
    h ^= tag.wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    h = h.rotate_left(27) ^ (h >> 33);
    h.wrapping_mul(0x1656_67B1_9E37_79F9)
}
