//! SplitMix64, the generator behind every seeded decision in this crate.
//!
//! Chosen because it is tiny, well studied, and fully specified by three
//! constants, so identical seeds give identical instances on every platform
//! and toolchain. The constants are the ones from Vigna's reference
//! implementation (the Weyl increment is the golden ratio in 2^64).

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const MIX_A: u64 = 0xBF58_476D_1CE4_E5B9;
const MIX_B: u64 = 0x94D0_49BB_1331_11EB;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        scramble(self.state)
    }

    /// Uniform in `0..bound`. Uses the remainder of a 64-bit draw; the bias
    /// is below `bound / 2^64`, immaterial for the bounds used here (at most
    /// a few million).
    pub fn next_below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next_u64() % bound
    }

    pub fn next_in_range(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        lo + self.next_below(hi - lo + 1)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.next_below(i as u64 + 1) as usize;
            xs.swap(i, j);
        }
    }
}

fn scramble(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(MIX_A);
    z = (z ^ (z >> 27)).wrapping_mul(MIX_B);
    z ^ (z >> 31)
}

/// Derives an independent stream from a master seed and a tag sequence
/// (family id, structural parameters, purpose). Each tag is absorbed through
/// one add-and-scramble round, so distinct tag tuples land in unrelated
/// regions of the state space.
pub fn derive_stream(seed: u64, tags: &[u64]) -> SplitMix64 {
    let mut state = seed;
    for &t in tags {
        state = scramble(state.wrapping_add(GOLDEN_GAMMA) ^ t);
    }
    SplitMix64::new(state)
}
