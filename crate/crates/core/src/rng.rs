//! Seeded pseudorandomness for sampled validation.
//!
//! Everything sampled in this crate flows from a single `u64` seed through
//! this generator, so runs are reproducible bit-for-bit across platforms.

/// SplitMix64. Small state, full 64-bit period, stable output for a fixed
/// seed on every platform (no floats, no platform-dependent widths).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound`. `bound` must be nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        // Modulo bias is irrelevant for the small bounds used here, but
        // rejection sampling keeps the distribution exact anyway.
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        lo + self.below(hi - lo + 1)
    }

    /// Derive an independent generator for subtask `label`; keeps trial
    /// streams stable when a report fans out.
    pub fn fork(&self, label: u64) -> SplitMix64 {
        let mut g = SplitMix64::new(self.state ^ label.wrapping_mul(0xa076_1d64_78bd_642f));
        g.next_u64();
        g
    }
}
