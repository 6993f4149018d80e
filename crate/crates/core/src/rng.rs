//! Small deterministic pseudo-random generator.
//!
//! Randomized checks (congruence transforms, basis mixes, witness sampling)
//! must be reproducible bit-for-bit from a seed, so we use a self-contained
//! xorshift generator instead of an external RNG whose stream might change
//! between versions.

use crate::rat::Rat;

#[derive(Clone, Debug)]
pub struct XorShift64 {
    state: u64,
}

impl XorShift64 {
    pub fn new(seed: u64) -> Self {
        // One splitmix64 round spreads low-entropy seeds and avoids the
        // all-zero fixed point.
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        XorShift64 { state: z | 1 }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.state = x;
        x
    }

    /// Uniform-ish integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    pub fn index(&mut self, len: usize) -> usize {
        assert!(len > 0);
        (self.next_u64() % len as u64) as usize
    }

    /// Small integer rational in `-bound..=bound`.
    pub fn small_int_rat(&mut self, bound: i64) -> Rat {
        Rat::from_int(self.int_in(-bound, bound))
    }

    /// Small non-integer-friendly rational p/q with p in `-bound..=bound`,
    /// q in `1..=den_bound`.
    pub fn small_rat(&mut self, bound: i64, den_bound: i64) -> Rat {
        Rat::new(self.int_in(-bound, bound), self.int_in(1, den_bound))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_stream() {
        let mut a = XorShift64::new(7);
        let mut b = XorShift64::new(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn ranges_respected() {
        let mut rng = XorShift64::new(0);
        for _ in 0..200 {
            let v = rng.int_in(-3, 3);
            assert!((-3..=3).contains(&v));
        }
    }
}
