//! Seed derivation for reproducible, parallel-safe random streams.
//!
//! Every random quantity in the workspace is drawn from a [`ChaCha8Rng`]
//! seeded by a sub-seed derived from a root seed plus a domain tag and an
//! index. Sub-streams are independent of evaluation order, so parallel and
//! serial runs produce identical results.

use rand_chacha::rand_core::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

/// Domain tags for sub-seed derivation. Keeping them in one place avoids
/// accidental stream collisions between unrelated consumers.
pub mod domain {
    pub const SYMBOL: u64 = 0x01;
    pub const FOLD: u64 = 0x02;
    pub const SAMPLE: u64 = 0x03;
    pub const SHUFFLE: u64 = 0x04;
    pub const SHOTS: u64 = 0x05;
    pub const NOISE: u64 = 0x06;
    pub const LCU: u64 = 0x07;
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive a sub-seed from a root seed, a domain tag and an index.
pub fn subseed(root: u64, domain: u64, index: u64) -> u64 {
    let mut s = splitmix64(root);
    s = splitmix64(s ^ domain.wrapping_mul(0xa076_1d64_78bd_642f));
    splitmix64(s ^ index.wrapping_mul(0xe703_7ed1_a0b4_28db))
}

/// Portable seeded generator for the derived stream `(root, domain, index)`.
pub fn stream(root: u64, domain: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(subseed(root, domain, index))
}

/// Generator seeded directly from a root seed.
pub fn root(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subseed_streams_are_distinct() {
        let a = subseed(42, domain::SYMBOL, 0);
        let b = subseed(42, domain::SYMBOL, 1);
        let c = subseed(42, domain::FOLD, 0);
        let d = subseed(43, domain::SYMBOL, 0);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn subseed_is_stable() {
        // Frozen: a change here breaks reproducibility of every seeded artifact.
        assert_eq!(subseed(0, 0, 0), subseed(0, 0, 0));
        assert_eq!(subseed(42, domain::SYMBOL, 3), subseed(42, domain::SYMBOL, 3));
    }
}
