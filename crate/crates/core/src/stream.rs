//! Deterministic derivation of independent random substreams.
//!
//! Every consumer of randomness gets its stream from `(seed, index)` through
//! a fixed SplitMix64-style finalizer, so results are reproducible and
//! trials or blocks can be partitioned across workers without changing the
//! emitted bytes. The derivation rule is part of the output contract:
//!
//! ```text
//! key = mix64(mix64(seed) ^ mix64(index ^ 0x9E3779B97F4A7C15))
//! stream = ChaCha8(seed_from_u64(key))
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer; a bijection on u64.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Derive the substream for `(seed, index)`.
pub fn derive_substream(seed: u64, index: u64) -> ChaCha8Rng {
    let key = mix64(mix64(seed) ^ mix64(index ^ 0x9E3779B97F4A7C15));
    ChaCha8Rng::seed_from_u64(key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn first_words(rng: &mut ChaCha8Rng) -> [u64; 4] {
        [rng.gen(), rng.gen(), rng.gen(), rng.gen()]
    }

    #[test]
    fn deterministic() {
        let a = first_words(&mut derive_substream(42, 0));
        let b = first_words(&mut derive_substream(42, 0));
        assert_eq!(a, b);
    }

    #[test]
    fn distinct_across_index_and_seed() {
        let base = first_words(&mut derive_substream(42, 0));
        assert_ne!(base, first_words(&mut derive_substream(42, 1)));
        assert_ne!(base, first_words(&mut derive_substream(43, 0)));
    }
}
