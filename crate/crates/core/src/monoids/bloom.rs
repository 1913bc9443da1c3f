use thiserror::Error;

use crate::monoid::Monoid;

/// Width and hash count shared by every filter that may be merged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BloomConfig {
    bits: usize,
    hashes: u32,
}

impl BloomConfig {
    pub const DEFAULT_BITS: usize = 8192;
    pub const DEFAULT_HASHES: u32 = 3;

    /// `bits` is rounded up to a multiple of 64; both arguments must be
    /// nonzero.
    pub fn new(bits: usize, hashes: u32) -> Self {
        assert!(bits > 0, "bloom filter needs at least one bit");
        assert!(hashes > 0, "bloom filter needs at least one hash");
        Self {
            bits: bits.div_ceil(64) * 64,
            hashes,
        }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn hashes(&self) -> u32 {
        self.hashes
    }

    fn words(&self) -> usize {
        self.bits / 64
    }

    /// Bit positions for `key`: double hashing from one 64-bit mix.
    pub fn positions(&self, key: u64) -> impl Iterator<Item = usize> {
        let h = mix64(key);
        let h1 = h & 0xffff_ffff;
        let h2 = (h >> 32) | 1;
        let bits = self.bits as u64;
        (0..self.hashes as u64).map(move |i| (h1.wrapping_add(i.wrapping_mul(h2)) % bits) as usize)
    }
}

impl Default for BloomConfig {
    fn default() -> Self {
        Self::new(Self::DEFAULT_BITS, Self::DEFAULT_HASHES)
    }
}

// splitmix64 finalizer
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("cannot merge bloom filters with different configurations ({left:?} vs {right:?})")]
pub struct ConfigMismatch {
    pub left: BloomConfig,
    pub right: BloomConfig,
}

/// A fixed-width bit vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BloomAgg {
    config: BloomConfig,
    words: Box<[u64]>,
}

impl BloomAgg {
    pub fn empty(config: BloomConfig) -> Self {
        Self {
            config,
            words: vec![0; config.words()].into_boxed_slice(),
        }
    }

    pub fn config(&self) -> BloomConfig {
        self.config
    }

    pub fn insert(&mut self, key: u64) {
        for bit in self.config.positions(key) {
            self.words[bit / 64] |= 1 << (bit % 64);
        }
    }

    pub fn is_set(&self, bit: usize) -> bool {
        self.words[bit / 64] & (1 << (bit % 64)) != 0
    }

    pub fn might_contain(&self, key: u64) -> bool {
        self.config.positions(key).all(|bit| self.is_set(bit))
    }

    pub fn popcount(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// Bitwise OR of two filters with the same configuration.
    pub fn try_merge(&self, other: &BloomAgg) -> Result<BloomAgg, ConfigMismatch> {
        if self.config != other.config {
            return Err(ConfigMismatch {
                left: self.config,
                right: other.config,
            });
        }
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a | b)
            .collect();
        Ok(BloomAgg {
            config: self.config,
            words,
        })
    }
}

/// Approximate set membership over `u64` keys. Combining is the
/// expensive end of the cost spectrum: one pass over `bits / 64` words.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Bloom {
    config: BloomConfig,
}

impl Bloom {
    pub fn new(config: BloomConfig) -> Self {
        Self { config }
    }

    pub fn config(&self) -> BloomConfig {
        self.config
    }
}

impl Monoid for Bloom {
    type In = u64;
    type Agg = BloomAgg;
    type Out = BloomAgg;

    fn identity(&self) -> BloomAgg {
        BloomAgg::empty(self.config)
    }

    /// Panics if the operands were built with different configurations;
    /// use [`BloomAgg::try_merge`] to get the error instead.
    fn combine(&self, older: &BloomAgg, newer: &BloomAgg) -> BloomAgg {
        match older.try_merge(newer) {
            Ok(merged) => merged,
            Err(e) => panic!("{e}"),
        }
    }

    fn lift(&self, input: u64) -> BloomAgg {
        let mut agg = BloomAgg::empty(self.config);
        agg.insert(input);
        agg
    }

    fn lower(&self, agg: &BloomAgg) -> BloomAgg {
        agg.clone()
    }
}
