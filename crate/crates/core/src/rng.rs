//! Seedable randomness.
//!
//! Every random draw in the crate goes through [`RandomSource`]. Concrete
//! streams are ChaCha8 generators whose 256-bit seeds are derived from a
//! 64-bit master seed and a path of labels, so adding a new consumer never
//! reshuffles the streams of existing ones.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// A source of uniform draws.
pub trait RandomSource {
    /// Uniform draw in `[0, 1)`.
    fn uniform(&mut self) -> f64;

    /// Fair coin.
    fn bit(&mut self) -> bool {
        self.uniform() < 0.5
    }
}

impl<R: RandomSource + ?Sized> RandomSource for &mut R {
    fn uniform(&mut self) -> f64 {
        (**self).uniform()
    }

    fn bit(&mut self) -> bool {
        (**self).bit()
    }
}

/// A reproducible stream backed by ChaCha8.
#[derive(Debug, Clone)]
pub struct Stream(ChaCha8Rng);

impl Stream {
    pub fn from_seed(seed: [u8; 32]) -> Self {
        Self(ChaCha8Rng::from_seed(seed))
    }

    /// Convenience constructor for tests and one-off use.
    pub fn from_u64(seed: u64) -> Self {
        Seeder::new(seed).stream(0)
    }
}

impl RandomSource for Stream {
    fn uniform(&mut self) -> f64 {
        self.0.random::<f64>()
    }

    fn bit(&mut self) -> bool {
        self.0.random::<bool>()
    }
}

/// Node in a labeled seed-derivation tree.
///
/// `Seeder::new(42).child("hyperdense").stream(3)` always yields the same
/// stream, independent of which other children or shards were requested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seeder {
    key: [u8; 32],
}

impl Seeder {
    pub fn new(master: u64) -> Self {
        let mut h = Sha256::new();
        h.update(b"hdsim/master");
        h.update(master.to_le_bytes());
        Self {
            key: h.finalize().into(),
        }
    }

    /// Derives an independent sub-tree for `label`.
    pub fn child(&self, label: &str) -> Self {
        let mut h = Sha256::new();
        h.update(self.key);
        h.update(b"/child/");
        h.update((label.len() as u64).to_le_bytes());
        h.update(label.as_bytes());
        Self {
            key: h.finalize().into(),
        }
    }

    /// Stream for shard `index` of this node.
    pub fn stream(&self, index: u64) -> Stream {
        let mut h = Sha256::new();
        h.update(self.key);
        h.update(b"/shard/");
        h.update(index.to_le_bytes());
        Stream::from_seed(h.finalize().into())
    }
}
