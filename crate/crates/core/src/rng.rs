//! Counter-based, splittable random streams.
//!
//! A stream is identified by `(master_seed, stream_id)` and is a ChaCha8
//! keystream: the seed fixes the key, the stream id selects the nonce, and
//! draws advance the block counter. Two specs with the same pair produce the
//! same bits on every platform, and distinct stream ids never overlap.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub type StreamRng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSpec {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl RngSpec {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        Self {
            master_seed,
            stream_id,
        }
    }

    /// Stream used by replica `k` of an experiment rooted at `self`.
    pub fn replica(&self, k: u64) -> Self {
        Self {
            master_seed: self.master_seed,
            stream_id: self.stream_id.wrapping_add(k),
        }
    }

    /// A spec under a different master seed derived from this one, for
    /// drawing a second independent family of replicas.
    pub fn fork(&self, salt: u64) -> Self {
        Self {
            master_seed: splitmix(self.master_seed ^ splitmix(salt)),
            stream_id: self.stream_id,
        }
    }

    pub fn rng(&self) -> StreamRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
