//! Deterministic, platform-independent randomness.
//!
//! Every probabilistic operation in the crate takes an [`RngSpec`] rather
//! than a live generator. A spec names a ChaCha8 stream by
//! `(master_seed, stream_id)`; instantiating it always yields the identical
//! sequence regardless of platform, thread count, or call site. Sub-streams
//! are derived by offsetting the stream id (one per sample index, per
//! iteration, ...), which is what lets parallel scans draw the exact same
//! subsets a sequential scan would.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A reproducible randomness source: a master seed plus a stream counter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngSpec {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl RngSpec {
    pub fn new(master_seed: u64) -> Self {
        RngSpec {
            master_seed,
            stream_id: 0,
        }
    }

    pub fn with_stream(master_seed: u64, stream_id: u64) -> Self {
        RngSpec {
            master_seed,
            stream_id,
        }
    }

    /// The spec for sub-stream `offset` of this stream (wrapping).
    pub fn substream(&self, offset: u64) -> Self {
        RngSpec {
            master_seed: self.master_seed,
            stream_id: self.stream_id.wrapping_add(offset),
        }
    }

    /// Instantiates the generator this spec names.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }
}
