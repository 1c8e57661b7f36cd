use rand::SeedableRng;
use rand_xoshiro::{SplitMix64, Xoshiro256PlusPlus};
use serde::{Deserialize, Serialize};

/// The generator every sampler draws from.
pub type StreamRng = Xoshiro256PlusPlus;

/// Identity of one random stream.
///
/// Two states with equal `seed` and `stream` produce the same sequence on
/// every platform and thread count. Monte Carlo replica `r` uses
/// [`RngState::replica`]`(r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngState {
    pub seed: u64,
    pub stream: u64,
}

impl RngState {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    /// The state of replica `r`: same seed, stream offset by `r`.
    pub fn replica(&self, r: u64) -> Self {
        Self {
            seed: self.seed,
            stream: self.stream.wrapping_add(r),
        }
    }

    /// Fresh xoshiro256++ generator whose 256-bit state is filled by
    /// splitmix64 from the seed mixed with the stream index.
    pub fn generator(&self) -> StreamRng {
        let key = mix64(self.stream.wrapping_add(0x9E37_79B9_7F4A_7C15));
        let mut sm = SplitMix64::seed_from_u64(self.seed ^ key);
        StreamRng::from_rng(&mut sm).expect("splitmix64 never fails")
    }
}

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
