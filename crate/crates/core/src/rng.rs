//! Deterministic random-stream derivation.
//!
//! Every stochastic component of the toolkit draws from a [`ChaCha8Rng`]
//! seeded through the SplitMix64 finalizer, so results are bit-identical
//! across runs, platforms, and worker counts. Monte Carlo trials get private
//! sub-streams keyed by `(master seed, SNR index, trial index)` and never by
//! decoder, which keeps the channel realization paired across decoders.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer; a cheap, well-mixed 64-bit hash.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Mix a seed with one stream label.
pub fn derive_seed(seed: u64, label: u64) -> u64 {
    splitmix64(seed ^ splitmix64(label))
}

/// Seed for one Monte Carlo trial: independent of decoder by construction.
pub fn trial_seed(master_seed: u64, snr_index: u64, trial_index: u64) -> u64 {
    splitmix64(derive_seed(derive_seed(master_seed, snr_index), trial_index))
}

/// RNG for one Monte Carlo trial.
pub fn trial_rng(master_seed: u64, snr_index: u64, trial_index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(master_seed, snr_index, trial_index))
}

/// RNG for a labelled sub-stream (e.g. construction attempt).
pub fn stream_rng(seed: u64, label: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, label))
}
