//! Fixed-seed inputs shared by the benchmarks.

use qmoment_core::measures::synthesize_sequence;
use qmoment_core::random;
use qmoment_core::{DiscreteQPositiveMeasure, HermitianSequence, QMatrix};

pub const SEED: u64 = 0x5eed;

/// Random Hermitian `n×n` quaternionic matrix.
pub fn hermitian(n: usize) -> QMatrix {
    random::hermitian(&mut random::rng(SEED), n)
}

/// Q-positive measure with `pairs` support pairs and block size `s`.
pub fn measure(s: usize, pairs: usize) -> DiscreteQPositiveMeasure {
    random::q_positive_measure(&mut random::rng(SEED), s, pairs)
}

/// Positive definite seed `r(0..=support)` synthesized from [`measure`].
pub fn pd_sequence(s: usize, support: usize) -> HermitianSequence {
    synthesize_sequence(&measure(s, 3), support).expect("generated measure is q-positive")
}
