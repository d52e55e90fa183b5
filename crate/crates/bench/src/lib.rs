//! Shared fixtures for the benchmarks and the recovery-table harness.

use cipherlab::langstats::NgramStatistics;
use cipherlab::{normalize, Alphabet, NormalizePolicy, NormalizedText};

pub const CORPUS_PATH: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/corpus.txt");
pub const HELD_OUT_PATH: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/plain_2000.txt");

pub fn corpus() -> String {
    std::fs::read_to_string(CORPUS_PATH).expect("training corpus fixture")
}

pub fn held_out() -> String {
    std::fs::read_to_string(HELD_OUT_PATH).expect("held-out plaintext fixture")
}

pub fn reference_statistics() -> NgramStatistics {
    NgramStatistics::build(&corpus(), &Alphabet::english())
}

/// First `len` letters of the held-out plaintext.
pub fn held_out_slice(len: usize) -> NormalizedText {
    let alphabet = Alphabet::english();
    let text = normalize(&held_out(), &alphabet, NormalizePolicy::Strip).unwrap();
    assert!(text.len() >= len, "held-out fixture shorter than {len}");
    NormalizedText::from_indices(text.indices()[..len].to_vec(), alphabet).unwrap()
}
