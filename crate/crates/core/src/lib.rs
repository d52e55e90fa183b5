//! A cryptanalysis toolkit for classical ciphers.
//!
//! The crate provides:
//!
//! * [`ciphers`]: shift, monoalphabetic substitution and a toy SPN for
//!   producing test ciphertexts;
//! * [`langstats`]: trained unigram/bigram/trigram language statistics,
//!   persisted as gzip-compressed `.gzbin` model files;
//! * [`attacks`]: four ciphertext-only attacks (statistical, simulated
//!   annealing, genetic, tabu search) minimizing an n-gram cost;
//! * [`segmentation`]: word-boundary restoration via a dictionary parser or
//!   a character trigram space model;
//! * [`matchedness`]: position-wise recovery quality reports.
//!
//! Everything operates on [`text::NormalizedText`], index-encoded text over
//! a configurable [`text::Alphabet`] (A–Z by default).

pub mod attacks;
pub mod ciphers;
pub mod error;
pub mod langstats;
pub mod matchedness;
pub mod segmentation;
pub mod storage;
pub mod text;

pub use error::{Error, Result};
pub use text::{denormalize, normalize, Alphabet, NormalizePolicy, NormalizedText};
