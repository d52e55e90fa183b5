//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Strict normalization met a character outside the alphabet.
    #[error("character {ch:?} at offset {offset} is not in the alphabet")]
    NotInAlphabet { ch: char, offset: usize },

    /// A key string had the wrong shape (length, digits, hex, ...).
    #[error("bad key format: {0}")]
    KeyFormat(String),

    /// A substitution key was not a permutation of the alphabet.
    #[error("key is not a permutation: {0}")]
    NonBijectiveKey(String),

    /// Two values built over different alphabets were combined.
    #[error("alphabet mismatch: expected {expected:?}, got {got:?}")]
    AlphabetMismatch { expected: String, got: String },

    /// An attack or parser was given a model with no training data.
    #[error("model is untrained: {0}")]
    UntrainedModel(String),

    /// Attack configuration violated an invariant.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// An operation that requires text received an empty stream.
    #[error("input normalizes to an empty text: {0}")]
    EmptyText(String),

    /// A model file does not exist at the given path.
    #[error("model file not found: {path}")]
    ModelNotFound { path: String },

    /// A persisted file does not start with the container magic.
    #[error("bad magic bytes: not a model file")]
    BadMagic,

    /// A persisted file has an unsupported format version.
    #[error("unsupported format version {found} (expected {expected})")]
    VersionMismatch { found: u16, expected: u16 },

    /// A persisted file holds a different model type than requested.
    #[error("wrong model type tag {found} (expected {expected})")]
    WrongModelType { found: u8, expected: u8 },

    /// A persisted file ended before its declared contents.
    #[error("model file is truncated")]
    Truncated,

    /// A persisted file's checksum does not match its contents.
    #[error("checksum mismatch: model file is corrupted")]
    ChecksumMismatch,

    /// Malformed SPN ciphertext (block length, header, bit count).
    #[error("malformed SPN data: {0}")]
    SpnFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
