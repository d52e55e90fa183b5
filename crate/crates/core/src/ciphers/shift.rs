//! Shift (Caesar) cipher over an arbitrary alphabet.

use crate::text::{Alphabet, NormalizedText};

/// A shift offset, stored reduced modulo the alphabet size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ShiftKey {
    offset: u8,
}

impl ShiftKey {
    /// Builds a key from any integer, reducing it into `[0, alphabet.len())`.
    /// Negative values shift backwards.
    pub fn new(raw: i64, alphabet: &Alphabet) -> Self {
        let size = alphabet.len() as i64;
        Self {
            offset: raw.rem_euclid(size) as u8,
        }
    }

    pub fn offset(&self) -> u8 {
        self.offset
    }
}

pub fn shift_encrypt(plain: &NormalizedText, key: &ShiftKey) -> NormalizedText {
    apply(plain, key.offset as usize)
}

pub fn shift_decrypt(cipher: &NormalizedText, key: &ShiftKey) -> NormalizedText {
    let size = cipher.alphabet().len();
    apply(cipher, size - key.offset as usize % size)
}

fn apply(text: &NormalizedText, offset: usize) -> NormalizedText {
    let size = text.alphabet().len();
    let indices = text
        .indices()
        .iter()
        .map(|&i| ((i as usize + offset) % size) as u8)
        .collect();
    NormalizedText::from_indices(indices, text.alphabet().clone())
        .expect("shifted indices stay in range")
}
