//! Monoalphabetic substitution cipher. The key is a permutation of alphabet
//! indices and doubles as the search-space element of the heuristic attacks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::text::{Alphabet, NormalizedText};

/// A permutation of `[0, size)`: position `i` holds the image of symbol `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubstitutionKey {
    mapping: Vec<u8>,
}

impl SubstitutionKey {
    pub fn identity(size: usize) -> Self {
        let key = Self {
            mapping: (0..size).map(|i| i as u8).collect(),
        };
        debug_assert!(key.is_permutation());
        key
    }

    /// A rotation by `offset`: the substitution key equivalent to a shift.
    pub fn rotation(size: usize, offset: u8) -> Self {
        let key = Self {
            mapping: (0..size)
                .map(|i| ((i + offset as usize) % size) as u8)
                .collect(),
        };
        debug_assert!(key.is_permutation());
        key
    }

    /// Validates that `mapping` is a permutation of `[0, len)`.
    pub fn from_mapping(mapping: Vec<u8>) -> Result<Self> {
        let size = mapping.len();
        let mut seen = vec![false; size];
        for &m in &mapping {
            if m as usize >= size || seen[m as usize] {
                return Err(Error::NonBijectiveKey(format!(
                    "image {m} is out of range or repeated"
                )));
            }
            seen[m as usize] = true;
        }
        Ok(Self { mapping })
    }

    /// Builds a key from a key string: the symbol at alphabet position `i`
    /// maps to `key_string[i]`. The string must be a case-insensitive
    /// permutation of the whole alphabet.
    pub fn from_key_string(key_string: &str, alphabet: &Alphabet) -> Result<Self> {
        let chars: Vec<char> = key_string.chars().collect();
        if chars.len() != alphabet.len() {
            return Err(Error::KeyFormat(format!(
                "key string holds {} characters, alphabet needs {}",
                chars.len(),
                alphabet.len()
            )));
        }
        let mut mapping = Vec::with_capacity(chars.len());
        for c in chars {
            match alphabet.index_of(c) {
                Some(i) => mapping.push(i),
                None => {
                    return Err(Error::KeyFormat(format!(
                        "key character {c:?} is not in the alphabet"
                    )))
                }
            }
        }
        Self::from_mapping(mapping)
    }

    /// A uniformly random permutation drawn from `rng`.
    pub fn random<R: Rng + ?Sized>(size: usize, rng: &mut R) -> Self {
        let mut mapping: Vec<u8> = (0..size).map(|i| i as u8).collect();
        mapping.shuffle(rng);
        let key = Self { mapping };
        debug_assert!(key.is_permutation());
        key
    }

    pub fn size(&self) -> usize {
        self.mapping.len()
    }

    pub fn mapping(&self) -> &[u8] {
        &self.mapping
    }

    pub fn inverse(&self) -> SubstitutionKey {
        let mut inv = vec![0u8; self.mapping.len()];
        for (i, &m) in self.mapping.iter().enumerate() {
            inv[m as usize] = i as u8;
        }
        Self { mapping: inv }
    }

    /// Swaps the images of two symbols in place. The result is trivially
    /// still a permutation; this is the neighborhood move of every attack.
    pub fn swap(&mut self, i: usize, j: usize) {
        self.mapping.swap(i, j);
    }

    pub fn swapped(&self, i: usize, j: usize) -> SubstitutionKey {
        let mut k = self.clone();
        k.swap(i, j);
        k
    }

    /// Renders the key back to a key string over the given alphabet.
    pub fn key_string(&self, alphabet: &Alphabet) -> String {
        self.mapping.iter().map(|&m| alphabet.symbol(m)).collect()
    }

    pub fn is_permutation(&self) -> bool {
        let size = self.mapping.len();
        let mut seen = vec![false; size];
        self.mapping.iter().all(|&m| {
            let ok = (m as usize) < size && !seen[m as usize];
            if ok {
                seen[m as usize] = true;
            }
            ok
        })
    }
}

pub fn substitution_encrypt(plain: &NormalizedText, key: &SubstitutionKey) -> NormalizedText {
    debug_assert_eq!(plain.alphabet().len(), key.size());
    let indices = plain
        .indices()
        .iter()
        .map(|&i| key.mapping[i as usize])
        .collect();
    NormalizedText::from_indices(indices, plain.alphabet().clone())
        .expect("permutation images stay in range")
}

pub fn substitution_decrypt(cipher: &NormalizedText, key: &SubstitutionKey) -> NormalizedText {
    substitution_encrypt(cipher, &key.inverse())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ciphers::{shift_encrypt, ShiftKey};
    use crate::text::{normalize, NormalizePolicy};

    fn t(s: &str) -> NormalizedText {
        normalize(s, &Alphabet::english(), NormalizePolicy::Strip).unwrap()
    }

    #[test]
    fn identity_key_string_is_identity() {
        let key =
            SubstitutionKey::from_key_string("ABCDEFGHIJKLMNOPQRSTUVWXYZ", &Alphabet::english())
                .unwrap();
        assert_eq!(key, SubstitutionKey::identity(26));
        let text = t("ANYTHINGATALL");
        assert_eq!(substitution_encrypt(&text, &key), text);
    }

    #[test]
    fn rotated_key_string_matches_shift_by_one() {
        let a = Alphabet::english();
        let key = SubstitutionKey::from_key_string("BCDEFGHIJKLMNOPQRSTUVWXYZA", &a).unwrap();
        assert_eq!(key, SubstitutionKey::rotation(26, 1));
        assert_eq!(substitution_encrypt(&t("ABC"), &key).to_string(), "BCD");
        assert_eq!(
            substitution_encrypt(&t("XYZZY"), &key),
            shift_encrypt(&t("XYZZY"), &ShiftKey::new(1, &a))
        );
    }

    #[test]
    fn repeated_characters_are_rejected() {
        let err =
            SubstitutionKey::from_key_string(&"A".repeat(26), &Alphabet::english()).unwrap_err();
        assert!(
            matches!(err, crate::error::Error::NonBijectiveKey(_)),
            "{err}"
        );
    }

    #[test]
    fn wrong_length_is_a_format_error() {
        let err = SubstitutionKey::from_key_string("ABC", &Alphabet::english()).unwrap_err();
        assert!(matches!(err, crate::error::Error::KeyFormat(_)), "{err}");
    }

    #[test]
    fn transposition_swaps_two_letters() {
        let mut key = SubstitutionKey::identity(26);
        key.swap(0, 1); // A<->B, others fixed
        assert_eq!(substitution_encrypt(&t("AB"), &key).to_string(), "BA");
        assert_eq!(substitution_decrypt(&t("BA"), &key).to_string(), "AB");
    }

    #[test]
    fn decrypt_inverts_encrypt() {
        let key =
            SubstitutionKey::from_key_string("QWERTYUIOPASDFGHJKLZXCVBNM", &Alphabet::english())
                .unwrap();
        let text = t("SUBSTITUTIONROUNDTRIP");
        assert_eq!(
            substitution_decrypt(&substitution_encrypt(&text, &key), &key),
            text
        );
    }

    #[test]
    fn key_string_round_trips() {
        let a = Alphabet::english();
        let s = "QWERTYUIOPASDFGHJKLZXCVBNM";
        let key = SubstitutionKey::from_key_string(s, &a).unwrap();
        assert_eq!(key.key_string(&a), s);
    }
}
