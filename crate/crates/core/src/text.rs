//! Alphabet definition and index-encoded text.
//!
//! Every cipher, statistic and attack in this crate operates on
//! [`NormalizedText`]: a sequence of indices into an [`Alphabet`]. The
//! default alphabet is the 26 uppercase Latin letters; other alphabets of
//! up to 256 distinct symbols are supported structurally.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug)]
struct AlphabetInner {
    symbols: Vec<char>,
    index: HashMap<char, u8>,
}

/// An ordered set of distinct symbols. Cheap to clone and safe to share.
#[derive(Clone, Debug)]
pub struct Alphabet {
    inner: Arc<AlphabetInner>,
}

impl Alphabet {
    /// Builds an alphabet from distinct symbols. At most 256 symbols are
    /// supported so that text can be index-encoded in single bytes.
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::KeyFormat("alphabet must not be empty".into()));
        }
        if symbols.len() > 256 {
            return Err(Error::KeyFormat(format!(
                "alphabet holds {} symbols, at most 256 are supported",
                symbols.len()
            )));
        }
        let mut index = HashMap::new();
        for (i, &c) in symbols.iter().enumerate() {
            if index.insert(c, i as u8).is_some() {
                return Err(Error::KeyFormat(format!(
                    "alphabet symbol {c:?} is repeated"
                )));
            }
        }
        // Case-insensitive lookup: fold each symbol's case variants onto its
        // index unless the variant is itself a distinct symbol.
        for (i, &c) in symbols.iter().enumerate() {
            for v in c.to_lowercase().chain(c.to_uppercase()) {
                index.entry(v).or_insert(i as u8);
            }
        }
        Ok(Self {
            inner: Arc::new(AlphabetInner { symbols, index }),
        })
    }

    /// The 26 uppercase Latin letters A..Z in order.
    pub fn english() -> Self {
        Self::new('A'..='Z').expect("A..Z is a valid alphabet")
    }

    pub fn len(&self) -> usize {
        self.inner.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty symbol sets
    }

    pub fn symbols(&self) -> &[char] {
        &self.inner.symbols
    }

    /// Symbol at a given index. Panics if the index is out of range.
    pub fn symbol(&self, index: u8) -> char {
        self.inner.symbols[index as usize]
    }

    /// Case-insensitive index lookup.
    pub fn index_of(&self, ch: char) -> Option<u8> {
        self.inner.index.get(&ch).copied()
    }

    /// The symbols as a single string, used by persisted model headers.
    pub fn as_string(&self) -> String {
        self.inner.symbols.iter().collect()
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.symbols == other.inner.symbols
    }
}

impl Eq for Alphabet {}

impl Default for Alphabet {
    fn default() -> Self {
        Self::english()
    }
}

/// How [`normalize`] treats characters outside the alphabet.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NormalizePolicy {
    /// Drop out-of-alphabet characters (the default: ciphertext streams
    /// carry no spaces or punctuation).
    #[default]
    Strip,
    /// Fail on the first out-of-alphabet character.
    Strict,
}

/// Text encoded as alphabet indices. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedText {
    indices: Vec<u8>,
    alphabet: Alphabet,
}

impl NormalizedText {
    /// Wraps pre-computed indices, validating them against the alphabet.
    pub fn from_indices(indices: Vec<u8>, alphabet: Alphabet) -> Result<Self> {
        let size = alphabet.len();
        if let Some(pos) = indices.iter().position(|&i| i as usize >= size) {
            return Err(Error::KeyFormat(format!(
                "index {} at position {pos} is outside the alphabet",
                indices[pos]
            )));
        }
        Ok(Self { indices, alphabet })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Self {
            indices: Vec::new(),
            alphabet,
        }
    }

    pub fn indices(&self) -> &[u8] {
        &self.indices
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

impl fmt::Display for NormalizedText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &i in &self.indices {
            write!(f, "{}", self.alphabet.symbol(i))?;
        }
        Ok(())
    }
}

/// Maps a raw character stream onto alphabet indices.
///
/// Lookup is case-insensitive; the canonical form is whatever the alphabet
/// stores (uppercase for the default alphabet). Under [`NormalizePolicy::Strip`]
/// out-of-alphabet characters are dropped; under [`NormalizePolicy::Strict`]
/// the first one is an error naming the character and its offset.
pub fn normalize(
    raw: &str,
    alphabet: &Alphabet,
    policy: NormalizePolicy,
) -> Result<NormalizedText> {
    let mut indices = Vec::with_capacity(raw.len());
    for (offset, ch) in raw.chars().enumerate() {
        match alphabet.index_of(ch) {
            Some(i) => indices.push(i),
            None => match policy {
                NormalizePolicy::Strip => {}
                NormalizePolicy::Strict => return Err(Error::NotInAlphabet { ch, offset }),
            },
        }
    }
    Ok(NormalizedText {
        indices,
        alphabet: alphabet.clone(),
    })
}

/// Renders indices back to their canonical symbols.
pub fn denormalize(text: &NormalizedText) -> String {
    text.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abc_maps_to_identity_positions() {
        let a = Alphabet::english();
        let t = normalize("ABC", &a, NormalizePolicy::Strip).unwrap();
        assert_eq!(t.indices(), &[0, 1, 2]);
    }

    #[test]
    fn strip_folds_case_and_drops_non_letters() {
        let a = Alphabet::english();
        let t = normalize("a b,c!", &a, NormalizePolicy::Strip).unwrap();
        assert_eq!(t.indices(), &[0, 1, 2]);
    }

    #[test]
    fn strict_reports_character_and_offset() {
        let a = Alphabet::english();
        let err = normalize("a1b", &a, NormalizePolicy::Strict).unwrap_err();
        match err {
            Error::NotInAlphabet { ch, offset } => {
                assert_eq!(ch, '1');
                assert_eq!(offset, 1);
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn denormalize_round_trips() {
        let a = Alphabet::english();
        assert_eq!(
            denormalize(&NormalizedText::from_indices(vec![0, 1, 2], a.clone()).unwrap()),
            "ABC"
        );
        assert_eq!(denormalize(&NormalizedText::empty(a.clone())), "");
        assert_eq!(
            denormalize(&NormalizedText::from_indices(vec![25], a).unwrap()),
            "Z"
        );
    }

    #[test]
    fn from_indices_rejects_out_of_range() {
        let a = Alphabet::english();
        assert!(NormalizedText::from_indices(vec![0, 26], a).is_err());
    }

    #[test]
    fn alphabet_rejects_duplicates_and_empty() {
        assert!(Alphabet::new("ABA".chars()).is_err());
        assert!(Alphabet::new(std::iter::empty()).is_err());
    }

    #[test]
    fn newline_is_stripped_by_default() {
        let a = Alphabet::english();
        let t = normalize("AB\nCD\n", &a, NormalizePolicy::Strip).unwrap();
        assert_eq!(t.to_string(), "ABCD");
    }

    #[test]
    fn shared_types_are_send_and_sync() {
        fn check<T: Send + Sync>() {}
        check::<Alphabet>();
        check::<NormalizedText>();
        check::<crate::langstats::NgramStatistics>();
        check::<crate::segmentation::Dictionary>();
        check::<crate::segmentation::SpaceTrigramModel>();
    }
}
