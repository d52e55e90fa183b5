//! Word-boundary detection: restoring spaces in a deciphered character
//! stream, either by greedy longest-match against a trained dictionary or
//! by a character trigram model of space contexts.

mod dictionary;
mod trigram;

pub use dictionary::Dictionary;
pub use trigram::SpaceTrigramModel;

use crate::text::NormalizedText;

/// Positions in the input stream where a space is inserted; strictly
/// increasing and strictly inside `(0, len)`. Segmentation never alters
/// characters, only adds boundaries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Segmentation {
    boundaries: Vec<usize>,
}

impl Segmentation {
    pub(crate) fn new(boundaries: Vec<usize>) -> Self {
        debug_assert!(boundaries.windows(2).all(|w| w[0] < w[1]));
        Self { boundaries }
    }

    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    pub fn len(&self) -> usize {
        self.boundaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundaries.is_empty()
    }

    /// Renders the stream with spaces inserted at the boundaries.
    pub fn apply(&self, text: &NormalizedText) -> String {
        let mut out = String::with_capacity(text.len() + self.boundaries.len());
        let mut next = self.boundaries.iter().peekable();
        for (pos, &idx) in text.indices().iter().enumerate() {
            if next.peek() == Some(&&pos) {
                out.push(' ');
                next.next();
            }
            out.push(text.alphabet().symbol(idx));
        }
        out
    }
}
