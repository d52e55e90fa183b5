//! Dictionary-based word-boundary detection: greedy longest match with an
//! unknown-run recovery rule.
//!
//! The greedy rule inherits the classic composite-word failure: a stream
//! containing `THEREFORETERNITY` segments as `THEREFORE` + an unknown run
//! `TERNITY`, because the longest match wins even when a shorter word would
//! let the remainder parse. That behavior is intentional and pinned by a
//! regression test.

use std::collections::HashSet;
use std::path::Path;

use crate::error::Result;
use crate::storage::{self, tag, BodyReader};
use crate::text::{normalize, Alphabet, NormalizePolicy, NormalizedText};

use super::Segmentation;

/// A set of normalized words supporting longest-prefix lookups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dictionary {
    alphabet: Alphabet,
    words: HashSet<Vec<u8>>,
    max_word_length: usize,
}

impl Dictionary {
    pub fn new(alphabet: Alphabet) -> Self {
        Self {
            alphabet,
            words: HashSet::new(),
            max_word_length: 0,
        }
    }

    /// Adds every distinct normalized word of a whitespace-delimited corpus.
    /// Training twice on the same corpus changes nothing.
    pub fn train(&mut self, corpus: &str) {
        for token in corpus.split_whitespace() {
            let word = normalize(token, &self.alphabet, NormalizePolicy::Strip)
                .expect("strip normalization never fails");
            if word.is_empty() {
                continue;
            }
            self.max_word_length = self.max_word_length.max(word.len());
            self.words.insert(word.indices().to_vec());
        }
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    pub fn max_word_length(&self) -> usize {
        self.max_word_length
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn contains(&self, word: &NormalizedText) -> bool {
        self.words.contains(word.indices())
    }

    /// Left-to-right greedy parse: match the longest dictionary word at the
    /// current position; on failure advance one character, accumulating an
    /// unknown run that closes (as if it were a word) at the next position
    /// where a dictionary match resumes. Matching is retried at every
    /// position inside a run, so recovery happens as early as possible.
    pub fn parse(&self, stream: &NormalizedText) -> Segmentation {
        debug_assert_eq!(stream.alphabet(), &self.alphabet);
        let idx = stream.indices();
        let n = idx.len();
        let mut boundaries = Vec::new();
        let mut pos = 0usize;
        let mut in_run = false;
        while pos < n {
            let longest = (1..=self.max_word_length.min(n - pos))
                .rev()
                .find(|&len| self.words.contains(&idx[pos..pos + len]));
            match longest {
                Some(len) => {
                    if in_run {
                        boundaries.push(pos); // close the unknown run
                        in_run = false;
                    }
                    pos += len;
                    if pos < n {
                        boundaries.push(pos);
                    }
                }
                None => {
                    in_run = true;
                    pos += 1;
                }
            }
        }
        Segmentation::new(boundaries)
    }

    /// Persists as a sorted word list grouped by length (the group table is
    /// the length index).
    pub fn dump(&self, path: &Path) -> Result<()> {
        let mut words: Vec<&Vec<u8>> = self.words.iter().collect();
        words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

        let mut body = Vec::new();
        storage::put_string(&mut body, &self.alphabet.as_string());
        storage::put_u32(&mut body, self.words.len() as u32);
        let mut i = 0;
        while i < words.len() {
            let len = words[i].len();
            let group_end = words[i..].iter().take_while(|w| w.len() == len).count() + i;
            storage::put_u16(&mut body, len as u16);
            storage::put_u32(&mut body, (group_end - i) as u32);
            for w in &words[i..group_end] {
                body.extend_from_slice(w);
            }
            i = group_end;
        }
        storage::save(path, tag::DICTIONARY, &body)
    }

    pub fn restore(path: &Path) -> Result<Self> {
        let body = storage::load(path, tag::DICTIONARY)?;
        let mut r = BodyReader::new(&body);
        let alphabet = Alphabet::new(r.string()?.chars())?;
        let total = r.u32()? as usize;
        let mut words = HashSet::with_capacity(total);
        let mut max_word_length = 0;
        while words.len() < total {
            let len = r.u16()? as usize;
            let count = r.u32()? as usize;
            for _ in 0..count {
                words.insert(r.bytes(len)?.to_vec());
            }
            max_word_length = max_word_length.max(len);
        }
        r.expect_end()?;
        Ok(Self {
            alphabet,
            words,
            max_word_length,
        })
    }
}
