//! Trained unigram/bigram/trigram counts over an alphabet.
//!
//! These tables are the reference distribution the attack fitness function
//! compares candidate decryptions against. They are mutable while training
//! and treated as read-only afterwards.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::storage::{self, tag, BodyReader};
use crate::text::{normalize, Alphabet, NormalizePolicy, NormalizedText};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NgramStatistics {
    alphabet: Alphabet,
    unigrams: Vec<u64>,
    bigrams: Vec<u64>,
    trigrams: Vec<u64>,
    totals: [u64; 3],
}

impl NgramStatistics {
    pub fn new(alphabet: Alphabet) -> Self {
        let s = alphabet.len();
        Self {
            alphabet,
            unigrams: vec![0; s],
            bigrams: vec![0; s * s],
            trigrams: vec![0; s * s * s],
            totals: [0; 3],
        }
    }

    /// Builds statistics from a raw corpus in one step. Non-alphabet
    /// characters are stripped before counting.
    pub fn build(corpus: &str, alphabet: &Alphabet) -> Self {
        let mut stats = Self::new(alphabet.clone());
        stats.add_corpus(corpus);
        stats
    }

    /// Counts every unigram, adjacent bigram and adjacent trigram of `text`.
    /// Each call is one document: no n-grams are counted across calls.
    ///
    /// Fails if the text was normalized against a different alphabet.
    pub fn add_text(&mut self, text: &NormalizedText) -> Result<()> {
        if text.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch {
                expected: self.alphabet.as_string(),
                got: text.alphabet().as_string(),
            });
        }
        let s = self.alphabet.len();
        let idx = text.indices();
        for &a in idx {
            self.unigrams[a as usize] += 1;
        }
        for w in idx.windows(2) {
            self.bigrams[w[0] as usize * s + w[1] as usize] += 1;
        }
        for w in idx.windows(3) {
            self.trigrams[(w[0] as usize * s + w[1] as usize) * s + w[2] as usize] += 1;
        }
        self.totals[0] += idx.len() as u64;
        self.totals[1] += idx.len().saturating_sub(1) as u64;
        self.totals[2] += idx.len().saturating_sub(2) as u64;
        Ok(())
    }

    /// Normalizes a raw corpus against this model's alphabet and adds it as
    /// one document.
    pub fn add_corpus(&mut self, corpus: &str) {
        let text = normalize(corpus, &self.alphabet, NormalizePolicy::Strip)
            .expect("strip normalization never fails");
        self.add_text(&text)
            .expect("alphabet matches by construction");
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// True when no symbol has been counted; attacks refuse such a model.
    pub fn is_empty(&self) -> bool {
        self.totals[0] == 0
    }

    pub fn unigram_count(&self, a: u8) -> u64 {
        self.unigrams[a as usize]
    }

    pub fn bigram_count(&self, a: u8, b: u8) -> u64 {
        self.bigrams[a as usize * self.alphabet.len() + b as usize]
    }

    pub fn trigram_count(&self, a: u8, b: u8, c: u8) -> u64 {
        let s = self.alphabet.len();
        self.trigrams[(a as usize * s + b as usize) * s + c as usize]
    }

    pub fn unigram_total(&self) -> u64 {
        self.totals[0]
    }

    pub fn bigram_total(&self) -> u64 {
        self.totals[1]
    }

    pub fn trigram_total(&self) -> u64 {
        self.totals[2]
    }

    pub fn unigram_freq(&self, a: u8) -> f64 {
        freq(self.unigram_count(a), self.totals[0])
    }

    pub fn bigram_freq(&self, a: u8, b: u8) -> f64 {
        freq(self.bigram_count(a, b), self.totals[1])
    }

    pub fn trigram_freq(&self, a: u8, b: u8, c: u8) -> f64 {
        freq(self.trigram_count(a, b, c), self.totals[2])
    }

    /// Raw tables in index order, used by the fitness evaluator.
    pub fn unigram_table(&self) -> &[u64] {
        &self.unigrams
    }

    pub fn bigram_table(&self) -> &[u64] {
        &self.bigrams
    }

    pub fn trigram_table(&self) -> &[u64] {
        &self.trigrams
    }

    /// Serializes to the `.gzbin` container. Restoring yields bit-exact
    /// integer counts.
    pub fn dump(&self, path: &Path) -> Result<()> {
        let mut body = Vec::new();
        storage::put_string(&mut body, &self.alphabet.as_string());
        storage::put_table(&mut body, &self.unigrams);
        storage::put_table(&mut body, &self.bigrams);
        storage::put_table(&mut body, &self.trigrams);
        storage::save(path, tag::LANGUAGE_STATISTICS, &body)
    }

    pub fn restore(path: &Path) -> Result<Self> {
        let body = storage::load(path, tag::LANGUAGE_STATISTICS)?;
        let mut r = BodyReader::new(&body);
        let alphabet = Alphabet::new(r.string()?.chars())?;
        let s = alphabet.len();
        let unigrams = r.table(s)?;
        let bigrams = r.table(s * s)?;
        let trigrams = r.table(s * s * s)?;
        r.expect_end()?;
        let totals = [
            unigrams.iter().sum(),
            bigrams.iter().sum(),
            trigrams.iter().sum(),
        ];
        Ok(Self {
            alphabet,
            unigrams,
            bigrams,
            trigrams,
            totals,
        })
    }
}

fn freq(count: u64, total: u64) -> f64 {
    if total == 0 {
        0.0
    } else {
        count as f64 / total as f64
    }
}

impl fmt::Display for NgramStatistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "language statistics over {:?} ({} symbols)",
            self.alphabet.as_string(),
            self.alphabet.len()
        )?;
        writeln!(
            f,
            "totals: {} unigrams, {} bigrams, {} trigrams",
            self.totals[0], self.totals[1], self.totals[2]
        )?;
        for (i, sym) in self.alphabet.symbols().iter().enumerate() {
            writeln!(
                f,
                "  {sym}: {:>8}  ({:.4})",
                self.unigrams[i],
                self.unigram_freq(i as u8)
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eng() -> Alphabet {
        Alphabet::english()
    }

    #[test]
    fn abab_counts_match_hand_enumeration() {
        let s = NgramStatistics::build("ABAB", &eng());
        assert_eq!(s.unigram_count(0), 2);
        assert_eq!(s.unigram_count(1), 2);
        assert_eq!(s.bigram_count(0, 1), 2);
        assert_eq!(s.bigram_count(1, 0), 1);
        assert_eq!(s.trigram_count(0, 1, 0), 1);
        assert_eq!(s.trigram_count(1, 0, 1), 1);
        assert_eq!(s.unigram_total(), 4);
        assert_eq!(s.bigram_total(), 3);
        assert_eq!(s.trigram_total(), 2);
    }

    #[test]
    fn single_letter_has_no_higher_orders() {
        let s = NgramStatistics::build("A", &eng());
        assert_eq!(s.unigram_count(0), 1);
        assert_eq!(s.bigram_total(), 0);
        assert_eq!(s.trigram_total(), 0);
    }

    #[test]
    fn empty_corpus_has_zero_totals() {
        let s = NgramStatistics::build("", &eng());
        assert!(s.is_empty());
        assert_eq!(s.unigram_total(), 0);
        assert_eq!(s.unigram_freq(5), 0.0);
    }

    #[test]
    fn documents_are_ngram_boundaries() {
        let mut s = NgramStatistics::new(eng());
        s.add_corpus("AB");
        s.add_corpus("CD");
        assert_eq!(s.bigram_count(0, 1), 1); // AB
        assert_eq!(s.bigram_count(2, 3), 1); // CD
        assert_eq!(s.bigram_count(1, 2), 0); // no BC across documents
        assert_eq!(s.bigram_total(), 2);
    }

    #[test]
    fn adding_to_empty_equals_build() {
        let mut incremental = NgramStatistics::new(eng());
        incremental.add_corpus("THE QUICK BROWN FOX");
        assert_eq!(
            incremental,
            NgramStatistics::build("THE QUICK BROWN FOX", &eng())
        );
    }

    #[test]
    fn adding_empty_is_a_noop() {
        let mut s = NgramStatistics::build("HELLO", &eng());
        let before = s.clone();
        s.add_corpus("");
        assert_eq!(s, before);
    }

    #[test]
    fn alphabet_mismatch_is_rejected() {
        let other = Alphabet::new("ABC".chars()).unwrap();
        let text = normalize("AB", &other, NormalizePolicy::Strip).unwrap();
        let mut s = NgramStatistics::new(eng());
        assert!(matches!(
            s.add_text(&text),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn frequencies_sum_to_one() {
        let s = NgramStatistics::build("IT IS A TRUTH UNIVERSALLY ACKNOWLEDGED", &eng());
        for (total, sum) in [
            (
                s.unigram_total(),
                (0..26).map(|a| s.unigram_freq(a)).sum::<f64>(),
            ),
            (
                s.bigram_total(),
                (0..26)
                    .flat_map(|a| (0..26).map(move |b| (a, b)))
                    .map(|(a, b)| s.bigram_freq(a, b))
                    .sum::<f64>(),
            ),
        ] {
            assert!(total > 0);
            assert!((sum - 1.0).abs() < 1e-9, "sum {sum}");
        }
    }

    #[test]
    fn dump_restore_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("LanguageStatistics.gzbin");
        let s = NgramStatistics::build("ABAB", &eng());
        s.dump(&path).unwrap();
        assert_eq!(NgramStatistics::restore(&path).unwrap(), s);
    }
}
