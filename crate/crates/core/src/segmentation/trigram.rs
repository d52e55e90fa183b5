//! Character trigram space detection.
//!
//! Training counts, for every inter-word gap of a spaced corpus, the three
//! space contexts:
//!
//! * the last two characters of the preceding word before the space,
//! * the last character before and the first character after the space,
//! * the first two characters of the following word after the space,
//!
//! plus the background occurrences of every character pair in the despaced
//! stream, which turn the counts into conditional probabilities. Text
//! boundaries are respected: the first word has no preceding context and the
//! last no following one, so only the applicable tables are incremented.
//!
//! Parsing scans each candidate gap, combines the available conditional
//! probabilities by geometric mean (robust to a missing edge term, and a
//! single confident term cannot dominate the decision) and inserts a space
//! where the score reaches the threshold. After an insertion the immediately
//! next gap is skipped so the parser does not shred the text into
//! one-character words; the genuine one-character words A and I are
//! whitelisted from that suppression.

use std::path::Path;

use crate::error::{Error, Result};
use crate::storage::{self, tag, BodyReader};
use crate::text::{normalize, Alphabet, NormalizePolicy, NormalizedText};

use super::Segmentation;

/// One-character words exempt from the skip-next-gap suppression.
const ONE_CHAR_WORD_WHITELIST: [char; 2] = ['A', 'I'];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceTrigramModel {
    alphabet: Alphabet,
    /// gap context: two last characters of the preceding word
    end_pair: Vec<u64>,
    /// gap context: last character before, first character after
    straddle: Vec<u64>,
    /// gap context: two first characters of the following word
    start_pair: Vec<u64>,
    /// background: adjacent character pairs of the despaced stream
    pair_total: Vec<u64>,
}

impl SpaceTrigramModel {
    pub fn new(alphabet: Alphabet) -> Self {
        let s = alphabet.len();
        Self {
            alphabet,
            end_pair: vec![0; s * s],
            straddle: vec![0; s * s],
            start_pair: vec![0; s * s],
            pair_total: vec![0; s * s],
        }
    }

    /// Trains on a spaced corpus; each call is one document, so no gap or
    /// background pair spans two calls.
    pub fn train(&mut self, corpus: &str) {
        let s = self.alphabet.len();
        let words: Vec<Vec<u8>> = corpus
            .split_whitespace()
            .filter_map(|token| {
                let w = normalize(token, &self.alphabet, NormalizePolicy::Strip)
                    .expect("strip normalization never fails");
                (!w.is_empty()).then(|| w.indices().to_vec())
            })
            .collect();

        // background pairs over the despaced stream
        let mut prev: Option<u8> = None;
        for word in &words {
            for &c in word {
                if let Some(p) = prev {
                    self.pair_total[p as usize * s + c as usize] += 1;
                }
                prev = Some(c);
            }
        }

        // space events at every inter-word gap
        for pair in words.windows(2) {
            let (w1, w2) = (&pair[0], &pair[1]);
            if w1.len() >= 2 {
                let (a, b) = (w1[w1.len() - 2], w1[w1.len() - 1]);
                self.end_pair[a as usize * s + b as usize] += 1;
            }
            let (a, b) = (w1[w1.len() - 1], w2[0]);
            self.straddle[a as usize * s + b as usize] += 1;
            if w2.len() >= 2 {
                let (a, b) = (w2[0], w2[1]);
                self.start_pair[a as usize * s + b as usize] += 1;
            }
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn is_empty(&self) -> bool {
        self.pair_total.iter().all(|&c| c == 0)
    }

    pub fn end_pair_count(&self, a: u8, b: u8) -> u64 {
        self.end_pair[a as usize * self.alphabet.len() + b as usize]
    }

    pub fn straddle_count(&self, a: u8, b: u8) -> u64 {
        self.straddle[a as usize * self.alphabet.len() + b as usize]
    }

    pub fn start_pair_count(&self, a: u8, b: u8) -> u64 {
        self.start_pair[a as usize * self.alphabet.len() + b as usize]
    }

    pub fn pair_count(&self, a: u8, b: u8) -> u64 {
        self.pair_total[a as usize * self.alphabet.len() + b as usize]
    }

    fn conditional(&self, table: &[u64], a: u8, b: u8) -> f64 {
        let s = self.alphabet.len();
        let i = a as usize * s + b as usize;
        let total = self.pair_total[i];
        if total == 0 {
            0.0 // context never observed: no evidence of a space
        } else {
            table[i] as f64 / total as f64
        }
    }

    /// Scores every gap and inserts a boundary where the geometric mean of
    /// the available conditional probabilities reaches `threshold`.
    pub fn parse(&self, stream: &NormalizedText, threshold: f64) -> Result<Segmentation> {
        if self.is_empty() {
            return Err(Error::UntrainedModel(
                "space trigram model holds no counts; train it first".into(),
            ));
        }
        debug_assert_eq!(stream.alphabet(), &self.alphabet);
        let idx = stream.indices();
        let n = idx.len();
        let whitelist: Vec<u8> = ONE_CHAR_WORD_WHITELIST
            .iter()
            .filter_map(|&c| self.alphabet.index_of(c))
            .collect();

        let mut boundaries = Vec::new();
        let mut skip_until = 0usize;
        for gap in 0..n.saturating_sub(1) {
            if gap < skip_until {
                continue;
            }
            let mut product = 1.0;
            let mut terms = 0u32;
            if gap >= 1 {
                product *= self.conditional(&self.end_pair, idx[gap - 1], idx[gap]);
                terms += 1;
            }
            product *= self.conditional(&self.straddle, idx[gap], idx[gap + 1]);
            terms += 1;
            if gap + 2 < n {
                product *= self.conditional(&self.start_pair, idx[gap + 1], idx[gap + 2]);
                terms += 1;
            }
            let score = product.powf(1.0 / terms as f64);
            if score >= threshold {
                boundaries.push(gap + 1);
                if !whitelist.contains(&idx[gap + 1]) {
                    skip_until = gap + 2;
                }
            }
        }
        Ok(Segmentation::new(boundaries))
    }

    pub fn dump(&self, path: &Path) -> Result<()> {
        let mut body = Vec::new();
        storage::put_string(&mut body, &self.alphabet.as_string());
        storage::put_table(&mut body, &self.end_pair);
        storage::put_table(&mut body, &self.straddle);
        storage::put_table(&mut body, &self.start_pair);
        storage::put_table(&mut body, &self.pair_total);
        storage::save(path, tag::SPACE_TRIGRAM_MODEL, &body)
    }

    pub fn restore(path: &Path) -> Result<Self> {
        let body = storage::load(path, tag::SPACE_TRIGRAM_MODEL)?;
        let mut r = BodyReader::new(&body);
        let alphabet = Alphabet::new(r.string()?.chars())?;
        let s = alphabet.len();
        let end_pair = r.table(s * s)?;
        let straddle = r.table(s * s)?;
        let start_pair = r.table(s * s)?;
        let pair_total = r.table(s * s)?;
        r.expect_end()?;
        Ok(Self {
            alphabet,
            end_pair,
            straddle,
            start_pair,
            pair_total,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(s: &str) -> NormalizedText {
        normalize(s, &Alphabet::english(), NormalizePolicy::Strip).unwrap()
    }

    #[test]
    fn single_gap_increments_all_three_tables() {
        let mut model = SpaceTrigramModel::new(Alphabet::english());
        model.train("AB CD");
        assert_eq!(model.end_pair_count(0, 1), 1); // A,B before the space
        assert_eq!(model.straddle_count(1, 2), 1); // B space C
        assert_eq!(model.start_pair_count(2, 3), 1); // C,D after the space
                                                     // background pairs of the despaced stream ABCD
        assert_eq!(model.pair_count(0, 1), 1);
        assert_eq!(model.pair_count(1, 2), 1);
        assert_eq!(model.pair_count(2, 3), 1);
    }

    #[test]
    fn no_spaces_means_no_events() {
        let mut model = SpaceTrigramModel::new(Alphabet::english());
        model.train("AB");
        assert_eq!(model.end_pair_count(0, 1), 0);
        assert_eq!(model.straddle_count(0, 1), 0);
        assert_eq!(model.start_pair_count(0, 1), 0);
        assert_eq!(model.pair_count(0, 1), 1);
    }

    #[test]
    fn leading_space_has_no_preceding_word() {
        let mut model = SpaceTrigramModel::new(Alphabet::english());
        model.train(" A");
        assert!(model
            .end_pair
            .iter()
            .chain(&model.straddle)
            .chain(&model.start_pair)
            .all(|&c| c == 0));
    }

    #[test]
    fn parse_restores_the_trained_gap() {
        let mut model = SpaceTrigramModel::new(Alphabet::english());
        model.train("AB CD");
        let stream = text("ABCD");
        let seg = model.parse(&stream, 0.5).unwrap();
        assert_eq!(seg.boundaries(), &[2]);
        assert_eq!(seg.apply(&stream), "AB CD");
    }

    #[test]
    fn boundary_count_is_monotone_in_threshold() {
        let mut model = SpaceTrigramModel::new(Alphabet::english());
        model.train("THE CAT SAT ON THE MAT AND THE DOG SAT ON THE LOG");
        let stream = text("THECATSATONTHEMAT");
        let mut last = usize::MAX;
        for threshold in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let count = model.parse(&stream, threshold).unwrap().len();
            assert!(count <= last, "threshold {threshold}: {count} > {last}");
            last = count;
        }
    }

    #[test]
    fn untrained_model_refuses_to_parse() {
        let model = SpaceTrigramModel::new(Alphabet::english());
        let err = model.parse(&text("ABCD"), 0.5).unwrap_err();
        assert!(matches!(err, Error::UntrainedModel(_)), "{err}");
    }

    #[test]
    fn empty_stream_yields_empty_segmentation() {
        let mut model = SpaceTrigramModel::new(Alphabet::english());
        model.train("AB CD");
        let seg = model.parse(&text(""), 0.5).unwrap();
        assert!(seg.is_empty());
    }

    #[test]
    fn training_is_additive_across_documents() {
        let a = "THE QUICK BROWN FOX";
        let b = "JUMPS OVER THE LAZY DOG";
        let mut combined = SpaceTrigramModel::new(Alphabet::english());
        combined.train(a);
        combined.train(b);
        let mut ma = SpaceTrigramModel::new(Alphabet::english());
        ma.train(a);
        let mut mb = SpaceTrigramModel::new(Alphabet::english());
        mb.train(b);
        for x in 0..26u8 {
            for y in 0..26u8 {
                assert_eq!(
                    combined.end_pair_count(x, y),
                    ma.end_pair_count(x, y) + mb.end_pair_count(x, y)
                );
                assert_eq!(
                    combined.straddle_count(x, y),
                    ma.straddle_count(x, y) + mb.straddle_count(x, y)
                );
                assert_eq!(
                    combined.start_pair_count(x, y),
                    ma.start_pair_count(x, y) + mb.start_pair_count(x, y)
                );
                assert_eq!(
                    combined.pair_count(x, y),
                    ma.pair_count(x, y) + mb.pair_count(x, y)
                );
            }
        }
    }

    #[test]
    fn dump_restore_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("SpaceTrigramModel.gzbin");
        let mut model = SpaceTrigramModel::new(Alphabet::english());
        model.train("SPHINX OF BLACK QUARTZ JUDGE MY VOW");
        model.dump(&path).unwrap();
        assert_eq!(SpaceTrigramModel::restore(&path).unwrap(), model);
    }
}
