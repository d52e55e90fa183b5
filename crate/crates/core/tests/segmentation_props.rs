//! Segmentation invariants: characters are never altered, the greedy parser
//! honors longest match everywhere, and the trigram parser's boundary count
//! is monotone in its threshold.

use proptest::prelude::*;

use cipherlab::segmentation::{Dictionary, SpaceTrigramModel};
use cipherlab::{normalize, Alphabet, NormalizePolicy, NormalizedText};

fn words_strategy() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec("[a-z]{1,8}", 1..25)
}

fn stream_of(words: &[String]) -> NormalizedText {
    normalize(
        &words.concat(),
        &Alphabet::english(),
        NormalizePolicy::Strip,
    )
    .unwrap()
}

proptest! {
    #[test]
    fn dict_parse_preserves_characters(words in words_strategy(), extra in "[a-z]{0,30}") {
        let mut dict = Dictionary::new(Alphabet::english());
        dict.train(&words.join(" "));
        let stream = normalize(
            &format!("{}{extra}", words.concat()),
            &Alphabet::english(),
            NormalizePolicy::Strip,
        )
        .unwrap();
        let rendered = dict.parse(&stream).apply(&stream);
        prop_assert_eq!(rendered.replace(' ', ""), stream.to_string());
    }

    /// Oracle re-scan: walk the emitted segments left to right; every
    /// segment must either be the longest dictionary match at its start
    /// position, or a run with no dictionary match at any interior start.
    #[test]
    fn dict_parse_segments_satisfy_longest_match(words in words_strategy()) {
        let alphabet = Alphabet::english();
        let mut dict = Dictionary::new(alphabet.clone());
        dict.train(&words.join(" "));
        let stream = stream_of(&words);
        let seg = dict.parse(&stream);
        let rendered = seg.apply(&stream);

        let longest_at = |suffix: &str| -> usize {
            (1..=suffix.len())
                .rev()
                .find(|&len| {
                    let w = normalize(&suffix[..len], &alphabet, NormalizePolicy::Strip).unwrap();
                    dict.contains(&w)
                })
                .unwrap_or(0)
        };

        let mut offset = 0usize;
        let full = stream.to_string();
        for segment in rendered.split(' ') {
            let suffix = &full[offset..];
            let longest = longest_at(suffix);
            if longest > 0 {
                // a word segment must be exactly the longest match here
                prop_assert_eq!(
                    segment.len(),
                    longest,
                    "segment {} at offset {} is not the longest match",
                    segment,
                    offset
                );
            } else {
                // an unknown run: no position inside it may start any
                // dictionary word, or matching would have resumed there
                for inner in 0..segment.len() {
                    prop_assert_eq!(
                        longest_at(&full[offset + inner..]),
                        0,
                        "run {} hides a word at interior offset {}",
                        segment,
                        inner
                    );
                }
            }
            offset += segment.len();
        }
    }

    #[test]
    fn trigram_boundary_count_is_monotone(words in words_strategy(), stream_words in words_strategy()) {
        let mut model = SpaceTrigramModel::new(Alphabet::english());
        model.train(&words.join(" "));
        prop_assume!(!model.is_empty());
        let stream = stream_of(&stream_words);
        let mut previous = usize::MAX;
        for threshold in [0.0, 0.2, 0.4, 0.6, 0.8, 1.0] {
            let count = model.parse(&stream, threshold).unwrap().len();
            prop_assert!(count <= previous);
            previous = count;
        }
    }

    #[test]
    fn trigram_parse_preserves_characters(words in words_strategy(), threshold in 0.0f64..1.0) {
        let mut model = SpaceTrigramModel::new(Alphabet::english());
        model.train(&words.join(" "));
        prop_assume!(!model.is_empty());
        let stream = stream_of(&words);
        let rendered = model.parse(&stream, threshold).unwrap().apply(&stream);
        prop_assert_eq!(rendered.replace(' ', ""), stream.to_string());
    }
}

/// The trained word count must agree with an independent tokenizer pass
/// (distinct alphabet-only uppercased tokens) over the shipped corpus.
#[test]
fn dict_word_count_matches_an_independent_tokenizer() {
    let corpus = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../data/corpus.txt"
    ))
    .unwrap();
    let mut dict = Dictionary::new(Alphabet::english());
    dict.train(&corpus);

    let distinct: std::collections::BTreeSet<String> = corpus
        .split_whitespace()
        .map(|token| {
            token
                .chars()
                .filter(char::is_ascii_alphabetic)
                .map(|c| c.to_ascii_uppercase())
                .collect::<String>()
        })
        .filter(|w| !w.is_empty())
        .collect();

    assert_eq!(dict.word_count(), distinct.len());
    let longest = distinct.iter().map(|w| w.len()).max().unwrap();
    assert_eq!(dict.max_word_length(), longest);
}

#[test]
fn dict_training_then_parsing_restores_simple_text() {
    let mut dict = Dictionary::new(Alphabet::english());
    dict.train("the cat sat on the mat");
    let stream = normalize(
        "THECATSATONTHEMAT",
        &Alphabet::english(),
        NormalizePolicy::Strip,
    )
    .unwrap();
    assert_eq!(dict.parse(&stream).apply(&stream), "THE CAT SAT ON THE MAT");
}
