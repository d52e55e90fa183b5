//! Position-wise comparison of a recovered text against a reference,
//! overall and per tracked monogram.
//!
//! Both streams are normalized first, so matchedness measures letter
//! recovery rather than spacing or punctuation. Per-monogram fractions
//! condition on the reference character (per-character recall). A length
//! mismatch restricts the comparison to the common prefix and is reported
//! in the result instead of failing, since segmented output can legally
//! differ in length from its reference.

use crate::error::{Error, Result};
use crate::text::{normalize, Alphabet, NormalizePolicy};

#[derive(Clone, Debug, PartialEq)]
pub struct MatchednessReport {
    /// Fraction of positions in the compared prefix where the texts agree.
    pub overall: f64,
    /// Length of the compared prefix (the shorter normalized length).
    pub compared_length: usize,
    pub candidate_length: usize,
    pub reference_length: usize,
    /// Per-character recall for every character occurring in the compared
    /// prefix of the reference, in alphabet order.
    pub per_monogram: Vec<(char, f64)>,
}

impl MatchednessReport {
    /// Characters occurring in the reference, in alphabet order.
    pub fn tracked_monograms(&self) -> Vec<char> {
        self.per_monogram.iter().map(|&(c, _)| c).collect()
    }

    pub fn monogram_matchedness(&self, c: char) -> Option<f64> {
        self.per_monogram
            .iter()
            .find(|&&(m, _)| m == c)
            .map(|&(_, f)| f)
    }

    pub fn length_mismatch(&self) -> bool {
        self.candidate_length != self.reference_length
    }
}

pub fn compute_matchedness(
    candidate: &str,
    reference: &str,
    alphabet: &Alphabet,
) -> Result<MatchednessReport> {
    let cand = normalize(candidate, alphabet, NormalizePolicy::Strip)?;
    let refr = normalize(reference, alphabet, NormalizePolicy::Strip)?;
    if cand.is_empty() {
        return Err(Error::EmptyText("candidate".into()));
    }
    if refr.is_empty() {
        return Err(Error::EmptyText("reference".into()));
    }

    let compared = cand.len().min(refr.len());
    let mut matches = 0usize;
    let mut occurrences = vec![0usize; alphabet.len()];
    let mut char_matches = vec![0usize; alphabet.len()];
    for i in 0..compared {
        let r = refr.indices()[i];
        occurrences[r as usize] += 1;
        if cand.indices()[i] == r {
            matches += 1;
            char_matches[r as usize] += 1;
        }
    }

    let per_monogram = (0..alphabet.len())
        .filter(|&i| occurrences[i] > 0)
        .map(|i| {
            (
                alphabet.symbol(i as u8),
                char_matches[i] as f64 / occurrences[i] as f64,
            )
        })
        .collect();

    Ok(MatchednessReport {
        overall: matches as f64 / compared as f64,
        compared_length: compared,
        candidate_length: cand.len(),
        reference_length: refr.len(),
        per_monogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eng() -> Alphabet {
        Alphabet::english()
    }

    #[test]
    fn identical_texts_match_fully() {
        let r = compute_matchedness("HELLO WORLD", "HELLO WORLD", &eng()).unwrap();
        assert_eq!(r.overall, 1.0);
        assert!(r.per_monogram.iter().all(|&(_, f)| f == 1.0));
        assert!(!r.length_mismatch());
    }

    #[test]
    fn aaaa_vs_aaab_hand_count() {
        let r = compute_matchedness("AAAA", "AAAB", &eng()).unwrap();
        assert_eq!(r.overall, 0.75);
        assert_eq!(r.monogram_matchedness('A'), Some(1.0));
        assert_eq!(r.monogram_matchedness('B'), Some(0.0));
        assert_eq!(r.tracked_monograms(), vec!['A', 'B']);
    }

    #[test]
    fn shifted_text_matches_nowhere() {
        let r = compute_matchedness("BCD", "ABC", &eng()).unwrap();
        assert_eq!(r.overall, 0.0);
    }

    #[test]
    fn overall_is_symmetric_for_equal_lengths() {
        let a = "QUIETLY THE RIVER TURNS";
        let b = "QUICKLY THE RAVEN LEARNS";
        let ab = compute_matchedness(a, b, &eng()).unwrap();
        let ba = compute_matchedness(b, a, &eng()).unwrap();
        assert_eq!(ab.overall, ba.overall);
    }

    #[test]
    fn spaces_are_stripped_before_comparison() {
        let r = compute_matchedness("THECAT", "THE CAT", &eng()).unwrap();
        assert_eq!(r.overall, 1.0);
        assert!(!r.length_mismatch());
    }

    #[test]
    fn length_mismatch_compares_the_common_prefix() {
        let r = compute_matchedness("ABCDEF", "ABC", &eng()).unwrap();
        assert_eq!(r.overall, 1.0);
        assert_eq!(r.compared_length, 3);
        assert!(r.length_mismatch());
    }

    #[test]
    fn empty_streams_are_errors() {
        assert!(compute_matchedness("", "ABC", &eng()).is_err());
        assert!(compute_matchedness("ABC", "123", &eng()).is_err());
    }

    #[test]
    fn overall_is_the_occurrence_weighted_mean_of_monograms() {
        let cand = "ABABABAB";
        let refr = "AABBAABC";
        let r = compute_matchedness(cand, refr, &eng()).unwrap();
        let mut occ = std::collections::HashMap::new();
        for c in refr.chars().take(r.compared_length) {
            *occ.entry(c).or_insert(0usize) += 1;
        }
        let weighted: f64 = r
            .per_monogram
            .iter()
            .map(|&(c, f)| f * occ[&c] as f64 / r.compared_length as f64)
            .sum();
        assert!((r.overall - weighted).abs() < 1e-12);
    }
}
