//! The n-gram cost function shared by all attacks.
//!
//! The cost of a key against a ciphertext is
//!
//! ```text
//! alpha * sum_i |U_ref(i) - U_dec(i)|
//!   + beta * sum_ij |B_ref(i,j) - B_dec(i,j)|
//!   + gamma * sum_ijk |T_ref(i,j,k) - T_dec(i,j,k)|
//! ```
//!
//! where `U/B/T_dec` are the n-gram frequencies of the candidate decryption.
//! Absolute differences of frequencies need no smoothing floor: absent
//! n-grams contribute their reference mass and nothing divides by zero.
//!
//! Because a substitution key only relabels symbols, the decryption's n-gram
//! counts are the ciphertext's counts pushed through the inverse mapping.
//! [`FitnessEvaluator`] therefore counts the ciphertext once and scores any
//! key by iterating only the observed n-grams; terms absent from both sides
//! are zero, so this equals the dense sum over all index triples.

use crate::ciphers::SubstitutionKey;
use crate::error::{Error, Result};
use crate::langstats::NgramStatistics;
use crate::text::NormalizedText;

use super::FitnessWeights;

/// Precomputed scorer for one ciphertext against one reference model.
pub struct FitnessEvaluator {
    size: usize,
    weights: FitnessWeights,
    ref_uni: Vec<f64>,
    ref_bi: Vec<f64>,
    ref_tri: Vec<f64>,
    /// Frequency mass of each reference order, summed in index order so the
    /// self-consistency identity (cost of the true distribution) is exact.
    ref_mass: [f64; 3],
    obs_uni: Vec<(u8, f64)>,
    obs_bi: Vec<(u8, u8, f64)>,
    obs_tri: Vec<(u8, u8, u8, f64)>,
}

impl FitnessEvaluator {
    pub fn new(
        ciphertext: &NormalizedText,
        reference: &NgramStatistics,
        weights: FitnessWeights,
    ) -> Result<Self> {
        weights.validate()?;
        if reference.is_empty() {
            return Err(Error::UntrainedModel(
                "language statistics hold no counts; train them first".into(),
            ));
        }
        if ciphertext.alphabet() != reference.alphabet() {
            return Err(Error::AlphabetMismatch {
                expected: reference.alphabet().as_string(),
                got: ciphertext.alphabet().as_string(),
            });
        }
        let s = reference.alphabet().len();

        let to_freq = |table: &[u64]| -> (Vec<f64>, f64) {
            let total: u64 = table.iter().sum();
            let freqs: Vec<f64> = table
                .iter()
                .map(|&c| {
                    if total == 0 {
                        0.0
                    } else {
                        c as f64 / total as f64
                    }
                })
                .collect();
            let mass = freqs.iter().sum();
            (freqs, mass)
        };
        let (ref_uni, m0) = to_freq(reference.unigram_table());
        let (ref_bi, m1) = to_freq(reference.bigram_table());
        let (ref_tri, m2) = to_freq(reference.trigram_table());

        // Dense ciphertext counts, then collected sparse in ascending index
        // order so every evaluation sums in the same order.
        let idx = ciphertext.indices();
        let mut uni = vec![0u32; s];
        let mut bi = vec![0u32; s * s];
        let mut tri = vec![0u32; s * s * s];
        for &a in idx {
            uni[a as usize] += 1;
        }
        for w in idx.windows(2) {
            bi[w[0] as usize * s + w[1] as usize] += 1;
        }
        for w in idx.windows(3) {
            tri[(w[0] as usize * s + w[1] as usize) * s + w[2] as usize] += 1;
        }
        let n = idx.len() as f64;
        let collect1 = |table: &[u32], total: f64| {
            table
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(i, &c)| (i as u8, c as f64 / total))
                .collect::<Vec<_>>()
        };
        let obs_uni = if idx.is_empty() {
            Vec::new()
        } else {
            collect1(&uni, n)
        };
        let mut obs_bi = Vec::new();
        if idx.len() >= 2 {
            let total = n - 1.0;
            for (i, &c) in bi.iter().enumerate() {
                if c > 0 {
                    obs_bi.push(((i / s) as u8, (i % s) as u8, c as f64 / total));
                }
            }
        }
        let mut obs_tri = Vec::new();
        if idx.len() >= 3 {
            let total = n - 2.0;
            for (i, &c) in tri.iter().enumerate() {
                if c > 0 {
                    obs_tri.push((
                        (i / (s * s)) as u8,
                        (i / s % s) as u8,
                        (i % s) as u8,
                        c as f64 / total,
                    ));
                }
            }
        }

        Ok(Self {
            size: s,
            weights,
            ref_uni,
            ref_bi,
            ref_tri,
            ref_mass: [m0, m1, m2],
            obs_uni,
            obs_bi,
            obs_tri,
        })
    }

    /// Cost of decrypting the ciphertext with `key`. Lower is better.
    pub fn cost(&self, key: &SubstitutionKey) -> f64 {
        debug_assert!(key.is_permutation());
        debug_assert_eq!(key.size(), self.size);
        let mut inv = [0u8; 256];
        for (i, &m) in key.mapping().iter().enumerate() {
            inv[m as usize] = i as u8;
        }
        let s = self.size;

        let mut acc_u = 0.0;
        for &(a, d) in &self.obs_uni {
            let r = self.ref_uni[inv[a as usize] as usize];
            acc_u += (r - d).abs() - r;
        }
        let mut acc_b = 0.0;
        for &(a, b, d) in &self.obs_bi {
            let r = self.ref_bi[inv[a as usize] as usize * s + inv[b as usize] as usize];
            acc_b += (r - d).abs() - r;
        }
        let mut acc_t = 0.0;
        for &(a, b, c, d) in &self.obs_tri {
            let r = self.ref_tri[(inv[a as usize] as usize * s + inv[b as usize] as usize) * s
                + inv[c as usize] as usize];
            acc_t += (r - d).abs() - r;
        }

        let cost_u = self.ref_mass[0] + acc_u;
        let cost_b = self.ref_mass[1] + acc_b;
        let cost_t = self.ref_mass[2] + acc_t;
        self.weights.alpha * cost_u + self.weights.beta * cost_b + self.weights.gamma * cost_t
    }

    pub fn alphabet_size(&self) -> usize {
        self.size
    }
}

/// One-shot cost computation; attacks hold a [`FitnessEvaluator`] instead.
pub fn fitness(
    key: &SubstitutionKey,
    ciphertext: &NormalizedText,
    reference: &NgramStatistics,
    weights: &FitnessWeights,
) -> Result<f64> {
    Ok(FitnessEvaluator::new(ciphertext, reference, *weights)?.cost(key))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ciphers::substitution_encrypt;
    use crate::text::{normalize, Alphabet, NormalizePolicy};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const EXCERPT: &str = "IT IS A TRUTH UNIVERSALLY ACKNOWLEDGED THAT A SINGLE MAN IN \
        POSSESSION OF A GOOD FORTUNE MUST BE IN WANT OF A WIFE HOWEVER LITTLE KNOWN THE \
        FEELINGS OR VIEWS OF SUCH A MAN MAY BE ON HIS FIRST ENTERING A NEIGHBOURHOOD";

    fn excerpt_text() -> NormalizedText {
        normalize(EXCERPT, &Alphabet::english(), NormalizePolicy::Strip).unwrap()
    }

    #[test]
    fn identity_key_against_own_statistics_costs_zero() {
        let reference = NgramStatistics::build(EXCERPT, &Alphabet::english());
        let cipher = substitution_encrypt(&excerpt_text(), &SubstitutionKey::identity(26));
        let cost = fitness(
            &SubstitutionKey::identity(26),
            &cipher,
            &reference,
            &FitnessWeights::default(),
        )
        .unwrap();
        assert_eq!(cost, 0.0);
    }

    #[test]
    fn unigram_only_weights_ignore_order() {
        let alphabet = Alphabet::english();
        let reference = NgramStatistics::build(EXCERPT, &alphabet);
        let weights = FitnessWeights::new(1.0, 0.0, 0.0).unwrap();
        let a = normalize("AABBC", &alphabet, NormalizePolicy::Strip).unwrap();
        let b = normalize("BCABA", &alphabet, NormalizePolicy::Strip).unwrap();
        let key = SubstitutionKey::identity(26);
        let ca = fitness(&key, &a, &reference, &weights).unwrap();
        let cb = fitness(&key, &b, &reference, &weights).unwrap();
        assert_eq!(ca, cb, "identical histograms must cost the same");

        // against a reference trained on either text the unigram-only cost
        // vanishes outright, whatever the order
        let own_ref = NgramStatistics::build("AABBC", &alphabet);
        assert_eq!(fitness(&key, &b, &own_ref, &weights).unwrap(), 0.0);
    }

    #[test]
    fn untrained_reference_is_an_error() {
        let alphabet = Alphabet::english();
        let empty = NgramStatistics::new(alphabet.clone());
        let text = normalize("ABC", &alphabet, NormalizePolicy::Strip).unwrap();
        let err = fitness(
            &SubstitutionKey::identity(26),
            &text,
            &empty,
            &FitnessWeights::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::UntrainedModel(_)), "{err}");
    }

    /// The sparse evaluation must equal the dense sum over every index.
    #[test]
    fn sparse_cost_equals_dense_cost() {
        let alphabet = Alphabet::english();
        let reference = NgramStatistics::build(EXCERPT, &alphabet);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let key = SubstitutionKey::random(26, &mut rng);
        let cipher = substitution_encrypt(&excerpt_text(), &key);
        let weights = FitnessWeights::default();
        let sparse = fitness(&key, &cipher, &reference, &weights).unwrap();

        // dense oracle: decrypt, count, and sum |ref - dec| over all indices
        let dec = crate::ciphers::substitution_decrypt(&cipher, &key);
        let dec_stats = NgramStatistics::build(&dec.to_string(), &alphabet);
        let mut dense = 0.0;
        let mut term = 0.0;
        for a in 0..26u8 {
            term += (reference.unigram_freq(a) - dec_stats.unigram_freq(a)).abs();
        }
        dense += weights.alpha * term;
        term = 0.0;
        for a in 0..26u8 {
            for b in 0..26u8 {
                term += (reference.bigram_freq(a, b) - dec_stats.bigram_freq(a, b)).abs();
            }
        }
        dense += weights.beta * term;
        term = 0.0;
        for a in 0..26u8 {
            for b in 0..26u8 {
                for c in 0..26u8 {
                    term +=
                        (reference.trigram_freq(a, b, c) - dec_stats.trigram_freq(a, b, c)).abs();
                }
            }
        }
        dense += weights.gamma * term;

        assert!(
            (sparse - dense).abs() < 1e-12,
            "sparse {sparse} vs dense {dense}"
        );
    }

    #[test]
    fn cost_is_nonnegative_for_random_keys() {
        let alphabet = Alphabet::english();
        let reference = NgramStatistics::build(EXCERPT, &alphabet);
        let evaluator =
            FitnessEvaluator::new(&excerpt_text(), &reference, FitnessWeights::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let key = SubstitutionKey::random(26, &mut rng);
            assert!(evaluator.cost(&key) >= 0.0);
        }
    }

    /// Scaling all weights by a power of two scales every cost exactly,
    /// leaving the ranking of keys untouched.
    #[test]
    fn power_of_two_weight_scaling_is_exact() {
        let alphabet = Alphabet::english();
        let reference = NgramStatistics::build(EXCERPT, &alphabet);
        let cipher = excerpt_text();
        let base = FitnessWeights::default();
        let scaled =
            FitnessWeights::new(base.alpha * 4.0, base.beta * 4.0, base.gamma * 4.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let key = SubstitutionKey::random(26, &mut rng);
            let c1 = fitness(&key, &cipher, &reference, &base).unwrap();
            let c2 = fitness(&key, &cipher, &reference, &scaled).unwrap();
            assert_eq!(c2, 4.0 * c1);
        }
    }
}
