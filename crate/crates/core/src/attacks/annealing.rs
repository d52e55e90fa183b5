//! Simulated annealing over substitution keys with swap neighbors,
//! geometric cooling and a self-calibrating starting temperature.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ciphers::substitution_decrypt;
use crate::error::{Error, Result};
use crate::langstats::NgramStatistics;
use crate::text::NormalizedText;

use super::fitness::FitnessEvaluator;
use super::{frequency_aligned_key, AttackConfig, AttackResult, RecoveredKey, TracePoint};

pub fn simulated_annealing_attack(
    ciphertext: &NormalizedText,
    reference: &NgramStatistics,
    config: &AttackConfig,
) -> Result<AttackResult> {
    if ciphertext.is_empty() {
        return Err(Error::EmptyText("ciphertext".into()));
    }
    config.annealing.validate()?;
    let evaluator = FitnessEvaluator::new(ciphertext, reference, config.weights)?;
    let s = evaluator.alphabet_size();
    let mut rng = ChaCha8Rng::seed_from_u64(config.random_seed);

    let mut current = frequency_aligned_key(ciphertext, reference);
    let mut current_cost = evaluator.cost(&current);
    let mut best = current.clone();
    let mut best_cost = current_cost;
    let mut trace = vec![TracePoint {
        iteration: 0,
        best_fitness: best_cost,
    }];

    let initial_temperature = match config.annealing.initial_temperature {
        Some(t) => t,
        None => {
            // standard deviation of 100 random-neighbor cost deltas,
            // replacing a corpus-dependent magic number
            let samples = 100;
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..samples {
                let (i, j) = random_pair(s, &mut rng);
                current.swap(i, j);
                let delta = evaluator.cost(&current) - current_cost;
                current.swap(i, j);
                sum += delta;
                sum_sq += delta * delta;
            }
            let n = samples as f64;
            let variance = (sum_sq / n - (sum / n) * (sum / n)).max(0.0);
            let sigma = variance.sqrt();
            if sigma > 0.0 {
                sigma
            } else {
                1.0 // a flat neighborhood: any temperature behaves the same
            }
        }
    };

    let floor = config.annealing.min_temperature * initial_temperature;
    let inner = config.annealing.inner_iterations.unwrap_or(100 * s);
    let mut temperature = initial_temperature;
    let mut step = 0u64;

    while temperature >= floor {
        for _ in 0..inner {
            step += 1;
            let (i, j) = random_pair(s, &mut rng);
            current.swap(i, j);
            let candidate_cost = evaluator.cost(&current);
            let delta = candidate_cost - current_cost;
            let accept = delta <= 0.0 || rng.random::<f64>() < (-delta / temperature).exp();
            if accept {
                current_cost = candidate_cost;
                if current_cost < best_cost {
                    best.clone_from(&current);
                    best_cost = current_cost;
                    trace.push(TracePoint {
                        iteration: step,
                        best_fitness: best_cost,
                    });
                }
            } else {
                current.swap(i, j);
            }
        }
        temperature *= config.annealing.cooling_factor;
    }

    Ok(AttackResult {
        plaintext: substitution_decrypt(ciphertext, &best),
        best_key: RecoveredKey::Substitution(best),
        best_fitness: best_cost,
        iterations: step,
        trace,
    })
}

/// Two distinct positions, drawn with exactly two RNG calls.
pub(super) fn random_pair<R: Rng>(s: usize, rng: &mut R) -> (usize, usize) {
    let i = rng.random_range(0..s);
    let mut j = rng.random_range(0..s - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}
