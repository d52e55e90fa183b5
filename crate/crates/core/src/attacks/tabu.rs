//! Tabu search over substitution keys: sampled swap neighborhoods, a FIFO
//! list of forbidden moves and an aspiration override for new global bests.

use std::collections::VecDeque;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ciphers::{substitution_decrypt, SubstitutionKey};
use crate::error::{Error, Result};
use crate::langstats::NgramStatistics;
use crate::text::NormalizedText;

use super::annealing::random_pair;
use super::fitness::FitnessEvaluator;
use super::{frequency_aligned_key, AttackConfig, AttackResult, RecoveredKey, TracePoint};

pub fn tabu_attack(
    ciphertext: &NormalizedText,
    reference: &NgramStatistics,
    config: &AttackConfig,
) -> Result<AttackResult> {
    if ciphertext.is_empty() {
        return Err(Error::EmptyText("ciphertext".into()));
    }
    config.tabu.validate()?;
    let evaluator = FitnessEvaluator::new(ciphertext, reference, config.weights)?;
    let s = evaluator.alphabet_size();
    let t = &config.tabu;
    let mut rng = ChaCha8Rng::seed_from_u64(config.random_seed);

    let mut current = frequency_aligned_key(ciphertext, reference);
    let mut current_cost = evaluator.cost(&current);
    let mut best = current.clone();
    let mut best_cost = current_cost;
    let mut trace = vec![TracePoint {
        iteration: 0,
        best_fitness: best_cost,
    }];

    let mut tabu_list: VecDeque<(usize, usize)> = VecDeque::with_capacity(t.tabu_list_size + 1);

    for iteration in 1..=t.max_iterations {
        // best admissible sampled move: not tabu, or tabu but beating the
        // best key seen so far (aspiration)
        let mut chosen: Option<(f64, (usize, usize), SubstitutionKey)> = None;
        for _ in 0..t.neighborhood_samples {
            let (i, j) = random_pair(s, &mut rng);
            let pair = (i.min(j), i.max(j));
            current.swap(i, j);
            let cost = evaluator.cost(&current);
            let is_tabu = tabu_list.contains(&pair);
            let admissible = !is_tabu || cost < best_cost;
            if admissible {
                let take = match &chosen {
                    None => true,
                    Some((bc, _, bk)) => {
                        cost < *bc || (cost == *bc && current.mapping() < bk.mapping())
                    }
                };
                if take {
                    debug_assert!(!is_tabu || cost < best_cost, "aspiration rule violated");
                    chosen = Some((cost, pair, current.clone()));
                }
            }
            current.swap(i, j);
        }
        let Some((cost, pair, key)) = chosen else {
            continue; // every sampled move was tabu without aspiration
        };
        current = key;
        current_cost = cost;
        if t.tabu_list_size > 0 {
            tabu_list.push_back(pair);
            while tabu_list.len() > t.tabu_list_size {
                tabu_list.pop_front();
            }
        }
        if current_cost < best_cost {
            best.clone_from(&current);
            best_cost = current_cost;
            trace.push(TracePoint {
                iteration: iteration as u64,
                best_fitness: best_cost,
            });
        }
    }

    Ok(AttackResult {
        plaintext: substitution_decrypt(ciphertext, &best),
        best_key: RecoveredKey::Substitution(best),
        best_fitness: best_cost,
        iterations: t.max_iterations as u64,
        trace,
    })
}
