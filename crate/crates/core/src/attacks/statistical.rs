//! The statistical attack: exhaustive shift search, or frequency-rank
//! alignment followed by greedy best-improvement swaps for substitution
//! keys. Fully deterministic; no randomness is involved.

use crate::ciphers::{shift_decrypt, substitution_decrypt, ShiftKey, SubstitutionKey};
use crate::error::{Error, Result};
use crate::langstats::NgramStatistics;
use crate::text::NormalizedText;

use super::fitness::FitnessEvaluator;
use super::{
    frequency_aligned_key, AttackConfig, AttackResult, RecoveredKey, StatisticalMode, TracePoint,
};

pub fn statistical_attack(
    ciphertext: &NormalizedText,
    reference: &NgramStatistics,
    config: &AttackConfig,
    mode: StatisticalMode,
) -> Result<AttackResult> {
    if ciphertext.is_empty() {
        return Err(Error::EmptyText("ciphertext".into()));
    }
    let evaluator = FitnessEvaluator::new(ciphertext, reference, config.weights)?;
    match mode {
        StatisticalMode::Shift => shift_exhaustive(ciphertext, &evaluator),
        StatisticalMode::Substitution => substitution_greedy(ciphertext, reference, &evaluator),
    }
}

/// Evaluates all alphabet-size shift keys; ties break toward the lower
/// offset, whose rotation key is also the lexicographically smaller one.
fn shift_exhaustive(
    ciphertext: &NormalizedText,
    evaluator: &FitnessEvaluator,
) -> Result<AttackResult> {
    let s = evaluator.alphabet_size();
    let mut best_offset = 0u8;
    let mut best_cost = f64::INFINITY;
    let mut trace = Vec::with_capacity(s);
    for offset in 0..s {
        let cost = evaluator.cost(&SubstitutionKey::rotation(s, offset as u8));
        if cost < best_cost {
            best_cost = cost;
            best_offset = offset as u8;
        }
        trace.push(TracePoint {
            iteration: offset as u64,
            best_fitness: best_cost,
        });
    }
    let key = ShiftKey::new(best_offset as i64, ciphertext.alphabet());
    Ok(AttackResult {
        plaintext: shift_decrypt(ciphertext, &key),
        best_key: RecoveredKey::Shift(key),
        best_fitness: best_cost,
        iterations: s as u64,
        trace,
    })
}

/// Greedy phase: apply the pairwise swap that lowers the cost the most,
/// repeat until no swap lowers it. Equal-cost candidates resolve to the
/// lexicographically smallest key mapping, keeping the search deterministic.
fn substitution_greedy(
    ciphertext: &NormalizedText,
    reference: &NgramStatistics,
    evaluator: &FitnessEvaluator,
) -> Result<AttackResult> {
    let s = evaluator.alphabet_size();
    let mut current = frequency_aligned_key(ciphertext, reference);
    let mut current_cost = evaluator.cost(&current);
    let mut trace = vec![TracePoint {
        iteration: 0,
        best_fitness: current_cost,
    }];
    let mut rounds = 0u64;
    loop {
        let mut best: Option<(f64, (usize, usize), SubstitutionKey)> = None;
        for i in 0..s {
            for j in i + 1..s {
                current.swap(i, j);
                let cost = evaluator.cost(&current);
                if cost < current_cost {
                    let take = match &best {
                        None => true,
                        Some((bc, _, bk)) => {
                            cost < *bc || (cost == *bc && current.mapping() < bk.mapping())
                        }
                    };
                    if take {
                        best = Some((cost, (i, j), current.clone()));
                    }
                }
                current.swap(i, j);
            }
        }
        match best {
            Some((cost, (i, j), _)) => {
                current.swap(i, j);
                current_cost = cost;
                rounds += 1;
                trace.push(TracePoint {
                    iteration: rounds,
                    best_fitness: current_cost,
                });
            }
            None => break,
        }
    }
    Ok(AttackResult {
        plaintext: substitution_decrypt(ciphertext, &current),
        best_key: RecoveredKey::Substitution(current),
        best_fitness: current_cost,
        iterations: rounds,
        trace,
    })
}
