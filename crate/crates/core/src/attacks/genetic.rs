//! Genetic algorithm over substitution keys: tournament selection, cycle
//! crossover (which preserves permutations by construction), single-swap
//! mutation and elitism.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ciphers::{substitution_decrypt, SubstitutionKey};
use crate::error::{Error, Result};
use crate::langstats::NgramStatistics;
use crate::text::NormalizedText;

use super::annealing::random_pair;
use super::fitness::FitnessEvaluator;
use super::{frequency_aligned_key, AttackConfig, AttackResult, RecoveredKey, TracePoint};

const TOURNAMENT_SIZE: usize = 3;

pub fn genetic_attack(
    ciphertext: &NormalizedText,
    reference: &NgramStatistics,
    config: &AttackConfig,
) -> Result<AttackResult> {
    if ciphertext.is_empty() {
        return Err(Error::EmptyText("ciphertext".into()));
    }
    config.genetic.validate()?;
    let evaluator = FitnessEvaluator::new(ciphertext, reference, config.weights)?;
    let s = evaluator.alphabet_size();
    let g = &config.genetic;
    let mut rng = ChaCha8Rng::seed_from_u64(config.random_seed);

    // Population of (cost, key), kept sorted ascending by (cost, mapping) so
    // elitism and selection are fully deterministic.
    let mut population: Vec<(f64, SubstitutionKey)> = Vec::with_capacity(g.population_size);
    let seeded = frequency_aligned_key(ciphertext, reference);
    population.push((evaluator.cost(&seeded), seeded));
    while population.len() < g.population_size {
        let key = SubstitutionKey::random(s, &mut rng);
        population.push((evaluator.cost(&key), key));
    }
    sort_population(&mut population);

    let mut best = population[0].clone();
    let mut trace = vec![TracePoint {
        iteration: 0,
        best_fitness: best.0,
    }];

    for generation in 1..=g.generations {
        let mut next: Vec<(f64, SubstitutionKey)> = population[..g.elite_count].to_vec();
        while next.len() < g.population_size {
            let a = tournament(&population, &mut rng);
            let b = tournament(&population, &mut rng);
            let (mut child1, mut child2) = if rng.random::<f64>() < g.crossover_rate {
                cycle_crossover(a, b)
            } else {
                (a.clone(), b.clone())
            };
            mutate(&mut child1, g.mutation_rate, &mut rng);
            mutate(&mut child2, g.mutation_rate, &mut rng);
            debug_assert!(child1.is_permutation() && child2.is_permutation());
            next.push((evaluator.cost(&child1), child1));
            if next.len() < g.population_size {
                next.push((evaluator.cost(&child2), child2));
            }
        }
        population = next;
        sort_population(&mut population);
        if population[0].0 < best.0 {
            best = population[0].clone();
            trace.push(TracePoint {
                iteration: generation as u64,
                best_fitness: best.0,
            });
        }
    }

    Ok(AttackResult {
        plaintext: substitution_decrypt(ciphertext, &best.1),
        best_key: RecoveredKey::Substitution(best.1),
        best_fitness: best.0,
        iterations: g.generations as u64,
        trace,
    })
}

fn sort_population(population: &mut [(f64, SubstitutionKey)]) {
    population.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then_with(|| a.1.mapping().cmp(b.1.mapping()))
    });
}

fn tournament<'a, R: Rng>(
    population: &'a [(f64, SubstitutionKey)],
    rng: &mut R,
) -> &'a SubstitutionKey {
    let mut winner = &population[rng.random_range(0..population.len())];
    for _ in 1..TOURNAMENT_SIZE {
        let challenger = &population[rng.random_range(0..population.len())];
        if challenger.0 < winner.0
            || (challenger.0 == winner.0 && challenger.1.mapping() < winner.1.mapping())
        {
            winner = challenger;
        }
    }
    &winner.1
}

fn mutate<R: Rng>(key: &mut SubstitutionKey, rate: f64, rng: &mut R) {
    if rng.random::<f64>() < rate {
        let (i, j) = random_pair(key.size(), rng);
        key.swap(i, j);
    }
}

/// Cycle crossover: positions are partitioned into the cycles of the
/// permutation `position -> where parent A's value sits in parent B`;
/// children inherit alternating cycles. Within a cycle both parents carry
/// the same value set, so each child is again a permutation.
pub(crate) fn cycle_crossover(
    a: &SubstitutionKey,
    b: &SubstitutionKey,
) -> (SubstitutionKey, SubstitutionKey) {
    let n = a.size();
    debug_assert_eq!(n, b.size());
    let am = a.mapping();
    let bm = b.mapping();
    let mut pos_in_a = vec![0usize; n];
    for (i, &v) in am.iter().enumerate() {
        pos_in_a[v as usize] = i;
    }
    let mut child1 = vec![0u8; n];
    let mut child2 = vec![0u8; n];
    let mut visited = vec![false; n];
    let mut keep = true;
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut i = start;
        loop {
            visited[i] = true;
            if keep {
                child1[i] = am[i];
                child2[i] = bm[i];
            } else {
                child1[i] = bm[i];
                child2[i] = am[i];
            }
            i = pos_in_a[bm[i] as usize];
            if i == start {
                break;
            }
        }
        keep = !keep;
    }
    (
        SubstitutionKey::from_mapping(child1).expect("cycle crossover preserves permutations"),
        SubstitutionKey::from_mapping(child2).expect("cycle crossover preserves permutations"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ciphers::substitution_encrypt;
    use crate::text::{normalize, Alphabet, NormalizePolicy};

    const TRAINING: &str = "WE THE PEOPLE OF THE UNITED STATES IN ORDER TO FORM A MORE \
        PERFECT UNION ESTABLISH JUSTICE INSURE DOMESTIC TRANQUILITY PROVIDE FOR THE COMMON \
        DEFENCE PROMOTE THE GENERAL WELFARE AND SECURE THE BLESSINGS OF LIBERTY TO OURSELVES \
        AND OUR POSTERITY DO ORDAIN AND ESTABLISH THIS CONSTITUTION";

    #[test]
    fn crossover_always_yields_valid_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100_000 {
            let a = SubstitutionKey::random(26, &mut rng);
            let b = SubstitutionKey::random(26, &mut rng);
            let (c1, c2) = cycle_crossover(&a, &b);
            assert!(c1.is_permutation());
            assert!(c2.is_permutation());
        }
    }

    #[test]
    fn crossover_of_identical_parents_reproduces_them() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = SubstitutionKey::random(26, &mut rng);
        let (c1, c2) = cycle_crossover(&a, &a);
        assert_eq!(c1, a);
        assert_eq!(c2, a);
    }

    #[test]
    fn full_elitism_freezes_the_population() {
        let alphabet = Alphabet::english();
        let reference = NgramStatistics::build(TRAINING, &alphabet);
        let plain = normalize(TRAINING, &alphabet, NormalizePolicy::Strip).unwrap();
        let key =
            SubstitutionKey::from_key_string("LKJHGFDSAQWERTYUIOPMNBVCXZ", &alphabet).unwrap();
        let cipher = substitution_encrypt(&plain, &key);
        let mut config = AttackConfig::default();
        config.genetic.population_size = 10;
        config.genetic.elite_count = 10;
        config.genetic.generations = 40;
        let result = genetic_attack(&cipher, &reference, &config).unwrap();
        // after generation 1 nothing can change, so the only possible trace
        // entry is the initial one
        assert_eq!(result.trace.len(), 1);
    }

    #[test]
    fn same_seed_gives_identical_results() {
        let alphabet = Alphabet::english();
        let reference = NgramStatistics::build(TRAINING, &alphabet);
        let plain = normalize(TRAINING, &alphabet, NormalizePolicy::Strip).unwrap();
        let key =
            SubstitutionKey::from_key_string("MNBVCXZLKJHGFDSAPOIUYTREWQ", &alphabet).unwrap();
        let cipher = substitution_encrypt(&plain, &key);
        let mut config = AttackConfig::default();
        config.genetic.population_size = 20;
        config.genetic.generations = 15;
        config.random_seed = 42;
        let a = genetic_attack(&cipher, &reference, &config).unwrap();
        let b = genetic_attack(&cipher, &reference, &config).unwrap();
        assert_eq!(a.best_key, b.best_key);
        assert_eq!(a.trace, b.trace);
    }

    #[test]
    fn elite_count_larger_than_population_is_rejected() {
        let alphabet = Alphabet::english();
        let reference = NgramStatistics::build(TRAINING, &alphabet);
        let cipher = normalize("ABCDEF", &alphabet, NormalizePolicy::Strip).unwrap();
        let mut config = AttackConfig::default();
        config.genetic.population_size = 4;
        config.genetic.elite_count = 5;
        assert!(genetic_attack(&cipher, &reference, &config).is_err());
    }
}
