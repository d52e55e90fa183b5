//! Ciphertext-only attacks on shift and substitution ciphers, driven by
//! n-gram fitness against trained language statistics.
//!
//! All four attacks share the same contract: lower fitness is better, the
//! reported best fitness equals a from-scratch recomputation for the
//! returned key, and identical (input, config, seed) yields identical
//! results.

mod annealing;
mod fitness;
mod genetic;
mod statistical;
mod tabu;

use std::io::{Read, Write};

pub use annealing::simulated_annealing_attack;
pub use fitness::{fitness, FitnessEvaluator};
pub use genetic::genetic_attack;
pub use statistical::statistical_attack;
pub use tabu::tabu_attack;

use crate::ciphers::{ShiftKey, SubstitutionKey};
use crate::error::{Error, Result};
use crate::langstats::NgramStatistics;
use crate::text::{normalize, NormalizePolicy, NormalizedText};

/// Non-negative weights of the unigram, bigram and trigram fitness terms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FitnessWeights {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl FitnessWeights {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let w = Self { alpha, beta, gamma };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.alpha, self.beta, self.gamma];
        if all.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidConfig(
                "fitness weights must be finite and non-negative".into(),
            ));
        }
        if all.iter().sum::<f64>() <= 0.0 {
            return Err(Error::InvalidConfig(
                "at least one fitness weight must be positive".into(),
            ));
        }
        Ok(())
    }
}

impl Default for FitnessWeights {
    /// Trigram and bigram terms dominate: unigram frequencies survive any
    /// permutation and carry little ordering information on their own.
    fn default() -> Self {
        Self {
            alpha: 0.1,
            beta: 0.5,
            gamma: 0.4,
        }
    }
}

/// Simulated-annealing hyperparameters.
#[derive(Clone, Debug)]
pub struct AnnealingConfig {
    /// Starting temperature. `None` self-calibrates to the standard
    /// deviation of 100 random-neighbor cost deltas.
    pub initial_temperature: Option<f64>,
    /// Geometric cooling factor, strictly between 0 and 1.
    pub cooling_factor: f64,
    /// Neighbor moves per temperature step. `None` means 100 x alphabet size.
    pub inner_iterations: Option<usize>,
    /// Relative floor: cooling stops once T drops below
    /// `min_temperature x initial temperature`, which keeps the schedule
    /// invariant under rescaling of the fitness weights.
    pub min_temperature: f64,
}

impl Default for AnnealingConfig {
    fn default() -> Self {
        Self {
            initial_temperature: None,
            cooling_factor: 0.97,
            inner_iterations: None,
            min_temperature: 1e-4,
        }
    }
}

impl AnnealingConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.cooling_factor > 0.0 && self.cooling_factor < 1.0) {
            return Err(Error::InvalidConfig(
                "cooling factor must lie strictly between 0 and 1".into(),
            ));
        }
        if !(self.min_temperature > 0.0 && self.min_temperature < 1.0) {
            return Err(Error::InvalidConfig(
                "minimum temperature must lie strictly between 0 and 1".into(),
            ));
        }
        if let Some(t) = self.initial_temperature {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::InvalidConfig(
                    "initial temperature must be positive".into(),
                ));
            }
        }
        if self.inner_iterations == Some(0) {
            return Err(Error::InvalidConfig(
                "inner iterations must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Genetic-algorithm hyperparameters.
#[derive(Clone, Debug)]
pub struct GeneticConfig {
    pub population_size: usize,
    pub generations: usize,
    /// Probability that a selected pair undergoes cycle crossover.
    pub crossover_rate: f64,
    /// Probability that a child receives one random swap.
    pub mutation_rate: f64,
    /// Individuals copied unchanged into the next generation.
    pub elite_count: usize,
}

impl Default for GeneticConfig {
    fn default() -> Self {
        Self {
            population_size: 80,
            generations: 300,
            crossover_rate: 0.85,
            mutation_rate: 0.4,
            elite_count: 2,
        }
    }
}

impl GeneticConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size == 0 || self.generations == 0 {
            return Err(Error::InvalidConfig(
                "population size and generation count must be positive".into(),
            ));
        }
        if self.elite_count > self.population_size {
            return Err(Error::InvalidConfig(
                "elite count cannot exceed the population size".into(),
            ));
        }
        for (name, rate) in [
            ("crossover rate", self.crossover_rate),
            ("mutation rate", self.mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&rate) {
                return Err(Error::InvalidConfig(format!("{name} must lie in [0, 1]")));
            }
        }
        Ok(())
    }
}

/// Tabu-search hyperparameters.
#[derive(Clone, Debug)]
pub struct TabuConfig {
    /// FIFO memory of forbidden swap pairs. Zero reduces the search to
    /// sampled steepest descent.
    pub tabu_list_size: usize,
    pub neighborhood_samples: usize,
    pub max_iterations: usize,
}

impl Default for TabuConfig {
    fn default() -> Self {
        Self {
            tabu_list_size: 50,
            neighborhood_samples: 200,
            max_iterations: 400,
        }
    }
}

impl TabuConfig {
    pub fn validate(&self) -> Result<()> {
        if self.neighborhood_samples == 0 || self.max_iterations == 0 {
            return Err(Error::InvalidConfig(
                "neighborhood samples and iteration count must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Shared attack configuration. Every attack is deterministic given
/// `random_seed` and otherwise identical inputs.
#[derive(Clone, Debug, Default)]
pub struct AttackConfig {
    pub weights: FitnessWeights,
    pub annealing: AnnealingConfig,
    pub genetic: GeneticConfig,
    pub tabu: TabuConfig,
    pub random_seed: u64,
}

/// Key search mode of the statistical attack.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StatisticalMode {
    /// Exhaustive evaluation of every shift key.
    Shift,
    /// Frequency-rank initial key, then greedy best-improvement swaps.
    Substitution,
}

/// Attack selector used by [`analyze`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Attack {
    Statistical(StatisticalMode),
    SimulatedAnnealing,
    Genetic,
    Tabu,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RecoveredKey {
    Shift(ShiftKey),
    Substitution(SubstitutionKey),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TracePoint {
    pub iteration: u64,
    pub best_fitness: f64,
}

/// Outcome of a single attack run.
#[derive(Clone, Debug)]
pub struct AttackResult {
    pub best_key: RecoveredKey,
    pub plaintext: NormalizedText,
    pub best_fitness: f64,
    pub iterations: u64,
    /// Best fitness each time it improved; non-increasing by construction.
    pub trace: Vec<TracePoint>,
}

impl AttackResult {
    /// Trace rendered as `iteration,bestFitness` CSV lines.
    pub fn trace_csv(&self) -> String {
        let mut out = String::new();
        for p in &self.trace {
            out.push_str(&format!("{},{}\n", p.iteration, p.best_fitness));
        }
        out
    }
}

/// Aligns ciphertext symbols to reference symbols by frequency rank: the
/// most frequent ciphertext symbol decrypts to the most frequent reference
/// symbol, and so on. Ties break toward the lower alphabet index.
pub(crate) fn frequency_aligned_key(
    ciphertext: &NormalizedText,
    reference: &NgramStatistics,
) -> SubstitutionKey {
    let s = reference.alphabet().len();
    let mut cipher_counts = vec![0u64; s];
    for &i in ciphertext.indices() {
        cipher_counts[i as usize] += 1;
    }
    let by_rank = |counts: &dyn Fn(usize) -> u64| -> Vec<usize> {
        let mut order: Vec<usize> = (0..s).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(counts(i)), i));
        order
    };
    let cipher_rank = by_rank(&|i| cipher_counts[i]);
    let ref_rank = by_rank(&|i| reference.unigram_count(i as u8));
    let mut mapping = vec![0u8; s];
    for r in 0..s {
        // plain symbol ref_rank[r] encrypts to cipher symbol cipher_rank[r]
        mapping[ref_rank[r]] = cipher_rank[r] as u8;
    }
    SubstitutionKey::from_mapping(mapping).expect("rank alignment is a bijection")
}

/// Uniform attack runner: reads ciphertext from `input`, recovers a key with
/// the selected attack and writes the recovered plaintext to `output`.
///
/// The reference statistics must already be restored from disk and trained.
pub fn analyze<R: Read + ?Sized, W: Write + ?Sized>(
    attack: Attack,
    input: &mut R,
    output: &mut W,
    reference: &NgramStatistics,
    config: &AttackConfig,
) -> Result<AttackResult> {
    let mut raw = Vec::new();
    input.read_to_end(&mut raw)?;
    let text = String::from_utf8_lossy(&raw);
    let ciphertext = normalize(&text, reference.alphabet(), NormalizePolicy::Strip)?;
    let result = match attack {
        Attack::Statistical(mode) => statistical_attack(&ciphertext, reference, config, mode)?,
        Attack::SimulatedAnnealing => simulated_annealing_attack(&ciphertext, reference, config)?,
        Attack::Genetic => genetic_attack(&ciphertext, reference, config)?,
        Attack::Tabu => tabu_attack(&ciphertext, reference, config)?,
    };
    writeln!(output, "{}", result.plaintext)?;
    Ok(result)
}
