//! Regenerates the recovery-quality table: every attack against substitution
//! ciphertexts of several lengths, reporting matchedness against the true
//! plaintext, final fitness and wall-clock time.
//!
//! Usage: `cargo run --release -p cipherlab-bench --bin recovery-table [SEED]`

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cipherlab::attacks::{
    genetic_attack, simulated_annealing_attack, statistical_attack, tabu_attack, AttackConfig,
    StatisticalMode,
};
use cipherlab::ciphers::{substitution_encrypt, SubstitutionKey};
use cipherlab::matchedness::compute_matchedness;
use cipherlab::Alphabet;
use cipherlab_bench::{held_out_slice, reference_statistics, CORPUS_PATH};

fn main() {
    let seed: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("seed must be an integer"))
        .unwrap_or(1);

    let alphabet = Alphabet::english();
    let corpus_bytes = std::fs::metadata(CORPUS_PATH).map(|m| m.len()).unwrap_or(0);
    println!("training corpus: {CORPUS_PATH} ({corpus_bytes} bytes)");
    let reference = reference_statistics();
    println!(
        "reference model: {} letters, {} trigram windows",
        reference.unigram_total(),
        reference.trigram_total()
    );
    println!("key seed: 2025, attack seed: {seed}\n");

    let mut key_rng = ChaCha8Rng::seed_from_u64(2025);
    let true_key = SubstitutionKey::random(26, &mut key_rng);
    let config = AttackConfig {
        random_seed: seed,
        ..Default::default()
    };

    println!(
        "{:<12} {:>7} {:>12} {:>12} {:>10} {:>9}",
        "attack", "length", "matchedness", "fitness", "iters", "time"
    );
    for length in [500usize, 1000, 2000] {
        let plain = held_out_slice(length);
        let cipher = substitution_encrypt(&plain, &true_key);
        type Runner<'a> = Box<dyn Fn() -> cipherlab::Result<cipherlab::attacks::AttackResult> + 'a>;
        let attacks: Vec<(&str, Runner)> = vec![
            (
                "statistical",
                Box::new(|| {
                    statistical_attack(&cipher, &reference, &config, StatisticalMode::Substitution)
                }),
            ),
            (
                "anneal",
                Box::new(|| simulated_annealing_attack(&cipher, &reference, &config)),
            ),
            (
                "genetic",
                Box::new(|| genetic_attack(&cipher, &reference, &config)),
            ),
            (
                "tabu",
                Box::new(|| tabu_attack(&cipher, &reference, &config)),
            ),
        ];
        for (name, run) in attacks {
            let start = Instant::now();
            let result = run().expect("attack run");
            let elapsed = start.elapsed();
            let report =
                compute_matchedness(&result.plaintext.to_string(), &plain.to_string(), &alphabet)
                    .expect("matchedness report");
            println!(
                "{:<12} {:>7} {:>12.4} {:>12.6} {:>10} {:>8.2}s",
                name,
                length,
                report.overall,
                result.best_fitness,
                result.iterations,
                elapsed.as_secs_f64()
            );
        }
        println!();
    }
}
