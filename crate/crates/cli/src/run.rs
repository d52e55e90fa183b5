//! Dispatches a parsed invocation plan to the library.

use std::fmt;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use cipherlab::attacks::{analyze, Attack, AttackConfig, FitnessWeights, StatisticalMode};
use cipherlab::ciphers::{
    shift_decrypt, shift_encrypt, spn_decrypt, spn_encrypt, substitution_decrypt,
    substitution_encrypt, ShiftKey, SpnKey, SpnParameters, SubstitutionKey,
};
use cipherlab::langstats::NgramStatistics;
use cipherlab::matchedness::compute_matchedness;
use cipherlab::segmentation::{Dictionary, SpaceTrigramModel};
use cipherlab::{normalize, Alphabet, NormalizePolicy};

use crate::options::{usage, version, AttackFlag};
use crate::options::{CipherFlag, InvocationPlan, Mode, StatsModule, UsageError};

pub const LANGUAGE_MODEL_FILE: &str = "LanguageStatistics.gzbin";
pub const DICTIONARY_MODEL_FILE: &str = "Dictionary.gzbin";
pub const TRIGRAM_MODEL_FILE: &str = "SpaceTrigramModel.gzbin";

/// Key used by `-spn` when no KEY argument is given.
pub const DEFAULT_SPN_KEY: u32 = 0x3A94D63F;

pub const DEFAULT_NGRAM_THRESHOLD: f64 = 0.5;

#[derive(Debug)]
pub enum CliError {
    Usage(UsageError),
    Failure(String),
    /// The read end of standard output went away; exit quietly.
    BrokenPipe,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(e) => write!(f, "{e}"),
            CliError::Failure(msg) => write!(f, "{msg}"),
            CliError::BrokenPipe => write!(f, "broken pipe"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<UsageError> for CliError {
    fn from(e: UsageError) -> Self {
        CliError::Usage(e)
    }
}

impl From<cipherlab::Error> for CliError {
    fn from(e: cipherlab::Error) -> Self {
        match e {
            cipherlab::Error::Io(io) if io.kind() == std::io::ErrorKind::BrokenPipe => {
                CliError::BrokenPipe
            }
            other => CliError::Failure(other.to_string()),
        }
    }
}

fn failure(msg: impl Into<String>) -> CliError {
    CliError::Failure(msg.into())
}

/// Runs a plan against the real standard streams.
pub fn run(plan: &InvocationPlan) -> Result<(), CliError> {
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    run_with(plan, &mut stdin.lock(), &mut stdout.lock())
}

/// Runs a plan with caller-supplied standard streams; files named in the
/// plan are opened directly. Never writes to an input file.
pub fn run_with(
    plan: &InvocationPlan,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    match plan.mode {
        Mode::Help => {
            write!(stdout, "{}", usage()).map_err(io_failure)?;
            Ok(())
        }
        Mode::Version => {
            writeln!(stdout, "{}", version()).map_err(io_failure)?;
            Ok(())
        }
        Mode::Analyze if plan.parse => run_parse(plan, stdin, stdout),
        Mode::Analyze => run_analyze(plan, stdin, stdout),
        Mode::Encrypt | Mode::Decrypt => run_cipher(plan, stdin, stdout),
        Mode::Train => run_train(plan, stdin, stdout),
        Mode::CheckMatch => run_checkmatch(plan, stdout),
    }
}

fn io_failure(e: std::io::Error) -> CliError {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        CliError::BrokenPipe
    } else {
        failure(format!("i/o error: {e}"))
    }
}

fn read_input(plan: &InvocationPlan, stdin: &mut dyn Read) -> Result<Vec<u8>, CliError> {
    match &plan.input_path {
        Some(path) => {
            fs::read(path).map_err(|e| failure(format!("cannot read input file {path}: {e}")))
        }
        None => {
            let mut buf = Vec::new();
            stdin
                .read_to_end(&mut buf)
                .map_err(|e| failure(format!("cannot read standard input: {e}")))?;
            Ok(buf)
        }
    }
}

fn read_input_text(plan: &InvocationPlan, stdin: &mut dyn Read) -> Result<String, CliError> {
    Ok(String::from_utf8_lossy(&read_input(plan, stdin)?).into_owned())
}

/// Delivers output bytes to the target file when one is given, otherwise to
/// standard output. Refuses to overwrite the input file.
fn deliver(plan: &InvocationPlan, stdout: &mut dyn Write, bytes: &[u8]) -> Result<(), CliError> {
    match &plan.target_path {
        Some(path) => {
            ensure_not_input(plan, path)?;
            fs::write(path, bytes)
                .map_err(|e| failure(format!("cannot write target file {path}: {e}")))
        }
        None => {
            stdout.write_all(bytes).map_err(io_failure)?;
            stdout.flush().map_err(io_failure)
        }
    }
}

fn ensure_not_input(plan: &InvocationPlan, path: &str) -> Result<(), CliError> {
    if plan.input_path.as_deref() == Some(path) {
        return Err(failure(format!(
            "{path} is the input file; refusing to overwrite it"
        )));
    }
    Ok(())
}

fn restore_language_model(plan: &InvocationPlan) -> Result<NgramStatistics, CliError> {
    let path = plan.model_path.as_deref().unwrap_or(LANGUAGE_MODEL_FILE);
    NgramStatistics::restore(Path::new(path)).map_err(|e| {
        failure(format!(
            "cannot restore the language model at {path}: {e}\n\
             train it first: cipherlab --train -lang CORPUSFILE"
        ))
    })
}

fn attack_config(plan: &InvocationPlan) -> Result<AttackConfig, CliError> {
    let mut config = AttackConfig::default();
    if let Some(seed) = plan.seed {
        config.random_seed = seed;
    }
    if let Some((a, b, g)) = plan.weights {
        config.weights = FitnessWeights::new(a, b, g)?;
    }
    Ok(config)
}

fn run_analyze(
    plan: &InvocationPlan,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let reference = restore_language_model(plan)?;
    let config = attack_config(plan)?;
    // under --analyze the cipher flag selects the statistical attack's mode
    let statistical_mode = match plan.cipher {
        Some(CipherFlag::Shift) => StatisticalMode::Shift,
        Some(CipherFlag::Spn) => {
            return Err(failure("no attack is implemented for the SPN cipher"))
        }
        Some(CipherFlag::Subst) | None => StatisticalMode::Substitution,
    };
    let attack = match plan.attack.unwrap_or(AttackFlag::Stats) {
        AttackFlag::Stats => Attack::Statistical(statistical_mode),
        AttackFlag::Anneal => Attack::SimulatedAnnealing,
        AttackFlag::Genetic => Attack::Genetic,
        AttackFlag::Tabu => Attack::Tabu,
    };

    let raw = read_input(plan, stdin)?;
    let result = analyze(attack, &mut raw.as_slice(), stdout, &reference, &config)?;

    if let Some(trace_path) = &plan.trace_path {
        ensure_not_input(plan, trace_path)?;
        fs::write(trace_path, result.trace_csv())
            .map_err(|e| failure(format!("cannot write trace file {trace_path}: {e}")))?;
    }
    if plan.debug {
        let alphabet = reference.alphabet();
        let key = match &result.best_key {
            cipherlab::attacks::RecoveredKey::Shift(k) => format!("shift {}", k.offset()),
            cipherlab::attacks::RecoveredKey::Substitution(k) => k.key_string(alphabet),
        };
        eprintln!(
            "recovered key: {key}  fitness: {}  iterations: {}",
            result.best_fitness, result.iterations
        );
    }
    Ok(())
}

fn run_parse(
    plan: &InvocationPlan,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let alphabet = Alphabet::english();
    let text = read_input_text(plan, stdin)?;
    let stream = normalize(&text, &alphabet, NormalizePolicy::Strip)?;
    let rendered = match plan.stats_module {
        Some(StatsModule::Ngram) => {
            let path = plan.model_path.as_deref().unwrap_or(TRIGRAM_MODEL_FILE);
            let model = SpaceTrigramModel::restore(Path::new(path)).map_err(|e| {
                failure(format!(
                    "cannot restore the space model at {path}: {e}\n\
                     train it first: cipherlab --train -ngram CORPUSFILE"
                ))
            })?;
            let threshold = plan.threshold.unwrap_or(DEFAULT_NGRAM_THRESHOLD);
            model.parse(&stream, threshold)?.apply(&stream)
        }
        _ => {
            let path = plan.model_path.as_deref().unwrap_or(DICTIONARY_MODEL_FILE);
            let dict = Dictionary::restore(Path::new(path)).map_err(|e| {
                failure(format!(
                    "cannot restore the dictionary at {path}: {e}\n\
                     train it first: cipherlab --train -dict CORPUSFILE"
                ))
            })?;
            dict.parse(&stream).apply(&stream)
        }
    };
    writeln!(stdout, "{rendered}").map_err(io_failure)
}

fn run_cipher(
    plan: &InvocationPlan,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let alphabet = Alphabet::english();
    let encrypting = plan.mode == Mode::Encrypt;
    match plan.cipher.unwrap_or(CipherFlag::Shift) {
        CipherFlag::Shift => {
            let key_str = plan
                .key
                .as_deref()
                .ok_or_else(|| failure("the shift cipher needs an integer KEY argument"))?;
            let offset: i64 = key_str
                .trim()
                .parse()
                .map_err(|_| failure(format!("shift key must be an integer, got {key_str:?}")))?;
            let key = ShiftKey::new(offset, &alphabet);
            let text = read_input_text(plan, stdin)?;
            let stream = normalize(&text, &alphabet, NormalizePolicy::Strip)?;
            let out = if encrypting {
                shift_encrypt(&stream, &key)
            } else {
                shift_decrypt(&stream, &key)
            };
            deliver(plan, stdout, format!("{out}\n").as_bytes())
        }
        CipherFlag::Subst => {
            let key_str = plan
                .key
                .as_deref()
                .ok_or_else(|| failure("the substitution cipher needs a 26-letter KEY argument"))?;
            let key = SubstitutionKey::from_key_string(key_str, &alphabet)?;
            let text = read_input_text(plan, stdin)?;
            let stream = normalize(&text, &alphabet, NormalizePolicy::Strip)?;
            let out = if encrypting {
                substitution_encrypt(&stream, &key)
            } else {
                substitution_decrypt(&stream, &key)
            };
            deliver(plan, stdout, format!("{out}\n").as_bytes())
        }
        CipherFlag::Spn => {
            let key = match plan.key.as_deref() {
                Some(hex) => SpnKey::from_hex(hex.trim())?,
                None => SpnKey::new(DEFAULT_SPN_KEY),
            };
            let params = SpnParameters::default();
            let data = read_input(plan, stdin)?;
            let out = if encrypting {
                spn_encrypt(&data, &key, &params)
            } else {
                spn_decrypt(&data, &key, &params)?
            };
            deliver(plan, stdout, &out)
        }
    }
}

fn run_train(
    plan: &InvocationPlan,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let alphabet = Alphabet::english();
    let corpus = read_input_text(plan, stdin)?;
    match plan.stats_module.expect("parser guarantees a module") {
        StatsModule::Lang => {
            let path = plan.model_path.as_deref().unwrap_or(LANGUAGE_MODEL_FILE);
            ensure_not_input(plan, path)?;
            let stats = NgramStatistics::build(&corpus, &alphabet);
            stats.dump(Path::new(path))?;
            write!(stdout, "{stats}").map_err(io_failure)?;
            writeln!(stdout, "model written to {path}").map_err(io_failure)
        }
        StatsModule::Dict => {
            let path = plan.model_path.as_deref().unwrap_or(DICTIONARY_MODEL_FILE);
            ensure_not_input(plan, path)?;
            let mut dict = Dictionary::new(alphabet);
            dict.train(&corpus);
            dict.dump(Path::new(path))?;
            writeln!(
                stdout,
                "trained dictionary: {} words, longest {}\nmodel written to {path}",
                dict.word_count(),
                dict.max_word_length()
            )
            .map_err(io_failure)
        }
        StatsModule::Ngram => {
            let path = plan.model_path.as_deref().unwrap_or(TRIGRAM_MODEL_FILE);
            ensure_not_input(plan, path)?;
            let mut model = SpaceTrigramModel::new(alphabet);
            model.train(&corpus);
            model.dump(Path::new(path))?;
            writeln!(
                stdout,
                "trained space trigram model over {} symbols\nmodel written to {path}",
                model.alphabet().len()
            )
            .map_err(io_failure)
        }
    }
}

fn run_checkmatch(plan: &InvocationPlan, stdout: &mut dyn Write) -> Result<(), CliError> {
    let alphabet = Alphabet::english();
    let input_path = plan.input_path.as_deref().expect("parser requires it");
    let target_path = plan.target_path.as_deref().expect("parser requires it");
    let candidate = fs::read_to_string(input_path)
        .map_err(|e| failure(format!("cannot read input file {input_path}: {e}")))?;
    let reference = fs::read_to_string(target_path)
        .map_err(|e| failure(format!("cannot read target file {target_path}: {e}")))?;
    let report = compute_matchedness(&candidate, &reference, &alphabet)?;

    writeln!(stdout, "{input_path} vs {target_path}").map_err(io_failure)?;
    writeln!(stdout, "\tmatching at : {} %", report.overall * 100.0).map_err(io_failure)?;
    writeln!(stdout, "Statistics for each monogram: ").map_err(io_failure)?;
    for (c, f) in &report.per_monogram {
        writeln!(stdout, "\t{c}: {} %", f * 100.0).map_err(io_failure)?;
    }
    if report.length_mismatch() {
        eprintln!(
            "note: lengths differ (candidate {}, reference {}); compared the common prefix of {}",
            report.candidate_length, report.reference_length, report.compared_length
        );
    }
    Ok(())
}
