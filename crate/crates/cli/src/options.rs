//! Option grammar and positional-argument inference.
//!
//! Flags use the historical single-dash style for selectors (`-stats`,
//! `-shift`, `-lang`) and double dashes for modes. Tokens that are not
//! recognized flags are positionals, resolved by count: one positional is
//! the input file; two are input and key, except under `--checkmatch` where
//! they are the two files to compare; three are input, key and target file.
//! With no recognized options at all the default plan is a statistical
//! analysis of standard input.

use std::fmt;

/// What the invocation is asking for. Exactly one mode per plan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Analyze,
    Encrypt,
    Decrypt,
    Train,
    CheckMatch,
    Help,
    Version,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AttackFlag {
    Stats,
    Anneal,
    Genetic,
    Tabu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CipherFlag {
    Shift,
    Subst,
    Spn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StatsModule {
    Dict,
    Ngram,
    Lang,
}

/// A fully resolved invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct InvocationPlan {
    pub mode: Mode,
    pub attack: Option<AttackFlag>,
    pub cipher: Option<CipherFlag>,
    pub stats_module: Option<StatsModule>,
    pub parse: bool,
    pub debug: bool,
    /// `None` reads standard input.
    pub input_path: Option<String>,
    pub key: Option<String>,
    pub target_path: Option<String>,
    pub model_path: Option<String>,
    pub trace_path: Option<String>,
    pub seed: Option<u64>,
    pub weights: Option<(f64, f64, f64)>,
    pub threshold: Option<f64>,
}

impl InvocationPlan {
    fn new(mode: Mode) -> Self {
        Self {
            mode,
            attack: None,
            cipher: None,
            stats_module: None,
            parse: false,
            debug: false,
            input_path: None,
            key: None,
            target_path: None,
            model_path: None,
            trace_path: None,
            seed: None,
            weights: None,
            threshold: None,
        }
    }

    /// Renders the plan back to an argument vector; re-parsing it yields an
    /// equivalent plan.
    pub fn to_argv(&self) -> Vec<String> {
        let mut argv = Vec::new();
        match self.mode {
            Mode::Help => return vec!["--help".into()],
            Mode::Version => return vec!["--version".into()],
            Mode::Analyze => argv.push("--analyze".into()),
            Mode::Encrypt => argv.push("--encrypt".into()),
            Mode::Decrypt => argv.push("--decrypt".into()),
            Mode::Train => argv.push("--train".into()),
            Mode::CheckMatch => argv.push("--checkmatch".into()),
        }
        if self.parse {
            argv.push("--parse".into());
        }
        match self.attack {
            Some(AttackFlag::Stats) => argv.push("-stats".into()),
            Some(AttackFlag::Anneal) => argv.push("-anneal".into()),
            Some(AttackFlag::Genetic) => argv.push("-genetic".into()),
            Some(AttackFlag::Tabu) => argv.push("-tabu".into()),
            None => {}
        }
        match self.cipher {
            Some(CipherFlag::Shift) => argv.push("-shift".into()),
            Some(CipherFlag::Subst) => argv.push("-subst".into()),
            Some(CipherFlag::Spn) => argv.push("-spn".into()),
            None => {}
        }
        match self.stats_module {
            Some(StatsModule::Dict) => argv.push("-dict".into()),
            Some(StatsModule::Ngram) => argv.push("-ngram".into()),
            Some(StatsModule::Lang) => argv.push("-lang".into()),
            None => {}
        }
        if self.debug {
            argv.push("--debug".into());
        }
        if let Some(seed) = self.seed {
            argv.push("--seed".into());
            argv.push(seed.to_string());
        }
        if let Some((a, b, g)) = self.weights {
            argv.push("--weights".into());
            argv.push(format!("{a},{b},{g}"));
        }
        if let Some(t) = self.threshold {
            argv.push("--threshold".into());
            argv.push(t.to_string());
        }
        if let Some(p) = &self.model_path {
            argv.push("--model".into());
            argv.push(p.clone());
        }
        if let Some(p) = &self.trace_path {
            argv.push("--trace".into());
            argv.push(p.clone());
        }
        if let Some(p) = &self.input_path {
            argv.push(p.clone());
        }
        if let Some(k) = &self.key {
            argv.push(k.clone());
        }
        if let Some(p) = &self.target_path {
            argv.push(p.clone());
        }
        argv
    }
}

/// A rejected argument vector, with the reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage_err<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

/// Parses an argument vector (without the program name) into a plan.
/// Total: every argv yields either a plan or a usage error.
pub fn parse_options(argv: &[String]) -> Result<InvocationPlan, UsageError> {
    // help and version win over everything else, including junk arguments
    if argv.iter().any(|a| a == "-h" || a == "--help") {
        return Ok(InvocationPlan::new(Mode::Help));
    }
    if argv.iter().any(|a| a == "--version") {
        return Ok(InvocationPlan::new(Mode::Version));
    }

    let mut mode: Option<Mode> = None;
    let mut attacks: Vec<AttackFlag> = Vec::new();
    let mut ciphers: Vec<CipherFlag> = Vec::new();
    let mut modules: Vec<StatsModule> = Vec::new();
    let mut parse = false;
    let mut debug = false;
    let mut positionals: Vec<String> = Vec::new();
    let mut model_path = None;
    let mut trace_path = None;
    let mut seed = None;
    let mut weights = None;
    let mut threshold = None;

    let set_mode = |current: &mut Option<Mode>, new: Mode| -> Result<(), UsageError> {
        match current {
            Some(m) if *m != new => usage_err(format!("conflicting modes: {m:?} and {new:?}")),
            _ => {
                *current = Some(new);
                Ok(())
            }
        }
    };

    let mut it = argv.iter();
    while let Some(token) = it.next() {
        let mut value_of = |flag: &str| -> Result<String, UsageError> {
            match it.next() {
                Some(v) => Ok(v.clone()),
                None => usage_err(format!("{flag} needs a value")),
            }
        };
        match token.as_str() {
            "--analyze" => set_mode(&mut mode, Mode::Analyze)?,
            "--encrypt" => set_mode(&mut mode, Mode::Encrypt)?,
            "--decrypt" => set_mode(&mut mode, Mode::Decrypt)?,
            "--train" => set_mode(&mut mode, Mode::Train)?,
            "--checkmatch" => set_mode(&mut mode, Mode::CheckMatch)?,
            "--parse" => parse = true,
            "--debug" => debug = true,
            "-stats" => attacks.push(AttackFlag::Stats),
            "-anneal" => attacks.push(AttackFlag::Anneal),
            "-genetic" => attacks.push(AttackFlag::Genetic),
            "-tabu" => attacks.push(AttackFlag::Tabu),
            "-shift" => ciphers.push(CipherFlag::Shift),
            "-subst" => ciphers.push(CipherFlag::Subst),
            "-spn" => ciphers.push(CipherFlag::Spn),
            "-dict" => modules.push(StatsModule::Dict),
            "-ngram" => modules.push(StatsModule::Ngram),
            "-lang" => modules.push(StatsModule::Lang),
            "--model" => model_path = Some(value_of("--model")?),
            "--trace" => trace_path = Some(value_of("--trace")?),
            "--seed" => {
                let v = value_of("--seed")?;
                seed = Some(
                    v.parse::<u64>()
                        .map_err(|_| UsageError(format!("--seed needs an integer, got {v:?}")))?,
                );
            }
            "--weights" => {
                let v = value_of("--weights")?;
                let parts: Vec<&str> = v.split(',').collect();
                let parsed: Option<Vec<f64>> =
                    parts.iter().map(|p| p.trim().parse::<f64>().ok()).collect();
                match parsed.as_deref() {
                    Some([a, b, g]) if [a, b, g].iter().all(|w| w.is_finite() && **w >= 0.0) => {
                        weights = Some((*a, *b, *g));
                    }
                    _ => {
                        return usage_err(format!(
                            "--weights needs three non-negative numbers a,b,g, got {v:?}"
                        ))
                    }
                }
            }
            "--threshold" => {
                let v = value_of("--threshold")?;
                match v.parse::<f64>() {
                    Ok(t) if (0.0..=1.0).contains(&t) => threshold = Some(t),
                    _ => {
                        return usage_err(format!(
                            "--threshold needs a number in [0, 1], got {v:?}"
                        ))
                    }
                }
            }
            other if other.starts_with('-') && other.len() > 1 => {
                // negative integers are key material, not flags
                if other[1..].chars().all(|c| c.is_ascii_digit()) {
                    positionals.push(other.to_string());
                } else {
                    return usage_err(format!("unknown option {other:?}"));
                }
            }
            other => positionals.push(other.to_string()),
        }
    }

    // Default behavior with no recognized options at all: statistical
    // analysis of standard input (or of the sole positional file).
    let no_selectors = attacks.is_empty() && ciphers.is_empty() && modules.is_empty() && !parse;
    let mode = match mode {
        Some(m) => m,
        None if no_selectors => {
            attacks.push(AttackFlag::Stats);
            Mode::Analyze
        }
        None => {
            return usage_err(
                "no mode given (--analyze, --encrypt, --decrypt, --train or --checkmatch)",
            )
        }
    };

    let mut plan = InvocationPlan::new(mode);
    plan.parse = parse;
    plan.debug = debug;
    plan.model_path = model_path;
    plan.trace_path = trace_path;
    plan.seed = seed;
    plan.weights = weights;
    plan.threshold = threshold;

    // repeated selectors collapse by the historical precedence order
    plan.attack = [
        AttackFlag::Anneal,
        AttackFlag::Tabu,
        AttackFlag::Genetic,
        AttackFlag::Stats,
    ]
    .into_iter()
    .find(|a| attacks.contains(a));
    plan.cipher = [CipherFlag::Spn, CipherFlag::Subst, CipherFlag::Shift]
        .into_iter()
        .find(|c| ciphers.contains(c));
    plan.stats_module = [StatsModule::Lang, StatsModule::Dict, StatsModule::Ngram]
        .into_iter()
        .find(|m| modules.contains(m));

    match positionals.len() {
        0 => {}
        1 => plan.input_path = Some(positionals[0].clone()),
        2 if mode == Mode::CheckMatch => {
            plan.input_path = Some(positionals[0].clone());
            plan.target_path = Some(positionals[1].clone());
        }
        2 => {
            plan.input_path = Some(positionals[0].clone());
            plan.key = Some(positionals[1].clone());
        }
        3 => {
            plan.input_path = Some(positionals[0].clone());
            plan.key = Some(positionals[1].clone());
            plan.target_path = Some(positionals[2].clone());
        }
        n => return usage_err(format!("too many arguments: expected at most 3, got {n}")),
    }

    // selector validity per mode
    match plan.mode {
        Mode::Analyze => {
            if plan.stats_module.is_some() && !plan.parse {
                return usage_err("-dict/-ngram/-lang need --train, or --analyze --parse");
            }
            if plan.stats_module == Some(StatsModule::Lang) {
                return usage_err("--parse works with -dict or -ngram, not -lang");
            }
        }
        Mode::Encrypt | Mode::Decrypt => {
            if plan.attack.is_some() {
                return usage_err("attack selectors only apply to --analyze");
            }
            if plan.stats_module.is_some() {
                return usage_err("-dict/-ngram/-lang only apply to --train");
            }
            if plan.parse {
                return usage_err("--parse only applies to --analyze");
            }
        }
        Mode::Train => {
            if plan.stats_module.is_none() {
                return usage_err("--train needs a module: -lang, -dict or -ngram");
            }
            if plan.attack.is_some() || plan.cipher.is_some() || plan.parse {
                return usage_err("--train takes only a module selector and an input file");
            }
        }
        Mode::CheckMatch => {
            if plan.input_path.is_none() || plan.target_path.is_none() {
                return usage_err("--checkmatch needs two file names");
            }
            if plan.attack.is_some()
                || plan.cipher.is_some()
                || plan.stats_module.is_some()
                || plan.parse
            {
                return usage_err("--checkmatch takes only two file names");
            }
        }
        Mode::Help | Mode::Version => {}
    }

    Ok(plan)
}

pub fn version() -> String {
    format!("cipherlab {}", env!("CARGO_PKG_VERSION"))
}

pub fn usage() -> String {
    format!(
        "{}\nA cryptanalysis toolkit for classical ciphers\n\n\
Usage:\n\n\
   cipherlab --help | -h\n\
       displays usage information\n\n\
   cipherlab --version\n\
       displays version information\n\n\
   cipherlab [ OPTIONS ] [ --debug ]\n\
       does cryptanalysis and cryptography-related tasks\n\n\
Where options are one of the following:\n\n\
   --analyze [ --parse ] [ ATTACK ] [ FILENAME ]\n\
   --encrypt [ CIPHER ] [ FILENAME KEY TARGETFILE ]\n\
   --decrypt [ CIPHER ] [ FILENAME KEY TARGETFILE ]\n\
   --train STATSMODULE [ FILENAME ]\n\
   --checkmatch FILENAME FILENAME\n\n\
Where ATTACK is one or more of the following:\n\n\
   -stats    Statistical N-gram Model Attack\n\
   -genetic  Genetic Algorithm Attack\n\
   -anneal   Simulated Annealing Attack\n\
   -tabu     Tabu Search Attack\n\n\
Where CIPHER is one or more of the following:\n\n\
   -shift    Shift Cipher\n\
   -subst    Substitution Cipher\n\
   -spn      SPN Cipher\n\n\
Where STATSMODULE is one of the following:\n\n\
   -dict     Dictionary-based\n\
   -ngram    Character N-gram based\n\
   -lang     Language N-gram statistics\n\n\
Additional options:\n\n\
   --model PATH      model file to restore or write\n\
                     (defaults: LanguageStatistics.gzbin, Dictionary.gzbin,\n\
                      SpaceTrigramModel.gzbin in the working directory)\n\
   --seed N          random seed for the heuristic attacks (default 0)\n\
   --weights a,b,g   unigram,bigram,trigram fitness weights (default 0.1,0.5,0.4)\n\
   --threshold x     space-insertion threshold for --parse -ngram (default 0.5)\n\
   --trace PATH      write iteration,bestFitness CSV lines for an attack run\n\n\
Notes:\n\n\
   * KEY is a decimal offset for -shift, a 26-letter permutation of the\n\
     alphabet for -subst, and 8 hex digits for -spn (default 3A94D63F).\n\
   * --analyze --parse [ -dict | -ngram ] restores word boundaries in the\n\
     input stream instead of running an attack (-dict is the default).\n\
   * With no options at all, ciphertext is read from standard input and\n\
     attacked with the statistical method.\n",
        version()
    )
}
