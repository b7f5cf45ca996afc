//! The `qflow` command line. `main` only forwards to [`run`].

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::channel::{
    dalenius_leakage, deterministic_interactive_capacity, interactive_capacity_pure_bob, min_entropy_capacity,
    min_entropy_leakage, parse_channel_file, ChannelFile,
};
use crate::classifier::{classify_capacity, trim, ClassifyConfig, Verdict};
use crate::error::{Error, Result};
use crate::exact::{format_rational, log2_biguint};
use crate::nfa::{parse_nfa, OrderedNfa};
use crate::random::{random_sdfst, rng};
use crate::reduction::build_observer_nfa;
use crate::transducer::{leakage_bruteforce, parse_transducer, Sdfst};
use crate::width::WidthEngine;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_LINEAR: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INCONSISTENT: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Debug, Parser)]
#[command(name = "qflow", version, about = "Information-flow analysis for deterministic interactive transducers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: Options,
}

#[derive(Debug, Clone, clap::Args)]
struct Options {
    /// Horizon for brute-force leakage.
    #[arg(long, global = true, default_value_t = 2)]
    k: usize,
    /// Largest word length in width tables.
    #[arg(long = "n-max", global = true, default_value_t = 20)]
    n_max: usize,
    /// Maximum number of strategies per party during brute force.
    #[arg(long = "budget-strategies", global = true, default_value_t = 100_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget_strategies: u64,
    /// Maximum number of subset states during determinisation.
    #[arg(long = "budget-states", global = true, default_value_t = 200_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget_states: u64,
    /// Time after which the fit check stops extending its length range.
    #[arg(long = "budget-seconds", global = true, default_value_t = 30.0)]
    budget_seconds: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomised commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a transducer's flow as logarithmic or linear (exit 2 when linear).
    Analyze { path: PathBuf },
    /// Antichain widths per word length of a transducer or NFA.
    Width { path: PathBuf },
    /// Print the trimmed observer automaton of a transducer.
    Reduce { path: PathBuf },
    /// Compare brute-force leakage at horizon k with the width at length 2k.
    Oracle { path: PathBuf },
    /// Leakage measures of a channel, interactive channel or joint distribution.
    Leakage { path: PathBuf },
    /// Run the oracle comparison on random transducers.
    Crosscheck {
        /// Number of random transducers.
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

/// Settings shared by all subcommands.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    pub k: usize,
    pub n_max: usize,
    pub budget_strategies: usize,
    pub budget_states: usize,
    pub budget_seconds: f64,
    pub format: Format,
    pub seed: u64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            k: 2,
            n_max: 20,
            budget_strategies: 100_000,
            budget_states: 200_000,
            budget_seconds: 30.0,
            format: Format::Text,
            seed: 0,
        }
    }
}

impl From<&Options> for AnalysisConfig {
    fn from(o: &Options) -> Self {
        AnalysisConfig {
            k: o.k,
            n_max: o.n_max,
            budget_strategies: usize::try_from(o.budget_strategies).unwrap_or(usize::MAX),
            budget_states: usize::try_from(o.budget_states).unwrap_or(usize::MAX),
            budget_seconds: o.budget_seconds,
            format: o.format,
            seed: o.seed,
        }
    }
}

/// What a command prints and how the process should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            exit: EXIT_OK,
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::ClassificationInconsistent { .. } | Error::WitnessRejected(_) => EXIT_INCONSISTENT,
        _ => EXIT_INPUT,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let exit = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    exit,
                }
            } else {
                Outcome::ok(rendered)
            };
        }
    };
    let config = AnalysisConfig::from(&cli.config);
    if !(config.budget_seconds > 0.0 && config.budget_seconds.is_finite()) {
        return Outcome {
            stdout: String::new(),
            stderr: "error: --budget-seconds must be a positive number\n".into(),
            exit: EXIT_INPUT,
        };
    }
    let result = match &cli.command {
        Command::Analyze { path } => cmd_analyze(path, &config),
        Command::Width { path } => cmd_width(path, &config),
        Command::Reduce { path } => cmd_reduce(path),
        Command::Oracle { path } => cmd_oracle(path, &config),
        Command::Leakage { path } => cmd_leakage(path, &config),
        Command::Crosscheck { count } => cmd_crosscheck(*count, &config),
    };
    result.unwrap_or_else(|(path, e)| Outcome {
        stdout: String::new(),
        stderr: match path {
            Some(p) => format!("error: {}: {e}\n", p.display()),
            None => format!("error: {e}\n"),
        },
        exit: exit_code(&e),
    })
}

type CmdResult = std::result::Result<Outcome, (Option<PathBuf>, Error)>;

fn at(path: &Path) -> impl Fn(Error) -> (Option<PathBuf>, Error) + '_ {
    move |e| (Some(path.to_path_buf()), e)
}

fn read(path: &Path) -> std::result::Result<String, (Option<PathBuf>, Error)> {
    std::fs::read_to_string(path).map_err(|e| (Some(path.to_path_buf()), Error::from(e)))
}

fn header(src: &str) -> &str {
    src.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("")
}

fn observer(t: &Sdfst) -> Result<OrderedNfa> {
    Ok(trim(&build_observer_nfa(t)?))
}

pub fn cmd_analyze(path: &Path, config: &AnalysisConfig) -> CmdResult {
    let t = parse_transducer(&read(path)?).map_err(at(path))?;
    let cfg = ClassifyConfig {
        table_max: config.n_max,
        budget_states: config.budget_states,
        budget_time: Duration::from_secs_f64(config.budget_seconds),
        ..ClassifyConfig::default()
    };
    let report = classify_capacity(&t, &cfg).map_err(at(path))?;
    let stdout = match config.format {
        Format::Text => report.to_text(),
        Format::Records => report.to_records(),
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        exit: match report.verdict {
            Verdict::Linear => EXIT_LINEAR,
            Verdict::Logarithmic(_) => EXIT_OK,
        },
    })
}

fn width_table(rows: &[(usize, BigUint)], format: Format, kind: &str) -> String {
    let mut s = String::new();
    match format {
        Format::Text => {
            s.push_str("n  w(L_=n)\n");
            for (n, w) in rows {
                let _ = writeln!(s, "{n}  {w}");
            }
        }
        Format::Records => {
            let _ = writeln!(s, "format: 1\nkind: {kind}");
            for (n, w) in rows {
                let _ = writeln!(s, "width: {n} {w}");
            }
        }
    }
    s
}

/// Transducers are reduced first and reported at even lengths; NFAs at every length.
pub fn cmd_width(path: &Path, config: &AnalysisConfig) -> CmdResult {
    let src = read(path)?;
    let (a, lengths): (OrderedNfa, Vec<usize>) = if header(&src) == "nfa" {
        (parse_nfa(&src).map_err(at(path))?, (0..=config.n_max).collect())
    } else {
        let t = parse_transducer(&src).map_err(at(path))?;
        (observer(&t).map_err(at(path))?, (2..=config.n_max).step_by(2).collect())
    };
    let mut engine = WidthEngine::new(&a, config.budget_states);
    let rows = lengths
        .into_iter()
        .map(|n| Ok((n, engine.width(n)?)))
        .collect::<Result<Vec<_>>>()
        .map_err(at(path))?;
    Ok(Outcome::ok(width_table(&rows, config.format, "width")))
}

pub fn cmd_reduce(path: &Path) -> CmdResult {
    let t = parse_transducer(&read(path)?).map_err(at(path))?;
    Ok(Outcome::ok(observer(&t).map_err(at(path))?.to_text()))
}

struct OracleRow {
    brute: usize,
    width: BigUint,
}

impl OracleRow {
    fn equal(&self) -> bool {
        BigUint::from(self.brute) == self.width
    }
}

fn oracle_row(t: &Sdfst, k: usize, config: &AnalysisConfig) -> Result<OracleRow> {
    let brute = leakage_bruteforce(t, k, config.budget_strategies)?;
    let width = WidthEngine::new(&observer(t)?, config.budget_states).width(2 * k)?;
    Ok(OracleRow {
        brute: brute.count,
        width,
    })
}

pub fn cmd_oracle(path: &Path, config: &AnalysisConfig) -> CmdResult {
    let t = parse_transducer(&read(path)?).map_err(at(path))?;
    let row = oracle_row(&t, config.k, config).map_err(at(path))?;
    let (bb, wb) = (log2_biguint(&row.brute.into()), log2_biguint(&row.width));
    let verdict = if row.equal() { "equal" } else { "unequal" };
    let stdout = match config.format {
        Format::Text => format!(
            "k = {}\nbrute force: {} observations, {bb:.6} bits\nwidth at n = {}: {}, {wb:.6} bits\n{verdict}\n",
            config.k,
            row.brute,
            2 * config.k,
            row.width
        ),
        Format::Records => format!(
            "format: 1\nkind: oracle\nk: {}\nbruteforce_count: {}\nbruteforce_bits: {bb:.6}\nwidth_n: {}\nwidth: {}\nwidth_bits: {wb:.6}\nresult: {verdict}\n",
            config.k,
            row.brute,
            2 * config.k,
            row.width
        ),
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        exit: if row.equal() { EXIT_OK } else { EXIT_INCONSISTENT },
    })
}

fn push_value(s: &mut String, format: Format, key: &str, value: &str) {
    match format {
        Format::Text => {
            let _ = writeln!(s, "{}: {value}", key.replace('_', " "));
        }
        Format::Records => {
            let _ = writeln!(s, "{key}: {value}");
        }
    }
}

pub fn cmd_leakage(path: &Path, config: &AnalysisConfig) -> CmdResult {
    let file = parse_channel_file(&read(path)?).map_err(at(path))?;
    let f = config.format;
    let mut s = String::new();
    if f == Format::Records {
        s.push_str("format: 1\nkind: leakage\n");
    }
    let bits = |b: f64| format!("{b:.6}");
    match file {
        ChannelFile::Channel { channel, prior } => {
            push_value(&mut s, f, "capacity_bits", &bits(min_entropy_capacity(&channel)));
            if let Some(prior) = prior {
                let l = min_entropy_leakage(&prior, &channel).map_err(at(path))?;
                push_value(&mut s, f, "leakage_bits", &bits(l));
            }
        }
        ChannelFile::Interactive(ch) => {
            let cap = interactive_capacity_pure_bob(&ch);
            push_value(&mut s, f, "capacity_bits", &bits(cap.bits()));
            push_value(&mut s, f, "capacity_ratio", &format_rational(&cap.ratio));
            push_value(&mut s, f, "bob_witness", &ch.bob_inputs()[cap.witness]);
            if ch.is_deterministic() {
                let (count, _) = deterministic_interactive_capacity(&ch).map_err(at(path))?;
                push_value(&mut s, f, "max_outputs", &count.to_string());
            }
        }
        ChannelFile::Joint(joint) => {
            let (prior, channel) = joint.induced_pair();
            push_value(&mut s, f, "capacity_bits", &bits(min_entropy_capacity(&channel)));
            let l = min_entropy_leakage(&prior, &channel).map_err(at(path))?;
            push_value(&mut s, f, "leakage_bits", &bits(l));
            push_value(&mut s, f, "dalenius_bits", &bits(dalenius_leakage(&joint)));
        }
    }
    Ok(Outcome::ok(s))
}

/// Random transducers with up to three states and two-letter alphabets.
pub fn cmd_crosscheck(count: usize, config: &AnalysisConfig) -> CmdResult {
    let mut r = rng(config.seed);
    let mut s = String::new();
    if config.format == Format::Records {
        let _ = writeln!(s, "format: 1\nkind: crosscheck\nseed: {}\nk: {}", config.seed, config.k);
    }
    let mut mismatches = 0;
    for i in 0..count {
        let t = random_sdfst(&mut r, 3, 2);
        let row = oracle_row(&t, config.k, config).map_err(|e| (None, e))?;
        if !row.equal() {
            mismatches += 1;
        }
        let status = if row.equal() { "equal" } else { "unequal" };
        match config.format {
            Format::Text => {
                let _ = writeln!(s, "#{i}: {} states, brute force {}, width {}, {status}", t.states().len(), row.brute, row.width);
            }
            Format::Records => {
                let _ = writeln!(s, "case: {i} {} {} {status}", row.brute, row.width);
            }
        }
    }
    match config.format {
        Format::Text => {
            let _ = writeln!(s, "{} of {count} agree", count - mismatches);
        }
        Format::Records => {
            let _ = writeln!(s, "mismatches: {mismatches}");
        }
    }
    Ok(Outcome {
        stdout: s,
        stderr: String::new(),
        exit: if mismatches == 0 { EXIT_OK } else { EXIT_INCONSISTENT },
    })
}
