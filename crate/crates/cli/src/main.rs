//! `omega`: scripted access to the automata, congruence, oracle, game, MSO
//! and finite-word trio machinery. Each run prints one JSON document on
//! standard output and a short human summary on standard error.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Overrides every construction cap (automaton states, monoid elements,
/// scan budgets) with one number.
pub const BUDGET_ENV: &str = "OMEGA_STEP_BUDGET";

#[derive(Parser)]
#[command(name = "omega", version, about = "Experiments with ω-languages on finitely presented words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Büchi automata in the line-oriented text format.
    #[command(subcommand)]
    Buchi(BuchiCmd),
    /// Classifiers, congruence conditions and bounded congruences of oracles.
    #[command(subcommand)]
    Congruence(CongruenceCmd),
    /// Membership oracles by name.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Bounded plays of the congruence game.
    #[command(subcommand)]
    Game(GameCmd),
    /// Formulas in the prefix syntax.
    #[command(subcommand)]
    Mso(MsoCmd),
    /// Separator languages over finite words.
    #[command(subcommand)]
    Trio(TrioCmd),
}

#[derive(Subcommand)]
pub enum BuchiCmd {
    /// Membership of a word.
    Accepts {
        file: String,
        #[arg(long)]
        word: String,
    },
    /// Emptiness, with a lasso witness when nonempty.
    Empty { file: String },
    Complement { file: String },
    Union { left: String, right: String },
    Intersect { left: String, right: String },
    /// Language equivalence.
    Equiv { left: String, right: String },
}

#[derive(Subcommand)]
pub enum CongruenceCmd {
    /// Exact check of compatibility with concatenation.
    Check1 { file: String },
    /// Bounded search for a failure of infinite-product compatibility.
    Check2 {
        file: String,
        #[arg(long)]
        oracle: String,
        #[arg(long, default_value_t = 2)]
        word_len: usize,
        #[arg(long, default_value_t = 1)]
        head_len: usize,
        #[arg(long, default_value_t = 2)]
        cycle_len: usize,
    },
    /// Merge classes until compatibility with concatenation holds.
    Repair { file: String },
    /// The transition-monoid kernel of an automaton, as a classifier.
    Kernel { file: String },
    /// Bounded Arnold classes of an oracle language.
    Arnold {
        #[arg(long)]
        oracle: String,
        #[arg(long, default_value_t = 4)]
        word_bound: usize,
        #[arg(long, default_value_t = 3)]
        context_bound: usize,
    },
    /// Bounded right-congruence classes of an oracle language.
    Right {
        #[arg(long)]
        oracle: String,
        #[arg(long, default_value_t = 4)]
        word_bound: usize,
        #[arg(long, default_value_t = 3)]
        tail_bound: usize,
    },
}

#[derive(Subcommand)]
pub enum OracleCmd {
    Member {
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        word: String,
    },
    /// Randomized insertion and deletion of the neutral letter.
    NeutralTest {
        #[arg(long)]
        oracle: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// A failure of infinite-product compatibility for a classifier.
    FindViolation {
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        classifier: String,
    },
}

#[derive(Subcommand)]
pub enum GameCmd {
    Play {
        #[arg(long)]
        word: String,
        #[arg(long)]
        oracle: String,
        /// `random` or `diverging`.
        #[arg(long, default_value = "random")]
        spoiler: String,
        /// `copy`, `random` or `constant:<word>`.
        #[arg(long, default_value = "copy")]
        duplicator: String,
        #[arg(long, default_value_t = 10)]
        horizon: usize,
        /// Longest word a random Duplicator answers with.
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[command(flatten)]
        seed: SeedArg,
        /// Also write the transcript to this file.
        #[arg(long)]
        output: Option<String>,
    },
    /// Re-checks the rules and the adjudication of a stored transcript.
    Validate {
        file: String,
        #[arg(long)]
        oracle: String,
    },
}

#[derive(Subcommand)]
pub enum MsoCmd {
    Compile {
        file: String,
        #[arg(long, default_value = "ab")]
        alphabet: String,
    },
    Sat {
        file: String,
        #[arg(long, default_value = "ab")]
        alphabet: String,
    },
    Eval {
        file: String,
        /// JSON valuation: word, positions, sets.
        #[arg(long)]
        valuation: String,
        #[arg(long)]
        oracle: Option<String>,
        /// Symbol of the language atoms bound to the oracle.
        #[arg(long, default_value = "L")]
        symbol: String,
    },
    /// The congruence-game sentence.
    EncodeGame {
        /// Comma-separated letters, e.g. `a,b,1`.
        #[arg(long)]
        alphabet: String,
        #[arg(long, default_value = "1")]
        neutral: char,
        #[arg(long, default_value = "L")]
        symbol: String,
    },
}

#[derive(Subcommand)]
pub enum TrioCmd {
    /// Membership of `u#u′`.
    L1 {
        #[command(flatten)]
        lang: LanguageArgs,
        #[arg(long)]
        input: String,
    },
    /// Membership of a separated word.
    L2 {
        #[command(flatten)]
        lang: LanguageArgs,
        #[arg(long)]
        input: String,
    },
    /// Erase the letters, keeping the separators.
    Project {
        #[arg(long)]
        language: Option<String>,
        #[arg(long)]
        input: String,
    },
    /// Membership of a lasso word in the loop language.
    Loop {
        #[arg(long, default_value = "anbn")]
        language: String,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = omega_core::trio::DEFAULT_POWER_BOUND)]
        power: usize,
    },
    /// Every separated member up to a length: separator counts and images.
    Census {
        #[command(flatten)]
        lang: LanguageArgs,
        #[arg(long, default_value_t = 14)]
        max_len: usize,
    },
}

#[derive(Args)]
pub struct LanguageArgs {
    /// `anbn` or `set:<w1>,<w2>,...`.
    #[arg(long, default_value = "anbn")]
    language: String,
    /// Suffix bound for languages without an exact congruence test.
    #[arg(long, default_value_t = omega_core::trio::DEFAULT_SUFFIX_BOUND)]
    bound: usize,
}

#[derive(Args)]
pub struct SeedArg {
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Buchi(c) => commands::buchi(c),
        Command::Congruence(c) => commands::congruence(c),
        Command::Oracle(c) => commands::oracle_cmd(c),
        Command::Game(c) => commands::game(c),
        Command::Mso(c) => commands::mso(c),
        Command::Trio(c) => commands::trio(c),
    };
    match result {
        Ok(out) => {
            eprintln!("{}", out.summary);
            println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            let (status, kind) = match e.downcast_ref::<omega_core::Error>() {
                Some(core) if core.is_budget_or_unsupported() => (1, "budget_or_unsupported"),
                _ => (2, "input"),
            };
            eprintln!("error: {e:#}");
            let doc = serde_json::json!({ "error": { "kind": kind, "message": format!("{e:#}") } });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            ExitCode::from(status)
        }
    }
}
