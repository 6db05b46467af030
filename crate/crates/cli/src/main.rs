use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use xmodlab_cli::commands::{self, CommandError, Outcome};
use xmodlab_cli::Corpus;
use xmodlab_core::flat::ScanOptions;
use xmodlab_core::Limits;

/// Crossed modules of groups: localizations, flatness and admissibility.
#[derive(Parser, Debug)]
#[command(name = "xmodlab", version)]
struct Cli {
    /// Corpus file (JSON). Defaults to `$XMODLAB_CORPUS_DIR/default.json`,
    /// then to the built-in catalogue.
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    /// Print the machine-readable summary instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized scan sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node budget for a single backtracking search.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[arg(long, env = "XMODLAB_CORPUS_DIR", hide_env_values = true)]
    corpus_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Load and validate a corpus file.
    Validate { file: Option<PathBuf> },
    /// Localize a crossed module. LOCALIZER is ab, i, pxz, nullify:<xmod>,
    /// lf:<morphism> or a corpus localizer name.
    Localize { object: String, localizer: String },
    /// Nullify OBJECT with respect to the crossed module A.
    Nullify { object: String, a: String },
    /// Test whether a localizer keeps a sequence exact. SEQUENCE is a corpus
    /// name or `<xmod>/N<i>`.
    FlatCheck { sequence: String, localizer: String },
    /// Check the fiberwise condition and build the fiberwise localization.
    Fiberwise { sequence: String, localizer: String },
    /// Run the admissibility and conditional-flatness scans over the corpus.
    AdmissibilityScan { localizer: String },
    /// Localize the pulled-back sequence X Z -> X Z -> X C2 at X(C4 -> C2),
    /// or at corpus abelian homomorphisms.
    Counterexample {
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        along: Option<String>,
    },
    /// Print the corpus in canonical form.
    Export,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Localize { .. } => "localize",
        Command::Nullify { .. } => "nullify",
        Command::FlatCheck { .. } => "flat-check",
        Command::Fiberwise { .. } => "fiberwise",
        Command::AdmissibilityScan { .. } => "admissibility-scan",
        Command::Counterexample { .. } => "counterexample",
        Command::Export => "export",
    }
}

fn resolve(path: &Path, dir: Option<&Path>) -> PathBuf {
    match dir {
        Some(d) if !path.exists() && path.is_relative() => d.join(path),
        _ => path.to_path_buf(),
    }
}

fn load_corpus(cli: &Cli, explicit: Option<&Path>, limits: &Limits) -> Result<Corpus, String> {
    let dir = cli.corpus_dir.as_deref();
    let path = match explicit.or(cli.corpus.as_deref()) {
        Some(p) => Some(resolve(p, dir)),
        None => dir.map(|d| d.join("default.json")).filter(|p| p.exists()),
    };
    match path {
        Some(p) => Corpus::load(&p, limits).map_err(|e| format!("{}: {e}", p.display())),
        None => Ok(Corpus::builtin()),
    }
}

fn run(cli: &Cli) -> Result<Outcome, CommandError> {
    let name = command_name(&cli.command);
    let mut limits = Limits::default();
    if let Some(cap) = cli.cap {
        limits.max_search_nodes = cap;
    }
    let explicit = match &cli.command {
        Command::Validate { file } => file.as_deref(),
        _ => None,
    };
    let corpus = load_corpus(cli, explicit, &limits).map_err(|message| CommandError { command: name, message })?;
    match &cli.command {
        Command::Validate { .. } => commands::validate(&corpus),
        Command::Localize { object, localizer } => commands::localize(&corpus, object, localizer, &limits),
        Command::Nullify { object, a } => commands::nullify_cmd(&corpus, object, a, &limits),
        Command::FlatCheck { sequence, localizer } => commands::flat_check(&corpus, sequence, localizer, &limits),
        Command::Fiberwise { sequence, localizer } => commands::fiberwise(&corpus, sequence, localizer, &limits),
        Command::AdmissibilityScan { localizer } => {
            let opts = ScanOptions { seed: cli.seed, limits: limits.clone(), ..ScanOptions::default() };
            commands::admissibility(&corpus, localizer, &opts)
        }
        Command::Counterexample { phi, along } => commands::counterexample(&corpus, phi.as_deref(), along.as_deref(), &limits),
        Command::Export => commands::export(&corpus),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            if cli.json {
                println!("{}", o.summary());
            } else {
                print!("{}", o.text);
            }
            ExitCode::from(o.exit_code() as u8)
        }
        Err(e) => {
            if cli.json {
                println!("{}", e.summary());
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(2)
        }
    }
}
