use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spectral_dominance::io::{cmd_analyze, cmd_coxeter, CommandOutput, OutputFormat, RunConfig};
use spectral_dominance::matrix::Regime;

/// Decide whether the spectral radius of a real matrix is a simple and
/// dominant eigenvalue.
///
/// Exit status: 0 simple and dominant, 2 certified not simple-and-dominant
/// (or semisimple of multiplicity >= 2), 3 undecided, 1 input error.
#[derive(Parser)]
#[command(name = "sdom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse a matrix file.
    Analyze {
        path: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Analyse the image of a word under the geometric representation.
    Coxeter {
        /// Coxeter datum file.
        group: PathBuf,
        /// Word such as "1,2,3,2" or "s1 s2 s3 s2".
        word: String,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Args)]
struct Opts {
    /// Power-iteration residual and convergence tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Normalized |u.v| below this counts as orthogonal.
    #[arg(long)]
    tol_orth: Option<f64>,
    /// Relative size below which an eigenvector entry counts as zero.
    #[arg(long)]
    tol_zero: Option<f64>,
    /// Relative threshold for strict positivity of float matrices.
    #[arg(long)]
    eps_pos: Option<f64>,
    /// Highest power of Z scanned.
    #[arg(long)]
    k_max: Option<usize>,
    /// Power-iteration steps per start vector.
    #[arg(long)]
    max_iter: Option<usize>,
    /// Seed for the random restarts of power iteration.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Arithmetic for `analyze`; defaults to the mode declared in the file.
    /// The Coxeter form decides its own regime.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long, value_enum, default_value = "text")]
    output: Output,
    /// Analyse the spectral radius even when every row sums to 1
    /// (by default such matrices are tested for the eigenvalue 1).
    #[arg(long)]
    ignore_row_sums: bool,
}

impl Opts {
    fn config(&self) -> RunConfig {
        RunConfig {
            tol: self.tol,
            tol_orth: self.tol_orth,
            tol_zero: self.tol_zero,
            eps_pos: self.eps_pos,
            k_max: self.k_max,
            max_iter: self.max_iter,
            seed: self.seed,
            mode: self.mode.map(|m| match m {
                Mode::Exact => Regime::Exact,
                Mode::Float => Regime::Float,
            }),
            output: match self.output {
                Output::Text => OutputFormat::Text,
                Output::Json => OutputFormat::Json,
            },
            ignore_row_sums: self.ignore_row_sums,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let out: CommandOutput = match &cli.command {
        Command::Analyze { path, opts } => cmd_analyze(path, &opts.config()),
        Command::Coxeter { group, word, opts } => cmd_coxeter(group, word, &opts.config()),
    };
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.exit_code as u8)
}
