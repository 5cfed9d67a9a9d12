//! Command-line front end for `twisted-calculus`.

pub mod commands;
pub mod error;
pub mod expr;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twisted_calculus::OrderingSpec;

use commands::{AlgebraSource, Format, Outcome, RunConfig, DEFAULT_SEED};
use error::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "twistcalc", version, about = "Twisted differential calculus on Lie-type noncommutative spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print φ and φ⁻¹ to order N.
    Phi,
    /// Twisted exterior derivative of an expression in X and dx.
    Dhat { expr: String },
    /// Star product of two expressions in x and dx.
    Star { f: String, g: String },
    /// Normal form of an expression.
    NormalForm { expr: String },
    /// Commutator of two expressions in the realization, up to order N - 1.
    Commutator { a: String, b: String },
    /// Run every checker and report.
    Verify,
}

#[derive(Args, Debug)]
pub struct Opts {
    /// Catalog id: abelian:n, heisenberg, su2, sl2, axb, kappa:n:a.
    #[arg(long, global = true, default_value = "heisenberg", conflicts_with = "algebra_file")]
    pub algebra: String,
    /// Structure constants as JSON.
    #[arg(long, global = true)]
    pub algebra_file: Option<PathBuf>,
    /// classical, symmetric or series:c0,c1,...
    #[arg(long, global = true, default_value = "symmetric")]
    pub ordering: String,
    /// Truncation order N.
    #[arg(long, global = true, default_value_t = 6)]
    pub trunc: u32,
    /// Degree bound D; defaults to min(4, N).
    #[arg(long, global = true)]
    pub degree: Option<u32>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
}

impl Opts {
    pub fn config(&self) -> CliResult<RunConfig> {
        let algebra = match &self.algebra_file {
            Some(p) => AlgebraSource::File(p.clone()),
            None => AlgebraSource::Catalog(self.algebra.clone()),
        };
        let ordering = OrderingSpec::parse(&self.ordering)?;
        let mut config = RunConfig::new(algebra, ordering, self.trunc, self.degree.unwrap_or(self.trunc.min(4)));
        config.seed = self.seed;
        config.format = match self.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        };
        Ok(config)
    }
}

pub fn execute(command: &Command, config: &RunConfig) -> CliResult<Outcome> {
    match command {
        Command::Phi => commands::cmd_phi(config),
        Command::Dhat { expr } => commands::cmd_dhat(config, expr),
        Command::Star { f, g } => commands::cmd_star(config, f, g),
        Command::NormalForm { expr } => commands::cmd_normal_form(config, expr),
        Command::Commutator { a, b } => commands::cmd_commutator(config, a, b),
        Command::Verify => commands::cmd_verify(config),
    }
}

/// Parses arguments, runs the command and returns `(exit code, stdout, stderr)`.
/// Output goes to `--out` when given.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, if code == 0 { e.to_string() } else { String::new() }, if code == 0 { String::new() } else { e.to_string() });
        }
    };
    let result = cli.opts.config().and_then(|config| {
        let outcome = execute(&cli.command, &config)?;
        Ok((outcome.exit, outcome.render(config.format)))
    });
    match result {
        Ok((code, body)) => match &cli.opts.out {
            Some(path) => match std::fs::write(path, &body) {
                Ok(()) => (code, String::new(), String::new()),
                Err(e) => (2, String::new(), format!("error: {}\n", CliError::from(e))),
            },
            None => (code, body, String::new()),
        },
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}
