use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kmhecke_cli::commands::{self, Command, Expect, Options};
use kmhecke_cli::config::JobConfig;
use kmhecke_cli::error::CliError;

#[derive(Parser)]
#[command(name = "kmhecke", version, about = "Principal series of Kac-Moody Iwahori-Hecke algebras")]
struct Cli {
    /// TOML job file.
    #[arg(long, global = true, env = "KMHECKE_CONFIG")]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text, env = "KMHECKE_FORMAT")]
    format: Format,
    #[arg(long, global = true, default_value_t = 0, env = "KMHECKE_SEED")]
    seed: u64,
    /// Overrides bounds.coroot_height.
    #[arg(long, global = true, env = "KMHECKE_BOUND_COROOT")]
    bound_coroot: Option<i64>,
    /// Overrides bounds.weyl_length.
    #[arg(long, global = true, env = "KMHECKE_BOUND_LENGTH")]
    bound_length: Option<usize>,
    /// Exit 1 if the Kato verdict differs.
    #[arg(long, global = true, value_enum, env = "KMHECKE_EXPECT")]
    expect: Option<ExpectArg>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpectArg {
    Irreducible,
    Reducible,
}

#[derive(Subcommand)]
enum Sub {
    /// Check the datum, parameters and character.
    Validate,
    /// List positive real coroots up to the height bound.
    Roots,
    /// Compute Phi_(tau), Sigma_tau, S_tau and the stabilizer decomposition.
    AnalyzeTau,
    /// Decide irreducibility of the principal series.
    Kato,
    /// Weight space on a ball of the Weyl group.
    WeightSpace,
    /// Generalized weight space on a ball of the Weyl group.
    GenWeightSpace,
    /// Order of a vector in the generalized tau-weight space.
    Ord,
    /// Run the identity checks on the built-in algebras.
    VerifyIdentities,
    /// Certify the five conjugates of the odd-pair example.
    ExampleLemma37 {
        /// Use the variant datum satisfying the parity hypothesis.
        #[arg(long)]
        parity_variant: bool,
    },
}

impl From<&Sub> for Command {
    fn from(s: &Sub) -> Self {
        match s {
            Sub::Validate => Command::Validate,
            Sub::Roots => Command::Roots,
            Sub::AnalyzeTau => Command::AnalyzeTau,
            Sub::Kato => Command::Kato,
            Sub::WeightSpace => Command::WeightSpace,
            Sub::GenWeightSpace => Command::GenWeightSpace,
            Sub::Ord => Command::Ord,
            Sub::VerifyIdentities => Command::VerifyIdentities,
            Sub::ExampleLemma37 { parity_variant } => Command::ExampleLemma37 { parity_variant: *parity_variant },
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let command = Command::from(&cli.command);
    let cfg = match &cli.config {
        Some(path) if command.needs_config() => Some(JobConfig::load(path)?),
        _ => None,
    };
    let opts = Options {
        seed: cli.seed,
        bound_coroot: cli.bound_coroot,
        bound_length: cli.bound_length,
        expect: cli.expect.map(|e| match e {
            ExpectArg::Irreducible => Expect::Irreducible,
            ExpectArg::Reducible => Expect::Reducible,
        }),
    };
    let outcome = commands::run(command, cfg.as_ref(), &opts)?;
    match cli.format {
        Format::Text => print!("{}", outcome.text),
        Format::Json => println!("{}", serde_json::to_string_pretty(&outcome.report).expect("report serializes")),
    }
    Ok(outcome.exit)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
