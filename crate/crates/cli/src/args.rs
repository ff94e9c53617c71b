use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "zetat", version, about = "Torsion and Ruelle zeta values of Seifert fibered spaces over hyperbolic orbifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reidemeister torsion, leading coefficient and its limit.
    Torsion {
        #[command(flatten)]
        sig: SignatureArgs,
        /// N or an inclusive range A..B.
        #[arg(long, default_value = "1")]
        n: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// |R(0)| of the Ruelle zeta function by one or more routes.
    Ruelle {
        #[command(flatten)]
        sig: SignatureArgs,
        #[arg(long, default_value = "1")]
        n: String,
        #[arg(long, value_enum, default_value_t = RouteArg::Closed)]
        route: RouteArg,
        /// Largest allowed spread between routes.
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        quad: QuadArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a verification suite and print a JSON table of checks.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Tolerance applied to every check in the suite.
        #[arg(long)]
        tol: Option<f64>,
        /// N range for the ruelle-torsion suite.
        #[arg(long)]
        n: Option<String>,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Leading coefficient against its limit over a range of N.
    Sweep {
        #[command(flatten)]
        sig: SignatureArgs,
        /// Sweep every signature within the --max-* bounds instead.
        #[arg(long)]
        enumerate: bool,
        #[arg(long, default_value_t = 0)]
        max_genus: u32,
        #[arg(long, default_value_t = 3)]
        max_cones: usize,
        #[arg(long, default_value_t = 7)]
        max_order: u32,
        /// Shorthand for --n 1..N_MAX.
        #[arg(long, conflicts_with = "n")]
        n_max: Option<u64>,
        #[arg(long)]
        n: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct SignatureArgs {
    #[arg(long, default_value_t = 0)]
    pub genus: u32,
    /// Comma-separated cone orders.
    #[arg(long, default_value = "")]
    pub cones: String,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QuadArgs {
    /// TOML file overriding quadrature settings.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Closed,
    Residue,
    Quadrature,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Transforms,
    FunctionalEq,
    Residues,
    RuelleTorsion,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Transforms => "transforms",
            Suite::FunctionalEq => "functional-eq",
            Suite::Residues => "residues",
            Suite::RuelleTorsion => "ruelle-torsion",
        }
    }
}
