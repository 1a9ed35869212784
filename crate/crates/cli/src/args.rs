//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::run::{Command, Mode, Request, Which, DEFAULT_TOL};

#[derive(Debug, Parser)]
#[command(name = "slicesyl", version, about = "Exact Sylvester operators on slice semi-regular functions")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Domain mode; `J` is only available in product mode.
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Seed for randomized commands.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Rank, characteristic polynomial, branch and kernel of S_{f,g}.
    Classify {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[command(flatten)]
        common: Common,
    },
    /// Solve f*χ + χ*g = b.
    Solve {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        common: Common,
    },
    /// Kernel basis of S_{f,g} with invertibility tags.
    Kernel {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[command(flatten)]
        common: Common,
    },
    /// Decide f ≃ g and give a conjugator.
    Equiv {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[command(flatten)]
        common: Common,
    },
    /// Construct h with h^{-*}*f*h = g.
    Conjugate {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[command(flatten)]
        common: Common,
    },
    /// Annihilation structure between an idempotent σ and ρ.
    IdemAnalyze {
        #[arg(allow_hyphen_values = true)]
        sigma: String,
        #[arg(allow_hyphen_values = true)]
        rho: String,
        #[arg(long, value_enum)]
        which: Which,
        #[command(flatten)]
        common: Common,
    },
    /// Solve Σ f_n*χ*g_n = b; tuple files hold one expression per line.
    LfgSolve {
        fs_file: PathBuf,
        gs_file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the algebraic star product with pointwise evaluation.
    OracleCheck {
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
}

impl Cli {
    /// The command and whether JSON output was requested.
    pub fn into_command(self) -> (Command, bool) {
        let (request, common) = match self.verb {
            Verb::Classify { f, g, common } => (Request::Classify { f, g }, common),
            Verb::Solve { f, g, b, common } => (Request::Solve { f, g, b }, common),
            Verb::Kernel { f, g, common } => (Request::Kernel { f, g }, common),
            Verb::Equiv { f, g, common } => (Request::Equiv { f, g }, common),
            Verb::Conjugate { f, g, common } => (Request::Conjugate { f, g }, common),
            Verb::IdemAnalyze { sigma, rho, which, common } => (Request::IdemAnalyze { sigma, rho, which }, common),
            Verb::LfgSolve { fs_file, gs_file, b, common } => (Request::LfgSolve { fs_file, gs_file, b }, common),
            Verb::OracleCheck { pairs, points, tol, common } => (Request::OracleCheck { pairs, points, tol }, common),
        };
        (Command { request, mode: common.mode.into(), seed: common.seed }, common.json)
    }
}
