//! Command-line jobs over the exact pipeline: Atkin-Lehner matrices, action
//! tables of `SL2`, canonical models of `X_G`, pseudo-eigenvalues and fixture
//! validation. Every job produces one deterministic JSON document.

mod cache;
mod commands;
mod error;

pub use cache::{fixture_digest, write_atomic, Cache, CacheStatus};
pub use commands::{execute, Output};
pub use error::CliError;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const TOOL: &str = "almodel";

#[derive(Debug, Parser)]
#[command(name = "almodel", version, about = "Exact Atkin-Lehner matrices and canonical models of modular curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// W_N on S_k(Gamma0(N) ∩ Gamma1(m)) in its saturated integral basis.
    AlMatrix {
        #[arg(long)]
        level: u64,
        #[arg(long, default_value_t = 2)]
        weight: u32,
        /// `m` with `m | N`; 1 gives Gamma0(N).
        #[arg(long, default_value_t = 1)]
        gamma1: u64,
        #[command(flatten)]
        job: JobConfig,
    },
    /// The action of S and T on S_k(Gamma(N)) through level N^2.
    Sl2Table {
        #[arg(long)]
        level: u64,
        #[arg(long, default_value_t = 2)]
        weight: u32,
        #[command(flatten)]
        job: JobConfig,
    },
    /// Forms fixed by a group G ≤ GL2(Z/NZ) and the canonical model of X_G.
    CurveModel {
        /// JSON file `{"modulus": N, "generators": [[a, b, c, d], ...]}`.
        #[arg(long)]
        group: PathBuf,
        /// Must equal the modulus of the group when given.
        #[arg(long)]
        level: Option<u64>,
        #[arg(long, default_value_t = 2)]
        weight: u32,
        #[arg(long, value_enum, default_value_t = Switch::Off)]
        lll: Switch,
        #[command(flatten)]
        job: JobConfig,
    },
    /// Certified balls around lambda_N(f) for every newform of a fixture file.
    PseudoEigenvalue {
        #[arg(long)]
        level: u64,
        #[arg(long, default_value_t = 2)]
        weight: u32,
        #[arg(long)]
        label: Option<String>,
        #[command(flatten)]
        job: JobConfig,
    },
    /// Loads and checks every `nf_N_k.json` in the fixture directory.
    ValidateFixtures {
        #[command(flatten)]
        job: JobConfig,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

impl Switch {
    pub fn on(self) -> bool {
        self == Switch::On
    }
}

#[derive(Clone, Debug, Args)]
pub struct JobConfig {
    #[arg(long, default_value = "fixtures/newforms")]
    pub fixtures: PathBuf,
    #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u32).range(64..))]
    pub precision_bits: u32,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(0..=8))]
    pub max_escalations: u32,
    /// Write the JSON here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// With `off`, results whose checks fail are still written.
    #[arg(long, value_enum, default_value_t = Switch::On)]
    pub verify_only: Switch,
    #[arg(long, env = "ALMODEL_CACHE", default_value = ".almodel-cache")]
    pub cache_dir: PathBuf,
    #[arg(long)]
    pub no_cache: bool,
}

impl Command {
    pub fn job(&self) -> &JobConfig {
        match self {
            Command::AlMatrix { job, .. }
            | Command::Sl2Table { job, .. }
            | Command::CurveModel { job, .. }
            | Command::PseudoEigenvalue { job, .. }
            | Command::ValidateFixtures { job } => job,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::AlMatrix { .. } => "al-matrix",
            Command::Sl2Table { .. } => "sl2-table",
            Command::CurveModel { .. } => "curve-model",
            Command::PseudoEigenvalue { .. } => "pseudo-eigenvalue",
            Command::ValidateFixtures { .. } => "validate-fixtures",
        }
    }
}
