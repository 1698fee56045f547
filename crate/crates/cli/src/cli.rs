use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "interest",
    version,
    about = "Interest-rate decomposition models"
)]
pub struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the main output here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Overrides any seed given in a config file.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal two-period consumption and saving.
    #[command(allow_negative_numbers = true)]
    Solve(SolveArgs),
    /// Saving and its interest-rate slope over a grid of rates (CSV).
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// Cash/bond split of saving with KKT multipliers.
    #[command(allow_negative_numbers = true)]
    Portfolio(SolveArgs),
    /// Risky rate of a defaultable loan, optionally with a note-issuing bank's premium.
    #[command(allow_negative_numbers = true)]
    Price(PriceArgs),
    /// Synthetic panel identification experiment from a JSON config.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UtilityKind {
    Log,
    Ies,
}

#[derive(Debug, Clone, Args)]
pub struct AgentArgs {
    #[arg(long, value_enum, default_value = "log")]
    pub utility: UtilityKind,
    /// Elasticity of intertemporal substitution (with `--utility ies`).
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Rate of time preference.
    #[arg(long)]
    pub rho: f64,
    #[arg(long)]
    pub m1: f64,
    #[arg(long)]
    pub m2: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub agent: AgentArgs,
    /// Interest rate.
    #[arg(long)]
    pub r: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub agent: AgentArgs,
    #[arg(long)]
    pub r_from: f64,
    #[arg(long)]
    pub r_to: f64,
    /// Number of grid points, endpoints included.
    #[arg(long)]
    pub r_steps: usize,
}

#[derive(Debug, Clone, Args)]
pub struct PriceArgs {
    /// Risk-free rate.
    #[arg(long)]
    pub rf: f64,
    /// Default probability.
    #[arg(long)]
    pub pi: f64,
    /// Loss given default.
    #[arg(long)]
    pub lambda: f64,
    /// Opportunity cost per unit of redemption reserve per period.
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Reserve rule: `linear:<ratio>` or `binomial:<q>[:<epsilon>[:<note_unit>]]`.
    #[arg(long)]
    pub reserve: Option<String>,
    /// Loan size in currency units.
    #[arg(long, default_value_t = 1000.0)]
    pub loan: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Also write the generated panel as CSV.
    #[arg(long)]
    pub panel_out: Option<PathBuf>,
}
