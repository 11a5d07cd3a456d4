use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qdiscord_core::curves::Quantity;

#[derive(Debug, Parser)]
#[command(
    name = "qdiscord",
    version,
    about = "Quantum discord and correlations under BBPSSW entanglement purification"
)]
pub struct Cli {
    /// Directory that relative output paths are resolved against.
    #[arg(long, global = true, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mutual information, classical correlation and discord of one state.
    Discord(DiscordArgs),
    /// Correlation curves of one purification round over a fidelity grid.
    Sweep(SweepArgs),
    /// Iterate the purification round starting from Werner(F0).
    Purify(PurifyArgs),
    /// Randomized checks on the additive higher-dimensional family.
    KoashiCheck(KoashiArgs),
}

#[derive(Debug, Args)]
pub struct DiscordArgs {
    /// Optimize over measurements instead of using the closed form.
    #[arg(long, global = true)]
    pub numeric: bool,
    #[command(subcommand)]
    pub state: StateArg,
}

#[derive(Debug, Clone, Subcommand)]
pub enum StateArg {
    /// Werner state with singlet weight F.
    #[command(allow_negative_numbers = true)]
    Werner { f: f64 },
    /// Bell state β_ab.
    Bell {
        #[arg(value_parser = clap::value_parser!(u8).range(0..=1))]
        a: u8,
        #[arg(value_parser = clap::value_parser!(u8).range(0..=1))]
        b: u8,
    },
    /// Bell-diagonal state ¼(I + Σ c_j σ_j⊗σ_j).
    #[command(name = "c", allow_negative_numbers = true)]
    C { c1: f64, c2: f64, c3: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Discord curves.
    Fig1,
    /// Mutual information curves.
    Fig2,
    /// Classical correlation curves.
    Fig3,
}

impl Preset {
    pub fn quantity(self) -> Quantity {
        match self {
            Preset::Fig1 => Quantity::Discord,
            Preset::Fig2 => Quantity::MutualInformation,
            Preset::Fig3 => Quantity::ClassicalCorrelation,
        }
    }

    pub fn file_name(self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1.csv",
            Preset::Fig2 => "fig2.csv",
            Preset::Fig3 => "fig3.csv",
        }
    }
}

fn parse_quantity(s: &str) -> Result<Quantity, String> {
    s.parse().map_err(|_| {
        format!("expected one of discord, mutual_information, classical_correlation (or D, I, C), got `{s}`")
    })
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Fixed quantity and range; [0.5, 1] unless --extended.
    #[arg(long, value_enum, conflicts_with_all = ["from", "to", "quantities"])]
    pub preset: Option<Preset>,
    /// Widen a preset to F in [0, 1].
    #[arg(long, requires = "preset")]
    pub extended: bool,
    #[arg(long, required_unless_present = "preset")]
    pub from: Option<f64>,
    #[arg(long, required_unless_present = "preset")]
    pub to: Option<f64>,
    #[arg(long, default_value_t = 0.005)]
    pub step: f64,
    /// Comma-separated; all three when omitted.
    #[arg(long, value_delimiter = ',', value_parser = parse_quantity)]
    pub quantities: Vec<Quantity>,
    /// Add |closed form − simulation| columns and fail above 1e-12.
    #[arg(long)]
    pub verify: bool,
    /// CSV destination. Presets default to `<out-dir>/figN.csv` when --out-dir
    /// is given; otherwise CSV goes to stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PurifyArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub f0: f64,
    #[arg(long)]
    pub rounds: usize,
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct KoashiArgs {
    /// Local dimensions of A, B and C, each at most 4.
    #[arg(long, num_args = 3, value_names = ["A", "B", "C"], required = true)]
    pub dims: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Trial t uses seed + t.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Number of copies for the additivity check.
    #[arg(long, default_value_t = 2)]
    pub copies: usize,
    /// Use the product member λ = (1, 0, ...) in every trial.
    #[arg(long)]
    pub product: bool,
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
}
