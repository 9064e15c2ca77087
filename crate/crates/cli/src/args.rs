use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "hilbert-forms",
    version,
    about = "Bounds and verification for the forms B_α"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,

    /// Accuracy target; defaults to 1e-10 for scalar and 1e-8 for spectral commands.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tol: Option<f64>,

    /// Print α₀, α₁, α₂ and the library version.
    #[arg(long)]
    pub seed_info: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Lower and upper bounds for ‖B_α‖ and the composition-operator bounds.
    Bounds {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
    },
    /// The bound curves on an α grid.
    Scan(Grid),
    /// sup_m S_α(m) over m ≤ m_max together with the limit 2/α.
    Sup {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = 100_000)]
        m_max: u64,
    },
    /// Top eigenvalue of the n-section of the kernel matrix.
    Eig {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        max_iter: usize,
    },
    /// Rayleigh quotient of a trial vector over the first n coordinates.
    Rayleigh {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long)]
        n: usize,
        /// ε for the family m^(-1/2-ε); omit to use m^(-α+1/2).
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<f64>,
    },
    /// α₀, α₁, α₂ and the crossings of the bound curves with 2/α.
    Roots,
    /// Run an invariant suite.
    Verify {
        /// lemma4, signs, monotone_h, identity, sup_formula or transference.
        #[arg(long)]
        suite: String,
    },
    /// Normalized gaps (lower-1)·4^α and (upper-1)·2^α for α ≥ 2.
    Sandwich(SandwichGrid),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Grid {
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub alpha_min: f64,
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    pub alpha_max: f64,
    /// Number of grid points, endpoints included.
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SandwichGrid {
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    pub alpha_min: f64,
    #[arg(long, default_value_t = 8.0, allow_hyphen_values = true)]
    pub alpha_max: f64,
    #[arg(long, default_value_t = 61)]
    pub steps: usize,
}
