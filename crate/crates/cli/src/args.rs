use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "charquant", version, about = "Verify characteristic-p quantization statements on the affine line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Coefficients {
    /// The structure sheaf `O_X`.
    Structure,
    /// Restricted differential operators `d^p = 0`.
    RestrictedD,
    /// Crystalline differential operators, order-truncated.
    FullD,
}

impl Coefficients {
    pub fn name(self) -> &'static str {
        match self {
            Coefficients::Structure => "structure",
            Coefficients::RestrictedD => "restricted-d",
            Coefficients::FullD => "full-d",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Primes {
    /// Prime characteristics, comma separated, each at most 13.
    #[arg(long = "p", value_delimiter = ',', required = true)]
    pub p: Vec<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hochschild cohomology relative to the Frobenius twist.
    Hochschild {
        #[command(flatten)]
        primes: Primes,
        #[arg(long, value_enum, default_value_t = Coefficients::RestrictedD)]
        coefficients: Coefficients,
        /// Highest assembled cochain degree N; cohomology is reported in degrees below N.
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Per-slot order bound M for crystalline coefficients (default 2p).
        #[arg(long)]
        max_order: Option<u32>,
        /// Use the normalized complex.
        #[arg(long)]
        normalized: bool,
    },
    /// Exactness of the 2-periodic resolution of the restricted algebra.
    ResolutionCheck {
        #[command(flatten)]
        primes: Primes,
    },
    /// The complex k[x] → k[x] → … with alternating derivatives.
    ReducedComplex {
        #[command(flatten)]
        primes: Primes,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Azumaya structure of the restricted algebra over F_p[t].
    Azumaya {
        #[command(flatten)]
        primes: Primes,
        /// Fiber points in F_p, comma separated (default: all of them).
        #[arg(long, value_delimiter = ',')]
        points: Option<Vec<u32>>,
    },
    /// Seeded identity suites for cofaces, cups and braces.
    Identities {
        #[command(flatten)]
        primes: Primes,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Treat informational suites as failing checks.
        #[arg(long)]
        strict: bool,
    },
    /// The two-sided complex and the map χ.
    TwoSided {
        #[command(flatten)]
        primes: Primes,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Aggregated report over several suites.
    Report {
        #[command(flatten)]
        primes: Primes,
        /// Include every suite, not only the core propositions.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        strict: bool,
    },
}
