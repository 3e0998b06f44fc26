use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "lehmer-ff",
    version,
    about = "Totients, cyclotomic values and Lehmer-set searches over F_q[x]"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Worker threads for parallel sweeps.
    #[arg(
        long,
        env = "LEHMER_FF_WORKERS",
        value_parser = clap::value_parser!(u32).range(1..),
        global = true
    )]
    pub workers: Option<u32>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Either `--q Q` or `--p P --k K`.
#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Field order, a prime power.
    #[arg(long, conflicts_with_all = ["p", "k"], required_unless_present = "p")]
    pub q: Option<u64>,

    /// Field characteristic.
    #[arg(long, requires = "k")]
    pub p: Option<u64>,

    /// Extension degree.
    #[arg(long, requires = "p")]
    pub k: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Totient of one polynomial and whether it divides q^deg - 1.
    Totient {
        /// Polynomial such as "x^3+t*x+1"; `t` generates F_q over F_p.
        poly: String,
        #[command(flatten)]
        field: FieldArgs,
        /// Also count residues directly (small q^deg only).
        #[arg(long)]
        bruteforce: bool,
    },
    /// Reducible f with phi(f) | q^deg(f) - 1, up to a degree bound.
    Lehmer {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_degree: u32,
        /// List every unit multiple, not just monic representatives.
        #[arg(long)]
        expand_units: bool,
    },
    /// The n-th cyclotomic polynomial, optionally evaluated.
    Cyclotomic {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        eval: Option<i64>,
    },
    /// Primitive and algebraic prime divisors of a^n - b^n.
    Zsigmondy {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        n: u32,
        /// Largest value, in bits, that will be factored.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        factoring_budget: Option<u64>,
    },
    /// Partitions of n with the divisibility (a^n-1) / prod(a^e_i - 1).
    Partitions {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        a: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=60))]
        n_max: u32,
        /// Show only partitions where the quotient is an integer.
        #[arg(long)]
        dividing_only: bool,
    },
    /// Degrees surviving the two size inequalities for a = 2.
    Candidates {
        #[arg(long, value_parser = clap::value_parser!(u64).range(7..=1_000_000))]
        n_max: u64,
        /// Working precision in decimal digits.
        #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u32).range(30..=1000))]
        digits: u32,
    },
    /// Run a verification suite; exits 1 on any mismatch.
    Verify {
        #[arg(long, value_parser = SUITES)]
        suite: String,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_degree: Option<u32>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n_max: Option<u64>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        a_max: Option<u64>,
        /// Seed for the randomized checks.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        factoring_budget: Option<u64>,
    },
}

const SUITES: [&str; 6] = [
    "main-theorem",
    "prop31",
    "prop36",
    "cyclo-lemmas",
    "bounds",
    "oracle",
];
