use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "modcat", version, about = "Exact modular data, Galois actions and transitivity checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
    /// Add floating-point renderings next to exact values.
    #[arg(long, global = true)]
    pub approx: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build modular or super-modular data.
    Construct {
        #[command(subcommand)]
        kind: Construct,
    },
    /// Run the modularity checks on a data file.
    Validate(Input),
    /// Galois group, orbits, regularity and the characteristic 2-group.
    Galois(Input),
    /// The 12 SL2(Z) lifts: level, minimality, irreducibility.
    Rep(Input),
    /// Prime factorization into modular subcategories.
    Factor(Input),
    /// Enumerate transitive categories by ord(T).
    Classify {
        #[arg(long, default_value_t = 40)]
        max_ordt: u64,
        #[arg(long, default_value_t = 13)]
        max_prime: u64,
    },
    /// Summary of super-modular data.
    Super(Input),
    /// Theorem suites.
    Theorems(TheoremArgs),
}

#[derive(Args, Debug)]
pub struct Input {
    /// Data file (JSON).
    #[arg(long = "in")]
    pub input: PathBuf,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct TheoremArgs {
    /// Transitivity theorems for a modular data file.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// The prime transitive family A(p-2, l), l in (Z/2p)^x.
    #[arg(long)]
    pub prime: Option<u64>,
    /// Super-modular family A(4k+2, l) for k up to this bound.
    #[arg(long)]
    pub super_kmax: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// C(sl2, k, q^l).
    Sl2 {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        l: i64,
    },
    /// Adjoint subcategory A(k, l), k odd.
    Sl2Adjoint {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        l: i64,
    },
    /// Pointed data of q(a) = exp(2πi Σ c_i a_i² / modulus) on Z/n_1 × … × Z/n_r.
    Pointed {
        #[arg(long, value_delimiter = ',', required = true)]
        orders: Vec<u32>,
        #[arg(long)]
        modulus: u32,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        coeffs: Vec<i64>,
    },
    /// sVec with d_f = eps.
    Svec {
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        eps: i8,
    },
    /// Deligne product of two modular data files.
    Product {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Product over sVec of two super-modular data files.
    Sproduct {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// A(4k+2, l) as super-modular data.
    SuperSl2 {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        l: i64,
    },
}
