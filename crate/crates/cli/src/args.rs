use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "lad",
    version,
    about = "Local entropy of finite-length endomorphisms of local rings over F_p"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Largest truncation level m^N tried when certifying a colength
    #[arg(
        long,
        global = true,
        env = "LAD_MAX_TRUNCATION",
        default_value_t = 128,
        value_parser = clap::value_parser!(u32).range(1..)
    )]
    pub truncation_cap: u32,

    /// Largest intermediate Gröbner basis
    #[arg(long, global = true, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_basis_size: u64,

    /// Largest leading degree during Gröbner basis computations
    #[arg(long, global = true, default_value_t = 4_096, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_degree: u32,

    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,

    /// Write the report here instead of standard output
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// More logging on standard error (-v: truncation levels, -vv: debug)
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate every declaration of a fixture
    Check {
        /// Fixture file (.lad)
        file: PathBuf,
    },

    /// Local colength of I + J for an ideal J of a ring
    Length {
        /// Fixture file (.lad)
        file: PathBuf,
        /// Ring declared in the fixture
        #[arg(long)]
        ring: String,
        /// Ideal as "(g1, g2, ...)"
        #[arg(long)]
        ideal: String,
    },

    /// Length sequence and entropy estimates of an endomorphism
    Entropy {
        /// Fixture file (.lad)
        file: PathBuf,
        /// Endomorphism declared in the fixture
        #[arg(long)]
        endo: String,
        /// Primary ideal q; defaults to the maximal ideal
        #[arg(long)]
        ideal: Option<String>,
        /// Largest iterate n
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        max_iter: u64,
    },

    /// Exact per-iterate checks for a morphism
    #[command(subcommand)]
    Verify(Verify),

    /// Krull dimension of a ring
    Dim {
        /// Fixture file (.lad)
        file: PathBuf,
        /// Ring declared in the fixture
        #[arg(long)]
        ring: String,
    },

    /// Colength by dense linear algebra, independent of Gröbner bases
    #[command(hide = true)]
    OracleLength {
        file: PathBuf,
        #[arg(long)]
        ring: String,
        #[arg(long)]
        ideal: String,
    },
}

#[derive(Args, Debug)]
pub struct MorphismArgs {
    /// Fixture file (.lad)
    pub file: PathBuf,
    /// Map declared in the fixture
    #[arg(long)]
    pub map: String,
    /// Endomorphism of the source; needed when the source has several
    #[arg(long)]
    pub phi: Option<String>,
    /// Endomorphism of the target; needed when the target has several
    #[arg(long)]
    pub psi: Option<String>,
    /// Largest iterate n
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_iter: u64,
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// length S/ψ^n(Q) = length R/φ^n(q) · length of the fiber quotient
    Additivity {
        #[command(flatten)]
        morphism: MorphismArgs,
        /// m-primary ideal of the source
        #[arg(long)]
        q: String,
        /// System of parameters of the closed fiber, in target variables
        #[arg(long)]
        qprime: String,
    },
    /// λ_n(S) ≤ λ_n(R) · length S/(f(m_R) + ψ^n(m_S)) for every n
    Inequality {
        #[command(flatten)]
        morphism: MorphismArgs,
    },
}
