//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug, Clone)]
#[command(name = "milnor", version, about = "Exact moduli algebras, nil-polynomials and equivalence certificates")]
pub struct Cli {
    /// Print the report as JSON instead of `KEY: value` lines
    #[arg(long, global = true)]
    pub json: bool,

    /// Record the run in a manifest that `milnor replay` can re-run
    #[arg(long, global = true, value_name = "PATH")]
    pub manifest: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Build a finite-dimensional algebra and write it as JSON
    #[command(subcommand)]
    Algebra(AlgebraCommand),
    /// Nil-polynomial of an admissible algebra
    Nilpoly(NilpolyArgs),
    /// Run one verification
    Check(CheckArgs),
    /// Linear equivalence of nil-polynomials
    #[command(subcommand)]
    Equiv(EquivCommand),
    /// Re-run a recorded manifest
    Replay {
        manifest: PathBuf,
    },
}

/// Where the algebra comes from: a file, a polynomial, or ideal generators.
#[derive(Args, Debug, Clone, Default)]
pub struct SourceArgs {
    /// Variables, in order (inferred from the input when omitted)
    #[arg(long, value_delimiter = ',')]
    pub vars: Vec<String>,

    /// Polynomial f; the algebra is O/J(f)
    #[arg(long)]
    pub poly: Option<String>,

    /// Ideal generators separated by `;`
    #[arg(long)]
    pub gens: Option<String>,

    /// Parameter binding, e.g. `t=1/2`
    #[arg(long = "let", value_name = "NAME=VALUE")]
    pub bindings: Vec<String>,

    /// Use the Tjurina algebra O/(f, J(f)) instead of the Milnor algebra
    #[arg(long)]
    pub tjurina: bool,

    /// Monomial ordering: `default`, `grlex` or `weighted:w1,w2,..`
    #[arg(long)]
    pub ordering: Option<String>,

    /// Monomial basis of the maximal ideal, separated by `;`
    #[arg(long, alias = "monomials")]
    pub basis: Option<String>,

    /// Run over a parameter grid, e.g. `t=-2..2 step 1/2`
    #[arg(long)]
    pub grid: Option<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum AlgebraCommand {
    /// Milnor (or Tjurina) algebra of a polynomial
    FromPoly {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Quotient by an ideal given by generators
    FromIdeal {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Algebra given by a structure table
    FromTable {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct NilpolyArgs {
    /// Algebra file
    pub file: Option<PathBuf>,

    #[command(flatten)]
    pub source: SourceArgs,

    /// Basis label spanning the annihilator
    #[arg(long)]
    pub e0: Option<String>,

    /// Basis labels spanning the kernel of the form, separated by `;`
    #[arg(long)]
    pub kernel: Option<String>,

    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Admissible,
    Nondegen,
    Blaschke,
    Recursion,
    Saito,
    Grading,
    Translation,
    Homogeneity,
}

#[derive(Args, Debug, Clone)]
pub struct CheckArgs {
    pub kind: CheckKind,

    /// Algebra file
    pub file: Option<PathBuf>,

    #[command(flatten)]
    pub source: SourceArgs,

    /// Seed for randomized checks
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Number of random trials
    #[arg(long, default_value_t = 10)]
    pub count: usize,
}

#[derive(Subcommand, Debug, Clone)]
pub enum EquivCommand {
    /// Check `c * Ptilde(x) = P(C x)` for a certificate
    Verify {
        /// P: nil-polynomial file or inline polynomial
        #[arg(long)]
        p: String,
        /// Ptilde: nil-polynomial file or inline polynomial
        #[arg(long)]
        ptilde: String,
        /// Certificate file
        #[arg(long)]
        cert: PathBuf,
        /// Variables of inline polynomials
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
    },
    /// Certificate induced by a linear map between germs
    FromMap {
        #[command(flatten)]
        source: SourceArgs,
        /// The target polynomial (defaults to --poly)
        #[arg(long)]
        poly_tilde: Option<String>,
        /// Bindings for the target (defaults to --let)
        #[arg(long = "let-tilde", value_name = "NAME=VALUE")]
        bindings_tilde: Vec<String>,
        /// Basis of the target maximal ideal (defaults to --basis)
        #[arg(long)]
        basis_tilde: Option<String>,
        /// The map, e.g. `z1->z1; z2->-z2`
        #[arg(long)]
        map: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare isomorphism invariants of two algebras
    Fingerprint {
        first: PathBuf,
        second: PathBuf,
    },
    /// Bounded search for a diagonal certificate
    Search {
        #[arg(long)]
        p: String,
        #[arg(long)]
        ptilde: String,
        /// Largest numerator and denominator of the scaling parameter
        #[arg(long, default_value_t = 6)]
        bound: i64,
        /// Extra weight patterns, e.g. `1,2; 2,1`
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}
