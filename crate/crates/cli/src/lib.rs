//! Command-line front end for `adend-core`.
//!
//! Exit codes: 0 when the checked predicate holds (or the command succeeded),
//! 1 when it fails, 2 on usage or input errors.

pub mod commands;
pub mod format;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use format::InputError;
use report::{Outcome, EXIT_INPUT};

#[derive(Parser, Debug)]
#[command(name = "adend", version, about = "Exact checks, transforms and solvers for anti-dendriform and related algebras")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check identities, structure bundles and bimodules.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Build the associated algebras of a two-operation algebra and check them.
    Derive(DeriveArgs),
    /// Apply a transform (sum, commutator, pre-lie, anti-pre-lie, q-pair, q-pair-alt, q-single).
    Transform(TransformArgs),
    /// Build bimodules, duals, semidirect products and double spaces.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Check anti-O-operators, anti-Rota-Baxter operators and anti-1-cocycles.
    #[command(subcommand)]
    Op(OpCmd),
    /// Bilinear forms: classification, invariance, reconstruction.
    #[command(subcommand)]
    Form(FormCmd),
    /// Polynomial searches via reduced Gröbner bases.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Built-in example algebras.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Validate algebra, bimodule or bundle files.
    Validate(ValidateArgs),
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    /// Check a built-in bundle, or a bundle JSON file, on one or more algebras.
    Structure {
        /// Bundle name or path to a bundle JSON file.
        bundle: String,
        files: Vec<PathBuf>,
        /// Also check every file matching this pattern.
        #[arg(long)]
        glob: Option<String>,
        /// Slot bindings `slot=op`, comma separated.
        #[arg(long, value_delimiter = ',')]
        bind: Vec<String>,
        /// Parameter for q-dependent bundles, as `p/q`.
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
    },
    /// Check one identity, written in the identity language, on an algebra.
    Identity { identity: String, file: PathBuf },
    /// Compare two bundles on one algebra.
    Equiv {
        a: String,
        b: String,
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        bind: Vec<String>,
    },
    /// Compare two bundles on seeded random algebras.
    Random {
        a: String,
        b: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Entries are integers in [-bound, bound].
        #[arg(long, default_value_t = 2)]
        bound: i64,
        /// Probability that an entry is nonzero.
        #[arg(long, default_value_t = 0.3)]
        density: f64,
    },
    /// Check the bimodule axioms of a bimodule file.
    Bimodule { file: PathBuf },
}

#[derive(Args, Debug)]
pub struct DeriveArgs {
    pub file: PathBuf,
    /// Source structure: `anti-dendriform` or `dendriform`.
    #[arg(long, default_value = "anti-dendriform")]
    pub from: String,
    /// The two source operations.
    #[arg(long, value_delimiter = ',')]
    pub ops: Vec<String>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    pub kind: String,
    pub file: PathBuf,
    /// Source operations; defaults depend on the transform.
    #[arg(long, value_delimiter = ',')]
    pub ops: Vec<String>,
    /// Names of the produced operations.
    #[arg(long, value_delimiter = ',')]
    pub into: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum ConstructCmd {
    /// The bimodule (A, -L_▷, -R_◁) of the sum algebra.
    Module {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        ops: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The regular bimodule (A, L, R).
    Regular {
        file: PathBuf,
        #[arg(long, default_value = "mul")]
        op: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The dual bimodule.
    Dual {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The semidirect product algebra of a bimodule.
    Semidirect {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The double space A ⊕ A.
    Double {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        ops: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The semidirect product with the embedded operator T̂(x, u) = (T(u), 0).
    EmbedHat {
        file: PathBuf,
        #[arg(long)]
        map: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum OpCmd {
    /// Anti-O-operator check for T: V → A on a bimodule file.
    AntiO {
        file: PathBuf,
        /// Rows as JSON, a JSON file, or `id`.
        #[arg(long)]
        map: String,
    },
    /// Anti-Rota-Baxter check for P on an associative algebra.
    AntiRb {
        file: PathBuf,
        #[arg(long, default_value = "mul")]
        op: String,
        #[arg(long)]
        map: String,
    },
    /// Anti-1-cocycle check for D: A → V on a bimodule file.
    Cocycle {
        file: PathBuf,
        #[arg(long)]
        map: String,
    },
    /// The anti-dendriform operations induced on the module by an anti-O-operator.
    Induce {
        file: PathBuf,
        #[arg(long)]
        map: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum FormCmd {
    /// Symmetry, nondegeneracy and cocycle conditions.
    Classify {
        file: PathBuf,
        #[arg(long, default_value = "B")]
        form: String,
        #[arg(long, default_value = "mul")]
        op: String,
    },
    /// Invariance on an anti-dendriform (`--ops`) or anti-pre-Lie (`--circ`) algebra.
    Invariance {
        file: PathBuf,
        #[arg(long, default_value = "B")]
        form: String,
        #[arg(long, value_delimiter = ',')]
        ops: Vec<String>,
        #[arg(long)]
        circ: Option<String>,
    },
    /// The compatible anti-dendriform structure of a commutative Connes cocycle.
    Reconstruct {
        file: PathBuf,
        #[arg(long, default_value = "B")]
        form: String,
        #[arg(long, default_value = "mul")]
        op: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The anti-pre-Lie operation of a commutative Connes cocycle.
    AntiPreLie {
        file: PathBuf,
        #[arg(long, default_value = "B")]
        form: String,
        #[arg(long, default_value = "mul")]
        op: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The semidirect product with its pairing form `B`.
    Semidirect {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        ops: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Whether x ↦ B(x, ·) is a bimodule isomorphism.
    Equivalence {
        file: PathBuf,
        #[arg(long, default_value = "B")]
        form: String,
        #[arg(long, value_delimiter = ',')]
        ops: Vec<String>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SolveOpts {
    /// Number of sample points to report.
    #[arg(long, default_value_t = 5)]
    pub samples: usize,
    /// Dimension cap for free and isomorphism searches (default 3, or ADEND_MAX_DIM).
    #[arg(long)]
    pub max_dim: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum SolveCmd {
    /// Compatible anti-dendriform structures on an associative algebra.
    Compatible {
        file: PathBuf,
        #[arg(long, default_value = "mul")]
        op: String,
        #[command(flatten)]
        opts: SolveOpts,
    },
    /// Anti-Rota-Baxter operators on an associative algebra.
    AntiRb {
        file: PathBuf,
        #[arg(long, default_value = "mul")]
        op: String,
        #[command(flatten)]
        opts: SolveOpts,
    },
    /// All anti-dendriform algebras of a dimension, with optional pinned entries.
    Free {
        #[arg(long)]
        dim: usize,
        /// Pinned entries `r112=1`, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        pin: Vec<String>,
        #[command(flatten)]
        opts: SolveOpts,
    },
    /// Isomorphisms between two algebras.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_delimiter = ',')]
        ops: Vec<String>,
        #[command(flatten)]
        opts: SolveOpts,
    },
    /// Isomorphism invariants.
    Invariants {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        ops: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogCmd {
    List,
    Show {
        id: String,
        /// Parameters `name=p/q`.
        #[arg(long, allow_hyphen_values = true)]
        param: Vec<String>,
    },
    Export {
        id: String,
        #[arg(long, allow_hyphen_values = true)]
        param: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run every entry's expected verdicts.
    SelfTest,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    pub files: Vec<PathBuf>,
    /// `algebra`, `bimodule` or `bundle`; guessed from the keys when omitted.
    #[arg(long)]
    pub kind: Option<String>,
}

fn error_json(e: &anyhow::Error) -> serde_json::Value {
    match e.downcast_ref::<InputError>() {
        Some(ie) => json!({ "error": ie.to_json() }),
        None => json!({ "error": { "message": e.to_string() } }),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let json_mode = cli.json;
    match commands::dispatch(&cli, err) {
        Ok(Outcome { code, text, json }) => {
            let _ = if json_mode {
                writeln!(out, "{}", serde_json::to_string_pretty(&json).expect("serializable"))
            } else {
                writeln!(out, "{text}")
            };
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            if json_mode {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&error_json(&e)).expect("serializable"));
            }
            EXIT_INPUT
        }
    }
}
