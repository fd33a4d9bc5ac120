use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hart::Error;

mod commands;

#[derive(Parser, Debug)]
#[command(name = "hart", version, about = "Higher Auslander-Reiten theory for bound quiver algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Workspace files, read in order as one text.
    #[arg(short, long = "workspace", global = true, default_value = "fixtures/triangle.hart")]
    pub workspace: Vec<PathBuf>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Ground field: `Q`, `F101`, `101`. Overrides the workspace field.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Longest path enumerated when building the algebra.
    #[arg(long, global = true, default_value_t = hart::presentation::DEFAULT_PATH_BOUND)]
    pub bound_path: usize,
    /// Most modules generated by `ct-generate`.
    #[arg(long, global = true, default_value_t = 200)]
    pub bound_orbit: usize,
    /// Most classes enumerated per pair by `closure-check`.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub bound_enum: usize,
    /// Run on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Also write the report to `<DIR>/<command>.txt`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that a subcategory is d-cluster tilting.
    CtVerify {
        #[arg(long, default_value = "F")]
        subcat: String,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// Generate add{(D Tr_d)^j(I)} from the indecomposable injectives.
    CtGenerate {
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Write the generated modules as a workspace file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Irreducible maps and D Tr_d translations inside a subcategory.
    ArQuiver {
        #[arg(long, default_value = "F")]
        subcat: String,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// D Tr_d of a module.
    Dtr {
        /// Module id or label.
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// The d-AR sequence ending at a module.
    Dar {
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Subcategory to work in.
        #[arg(long = "in", default_value = "F")]
        within: String,
        /// The d-cluster tilting subcategory containing it.
        #[arg(long, default_value = "F")]
        ct: String,
        /// Right end of the sequence, by id or label.
        #[arg(long)]
        end: String,
    },
    /// The summand σx of the X-cover of D Tr_d(x) with nonzero Ext^d.
    Sigma {
        /// The module x, by id or label.
        #[arg(long)]
        end: String,
        #[arg(long, default_value = "X")]
        subcat: String,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// Exactness, splitting and class of a stored sequence.
    CheckSeq {
        /// Id of a `sequence` block in the workspace.
        #[arg(long = "seq")]
        id: String,
        /// Subcategory for d-exactness and almost split checks.
        #[arg(long, default_value = "F")]
        ambient: String,
    },
    /// Defects δ*(x), δ_*(Y), δ_*(D Tr_d x) of a d-AR sequence in X.
    Defect {
        /// A stored sequence; otherwise the d-AR sequence in X ending at `--end`.
        #[arg(long = "seq", conflicts_with = "end")]
        id: Option<String>,
        #[arg(long, required_unless_present = "id")]
        end: Option<String>,
        #[arg(long, default_value = "X")]
        subcat: String,
        #[arg(long, default_value = "F")]
        ct: String,
    },
    /// Test whether a subcategory is closed under d-extensions.
    ClosureCheck {
        #[arg(long, default_value = "X")]
        subcat: String,
        #[arg(long, default_value = "F")]
        ct: String,
        /// Remove these modules from the subcategory first.
        #[arg(long)]
        drop: Vec<String>,
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Run the theorem checkers.
    TheoremCheck {
        which: Theorem,
        /// Only this end; default: every end with nonzero Ext^d into X.
        #[arg(long)]
        end: Option<String>,
        #[arg(long, default_value = "X")]
        subcat: String,
        #[arg(long, default_value = "F")]
        ct: String,
        #[arg(long, default_value_t = 4)]
        trials: usize,
    },
    /// The AR quiver of a subcategory in DOT.
    ExportDot {
        #[arg(long, default_value = "F")]
        subcat: String,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Theorem {
    DivisionRing,
    Pushout,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CtVerify { .. } => "ct-verify",
            Command::CtGenerate { .. } => "ct-generate",
            Command::ArQuiver { .. } => "ar-quiver",
            Command::Dtr { .. } => "dtr",
            Command::Dar { .. } => "dar",
            Command::Sigma { .. } => "sigma",
            Command::CheckSeq { .. } => "check-seq",
            Command::Defect { .. } => "defect",
            Command::ClosureCheck { .. } => "closure-check",
            Command::TheoremCheck { .. } => "theorem-check",
            Command::ExportDot { .. } => "export-dot",
        }
    }
}

/// Exit status for each error kind: 2 parse, 3 validation, 4 verification,
/// 5 mathematically infeasible.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 2,
        Error::Validation(_) | Error::Shape(_) | Error::NotExact(_) => 3,
        Error::VerificationFailed(_) | Error::NotClusterTilting(_) | Error::LiftFailed(_) => 4,
        Error::NoSuchSequence(_)
        | Error::InfiniteDimensional(_)
        | Error::NonSplitEndomorphismRing
        | Error::BoundExceeded(_) => 5,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    match commands::run(&cli) {
        Ok(report) => {
            print!("{}", report.text);
            if let Some(dir) = &cli.global.out {
                if let Err(e) = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(dir.join(format!("{name}.txt")), &report.text)) {
                    eprintln!("error: writing report: {e}");
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(report.status)
        }
        Err(commands::Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(commands::Failure::Hart(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
