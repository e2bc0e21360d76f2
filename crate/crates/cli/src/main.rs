mod commands;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use superglinf::invariants::{Schedule, Side};
use superglinf::loops::InvolutionSpec;
use superglinf::permutation::Group;

/// Exact computations with superized gl(∞).
///
/// Inputs are inline JSON, paths to JSON files, or builtin names such as
/// `p_st` or `shift:2`. Reports go to stdout as JSON unless an emitter flag
/// is given. Exit status: 0 when every check passes, 1 when a check fails,
/// 2 on bad input.
#[derive(Parser, Debug)]
#[command(name = "superglinf", version)]
pub struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Count invariants and class label of a parity function
    ParityClassify { input: String },

    /// Decide equivalence of two parity functions and replay the witness
    ParityEquiv {
        first: String,
        second: String,
        #[arg(long, default_value = "Sg")]
        group: Group,
    },

    /// Density spectrum estimate on one side
    ParitySpectrum {
        input: String,
        #[arg(long, default_value = "right")]
        side: Side,
        #[arg(long, default_value = "anchored")]
        schedule: Schedule,
        /// Emit window rows and the estimate as CSV
        #[arg(long)]
        csv: bool,
    },

    /// Superbracket of two finite supermatrices
    Bracket {
        a: String,
        b: String,
        /// Bracket in the central extension (inputs may carry `z`)
        #[arg(long)]
        extended: bool,
    },

    /// The 2-cocycle of two finite supermatrices
    Cocycle { a: String, b: String },

    /// Transport an extended element along a permutation
    Phi { sigma: String, x: String },

    /// All bases of gl(m|n) linked by odd reflections
    WeylBases {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "ascii")]
        dot: bool,
        #[arg(long)]
        ascii: bool,
    },

    /// Coxeter relations of the distinguished base of sl(m|n)
    WeylCoxeter {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        d_max: u32,
        #[arg(long, default_value_t = superglinf::weyl::DEFAULT_FLOOR)]
        floor: u64,
        #[arg(long)]
        ascii: bool,
    },

    /// Loop-algebra checks on periodic band matrices; random pairs when none are given
    LoopCheck {
        x: Option<String>,
        y: Option<String>,
        /// Half-width of the dense comparison window
        #[arg(long, default_value_t = 40)]
        window: i64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, env = "SUPERGLINF_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        ascii: bool,
    },

    /// Membership, projection and closure for a classical-type subalgebra
    SubalgCheck {
        #[arg(long)]
        kind: InvolutionSpec,
        a: Option<String>,
        b: Option<String>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, env = "SUPERGLINF_SEED", default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.verb) {
        Ok(report) => {
            print!("{}", report.text);
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
