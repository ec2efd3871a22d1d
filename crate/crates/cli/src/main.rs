//! `ulg`: uniquely labelled geodesics in Coxeter groups.
//!
//! Exit codes: 0 success, 1 a checked claim failed, 2 usage error,
//! 3 a resource limit was hit.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "ulg",
    version,
    about = "Uniquely labelled geodesics in Coxeter groups"
)]
pub struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct DiagramArg {
    /// Builtin diagram (A<n>, Atilde2, Dstar4, Dtilde6-paper) or a diagram file.
    #[arg(long)]
    pub diagram: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Truncated generating function of uniquely labelled geodesics.
    Genfun {
        #[command(flatten)]
        diagram: DiagramArg,
        #[arg(long)]
        radius: usize,
    },
    /// Reducedness, label and uniqueness verdict for one word.
    UlgCheck {
        #[command(flatten)]
        diagram: DiagramArg,
        #[arg(long)]
        word: String,
        /// Memoisation state budget.
        #[arg(long, default_value_t = ulg_core::geodesics::DEFAULT_STATE_CAP)]
        cap: usize,
    },
    /// All reduced words of the element a word represents.
    ReducedWords {
        #[command(flatten)]
        diagram: DiagramArg,
        #[arg(long)]
        word: String,
        /// Keep only words with this label (comma separated counts).
        #[arg(long)]
        label: Option<String>,
        /// Maximum number of words to produce.
        #[arg(long, default_value_t = ulg_core::geodesics::DEFAULT_WORD_CAP)]
        cap: usize,
    },
    /// Type-A closed forms next to census values.
    TypeaReport {
        /// Rank range such as `3..5` (inclusive) or a single rank.
        #[arg(long)]
        n: String,
    },
    /// Path structure of one word, or of every census u.l.g. in a ball.
    TreeCheck {
        #[command(flatten)]
        diagram: DiagramArg,
        #[arg(long, conflicts_with = "radius", required_unless_present = "radius")]
        word: Option<String>,
        #[arg(long)]
        radius: Option<usize>,
    },
    /// The affine D~6 case study.
    Dtilde6 {
        #[command(subcommand)]
        command: Dtilde6Command,
    },
    /// Reference label tables.
    Appendix {
        #[command(subcommand)]
        command: AppendixCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum Dtilde6Command {
    /// Check the periodic words, the rewriting and the case list.
    Verify {
        /// Largest power checked for uniqueness.
        #[arg(long, default_value_t = 2)]
        nmax: usize,
        #[arg(long, default_value_t = ulg_core::geodesics::DEFAULT_STATE_CAP)]
        cap: usize,
    },
    /// Distance profiles between the three periodic lines.
    FellowTravel {
        /// Number of steps along each compared line.
        #[arg(long, default_value_t = 60)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum AppendixCommand {
    /// Recompute the type-A label sets and compare with the shipped table.
    Diff {
        #[arg(long, default_value = "3..5")]
        n: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    ExitCode::from(commands::run(cli))
}
