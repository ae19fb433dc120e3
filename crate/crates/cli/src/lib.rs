//! Command-line front end for `cvxcore`: instance files in, `KEY=VALUE`
//! reports out.
//!
//! Exit codes: 0 computed (or predicate true), 1 predicate false or empty
//! result, 2 malformed input or a violated hypothesis.

pub mod convert;
pub mod format;
pub mod report;

mod commands;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{Report, EXIT_INPUT};

#[derive(Parser, Debug)]
#[command(name = "cvx", version, about = "Exact convex analysis on semilinear sets")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Queries on one semilinear set.
    #[command(subcommand)]
    Set(SetCmd),
    /// Separation certificates.
    #[command(subcommand)]
    Sep(SepCmd),
    /// Vector optimization over a finite or polytope image.
    #[command(subcommand)]
    Vop(VopCmd),
    /// Parses a file, checks canonical form and structural hypotheses.
    Check { file: PathBuf },
    /// Writes a seeded instance file to standard output.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
pub struct SetFile {
    pub file: PathBuf,
    /// Set block to use (default: the first one).
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum SetCmd {
    Member {
        #[command(flatten)]
        set: SetFile,
        #[arg(long)]
        point: String,
    },
    /// Algebraic interior (core), as a set or at a point.
    Interior {
        #[command(flatten)]
        set: SetFile,
        #[arg(long)]
        point: Option<String>,
        /// Relative core inside the affine hull.
        #[arg(long)]
        relative: bool,
    },
    Closure {
        #[command(flatten)]
        set: SetFile,
        #[arg(long)]
        point: Option<String>,
    },
    /// Vectorial closure membership.
    Vcl {
        #[command(flatten)]
        set: SetFile,
        #[arg(long)]
        point: String,
    },
    Boundary {
        #[command(flatten)]
        set: SetFile,
        #[arg(long)]
        point: Option<String>,
    },
    Components {
        #[command(flatten)]
        set: SetFile,
    },
    Convex {
        #[command(flatten)]
        set: SetFile,
    },
    /// Whether the set is open and convex.
    Basis {
        #[command(flatten)]
        set: SetFile,
    },
}

#[derive(Subcommand, Debug)]
pub enum SepCmd {
    /// Sets `A`, `B`.
    Proper { file: PathBuf },
    /// Set `A`, polytope `B`.
    Strong { file: PathBuf },
    /// Cones `M`, `K`.
    Cones { file: PathBuf },
    /// Functions `f` (max form) and `g` (min form).
    Sandwich { file: PathBuf },
    /// Hrep `cbar`, vector `k`; optional set `A` and cone hrep `B`.
    Gerstewitz {
        file: PathBuf,
        #[arg(long)]
        point: Option<String>,
        /// Also verify subadditivity (for a cone `cbar`).
        #[arg(long)]
        subadditive: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum VopCmd {
    /// All twelve notions at one point, or at every listed image point.
    Classify {
        file: PathBuf,
        #[arg(long)]
        point: Option<String>,
        #[arg(long, default_value_t = cvxcore::vopt::DEFAULT_DEPTH)]
        depth: u32,
    },
    Scalarize {
        file: PathBuf,
        /// Weight functional.
        #[arg(long)]
        l: String,
    },
    Oset {
        file: PathBuf,
        #[arg(long)]
        point: Option<String>,
    },
    /// Audits the implication diagram at every listed image point.
    Diagram {
        file: PathBuf,
        #[arg(long, default_value_t = cvxcore::vopt::DEFAULT_DEPTH)]
        depth: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Set,
    Sep,
    Vop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenPair {
    Proper,
    Strong,
    Cones,
    Sandwich,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,
    #[arg(long)]
    pub seed: u64,
    /// Dimension of a generated set.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Separation pair to generate.
    #[arg(long, value_enum, default_value = "proper")]
    pub pair: GenPair,
    /// VOP instance whose properly efficient points certify at `ε = 1/8`.
    #[arg(long)]
    pub coarse: bool,
}

/// Runs one invocation; returns the exit code and standard output.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            return (code, e.to_string());
        }
    };
    let command = commands::echo(&cli.cmd);
    match commands::dispatch(&cli.cmd) {
        Ok(Output::Report(r)) => (r.code, r.render()),
        Ok(Output::Text(t)) => (0, t),
        Err(msg) => {
            let mut r = Report::new(&command);
            r.put("error", msg);
            (EXIT_INPUT, r.render())
        }
    }
}

pub enum Output {
    Report(Report),
    /// Raw text, used for generated instance files.
    Text(String),
}
