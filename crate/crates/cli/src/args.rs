use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::ClassifyTarget;

const CONFIG_HELP: &str = "\
CONFIGURATION
  --config reads a TOML file of [section] headers whose values are inclusive
  ranges `key = [lo, hi]`. Sections and keys:
    [curves]       k a n m g
    [surfaces]     k a n l2
    [p1xp1]        k a b
    [sweep]        k a law_k p1 quadric p2 p3 (any p<n>, n >= 2; [1, 0] skips)
    [cor53]        lh h2 hk n k
    [obstruction]  components k
  Values from the file override the defaults, then each --range
  `[section.]key=lo:hi` overrides the file. A key without a section is set
  in every section that has it. --widen F widens the curves, surfaces and
  p1xp1 sections by F.

ENVIRONMENT
  ULRICH_SERIAL=1 disables parallel sweeps.

EXIT CODES
  0 all checks pass, 1 mathematical mismatch, 2 usage or config error.";

#[derive(Debug, Parser)]
#[command(name = "ulrich", version, about = "Exact Ulrich checks and classification solvers for twisted syzygy bundles", after_long_help = CONFIG_HELP)]
pub struct Cli {
    /// TOML file with search ranges.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Range override `[section.]key=lo:hi`; repeatable.
    #[arg(long = "range", global = true, allow_hyphen_values = true)]
    pub ranges: Vec<String>,
    /// Widen the solver ranges by this factor.
    #[arg(long, global = true)]
    pub widen: Option<i64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ulrich test of a sheaf on a concrete model.
    CheckUlrich {
        /// p1, p<n> or quadric.
        #[arg(long)]
        model: String,
        /// line:<c> | syz:<L>:<t> | dualsyz:<L>:<t> | sum:<e1>+<e2>+...
        #[arg(long, allow_hyphen_values = true)]
        sheaf: String,
        /// Polarization class.
        #[arg(long = "H", allow_hyphen_values = true)]
        h: String,
    },
    /// Exact cohomology dimensions of a sheaf.
    Coh {
        #[arg(long)]
        model: String,
        #[arg(long, allow_hyphen_values = true)]
        sheaf: String,
    },
    /// Run one classification solver.
    Classify {
        #[arg(value_enum)]
        target: Target,
        /// Keep tuples that the model constraints would exclude.
        #[arg(long)]
        raw: bool,
    },
    /// Witnesses, sweeps, solvers and negative checks together.
    VerifyTheorem {
        /// Compare the report against a stored one.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    CurvesDual,
    CurvesSyz,
    SurfacesDual,
    #[value(name = "p1xp1-example")]
    P1xP1Example,
    #[value(name = "prop52-scan")]
    Prop52Scan,
}

impl From<Target> for ClassifyTarget {
    fn from(t: Target) -> Self {
        match t {
            Target::CurvesDual => ClassifyTarget::CurvesDual,
            Target::CurvesSyz => ClassifyTarget::CurvesSyz,
            Target::SurfacesDual => ClassifyTarget::SurfacesDual,
            Target::P1xP1Example => ClassifyTarget::P1xP1Example,
            Target::Prop52Scan => ClassifyTarget::Prop52Scan,
        }
    }
}
