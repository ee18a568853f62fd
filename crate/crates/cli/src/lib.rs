//! `symtc`: cohomology of `B(P^m,2)`, symmetric TC bounds and SO(3) planning.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use symtc_core::so3_planner::Strategy;

pub mod commands;
pub mod golden;

pub const TOOL: &str = "symtc";

/// Largest `m` accepted without `--allow-large`.
pub const DEFAULT_MAX_M: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    BadArguments,
    CoincidentStates,
    CheckFailed,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::BadArguments => 2,
            Status::CoincidentStates => 3,
            Status::CheckFailed => 4,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub status: Status,
    pub message: String,
}

impl CliError {
    pub fn bad_args(message: impl Into<String>) -> Self {
        CliError { status: Status::BadArguments, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// A finished command: the JSON document plus text and CSV views of it.
#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub document: Value,
    pub text: String,
    pub csv: Option<String>,
    pub warnings: Vec<String>,
    pub status: Status,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.document).expect("values serialize") + "\n"),
            Format::Text => Ok(self.text.clone()),
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| CliError::bad_args(format!("{} has no CSV view; use --format json", self.command))),
        }
    }

    pub fn result(&self) -> &Value {
        &self.document["result"]
    }
}

/// Wraps a result with the tool version, the echoed configuration and the
/// sources the computation follows.
pub fn envelope(command: &str, config: Value, citations: &[&str], result: Value) -> Value {
    json!({
        "tool": TOOL,
        "version": symtc_core::VERSION,
        "command": command,
        "config": config,
        "citations": citations,
        "result": result,
    })
}

/// Inclusive range of `m`, written `A..B`, `A..=B` or `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MRange {
    pub start: usize,
    pub end: usize,
}

impl MRange {
    pub fn values(&self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }

    pub fn is_empty(&self) -> bool {
        self.start > self.end
    }
}

impl FromStr for MRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad bound {t:?}: {e}"));
        match s.split_once("..") {
            Some((a, b)) => Ok(MRange { start: parse(a)?, end: parse(b.strip_prefix('=').unwrap_or(b))? }),
            None => {
                let m = parse(s)?;
                Ok(MRange { start: m, end: m })
            }
        }
    }
}

/// A quaternion written `w,x,y,z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuatArg(pub [f64; 4]);

impl FromStr for QuatArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(format!("expected four comma-separated numbers, got {s:?}"));
        }
        let mut q = [0.0; 4];
        for (slot, p) in q.iter_mut().zip(parts) {
            *slot = p.trim().parse().map_err(|e| format!("bad component {p:?}: {e}"))?;
        }
        Ok(QuatArg(q))
    }
}

#[derive(Parser, Debug)]
#[command(name = TOOL, version, about = "Cohomology of B(P^m,2), symmetric TC bounds, and symmetric SO(3) motion planning")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimensions, basis, products and Sq^1 of H*(B(P^m,2); F2).
    Ring {
        #[arg(long)]
        m: usize,
        /// Highest degree to compute (default 2m).
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        allow_large: bool,
    },
    /// Height of zeta and the resulting lower bound for TC^S(P^m).
    Bounds {
        #[arg(long, default_value = "1..8")]
        range: MRange,
        #[arg(long)]
        allow_large: bool,
    },
    /// Re-run every check against the published values.
    VerifyPaper {
        /// Only run checks whose group or id starts with this.
        #[arg(long)]
        only: Option<String>,
        /// Corrupt the expected value of one check (harness self-test).
        #[arg(long, hide = true)]
        mutate: Option<String>,
    },
    /// Plan a symmetric path between two rotations given as quaternions.
    Plan {
        #[arg(long, allow_hyphen_values = true)]
        from: QuatArg,
        #[arg(long, allow_hyphen_values = true)]
        to: QuatArg,
        #[arg(long, default_value = "fallback")]
        strategy: Strategy,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Check the planner contracts on seeded random pairs.
    VerifyPlanner {
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "fallback")]
        strategy: Strategy,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// Largest accepted path displacement per unit of input displacement.
        #[arg(long, default_value_t = 1e3)]
        lipschitz: f64,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Compare integral cohomology groups with the computed mod-2 data.
    IntegralCheck {
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// JSON file with a group list or dataset (default: bundled B(SO(3),2) data).
        #[arg(long)]
        dataset: Option<PathBuf>,
    },
}

pub fn run(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Ring { m, max_degree, allow_large } => commands::ring(*m, *max_degree, *allow_large),
        Command::Bounds { range, allow_large } => commands::bounds(*range, *allow_large),
        Command::VerifyPaper { only, mutate } => Ok(golden::verify_paper(only.as_deref(), mutate.as_deref())),
        Command::Plan { from, to, strategy, samples } => commands::plan(from.0, to.0, *strategy, *samples),
        Command::VerifyPlanner { trials, seed, strategy, samples, lipschitz, tolerance } => {
            commands::verify_planner(*trials, *seed, *strategy, *samples, *lipschitz, *tolerance)
        }
        Command::IntegralCheck { m, dataset } => commands::integral_check(*m, dataset.as_deref()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse() {
        assert_eq!("1..8".parse::<MRange>().unwrap(), MRange { start: 1, end: 8 });
        assert_eq!("2..=3".parse::<MRange>().unwrap(), MRange { start: 2, end: 3 });
        assert_eq!("5".parse::<MRange>().unwrap(), MRange { start: 5, end: 5 });
        assert!("5..4".parse::<MRange>().unwrap().is_empty());
        assert!("a..4".parse::<MRange>().is_err());
    }

    #[test]
    fn quaternions_parse() {
        assert_eq!("1,0,-0.5,2".parse::<QuatArg>().unwrap().0, [1.0, 0.0, -0.5, 2.0]);
        assert!("1,0,0".parse::<QuatArg>().is_err());
    }

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
