//! Command-line front end. [`run`] is shared by the binary and the C ABI.

mod commands;
pub mod spec;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::{Format, Report, Status};
pub use spec::parse_spec;

#[derive(Debug, Parser)]
#[command(
    name = "polybound",
    version,
    about = "Polybounded covers, Zariski isolation and filter witnesses for semigroups"
)]
pub struct Cli {
    /// Window size N (clamped to the order of finite semigroups).
    #[arg(long, global = true, env = "POLYBOUND_WINDOW", default_value_t = 100)]
    pub window: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Append wall-clock time to the report (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(flatten)]
    pub guards: Guards,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Guards {
    /// Largest nominal candidate count for cover and isolation searches.
    #[arg(long, global = true, default_value_t = crate::polybounded::DEFAULT_CANDIDATE_GUARD)]
    pub max_candidates: u128,
    /// Largest number of set-cover search nodes.
    #[arg(long, global = true, default_value_t = crate::polybounded::DEFAULT_NODE_GUARD)]
    pub max_nodes: u64,
    /// Largest window for the cubic checks in `analyze`.
    #[arg(long, global = true, default_value_t = 400)]
    pub max_cubic_window: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structural checks on a window.
    Analyze { spec: String },
    /// Polybounded covers.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Isolated points of the T1 Zariski topology.
    #[command(subcommand)]
    Zariski(ZariskiCmd),
    /// Avoider sequences, families and filter witnesses.
    #[command(subcommand)]
    Lab(LabCmd),
}

#[derive(Debug, Clone, Args)]
pub struct CoverSource {
    /// Cover file: one `<polynomial> = <element>` per line.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Use `{(x, b) : b ∈ S}` (finite semigroups only).
    #[arg(long, conflicts_with = "file")]
    pub trivial: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    /// Largest polynomial degree.
    #[arg(long, default_value_t = 2)]
    pub deg: usize,
    /// Coefficient pool, e.g. `0..10`, `0..=3,7`.
    #[arg(long, default_value = "0..10")]
    pub coeffs: String,
    /// Largest number of pairs.
    #[arg(long, default_value_t = 4)]
    pub size: usize,
}

#[derive(Debug, Subcommand)]
pub enum CoverCmd {
    /// Check a cover on the window.
    Verify {
        spec: String,
        #[command(flatten)]
        source: CoverSource,
        /// Only these elements need covering.
        #[arg(long)]
        target: Option<String>,
    },
    /// Least cover within degree, coefficient and size bounds.
    Search {
        spec: String,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        target: Option<String>,
    },
    /// Rewrite a cover so every polynomial starts and ends with `x`.
    Prune {
        spec: String,
        #[command(flatten)]
        source: CoverSource,
    },
    /// Prune, then make every constant regular (finite semigroups).
    Regularize {
        spec: String,
        #[command(flatten)]
        source: CoverSource,
    },
    /// Push a cover through a quotient map.
    Transport {
        spec: String,
        #[command(flatten)]
        source: CoverSource,
        /// File with one congruence class per line.
        #[arg(long, group = "quotient")]
        congruence: Option<PathBuf>,
        /// Rees quotient by this ideal, e.g. `0,2..4`.
        #[arg(long, group = "quotient")]
        ideal: Option<String>,
        /// Congruence generated by pairs, e.g. `0:2,1:3`.
        #[arg(long, group = "quotient")]
        identify: Option<String>,
    },
    /// Cover of `X × Y` from covers of both factors.
    Product {
        left: String,
        right: String,
        #[arg(long)]
        left_file: Option<PathBuf>,
        #[arg(long)]
        right_file: Option<PathBuf>,
        /// Use the trivial cover for any factor without a file.
        #[arg(long)]
        trivial: bool,
    },
    /// Identity and inverse map of a cancellative semigroup from a cover.
    GroupExtract {
        spec: String,
        #[command(flatten)]
        source: CoverSource,
    },
    /// Rewrite a group cover so every constant is the identity.
    NormalizeGroup {
        spec: String,
        #[command(flatten)]
        source: CoverSource,
    },
    /// Check the power-repetition bound on the center.
    CenterBound {
        spec: String,
        #[command(flatten)]
        source: CoverSource,
    },
}

#[derive(Debug, Subcommand)]
pub enum ZariskiCmd {
    /// Search for an isolation certificate of one point.
    Isolate {
        spec: String,
        #[arg(long)]
        point: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Isolation status of every window point.
    Report {
        spec: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check an isolation certificate.
    Verify {
        spec: String,
        /// Certificate file: `point=<i>` then cover lines.
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Reading {
    Words,
    Letters,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// Base set A from an avoider sequence with this many steps; a sequence
    /// that stops early is used as far as it got.
    #[arg(long, group = "base_source")]
    pub from_avoider: Option<usize>,
    /// Base set A given directly, e.g. `0,1,3,10`.
    #[arg(long = "base-set", group = "base_source")]
    pub base_set: Option<String>,
    #[arg(long, value_enum, default_value_t = Reading::Words)]
    pub reading: Reading,
    #[arg(long, default_value_t = 2)]
    pub blocks: usize,
    /// Coefficient pool; the default is the first five enumerated elements.
    #[arg(long, default_value = "0..5")]
    pub pool: String,
    #[arg(long, default_value_t = 10_000)]
    pub max_entries: usize,
}

#[derive(Debug, Subcommand)]
pub enum LabCmd {
    /// Greedy sequence avoiding every small polynomial equation.
    Avoider {
        spec: String,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Reading::Words)]
        reading: Reading,
    },
    /// Expand the family of sets `a₀Aa₁⋯Aaₙ` on the window.
    Family {
        spec: String,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Closure and fiber conditions on the family.
    L0Check {
        spec: String,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 10)]
        fiber_bound: usize,
    },
    /// Is `{0} ∪ (window ∖ S)` a 0-neighborhood?
    Tau0 {
        spec: String,
        #[command(flatten)]
        family: FamilyArgs,
        /// The set S.
        #[arg(long, default_value = "")]
        exclude: String,
        #[arg(long)]
        threshold: Option<usize>,
    },
    /// Classify shifted products of a filter base.
    Filter {
        spec: String,
        /// `cofinite`, `random:<count>` or `singleton:<x>`.
        #[arg(long, default_value = "cofinite")]
        base: String,
        /// Scenario file; overrides `--base`.
        #[arg(long)]
        scenario: Option<PathBuf>,
        /// `none` or a comma list of coefficients (`id` for the identity).
        #[arg(long, default_value = "none")]
        shifts: String,
        /// Number of extra filter factors: 1 means ℱℱ.
        #[arg(long)]
        iterate: Option<usize>,
        /// Cofiniteness threshold t; defaults to ⌈N/10⌉.
        #[arg(long)]
        threshold: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// What a process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Command {
    /// Command echo and primary spec, used for error reports.
    fn label(&self) -> (&'static str, &str) {
        match self {
            Command::Analyze { spec } => ("analyze", spec),
            Command::Cover(c) => match c {
                CoverCmd::Verify { spec, .. } => ("cover verify", spec),
                CoverCmd::Search { spec, .. } => ("cover search", spec),
                CoverCmd::Prune { spec, .. } => ("cover prune", spec),
                CoverCmd::Regularize { spec, .. } => ("cover regularize", spec),
                CoverCmd::Transport { spec, .. } => ("cover transport", spec),
                CoverCmd::Product { left, .. } => ("cover product", left),
                CoverCmd::GroupExtract { spec, .. } => ("cover group-extract", spec),
                CoverCmd::NormalizeGroup { spec, .. } => ("cover normalize-group", spec),
                CoverCmd::CenterBound { spec, .. } => ("cover center-bound", spec),
            },
            Command::Zariski(c) => match c {
                ZariskiCmd::Isolate { spec, .. } => ("zariski isolate", spec),
                ZariskiCmd::Report { spec, .. } => ("zariski report", spec),
                ZariskiCmd::Verify { spec, .. } => ("zariski verify", spec),
            },
            Command::Lab(c) => match c {
                LabCmd::Avoider { spec, .. } => ("lab avoider", spec),
                LabCmd::Family { spec, .. } => ("lab family", spec),
                LabCmd::L0Check { spec, .. } => ("lab l0-check", spec),
                LabCmd::Tau0 { spec, .. } => ("lab tau0", spec),
                LabCmd::Filter { spec, .. } => ("lab filter", spec),
            },
        }
    }
}

/// Parse arguments (including the program name) and run one command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let report = execute(&cli);
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    Outcome {
        code: report.exit_code(),
        stdout: report.render(format),
        stderr: String::new(),
    }
}

/// Run a parsed command; failures become `status: error` reports.
pub fn execute(cli: &Cli) -> Report {
    let (command, spec) = cli.command.label();
    let start = Instant::now();
    let mut report = match commands::dispatch(cli, command) {
        Ok(r) => r,
        Err(e) => {
            let mut r = Report::new(command, spec, None);
            r.set_status(Status::Error);
            r.set("error", e.to_string());
            r
        }
    };
    if cli.timing {
        report.set_timing(start.elapsed());
    }
    report
}
