//! Command-line arguments and their resolution into a [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use interchange::numeric::grid;
use serde::Serialize;

use crate::output::Format;

pub const THREADS_ENV: &str = "INTERCHANGE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "interchange", version, about = "Cycle statistics of the interchange process on the complete graph")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for Monte Carlo replicas (0: all cores).
    #[arg(long, global = true, env = THREADS_ENV, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandName {
    Exact,
    Verify,
    Figure1,
    Simulate,
    Transition,
    Slowdown,
}

impl CommandName {
    pub fn as_str(self) -> &'static str {
        match self {
            CommandName::Exact => "exact",
            CommandName::Verify => "verify",
            CommandName::Figure1 => "figure1",
            CommandName::Simulate => "simulate",
            CommandName::Transition => "transition",
            CommandName::Slowdown => "slowdown",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// E(s_k(t)) from the closed form over a t grid.
    Exact(RunArgs),
    /// Cross-check the closed form, spectral sum, oracle and exact-rational routes.
    Verify(RunArgs),
    /// Data behind the scaled E(s_k(t/n)) plot with the giant component fraction.
    Figure1(RunArgs),
    /// Monte Carlo estimates of cycle statistics.
    Simulate(RunArgs),
    /// Critical time, window width and fitted envelope constant.
    Transition(RunArgs),
    /// Limiting slowdown curve u(c) against d(c/n)/n.
    Slowdown(RunArgs),
}

impl Command {
    pub fn split(self) -> (CommandName, RunArgs) {
        match self {
            Command::Exact(a) => (CommandName::Exact, a),
            Command::Verify(a) => (CommandName::Verify, a),
            Command::Figure1(a) => (CommandName::Figure1, a),
            Command::Simulate(a) => (CommandName::Simulate, a),
            Command::Transition(a) => (CommandName::Transition, a),
            Command::Slowdown(a) => (CommandName::Slowdown, a),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Number of elements; a comma list for verify and transition.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Cycle length.
    #[arg(long)]
    pub k: Option<usize>,
    /// Several cycle lengths, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "k")]
    pub k_list: Vec<usize>,
    /// A single time (for slowdown: a single c).
    #[arg(long, conflicts_with_all = ["t_min", "t_max", "t_points"])]
    pub t: Option<f64>,
    #[arg(long)]
    pub t_min: Option<f64>,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub t_points: Option<usize>,
    /// Space grid points logarithmically.
    #[arg(long)]
    pub t_log: bool,
    /// Monte Carlo replicas.
    #[arg(long)]
    pub reps: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Cycle length threshold as a fraction of n.
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    /// Fractional bits for the spectral sum (default: adaptive).
    #[arg(long)]
    pub precision_bits: Option<u32>,
    /// Envelope constant C to test against the fitted one.
    #[arg(long)]
    pub big_c: Option<f64>,
    /// Envelope decay constant c.
    #[arg(long, default_value_t = interchange::transition::DEFAULT_SMALL_C)]
    pub small_c: f64,
    /// Track the coupled random graph during simulation.
    #[arg(long)]
    pub couple: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to a file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Self-test: perturb one spectral coefficient so verify must fail.
    #[arg(long, hide = true)]
    pub corrupt_coefficient: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub log: bool,
}

impl TimeGrid {
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            vec![self.min]
        } else {
            grid(self.min, self.max, self.points, self.log)
        }
    }
}

/// Fully resolved parameters of one invocation; echoed into the output header.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: CommandName,
    pub n: Vec<usize>,
    pub k: Vec<usize>,
    pub t: Option<TimeGrid>,
    pub replicas: usize,
    pub base_seed: u64,
    pub epsilon: f64,
    pub precision_bits: Option<u32>,
    pub big_c: Option<f64>,
    pub small_c: f64,
    pub couple_graph: bool,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub corrupt_coefficient: bool,
}

/// Per-command fallbacks for unset flags.
struct Defaults {
    n: &'static [usize],
    k: &'static [usize],
    t: Option<(f64, f64, usize, bool)>,
    replicas: usize,
}

fn defaults(command: CommandName) -> Defaults {
    match command {
        CommandName::Exact => Defaults { n: &[200], k: &[100], t: Some((0.0, 0.02, 41, false)), replicas: 0 },
        CommandName::Verify => Defaults { n: &[8], k: &[], t: None, replicas: 0 },
        CommandName::Figure1 => Defaults { n: &[200], k: &[100], t: Some((0.0, 3.0, 301, false)), replicas: 0 },
        CommandName::Simulate => Defaults { n: &[200], k: &[1, 2, 3], t: Some((0.01, 0.01, 1, false)), replicas: 1000 },
        CommandName::Transition => Defaults { n: &[200, 400, 800], k: &[], t: None, replicas: 0 },
        CommandName::Slowdown => Defaults { n: &[3000], k: &[], t: Some((0.25, 3.0, 12, false)), replicas: 100 },
    }
}

impl RunConfig {
    pub fn resolve(command: CommandName, args: RunArgs) -> anyhow::Result<Self> {
        let d = defaults(command);
        let t = resolve_grid(&args, d.t)?;
        let n = if args.n.is_empty() { d.n.to_vec() } else { args.n };
        if n.contains(&0) {
            anyhow::bail!("n must be positive");
        }
        let multi_n = matches!(command, CommandName::Verify | CommandName::Transition);
        if !multi_n && n.len() != 1 {
            anyhow::bail!("{} takes a single --n", command.as_str());
        }
        let k = match (args.k, args.k_list.is_empty()) {
            (Some(k), _) => vec![k],
            (None, false) => args.k_list,
            (None, true) => d.k.to_vec(),
        };
        let replicas = args.reps.unwrap_or(d.replicas);
        if !(args.eps > 0.0 && args.eps <= 1.0) {
            anyhow::bail!("--eps must lie in (0, 1]");
        }
        Ok(Self {
            command,
            n,
            k,
            t,
            replicas,
            base_seed: args.seed,
            epsilon: args.eps,
            precision_bits: args.precision_bits,
            big_c: args.big_c,
            small_c: args.small_c,
            couple_graph: args.couple,
            format: args.format,
            out: args.out,
            corrupt_coefficient: args.corrupt_coefficient,
        })
    }

    pub fn times(&self) -> Option<Vec<f64>> {
        self.t.as_ref().map(TimeGrid::values)
    }
}

fn resolve_grid(args: &RunArgs, fallback: Option<(f64, f64, usize, bool)>) -> anyhow::Result<Option<TimeGrid>> {
    if let Some(t) = args.t {
        check_time(t)?;
        return Ok(Some(TimeGrid { min: t, max: t, points: 1, log: false }));
    }
    let explicit = args.t_min.is_some() || args.t_max.is_some() || args.t_points.is_some();
    let grid = if explicit {
        let (lo, hi, pts, _) = fallback.unwrap_or((0.0, 1.0, 11, false));
        let (lo, hi, points) = (args.t_min.unwrap_or(lo), args.t_max.unwrap_or(hi), args.t_points.unwrap_or(pts));
        check_time(lo)?;
        check_time(hi)?;
        if !(lo < hi) {
            anyhow::bail!("grid needs --t-min < --t-max, got {lo} and {hi}");
        }
        if points < 2 {
            anyhow::bail!("grid needs --t-points >= 2, got {points}");
        }
        TimeGrid { min: lo, max: hi, points, log: args.t_log }
    } else {
        match fallback {
            Some((min, max, points, log)) => TimeGrid { min, max, points, log: log || args.t_log },
            None => return Ok(None),
        }
    };
    if grid.log && grid.min <= 0.0 {
        anyhow::bail!("a log grid needs --t-min > 0");
    }
    Ok(Some(grid))
}

fn check_time(t: f64) -> anyhow::Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        anyhow::bail!("times must be finite and >= 0, got {t}")
    }
}
