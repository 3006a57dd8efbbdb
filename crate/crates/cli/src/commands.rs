//! The six subcommands. Each returns a table plus the list of failed checks.

use anyhow::{bail, ensure, Context};
use interchange::closed_form::{expected_cycles, expected_distance, giant_component_theta, slowdown_u};
use interchange::transition::{fit_envelope_constant, measure_default_window, validation_grid, DEFAULT_FRACTIONS};
use interchange::{monte_carlo, Estimate, McConfig, TransitionParams};

use crate::checks::verify_n;
use crate::config::{CommandName, RunConfig};
use crate::output::{Cell, Table};

const THETA_TOL: f64 = 1e-14;
const U_TOL: f64 = 1e-10;
const ENVELOPE_POINTS: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub table: Table,
    /// Human-readable descriptions of failed tolerance checks.
    pub failures: Vec<String>,
}

impl Outcome {
    fn clean(table: Table) -> Self {
        Self { table, failures: Vec::new() }
    }
}

pub fn run(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    match cfg.command {
        CommandName::Exact => exact(cfg),
        CommandName::Verify => verify(cfg),
        CommandName::Figure1 => figure1(cfg),
        CommandName::Simulate => simulate(cfg),
        CommandName::Transition => transition(cfg),
        CommandName::Slowdown => slowdown(cfg),
    }
}

fn single_n(cfg: &RunConfig) -> usize {
    cfg.n[0]
}

fn check_ks(n: usize, ks: &[usize]) -> anyhow::Result<()> {
    ensure!(!ks.is_empty(), "no k given");
    if let Some(k) = ks.iter().find(|&&k| k == 0 || k > n) {
        bail!("k={k} outside 1..={n}");
    }
    Ok(())
}

fn times(cfg: &RunConfig) -> anyhow::Result<Vec<f64>> {
    cfg.times().context("this command needs a time grid")
}

pub fn exact(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let n = single_n(cfg);
    check_ks(n, &cfg.k)?;
    let mut table = Table::new(&["n", "k", "t", "x", "E_sk"]);
    for &k in &cfg.k {
        for &t in &times(cfg)? {
            let x = (-(k as f64) * t).exp();
            table.push(vec![n.into(), k.into(), t.into(), x.into(), expected_cycles(n, k, t).into()]);
        }
    }
    Ok(Outcome::clean(table))
}

pub fn verify(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let mut table = Table::new(&[
        "n", "route_pair", "points", "max_abs_err", "max_rel_err", "metric", "tolerance", "worst_k", "worst_at", "pass", "error",
    ]);
    let mut failures = Vec::new();
    let ts = cfg.times();
    for &n in &cfg.n {
        for c in verify_n(n, ts.as_deref(), cfg.precision_bits, cfg.corrupt_coefficient) {
            let pass = c.passed();
            if !pass {
                failures.push(format!("n={n} {}: {:e} > {:e}", c.pair, c.governing(), c.tolerance));
            }
            table.push(vec![
                n.into(),
                c.pair.into(),
                c.points.into(),
                c.max_abs.into(),
                c.max_rel.into(),
                c.metric.as_str().into(),
                c.tolerance.into(),
                c.worst_at.map(|w| w.0).into(),
                c.worst_at.map(|w| w.1).into(),
                pass.into(),
                c.error.clone().into(),
            ]);
        }
    }
    Ok(Outcome { table, failures })
}

pub fn figure1(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let n = single_n(cfg);
    ensure!(cfg.k.len() == 1, "figure1 takes a single k");
    let k = cfg.k[0];
    check_ks(n, &cfg.k)?;
    let (nf, kf) = (n as f64, k as f64);
    let mut table = Table::new(&["t", "E_sk", "scaled_E", "giant"]);
    for &c in &times(cfg)? {
        let e = expected_cycles(n, k, c / nf);
        let giant = if c > 1.0 { giant_component_theta(c, THETA_TOL)? } else { 0.0 };
        table.push(vec![c.into(), e.into(), (nf * nf / kf * e).into(), giant.into()]);
    }
    Ok(Outcome::clean(table))
}

fn estimate_row(t: f64, stat: &str, k: Option<usize>, est: &Estimate, closed: Option<f64>) -> Vec<Cell> {
    vec![
        t.into(),
        stat.into(),
        k.into(),
        est.mean.into(),
        est.std_error.into(),
        closed.into(),
        closed.map(|c| est.z_score(c)).into(),
        est.replicas.into(),
        est.base_seed.into(),
    ]
}

pub fn simulate(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let n = single_n(cfg);
    check_ks(n, &cfg.k)?;
    let mut table = Table::new(&["t", "statistic", "k", "mean", "std_error", "closed_form", "z", "replicas", "seed"]);
    let nf = n as f64;
    for &t in &times(cfg)? {
        let mc = McConfig {
            n,
            t,
            ks: cfg.k.clone(),
            epsilon: cfg.epsilon,
            replicas: cfg.replicas,
            base_seed: cfg.base_seed,
            couple_graph: cfg.couple_graph,
        };
        let s = monte_carlo(&mc)?;
        for (k, est) in &s.s_k {
            table.push(estimate_row(t, "s_k", Some(*k), est, Some(expected_cycles(n, *k, t))));
        }
        let d = expected_distance(n, t);
        table.push(estimate_row(t, "cycles", None, &s.cycles, Some(nf - d)));
        table.push(estimate_row(t, "distance", None, &s.distance, Some(d)));
        table.push(estimate_row(t, "longest", None, &s.longest, None));
        table.push(estimate_row(t, "mass_above_eps", None, &s.mass_above_eps, None));
        if let Some(y) = &s.largest_component {
            table.push(estimate_row(t, "largest_component_fraction", None, y, None));
        }
        table.push(estimate_row(t, "events", None, &s.events, Some(nf * (nf - 1.0) / 2.0 * t)));
    }
    Ok(Outcome::clean(table))
}

fn transition_pairs(cfg: &RunConfig) -> anyhow::Result<Vec<(usize, usize)>> {
    Ok(match cfg.k.len() {
        0 => cfg.n.iter().map(|&n| (n, n / 2)).collect(),
        1 => cfg.n.iter().map(|&n| (n, cfg.k[0])).collect(),
        l if l == cfg.n.len() => cfg.n.iter().copied().zip(cfg.k.iter().copied()).collect(),
        _ => bail!("transition takes no k, one k, or one k per n"),
    })
}

pub fn transition(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let mut table = Table::new(&[
        "n", "k", "t_crit", "q", "f_lo", "f_hi", "t_lo", "t_hi", "width", "width_n32", "big_c_fit", "small_c", "big_c", "envelope_holds",
    ]);
    let mut failures = Vec::new();
    for (n, k) in transition_pairs(cfg)? {
        let p = TransitionParams::new(n, k)?;
        let w = measure_default_window(n, k)?;
        let fit = fit_envelope_constant(n, k, &validation_grid(n, k, ENVELOPE_POINTS)?, cfg.small_c)?;
        let holds = cfg.big_c.map(|c| fit <= c);
        if holds == Some(false) {
            failures.push(format!("n={n} k={k}: fitted C {fit:e} exceeds {:e}", cfg.big_c.unwrap_or_default()));
        }
        let (f_lo, f_hi) = DEFAULT_FRACTIONS;
        table.push(vec![
            n.into(),
            k.into(),
            p.t_crit.into(),
            p.q.into(),
            f_lo.into(),
            f_hi.into(),
            w.crossing(f_lo).into(),
            w.crossing(f_hi).into(),
            w.width.into(),
            (w.width * (n as f64).powf(1.5)).into(),
            fit.into(),
            cfg.small_c.into(),
            cfg.big_c.into(),
            holds.into(),
        ]);
    }
    Ok(Outcome { table, failures })
}

pub fn slowdown(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let n = single_n(cfg);
    let nf = n as f64;
    let mut table = Table::new(&[
        "c", "u_c", "d_over_n_closed", "d_over_n_mc", "d_over_n_mc_stderr", "replicas", "seed",
    ]);
    for &c in &times(cfg)? {
        let u = slowdown_u(c, U_TOL)?;
        let closed = expected_distance(n, c / nf) / nf;
        let mc = if cfg.replicas >= 2 {
            let s = monte_carlo(&McConfig {
                n,
                t: c / nf,
                ks: Vec::new(),
                epsilon: cfg.epsilon,
                replicas: cfg.replicas,
                base_seed: cfg.base_seed,
                couple_graph: false,
            })?;
            Some((s.distance.mean / nf, s.distance.std_error / nf))
        } else {
            None
        };
        table.push(vec![
            c.into(),
            u.into(),
            closed.into(),
            mc.map(|m| m.0).into(),
            mc.map(|m| m.1).into(),
            cfg.replicas.into(),
            cfg.base_seed.into(),
        ]);
    }
    Ok(Outcome::clean(table))
}
