//! Continuous-time simulation of the interchange process on `K_n`.

mod cycle_state;
mod graph;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::Serialize;

pub use cycle_state::{CycleChange, CycleState};
pub use graph::{largest_component, CoupledGraph};

use crate::error::{out_of_range, Result};

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of replica `index` under `base_seed`.
pub fn replica_seed(base_seed: u64, index: u64) -> u64 {
    splitmix64(splitmix64(base_seed) ^ index)
}

/// Generator for one replica.
pub fn replica_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform unordered pair `i < j` from `{0, …, n−1}`.
pub fn uniform_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (usize, usize) {
    let i = rng.random_range(0..n);
    let mut j = rng.random_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    (i.min(j), i.max(j))
}

/// The walk at time `t`.
#[derive(Debug, Clone)]
pub struct PathSample {
    pub state: CycleState,
    pub graph: Option<CoupledGraph>,
    pub events: u64,
}

/// Runs the walk from the identity for time `t`: a Poisson(`t·n(n−1)/2`)
/// number of uniform transpositions.
pub fn sample_path<R: Rng + ?Sized>(n: usize, t: f64, rng: &mut R, couple_graph: bool) -> Result<PathSample> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(out_of_range(format!("t must be finite and >= 0, got {t}")));
    }
    let mut state = CycleState::new_identity(n);
    let mut graph = couple_graph.then(|| CoupledGraph::new(n));
    let mean = t * (n * n.saturating_sub(1)) as f64 / 2.0;
    let events = if mean > 0.0 {
        let poisson = Poisson::new(mean).map_err(|e| out_of_range(e.to_string()))?;
        poisson.sample(rng) as u64
    } else {
        0
    };
    for _ in 0..events {
        let (i, j) = uniform_pair(n, rng);
        #[cfg(debug_assertions)]
        let before = state.cycle_count();
        state.apply_transposition(i, j)?;
        #[cfg(debug_assertions)]
        debug_assert_eq!(before.abs_diff(state.cycle_count()), 1);
        if let Some(g) = graph.as_mut() {
            g.union(i, j);
        }
    }
    if let Err(msg) = state.verify() {
        panic!("cycle bookkeeping corrupted after {events} events: {msg}");
    }
    Ok(PathSample { state, graph, events })
}

/// Observables of one simulated path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicaResult {
    pub seed: u64,
    pub event_count: u64,
    /// `s_k` for each requested `k`, in request order.
    pub s_k: Vec<usize>,
    /// `N`
    pub cycles: usize,
    /// `d = n − N`
    pub distance: usize,
    /// `C`, the longest cycle
    pub longest: usize,
    /// `X_n(ε)`
    pub mass_above_eps: f64,
    /// `Y_n`, the largest component of the coupled graph
    pub largest_component: Option<usize>,
    /// Fraction of vertices in components of size at least `n·ε`; always
    /// bounds `X_n(ε)` from above.
    pub component_mass_above_eps: Option<f64>,
    /// Whether every cycle lies inside a single graph component.
    pub cycles_in_components: Option<bool>,
}

/// Parameters of a Monte Carlo run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McConfig {
    pub n: usize,
    pub t: f64,
    pub ks: Vec<usize>,
    pub epsilon: f64,
    pub replicas: usize,
    pub base_seed: u64,
    pub couple_graph: bool,
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(out_of_range("n must be positive"));
        }
        if self.replicas < 2 {
            return Err(out_of_range(format!("need at least 2 replicas, got {}", self.replicas)));
        }
        if !(self.t >= 0.0 && self.t.is_finite()) {
            return Err(out_of_range(format!("t must be finite and >= 0, got {}", self.t)));
        }
        if let Some(&k) = self.ks.iter().find(|&&k| k == 0 || k > self.n) {
            return Err(out_of_range(format!("k={k} outside 1..={}", self.n)));
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(out_of_range(format!("epsilon must lie in (0, 1], got {}", self.epsilon)));
        }
        Ok(())
    }
}

/// Simulates replica `index`.
pub fn run_replica(cfg: &McConfig, index: u64) -> Result<ReplicaResult> {
    let seed = replica_seed(cfg.base_seed, index);
    let mut rng = replica_rng(seed);
    let PathSample { state, graph, events } = sample_path(cfg.n, cfg.t, &mut rng, cfg.couple_graph)?;
    let (largest, comp_mass, inside) = match graph {
        Some(mut g) => {
            let inside = (0..cfg.n).all(|i| g.find(i) == g.find(state.successor()[i]));
            let threshold = ((cfg.n as f64 * cfg.epsilon).ceil() as usize).max(1);
            let mass: usize = g.component_sizes().into_iter().filter(|&s| s >= threshold).sum();
            (Some(largest_component(&g)), Some(mass as f64 / cfg.n as f64), Some(inside))
        }
        None => (None, None, None),
    };
    Ok(ReplicaResult {
        seed,
        event_count: events,
        s_k: cfg.ks.iter().map(|&k| state.cycles_of_size(k)).collect(),
        cycles: state.cycle_count(),
        distance: state.distance(),
        longest: state.longest_cycle(),
        mass_above_eps: state.mass_above(cfg.epsilon),
        largest_component: largest,
        component_mass_above_eps: comp_mass,
        cycles_in_components: inside,
    })
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub replicas: usize,
    pub base_seed: u64,
}

impl Estimate {
    /// Welford accumulation in iteration order.
    pub fn from_samples<I: IntoIterator<Item = f64>>(samples: I, base_seed: u64) -> Self {
        let (mut count, mut mean, mut m2) = (0usize, 0.0f64, 0.0f64);
        for x in samples {
            count += 1;
            let delta = x - mean;
            mean += delta / count as f64;
            m2 += delta * (x - mean);
        }
        let std_error = if count >= 2 { (m2 / (count - 1) as f64 / count as f64).sqrt() } else { f64::NAN };
        Self { mean, std_error, replicas: count, base_seed }
    }

    /// Number of standard errors separating `value` from the mean.
    pub fn z_score(&self, value: f64) -> f64 {
        (value - self.mean).abs() / self.std_error
    }
}

/// Aggregated Monte Carlo output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McSummary {
    pub config: McConfig,
    pub s_k: Vec<(usize, Estimate)>,
    pub cycles: Estimate,
    pub distance: Estimate,
    pub longest: Estimate,
    pub mass_above_eps: Estimate,
    pub largest_component: Option<Estimate>,
    pub events: Estimate,
    pub replicas: Vec<ReplicaResult>,
}

fn run_all(cfg: &McConfig) -> Result<Vec<ReplicaResult>> {
    let indices = 0..cfg.replicas as u64;
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        indices.into_par_iter().map(|i| run_replica(cfg, i)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        indices.map(|i| run_replica(cfg, i)).collect()
    }
}

/// Runs `cfg.replicas` independent paths and aggregates them in replica order,
/// so the output depends only on the configuration.
pub fn monte_carlo(cfg: &McConfig) -> Result<McSummary> {
    cfg.validate()?;
    let reps = run_all(cfg)?;
    let seed = cfg.base_seed;
    let est = |f: &dyn Fn(&ReplicaResult) -> f64| Estimate::from_samples(reps.iter().map(f), seed);
    let s_k = cfg
        .ks
        .iter()
        .enumerate()
        .map(|(pos, &k)| (k, est(&|r| r.s_k[pos] as f64)))
        .collect();
    let largest_component = cfg
        .couple_graph
        .then(|| est(&|r| r.largest_component.unwrap_or(0) as f64 / cfg.n as f64));
    Ok(McSummary {
        config: cfg.clone(),
        s_k,
        cycles: est(&|r| r.cycles as f64),
        distance: est(&|r| r.distance as f64),
        longest: est(&|r| r.longest as f64),
        mass_above_eps: est(&|r| r.mass_above_eps),
        largest_component,
        events: est(&|r| r.event_count as f64),
        replicas: reps,
    })
}
