//! The jump of `E(s_k(t))` from 0 to `1/k`.
//!
//! The jump sits at `t_crit`, the time with `e^{−k·t_crit} = (n−k)/(n−1)`,
//! where the integrand `φ` peaks exactly at `x = e^{−kt}`. Away from it the
//! deviation from the step `(1/k)·[t > t_crit]` is bounded by
//! `C·q·exp(−c·(n−k)·min(|t−t_crit|²k², 1))` with `q = n^{3/2}k^{−3/2}(n−k)^{−1/2}`
//! and universal but unspecified `C`, `c`; this module evaluates the envelope
//! for given constants and fits the smallest `C` that works on a grid.

use serde::Serialize;

use crate::closed_form::expected_cycles;
use crate::error::{out_of_range, Error, Result};
use crate::numeric::{grid, ln_binomial};

/// Default decay constant of the envelope.
pub const DEFAULT_SMALL_C: f64 = 1.0 / 8.0;

/// Default window fractions of the equilibrium value `1/k`.
pub const DEFAULT_FRACTIONS: (f64, f64) = (0.25, 0.75);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransitionParams {
    pub n: usize,
    pub k: usize,
    pub t_crit: f64,
    /// Location `(n−k)/(n−1)` of the peak of `φ`.
    pub y_peak: f64,
    /// Polynomial prefactor `n^{3/2}k^{−3/2}(n−k)^{−1/2}`.
    pub q: f64,
}

impl TransitionParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(out_of_range(format!("transition needs 1 <= k < n, got n={n}, k={k}")));
        }
        let (nf, kf) = (n as f64, k as f64);
        // ln((n−k)/(n−1)) = ln(1 − (k−1)/(n−1))
        let t_crit = -(-(kf - 1.0) / (nf - 1.0)).ln_1p() / kf;
        Ok(Self {
            n,
            k,
            t_crit,
            y_peak: (nf - kf) / (nf - 1.0),
            q: nf.powf(1.5) * kf.powf(-1.5) * (nf - kf).powf(-0.5),
        })
    }

    /// `|E(s_k(t)) − (1/k)·[t > t_crit]|`.
    pub fn deviation(&self, t: f64) -> f64 {
        let step = if t > self.t_crit { 1.0 / self.k as f64 } else { 0.0 };
        (expected_cycles(self.n, self.k, t) - step).abs()
    }

    /// The envelope with unit `C`: `q·exp(−small_c·(n−k)·min(|t−t_crit|²k², 1))`.
    pub fn unit_envelope(&self, t: f64, small_c: f64) -> f64 {
        let s = ((t - self.t_crit) * self.k as f64).powi(2).min(1.0);
        self.q * (-small_c * (self.n - self.k) as f64 * s).exp()
    }

    /// `B₁ = (1/k)·C(n,k)·x^{n−k}(1−x)^{k−1}`.
    pub fn boundary_term(&self, x: f64) -> f64 {
        if !(x > 0.0 && x < 1.0) {
            return 0.0;
        }
        (ln_binomial(self.n as u64, self.k as u64) - (self.k as f64).ln() + psi_unchecked(x, self.n, self.k)).exp()
    }

    /// `(q/k)·exp(−min(|ε|, 1/4)²(n−k)/4)` with `ε = (x − y_peak)/y_peak`.
    pub fn boundary_envelope(&self, x: f64) -> f64 {
        let eps = ((x - self.y_peak) / self.y_peak).abs().min(0.25);
        self.q / self.k as f64 * (-eps * eps * (self.n - self.k) as f64 / 4.0).exp()
    }
}

/// The critical time `t_crit(n, k)`.
pub fn critical_time(n: usize, k: usize) -> Result<f64> {
    Ok(TransitionParams::new(n, k)?.t_crit)
}

fn psi_unchecked(y: f64, n: usize, k: usize) -> f64 {
    (n - k) as f64 * y.ln() + (k - 1) as f64 * (-y).ln_1p()
}

/// `ψ(y) = (n−k)·ln y + (k−1)·ln(1−y)`, the logarithm of `φ`.
pub fn psi(y: f64, n: usize, k: usize) -> Result<f64> {
    if k == 0 || k > n {
        return Err(out_of_range(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    if !(y > 0.0 && y < 1.0) {
        return Err(out_of_range(format!("psi needs 0 < y < 1, got {y}")));
    }
    Ok(psi_unchecked(y, n, k))
}

/// `big_c·q·exp(−small_c·(n−k)·min(|t−t_crit|²k², 1))`.
pub fn transition_envelope(n: usize, k: usize, t: f64, big_c: f64, small_c: f64) -> Result<f64> {
    Ok(big_c * TransitionParams::new(n, k)?.unit_envelope(t, small_c))
}

/// Smallest `C` for which the envelope dominates the deviation at every `t` in `times`.
pub fn fit_envelope_constant(n: usize, k: usize, times: &[f64], small_c: f64) -> Result<f64> {
    let p = TransitionParams::new(n, k)?;
    Ok(times.iter().map(|&t| p.deviation(t) / p.unit_envelope(t, small_c)).fold(0.0, f64::max))
}

/// Smallest `C′` with `B₁(x) ≤ C′·boundary_envelope(x)` at every `x` in `xs`.
pub fn fit_boundary_constant(n: usize, k: usize, xs: &[f64]) -> Result<f64> {
    let p = TransitionParams::new(n, k)?;
    Ok(xs.iter().map(|&x| p.boundary_term(x) / p.boundary_envelope(x)).fold(0.0, f64::max))
}

/// `200` evenly spaced times on `[0, 3·t_crit]`.
pub fn validation_grid(n: usize, k: usize, points: usize) -> Result<Vec<f64>> {
    let tc = critical_time(n, k)?;
    Ok(grid(0.0, 3.0 * tc, points, false))
}

/// A sampled curve of `E(s_k(t))` around the transition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransitionProfile {
    pub n: usize,
    pub k: usize,
    pub t_crit: f64,
    /// `(t, E(s_k(t)))`, increasing in `t`.
    pub grid: Vec<(f64, f64)>,
    /// `(f, t)`: first interpolated time with `E(s_k(t)) = f/k`.
    pub crossings: Vec<(f64, f64)>,
    /// Crossing time at `f_hi` minus crossing time at `f_lo`.
    pub width: f64,
}

impl TransitionProfile {
    pub fn crossing(&self, fraction: f64) -> Option<f64> {
        self.crossings.iter().find(|(f, _)| *f == fraction).map(|&(_, t)| t)
    }
}

/// Rough width scale `1/(k·√(n−k))`.
pub fn window_estimate(n: usize, k: usize) -> f64 {
    1.0 / (k as f64 * ((n - k) as f64).sqrt())
}

struct Curve {
    n: usize,
    k: usize,
    points: Vec<(f64, f64)>,
}

impl Curve {
    fn eval(&mut self, t: f64) -> f64 {
        let e = expected_cycles(self.n, self.k, t);
        self.points.push((t, e));
        e
    }

    /// First up-crossing of `target` on a uniform grid over `[lo, hi]`,
    /// refined until the bracket is shorter than `resolution`.
    fn crossing(&mut self, lo: f64, hi: f64, target: f64, resolution: f64) -> Option<f64> {
        const COARSE: usize = 41;
        const FINE: usize = 8;
        let ts = grid(lo, hi, COARSE, false);
        let vals: Vec<f64> = ts.iter().map(|&t| self.eval(t)).collect();
        if vals[0] >= target {
            return None;
        }
        let i = vals.iter().position(|&v| v >= target)?;
        let (mut a, mut b) = ((ts[i - 1], vals[i - 1]), (ts[i], vals[i]));
        while b.0 - a.0 > resolution {
            let sub = grid(a.0, b.0, FINE + 1, false);
            let mut prev = a;
            for &t in &sub[1..FINE] {
                let v = self.eval(t);
                if v >= target {
                    b = (t, v);
                    break;
                }
                prev = (t, v);
            }
            a = prev;
        }
        Some(a.0 + (target - a.1) * (b.0 - a.0) / (b.1 - a.1))
    }
}

/// Profiles `E(s_k(t))` around `t_crit` and measures the time between the
/// crossings of `f_lo/k` and `f_hi/k`.
///
/// The search starts on `t_crit ± 10/(k√(n−k))` and widens fourfold once
/// before giving up.
pub fn measure_window(n: usize, k: usize, f_lo: f64, f_hi: f64, resolution: f64) -> Result<TransitionProfile> {
    if !(0.0 < f_lo && f_lo < f_hi && f_hi < 1.0) {
        return Err(out_of_range(format!("need 0 < f_lo < f_hi < 1, got {f_lo}, {f_hi}")));
    }
    if !(resolution > 0.0) {
        return Err(out_of_range("resolution must be positive"));
    }
    let p = TransitionParams::new(n, k)?;
    let kf = k as f64;
    let mut curve = Curve { n, k, points: Vec::new() };
    let mut crossings = Vec::with_capacity(2);
    for f in [f_lo, f_hi] {
        let mut half = 10.0 * window_estimate(n, k);
        let mut found = None;
        let mut span = (0.0, 0.0);
        for _ in 0..2 {
            span = ((p.t_crit - half).max(0.0), p.t_crit + half);
            found = curve.crossing(span.0, span.1, f / kf, resolution);
            if found.is_some() {
                break;
            }
            half *= 4.0;
        }
        let t = found.ok_or(Error::NotBracketed { fraction: f, t_min: span.0, t_max: span.1 })?;
        crossings.push((f, t));
    }
    let mut grid = curve.points;
    grid.sort_by(|a, b| a.0.total_cmp(&b.0));
    grid.dedup_by(|a, b| a.0 == b.0);
    let width = crossings[1].1 - crossings[0].1;
    Ok(TransitionProfile { n, k, t_crit: p.t_crit, grid, crossings, width })
}

/// [`measure_window`] with the default fractions and a resolution of
/// `10⁻³` window estimates.
pub fn measure_default_window(n: usize, k: usize) -> Result<TransitionProfile> {
    if k == 0 || k >= n {
        return Err(out_of_range(format!("transition needs 1 <= k < n, got n={n}, k={k}")));
    }
    let (lo, hi) = DEFAULT_FRACTIONS;
    measure_window(n, k, lo, hi, 1e-3 * window_estimate(n, k))
}
