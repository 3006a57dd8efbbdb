//! Route-agreement checks shared by `verify` and the acceptance suite.

use interchange::closed_form::{expected_cycles, expected_cycles_at_x, expected_cycles_x};
use interchange::numeric::grid;
use interchange::oracle::{build_class_chain, MAX_N};
use interchange::rep_theory::CycleBasis;
use interchange::{critical_time, cycle_basis};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

pub const ORACLE_TIMES: [f64; 3] = [0.05, 0.2, 1.0];
pub const ORACLE_TOL: f64 = 1e-8;
pub const SPECTRAL_REL_TOL: f64 = 1e-10;
pub const RATIONAL_REL_TOL: f64 = 1e-10;
pub const RATIONAL_MAX_N: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Abs,
    Rel,
}

impl Metric {
    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Abs => "abs",
            Metric::Rel => "rel",
        }
    }
}

/// Worst disagreement between two routes over a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RouteCheck {
    pub n: usize,
    pub pair: &'static str,
    pub points: usize,
    pub max_abs: f64,
    pub max_rel: f64,
    pub metric: Metric,
    pub tolerance: f64,
    /// First evaluation error, if any route failed outright.
    pub error: Option<String>,
    /// Where the governing error peaked: `(k, t or x)`.
    pub worst_at: Option<(usize, f64)>,
}

impl RouteCheck {
    fn new(n: usize, pair: &'static str, metric: Metric, tolerance: f64) -> Self {
        Self { n, pair, points: 0, max_abs: 0.0, max_rel: 0.0, metric, tolerance, error: None, worst_at: None }
    }

    fn record(&mut self, k: usize, at: f64, got: f64, want: f64) {
        let abs = (got - want).abs();
        let rel = if want == 0.0 { if got == 0.0 { 0.0 } else { f64::INFINITY } } else { abs / want.abs() };
        let governing = match self.metric {
            Metric::Abs => abs,
            Metric::Rel => rel,
        };
        if governing.is_nan() || governing > self.governing() || self.worst_at.is_none() {
            self.worst_at = Some((k, at));
        }
        self.points += 1;
        self.max_abs = nan_max(self.max_abs, abs);
        self.max_rel = nan_max(self.max_rel, rel);
    }

    fn fail(&mut self, msg: String) {
        self.error.get_or_insert(msg);
    }

    pub fn governing(&self) -> f64 {
        match self.metric {
            Metric::Abs => self.max_abs,
            Metric::Rel => self.max_rel,
        }
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.points > 0 && self.governing() <= self.tolerance
    }
}

fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// Eight log-spaced times over `[t_c/4, 4·t_c]`; `t_c = 1/n` stands in where
/// the critical time is zero (`k = 1`) or undefined (`k = n`).
pub fn spectral_check_grid(n: usize, k: usize) -> Vec<f64> {
    let center = critical_time(n, k).ok().filter(|&t| t > 0.0).unwrap_or(1.0 / n as f64);
    grid(center / 4.0, 4.0 * center, 8, true)
}

/// Rational points in `(0, 1)` where the floating and exact closed forms are compared.
pub fn rational_check_points() -> Vec<BigRational> {
    let mut xs = vec![BigRational::new(1.into(), 1024.into())];
    xs.extend((1..8).map(|j| BigRational::new(j.into(), 8.into())));
    xs.push(BigRational::new(1023.into(), 1024.into()));
    xs
}

/// Spectral-sum basis, optionally with one coefficient doubled.
pub fn basis(n: usize, k: usize, corrupt: bool) -> interchange::Result<CycleBasis> {
    let mut b = cycle_basis(n, k)?;
    if corrupt {
        let i = b.terms.len().min(2) - 1;
        b.terms[i].a = &b.terms[i].a * BigRational::from_integer(2.into());
    }
    Ok(b)
}

pub fn spectral_value(basis: &CycleBasis, t: f64, precision_bits: Option<u32>) -> interchange::Result<f64> {
    let v = match precision_bits {
        Some(bits) => basis.evaluate(t, bits)?,
        None => basis.evaluate_adaptive(t, 2f64.powi(-64))?,
    };
    Ok(v.to_f64())
}

/// Closed form and spectral sum against the class-chain oracle (`n ≤ 8`).
pub fn oracle_checks(n: usize, times: &[f64], precision_bits: Option<u32>, corrupt: bool) -> Vec<RouteCheck> {
    let mut closed = RouteCheck::new(n, "closed_vs_oracle", Metric::Abs, ORACLE_TOL);
    let mut spectral = RouteCheck::new(n, "spectral_vs_oracle", Metric::Abs, ORACLE_TOL);
    let chain = match build_class_chain(n) {
        Ok(c) => c,
        Err(e) => {
            closed.fail(e.to_string());
            spectral.fail(e.to_string());
            return vec![closed, spectral];
        }
    };
    for k in 1..=n {
        let b = basis(n, k, corrupt);
        for &t in times {
            let oracle = match chain.expected_cycles(k, t) {
                Ok(v) => v,
                Err(e) => {
                    closed.fail(e.to_string());
                    spectral.fail(e.to_string());
                    continue;
                }
            };
            closed.record(k, t, expected_cycles(n, k, t), oracle);
            match b.as_ref().map_err(|e| e.to_string()).and_then(|b| spectral_value(b, t, precision_bits).map_err(|e| e.to_string())) {
                Ok(v) => spectral.record(k, t, v, oracle),
                Err(e) => spectral.fail(format!("k={k}, t={t}: {e}")),
            }
        }
    }
    vec![closed, spectral]
}

/// Spectral sum against the floating closed form, relative, for every `k`.
/// `times` overrides the per-`k` default grid.
pub fn spectral_check(n: usize, times: Option<&[f64]>, precision_bits: Option<u32>, corrupt: bool) -> RouteCheck {
    let mut check = RouteCheck::new(n, "spectral_vs_closed", Metric::Rel, SPECTRAL_REL_TOL);
    for k in 1..=n {
        let b = match basis(n, k, corrupt) {
            Ok(b) => b,
            Err(e) => {
                check.fail(e.to_string());
                continue;
            }
        };
        let ts = times.map_or_else(|| spectral_check_grid(n, k), <[f64]>::to_vec);
        for t in ts {
            match spectral_value(&b, t, precision_bits) {
                Ok(v) => check.record(k, t, v, expected_cycles(n, k, t)),
                Err(e) => check.fail(format!("k={k}, t={t}: {e}")),
            }
        }
    }
    check
}

/// Floating closed form against exact rational arithmetic at identical `x`.
pub fn rational_check(n: usize) -> RouteCheck {
    let mut check = RouteCheck::new(n, "closed_vs_rational", Metric::Rel, RATIONAL_REL_TOL);
    let xs = rational_check_points();
    for k in 1..=n {
        for x in &xs {
            let xf = x.to_f64().expect("small rational");
            match expected_cycles_at_x(n, k, x) {
                Ok(exact) => check.record(k, xf, expected_cycles_x(n, k, xf), exact.to_f64().unwrap_or(f64::NAN)),
                Err(e) => check.fail(format!("k={k}, x={xf}: {e}")),
            }
        }
    }
    check
}

/// Every applicable route pair for one `n`.
pub fn verify_n(n: usize, times: Option<&[f64]>, precision_bits: Option<u32>, corrupt: bool) -> Vec<RouteCheck> {
    let mut out = Vec::new();
    if (2..=MAX_N).contains(&n) {
        out.extend(oracle_checks(n, times.unwrap_or(&ORACLE_TIMES), precision_bits, corrupt));
    }
    out.push(spectral_check(n, times, precision_bits, corrupt));
    if n <= RATIONAL_MAX_N {
        out.push(rational_check(n));
    }
    out
}
