//! The incomplete-beta formula for `E(s_k(t))` and the limits derived from it.
//!
//! With `x = e^{−kt}` and `φ(y) = y^{n−k}(1−y)^{k−1}`,
//!
//! ```text
//! E(s_k(t)) = C(n,k) · [ x·φ(x)/k + ∫ₓ¹ φ(y) dy ].
//! ```
//!
//! Since `C(n,k)·B(n−k+1, k) = 1/k`, the integral term equals
//! `Q_x(n−k+1, k)/k` where `Q` is the upper regularized incomplete beta. The
//! boundary term is assembled in log space so `C(n,k)` never materializes.

mod beta;
mod exact;

use serde::Serialize;

pub use beta::regularized_incomplete_beta;
pub use exact::expected_cycles_at_x;

use crate::error::{out_of_range, Error, Result};
use crate::numeric::{ln_binomial, CompensatedSum};

/// The triple `(n, k, t)` together with `x = e^{−kt}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    pub n: usize,
    pub k: usize,
    pub t: f64,
    pub x: f64,
}

impl ModelParams {
    pub fn new(n: usize, k: usize, t: f64) -> Result<Self> {
        check_nk(n, k)?;
        if !(t >= 0.0) || t.is_infinite() {
            return Err(out_of_range(format!("t must be finite and >= 0, got {t}")));
        }
        Ok(Self { n, k, t, x: (-(k as f64) * t).exp() })
    }
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n == 0 || k == 0 || k > n {
        return Err(out_of_range(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    Ok(())
}

/// The pieces of the formula at a single `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormParts {
    pub phi_at_x: f64,
    /// `∫ₓ¹ φ`
    pub tail: f64,
    /// `∫₀ˣ φ`
    pub head: f64,
    pub value: f64,
}

/// `x` and `1 − x` together with their logarithms.
#[derive(Debug, Clone, Copy)]
struct Point {
    x: f64,
    y: f64,
    ln_x: f64,
    ln_y: f64,
}

impl Point {
    fn from_time(k: usize, t: f64) -> Self {
        let kt = k as f64 * t;
        let y = -(-kt).exp_m1();
        Self { x: (-kt).exp(), y, ln_x: -kt, ln_y: y.ln() }
    }

    fn from_x(x: f64) -> Self {
        Self { x, y: 1.0 - x, ln_x: x.ln(), ln_y: (-x).ln_1p() }
    }
}

/// Lower and upper regularized incomplete beta at `(n−k+1, k)`.
fn incbeta(n: usize, k: usize, p: Point) -> (f64, f64) {
    let ln_beta = -(k as f64).ln() - ln_binomial(n as u64, k as u64);
    beta::incbeta_pair((n - k + 1) as f64, k as f64, p.x, p.y, p.ln_x, p.ln_y, ln_beta)
}

fn evaluate(n: usize, k: usize, p: Point) -> f64 {
    if p.y <= 0.0 {
        return if k == 1 { n as f64 } else { 0.0 };
    }
    let kf = k as f64;
    if p.x <= 0.0 {
        return 1.0 / kf;
    }
    let ln_boundary =
        ln_binomial(n as u64, k as u64) - kf.ln() + (n - k + 1) as f64 * p.ln_x + (k - 1) as f64 * p.ln_y;
    let (_, upper) = incbeta(n, k, p);
    ln_boundary.exp() + upper / kf
}

/// `φ(y) = y^{n−k}(1−y)^{k−1}` with `0⁰ = 1`.
pub fn phi(y: f64, n: usize, k: usize) -> Result<f64> {
    check_nk(n, k)?;
    if !(0.0..=1.0).contains(&y) {
        return Err(out_of_range(format!("y must lie in [0, 1], got {y}")));
    }
    let (a, b) = ((n - k) as f64, (k - 1) as f64);
    if y == 0.0 {
        return Ok(if n == k { 1.0 } else { 0.0 });
    }
    if y == 1.0 {
        return Ok(if k == 1 { 1.0 } else { 0.0 });
    }
    Ok((a * y.ln() + b * (-y).ln_1p()).exp())
}

/// `∫ₓ¹ φ(y) dy`. Underflows to 0 once `B(n−k+1, k)` leaves the `f64` range.
pub fn incomplete_beta_tail(x: f64, n: usize, k: usize) -> Result<f64> {
    Ok(closed_form_parts(x, n, k)?.tail)
}

/// All pieces of the formula at `x`.
pub fn closed_form_parts(x: f64, n: usize, k: usize) -> Result<ClosedFormParts> {
    let phi_at_x = phi(x, n, k)?;
    let full = (-(k as f64).ln() - ln_binomial(n as u64, k as u64)).exp();
    let (lower, upper) = incbeta(n, k, Point::from_x(x));
    Ok(ClosedFormParts {
        phi_at_x,
        tail: full * upper,
        head: full * lower,
        value: evaluate(n, k, Point::from_x(x)),
    })
}

/// Expected number of `k`-cycles at time `t`.
///
/// Panics unless `1 ≤ k ≤ n` and `t ≥ 0`; see [`ModelParams::new`] for a
/// checked constructor.
pub fn expected_cycles(n: usize, k: usize, t: f64) -> f64 {
    assert!(k >= 1 && k <= n, "need 1 <= k <= n, got n={n}, k={k}");
    assert!(t >= 0.0, "t must be >= 0, got {t}");
    if t.is_infinite() {
        return 1.0 / k as f64;
    }
    evaluate(n, k, Point::from_time(k, t))
}

/// Same formula with `x` supplied directly instead of `t`.
pub fn expected_cycles_x(n: usize, k: usize, x: f64) -> f64 {
    assert!(k >= 1 && k <= n, "need 1 <= k <= n, got n={n}, k={k}");
    assert!((0.0..=1.0).contains(&x), "x must lie in [0, 1], got {x}");
    evaluate(n, k, Point::from_x(x))
}

/// Expected Cayley distance from the identity, `n − E(N(t))`.
///
/// Summed as `Σ_k (k−1)·E(s_k)`, which equals `n − Σ_k E(s_k)` because
/// `Σ_k k·s_k = n`, without the cancellation.
pub fn expected_distance(n: usize, t: f64) -> f64 {
    assert!(n >= 1 && t >= 0.0);
    let d: CompensatedSum = (2..=n).map(|k| (k - 1) as f64 * expected_cycles(n, k, t)).collect();
    d.value().clamp(0.0, (n - 1) as f64)
}

fn ln_tree_term(k: usize, c: f64) -> f64 {
    let kf = k as f64;
    (kf - 2.0) * kf.ln() - statrs::function::factorial::ln_factorial(k as u64) - c.ln() + kf * (c.ln() - c)
}

/// The limit of `(1/n)·E(s_k(c/n))`: `(k^{k−2}/k!)·(1/c)·(c·e^{−c})^k`.
pub fn small_k_density(k: usize, c: f64) -> f64 {
    assert!(k >= 1 && c > 0.0);
    ln_tree_term(k, c).exp()
}

const SERIES_CAP: usize = 1 << 27;

/// Limiting normalized distance `u(c) = 1 − Σ_k small_k_density(k, c)`.
///
/// The series is truncated once a Stirling-based tail bound drops below `tol`:
/// `term_k ≤ k^{−5/2}·r^k / (c√(2π))` with `r = c·e^{1−c} ≤ 1`, summed either
/// geometrically (`r < 1`) or as a `p`-series (always valid, needed at `c = 1`).
pub fn slowdown_u(c: f64, tol: f64) -> Result<f64> {
    if !(c > 0.0 && c.is_finite()) || !(tol > 0.0) {
        return Err(out_of_range(format!("need c > 0 and tol > 0, got c={c}, tol={tol}")));
    }
    let pref = 1.0 / (c * (2.0 * std::f64::consts::PI).sqrt());
    let ln_r = c.ln() + 1.0 - c;
    let mut sum = CompensatedSum::new();
    let mut tail = f64::INFINITY;
    for k in 1..=SERIES_CAP {
        sum.add(ln_tree_term(k, c).exp());
        let kf = k as f64;
        let p_series = pref * (2.0 / 3.0) * kf.powf(-1.5);
        let geometric = if ln_r < 0.0 {
            pref * (kf + 1.0).powf(-2.5) * ((kf + 1.0) * ln_r).exp() / -ln_r.exp_m1()
        } else {
            f64::INFINITY
        };
        tail = p_series.min(geometric);
        if tail < tol {
            return Ok(1.0 - sum.value());
        }
    }
    Err(Error::NoConvergence { iterations: SERIES_CAP, tail })
}

/// Relative size of the giant component of `G(n, c/n)`: the positive root of
/// `1 − z = e^{−cz}`, which is also the survival probability of a Poisson(c)
/// Galton–Watson tree.
pub fn giant_component_theta(c: f64, tol: f64) -> Result<f64> {
    if !(c > 1.0 && c.is_finite()) {
        return Err(out_of_range(format!("giant component needs c > 1, got {c}")));
    }
    let tol = tol.max(f64::EPSILON);
    let g = |z: f64| -(-c * z).exp_m1() - z;
    let mut lo = 0.5;
    while g(lo) <= 0.0 {
        lo *= 0.5;
        if lo < 1e-300 {
            return Err(Error::NoConvergence { iterations: 1000, tail: lo });
        }
    }
    let mut hi = 1.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Newton polish, kept inside the bracket.
    let mut z = 0.5 * (lo + hi);
    for _ in 0..4 {
        let dg = c * (-c * z).exp() - 1.0;
        if dg == 0.0 {
            break;
        }
        let next = z - g(z) / dg;
        if !(next > lo - tol && next < hi + tol) {
            break;
        }
        z = next;
    }
    Ok(z)
}
