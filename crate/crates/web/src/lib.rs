//! Browser bindings for three interactive views:
//!
//! * the curve `k·E(s_k(c/n))` against `c`, with the critical point and the
//!   giant component fraction;
//! * the slowdown limit `u(c)` against the finite-`n` distance `E(d(c/n))/n`;
//! * the cycle lengths of one simulated path.
//!
//! The plain functions are the tested API; the `#[wasm_bindgen]` wrappers only
//! convert errors.

use interchange::closed_form::{expected_cycles, expected_distance, giant_component_theta, slowdown_u};
use interchange::numeric::grid;
use interchange::simulator::{replica_rng, sample_path};
use interchange::transition::critical_time;
use wasm_bindgen::prelude::*;

const MAX_N: usize = 100_000;
const MAX_POINTS: usize = 2_000;

fn check_n(n: usize) -> Result<(), String> {
    if (2..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(format!("n must lie in 2..={MAX_N}"))
    }
}

fn check_grid(c_max: f64, points: usize) -> Result<(), String> {
    if !(c_max > 0.0 && c_max.is_finite()) {
        return Err("c_max must be positive".into());
    }
    if !(2..=MAX_POINTS).contains(&points) {
        return Err(format!("points must lie in 2..={MAX_POINTS}"));
    }
    Ok(())
}

/// `[c…, k·E(s_k(c/n))…, θ(c)…]`, three blocks of `points` values on `[0, c_max]`.
pub fn transition_curve(n: usize, k: usize, c_max: f64, points: usize) -> Result<Vec<f64>, String> {
    check_n(n)?;
    check_grid(c_max, points)?;
    if k == 0 || k > n {
        return Err(format!("k must lie in 1..={n}"));
    }
    let cs = grid(0.0, c_max, points, false);
    let mut out = cs.clone();
    out.extend(cs.iter().map(|&c| k as f64 * expected_cycles(n, k, c / n as f64)));
    for &c in &cs {
        out.push(if c > 1.0 { giant_component_theta(c, 1e-12).map_err(|e| e.to_string())? } else { 0.0 });
    }
    Ok(out)
}

/// `n·t_crit(n, k)`, the critical point on the `c` axis; `NaN` for `k ∈ {1, n}`.
pub fn critical_c(n: usize, k: usize) -> f64 {
    critical_time(n, k).map_or(f64::NAN, |t| t * n as f64)
}

/// `[c…, u(c)…, E(d(c/n))/n…]` on `(0, c_max]`.
pub fn slowdown_curve(n: usize, c_max: f64, points: usize) -> Result<Vec<f64>, String> {
    check_n(n)?;
    check_grid(c_max, points)?;
    let cs = grid(c_max / points as f64, c_max, points, false);
    let mut out = cs.clone();
    for &c in &cs {
        out.push(slowdown_u(c, 1e-9).map_err(|e| e.to_string())?);
    }
    out.extend(cs.iter().map(|&c| expected_distance(n, c / n as f64) / n as f64));
    Ok(out)
}

/// Cycle lengths of the walk at time `c/n`, longest first.
pub fn simulate_cycles(n: usize, c: f64, seed: u64) -> Result<Vec<u32>, String> {
    check_n(n)?;
    if !(c >= 0.0 && c.is_finite()) {
        return Err("c must be finite and >= 0".into());
    }
    let mut rng = replica_rng(seed);
    let path = sample_path(n, c / n as f64, &mut rng, false).map_err(|e| e.to_string())?;
    let mut lengths = Vec::with_capacity(path.state.cycle_count());
    for (&len, &count) in path.state.size_counts().iter().rev() {
        lengths.extend(std::iter::repeat_n(len as u32, count));
    }
    Ok(lengths)
}

#[wasm_bindgen(js_name = transitionCurve)]
pub fn transition_curve_js(n: usize, k: usize, c_max: f64, points: usize) -> Result<Vec<f64>, JsError> {
    transition_curve(n, k, c_max, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = criticalC)]
pub fn critical_c_js(n: usize, k: usize) -> f64 {
    critical_c(n, k)
}

#[wasm_bindgen(js_name = slowdownCurve)]
pub fn slowdown_curve_js(n: usize, c_max: f64, points: usize) -> Result<Vec<f64>, JsError> {
    slowdown_curve(n, c_max, points).map_err(|e| JsError::new(&e))
}

/// The seed arrives as a JS number; integers up to 2^53 are exact.
#[wasm_bindgen(js_name = simulateCycles)]
pub fn simulate_cycles_js(n: usize, c: f64, seed: f64) -> Result<Vec<u32>, JsError> {
    simulate_cycles(n, c, seed as u64).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transition_curve_blocks() {
        let v = transition_curve(200, 100, 3.0, 31).unwrap();
        assert_eq!(v.len(), 93);
        let (cs, ke, giant) = (&v[..31], &v[31..62], &v[62..]);
        assert_eq!((cs[0], cs[30]), (0.0, 3.0));
        assert_eq!(ke[0], 0.0);
        assert!((ke[30] - 1.0).abs() < 1e-9);
        assert!(giant[..11].iter().all(|&g| g == 0.0));
        assert!((giant[20] - 0.7968121300200).abs() < 1e-9);
        assert!((critical_c(200, 100) - 1.376269277472802).abs() < 1e-12);
        assert!(critical_c(200, 200).is_nan());
    }

    #[test]
    fn slowdown_curve_below_one_is_half_c() {
        let v = slowdown_curve(1000, 2.0, 20).unwrap();
        let (cs, u, d) = (&v[..20], &v[20..40], &v[40..]);
        for i in 0..20 {
            if cs[i] < 1.0 {
                assert!((u[i] - cs[i] / 2.0).abs() < 1e-8);
            }
            assert!((d[i] - u[i]).abs() < 0.02, "c={}", cs[i]);
        }
    }

    #[test]
    fn simulated_lengths_partition_n() {
        let a = simulate_cycles(500, 2.0, 3).unwrap();
        assert_eq!(a.iter().map(|&l| l as usize).sum::<usize>(), 500);
        assert!(a.windows(2).all(|w| w[0] >= w[1]));
        assert_eq!(a, simulate_cycles(500, 2.0, 3).unwrap());
        assert_eq!(simulate_cycles(10, 0.0, 1).unwrap(), vec![1; 10]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(transition_curve(1, 1, 1.0, 10).is_err());
        assert!(transition_curve(10, 11, 1.0, 10).is_err());
        assert!(slowdown_curve(10, -1.0, 10).is_err());
        assert!(simulate_cycles(10, f64::NAN, 1).is_err());
    }
}
