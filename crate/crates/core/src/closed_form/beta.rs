//! Regularized incomplete beta function by Lentz's continued fraction.

const MAX_ITER: usize = 100_000;
const EPS: f64 = f64::EPSILON;
const TINY: f64 = 1e-300;

/// Continued fraction for `I_x(a, b)`; converges fast for `x < (a+1)/(a+b+2)`.
fn continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let clamp = |v: f64| if v.abs() < TINY { TINY } else { v };
    let mut c = 1.0;
    let mut d = 1.0 / clamp(1.0 - qab * x / qap);
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 / clamp(1.0 + aa * d);
        c = clamp(1.0 + aa / c);
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 / clamp(1.0 + aa * d);
        c = clamp(1.0 + aa / c);
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() <= EPS {
            return h;
        }
    }
    debug_assert!(false, "incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})");
    h
}

/// Lower and upper regularized incomplete beta `(I_x(a,b), 1 − I_x(a,b))`.
///
/// `y = 1 − x`, `ln_x`, `ln_y` and `ln_beta = ln B(a, b)` are supplied by the
/// caller so that each can be computed without cancellation.
pub(crate) fn incbeta_pair(a: f64, b: f64, x: f64, y: f64, ln_x: f64, ln_y: f64, ln_beta: f64) -> (f64, f64) {
    if x <= 0.0 {
        return (0.0, 1.0);
    }
    if y <= 0.0 {
        return (1.0, 0.0);
    }
    let front = (a * ln_x + b * ln_y - ln_beta).exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        let lower = front * continued_fraction(a, b, x) / a;
        (lower, 1.0 - lower)
    } else {
        let upper = front * continued_fraction(b, a, y) / b;
        (1.0 - upper, upper)
    }
}

/// Regularized incomplete beta `I_x(a, b)` for real `a, b > 0` and `x ∈ [0, 1]`.
pub fn regularized_incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    assert!(a > 0.0 && b > 0.0, "shape parameters must be positive");
    assert!((0.0..=1.0).contains(&x), "x must lie in [0, 1]");
    let ln_beta = statrs::function::beta::ln_beta(a, b);
    incbeta_pair(a, b, x, 1.0 - x, x.ln(), (-x).ln_1p(), ln_beta).0
}
