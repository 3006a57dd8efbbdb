//! Character decomposition of the `k`-cycle count and the spectral sum
//!
//! ```text
//! E(s_k(t)) = Σ_ρ a_ρ d_ρ exp(λ_ρ t),   λ_ρ = C(n,2)(r(ρ) − 1)
//! ```
//!
//! Only the trivial diagram `[n]` and the hook-like diagrams
//! `[n−k, k−i, 1^i]` (and, for `k > n/2`, `[k−i−1, n−k+1, 1^i]`) carry a
//! nonzero coefficient. All coefficients, dimensions and eigenvalues are exact;
//! the exponentials are the only rounded quantities and carry a certified
//! error bound.

mod diagram;
mod fixed_exp;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub use diagram::{frobenius_ratio, hook_length_dimension, YoungDiagram};
pub use fixed_exp::exp_neg_fixed;

use crate::error::{out_of_range, Error, Result};
use crate::numeric::factorial_big;

/// Position of a term in the decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TermIndex {
    Trivial,
    Hook(usize),
}

/// One irreducible representation's contribution to `E(s_k(t))`.
#[derive(Debug, Clone, PartialEq)]
pub struct RepTerm {
    pub diagram: YoungDiagram,
    pub index: TermIndex,
    /// Coefficient `a_ρ` of the character `χ_ρ` in `α_k`.
    pub a: BigRational,
    /// Dimension `d_ρ`.
    pub d: BigInt,
    /// Character ratio at a transposition.
    pub r: BigRational,
    /// Eigenvalue of the generator on `ρ`, always `≤ 0`.
    pub lambda: BigRational,
}

impl RepTerm {
    fn new(diagram: YoungDiagram, index: TermIndex, a: BigRational, d: BigInt) -> Result<Self> {
        let n = diagram.n() as i64;
        let r = if n >= 2 { diagram.frobenius_ratio()? } else { BigRational::one() };
        let pairs = BigRational::from_integer(BigInt::from(n * (n - 1) / 2));
        let lambda = pairs * (&r - BigRational::one());
        Ok(Self { diagram, index, a, d, r, lambda })
    }

    /// `a_ρ · d_ρ`.
    pub fn weight(&self) -> BigRational {
        &self.a * BigRational::from_integer(self.d.clone())
    }
}

/// The nonzero terms of the character decomposition of `α_k` on `S_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleBasis {
    pub n: usize,
    pub k: usize,
    pub terms: Vec<RepTerm>,
}

/// Closed-form dimension of the `i`-th hook-like diagram.
///
/// For `i ≥ 2k − n` this is `[n−k, k−i, 1^i]`; for smaller `i` (only when
/// `k > n/2`) the same expression with the factor `n−2k+i+1` negated gives
/// the dimension of `[k−i−1, n−k+1, 1^i]`.
pub fn hook_term_dimension(n: usize, k: usize, i: usize) -> BigInt {
    let (n_, k_, i_) = (n as i64, k as i64, i as i64);
    let lead = n_ - 2 * k_ + i_ + 1;
    let num = factorial_big(n as u64) * BigInt::from(lead.abs());
    let den = factorial_big(i as u64)
        * BigInt::from(k)
        * factorial_big((n - k) as u64)
        * factorial_big((k - i - 1) as u64)
        * BigInt::from(n - k + i + 1);
    num / den
}

/// Builds the decomposition of the `k`-cycle count for `S_n`.
pub fn cycle_basis(n: usize, k: usize) -> Result<CycleBasis> {
    if n == 0 || k == 0 || k > n {
        return Err(out_of_range(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    let inv_k = BigRational::new(BigInt::one(), BigInt::from(k));
    let signed = |negative: bool| if negative { -inv_k.clone() } else { inv_k.clone() };

    let mut terms = vec![RepTerm::new(
        YoungDiagram::trivial(n),
        TermIndex::Trivial,
        inv_k.clone(),
        BigInt::one(),
    )?];
    // Below `split` the diagrams are [k−i−1, n−k+1, 1^i] with the sign flipped;
    // `split − 1` itself carries no term.
    let split = (2 * k).saturating_sub(n);
    for i in 0..k {
        if split > 0 && i + 1 == split {
            continue;
        }
        let (diagram, a) = if i + 1 < split {
            (YoungDiagram::hook_family(k - i - 1, n - k + 1, i)?, signed(i % 2 == 0))
        } else {
            (YoungDiagram::hook_family(n - k, k - i, i)?, signed(i % 2 == 1))
        };
        let d = hook_term_dimension(n, k, i);
        terms.push(RepTerm::new(diagram, TermIndex::Hook(i), a, d)?);
    }
    Ok(CycleBasis { n, k, terms })
}

/// Approximation of `E(s_k(t))` produced by the spectral sum.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralValue {
    /// The computed value, exactly as accumulated.
    pub value: BigRational,
    /// Certified bound on `|value − E(s_k(t))|`.
    pub error_bound: f64,
    pub precision_bits: u32,
}

impl SpectralValue {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }
}

impl CycleBasis {
    /// `Σ |a_ρ d_ρ|`.
    pub fn weight_magnitude(&self) -> BigRational {
        self.terms.iter().map(|t| t.weight().abs()).fold(BigRational::zero(), |a, b| a + b)
    }

    /// `Σ a_ρ d_ρ`, the value of the class function at the identity.
    pub fn weight_sum(&self) -> BigRational {
        self.terms.iter().map(RepTerm::weight).fold(BigRational::zero(), |a, b| a + b)
    }

    /// `ceil(log2 Σ|a·d|) + 64`.
    pub fn default_precision_bits(&self) -> u32 {
        let mag = self.weight_magnitude();
        let int_bits = (mag.ceil().to_integer().bits() as u32).max(1);
        int_bits + 64
    }

    /// Evaluates the spectral sum at time `t` with `precision_bits` fractional bits.
    pub fn evaluate(&self, t: f64, precision_bits: u32) -> Result<SpectralValue> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(out_of_range(format!("t must be finite and >= 0, got {t}")));
        }
        if precision_bits < 64 {
            return Err(out_of_range(format!("precision_bits must be >= 64, got {precision_bits}")));
        }
        let t_exact = BigRational::from_float(t).expect("finite t");
        let mut acc = BigRational::zero();
        let mut bound = BigRational::zero();
        let ulp = BigRational::new(BigInt::one(), BigInt::one() << precision_bits);
        for term in &self.terms {
            let z = -(&term.lambda * &t_exact);
            let e = exp_neg_fixed(&z, precision_bits);
            let w = term.weight();
            if !z.is_zero() {
                bound += w.abs() * &ulp;
            }
            acc += w * BigRational::from_integer(e);
        }
        let value = acc * &ulp;
        let bound_f = bound.to_f64().unwrap_or(f64::INFINITY);
        let value_f = value.to_f64().unwrap_or(f64::NAN);
        if bound_f > value_f.abs() * 2f64.powi(-30) {
            return Err(Error::InsufficientPrecision { bits: precision_bits, bound: bound_f, value: value_f });
        }
        Ok(SpectralValue { value, error_bound: bound_f, precision_bits })
    }

    /// Evaluates at increasing precision until the certified bound is at most
    /// `rel_target · |value|`.
    pub fn evaluate_adaptive(&self, t: f64, rel_target: f64) -> Result<SpectralValue> {
        const MAX_BITS: u32 = 1 << 18;
        let mut bits = self.default_precision_bits();
        loop {
            let attempt = self.evaluate(t, bits);
            let needed = match &attempt {
                Ok(v) if v.error_bound <= rel_target * v.to_f64().abs() => return attempt,
                Ok(v) => (v.error_bound / (rel_target * v.to_f64().abs())).log2(),
                Err(Error::InsufficientPrecision { bound, value, .. }) => {
                    if *value == 0.0 {
                        bits as f64
                    } else {
                        (bound / (rel_target * value.abs())).log2()
                    }
                }
                Err(_) => return attempt,
            };
            let extra = if needed.is_finite() { needed.ceil() as u32 + 16 } else { bits };
            bits = bits.saturating_add(extra);
            if bits > MAX_BITS {
                return attempt;
            }
        }
    }
}

/// `E(s_k(t))` by the spectral sum at a fixed working precision.
pub fn spectral_expected_cycles(n: usize, k: usize, t: f64, precision_bits: u32) -> Result<SpectralValue> {
    cycle_basis(n, k)?.evaluate(t, precision_bits)
}

/// `E(s_k(t))` by the spectral sum, escalating precision until the relative
/// error bound is below `2^-64`.
pub fn spectral_expected_cycles_auto(n: usize, k: usize, t: f64) -> Result<SpectralValue> {
    cycle_basis(n, k)?.evaluate_adaptive(t, 2f64.powi(-64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn basis_n4_k2() {
        let b = cycle_basis(4, 2).unwrap();
        let got: Vec<_> = b
            .terms
            .iter()
            .map(|t| (t.diagram.rows().to_vec(), t.a.clone(), t.d.clone()))
            .collect();
        assert_eq!(
            got,
            vec![
                (vec![4], q(1, 2), 1.into()),
                (vec![2, 2], q(1, 2), 2.into()),
                (vec![2, 1, 1], q(-1, 2), 3.into()),
            ]
        );
    }

    #[test]
    fn basis_n3_k3_skips_missing_index() {
        let b = cycle_basis(3, 3).unwrap();
        let idx: Vec<_> = b.terms.iter().map(|t| t.index).collect();
        assert_eq!(idx, vec![TermIndex::Trivial, TermIndex::Hook(0), TermIndex::Hook(1)]);
        assert_eq!(b.terms[1].diagram.rows(), &[2, 1]);
        assert_eq!(b.terms[1].a, q(-1, 3));
        assert_eq!(b.terms[2].diagram.rows(), &[1, 1, 1]);
        assert_eq!(b.terms[2].a, q(1, 3));
        assert!(b.weight_sum().is_zero());
    }

    #[test]
    fn basis_k1() {
        for n in 2..10 {
            let b = cycle_basis(n, 1).unwrap();
            assert_eq!(b.terms.len(), 2);
            assert_eq!(b.terms[1].diagram.rows(), &[n - 1, 1]);
            assert_eq!(b.terms[1].d, BigInt::from(n - 1));
            assert_eq!(b.weight_sum(), BigRational::from_integer(n.into()));
        }
        // S_1 has only the trivial term.
        assert_eq!(cycle_basis(1, 1).unwrap().weight_sum(), BigRational::one());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(cycle_basis(5, 0).is_err());
        assert!(cycle_basis(5, 6).is_err());
        assert!(spectral_expected_cycles(5, 2, 0.1, 32).is_err());
        assert!(spectral_expected_cycles(5, 2, -0.1, 128).is_err());
    }

    #[test]
    fn term_invariants_all_small_n() {
        for n in 1..=24 {
            for k in 1..=n {
                let b = cycle_basis(n, k).unwrap();
                let expected_sum = if k == 1 { n } else { 0 };
                assert_eq!(b.weight_sum(), BigRational::from_integer(expected_sum.into()), "n={n} k={k}");
                for t in &b.terms {
                    assert_eq!(t.d, t.diagram.dimension(), "n={n} k={k} {}", t.diagram);
                    assert!(t.lambda <= BigRational::zero());
                    assert_eq!(t.lambda.is_zero(), t.index == TermIndex::Trivial || n == 1);
                    if let (TermIndex::Hook(i), true) = (t.index, n >= 2) {
                        let (n_, k_, i_) = (n as i64, k as i64, i as i64);
                        let expect = (n_ - k_).pow(2) - n_ - 2 * k_ + k_ * k_ - 2 * i_ * k_;
                        assert_eq!(t.diagram.content_sum2(), expect);
                    }
                }
                let hooks = b.terms.len() - 1;
                if 2 * k <= n {
                    assert_eq!(hooks, k);
                } else {
                    assert_eq!(hooks, k - 1);
                }
            }
        }
    }

    #[test]
    fn spectral_identity_at_zero() {
        for n in 1..12 {
            for k in 1..=n {
                let v = spectral_expected_cycles(n, k, 0.0, 64).unwrap();
                let expect = if k == 1 { n as f64 } else { 0.0 };
                assert_eq!(v.to_f64(), expect);
                assert_eq!(v.error_bound, 0.0);
            }
        }
    }

    #[test]
    fn spectral_two_state_chain() {
        for &t in &[0.01, 0.3, 1.0, 4.0] {
            let v = spectral_expected_cycles(2, 2, t, 128).unwrap().to_f64();
            let expect = (1.0 - (-2.0 * t).exp()) / 2.0;
            assert!((v - expect).abs() < 1e-15, "t={t}");
        }
    }

    #[test]
    fn low_precision_signals() {
        // Cancellation at n = 60 swamps 64 fractional bits.
        let err = spectral_expected_cycles(60, 30, 0.002, 64).unwrap_err();
        assert!(matches!(err, Error::InsufficientPrecision { .. }));
        let ok = spectral_expected_cycles_auto(60, 30, 0.002).unwrap();
        assert!(ok.error_bound <= 1e-15 * ok.to_f64());
    }

    #[test]
    fn spectral_bounded_by_n_over_k() {
        for n in [5usize, 13, 30] {
            for k in 1..=n {
                for &t in &[0.001, 0.05, 0.5] {
                    let v = spectral_expected_cycles_auto(n, k, t).unwrap().to_f64();
                    assert!(v >= -1e-12 && v <= n as f64 / k as f64 + 1e-12, "n={n} k={k} t={t} v={v}");
                }
            }
        }
    }
}
