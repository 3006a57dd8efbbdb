use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{out_of_range, Result};
use crate::numeric::binomial_big;

/// `E(s_k)` as an exact rational function of `x = e^{−kt}`.
///
/// The tail integral is expanded term by term:
/// `∫₀ˣ φ = Σ_{i=0}^{k−1} C(k−1,i) (−1)^i x^{n−k+1+i} / (n−k+1+i)` and
/// `∫ₓ¹ φ = B(n−k+1, k) − ∫₀ˣ φ` with `C(n,k)·B(n−k+1,k) = 1/k`.
pub fn expected_cycles_at_x(n: usize, k: usize, x: &BigRational) -> Result<BigRational> {
    if k == 0 || k > n {
        return Err(out_of_range(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    if *x < BigRational::zero() || *x > BigRational::one() {
        return Err(out_of_range("x must lie in [0, 1]"));
    }
    let nk = BigRational::from_integer(binomial_big(n as u64, k as u64));
    let kq = BigRational::from_integer(BigInt::from(k));
    let one_minus = BigRational::one() - x;
    let m = k - 1;
    let base = n - m;

    let boundary = x.clone().pow(base as i32) * one_minus.pow(m as i32) / &kq;

    let mut head = BigRational::zero();
    let mut x_pow = x.clone().pow(base as i32);
    for i in 0..=m {
        let c = BigRational::new(binomial_big(m as u64, i as u64), BigInt::from(base + i));
        let term = c * &x_pow;
        if i % 2 == 0 {
            head += term;
        } else {
            head -= term;
        }
        x_pow *= x;
    }
    let full = BigRational::one() / (&kq * &nk);
    Ok(nk * (boundary + full - head))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn two_state_chain() {
        for x in [q(0, 1), q(1, 3), q(5, 7), q(1, 1)] {
            let expect = (BigRational::one() - &x) / q(2, 1);
            assert_eq!(expected_cycles_at_x(2, 2, &x).unwrap(), expect);
        }
    }

    #[test]
    fn boundaries() {
        for n in 1..15usize {
            assert_eq!(expected_cycles_at_x(n, 1, &q(1, 1)).unwrap(), q(n as i64, 1));
            for k in 1..=n {
                let at_zero = expected_cycles_at_x(n, k, &q(0, 1)).unwrap();
                assert_eq!(at_zero, q(1, k as i64));
                if k >= 2 {
                    assert!(expected_cycles_at_x(n, k, &q(1, 1)).unwrap().is_zero());
                }
            }
        }
    }
}
