//! Fixed-point `exp(−z)` for exact non-negative rationals `z`.
//!
//! The result `E` satisfies `|E − 2^F·exp(−z)| ≤ 1` for `F` fractional bits.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn exp_neg_fixed(z: &BigRational, frac_bits: u32) -> BigInt {
    assert!(!z.is_negative(), "exp_neg_fixed takes z >= 0");
    let one_f = BigInt::one() << frac_bits;
    if z.is_zero() {
        return one_f;
    }
    let zf = z.to_f64().unwrap_or(f64::INFINITY);
    // exp(−z) < 2^-(F+2): the rounded result is 0.
    if zf > (frac_bits as f64 + 2.0) * std::f64::consts::LN_2 + 1.0 {
        return BigInt::zero();
    }
    // z / 2^halvings <= 1/2
    let halvings = if zf <= 0.5 { 0 } else { (zf.log2().ceil() as i64 + 1).max(0) as u32 };
    let guard = halvings + 48;
    let work = frac_bits + guard;

    let w: BigInt = (z.numer() << work) / (z.denom() << halvings);
    let unit = BigInt::one() << work;
    let mut sum = unit.clone();
    let mut term = unit;
    let mut j: u64 = 1;
    loop {
        term = (&term * &w) >> work;
        term /= j;
        if term.is_zero() {
            break;
        }
        if j % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        j += 1;
    }
    for _ in 0..halvings {
        sum = (&sum * &sum) >> work;
    }
    (sum + (BigInt::one() << (guard - 1))) >> guard
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(zf: f64, bits: u32) {
        let z = BigRational::from_float(zf).unwrap();
        let e = exp_neg_fixed(&z, bits);
        let approx = e.to_f64().unwrap() / 2f64.powi(bits as i32);
        let expect = (-zf).exp();
        assert!((approx - expect).abs() <= 4.0 * f64::EPSILON * expect.max(1e-300), "z={zf}");
    }

    #[test]
    fn agrees_with_f64_exp() {
        for &z in &[0.0, 1e-9, 0.25, 0.5, 1.0, 3.7, 20.0, 150.0, 600.0] {
            check(z, 1000);
        }
    }

    #[test]
    fn zero_is_exact_and_huge_underflows() {
        let one = exp_neg_fixed(&BigRational::zero(), 80);
        assert_eq!(one, BigInt::one() << 80);
        let big = BigRational::from_integer(BigInt::from(1000));
        assert!(exp_neg_fixed(&big, 64).is_zero());
    }

    #[test]
    fn product_rule_holds_to_one_ulp() {
        // exp(−a)·exp(−b) = exp(−(a+b)) at 200 bits.
        let bits = 200;
        let a = BigRational::new(7.into(), 3.into());
        let b = BigRational::new(11.into(), 5.into());
        let ea = exp_neg_fixed(&a, bits);
        let eb = exp_neg_fixed(&b, bits);
        let eab = exp_neg_fixed(&(a + b), bits);
        let prod = (ea * eb) >> bits;
        assert!((prod - eab).abs() <= BigInt::from(3));
    }
}
