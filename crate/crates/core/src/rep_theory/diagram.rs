use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::factorial_big;

/// A partition of `n` written as a non-increasing list of positive row lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct YoungDiagram {
    rows: Vec<usize>,
    n: usize,
}

impl YoungDiagram {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidDiagram { rows, reason: "no rows" });
        }
        if rows.contains(&0) {
            return Err(Error::InvalidDiagram { rows, reason: "empty row" });
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidDiagram { rows, reason: "rows increase" });
        }
        let n = rows.iter().sum();
        Ok(Self { rows, n })
    }

    /// `[first, second, 1^ones]`, dropping zero-length leading rows.
    pub fn hook_family(first: usize, second: usize, ones: usize) -> Result<Self> {
        let rows: Vec<usize> = [first, second]
            .into_iter()
            .filter(|&r| r > 0)
            .chain(std::iter::repeat_n(1, ones))
            .collect();
        Self::new(rows)
    }

    pub fn trivial(n: usize) -> Self {
        Self { rows: vec![n], n }
    }

    pub fn sign(n: usize) -> Self {
        Self { rows: vec![1; n], n }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Column lengths (the conjugate partition).
    pub fn conjugate(&self) -> Vec<usize> {
        (0..self.rows[0])
            .map(|c| self.rows.iter().take_while(|&&r| r > c).count())
            .collect()
    }

    /// Dimension of the irreducible representation: `n!` over the product of hook lengths.
    pub fn dimension(&self) -> BigInt {
        let cols = self.conjugate();
        let mut hooks = BigInt::from(1);
        for (i, &row) in self.rows.iter().enumerate() {
            for (j, &col) in cols.iter().enumerate().take(row) {
                let arm = row - j - 1;
                let leg = col - i - 1;
                hooks *= arm + leg + 1;
            }
        }
        factorial_big(self.n as u64) / hooks
    }

    /// `n(n−1)·r`, the integer numerator of the character ratio at a transposition.
    pub fn content_sum2(&self) -> i64 {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let r = r as i64;
                r * r - (2 * (i as i64 + 1) - 1) * r
            })
            .sum()
    }

    /// Character ratio `χ(τ)/d` at a transposition `τ`.
    pub fn frobenius_ratio(&self) -> Result<BigRational> {
        if self.n < 2 {
            return Err(crate::error::out_of_range("character ratio needs n >= 2"));
        }
        let n = self.n as i64;
        Ok(BigRational::new(self.content_sum2().into(), (n * (n - 1)).into()))
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

/// Hook-length dimension of `diagram`.
pub fn hook_length_dimension(diagram: &YoungDiagram) -> BigInt {
    diagram.dimension()
}

/// Character ratio of `diagram` at a transposition.
pub fn frobenius_ratio(diagram: &YoungDiagram) -> Result<BigRational> {
    diagram.frobenius_ratio()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    /// Counts standard Young tableaux by removing corner boxes recursively.
    fn count_tableaux(rows: &[usize]) -> u64 {
        let rows: Vec<usize> = rows.iter().copied().filter(|&r| r > 0).collect();
        if rows.iter().sum::<usize>() <= 1 {
            return 1;
        }
        let mut total = 0;
        for i in 0..rows.len() {
            let is_corner = i + 1 == rows.len() || rows[i + 1] < rows[i];
            if is_corner {
                let mut smaller = rows.clone();
                smaller[i] -= 1;
                total += count_tableaux(&smaller);
            }
        }
        total
    }

    fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=n.min(max)).rev() {
            for mut rest in partitions(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn small_dimensions_match_tableau_count() {
        let d22 = YoungDiagram::new(vec![2, 2]).unwrap();
        let d31 = YoungDiagram::new(vec![3, 1]).unwrap();
        assert_eq!(count_tableaux(&[2, 2]), 2);
        assert_eq!(count_tableaux(&[3, 1]), 3);
        assert_eq!(d22.dimension(), 2.into());
        assert_eq!(d31.dimension(), 3.into());
        assert_eq!(YoungDiagram::trivial(7).dimension(), 1.into());
    }

    #[test]
    fn dimensions_match_tableaux_and_square_sum_to_factorial() {
        for n in 1..=9 {
            let mut sq = BigInt::zero();
            for p in partitions(n, n) {
                let d = YoungDiagram::new(p.clone()).unwrap().dimension();
                assert_eq!(d, BigInt::from(count_tableaux(&p)), "{p:?}");
                sq += &d * &d;
            }
            assert_eq!(sq, factorial_big(n as u64));
        }
    }

    #[test]
    fn ratio_trivial_and_sign() {
        for n in 2..12 {
            assert!(YoungDiagram::trivial(n).frobenius_ratio().unwrap().is_one());
            assert_eq!(YoungDiagram::sign(n).frobenius_ratio().unwrap(), -BigRational::one());
        }
        assert!(YoungDiagram::trivial(1).frobenius_ratio().is_err());
    }

    #[test]
    fn ratio_lies_in_unit_interval() {
        for n in 2..=9 {
            for p in partitions(n, n) {
                let r = YoungDiagram::new(p).unwrap().frobenius_ratio().unwrap();
                assert!(r >= -BigRational::one() && r <= BigRational::one());
            }
        }
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(YoungDiagram::new(vec![]).is_err());
        assert!(YoungDiagram::new(vec![1, 2]).is_err());
        assert!(YoungDiagram::new(vec![2, 0]).is_err());
        assert_eq!(YoungDiagram::hook_family(3, 1, 2).unwrap().rows(), &[3, 1, 1, 1]);
        assert_eq!(YoungDiagram::hook_family(0, 2, 1).unwrap().rows(), &[2, 1]);
    }

    #[test]
    fn conjugate_and_display() {
        let d = YoungDiagram::new(vec![4, 2, 1]).unwrap();
        assert_eq!(d.conjugate(), vec![3, 2, 1, 1]);
        assert_eq!(d.to_string(), "[4,2,1]");
    }
}
