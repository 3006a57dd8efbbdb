//! Exact small-`n` ground truth.
//!
//! The walk is conjugation invariant, so its cycle type is itself a Markov
//! chain on the partitions of `n`. For `n ≤ 8` that chain has at most 22
//! states and `exp(tQ)` is computed by uniformization.

use std::collections::HashMap;

use crate::error::{out_of_range, Error, Result};
use crate::numeric::CompensatedSum;

pub const MAX_N: usize = 8;

/// Cycle-type chain of the interchange process on `K_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassChain {
    pub n: usize,
    /// Partitions of `n`, parts in non-increasing order.
    pub partitions: Vec<Vec<usize>>,
    /// `rates[a][b]`: number of transpositions taking class `a` to class `b`;
    /// the diagonal holds `−n(n−1)/2`.
    pub rates: Vec<Vec<i64>>,
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for rest in partitions(n - first, first) {
            let mut p = Vec::with_capacity(rest.len() + 1);
            p.push(first);
            p.extend(rest);
            out.push(p);
        }
    }
    out
}

/// Successor array of the permutation whose cycles are consecutive blocks.
fn canonical_representative(parts: &[usize]) -> Vec<usize> {
    let mut succ = Vec::with_capacity(parts.iter().sum());
    let mut start = 0;
    for &len in parts {
        for off in 0..len {
            succ.push(start + (off + 1) % len);
        }
        start += len;
    }
    succ
}

fn cycle_type(succ: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; succ.len()];
    let mut parts = Vec::new();
    for s in 0..succ.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut j = s;
        while !seen[j] {
            seen[j] = true;
            j = succ[j];
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

pub fn build_class_chain(n: usize) -> Result<ClassChain> {
    if !(2..=MAX_N).contains(&n) {
        return Err(out_of_range(format!("class chain supports 2 <= n <= {MAX_N}, got {n}")));
    }
    let partitions = partitions(n, n);
    let index: HashMap<Vec<usize>, usize> =
        partitions.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let total = (n * (n - 1) / 2) as i64;
    let mut rates = vec![vec![0i64; partitions.len()]; partitions.len()];
    for (a, parts) in partitions.iter().enumerate() {
        let rep = canonical_representative(parts);
        for i in 0..n {
            for j in i + 1..n {
                let mut succ = rep.clone();
                succ.swap(i, j);
                rates[a][index[&cycle_type(&succ)]] += 1;
            }
        }
        rates[a][a] -= total;
    }
    Ok(ClassChain { n, partitions, rates })
}

impl ClassChain {
    /// Index of the identity class `[1^n]`.
    pub fn identity_class(&self) -> usize {
        self.partitions.len() - 1
    }

    /// Number of `k`-cycles in a permutation of the given class.
    pub fn cycle_count(&self, class: usize, k: usize) -> usize {
        self.partitions[class].iter().filter(|&&p| p == k).count()
    }

    /// Stationary (uniform on `S_n`) mass of each class: `|class| / n!`.
    pub fn uniform_class_weights(&self) -> Vec<f64> {
        self.partitions
            .iter()
            .map(|p| {
                // 1/z_λ with z_λ = Π_k k^{m_k} m_k!
                let mut z = 1.0;
                for k in 1..=self.n {
                    let m = p.iter().filter(|&&x| x == k).count();
                    z *= (k as f64).powi(m as i32) * (1..=m).map(|v| v as f64).product::<f64>();
                }
                1.0 / z
            })
            .collect()
    }

    /// Class distribution at time `t` started from the identity.
    pub fn probabilities(&self, t: f64) -> Result<Vec<f64>> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(out_of_range(format!("t must be finite and >= 0, got {t}")));
        }
        let m = self.partitions.len();
        let mut p = vec![0.0; m];
        p[self.identity_class()] = 1.0;
        if t == 0.0 {
            return Ok(p);
        }
        let lambda = (self.n * (self.n - 1) / 2) as f64;
        let mean = lambda * t;
        let last = (mean + 40.0 * mean.sqrt() + 20.0).ceil() as usize;

        let mut out = vec![CompensatedSum::new(); m];
        let mut mass = CompensatedSum::new();
        let mut ln_fact = 0.0;
        for j in 0..=last {
            if j > 0 {
                ln_fact += (j as f64).ln();
                let mut next = vec![0.0; m];
                for (a, &pa) in p.iter().enumerate() {
                    if pa == 0.0 {
                        continue;
                    }
                    for (b, &r) in self.rates[a].iter().enumerate() {
                        let step = if a == b { 1.0 + r as f64 / lambda } else { r as f64 / lambda };
                        next[b] += pa * step;
                    }
                }
                p = next;
            }
            let w = (-mean + j as f64 * mean.ln() - ln_fact).exp();
            mass.add(w);
            for (acc, &pa) in out.iter_mut().zip(&p) {
                acc.add(w * pa);
            }
        }
        // Chernoff bound on the discarded Poisson tail, P(X > last).
        let j = (last + 1) as f64;
        let tail = (-mean + j * (mean.ln() + 1.0 - j.ln())).exp();
        if tail > 1e-12 {
            return Err(Error::NoConvergence { iterations: last, tail });
        }
        // Renormalize away the rounding drift of the log-space weights.
        let mass = mass.value();
        Ok(out.iter().map(|acc| acc.value() / mass).collect())
    }

    pub fn expected_cycles(&self, k: usize, t: f64) -> Result<f64> {
        if k == 0 || k > self.n {
            return Err(out_of_range(format!("need 1 <= k <= n, got k={k}")));
        }
        let p = self.probabilities(t)?;
        Ok(p.iter().enumerate().map(|(c, pc)| pc * self.cycle_count(c, k) as f64).sum())
    }
}

/// `E(s_k(t))` from the exponentiated class chain.
pub fn brute_force_expected_cycles(n: usize, k: usize, t: f64) -> Result<f64> {
    build_class_chain(n)?.expected_cycles(k, t)
}
