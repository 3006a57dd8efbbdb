use std::collections::BTreeMap;

use crate::error::{out_of_range, Result};

/// What one transposition did to the cycle structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleChange {
    /// Two cycles of the given sizes joined.
    Merge(usize, usize),
    /// One cycle split into pieces of the given sizes.
    Split(usize, usize),
}

/// A permutation with incrementally maintained cycle bookkeeping.
///
/// Every element carries the label of its cycle. Merges relabel the smaller
/// cycle; splits find the smaller piece by walking both halves in lockstep
/// and relabel only that piece, so an event costs `O(min piece)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleState {
    successor: Vec<usize>,
    cycle_id: Vec<usize>,
    /// Indexed by label; zero for unused labels.
    cycle_size: Vec<usize>,
    free_labels: Vec<usize>,
    size_counts: BTreeMap<usize, usize>,
    cycles: usize,
}

impl CycleState {
    pub fn new_identity(n: usize) -> Self {
        let mut size_counts = BTreeMap::new();
        if n > 0 {
            size_counts.insert(1, n);
        }
        Self {
            successor: (0..n).collect(),
            cycle_id: (0..n).collect(),
            cycle_size: vec![1; n],
            free_labels: Vec::new(),
            size_counts,
            cycles: n,
        }
    }

    /// State for an arbitrary permutation given as `successor[i] = σ(i)`.
    pub fn from_successor(successor: Vec<usize>) -> Result<Self> {
        let n = successor.len();
        let mut hit = vec![false; n];
        for &s in &successor {
            if s >= n || std::mem::replace(&mut hit[s], true) {
                return Err(out_of_range("successor array is not a permutation"));
            }
        }
        let mut cycle_id = vec![usize::MAX; n];
        let mut cycle_size = vec![0; n];
        let mut size_counts = BTreeMap::new();
        let mut cycles = 0;
        for start in 0..n {
            if cycle_id[start] != usize::MAX {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while cycle_id[j] == usize::MAX {
                cycle_id[j] = start;
                j = successor[j];
                len += 1;
            }
            cycle_size[start] = len;
            *size_counts.entry(len).or_insert(0) += 1;
            cycles += 1;
        }
        let free_labels = (0..n).rev().filter(|&l| cycle_size[l] == 0).collect();
        Ok(Self { successor, cycle_id, cycle_size, free_labels, size_counts, cycles })
    }

    pub fn n(&self) -> usize {
        self.successor.len()
    }

    pub fn successor(&self) -> &[usize] {
        &self.successor
    }

    pub fn cycle_id(&self, i: usize) -> usize {
        self.cycle_id[i]
    }

    /// Cycle-size histogram: size → number of cycles.
    pub fn size_counts(&self) -> &BTreeMap<usize, usize> {
        &self.size_counts
    }

    /// `s_k`, the number of `k`-cycles.
    pub fn cycles_of_size(&self, k: usize) -> usize {
        self.size_counts.get(&k).copied().unwrap_or(0)
    }

    /// `N`, the total number of cycles.
    pub fn cycle_count(&self) -> usize {
        self.cycles
    }

    /// Cayley distance to the identity, `n − N`.
    pub fn distance(&self) -> usize {
        self.n() - self.cycles
    }

    pub fn longest_cycle(&self) -> usize {
        self.size_counts.keys().next_back().copied().unwrap_or(0)
    }

    /// Fraction of elements lying in cycles of size at least `n·eps`.
    pub fn mass_above(&self, eps: f64) -> f64 {
        let n = self.n();
        if n == 0 {
            return 0.0;
        }
        let threshold = ((n as f64 * eps).ceil() as usize).max(1);
        let mass: usize = self.size_counts.range(threshold..).map(|(s, c)| s * c).sum();
        mass as f64 / n as f64
    }

    fn bump(&mut self, size: usize, delta: isize) {
        let entry = self.size_counts.entry(size).or_insert(0);
        *entry = entry.checked_add_signed(delta).expect("size count underflow");
        if *entry == 0 {
            self.size_counts.remove(&size);
        }
    }

    fn relabel_cycle(&mut self, start: usize, label: usize) {
        let mut j = start;
        loop {
            self.cycle_id[j] = label;
            j = self.successor[j];
            if j == start {
                break;
            }
        }
    }

    /// Replaces `σ` by `σ∘(i j)`.
    pub fn apply_transposition(&mut self, i: usize, j: usize) -> Result<CycleChange> {
        let n = self.n();
        if i == j || i >= n || j >= n {
            return Err(out_of_range(format!("invalid transposition ({i} {j}) on {n} points")));
        }
        let (li, lj) = (self.cycle_id[i], self.cycle_id[j]);
        let change = if li != lj {
            let (si, sj) = (self.cycle_size[li], self.cycle_size[lj]);
            let (keep, drop, drop_start) = if si >= sj { (li, lj, j) } else { (lj, li, i) };
            self.relabel_cycle(drop_start, keep);
            self.successor.swap(i, j);
            self.cycle_size[keep] = si + sj;
            self.cycle_size[drop] = 0;
            self.free_labels.push(drop);
            self.bump(si, -1);
            self.bump(sj, -1);
            self.bump(si + sj, 1);
            self.cycles -= 1;
            CycleChange::Merge(si, sj)
        } else {
            self.successor.swap(i, j);
            let total = self.cycle_size[li];
            let (mut a, mut b) = (i, j);
            let mut steps = 0;
            let small_start = loop {
                steps += 1;
                a = self.successor[a];
                if a == i {
                    break i;
                }
                b = self.successor[b];
                if b == j {
                    break j;
                }
            };
            let label = self.free_labels.pop().expect("a split always has a free label");
            self.relabel_cycle(small_start, label);
            self.cycle_size[label] = steps;
            self.cycle_size[li] = total - steps;
            self.bump(total, -1);
            self.bump(steps, 1);
            self.bump(total - steps, 1);
            self.cycles += 1;
            if small_start == i {
                CycleChange::Split(steps, total - steps)
            } else {
                CycleChange::Split(total - steps, steps)
            }
        };
        Ok(change)
    }

    /// Full `O(n)` consistency check of the bookkeeping.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let n = self.n();
        let mut hit = vec![false; n];
        for &s in &self.successor {
            if s >= n || std::mem::replace(&mut hit[s], true) {
                return Err("successor is not a bijection".into());
            }
        }
        let mut seen = vec![false; n];
        let mut counts = BTreeMap::new();
        let mut labels = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let label = self.cycle_id[start];
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                if self.cycle_id[j] != label {
                    return Err(format!("label changes along the orbit of {start}"));
                }
                seen[j] = true;
                j = self.successor[j];
                len += 1;
            }
            if self.cycle_size[label] != len {
                return Err(format!("label {label} records size {} for a {len}-cycle", self.cycle_size[label]));
            }
            *counts.entry(len).or_insert(0usize) += 1;
            labels += 1;
        }
        if counts != self.size_counts {
            return Err("size histogram out of date".into());
        }
        if labels != self.cycles || self.size_counts.values().sum::<usize>() != self.cycles {
            return Err("cycle count out of date".into());
        }
        if self.size_counts.iter().map(|(s, c)| s * c).sum::<usize>() != n {
            return Err("cycle sizes do not sum to n".into());
        }
        let used = self.cycle_size.iter().filter(|&&s| s > 0).count();
        if used != labels || used + self.free_labels.len() != n {
            return Err("label pool out of date".into());
        }
        Ok(())
    }
}
