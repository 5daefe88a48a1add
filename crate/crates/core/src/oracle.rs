//! Brute-force abelian statistics read directly off a prefix of the fixed point.
//!
//! Factor sets are collected from a prefix whose length doubles (starting at
//! `8n`) until two consecutive scans give the same set.

use std::collections::{BTreeSet, HashSet};

use crate::word::{parikh, Letter, ParikhVector, Substitution, Word};

/// Result of one stabilized scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowScan {
    pub prefix_len: usize,
    pub factor_len: usize,
    pub vectors: BTreeSet<ParikhVector>,
}

/// Caches the longest fixed-point prefix generated so far.
#[derive(Debug, Clone)]
pub struct WindowScanner {
    subst: Substitution,
    prefix: Vec<Letter>,
}

impl WindowScanner {
    pub fn new(subst: &Substitution) -> Self {
        WindowScanner { subst: subst.clone(), prefix: Vec::new() }
    }

    fn ensure(&mut self, len: usize) {
        if self.prefix.len() < len {
            let target = len.max(self.prefix.len() * 2);
            self.prefix = self.subst.fixed_point_prefix(target).into_letters();
        }
    }

    /// Parikh vectors of the length-`n` factors of the first `len` letters.
    fn scan(&mut self, n: usize, len: usize) -> BTreeSet<ParikhVector> {
        self.ensure(len);
        let m = self.subst.m();
        let u = &self.prefix[..len];
        let mut counts = vec![0i64; m];
        for &a in &u[..n] {
            counts[a as usize] += 1;
        }
        // encode counts in base n+1 when that fits in 128 bits
        let fits = (m as f64) * ((n + 1) as f64).log2() < 127.0;
        if !fits {
            let mut set = BTreeSet::new();
            set.insert(ParikhVector::from_counts(counts.clone()));
            for i in n..len {
                counts[u[i] as usize] += 1;
                counts[u[i - n] as usize] -= 1;
                set.insert(ParikhVector::from_counts(counts.clone()));
            }
            return set;
        }
        let base = (n + 1) as u128;
        let weight: Vec<u128> = (0..m as u32).map(|l| base.pow(l)).collect();
        let mut key: u128 = counts.iter().zip(&weight).map(|(&c, &w)| c as u128 * w).sum();
        let mut keys: HashSet<u128> = HashSet::new();
        keys.insert(key);
        let mut last = key;
        for i in n..len {
            let (inc, out) = (u[i] as usize, u[i - n] as usize);
            if inc == out {
                continue;
            }
            key = key + weight[inc] - weight[out];
            if key != last {
                keys.insert(key);
                last = key;
            }
        }
        keys.into_iter()
            .map(|mut k| {
                let c = (0..m)
                    .map(|_| {
                        let digit = (k % base) as i64;
                        k /= base;
                        digit
                    })
                    .collect();
                ParikhVector::from_counts(c)
            })
            .collect()
    }

    /// Stabilized set of Parikh vectors of length-`n` factors.
    pub fn parikh_scan(&mut self, n: usize) -> WindowScan {
        assert!(n >= 1, "factor length must be positive");
        let mut len = 8 * n;
        let mut prev = self.scan(n, len);
        loop {
            let next = self.scan(n, 2 * len);
            len *= 2;
            if next == prev {
                return WindowScan { prefix_len: len, factor_len: n, vectors: next };
            }
            prev = next;
        }
    }

    pub fn parikh_set(&mut self, n: usize) -> BTreeSet<ParikhVector> {
        self.parikh_scan(n).vectors
    }

    /// Parikh vectors of length-`n` factors minus that of the length-`n` prefix.
    pub fn rel_set(&mut self, n: usize) -> BTreeSet<ParikhVector> {
        let set = self.parikh_set(n);
        let base = parikh(&Word::new(self.prefix[..n].to_vec()), self.subst.m());
        set.iter().map(|v| v - &base).collect()
    }

    pub fn complexity(&mut self, n: usize) -> usize {
        self.parikh_set(n).len()
    }

    /// Largest spread of a single letter count among factors of equal length
    /// `n <= n_max`.
    pub fn balance(&mut self, n_max: usize) -> i64 {
        let m = self.subst.m();
        (1..=n_max)
            .map(|n| {
                let set = self.parikh_set(n);
                (0..m)
                    .map(|l| {
                        let col = set.iter().map(|v| v.counts()[l]);
                        col.clone().max().unwrap_or(0) - col.min().unwrap_or(0)
                    })
                    .max()
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }
}

pub fn brute_force_parikh_set(subst: &Substitution, n: usize) -> BTreeSet<ParikhVector> {
    WindowScanner::new(subst).parikh_set(n)
}

pub fn brute_force_rel_set(subst: &Substitution, n: usize) -> BTreeSet<ParikhVector> {
    WindowScanner::new(subst).rel_set(n)
}

pub fn brute_force_balance(subst: &Substitution, n_max: usize) -> i64 {
    WindowScanner::new(subst).balance(n_max)
}
