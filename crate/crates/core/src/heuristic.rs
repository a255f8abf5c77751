//! Randomized choice of Construction B supports with pairwise-disjoint
//! difference sets.
//!
//! The difference set of a support is the set of XORs of its element pairs.
//! If two row pairs of blocks share a difference, the Tanner graph gets a
//! 4-cycle between those blocks. The heuristic keeps every difference unique
//! across all supports, which leaves only the 4-cycles that live inside a
//! single odd-weight block.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inputs of the support heuristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeuristicConfig {
    pub ell: u32,
    pub u: usize,
    pub v: usize,
    /// Attempts per support before giving up.
    pub max_attempts: usize,
    /// Draws per sub-interval before an attempt is abandoned.
    pub local_threshold: usize,
    pub seed: u64,
}

impl HeuristicConfig {
    pub fn new(ell: u32, u: usize, v: usize, seed: u64) -> Self {
        Self {
            ell,
            u,
            v,
            max_attempts: 200,
            local_threshold: 50,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.v % 2 == 0 {
            return Err(Error::InvalidSpec(format!("v must be odd, got {}", self.v)));
        }
        if self.u == 0 || self.u % 2 != 0 {
            return Err(Error::InvalidSpec(format!("u must be even and positive, got {}", self.u)));
        }
        if self.ell as usize <= self.v || self.ell > 24 {
            return Err(Error::InvalidSpec(format!(
                "need v < ell <= 24, got ell={}, v={}",
                self.ell, self.v
            )));
        }
        if self.max_attempts == 0 || self.local_threshold == 0 {
            return Err(Error::InvalidSpec("attempt budgets must be positive".into()));
        }
        Ok(())
    }

    /// `m`, the smallest exponent with `2^m > v`.
    pub fn interval_exponent(&self) -> u32 {
        self.v.ilog2() + 1
    }

    /// Number of sub-intervals `r = 2^m`.
    pub fn intervals(&self) -> usize {
        1 << self.interval_exponent()
    }

    /// Sub-interval size `q = 2^(ell − m)`.
    pub fn interval_size(&self) -> usize {
        1 << (self.ell - self.interval_exponent())
    }
}

/// Pairwise XORs of one support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceSet {
    pub owner: usize,
    pub values: BTreeSet<usize>,
}

impl DifferenceSet {
    pub fn of(owner: usize, support: &[usize]) -> Self {
        let mut values = BTreeSet::new();
        for (a, &x) in support.iter().enumerate() {
            for &y in &support[a + 1..] {
                values.insert(x ^ y);
            }
        }
        Self { owner, values }
    }
}

/// Runs the heuristic and returns `u` sorted supports of size `v`.
pub fn generate_supports(cfg: &HeuristicConfig) -> Result<Vec<Vec<usize>>> {
    cfg.validate()?;
    let side = 1usize << cfg.ell;
    let r = cfg.intervals();
    let q = cfg.interval_size();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut used = vec![false; side];
    let mut rows = Vec::with_capacity(cfg.u);

    for i in 0..cfg.u {
        let (from_first, from_second) = if i % 2 == 1 {
            (cfg.v.div_ceil(2), cfg.v / 2)
        } else {
            (cfg.v / 2, cfg.v.div_ceil(2))
        };
        let mut failed = 0;
        let row = loop {
            if failed == cfg.max_attempts {
                return Err(Error::HeuristicExhausted {
                    row: i,
                    failed_attempts: failed,
                });
            }
            let mut first: Vec<usize> = (0..r / 2).collect();
            let mut second: Vec<usize> = (r / 2..r).collect();
            first.shuffle(&mut rng);
            second.shuffle(&mut rng);
            let chosen = first[..from_first].iter().chain(&second[..from_second]);

            let mut local = vec![false; side];
            let mut members: Vec<usize> = Vec::with_capacity(cfg.v);
            let mut ok = true;
            for &j in chosen {
                let mut placed = false;
                for _ in 0..cfg.local_threshold {
                    let x = rng.gen_range(j * q..(j + 1) * q);
                    let clash = members.iter().any(|&m| {
                        let d = x ^ m;
                        local[d] || used[d]
                    });
                    if clash {
                        continue;
                    }
                    for &m in &members {
                        local[x ^ m] = true;
                    }
                    members.push(x);
                    placed = true;
                    break;
                }
                if !placed {
                    ok = false;
                    break;
                }
            }
            if ok {
                for (d, &hit) in local.iter().enumerate() {
                    if hit {
                        used[d] = true;
                    }
                }
                members.sort_unstable();
                break members;
            }
            failed += 1;
        };
        rows.push(row);
    }
    Ok(rows)
}

/// Violations of the difference-set conditions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceReport {
    /// `(row, value, multiplicity)` for every XOR value produced by more than
    /// one pair inside a single support.
    pub internal_collisions: Vec<(usize, usize, usize)>,
    /// `(i, j, shared values)` for every pair of supports whose difference
    /// sets intersect.
    pub intersections: Vec<(usize, usize, Vec<usize>)>,
    /// `(row, value)` for entries outside `0..2^ell`.
    pub out_of_range: Vec<(usize, usize)>,
}

impl DifferenceReport {
    pub fn is_empty(&self) -> bool {
        self.internal_collisions.is_empty() && self.intersections.is_empty() && self.out_of_range.is_empty()
    }
}

/// Checks the supports for repeated differences within and across rows.
pub fn verify_difference_sets(supports: &[Vec<usize>], ell: u32) -> DifferenceReport {
    let side = 1usize << ell;
    let mut report = DifferenceReport::default();
    let mut sets = Vec::with_capacity(supports.len());
    for (row, s) in supports.iter().enumerate() {
        for &x in s.iter().filter(|&&x| x >= side) {
            report.out_of_range.push((row, x));
        }
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for (a, &x) in s.iter().enumerate() {
            for &y in &s[a + 1..] {
                *counts.entry(x ^ y).or_default() += 1;
            }
        }
        for (&value, &mult) in &counts {
            if mult > 1 {
                report.internal_collisions.push((row, value, mult));
            }
        }
        sets.push(DifferenceSet::of(row, s));
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let shared: Vec<usize> = sets[i].values.intersection(&sets[j].values).copied().collect();
            if !shared.is_empty() {
                report.intersections.push((i, j, shared));
            }
        }
    }
    report
}
