//! Minimum-distance search for dual-containing codes.
//!
//! The exhaustive mode is exact up to a weight limit. It splits every
//! candidate support into two halves and matches their syndromes, so only
//! subsets of half the target weight are ever enumerated. The probabilistic
//! mode is a Lee–Brickell information-set search that returns upper bounds.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::css::CssCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Largest number of half-weight subsets the exhaustive mode will enumerate.
pub const EXHAUSTIVE_LIMIT: u128 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMode {
    /// Exact search over all weights up to `max_weight`.
    Exhaustive { max_weight: usize },
    /// Randomized information-set search.
    Probabilistic { iterations: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub mode: DistanceMode,
    /// Smallest weight of a nonzero codeword of `ker H` that was found. In
    /// exhaustive mode `None` means every such codeword is heavier than the
    /// searched weight.
    pub classical_d: Option<usize>,
    /// Smallest weight found among codewords outside the rowspace of `H`.
    pub quantum_d: Option<usize>,
    /// True when both values are exact, which only the exhaustive mode gives.
    pub exact: bool,
    /// Subsets enumerated (exhaustive) or information sets drawn
    /// (probabilistic).
    pub effort: u128,
    pub classical_witness: Option<Vec<usize>>,
    pub quantum_witness: Option<Vec<usize>>,
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Runs the requested distance search.
pub fn min_distance(code: &CssCode, mode: DistanceMode) -> Result<DistanceReport> {
    match mode {
        DistanceMode::Exhaustive { max_weight } => exhaustive(code, max_weight, mode),
        DistanceMode::Probabilistic { iterations, seed } => probabilistic(code, iterations, seed, mode),
    }
}

/// Column syndromes against an independent row basis, `words` words each.
struct ColumnSyndromes {
    words: usize,
    data: Vec<u64>,
}

impl ColumnSyndromes {
    fn new(basis: &BitMatrix) -> Self {
        let r = basis.rows();
        let words = r.div_ceil(64).max(1);
        let mut data = vec![0u64; basis.cols() * words];
        for i in 0..r {
            for c in basis.row_support(i) {
                data[c * words + i / 64] |= 1u64 << (i % 64);
            }
        }
        Self { words, data }
    }

    fn col(&self, c: usize) -> &[u64] {
        &self.data[c * self.words..(c + 1) * self.words]
    }

    fn of_subset(&self, subset: &[usize], out: &mut [u64]) {
        out.iter_mut().for_each(|w| *w = 0);
        for &c in subset {
            for (o, s) in out.iter_mut().zip(self.col(c)) {
                *o ^= s;
            }
        }
    }
}

/// Calls `f` on every `k`-subset of `0..n` in colex order.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k == 0 {
        f(&[]);
        return;
    }
    if k > n {
        return;
    }
    let mut s: Vec<usize> = (0..k).collect();
    loop {
        f(&s);
        // Advance to the next combination in colex order.
        let mut i = 0;
        while i + 1 < k && s[i] + 1 == s[i + 1] {
            s[i] = i;
            i += 1;
        }
        s[i] += 1;
        if s[k - 1] >= n {
            return;
        }
    }
}

fn exhaustive(code: &CssCode, max_weight: usize, mode: DistanceMode) -> Result<DistanceReport> {
    let n = code.n;
    let work: u128 = (1..=max_weight).map(|t| binomial(n, t.div_ceil(2))).sum();
    if work > EXHAUSTIVE_LIMIT {
        return Err(Error::SearchTooLarge {
            work,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let basis = code.stabilizer_basis().basis();
    let syn = ColumnSyndromes::new(&basis);
    let words = syn.words;
    let mut classical: Option<(usize, Vec<usize>)> = None;
    let mut quantum: Option<(usize, Vec<usize>)> = None;

    for t in 1..=max_weight {
        let found = codewords_of_weight(&syn, n, t, words);
        if classical.is_none() {
            if let Some(c) = found.iter().next() {
                classical = Some((t, c.clone()));
            }
        }
        for support in &found {
            let v = BitVector::from_support(n, support);
            if !code.in_rowspace(&v)? {
                quantum = Some((t, support.clone()));
                break;
            }
        }
        if quantum.is_some() {
            break;
        }
    }
    let mut classical = classical;
    if let Some((_, w)) = &mut classical {
        w.sort_unstable();
    }
    Ok(DistanceReport {
        mode,
        classical_d: classical.as_ref().map(|c| c.0),
        quantum_d: quantum.as_ref().map(|q| q.0),
        exact: true,
        effort: work,
        classical_witness: classical.map(|c| c.1),
        quantum_witness: quantum.map(|q| q.1),
    })
}

/// All codewords of weight exactly `t`, as sorted supports.
///
/// A support of size `t` is split into its `⌊t/2⌋` smallest and `⌈t/2⌉`
/// largest columns. Both halves have the same syndrome, so every codeword
/// shows up as a syndrome collision between a small subset and a disjoint
/// large subset whose smallest element exceeds the small subset's largest.
fn codewords_of_weight(syn: &ColumnSyndromes, n: usize, t: usize, words: usize) -> Vec<Vec<usize>> {
    let small = t / 2;
    let large = t - small;
    let mut buf = vec![0u64; words];
    let mut out: HashSet<Vec<usize>> = HashSet::new();
    if small == 0 {
        for_each_subset(n, large, |s| {
            syn.of_subset(s, &mut buf);
            if buf.iter().all(|&w| w == 0) {
                out.insert(s.to_vec());
            }
        });
    } else {
        let mut table: HashMap<Vec<u64>, Vec<Vec<usize>>> = HashMap::new();
        for_each_subset(n, small, |s| {
            syn.of_subset(s, &mut buf);
            table.entry(buf.clone()).or_default().push(s.to_vec());
        });
        for_each_subset(n, large, |s| {
            syn.of_subset(s, &mut buf);
            if let Some(matches) = table.get(&buf) {
                for a in matches {
                    if a[small - 1] < s[0] {
                        let mut c = a.clone();
                        c.extend_from_slice(s);
                        out.insert(c);
                    }
                }
            }
        });
    }
    let mut v: Vec<Vec<usize>> = out.into_iter().collect();
    v.sort();
    v
}

/// Best codewords found by one information set.
struct IsdHit {
    classical: Option<(usize, Vec<usize>)>,
    quantum: Option<(usize, Vec<usize>)>,
}

fn better(a: Option<(usize, Vec<usize>)>, b: Option<(usize, Vec<usize>)>) -> Option<(usize, Vec<usize>)> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if (y.0, &y.1) < (x.0, &x.1) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

fn probabilistic(code: &CssCode, iterations: u64, seed: u64, mode: DistanceMode) -> Result<DistanceReport> {
    let basis = code.stabilizer_basis().basis();
    let n = code.n;
    let hit = (0..iterations)
        .into_par_iter()
        .map(|it| isd_iteration(code, &basis, n, seed, it))
        .reduce(
            || IsdHit {
                classical: None,
                quantum: None,
            },
            |a, b| IsdHit {
                classical: better(a.classical, b.classical),
                quantum: better(a.quantum, b.quantum),
            },
        );
    Ok(DistanceReport {
        mode,
        classical_d: hit.classical.as_ref().map(|c| c.0),
        quantum_d: hit.quantum.as_ref().map(|q| q.0),
        exact: false,
        effort: iterations as u128,
        classical_witness: hit.classical.map(|c| c.1),
        quantum_witness: hit.quantum.map(|q| q.1),
    })
}

/// One Lee–Brickell step: reduce `H` to systematic form on a random set of
/// pivot columns, then read off the codewords that have one or two ones on
/// the remaining (information) columns.
fn isd_iteration(code: &CssCode, basis: &BitMatrix, n: usize, seed: u64, it: u64) -> IsdHit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(it);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);

    let r = basis.rows();
    let stride = basis.stride();
    let mut rows: Vec<Vec<u64>> = (0..r).map(|i| basis.row_words(i).to_vec()).collect();
    let mut pivots = Vec::with_capacity(r);
    let mut next = 0;
    for &c in &order {
        if next == r {
            break;
        }
        let (w, b) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (next..r).find(|&i| rows[i][w] & b != 0) else {
            continue;
        };
        rows.swap(next, p);
        let pivot_row = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != next && row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        next += 1;
    }
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let info: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let rw = r.div_ceil(64).max(1);
    // Column c of the reduced matrix restricted to the pivot rows.
    let mut cols = vec![0u64; info.len() * rw];
    let mut slot = vec![usize::MAX; n];
    for (s, &c) in info.iter().enumerate() {
        slot[c] = s;
    }
    for (i, row) in rows.iter().enumerate().take(pivots.len()) {
        for (wi, &word) in row.iter().enumerate().take(stride) {
            let mut rest = word;
            while rest != 0 {
                let c = wi * 64 + rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if slot[c] != usize::MAX {
                    cols[slot[c] * rw + i / 64] |= 1u64 << (i % 64);
                }
            }
        }
    }
    let col = |s: usize| &cols[s * rw..(s + 1) * rw];
    let weight = |v: &[u64]| v.iter().map(|w| w.count_ones() as usize).sum::<usize>();

    let support_of = |info_cols: &[usize], pivot_bits: &[u64]| {
        let mut s: Vec<usize> = info_cols.iter().map(|&x| info[x]).collect();
        for (i, &p) in pivots.iter().enumerate() {
            if pivot_bits[i / 64] >> (i % 64) & 1 == 1 {
                s.push(p);
            }
        }
        s.sort_unstable();
        s
    };

    let mut hit = IsdHit {
        classical: None,
        quantum: None,
    };
    let consider = |w: usize, info_cols: &[usize], bits: &[u64], hit: &mut IsdHit| {
        let beats_classical = hit.classical.as_ref().is_none_or(|c| w <= c.0);
        let beats_quantum = hit.quantum.as_ref().is_none_or(|q| w <= q.0);
        if !beats_classical && !beats_quantum {
            return;
        }
        let s = support_of(info_cols, bits);
        if beats_classical {
            hit.classical = better(hit.classical.take(), Some((w, s.clone())));
        }
        if beats_quantum {
            let v = BitVector::from_support(n, &s);
            if !code.in_rowspace(&v).expect("length matches") {
                hit.quantum = better(hit.quantum.take(), Some((w, s)));
            }
        }
    };

    let mut pair = vec![0u64; rw];
    for a in 0..info.len() {
        let ca = col(a);
        consider(1 + weight(ca), &[a], ca, &mut hit);
        for b in a + 1..info.len() {
            let cb = col(b);
            let mut wt = 2;
            for (x, (p, q)) in pair.iter_mut().zip(ca.iter().zip(cb)) {
                *x = p ^ q;
                wt += x.count_ones() as usize;
            }
            let bound = hit
                .classical
                .as_ref()
                .map_or(usize::MAX, |c| c.0)
                .max(hit.quantum.as_ref().map_or(usize::MAX, |q| q.0));
            if wt <= bound {
                consider(wt, &[a, b], &pair.clone(), &mut hit);
            }
        }
    }
    hit
}
