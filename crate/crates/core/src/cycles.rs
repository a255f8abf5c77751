//! Cycle structure of Tanner graphs.
//!
//! Two routes are provided. The graph route works on the expanded matrix:
//! breadth-first search for the girth, row-intersection formulas for 4- and
//! 6-cycle counts and depth-first enumeration for longer cycles. The block
//! route works on the DPM exponents of a quasi-dyadic array: a closed walk
//! through blocks lifts to a cycle exactly when the XOR of the exponent
//! differences along the walk vanishes.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::construction::QdBlockMatrix;
use crate::dyadic::DpmIndex;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Bipartite graph between the columns (variables) and rows (checks) of a
/// binary matrix.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    h: BitMatrix,
    var_adj: Vec<Vec<usize>>,
    check_adj: Vec<Vec<usize>>,
}

impl TannerGraph {
    pub fn new(h: &BitMatrix) -> Self {
        let check_adj: Vec<Vec<usize>> = (0..h.rows()).map(|r| h.row_support(r)).collect();
        let mut var_adj = vec![Vec::new(); h.cols()];
        for (c, vars) in check_adj.iter().enumerate() {
            for &v in vars {
                var_adj[v].push(c);
            }
        }
        Self {
            h: h.clone(),
            var_adj,
            check_adj,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.var_adj.len()
    }

    pub fn n_checks(&self) -> usize {
        self.check_adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.check_adj.iter().map(Vec::len).sum()
    }

    pub fn check_neighbors(&self, c: usize) -> &[usize] {
        &self.check_adj[c]
    }

    pub fn var_neighbors(&self, v: usize) -> &[usize] {
        &self.var_adj[v]
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.h
    }

    /// Neighbors in a unified numbering: variables are `0..n`, checks
    /// `n..n+m`.
    fn neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n_vars();
        let (list, offset) = if x < n {
            (&self.var_adj[x], n)
        } else {
            (&self.check_adj[x - n], 0)
        };
        list.iter().map(move |&y| y + offset)
    }
}

/// Girth and short-cycle counts of a Tanner graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCensus {
    /// Length of the shortest cycle, or `None` when no cycle of length at
    /// most `cap` exists.
    pub girth: Option<usize>,
    pub cap: usize,
    /// Exact number of cycles for each length `4, 6, …` up to `min(cap, 8)`.
    pub counts: BTreeMap<usize, u64>,
}

/// A cycle stored as its sorted `(check, variable)` edge list.
pub type Cycle = Vec<(usize, usize)>;

/// Girth and cycle counts up to `cap`.
///
/// `cap` is rounded down to an even number and raised to at least 4. Counts
/// for lengths 4 and 6 come from row intersections; length 8 is counted by
/// exhaustive enumeration, which is only practical on small graphs.
pub fn girth_bfs(g: &TannerGraph, cap: usize) -> CycleCensus {
    let cap = (cap & !1).max(4);
    let girth = shortest_cycle(g, cap);
    let mut counts = BTreeMap::new();
    counts.insert(4, count_4cycles(g.matrix()));
    if cap >= 6 {
        counts.insert(6, count_6cycles(g.matrix()));
    }
    if cap >= 8 {
        let by_len = count_cycles_dfs(g, 8);
        counts.insert(8, by_len.get(&8).copied().unwrap_or(0));
    }
    CycleCensus { girth, cap, counts }
}

/// Length of the shortest cycle, if it is at most `cap`.
///
/// Runs a BFS from every check node. Every cycle passes through a check, and
/// a BFS rooted on a shortest cycle reports that cycle's length exactly.
pub fn shortest_cycle(g: &TannerGraph, cap: usize) -> Option<usize> {
    let n = g.n_vars();
    let total = n + g.n_checks();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; total];
    let mut parent = vec![usize::MAX; total];
    let mut queue = std::collections::VecDeque::new();
    let mut touched = Vec::new();
    for root in n..total {
        for &t in &touched {
            dist[t] = usize::MAX;
            parent[t] = usize::MAX;
        }
        touched.clear();
        queue.clear();
        dist[root] = 0;
        touched.push(root);
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            if 2 * dist[x] >= best || 2 * dist[x] > cap {
                break;
            }
            for y in g.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    touched.push(y);
                    queue.push_back(y);
                } else if y != parent[x] {
                    best = best.min(dist[x] + dist[y] + 1);
                }
            }
        }
    }
    (best <= cap).then_some(best)
}

fn and_weight(a: &[u64], b: &[u64]) -> u64 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as u64).sum()
}

fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// Number of 4-cycles: the sum over row pairs of `C(shared columns, 2)`.
pub fn count_4cycles(h: &BitMatrix) -> u64 {
    let m = h.rows();
    let mut total = 0;
    for i in 0..m {
        for j in i + 1..m {
            total += choose2(and_weight(h.row_words(i), h.row_words(j)));
        }
    }
    total
}

/// Number of 6-cycles, summed over unordered row triples.
///
/// For rows with pairwise overlaps `a, b, c` and triple overlap `t`, the
/// number of ways to pick three distinct connecting columns is
/// `a·b·c − t·(a + b + c) + 2t`.
pub fn count_6cycles(h: &BitMatrix) -> u64 {
    let m = h.rows();
    let mut shared = vec![0u64; m * m];
    for i in 0..m {
        for j in i + 1..m {
            let s = and_weight(h.row_words(i), h.row_words(j));
            shared[i * m + j] = s;
            shared[j * m + i] = s;
        }
    }
    let stride = h.stride();
    let mut buf = vec![0u64; stride];
    let mut total = 0;
    for i in 0..m {
        for j in i + 1..m {
            let a = shared[i * m + j];
            if a == 0 {
                continue;
            }
            for (w, (x, y)) in buf.iter_mut().zip(h.row_words(i).iter().zip(h.row_words(j))) {
                *w = x & y;
            }
            for k in j + 1..m {
                let b = shared[j * m + k];
                let c = shared[i * m + k];
                if b == 0 || c == 0 {
                    continue;
                }
                let t = and_weight(&buf, h.row_words(k));
                total += a * b * c + 2 * t - t * (a + b + c);
            }
        }
    }
    total
}

/// Enumerates every simple cycle of length at most `max_len` and returns the
/// count per length.
pub fn count_cycles_dfs(g: &TannerGraph, max_len: usize) -> BTreeMap<usize, u64> {
    let mut counts = BTreeMap::new();
    for_each_cycle(g, max_len, |path| {
        *counts.entry(path.len()).or_insert(0) += 1;
    });
    counts
}

/// Enumerates every simple cycle of length at most `max_len` as a canonical
/// edge list.
pub fn enumerate_cycles(g: &TannerGraph, max_len: usize) -> Vec<Cycle> {
    let n = g.n_vars();
    let mut out = Vec::new();
    for_each_cycle(g, max_len, |path| out.push(canonical_from_path(path, n)));
    out
}

fn canonical_from_path(path: &[usize], n: usize) -> Cycle {
    let len = path.len();
    let mut edges: Vec<(usize, usize)> = (0..len)
        .map(|i| {
            let (a, b) = (path[i], path[(i + 1) % len]);
            if a >= n {
                (a - n, b)
            } else {
                (b - n, a)
            }
        })
        .collect();
    edges.sort_unstable();
    edges
}

/// Calls `f` once per simple cycle with its vertex sequence. Each cycle is
/// rooted at its smallest vertex and reported in one direction only.
fn for_each_cycle(g: &TannerGraph, max_len: usize, mut f: impl FnMut(&[usize])) {
    let total = g.n_vars() + g.n_checks();
    let mut on_path = vec![false; total];
    let mut path = Vec::with_capacity(max_len);
    for root in 0..total {
        path.clear();
        path.push(root);
        on_path[root] = true;
        dfs(g, root, max_len, &mut path, &mut on_path, &mut f);
        on_path[root] = false;
    }
}

fn dfs(
    g: &TannerGraph,
    root: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    f: &mut impl FnMut(&[usize]),
) {
    let last = *path.last().expect("path starts at the root");
    for y in g.neighbors(last) {
        if y == root {
            // Orientation filter: the second vertex must be smaller than the
            // last one, so each cycle is reported once.
            if path.len() >= 4 && path[1] < last {
                f(path);
            }
            continue;
        }
        if y < root || on_path[y] || path.len() == max_len {
            continue;
        }
        on_path[y] = true;
        path.push(y);
        dfs(g, root, max_len, path, on_path, f);
        path.pop();
        on_path[y] = false;
    }
}

/// Girth of a `2 × 2` DPM array given as `[ρ00, ρ01, ρ10, ρ11]`: 4 when the
/// four exponents XOR to zero, 8 otherwise.
///
/// # Panics
/// Panics if the indices do not share `ell`.
pub fn girth_2x2_dpm(rho: [DpmIndex; 4]) -> usize {
    assert!(
        rho.iter().all(|r| r.ell == rho[0].ell),
        "DPM indices must share ell"
    );
    if rho[0].idx ^ rho[1].idx ^ rho[2].idx ^ rho[3].idx == 0 {
        4
    } else {
        8
    }
}

fn dpm_grid(h: &QdBlockMatrix) -> Result<Vec<Option<usize>>> {
    h.dpm_exponents()
        .ok_or_else(|| Error::MalformedSequence("array contains a block that is not a DPM".into()))
}

fn validate_walk(h: &QdBlockMatrix, grid: &[Option<usize>], rows: &[usize], cols: &[usize]) -> Result<()> {
    let half = cols.len();
    if half < 2 || rows.len() != half + 1 {
        return Err(Error::MalformedSequence(format!(
            "expected {} rows for {half} columns and at least 2 columns",
            half + 1
        )));
    }
    if rows[0] != rows[half] {
        return Err(Error::MalformedSequence("row sequence is not closed".into()));
    }
    if rows.iter().any(|&j| j >= h.w()) || cols.iter().any(|&l| l >= h.u()) {
        return Err(Error::MalformedSequence("block index out of range".into()));
    }
    for k in 0..half {
        if rows[k] == rows[k + 1] {
            return Err(Error::MalformedSequence(format!("rows {k} and {} coincide", k + 1)));
        }
        if cols[k] == cols[(k + 1) % half] {
            return Err(Error::MalformedSequence(format!(
                "columns {k} and {} coincide",
                (k + 1) % half
            )));
        }
        for j in [rows[k], rows[k + 1]] {
            if grid[j * h.u() + cols[k]].is_none() {
                return Err(Error::MalformedSequence(format!(
                    "block ({j}, {}) is zero",
                    cols[k]
                )));
            }
        }
    }
    Ok(())
}

/// Translation accumulated by a closed block walk, `⊕_k Δ_{j_k j_{k+1}}(l_k)`.
fn walk_translation(grid: &[Option<usize>], u: usize, rows: &[usize], cols: &[usize]) -> usize {
    let e = |j: usize, l: usize| grid[j * u + l].expect("validated nonzero block");
    cols.iter()
        .enumerate()
        .fold(0, |acc, (k, &l)| acc ^ e(rows[k], l) ^ e(rows[k + 1], l))
}

/// True iff the closed block walk `rows[0] → cols[0] → rows[1] → … → rows[L]`
/// (with `rows[L] = rows[0]`) returns every lifted start to itself.
pub fn has_cycle_lambda(h: &QdBlockMatrix, rows: &[usize], cols: &[usize]) -> Result<bool> {
    let grid = dpm_grid(h)?;
    validate_walk(h, &grid, rows, cols)?;
    Ok(walk_translation(&grid, h.u(), rows, cols) == 0)
}

/// The distinct simple cycles of the expansion that project onto the given
/// block walk.
pub fn lift_block_walk(h: &QdBlockMatrix, rows: &[usize], cols: &[usize]) -> Result<Vec<Cycle>> {
    let grid = dpm_grid(h)?;
    validate_walk(h, &grid, rows, cols)?;
    Ok(lift_validated(h, &grid, rows, cols))
}

fn lift_validated(h: &QdBlockMatrix, grid: &[Option<usize>], rows: &[usize], cols: &[usize]) -> Vec<Cycle> {
    if walk_translation(grid, h.u(), rows, cols) != 0 {
        return Vec::new();
    }
    let side = h.side();
    let u = h.u();
    let e = |j: usize, l: usize| grid[j * u + l].expect("validated nonzero block");
    let mut found: HashSet<Cycle> = HashSet::new();
    for x0 in 0..side {
        let mut x = x0;
        let mut checks = Vec::with_capacity(cols.len());
        let mut vars = Vec::with_capacity(cols.len());
        let mut edges = Vec::with_capacity(2 * cols.len());
        for (k, &l) in cols.iter().enumerate() {
            let check = rows[k] * side + x;
            let y = x ^ e(rows[k], l);
            let var = l * side + y;
            x = y ^ e(rows[k + 1], l);
            let next = rows[k + 1] * side + x;
            checks.push(check);
            vars.push(var);
            edges.push((check, var));
            edges.push((next, var));
        }
        let mut c = checks.clone();
        c.sort_unstable();
        c.dedup();
        let mut v = vars.clone();
        v.sort_unstable();
        v.dedup();
        if c.len() == checks.len() && v.len() == vars.len() {
            edges.sort_unstable();
            found.insert(edges);
        }
    }
    let mut out: Vec<Cycle> = found.into_iter().collect();
    out.sort();
    out
}

/// Every closed block walk of length `lambda` through nonzero blocks, as
/// `(rows, cols)` with `rows` closed.
pub fn block_walks(h: &QdBlockMatrix, lambda: usize) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    let grid = dpm_grid(h)?;
    let half = lambda / 2;
    if lambda % 2 != 0 || half < 2 {
        return Err(Error::MalformedSequence(format!("lambda must be even and >= 4, got {lambda}")));
    }
    let (w, u) = (h.w(), h.u());
    let nz = |j: usize, l: usize| grid[j * u + l].is_some();
    let mut out = Vec::new();
    let mut rows = vec![0usize; half + 1];
    let mut cols = vec![0usize; half];

    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        half: usize,
        w: usize,
        u: usize,
        nz: &dyn Fn(usize, usize) -> bool,
        rows: &mut Vec<usize>,
        cols: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        if k == half {
            if cols[half - 1] != cols[0] {
                out.push((rows.clone(), cols.clone()));
            }
            return;
        }
        for l in 0..u {
            if k > 0 && l == cols[k - 1] {
                continue;
            }
            if !nz(rows[k], l) {
                continue;
            }
            let candidates: Vec<usize> = if k + 1 == half {
                vec![rows[0]]
            } else {
                (0..w).collect()
            };
            for j in candidates {
                if j == rows[k] || !nz(j, l) {
                    continue;
                }
                cols[k] = l;
                rows[k + 1] = j;
                rec(k + 1, half, w, u, nz, rows, cols, out);
            }
        }
    }

    for j0 in 0..w {
        rows[0] = j0;
        rec(0, half, w, u, &nz, &mut rows, &mut cols, &mut out);
    }
    Ok(out)
}

/// Cycle counts for lengths `4..=max_len` of a DPM array, predicted from its
/// block walks and their lifts.
pub fn block_cycle_counts(h: &QdBlockMatrix, max_len: usize) -> Result<BTreeMap<usize, u64>> {
    let grid = dpm_grid(h)?;
    let mut counts = BTreeMap::new();
    for lambda in (4..=max_len).step_by(2) {
        let mut cycles: HashSet<Cycle> = HashSet::new();
        for (rows, cols) in block_walks(h, lambda)? {
            if walk_translation(&grid, h.u(), &rows, &cols) == 0 {
                cycles.extend(lift_validated(h, &grid, &rows, &cols));
            }
        }
        counts.insert(lambda, cycles.len() as u64);
    }
    Ok(counts)
}

/// Block-level girth of a DPM array: the smallest `lambda <= cap` with a
/// block walk whose lift contains a simple cycle.
pub fn block_girth(h: &QdBlockMatrix, cap: usize) -> Result<Option<usize>> {
    let grid = dpm_grid(h)?;
    for lambda in (4..=cap).step_by(2) {
        for (rows, cols) in block_walks(h, lambda)? {
            if walk_translation(&grid, h.u(), &rows, &cols) == 0
                && !lift_validated(h, &grid, &rows, &cols).is_empty()
            {
                return Ok(Some(lambda));
            }
        }
    }
    Ok(None)
}

/// Breakdown of the 4-cycles of a quasi-dyadic matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourCycleCount {
    pub total: u64,
    /// Cycles whose two columns lie in the same block column. For blocks of
    /// odd weight above one these cannot be removed by the choice of supports.
    pub within_block: u64,
    /// Cycles whose two columns lie in different block columns.
    pub across_blocks: u64,
}

/// Counts 4-cycles from the block signatures alone.
///
/// Rows `(j, x)` and `(j', x')` share, inside block column `l`, as many
/// columns as there are pairs `(a, b)` in `supp(M_jl) × supp(M_j'l)` with
/// `a ⊕ b = x ⊕ x'`. The count therefore depends only on `d = x ⊕ x'`, and
/// each value of `d` stands for `2^ell` row pairs (`2^(ell−1)` when `j = j'`).
pub fn count_4cycles_blockwise(h: &QdBlockMatrix) -> FourCycleCount {
    let side = h.side();
    let supports: Vec<Vec<usize>> = h.blocks().iter().map(|b| b.support()).collect();
    let u = h.u();
    let mut out = FourCycleCount::default();
    let mut per_block = vec![0u64; side];
    let mut across_d = vec![0u64; side];
    let mut within_d = vec![0u64; side];
    for j in 0..h.w() {
        for jp in j..h.w() {
            across_d.iter_mut().for_each(|x| *x = 0);
            within_d.iter_mut().for_each(|x| *x = 0);
            for l in 0..u {
                per_block.iter_mut().for_each(|x| *x = 0);
                for &a in &supports[j * u + l] {
                    for &b in &supports[jp * u + l] {
                        per_block[a ^ b] += 1;
                    }
                }
                for d in 0..side {
                    across_d[d] += per_block[d];
                    within_d[d] += choose2(per_block[d]);
                }
            }
            let (first_d, pairs_per_d) = if j == jp {
                (1, (side / 2) as u64)
            } else {
                (0, side as u64)
            };
            for d in first_d..side {
                out.total += pairs_per_d * choose2(across_d[d]);
                out.within_block += pairs_per_d * within_d[d];
            }
        }
    }
    out.across_blocks = out.total - out.within_block;
    out
}
