//! Dense reference implementations shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;

/// Rank by textbook elimination on dense rows.
pub fn dense_rank(rows: &[Vec<u8>]) -> usize {
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] == 1) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] == 1 {
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn dense_mul(a: &[Vec<u8>], b: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(0, |acc, k| acc ^ (row[k] & b[k][j])))
                .collect()
        })
        .collect()
}

pub fn dense_transpose(a: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

/// True when every pair of rows (including a row with itself) has even overlap.
pub fn dense_self_orthogonal(a: &[Vec<u8>]) -> bool {
    dense_mul(a, &dense_transpose(a)).iter().flatten().all(|&x| x == 0)
}

pub fn random_dense<R: Rng>(rng: &mut R, r: usize, c: usize, density: f64) -> Vec<Vec<u8>> {
    (0..r)
        .map(|_| (0..c).map(|_| rng.gen_bool(density) as u8).collect())
        .collect()
}

/// 4-cycles by checking every pair of rows against every pair of columns.
pub fn brute_4cycles(a: &[Vec<u8>]) -> u64 {
    let cols = a.first().map_or(0, Vec::len);
    let mut total = 0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            for c in 0..cols {
                for d in c + 1..cols {
                    if a[i][c] & a[i][d] & a[j][c] & a[j][d] == 1 {
                        total += 1;
                    }
                }
            }
        }
    }
    total
}

/// 6-cycles: unordered row triples `{i, j, k}` joined by three distinct
/// columns, one per row pair.
pub fn brute_6cycles(a: &[Vec<u8>]) -> u64 {
    let cols = a.first().map_or(0, Vec::len);
    let both = |x: usize, y: usize| -> Vec<usize> { (0..cols).filter(|&c| a[x][c] & a[y][c] == 1).collect() };
    let mut total = 0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let ij = both(i, j);
            for k in j + 1..a.len() {
                let jk = both(j, k);
                let ik = both(i, k);
                for &x in &ij {
                    for &y in &jk {
                        for &z in &ik {
                            if x != y && y != z && x != z {
                                total += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    total
}
