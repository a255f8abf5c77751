//! Dual-containing bicycle codes, used as a comparison baseline.
//!
//! `H₀ = [C | Cᵀ]` for a random sparse circulant `C`. Circulants commute, so
//! `H₀·H₀ᵀ = C·Cᵀ + Cᵀ·C = 0`. Rows are then deleted to reach the target
//! dimension while keeping column weights close to uniform.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Builds an `(n/2 − target_k/2) × n` bicycle parity-check matrix.
///
/// `row_weight` counts ones per row of `H₀`, so the circulant has weight
/// `row_weight / 2`. Rows are removed one at a time. The removed row is the
/// one touching the fewest columns at the current minimum weight, then the
/// most columns at the current maximum, then the heaviest columns overall.
/// Ties are broken by a seeded shuffle.
pub fn construct_bicycle(n: usize, row_weight: usize, target_k: usize, seed: u64) -> Result<BitMatrix> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::InvalidSpec(format!("bicycle length must be even and >= 4, got {n}")));
    }
    if row_weight < 2 || row_weight % 2 != 0 {
        return Err(Error::InvalidSpec(format!("row weight must be even and >= 2, got {row_weight}")));
    }
    let half = n / 2;
    if row_weight / 2 > half {
        return Err(Error::Infeasible(format!(
            "circulant weight {} exceeds its size {half}",
            row_weight / 2
        )));
    }
    if target_k >= half || target_k % 2 != 0 {
        return Err(Error::InvalidSpec(format!(
            "target dimension must be even and below n/2 = {half}, got {target_k}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut first: Vec<usize> = sample(&mut rng, half, row_weight / 2).into_vec();
    first.sort_unstable();

    // Row r of C has ones at (r + s) mod half; row r of Cᵀ at (r − s) mod half.
    let mut h0 = BitMatrix::zeros(half, n);
    for r in 0..half {
        for &s in &first {
            h0.set(r, (r + s) % half, true);
            h0.set(r, half + (r + half - s) % half, true);
        }
    }

    let mut col_w = h0.col_weights();
    let mut order: Vec<usize> = (0..half).collect();
    order.shuffle(&mut rng);
    let mut alive = vec![true; half];
    for _ in 0..target_k / 2 {
        let peak = col_w.iter().copied().max().unwrap_or(0);
        let floor = col_w.iter().copied().min().unwrap_or(0);
        let (_, victim) = order
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, r)| alive[r])
            .max_by_key(|&(pos, r)| {
                let support = h0.row_support(r);
                let at_floor = support.iter().filter(|&&c| col_w[c] == floor).count();
                let at_peak = support.iter().filter(|&&c| col_w[c] == peak).count();
                let load: usize = support.iter().map(|&c| col_w[c]).sum();
                // Earlier positions in the shuffled order win ties.
                (std::cmp::Reverse(at_floor), at_peak, load, std::cmp::Reverse(pos))
            })
            .expect("rows remain");
        alive[victim] = false;
        for c in h0.row_support(victim) {
            col_w[c] -= 1;
        }
    }
    let keep: Vec<usize> = (0..half).filter(|&r| alive[r]).collect();
    Ok(h0.select_rows(&keep))
}
