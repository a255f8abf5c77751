//! Dual-containing CSS codes defined by one self-orthogonal matrix.
//!
//! With `H·Hᵀ = 0` the classical code `C = ker H` contains its dual
//! `C⊥ = rowspace H`. The same `H` checks both X and Z errors, and the quantum
//! code encodes `k_q = n − 2·rank(H)` qubits.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::construction::{first_non_orthogonal_pair, is_self_orthogonal};
use crate::error::{Error, Result};
use crate::gf2::{rank, BitMatrix, BitVector, RowEchelon};

/// A dual-containing CSS code and its parameters.
#[derive(Clone, Debug)]
pub struct CssCode {
    h: BitMatrix,
    echelon: RowEchelon,
    pub n: usize,
    pub rank_h: usize,
    /// Dimension of the classical code `ker H`.
    pub k: usize,
    /// Number of logical qubits.
    pub k_q: usize,
    /// Classical rate `k / n`.
    pub r: f64,
    /// Quantum rate `k_q / n`.
    pub r_q: f64,
}

/// Code parameters in serializable form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub rows: usize,
    pub rank_h: usize,
    pub k: usize,
    pub k_q: usize,
    pub r: f64,
    pub r_q: f64,
}

/// Where a decoder residual `e ⊕ ê` falls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ResidualClass {
    /// The residual is zero.
    Trivial,
    /// The residual does not have zero syndrome.
    SyndromeMismatch,
    /// The residual is a nonzero element of the rowspace of `H`.
    Degenerate,
    /// The residual lies in `ker H` but outside its rowspace.
    Logical,
}

impl ResidualClass {
    /// True for the outcomes that count as a decoding failure.
    pub fn is_failure(self) -> bool {
        matches!(self, ResidualClass::SyndromeMismatch | ResidualClass::Logical)
    }
}

/// Checks `h` and derives the code parameters.
pub fn build_css(h: &BitMatrix) -> Result<CssCode> {
    if h.is_zero() {
        return Err(Error::InvalidSpec("zero parity-check matrix".into()));
    }
    if !is_self_orthogonal(h) {
        let (i, j) = first_non_orthogonal_pair(h).expect("non-orthogonal matrix has a witness");
        return Err(Error::NotOrthogonal(i, j));
    }
    let n = h.cols();
    let echelon = RowEchelon::new(h);
    let rank_h = echelon.rank();
    if 2 * rank_h > n {
        // Unreachable for self-orthogonal matrices, kept as a guard.
        return Err(Error::InvalidSpec(format!(
            "negative quantum dimension: n = {n}, rank = {rank_h}"
        )));
    }
    let k = n - rank_h;
    let k_q = n - 2 * rank_h;
    Ok(CssCode {
        h: h.clone(),
        echelon,
        n,
        rank_h,
        k,
        k_q,
        r: k as f64 / n as f64,
        r_q: k_q as f64 / n as f64,
    })
}

impl CssCode {
    pub fn h(&self) -> &BitMatrix {
        &self.h
    }

    pub fn stabilizer_basis(&self) -> &RowEchelon {
        &self.echelon
    }

    pub fn params(&self) -> CodeParams {
        CodeParams {
            n: self.n,
            rows: self.h.rows(),
            rank_h: self.rank_h,
            k: self.k,
            k_q: self.k_q,
            r: self.r,
            r_q: self.r_q,
        }
    }

    /// True iff `v` lies in the rowspace of `H`.
    pub fn in_rowspace(&self, v: &BitVector) -> Result<bool> {
        self.echelon.contains(v)
    }
}

/// Classifies a residual error against the code.
pub fn classify_residual(code: &CssCode, residual: &BitVector) -> Result<ResidualClass> {
    if residual.len() != code.n {
        return Err(Error::DimensionMismatch {
            op: "classify_residual",
            left: code.h.shape(),
            right: (residual.len(), 1),
        });
    }
    if residual.is_zero() {
        return Ok(ResidualClass::Trivial);
    }
    if !code.h.mul_vec(residual)?.is_zero() {
        return Ok(ResidualClass::SyndromeMismatch);
    }
    if code.echelon.contains(residual)? {
        Ok(ResidualClass::Degenerate)
    } else {
        Ok(ResidualClass::Logical)
    }
}

/// Column permutation `I ⊗ D^(i)`: column `b·2^ell + x` goes to
/// `b·2^ell + (x ⊕ i)`.
pub fn dpm_column_permutation(n: usize, ell: u32, i: usize) -> Vec<usize> {
    let side = 1usize << ell;
    (0..n).map(|c| (c & !(side - 1)) | ((c & (side - 1)) ^ i)).collect()
}

/// Indices `i < 2^ell` whose permutation `I ⊗ D^(i)` does not preserve the
/// rowspace of `H`.
///
/// A permutation passes at once when it only reorders the rows of `H`.
/// Otherwise every permuted row is reduced against the echelon basis, which
/// is equivalent to `rank([H; H·P]) == rank(H)`.
pub fn failing_dpm_automorphisms(code: &CssCode, ell: u32) -> Result<Vec<usize>> {
    let side = 1usize << ell;
    if ell > crate::dyadic::MAX_ELL || code.n % side != 0 {
        return Err(Error::InvalidSpec(format!(
            "length {} is not a multiple of 2^{ell}",
            code.n
        )));
    }
    let rows: HashSet<&[u64]> = (0..code.h.rows()).map(|r| code.h.row_words(r)).collect();
    let mut bad = Vec::new();
    for i in 0..side {
        let permuted = code.h.permute_cols(&dpm_column_permutation(code.n, ell, i));
        let reorders = (0..permuted.rows()).all(|r| rows.contains(permuted.row_words(r)));
        if reorders {
            continue;
        }
        for r in 0..permuted.rows() {
            if !code.echelon.contains(&permuted.row(r))? {
                bad.push(i);
                break;
            }
        }
    }
    Ok(bad)
}

/// Rank-based form of the automorphism test for a single permutation index.
pub fn preserves_rowspace_by_rank(code: &CssCode, ell: u32, i: usize) -> Result<bool> {
    let permuted = code.h.permute_cols(&dpm_column_permutation(code.n, ell, i));
    Ok(rank(&code.h.vstack(&permuted)?) == code.rank_h)
}

/// True iff all `2^ell` block-wise DPM permutations are automorphisms.
pub fn verify_dpm_automorphisms(code: &CssCode, ell: u32) -> Result<bool> {
    Ok(failing_dpm_automorphisms(code, ell)?.is_empty())
}
