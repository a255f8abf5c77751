//! Quasi-dyadic parity-check matrices and the codes built from them.

mod a;
mod b;
mod bicycle;

pub use a::{
    construct_a, construct_a_extended, lhcb_array, ConstructionASpec, ExtendedLayout,
};
pub use b::{construct_b, systematic_generator_b, weight_2v_codewords, ConstructionBSpec};
pub use bicycle::construct_bicycle;

use crate::dyadic::{dyadic_mul, DyadicSignature};
use crate::error::{Error, Result};
use crate::gf2::{mat_mul, BitMatrix};

/// A `w × u` array of dyadic blocks sharing one `ell`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QdBlockMatrix {
    ell: u32,
    w: usize,
    u: usize,
    blocks: Vec<DyadicSignature>,
}

impl QdBlockMatrix {
    /// Builds the array from row-major blocks.
    pub fn new(ell: u32, w: usize, u: usize, blocks: Vec<DyadicSignature>) -> Result<Self> {
        if blocks.len() != w * u {
            return Err(Error::InvalidSpec(format!(
                "expected {} blocks for a {w}x{u} array, got {}",
                w * u,
                blocks.len()
            )));
        }
        if let Some(b) = blocks.iter().find(|b| b.ell() != ell) {
            return Err(Error::OrderMismatch {
                left: ell,
                right: b.ell(),
            });
        }
        Ok(Self { ell, w, u, blocks })
    }

    /// Array of DPMs; `None` entries are zero blocks.
    pub fn from_dpm_indices(ell: u32, w: usize, u: usize, idx: &[Option<usize>]) -> Result<Self> {
        let side = 1usize << ell;
        let blocks = idx
            .iter()
            .map(|e| match *e {
                Some(i) if i < side => Ok(DyadicSignature::unit(ell, i)),
                Some(i) => Err(Error::InvalidSpec(format!("DPM index {i} out of range for 2^{ell}"))),
                None => Ok(DyadicSignature::zero(ell)),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ell, w, u, blocks)
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Number of block rows.
    pub fn w(&self) -> usize {
        self.w
    }

    /// Number of block columns.
    pub fn u(&self) -> usize {
        self.u
    }

    pub fn side(&self) -> usize {
        1 << self.ell
    }

    /// Code length of the expansion.
    pub fn n(&self) -> usize {
        self.u << self.ell
    }

    pub fn block(&self, i: usize, j: usize) -> &DyadicSignature {
        &self.blocks[i * self.u + j]
    }

    pub fn blocks(&self) -> &[DyadicSignature] {
        &self.blocks
    }

    /// DPM exponent of every block, `None` for zero blocks. Returns `None`
    /// overall if any block has weight above one.
    pub fn dpm_exponents(&self) -> Option<Vec<Option<usize>>> {
        self.blocks
            .iter()
            .map(|b| {
                if b.is_zero() {
                    Some(None)
                } else {
                    b.as_dpm().map(|d| Some(d.idx))
                }
            })
            .collect()
    }

    /// Dense `(w·2^ell) × (u·2^ell)` matrix.
    pub fn expand(&self) -> BitMatrix {
        let side = self.side();
        let mut entries = Vec::new();
        for i in 0..self.w {
            for j in 0..self.u {
                let support = self.block(i, j).support();
                for x in 0..side {
                    for &s in &support {
                        entries.push((i * side + x, j * side + (x ^ s)));
                    }
                }
            }
        }
        BitMatrix::from_entries(self.w * side, self.u * side, entries)
    }

    /// Signature of block `(i, j)` of `H·Hᵀ`, which is `Σ_l M_il · M_jl`
    /// because dyadic blocks are symmetric.
    pub fn gram_block(&self, i: usize, j: usize) -> DyadicSignature {
        let mut acc = DyadicSignature::zero(self.ell);
        for l in 0..self.u {
            let p = dyadic_mul(self.block(i, l), self.block(j, l)).expect("blocks share ell");
            acc = acc.add(&p).expect("blocks share ell");
        }
        acc
    }

    /// Block-row pairs `(i, j)`, `i <= j`, whose Gram block is nonzero.
    pub fn orthogonality_defects(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for i in 0..self.w {
            for j in i..self.w {
                if !self.gram_block(i, j).is_zero() {
                    bad.push((i, j));
                }
            }
        }
        bad
    }
}

/// True iff `expand(h)·expand(h)ᵀ = 0`, evaluated on signatures.
pub fn check_orthogonality(h: &QdBlockMatrix) -> bool {
    h.orthogonality_defects().is_empty()
}

/// Dense self-orthogonality test `m·mᵀ = 0`.
pub fn is_self_orthogonal(m: &BitMatrix) -> bool {
    mat_mul(m, &m.transpose()).expect("conforming shapes").is_zero()
}

/// First pair of rows with odd overlap, if any.
pub fn first_non_orthogonal_pair(m: &BitMatrix) -> Option<(usize, usize)> {
    let g = mat_mul(m, &m.transpose()).expect("conforming shapes");
    (0..g.rows()).find_map(|r| g.row_support(r).first().map(|&c| (r.min(c), r.max(c))))
}
