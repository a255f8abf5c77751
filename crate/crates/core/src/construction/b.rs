//! Construction B: a single block row `[M_0 M_1 … M_{u−1}]` of odd-weight
//! dyadic matrices.
//!
//! Each `M_i` squares to the identity, so `H·Hᵀ = u·I = 0` for even `u`, and
//! `M_0` being invertible makes the expansion full rank.

use super::QdBlockMatrix;
use crate::dyadic::{dyadic_mul, DyadicSignature};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Parameters of a Construction B code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionBSpec {
    pub ell: u32,
    /// Number of blocks. Must be even.
    pub u: usize,
    /// Odd signature weight.
    pub v: usize,
    /// Signature support of every block.
    pub supports: Vec<Vec<usize>>,
}

fn binomial_at_least(n: usize, k: usize, bound: usize) -> bool {
    // Computes binomial(n, k) with saturation at `bound`.
    if k > n {
        return bound == 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc >= bound as u128 {
            return true;
        }
    }
    acc >= bound as u128
}

impl ConstructionBSpec {
    pub fn validate(&self) -> Result<()> {
        if self.u == 0 || self.u % 2 != 0 {
            return Err(Error::InvalidSpec(format!("u must be even and positive, got {}", self.u)));
        }
        if self.v % 2 == 0 {
            return Err(Error::InvalidSpec(format!("v must be odd, got {}", self.v)));
        }
        if self.ell > crate::dyadic::MAX_ELL {
            return Err(Error::InvalidSpec(format!("ell = {} too large", self.ell)));
        }
        if self.supports.len() != self.u {
            return Err(Error::InvalidSpec(format!(
                "expected {} supports, got {}",
                self.u,
                self.supports.len()
            )));
        }
        let side = 1usize << self.ell;
        if !binomial_at_least(side, self.v, self.u) {
            return Err(Error::Infeasible(format!(
                "only binomial({side}, {}) distinct signatures exist for u={}",
                self.v, self.u
            )));
        }
        for (i, s) in self.supports.iter().enumerate() {
            if s.len() != self.v {
                return Err(Error::InvalidSpec(format!(
                    "support {i} has {} entries, expected v={}",
                    s.len(),
                    self.v
                )));
            }
            let mut sorted = s.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|p| p[0] == p[1]) {
                return Err(Error::InvalidSpec(format!("support {i} repeats an index")));
            }
            if let Some(&x) = sorted.iter().find(|&&x| x >= side) {
                return Err(Error::InvalidSpec(format!(
                    "support {i} index {x} out of range for ell={}",
                    self.ell
                )));
            }
        }
        Ok(())
    }

    fn signatures(&self) -> Result<Vec<DyadicSignature>> {
        self.supports
            .iter()
            .map(|s| DyadicSignature::from_support(self.ell, s))
            .collect()
    }
}

/// Builds the `1 × u` array.
pub fn construct_b(spec: &ConstructionBSpec) -> Result<QdBlockMatrix> {
    spec.validate()?;
    QdBlockMatrix::new(spec.ell, 1, spec.u, spec.signatures()?)
}

/// Systematic generator `[I | P]` with `k = 2^ell (u − 1)` rows.
///
/// The parity part for message block `i` is `M_{u−1}·M_i`, which follows from
/// `M_{u−1}` being its own inverse and dyadic matrices commuting.
pub fn systematic_generator_b(spec: &ConstructionBSpec) -> Result<BitMatrix> {
    spec.validate()?;
    let sigs = spec.signatures()?;
    let side = 1usize << spec.ell;
    let last = &sigs[spec.u - 1];
    let k = side * (spec.u - 1);
    let n = side * spec.u;
    let mut entries = Vec::new();
    for (i, sig) in sigs[..spec.u - 1].iter().enumerate() {
        let parity = dyadic_mul(last, sig)?.support();
        for x in 0..side {
            let r = i * side + x;
            entries.push((r, r));
            for &s in &parity {
                entries.push((r, k + (x ^ s)));
            }
        }
    }
    Ok(BitMatrix::from_entries(k, n, entries))
}

/// The `2·2^ell` weight-`2v` codewords supported on blocks `i` and `j`.
///
/// The first `2^ell` are the rows of the matrix with `M_j` at block `i` and
/// `M_i` at block `j`. The remaining `2^ell` have `M_i` at `i` and `M_j` at `j`.
pub fn weight_2v_codewords(spec: &ConstructionBSpec, pair: (usize, usize)) -> Result<Vec<BitVector>> {
    spec.validate()?;
    let (i, j) = pair;
    if i == j {
        return Err(Error::InvalidSpec(format!("block pair ({i}, {j}) must be distinct")));
    }
    if i >= spec.u || j >= spec.u {
        return Err(Error::InvalidSpec(format!("block pair ({i}, {j}) out of range for u={}", spec.u)));
    }
    let sorted = |s: &[usize]| {
        let mut s = s.to_vec();
        s.sort_unstable();
        s
    };
    if sorted(&spec.supports[i]) == sorted(&spec.supports[j]) {
        return Err(Error::InvalidSpec(format!("blocks {i} and {j} are identical")));
    }
    let side = 1usize << spec.ell;
    let n = side * spec.u;
    let (si, sj) = (&spec.supports[i], &spec.supports[j]);
    let mut out = Vec::with_capacity(2 * side);
    for (at_i, at_j) in [(sj, si), (si, sj)] {
        for x in 0..side {
            let mut c = BitVector::zeros(n);
            for &s in at_i {
                c.set(i * side + (x ^ s), true);
            }
            for &s in at_j {
                c.set(j * side + (x ^ s), true);
            }
            out.push(c);
        }
    }
    Ok(out)
}
