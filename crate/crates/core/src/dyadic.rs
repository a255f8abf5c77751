//! Dyadic matrices handled through their signatures.
//!
//! A dyadic matrix of side `2^ell` is determined by its first row `m`: entry
//! `(i, j)` equals `m[i ^ j]`. Sums and products of dyadic matrices stay
//! dyadic, so all algebra here runs on signatures and dense matrices appear
//! only in [`DyadicSignature::expand`].

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Largest supported `ell`. Side lengths beyond `2^16` are far outside the
/// scales these codes are used at.
pub const MAX_ELL: u32 = 16;

/// First row of a `2^ell × 2^ell` dyadic matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyadicSignature {
    ell: u32,
    sig: BitVector,
}

/// Result of squaring a dyadic matrix: it is either zero or the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareClass {
    Zero,
    Identity,
}

impl DyadicSignature {
    pub fn new(ell: u32, sig: BitVector) -> Result<Self> {
        if ell > MAX_ELL {
            return Err(Error::InvalidSpec(format!("ell = {ell} exceeds {MAX_ELL}")));
        }
        if sig.len() != 1usize << ell {
            return Err(Error::InvalidSpec(format!(
                "signature length {} does not match 2^{ell}",
                sig.len()
            )));
        }
        Ok(Self { ell, sig })
    }

    pub fn zero(ell: u32) -> Self {
        Self {
            ell,
            sig: BitVector::zeros(1 << ell),
        }
    }

    /// Signature of the identity matrix.
    pub fn identity(ell: u32) -> Self {
        Self::unit(ell, 0)
    }

    /// Signature of the dyadic permutation matrix `D^(idx)`.
    ///
    /// # Panics
    /// Panics if `idx >= 2^ell`.
    pub fn unit(ell: u32, idx: usize) -> Self {
        Self {
            ell,
            sig: BitVector::from_support(1 << ell, &[idx]),
        }
    }

    /// Signature with ones at `support`. Repeated indices are rejected.
    pub fn from_support(ell: u32, support: &[usize]) -> Result<Self> {
        let side = 1usize << ell;
        let mut sig = BitVector::zeros(side);
        for &s in support {
            if s >= side {
                return Err(Error::InvalidSpec(format!("support index {s} out of range for 2^{ell}")));
            }
            if sig.get(s) {
                return Err(Error::InvalidSpec(format!("support index {s} repeated")));
            }
            sig.set(s, true);
        }
        Ok(Self { ell, sig })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Side length `2^ell`.
    pub fn side(&self) -> usize {
        1 << self.ell
    }

    pub fn bits(&self) -> &BitVector {
        &self.sig
    }

    pub fn weight(&self) -> usize {
        self.sig.weight()
    }

    pub fn is_zero(&self) -> bool {
        self.sig.is_zero()
    }

    pub fn support(&self) -> Vec<usize> {
        self.sig.support()
    }

    /// The DPM index when the signature has weight one.
    pub fn as_dpm(&self) -> Option<DpmIndex> {
        let mut ones = self.sig.iter_ones();
        match (ones.next(), ones.next()) {
            (Some(idx), None) => Some(DpmIndex { ell: self.ell, idx }),
            _ => None,
        }
    }

    /// Entry `(i, j)` of the full matrix.
    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.sig.get(i ^ j)
    }

    /// Signature of the sum of two dyadic matrices.
    pub fn add(&self, other: &Self) -> Result<Self> {
        check_ell(self, other)?;
        Ok(Self {
            ell: self.ell,
            sig: self.sig.xor(&other.sig),
        })
    }

    /// Dense `2^ell × 2^ell` matrix.
    pub fn expand(&self) -> BitMatrix {
        expand(self)
    }
}

impl std::fmt::Debug for DyadicSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DyadicSignature(ell={}, support={:?})", self.ell, self.support())
    }
}

/// Index of a dyadic permutation matrix `D^(idx)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DpmIndex {
    pub ell: u32,
    pub idx: usize,
}

impl DpmIndex {
    pub fn new(ell: u32, idx: usize) -> Result<Self> {
        if ell > MAX_ELL || idx >= 1usize << ell {
            return Err(Error::InvalidSpec(format!("DPM index {idx} out of range for 2^{ell}")));
        }
        Ok(Self { ell, idx })
    }

    pub fn signature(&self) -> DyadicSignature {
        DyadicSignature::unit(self.ell, self.idx)
    }

    /// `D^(a) D^(b) = D^(a ^ b)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.ell != other.ell {
            return Err(Error::OrderMismatch {
                left: self.ell,
                right: other.ell,
            });
        }
        Ok(Self {
            ell: self.ell,
            idx: self.idx ^ other.idx,
        })
    }
}

fn check_ell(a: &DyadicSignature, b: &DyadicSignature) -> Result<()> {
    if a.ell != b.ell {
        return Err(Error::OrderMismatch {
            left: a.ell,
            right: b.ell,
        });
    }
    Ok(())
}

/// Signature of the product of two dyadic matrices:
/// `c[k] = XOR over i of a[i] & b[i ^ k]`.
pub fn dyadic_mul(a: &DyadicSignature, b: &DyadicSignature) -> Result<DyadicSignature> {
    check_ell(a, b)?;
    let mut c = BitVector::zeros(a.side());
    let sb = b.support();
    for i in a.sig.iter_ones() {
        for &j in &sb {
            c.flip(i ^ j);
        }
    }
    Ok(DyadicSignature { ell: a.ell, sig: c })
}

/// Class of `a·a`: odd-weight signatures square to the identity, even-weight
/// ones to zero.
pub fn dyadic_square_class(a: &DyadicSignature) -> SquareClass {
    if a.weight() % 2 == 1 {
        SquareClass::Identity
    } else {
        SquareClass::Zero
    }
}

/// Dense expansion with entry `(i, j) = sig[i ^ j]`.
pub fn expand(a: &DyadicSignature) -> BitMatrix {
    let side = a.side();
    let support = a.support();
    BitMatrix::from_entries(
        side,
        side,
        (0..side).flat_map(|i| support.iter().map(move |&s| (i, i ^ s))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_ring() {
        let one = DyadicSignature::identity(0);
        assert_eq!(expand(&one), BitMatrix::identity(1));
        assert_eq!(dyadic_mul(&one, &one).unwrap(), one);
        assert_eq!(dyadic_square_class(&DyadicSignature::zero(0)), SquareClass::Zero);
    }

    #[test]
    fn mismatched_orders_rejected() {
        let e = dyadic_mul(&DyadicSignature::identity(2), &DyadicSignature::identity(3)).unwrap_err();
        assert_eq!(e, Error::OrderMismatch { left: 2, right: 3 });
    }
}
