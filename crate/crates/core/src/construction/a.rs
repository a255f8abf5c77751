//! Construction A: DPM arrays whose rows are generated by the left-hand
//! conveyor belt (LHCB) rule.
//!
//! Block row 0 alternates the anchor `Q = D^(z0)` with the DPMs listed in
//! `z`. An odd block row is the previous one shifted right by one block. An
//! even block row `i >= 2` takes the `z` slots of row 0 in the order
//! `σ_i(j) = 1 + ((s_i − j) mod u/2)` with `s_i = (u − i)/2 + 1`.

use super::QdBlockMatrix;
use crate::dyadic::DyadicSignature;
use crate::error::{Error, Result};

/// Parameters of a Construction A code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionASpec {
    pub ell: u32,
    /// Block rows (column weight of the expansion).
    pub w: usize,
    /// Block columns (row weight of the expansion). Must be even.
    pub u: usize,
    /// Anchor DPM index.
    pub z0: usize,
    /// For `w <= 4`: the `u/2` DPM indices placed between anchors.
    /// For `w > 4`: the sub-block DPMs, see [`construct_a_extended`].
    pub z: Vec<usize>,
    /// Repeated DPM used by the sub-block pattern when `w > 4`.
    pub repeated_index: Option<usize>,
}

/// Sub-block layout of row 0 when `w > 4`.
///
/// Row 0 is `n_s` copies of a length-`l` sub-block
/// `[Q D̃ Q D̃ … Q D̃ Q D^(z_t)]` with `n_r` leading `[Q D̃]` pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtendedLayout {
    /// Largest gap `δ(j) − δ(i)` between LHCB rows, with `δ(i) = i/2`.
    pub delta: usize,
    /// Sub-block length in blocks.
    pub l: usize,
    /// Number of sub-blocks.
    pub n_s: usize,
    /// Number of `[Q D̃]` repeats per sub-block.
    pub n_r: usize,
}

impl ExtendedLayout {
    /// Layout for `4 < w < u` with `u` a power of two.
    ///
    /// The even rows that use the LHCB rule are `2, 4, …` up to the largest
    /// even index below `w`. Orthogonality between two such rows needs their
    /// gap to be smaller than the period `l/2` of the `z` slots, so
    /// `l >= 2(delta + 1)`. `l` is rounded up to a power of two so that it
    /// divides `u`.
    pub fn for_params(w: usize, u: usize) -> Result<Self> {
        if w <= 4 || w >= u {
            return Err(Error::InvalidSpec(format!(
                "sub-block layout needs 4 < w < u, got w={w}, u={u}"
            )));
        }
        if !u.is_power_of_two() {
            return Err(Error::InvalidSpec(format!(
                "w > 4 requires u to be a power of two, got u={u}"
            )));
        }
        let last_even = if w % 2 == 1 { w - 1 } else { w - 2 };
        let delta = last_even / 2 - 1;
        let l = (2 * (delta + 1)).next_power_of_two();
        if u % l != 0 {
            return Err(Error::Infeasible(format!(
                "sub-block length {l} does not divide u={u}"
            )));
        }
        Ok(Self {
            delta,
            l,
            n_s: u / l,
            n_r: l / 2 - 1,
        })
    }
}

fn validate_common(spec: &ConstructionASpec) -> Result<()> {
    if spec.u == 0 || spec.u % 2 != 0 {
        return Err(Error::InvalidSpec(format!("u must be even and positive, got {}", spec.u)));
    }
    if spec.w == 0 || spec.w > spec.u {
        return Err(Error::InvalidSpec(format!(
            "w must lie in 1..=u, got w={}, u={}",
            spec.w, spec.u
        )));
    }
    if spec.ell > crate::dyadic::MAX_ELL {
        return Err(Error::InvalidSpec(format!("ell = {} too large", spec.ell)));
    }
    let side = 1usize << spec.ell;
    let all = std::iter::once(spec.z0)
        .chain(spec.z.iter().copied())
        .chain(spec.repeated_index);
    for i in all {
        if i >= side {
            return Err(Error::InvalidSpec(format!(
                "DPM index {i} out of range for ell={}",
                spec.ell
            )));
        }
    }
    Ok(())
}

fn require_distinct(indices: &[usize], ell: u32) -> Result<()> {
    let mut seen = indices.to_vec();
    seen.sort_unstable();
    if seen.windows(2).any(|p| p[0] == p[1]) {
        let side = 1usize << ell;
        return if indices.len() > side {
            Err(Error::Infeasible(format!(
                "{} distinct DPMs needed but only {side} exist for ell={ell}",
                indices.len()
            )))
        } else {
            Err(Error::InvalidSpec(format!("DPM indices {indices:?} are not distinct")))
        };
    }
    Ok(())
}

/// Applies the row rules to an explicit sequence of `u/2` slot DPMs for row 0.
///
/// This is the raw generator. It performs only shape checks and gives no
/// orthogonality guarantee; [`construct_a`] and [`construct_a_extended`]
/// choose the slot sequence that makes the result self-orthogonal.
pub fn lhcb_array(ell: u32, w: usize, u: usize, z0: usize, slots: &[usize]) -> Result<QdBlockMatrix> {
    if u == 0 || u % 2 != 0 || slots.len() != u / 2 || w == 0 || w > u {
        return Err(Error::InvalidSpec(format!(
            "LHCB array needs even u, 1 <= w <= u and u/2 slots; got w={w}, u={u}, {} slots",
            slots.len()
        )));
    }
    let half = u / 2;
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(w);
    for i in 0..w {
        let row = if i == 0 {
            (0..u).map(|p| if p % 2 == 0 { z0 } else { slots[p / 2] }).collect()
        } else if i % 2 == 1 {
            let prev: &Vec<usize> = &rows[i - 1];
            (0..u).map(|p| prev[(p + u - 1) % u]).collect()
        } else {
            // σ_i(j) with 1-based j, mapped to 0-based slot numbers.
            let s = (u - i) / 2 + 1;
            (0..u)
                .map(|p| {
                    if p % 2 == 0 {
                        z0
                    } else {
                        let j = p / 2 + 1;
                        let sigma = 1 + (s + half - j % half) % half;
                        slots[sigma - 1]
                    }
                })
                .collect()
        };
        rows.push(row);
    }
    let blocks = rows
        .iter()
        .flatten()
        .map(|&idx| DyadicSignature::unit(ell, idx))
        .collect();
    QdBlockMatrix::new(ell, w, u, blocks)
}

/// Builds a Construction A parity-check array.
///
/// For `w <= 4` the anchor and the `u/2` entries of `z` must be distinct
/// DPMs. Larger `w` is delegated to [`construct_a_extended`].
pub fn construct_a(spec: &ConstructionASpec) -> Result<QdBlockMatrix> {
    validate_common(spec)?;
    if spec.w > 4 {
        return construct_a_extended(spec);
    }
    if spec.z.len() != spec.u / 2 {
        return Err(Error::InvalidSpec(format!(
            "z must list u/2 = {} DPM indices, got {}",
            spec.u / 2,
            spec.z.len()
        )));
    }
    let mut all = vec![spec.z0];
    all.extend_from_slice(&spec.z);
    require_distinct(&all, spec.ell)?;
    lhcb_array(spec.ell, spec.w, spec.u, spec.z0, &spec.z)
}

/// Builds the sub-block variant used for `4 < w < u`.
///
/// The repeated DPM `D̃` is `repeated_index` when given, in which case `z`
/// lists the `n_s` sub-block DPMs. Without `repeated_index`, `z[0]` is `D̃`
/// and `z[1..]` are the `n_s` sub-block DPMs. The anchor, `D̃` and the
/// sub-block DPMs must all be distinct.
pub fn construct_a_extended(spec: &ConstructionASpec) -> Result<QdBlockMatrix> {
    validate_common(spec)?;
    let layout = ExtendedLayout::for_params(spec.w, spec.u)?;
    let (repeated, free) = match spec.repeated_index {
        Some(d) => (d, &spec.z[..]),
        None => match spec.z.split_first() {
            Some((&d, rest)) => (d, rest),
            None => {
                return Err(Error::InvalidSpec("z is empty".into()));
            }
        },
    };
    if free.len() != layout.n_s {
        return Err(Error::InvalidSpec(format!(
            "sub-block pattern needs {} sub-block DPMs, got {}",
            layout.n_s,
            free.len()
        )));
    }
    let mut all = vec![spec.z0, repeated];
    all.extend_from_slice(free);
    require_distinct(&all, spec.ell)?;
    let period = layout.l / 2;
    let slots: Vec<usize> = (0..spec.u / 2)
        .map(|s| if s % period == period - 1 { free[s / period] } else { repeated })
        .collect();
    lhcb_array(spec.ell, spec.w, spec.u, spec.z0, &slots)
}
