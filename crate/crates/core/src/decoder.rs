//! Min-sum belief propagation for syndrome decoding.
//!
//! The decoder looks for a low-weight error `ê` with `H·êᵀ = s`. It runs a
//! flooding schedule: all check nodes update, then all variable nodes, then
//! a hard decision is tested against the target syndrome.
//!
//! Messages are log-likelihood ratios of a generic float type; see
//! [`crate::Decoder`] and [`crate::DecoderF32`] for the concrete aliases.

use num_traits::{Float, FromPrimitive};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Float types usable as message values.
pub trait Llr: Float + FromPrimitive + Send + Sync + std::fmt::Debug + 'static {}

impl Llr for f32 {}
impl Llr for f64 {}

/// Magnitude at which messages saturate.
pub const LLR_CLIP: f64 = 50.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecoderConfig<T> {
    pub max_iterations: usize,
    /// Scale applied to check-to-variable magnitudes; 1 is plain min-sum.
    pub normalization: T,
    /// Prior LLR of every bit, `ln((1 − p′)/p′)`.
    pub channel_llr: T,
}

impl<T: Llr> DecoderConfig<T> {
    /// Plain min-sum for a per-bit flip probability `p_flip`.
    pub fn for_flip_probability(p_flip: f64) -> Self {
        let llr = if p_flip <= 0.0 {
            LLR_CLIP
        } else {
            ((1.0 - p_flip) / p_flip).ln().clamp(-LLR_CLIP, LLR_CLIP)
        };
        Self {
            max_iterations: 100,
            normalization: T::one(),
            channel_llr: T::from_f64(llr).expect("finite"),
        }
    }

    /// Priors for one component of depolarizing noise of strength `p`, whose
    /// marginal flip probability is `2p/3`.
    pub fn for_depolarizing(p: f64) -> Self {
        Self::for_flip_probability(2.0 * p / 3.0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::InvalidSpec("max_iterations must be at least 1".into()));
        }
        let norm = self.normalization;
        if !(norm > T::zero() && norm <= T::one()) {
            return Err(Error::InvalidSpec("normalization must lie in (0, 1]".into()));
        }
        if !self.channel_llr.is_finite() {
            return Err(Error::NonFiniteLlr(0));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub estimate: BitVector,
    /// True iff the estimate reproduces the target syndrome.
    pub converged: bool,
    pub iterations_used: usize,
}

/// Tanner-graph adjacency prepared once per parity-check matrix.
#[derive(Clone, Debug)]
pub struct MinSumDecoder<T> {
    n: usize,
    m: usize,
    /// Edge range of each check in `edge_var`.
    check_start: Vec<usize>,
    edge_var: Vec<usize>,
    /// Edges of each variable, grouped by variable.
    var_start: Vec<usize>,
    var_edges: Vec<usize>,
    cfg: DecoderConfig<T>,
}

impl<T: Llr> MinSumDecoder<T> {
    pub fn new(h: &BitMatrix, cfg: DecoderConfig<T>) -> Result<Self> {
        cfg.validate()?;
        let (m, n) = h.shape();
        let mut check_start = Vec::with_capacity(m + 1);
        let mut edge_var = Vec::new();
        check_start.push(0);
        for r in 0..m {
            edge_var.extend(h.row_support(r));
            check_start.push(edge_var.len());
        }
        let mut counts = vec![0usize; n + 1];
        for &v in &edge_var {
            counts[v + 1] += 1;
        }
        for v in 0..n {
            counts[v + 1] += counts[v];
        }
        let var_start = counts.clone();
        let mut fill = counts;
        let mut var_edges = vec![0; edge_var.len()];
        for (e, &v) in edge_var.iter().enumerate() {
            var_edges[fill[v]] = e;
            fill[v] += 1;
        }
        Ok(Self {
            n,
            m,
            check_start,
            edge_var,
            var_start,
            var_edges,
            cfg,
        })
    }

    pub fn config(&self) -> &DecoderConfig<T> {
        &self.cfg
    }

    /// Decodes with the configured prior on every bit.
    pub fn decode(&self, syndrome: &BitVector) -> Result<DecodeOutcome> {
        let priors = vec![self.cfg.channel_llr; self.n];
        self.decode_with_priors(syndrome, &priors)
    }

    /// Decodes with one prior LLR per bit.
    pub fn decode_with_priors(&self, syndrome: &BitVector, priors: &[T]) -> Result<DecodeOutcome> {
        if syndrome.len() != self.m {
            return Err(Error::DimensionMismatch {
                op: "decode",
                left: (self.m, self.n),
                right: (syndrome.len(), 1),
            });
        }
        if priors.len() != self.n {
            return Err(Error::DimensionMismatch {
                op: "decode",
                left: (self.m, self.n),
                right: (1, priors.len()),
            });
        }
        if let Some(i) = priors.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFiniteLlr(i));
        }
        let clip = T::from_f64(LLR_CLIP).expect("finite");
        let clamp = |x: T| x.max(-clip).min(clip);
        let target: Vec<bool> = (0..self.m).map(|c| syndrome.get(c)).collect();
        let priors: Vec<T> = priors.iter().map(|&p| clamp(p)).collect();

        let mut estimate = vec![false; self.n];
        for (b, &p) in estimate.iter_mut().zip(&priors) {
            *b = p < T::zero();
        }
        if self.matches(&estimate, &target) {
            return Ok(self.outcome(&estimate, true, 0));
        }

        let edges = self.edge_var.len();
        let mut v2c: Vec<T> = self.edge_var.iter().map(|&v| priors[v]).collect();
        let mut c2v = vec![T::zero(); edges];
        let norm = self.cfg.normalization;

        for iter in 1..=self.cfg.max_iterations {
            for c in 0..self.m {
                let range = self.check_start[c]..self.check_start[c + 1];
                let mut negative = target[c];
                let mut min1 = T::infinity();
                let mut min2 = T::infinity();
                let mut arg = usize::MAX;
                for e in range.clone() {
                    let x = v2c[e];
                    if x < T::zero() {
                        negative = !negative;
                    }
                    let a = x.abs();
                    if a < min1 {
                        min2 = min1;
                        min1 = a;
                        arg = e;
                    } else if a < min2 {
                        min2 = a;
                    }
                }
                for e in range {
                    let mag = if e == arg { min2 } else { min1 };
                    let mag = if mag.is_finite() { norm * mag } else { T::zero() };
                    // Sign of the product over the other edges.
                    let others_negative = negative ^ (v2c[e] < T::zero());
                    c2v[e] = if others_negative { -mag } else { mag };
                }
            }
            for v in 0..self.n {
                let es = &self.var_edges[self.var_start[v]..self.var_start[v + 1]];
                let mut total = priors[v];
                for &e in es {
                    total = total + c2v[e];
                }
                for &e in es {
                    v2c[e] = clamp(total - c2v[e]);
                }
                estimate[v] = total < T::zero();
            }
            if self.matches(&estimate, &target) {
                return Ok(self.outcome(&estimate, true, iter));
            }
        }
        Ok(self.outcome(&estimate, false, self.cfg.max_iterations))
    }

    fn matches(&self, estimate: &[bool], target: &[bool]) -> bool {
        (0..self.m).all(|c| {
            let parity = self.edge_var[self.check_start[c]..self.check_start[c + 1]]
                .iter()
                .fold(false, |acc, &v| acc ^ estimate[v]);
            parity == target[c]
        })
    }

    fn outcome(&self, estimate: &[bool], converged: bool, iterations_used: usize) -> DecodeOutcome {
        DecodeOutcome {
            estimate: BitVector::from_bools(estimate),
            converged,
            iterations_used,
        }
    }
}

/// One-shot decode against `h`.
pub fn decode<T: Llr>(h: &BitMatrix, syndrome: &BitVector, cfg: &DecoderConfig<T>) -> Result<DecodeOutcome> {
    MinSumDecoder::new(h, *cfg)?.decode(syndrome)
}
