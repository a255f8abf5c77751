//! Quasi-dyadic dual-containing CSS codes.
//!
//! The crate builds LDPC parity-check matrices out of dyadic blocks, checks
//! that they are self-orthogonal, and measures them: rank and rate, Tanner
//! graph cycles, minimum distance, and logical error rate under
//! depolarizing noise with a min-sum decoder.
//!
//! ```
//! use qdcss::{catalog, min_distance, DistanceMode};
//!
//! let code = catalog::b3_128().build()?.css()?;
//! assert_eq!((code.n, code.k_q), (128, 64));
//! let d = min_distance(&code, DistanceMode::Exhaustive { max_weight: 4 })?;
//! assert_eq!(d.quantum_d, None); // nothing up to weight 4
//! # Ok::<(), qdcss::Error>(())
//! ```

pub mod catalog;
pub mod codespec;
pub mod construction;
pub mod css;
pub mod cycles;
pub mod decoder;
pub mod distance;
pub mod dyadic;
pub mod error;
pub mod gf2;
pub mod heuristic;
pub mod sim;

pub use codespec::{parse_spec, BuiltCode, CodeSpec, ConstructionKind};
pub use construction::{
    check_orthogonality, construct_a, construct_a_extended, construct_b, construct_bicycle, ConstructionASpec,
    ConstructionBSpec, QdBlockMatrix,
};
pub use css::{build_css, classify_residual, verify_dpm_automorphisms, CssCode, ResidualClass};
pub use cycles::{count_4cycles_blockwise, girth_bfs, TannerGraph};
pub use decoder::{decode, DecodeOutcome, DecoderConfig, Llr, MinSumDecoder};
pub use distance::{min_distance, DistanceMode, DistanceReport};
pub use dyadic::{DpmIndex, DyadicSignature};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use heuristic::{generate_supports, verify_difference_sets, HeuristicConfig};
pub use sim::{run_point, run_sweep, sample_error, ChannelModel, RunOptions, SimResult};

/// Double-precision min-sum decoder.
pub type Decoder = MinSumDecoder<f64>;
/// Single-precision min-sum decoder.
pub type DecoderF32 = MinSumDecoder<f32>;
/// Double-precision decoder settings.
pub type Config = DecoderConfig<f64>;
/// Single-precision decoder settings.
pub type ConfigF32 = DecoderConfig<f32>;
