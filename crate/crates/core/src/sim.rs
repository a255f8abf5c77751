//! Monte-Carlo estimation of logical error rates under depolarizing noise.
//!
//! Trial `t` draws its error from a ChaCha8 stream keyed by `(seed, t)`, so a
//! trial's outcome does not depend on how trials are scheduled. Trials run in
//! parallel batches, and the tally walks each batch in trial order and stops
//! at the exact trial that produced the target-th error. The reported counts
//! are therefore identical for any thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::css::{classify_residual, CssCode, ResidualClass};
use crate::decoder::{DecoderConfig, Llr, MinSumDecoder};
use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Per-qubit depolarizing noise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelModel {
    pub p: f64,
}

impl ChannelModel {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&p) {
            return Err(Error::InvalidSpec(format!("depolarizing probability {p} outside [0, 1)")));
        }
        Ok(Self { p })
    }

    /// Flip probability of either component, `2p/3`.
    pub fn marginal_flip(&self) -> f64 {
        2.0 * self.p / 3.0
    }
}

/// Draws the X and Z components of a depolarizing error on `n` qubits.
///
/// `p` is not range-checked here; values at or above 1 make every qubit
/// non-identity.
pub fn sample_error<R: Rng + ?Sized>(ch: &ChannelModel, n: usize, rng: &mut R) -> (BitVector, BitVector) {
    let mut ex = BitVector::zeros(n);
    let mut ez = BitVector::zeros(n);
    if ch.p <= 0.0 {
        return (ex, ez);
    }
    for q in 0..n {
        if rng.gen::<f64>() < ch.p {
            match rng.gen_range(0..3u8) {
                0 => ex.set(q, true),
                1 => ez.set(q, true),
                _ => {
                    ex.set(q, true);
                    ez.set(q, true);
                }
            }
        }
    }
    (ex, ez)
}

/// Which components a trial decodes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Accounting {
    /// Decode both components; either failing fails the trial.
    #[default]
    Joint,
    /// Decode only the X component.
    XOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StopRule {
    pub target_errors: u64,
    pub max_trials: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        Self {
            target_errors: 100,
            max_trials: 1_000_000,
        }
    }
}

/// Decoder settings recorded alongside a result.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecoderSnapshot {
    pub max_iterations: usize,
    pub normalization: f64,
    pub channel_llr: f64,
    pub llr_type: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimResult {
    pub code_id: String,
    pub p: f64,
    pub trials: u64,
    pub logical_errors: u64,
    pub ler: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    /// True when the run ended on `max_trials` before reaching the target.
    pub hit_max_trials: bool,
    pub seed: u64,
    pub accounting: Accounting,
    pub decoder: DecoderSnapshot,
}

/// Everything observed in one trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    pub e_x: BitVector,
    pub e_z: BitVector,
    /// `e ⊕ ê` per component. The Z entries are `None` under X-only accounting.
    pub residual_x: BitVector,
    pub residual_z: Option<BitVector>,
    pub class_x: ResidualClass,
    pub class_z: Option<ResidualClass>,
    pub failed: bool,
}

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    const Z: f64 = 1.959_963_984_540_054;
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = Z * Z;
    let denom = 1.0 + z2 / n;
    let centre = (phat + z2 / (2.0 * n)) / denom;
    let half = Z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

/// The RNG used for trial `trial` under `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Samples, decodes and classifies a single trial.
pub fn run_trial<T: Llr>(
    code: &CssCode,
    decoder: &MinSumDecoder<T>,
    ch: &ChannelModel,
    accounting: Accounting,
    seed: u64,
    trial: u64,
) -> Result<TrialRecord> {
    let mut rng = trial_rng(seed, trial);
    let (e_x, e_z) = sample_error(ch, code.n, &mut rng);
    let component = |e: &BitVector| -> Result<(BitVector, ResidualClass)> {
        let syndrome = code.h().mul_vec(e)?;
        let out = decoder.decode(&syndrome)?;
        let residual = e.xor(&out.estimate);
        let class = classify_residual(code, &residual)?;
        Ok((residual, class))
    };
    let (residual_x, class_x) = component(&e_x)?;
    let (residual_z, class_z) = match accounting {
        Accounting::Joint => {
            let (r, c) = component(&e_z)?;
            (Some(r), Some(c))
        }
        Accounting::XOnly => (None, None),
    };
    let failed = class_x.is_failure() || class_z.is_some_and(ResidualClass::is_failure);
    Ok(TrialRecord {
        e_x,
        e_z,
        residual_x,
        residual_z,
        class_x,
        class_z,
        failed,
    })
}

/// Options shared by every point of a run.
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub code_id: String,
    pub stop: StopRule,
    pub seed: u64,
    pub accounting: Accounting,
    /// Trials evaluated in parallel before the tally is checked.
    pub batch: u64,
}

impl RunOptions {
    pub fn new(code_id: impl Into<String>, seed: u64) -> Self {
        Self {
            code_id: code_id.into(),
            stop: StopRule::default(),
            seed,
            accounting: Accounting::Joint,
            batch: 256,
        }
    }
}

/// Estimates the logical error rate of `code` at one channel strength.
pub fn run_point<T: Llr>(
    code: &CssCode,
    ch: &ChannelModel,
    cfg: &DecoderConfig<T>,
    opts: &RunOptions,
) -> Result<SimResult> {
    let decoder = MinSumDecoder::new(code.h(), *cfg)?;
    let batch = opts.batch.max(1);
    let mut trials = 0u64;
    let mut errors = 0u64;
    'outer: while trials < opts.stop.max_trials && errors < opts.stop.target_errors {
        let end = (trials + batch).min(opts.stop.max_trials);
        let verdicts: Vec<bool> = (trials..end)
            .into_par_iter()
            .map(|t| run_trial(code, &decoder, ch, opts.accounting, opts.seed, t).map(|r| r.failed))
            .collect::<Result<_>>()?;
        for failed in verdicts {
            trials += 1;
            if failed {
                errors += 1;
                if errors == opts.stop.target_errors {
                    break 'outer;
                }
            }
        }
    }
    let (ci_lo, ci_hi) = wilson_interval(errors, trials);
    Ok(SimResult {
        code_id: opts.code_id.clone(),
        p: ch.p,
        trials,
        logical_errors: errors,
        ler: if trials == 0 { 0.0 } else { errors as f64 / trials as f64 },
        ci_lo,
        ci_hi,
        hit_max_trials: errors < opts.stop.target_errors,
        seed: opts.seed,
        accounting: opts.accounting,
        decoder: DecoderSnapshot {
            max_iterations: cfg.max_iterations,
            normalization: cfg.normalization.to_f64().unwrap_or(f64::NAN),
            channel_llr: cfg.channel_llr.to_f64().unwrap_or(f64::NAN),
            llr_type: std::any::type_name::<T>(),
        },
    })
}

/// Runs every point of `grid` with the same seed and a decoder prior matched
/// to each `p`.
pub fn run_sweep<T: Llr>(
    code: &CssCode,
    grid: &[f64],
    max_iterations: usize,
    opts: &RunOptions,
) -> Result<Vec<SimResult>> {
    grid.iter()
        .map(|&p| {
            let ch = ChannelModel::new(p)?;
            let mut cfg = DecoderConfig::<T>::for_depolarizing(p);
            cfg.max_iterations = max_iterations;
            run_point(code, &ch, &cfg, opts)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_matches_reference_value() {
        // 10 of 100: the textbook interval is [0.0552, 0.1744].
        let (lo, hi) = wilson_interval(10, 100);
        assert!((lo - 0.05523).abs() < 1e-4, "{lo}");
        assert!((hi - 0.17437).abs() < 1e-4, "{hi}");
    }

    #[test]
    fn rejects_out_of_range_p() {
        assert!(ChannelModel::new(1.0).is_err());
        assert!(ChannelModel::new(-0.1).is_err());
    }
}
