//! Seeded Monte Carlo trajectories of per-symbol codeword length,
//! observed at a grid of checkpoints. Trials are keyed by
//! `(master seed, trial index)`, so results are bit-identical across
//! runs and across worker counts.

use rayon::prelude::*;
use serde::Serialize;

use crate::code_sequences::CodeFamily;
use crate::error::{Error, Result};
use crate::numeric::KahanSum;
use crate::source_models::{trial_seed, SourceModel};

#[derive(Debug, Clone, Serialize)]
pub struct TrajectoryRecord {
    pub seed: u64,
    /// `(n, ||gamma(x_1..x_n')|| / n')` per checkpoint, where n' is the
    /// code's usable prefix of n (n itself except for block codes).
    pub checkpoints: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckpointSummary {
    pub n: usize,
    pub min: f64,
    /// First percentile (10th smallest of 1000).
    pub p01: f64,
    pub mean: f64,
}

pub fn pointwise_trajectories(
    source: &SourceModel,
    code: &dyn CodeFamily,
    checkpoints: &[usize],
    trials: u64,
    master_seed: u64,
) -> Result<Vec<TrajectoryRecord>> {
    if checkpoints.is_empty() {
        return Err(Error::InvalidInput("checkpoint grid is empty".into()));
    }
    if !checkpoints.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput(
            "checkpoints must be strictly increasing".into(),
        ));
    }
    if trials == 0 {
        return Err(Error::InvalidInput("need at least one trial".into()));
    }
    if code.alphabet() != source.alphabet() {
        return Err(Error::InvalidInput(
            "code family alphabet does not match the source".into(),
        ));
    }
    for &n in checkpoints {
        if code.usable_prefix(n) == 0 {
            return Err(Error::InvalidInput(format!(
                "checkpoint {n} is below the code's block length"
            )));
        }
    }
    let max_n = *checkpoints.last().unwrap();

    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let seed = trial_seed(master_seed, trial);
            let seq = source.sample(max_n, seed);
            let mut points = Vec::with_capacity(checkpoints.len());
            for &n in checkpoints {
                let n_eff = code.usable_prefix(n);
                let len = code.length(&seq[..n_eff])?;
                points.push((n, len as f64 / n_eff as f64));
            }
            Ok(TrajectoryRecord {
                seed,
                checkpoints: points,
            })
        })
        .collect()
}

/// Per-checkpoint min, first percentile, and mean over all trials.
pub fn summarize_trajectories(records: &[TrajectoryRecord]) -> Vec<CheckpointSummary> {
    if records.is_empty() {
        return Vec::new();
    }
    let width = records[0].checkpoints.len();
    (0..width)
        .map(|i| {
            let n = records[0].checkpoints[i].0;
            let mut values: Vec<f64> = records.iter().map(|r| r.checkpoints[i].1).collect();
            let mut mean = KahanSum::new();
            for &v in &values {
                mean.add(v);
            }
            values.sort_by(f64::total_cmp);
            let p01_idx = ((values.len() as f64 * 0.01).ceil() as usize).max(1) - 1;
            CheckpointSummary {
                n,
                min: values[0],
                p01: values[p01_idx],
                mean: mean.value() / values.len() as f64,
            }
        })
        .collect()
}
