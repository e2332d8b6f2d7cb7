//! Experiments that check the entropy lower-bound inequalities at desk
//! scale: the C-set probability bound, the average-length inequality,
//! pointwise trajectories, and Shannon's n(q) convergence.

mod average;
mod cset;
mod nq;
mod pointwise;

pub use average::{average_curve, expected_code_length, AverageRow};
pub use cset::{c_set_report, CSetReport};
pub use nq::{shannon_nq, NqRow};
pub use pointwise::{
    pointwise_trajectories, summarize_trajectories, CheckpointSummary, TrajectoryRecord,
};

/// Per-sequence enumeration limit for brute-force fallbacks: `K^n <= 2^20`.
pub const MAX_BRUTE_FORCE: u64 = 1 << 20;

pub(crate) fn brute_force_size(k: usize, n: usize) -> crate::error::Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..n {
        acc = acc
            .checked_mul(k as u64)
            .filter(|&a| a <= MAX_BRUTE_FORCE)
            .ok_or_else(|| {
                crate::error::Error::Capacity(format!(
                    "per-sequence enumeration needs K^n <= {MAX_BRUTE_FORCE}; K={k}, n={n} exceeds that"
                ))
            })?;
    }
    Ok(acc)
}

/// Odometer iteration over all sequences of `X^n` in lexicographic order.
pub(crate) fn for_each_sequence<F: FnMut(&[usize])>(k: usize, n: usize, mut f: F) {
    let mut seq = vec![0usize; n];
    loop {
        f(&seq);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            seq[i] += 1;
            if seq[i] < k {
                break;
            }
            seq[i] = 0;
        }
    }
}
