//! Exact expected codeword length per symbol against the entropy rate.

use serde::Serialize;

use super::{brute_force_size, for_each_sequence};
use crate::code_sequences::CodeFamily;
use crate::error::{Error, Result};
use crate::numeric::KahanSum;
use crate::source_models::SourceModel;

#[derive(Debug, Clone, Serialize)]
pub struct AverageRow {
    pub n: usize,
    pub expected_length_per_symbol: f64,
    pub entropy: f64,
    /// `H - E[l]/n`; positive wherever the code beats entropy at finite n.
    pub deficit: f64,
}

/// Exact `E[||encode||]` at block length n: closed form when the family
/// has one, per-sequence enumeration otherwise.
pub fn expected_code_length(source: &SourceModel, code: &dyn CodeFamily, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidInput("block length must be >= 1".into()));
    }
    if let Some(e) = code.expected_length_exact(source, n)? {
        return Ok(e);
    }
    brute_force_size(source.alphabet().size(), n)?;
    let mut acc = KahanSum::new();
    let mut failure: Option<Error> = None;
    for_each_sequence(source.alphabet().size(), n, |seq| {
        if failure.is_some() {
            return;
        }
        match code.length(seq) {
            Ok(len) => {
                let lp = source.log2_prob(seq).unwrap().value();
                acc.add(lp.exp2() * len as f64);
            }
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(acc.value()),
    }
}

pub fn average_curve(
    source: &SourceModel,
    code: &dyn CodeFamily,
    n_values: &[usize],
) -> Result<Vec<AverageRow>> {
    let entropy = source.entropy_rate();
    n_values
        .iter()
        .map(|&n| {
            let e = expected_code_length(source, code, n)?;
            debug_assert!(e >= 0.0);
            let per_symbol = e / n as f64;
            Ok(AverageRow {
                n,
                expected_length_per_symbol: per_symbol,
                entropy,
                deficit: entropy - per_symbol,
            })
        })
        .collect()
}
