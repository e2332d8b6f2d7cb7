//! The C-set experiment: among typical sequences, how much probability
//! sits on codewords shorter than `log2 |A| - 3 eps n - 1`? The counting
//! argument forces that mass below `2^(-eps n)` at every n.

use num_traits::Zero;
use serde::Serialize;

use super::{brute_force_size, for_each_sequence};
use crate::classes::ClassSet;
use crate::code_sequences::CodeFamily;
use crate::error::{Error, Result};
use crate::numeric::{log2_biguint, scaled_exp2, KahanSum};
use crate::source_models::IidSource;
use crate::typical_sets::{class_is_typical, summary_from_classes};

#[derive(Debug, Clone, Serialize)]
pub struct CSetReport {
    pub n: usize,
    pub epsilon: f64,
    /// `log2 |A| - 3 eps n - 1`; `-inf` when the typical set is empty.
    pub threshold: f64,
    /// Exact probability of the C-set.
    pub c_mass: f64,
    /// `2^(-eps n)`.
    pub bound: f64,
    pub holds: bool,
}

/// Exact C-set mass for any code family; class-level shortcut when the
/// family supports one, per-sequence enumeration otherwise.
pub fn c_set_report(
    source: &IidSource,
    code: &dyn CodeFamily,
    n: usize,
    epsilon: f64,
) -> Result<CSetReport> {
    if code.alphabet() != source.alphabet() {
        return Err(Error::InvalidInput(
            "code family alphabet does not match the source".into(),
        ));
    }
    let classes = ClassSet::build(source, n)?;
    let summary = summary_from_classes(source, &classes, epsilon)?;
    let h = source.entropy_rate();
    let nf = n as f64;

    let threshold = log2_biguint(&summary.cardinality) - 3.0 * epsilon * nf - 1.0;
    let bound = (-epsilon * nf).exp2();

    let c_mass = if summary.cardinality.is_zero() || threshold < 0.0 {
        0.0
    } else {
        let max_len = threshold.floor() as u64;
        match class_shortcut_mass(code, &classes, h, epsilon, max_len) {
            Some(mass) => mass,
            None => brute_force_mass(source, code, n, h, epsilon, max_len)?,
        }
    };

    Ok(CSetReport {
        n,
        epsilon,
        threshold,
        c_mass,
        bound,
        holds: c_mass <= bound,
    })
}

fn class_shortcut_mass(
    code: &dyn CodeFamily,
    classes: &ClassSet,
    h: f64,
    epsilon: f64,
    max_len: u64,
) -> Option<f64> {
    let n = classes.n();
    let mut acc = KahanSum::new();
    for entry in classes.entries() {
        if !class_is_typical(n, entry.log2_prob, h, epsilon) {
            continue;
        }
        let count = code.class_count_length_at_most(n, &entry.counts, max_len)?;
        if !count.is_zero() {
            acc.add(scaled_exp2(&count, entry.log2_prob));
        }
    }
    Some(acc.value())
}

fn brute_force_mass(
    source: &IidSource,
    code: &dyn CodeFamily,
    n: usize,
    h: f64,
    epsilon: f64,
    max_len: u64,
) -> Result<f64> {
    brute_force_size(source.alphabet().size(), n)?;
    let mut acc = KahanSum::new();
    let mut failure: Option<Error> = None;
    for_each_sequence(source.alphabet().size(), n, |seq| {
        if failure.is_some() {
            return;
        }
        let lp = source.log2_prob(seq).unwrap().value();
        if !class_is_typical(n, lp, h, epsilon) {
            return;
        }
        match code.length(seq) {
            Ok(len) if len <= max_len => acc.add(lp.exp2()),
            Ok(_) => {}
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(acc.value()),
    }
}
