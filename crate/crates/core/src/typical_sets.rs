//! Exact typical-set computations: membership, cardinality, and
//! probability mass, with the three cardinality/mass bounds checked on
//! every report.
//!
//! A length-n sequence is typical at level epsilon when
//! `H - eps <= -(1/n) log2 p(x) <= H + eps` (closed interval on both
//! sides). Summaries iterate over type classes, never over individual
//! sequences, so block lengths in the thousands stay exact and cheap.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::classes::ClassSet;
use crate::error::{Error, Result};
use crate::numeric::{log2_biguint, scaled_exp2, KahanSum};
use crate::report::serialize_biguint;
use crate::source_models::{IidSource, SourceModel, Symbol};

/// Exact cardinality and mass of the typical set at one `(n, epsilon)`,
/// with the three bound verdicts.
#[derive(Debug, Clone, Serialize)]
pub struct TypicalReport {
    pub n: usize,
    pub epsilon: f64,
    #[serde(serialize_with = "serialize_biguint")]
    pub cardinality: BigUint,
    pub mass: f64,
    /// `2^(n(H+eps))`; may round to infinity for very large n, the
    /// verdict below is computed in log domain either way.
    pub bound_upper_card: f64,
    /// `(1-eps) * 2^(n(H-eps))`.
    pub bound_lower_card: f64,
    pub mass_ok: bool,
    pub upper_ok: bool,
    pub lower_ok: bool,
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon <= 0.0 || !epsilon.is_finite() {
        return Err(Error::InvalidInput(format!(
            "epsilon must be a positive real, got {epsilon}"
        )));
    }
    Ok(())
}

/// Membership test straight from the definition, in log domain.
pub fn is_typical(source: &SourceModel, seq: &[Symbol], epsilon: f64) -> Result<bool> {
    check_epsilon(epsilon)?;
    let h = source.entropy_rate();
    let lp = source.log2_prob(seq)?.value();
    let rate = -lp / seq.len() as f64;
    Ok(h - epsilon <= rate && rate <= h + epsilon)
}

pub(crate) fn class_is_typical(n: usize, log2_prob: f64, h: f64, epsilon: f64) -> bool {
    let rate = -log2_prob / n as f64;
    h - epsilon <= rate && rate <= h + epsilon
}

/// Exact summary via type-class enumeration.
pub fn typical_summary(source: &IidSource, n: usize, epsilon: f64) -> Result<TypicalReport> {
    let classes = ClassSet::build(source, n)?;
    summary_from_classes(source, &classes, epsilon)
}

pub(crate) fn summary_from_classes(
    source: &IidSource,
    classes: &ClassSet,
    epsilon: f64,
) -> Result<TypicalReport> {
    check_epsilon(epsilon)?;
    let n = classes.n();
    let h = source.entropy_rate();
    let mut cardinality = BigUint::zero();
    let mut mass = KahanSum::new();
    for entry in classes.entries() {
        if class_is_typical(n, entry.log2_prob, h, epsilon) {
            cardinality += &entry.size;
            mass.add(scaled_exp2(&entry.size, entry.log2_prob));
        }
    }
    let mass = mass.value();
    let log2_card = log2_biguint(&cardinality);
    let nf = n as f64;
    let upper_ok = log2_card <= nf * (h + epsilon);
    let lower_ok = if epsilon >= 1.0 {
        true // bound is nonpositive, trivially satisfied
    } else {
        log2_card >= (1.0 - epsilon).log2() + nf * (h - epsilon)
    };
    Ok(TypicalReport {
        n,
        epsilon,
        cardinality,
        mass,
        bound_upper_card: (nf * (h + epsilon)).exp2(),
        bound_lower_card: if epsilon >= 1.0 {
            0.0
        } else {
            (1.0 - epsilon) * (nf * (h - epsilon)).exp2()
        },
        mass_ok: mass > 1.0 - epsilon,
        upper_ok,
        lower_ok,
    })
}

/// `typical_summary` across a grid of block lengths.
pub fn aep_curve(
    source: &IidSource,
    n_values: &[usize],
    epsilon: f64,
) -> Result<Vec<TypicalReport>> {
    n_values
        .iter()
        .map(|&n| typical_summary(source, n, epsilon))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn uniform_source_everything_typical() {
        let half = IidSource::bernoulli(0.5).unwrap();
        let model = SourceModel::Iid(half.clone());
        for eps in [1e-9, 0.1, 2.0] {
            assert!(is_typical(&model, &[0, 1, 1, 0], eps).unwrap());
        }
        let rep = typical_summary(&half, 8, 0.1).unwrap();
        assert_eq!(rep.cardinality, BigUint::from(256u32));
        assert_eq!(rep.mass, 1.0);
        assert!(rep.mass_ok && rep.upper_ok && rep.lower_ok);
    }

    #[test]
    fn empirical_distribution_matches_truth_is_always_typical() {
        // Bernoulli(0.2), n=10, two ones: -(1/n) log2 p equals H up to
        // a few ulps, so it is typical for any epsilon of note.
        let b = IidSource::bernoulli(0.2).unwrap();
        let model = SourceModel::Iid(b);
        let seq = [0, 0, 1, 0, 0, 0, 0, 1, 0, 0];
        for eps in [1e-9, 0.05, 0.4] {
            assert!(is_typical(&model, &seq, eps).unwrap());
        }
    }

    #[test]
    fn all_ones_is_atypical() {
        let b = IidSource::bernoulli(0.2).unwrap();
        let model = SourceModel::Iid(b);
        let seq = [1usize; 10];
        // -(1/10) log2 (0.2^10) = 2.3219 > H + 0.1
        assert!(!is_typical(&model, &seq, 0.1).unwrap());
    }

    #[test]
    fn markov_pointwise_typicality() {
        let flip =
            SourceModel::Markov(crate::source_models::MarkovSource::binary_flip(0.1).unwrap());
        // long same-state run: rate ~ 0.152 bits, far below H - eps
        let run = vec![0usize; 50];
        assert!(!is_typical(&flip, &run, 0.1).unwrap());
        // an actual sample is typical at modest epsilon for large n
        let seq = flip.sample(20_000, 11);
        assert!(is_typical(&flip, &seq, 0.05).unwrap());
    }

    #[test]
    fn epsilon_must_be_positive() {
        let b = IidSource::bernoulli(0.3).unwrap();
        let model = SourceModel::Iid(b.clone());
        assert!(is_typical(&model, &[0, 1], 0.0).is_err());
        assert!(typical_summary(&b, 4, -0.5).is_err());
        assert!(typical_summary(&b, 4, f64::NAN).is_err());
    }

    #[test]
    fn interior_mass_at_moderate_n() {
        let b = IidSource::bernoulli(0.3).unwrap();
        let rep = typical_summary(&b, 20, 0.1).unwrap();
        assert!(rep.mass > 0.0 && rep.mass < 1.0);
        assert!(rep.upper_ok);
        assert!(rep.cardinality > BigUint::one());
    }

    #[test]
    fn smallest_n_with_mass_above_point_nine() {
        // oracle scan, frozen: the first n where mass > 1 - eps is 82
        // (the curve dips back below at 83 and 88-89 before settling).
        let b = IidSource::bernoulli(0.3).unwrap();
        let mut first = None;
        for n in 1..=100 {
            if typical_summary(&b, n, 0.1).unwrap().mass > 0.9 {
                first = Some(n);
                break;
            }
        }
        assert_eq!(first, Some(82));
        assert!(typical_summary(&b, 83, 0.1).unwrap().mass <= 0.9);
    }

    #[test]
    fn curve_mass_settles_above_target_on_grid() {
        let b = IidSource::bernoulli(0.3).unwrap();
        let ns: Vec<usize> = (3..=10).map(|k| 1usize << k).collect();
        let reports = aep_curve(&b, &ns, 0.1).unwrap();
        assert_eq!(reports.len(), ns.len());
        let first_ok = reports.iter().position(|r| r.mass_ok).unwrap();
        assert!(reports[first_ok..].iter().all(|r| r.mass_ok));
        for r in &reports {
            assert!(r.upper_ok, "upper bound must hold at every n (n={})", r.n);
            if r.mass_ok {
                assert!(
                    r.lower_ok,
                    "mass > 1-eps forces the lower bound (n={})",
                    r.n
                );
            }
        }
    }

    #[test]
    fn uniform_curve_is_all_mass_one() {
        let half = IidSource::bernoulli(0.5).unwrap();
        for rep in aep_curve(&half, &[2, 5, 9], 0.2).unwrap() {
            assert_eq!(rep.mass, 1.0);
        }
    }
}
