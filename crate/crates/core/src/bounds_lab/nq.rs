//! Shannon's n(q): the fewest most-probable sequences of `X^n` whose
//! total probability reaches q, assembled exactly from whole type
//! classes plus a ceiling division into the boundary class.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::classes::ClassSet;
use crate::error::{Error, Result};
use crate::numeric::{ceil_exp2_biguint, log2_biguint, scaled_exp2, KahanSum};
use crate::report::serialize_biguint;
use crate::source_models::IidSource;

#[derive(Debug, Clone, Serialize)]
pub struct NqRow {
    pub n: usize,
    pub q: f64,
    #[serde(serialize_with = "serialize_biguint")]
    pub n_of_q: BigUint,
    /// `log2(n(q)) / n`, the bits-per-symbol specification rate.
    pub rate: f64,
}

pub fn shannon_nq(source: &IidSource, n: usize, q: f64) -> Result<NqRow> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidInput(format!(
            "q must lie strictly inside (0, 1), got {q}"
        )));
    }
    let classes = ClassSet::build(source, n)?;
    let mut cum_mass = KahanSum::new();
    let mut n_of_q: Option<BigUint> = None;
    for entry in classes.entries() {
        let class_mass = scaled_exp2(&entry.size, entry.log2_prob);
        let need = q - cum_mass.value();
        if cum_mass.value() + class_mass >= q {
            // per-sequence probability is constant inside the class, so
            // the partial take is a ceiling division
            let m = ceil_div_by_prob(need, entry.log2_prob)
                .max(BigUint::one())
                .min(entry.size.clone());
            n_of_q = Some(&entry.cum_before + m);
            break;
        }
        cum_mass.add(class_mass);
    }
    // floating accumulation can leave q unreached; then every sequence
    // is needed
    let n_of_q = n_of_q.unwrap_or_else(|| classes.total().clone());
    let rate = log2_biguint(&n_of_q) / n as f64;
    Ok(NqRow { n, q, n_of_q, rate })
}

/// `ceil(need / 2^log2_prob)`, switching to log-domain construction
/// when `2^log2_prob` underflows f64. Compensated accumulation can
/// leave `need <= 0` right at the boundary class; one sequence
/// suffices there.
fn ceil_div_by_prob(need: f64, log2_prob: f64) -> BigUint {
    if need <= 0.0 {
        return BigUint::one();
    }
    let log2_m = need.log2() - log2_prob;
    if log2_m <= 0.0 {
        return BigUint::one();
    }
    if log2_prob > -1000.0 && log2_m < 120.0 {
        let exact = (need / log2_prob.exp2()).ceil();
        return BigUint::from(exact as u128);
    }
    ceil_exp2_biguint(log2_m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source_models::IidSource;

    /// Independent oracle: sort all per-sequence probabilities, then
    /// accumulate to q and count.
    fn brute_force_nq(source: &IidSource, n: usize, q: f64) -> u64 {
        let mut probs = Vec::new();
        super::super::for_each_sequence(source.alphabet().size(), n, |seq| {
            probs.push(source.log2_prob(seq).unwrap().value().exp2());
        });
        probs.sort_by(|a, b| b.total_cmp(a));
        let mut acc = KahanSum::new();
        for (i, p) in probs.iter().enumerate() {
            acc.add(*p);
            if acc.value() >= q {
                return i as u64 + 1;
            }
        }
        probs.len() as u64
    }

    #[test]
    fn uniform_source_takes_ceiling_share() {
        // n(q) = ceil(q 2^n) for the uniform source
        let u = IidSource::bernoulli(0.5).unwrap();
        let row = shannon_nq(&u, 3, 0.5).unwrap();
        assert_eq!(row.n_of_q, BigUint::from(4u32));
        assert!((row.rate - 2.0 / 3.0).abs() < 1e-15);
        let row = shannon_nq(&u, 4, 0.3).unwrap();
        assert_eq!(row.n_of_q, BigUint::from(5u32)); // ceil(4.8)
    }

    #[test]
    fn q_outside_open_interval_rejected() {
        let u = IidSource::bernoulli(0.5).unwrap();
        for q in [0.0, 1.0, -0.2, 1.5, f64::NAN] {
            assert!(shannon_nq(&u, 4, q).is_err());
        }
    }

    #[test]
    fn class_computation_matches_brute_force() {
        use num_traits::ToPrimitive;
        let b = IidSource::bernoulli(0.3).unwrap();
        for q in [0.1, 0.25, 0.5, 0.75, 0.9] {
            let fast = shannon_nq(&b, 16, q).unwrap();
            let brute = brute_force_nq(&b, 16, q);
            assert_eq!(fast.n_of_q.to_u64().unwrap(), brute, "q={q}");
        }
    }

    #[test]
    fn n_of_q_nondecreasing_in_q() {
        let b = IidSource::bernoulli(0.3).unwrap();
        let qs = [0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99];
        let counts: Vec<BigUint> = qs
            .iter()
            .map(|&q| shannon_nq(&b, 24, q).unwrap().n_of_q)
            .collect();
        for w in counts.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn rate_near_entropy_at_moderate_n() {
        let b = IidSource::bernoulli(0.3).unwrap();
        let h = b.entropy_rate();
        let row = shannon_nq(&b, 16, 0.5).unwrap();
        assert!((row.rate - h).abs() < 0.2);
    }
}
