//! Exact Kraft sums as dyadic rationals.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::numeric::log2_biguint;

/// `sum 2^(-l_i)` held exactly as `numerator / 2^log2_denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KraftSum {
    numerator: BigUint,
    log2_denominator: u64,
}

/// Exact dyadic Kraft sum of a multiset of codeword lengths.
pub fn kraft_sum(lengths: &[u64]) -> KraftSum {
    let max_len = lengths.iter().copied().max().unwrap_or(0);
    let mut numerator = BigUint::zero();
    for &l in lengths {
        numerator += BigUint::from(1u8) << (max_len - l);
    }
    KraftSum {
        numerator,
        log2_denominator: max_len,
    }
}

impl KraftSum {
    /// Exact verdict `sum <= 1`.
    pub fn holds(&self) -> bool {
        self.numerator <= (BigUint::from(1u8) << self.log2_denominator)
    }

    /// Exact verdict `sum == 1` (a complete prefix code).
    pub fn is_exactly_one(&self) -> bool {
        self.numerator == (BigUint::from(1u8) << self.log2_denominator)
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn log2_denominator(&self) -> u64 {
        self.log2_denominator
    }

    /// Rounded value for reporting.
    pub fn as_f64(&self) -> f64 {
        if self.numerator.is_zero() {
            return 0.0;
        }
        (log2_biguint(&self.numerator) - self.log2_denominator as f64).exp2()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_codes_sum_to_exactly_one() {
        let s = kraft_sum(&[1, 1]);
        assert!(s.is_exactly_one() && s.holds());
        assert_eq!(s.as_f64(), 1.0);

        let s = kraft_sum(&[1, 2, 3, 3]);
        assert!(s.is_exactly_one());
    }

    #[test]
    fn empty_word_with_company_violates_kraft() {
        let s = kraft_sum(&[0, 5]);
        assert!(!s.holds());
        assert!(s.as_f64() > 1.0);
        // a lone empty word is exactly 1
        assert!(kraft_sum(&[0]).is_exactly_one());
    }

    #[test]
    fn strict_inequality_cases() {
        let s = kraft_sum(&[2, 2, 2]);
        assert!(s.holds() && !s.is_exactly_one());
        assert_eq!(s.as_f64(), 0.75);
        assert!(kraft_sum(&[]).holds());
    }
}
