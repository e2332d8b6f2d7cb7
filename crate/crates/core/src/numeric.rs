//! Shared numeric helpers: log-domain big-integer conversions and
//! compensated summation for probability masses.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Base-2 logarithm of an arbitrary-precision integer.
///
/// Returns `-inf` for zero. Accurate to the top 64 bits of the argument,
/// which is well below 1 ulp of the result for any practical size.
pub fn log2_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().unwrap() as f64).log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap();
    (top as f64).log2() + shift as f64
}

/// `count * 2^log2_scale` as f64. Multiplies directly while `count` fits
/// a 53-bit mantissa and the scale stays normal, so dyadic cases come
/// out exact; otherwise evaluates in log domain.
pub fn scaled_exp2(count: &BigUint, log2_scale: f64) -> f64 {
    if count.is_zero() || log2_scale == f64::NEG_INFINITY {
        return 0.0;
    }
    if count.bits() <= 53 && log2_scale > -900.0 {
        count.to_u64().unwrap() as f64 * log2_scale.exp2()
    } else {
        (log2_biguint(count) + log2_scale).exp2()
    }
}

/// Neumaier-compensated accumulator for sums of many small probability terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: f64) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.comp += (self.sum - t) + term;
        } else {
            self.comp += (term - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `sum_{j=1}^{m} floor(log2 j)`, the total bit-length of the first `m`
/// nonempty canonical strings. Closed form: with `L = floor(log2 m)`,
/// the sum equals `L*(m+1) + 2 - 2^(L+1)`.
pub fn floor_log2_prefix_sum(m: &BigUint) -> BigUint {
    if m.is_zero() {
        return BigUint::zero();
    }
    let l = m.bits() - 1;
    let plus = BigUint::from(l) * (m + BigUint::one()) + BigUint::from(2u32);
    let minus = BigUint::one() << (l + 1);
    plus - minus
}

/// Smallest integer `>= 2^x` for `x >= 0`, built from the 53-bit mantissa
/// of `2^frac(x)`. Used where `2^x` overflows or underflows `f64`.
pub fn ceil_exp2_biguint(x: f64) -> BigUint {
    assert!(x.is_finite() && x >= 0.0);
    let i = x.floor();
    let frac = x - i;
    let i = i as u64;
    // mant/2^52 >= 2^frac, so (mant << i) >> 52 >= floor(2^x); add the
    // partial-word carry to make the result a true ceiling.
    let mant = ((frac.exp2()) * (1u64 << 52) as f64).ceil() as u64;
    let scaled = BigUint::from(mant) << i;
    let floor = &scaled >> 52u64;
    if (&floor << 52u64) == scaled {
        floor
    } else {
        floor + BigUint::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log2_of_powers_is_exact() {
        for k in [0u64, 1, 7, 63, 64, 150, 4096] {
            let x = BigUint::one() << k;
            assert_eq!(log2_biguint(&x), k as f64);
        }
        assert_eq!(log2_biguint(&BigUint::zero()), f64::NEG_INFINITY);
    }

    #[test]
    fn floor_log2_prefix_sum_small_values() {
        // direct sums: m=1 -> 0, m=3 -> 0+1+1, m=7 -> 10, m=8 -> 13
        let cases = [(0u32, 0u32), (1, 0), (3, 2), (4, 4), (7, 10), (8, 13)];
        for (m, want) in cases {
            assert_eq!(
                floor_log2_prefix_sum(&BigUint::from(m)),
                BigUint::from(want),
                "m={m}"
            );
        }
        // brute force up to 2^12
        let mut acc = 0u64;
        for j in 1u64..=(1 << 12) {
            acc += 63 - j.leading_zeros() as u64;
            assert_eq!(floor_log2_prefix_sum(&BigUint::from(j)), BigUint::from(acc));
        }
    }

    #[test]
    fn ceil_exp2_matches_f64_in_range() {
        for &x in &[0.0, 0.5, 1.0, 10.3, 52.9, 63.99] {
            let got = ceil_exp2_biguint(x).to_u128().unwrap();
            let want = x.exp2().ceil() as u128;
            let diff = got.abs_diff(want);
            assert!(diff <= 1, "x={x}: got {got}, want {want}");
            assert!((got as f64).log2() >= x - 1e-12);
        }
    }

    #[test]
    fn kahan_sums_tiny_terms() {
        let mut s = KahanSum::new();
        for _ in 0..1_000_000 {
            s.add(1e-16);
        }
        s.add(1.0);
        assert!((s.value() - (1.0 + 1e-10)).abs() < 1e-18);
    }
}
