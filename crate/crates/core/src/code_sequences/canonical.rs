//! The canonical enumeration of `{0,1}*` in length-then-lexicographic
//! order: "", 0, 1, 00, 01, 10, 11, 000, ... The rank-r string is the
//! binary expansion of r+1 with its leading 1 removed, so rank r has
//! length `floor(log2(r+1))` and there are exactly `2^(t+1) - 1` strings
//! of length at most t.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use super::bitstring::BitString;

/// Position of a sequence in a total order over `X^n`; an
/// arbitrary-precision index in `0..K^n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rank(BigUint);

impl Rank {
    pub fn new(value: BigUint) -> Self {
        Rank(value)
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }
}

impl From<u64> for Rank {
    fn from(v: u64) -> Self {
        Rank(BigUint::from(v))
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The rank-th binary string (0-based) in length-then-lex order.
pub fn canonical_bitstring(rank: &Rank) -> BitString {
    let m = rank.as_biguint() + BigUint::one();
    let len = m.bits() - 1;
    let mut out = BitString::with_capacity(len as usize);
    for i in (0..len).rev() {
        out.push(m.bit(i));
    }
    out
}

/// Inverse of `canonical_bitstring`: `2^len - 1 + value(bits)`.
pub fn canonical_rank(bits: &BitString) -> Rank {
    let mut m = BigUint::one();
    for b in bits.iter() {
        m <<= 1u8;
        if b {
            m += BigUint::one();
        }
    }
    Rank(m - BigUint::one())
}

/// Codeword length without materializing the string:
/// `floor(log2(rank+1))`, i.e. the bit length of rank+1 minus one.
pub fn canonical_length(rank: &Rank) -> u64 {
    (rank.as_biguint() + BigUint::one()).bits() - 1
}
