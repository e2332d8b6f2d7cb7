//! Elias gamma and delta codes for positive integers.
//!
//! gamma(N) writes `L = floor(log2 N)` zeros followed by the L+1 binary
//! digits of N; delta(N) writes gamma(L+1) followed by the L low bits of
//! N. Both are prefix-free on `N >= 1`; neither handles 0.

use super::bitstring::BitString;
use crate::error::{Error, Result};

fn check_positive(value: u64) -> Result<u32> {
    if value == 0 {
        return Err(Error::InvalidInput("Elias codes require N >= 1".into()));
    }
    Ok(63 - value.leading_zeros())
}

pub fn elias_gamma(value: u64) -> Result<BitString> {
    let l = check_positive(value)?;
    let mut out = BitString::with_capacity(2 * l as usize + 1);
    for _ in 0..l {
        out.push(false);
    }
    for i in (0..=l).rev() {
        out.push((value >> i) & 1 == 1);
    }
    Ok(out)
}

pub fn elias_gamma_len(value: u64) -> u64 {
    debug_assert!(value >= 1);
    let l = (63 - value.leading_zeros()) as u64;
    2 * l + 1
}

/// Decode one gamma codeword starting at `pos`; returns the value and the
/// position just past the codeword.
pub fn decode_elias_gamma(bits: &BitString, pos: usize) -> Result<(u64, usize)> {
    let mut l = 0usize;
    while bits.get(pos + l) == Some(false) {
        l += 1;
    }
    if bits.get(pos + l).is_none() {
        return Err(Error::InvalidInput("truncated Elias gamma codeword".into()));
    }
    if l >= 64 {
        return Err(Error::InvalidInput(
            "Elias gamma value exceeds 64 bits".into(),
        ));
    }
    let mut value: u64 = 0;
    for i in 0..=l {
        match bits.get(pos + l + i) {
            Some(b) => value = (value << 1) | b as u64,
            None => return Err(Error::InvalidInput("truncated Elias gamma codeword".into())),
        }
    }
    Ok((value, pos + 2 * l + 1))
}

pub fn elias_delta(value: u64) -> Result<BitString> {
    let l = check_positive(value)?;
    let mut out = elias_gamma(l as u64 + 1)?;
    for i in (0..l).rev() {
        out.push((value >> i) & 1 == 1);
    }
    Ok(out)
}

/// `floor(log2 N) + 2 floor(log2(floor(log2 N) + 1)) + 1`.
pub fn elias_delta_len(value: u64) -> u64 {
    debug_assert!(value >= 1);
    let l = (63 - value.leading_zeros()) as u64;
    l + elias_gamma_len(l + 1)
}

/// Decode one delta codeword starting at `pos`.
pub fn decode_elias_delta(bits: &BitString, pos: usize) -> Result<(u64, usize)> {
    let (header, next) = decode_elias_gamma(bits, pos)?;
    let l = header - 1;
    if l >= 64 {
        return Err(Error::InvalidInput(
            "Elias delta value exceeds 64 bits".into(),
        ));
    }
    let mut value: u64 = 1;
    for i in 0..l {
        match bits.get(next + i as usize) {
            Some(b) => value = (value << 1) | b as u64,
            None => return Err(Error::InvalidInput("truncated Elias delta codeword".into())),
        }
    }
    Ok((value, next + l as usize))
}
