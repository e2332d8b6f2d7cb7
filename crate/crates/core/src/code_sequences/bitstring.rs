use std::fmt;

use crate::error::{Error, Result};

/// A finite binary codeword. The empty string is a valid codeword.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(cap: usize) -> Self {
        Self {
            bits: Vec::with_capacity(cap),
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Parse from "0"/"1" characters; empty input gives the empty string.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "bitstring may contain only 0 and 1, found {ch:?}"
                    )))
                }
            }
        }
        Ok(Self { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn extend_from(&mut self, other: &BitString) {
        self.bits.extend_from_slice(&other.bits);
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.bits.get(i).copied()
    }

    /// Panics when out of range.
    pub fn bit(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    pub fn slice(&self, start: usize, end: usize) -> BitString {
        BitString {
            bits: self.bits[start..end].to_vec(),
        }
    }

    /// True when `self` is a prefix of `other` and strictly shorter.
    pub fn is_proper_prefix_of(&self, other: &BitString) -> bool {
        self.len() < other.len() && other.bits[..self.len()] == self.bits[..]
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(\"{self}\")")
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<T: IntoIterator<Item = bool>>(iter: T) -> Self {
        Self {
            bits: iter.into_iter().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse_roundtrip() {
        let s = BitString::parse("010011").unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(s.to_string(), "010011");
        assert_eq!(BitString::parse("").unwrap(), BitString::new());
        assert!(BitString::parse("01x").is_err());
    }

    #[test]
    fn prefix_relation() {
        let a = BitString::parse("01").unwrap();
        let b = BitString::parse("0110").unwrap();
        assert!(a.is_proper_prefix_of(&b));
        assert!(!b.is_proper_prefix_of(&a));
        assert!(!a.is_proper_prefix_of(&a));
        assert!(BitString::new().is_proper_prefix_of(&a));
    }
}
