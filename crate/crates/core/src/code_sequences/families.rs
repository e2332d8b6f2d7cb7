//! The code-family contract and its concrete members.
//!
//! A family maps `X^n -> {0,1}*` for every n at once; the restriction to
//! each fixed n is injective (one-to-one kind) or prefix-free (prefix
//! kind), `decode . encode` is the identity, and `length` always equals
//! the encoded length.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::bitstring::BitString;
use super::canonical::{canonical_bitstring, canonical_length, canonical_rank, Rank};
use super::elias::{decode_elias_delta, elias_delta, elias_delta_len};
use super::ranking::{rank_in_class_set, unrank_in_class_set};
use crate::classes::{multinomial, ClassSet};
use crate::error::{Error, Result};
use crate::numeric::{floor_log2_prefix_sum, KahanSum};
use crate::source_models::{Alphabet, IidSource, SourceModel, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeKind {
    OneToOne,
    Prefix,
}

pub trait CodeFamily: Send + Sync {
    fn kind(&self) -> CodeKind;

    fn alphabet(&self) -> Alphabet;

    fn encode(&self, seq: &[Symbol]) -> Result<BitString>;

    /// Recover the sequence from its codeword; the block length n is
    /// side information, as it is for any one-to-one code sequence.
    fn decode(&self, n: usize, bits: &BitString) -> Result<Vec<Symbol>>;

    /// `||encode(seq)||` without materializing the codeword.
    fn length(&self, seq: &[Symbol]) -> Result<u64>;

    /// Longest prefix of n this family can encode (block codes round
    /// down to a whole number of blocks).
    fn usable_prefix(&self, n: usize) -> usize {
        n
    }

    /// Exact number of sequences in the type class `counts` of `X^n`
    /// whose codeword length is at most `max_len`, when the family can
    /// answer without enumeration.
    fn class_count_length_at_most(
        &self,
        n: usize,
        counts: &[u32],
        max_len: u64,
    ) -> Option<BigUint> {
        let _ = (n, counts, max_len);
        None
    }

    /// Exact `E[||encode||]` over `source` at block length n, when a
    /// closed form is available.
    fn expected_length_exact(&self, source: &SourceModel, n: usize) -> Result<Option<f64>> {
        let _ = (source, n);
        Ok(None)
    }
}

fn check_alphabet(family: &dyn CodeFamily, seq: &[Symbol]) -> Result<()> {
    if seq.is_empty() {
        return Err(Error::InvalidInput("sequence must be nonempty".into()));
    }
    let alphabet = family.alphabet();
    for &s in seq {
        if !alphabet.contains(s) {
            return Err(Error::InvalidInput(format!(
                "symbol {s} out of range for alphabet of size {}",
                alphabet.size()
            )));
        }
    }
    Ok(())
}

/// The length-optimal one-to-one code: the r-th most probable sequence
/// of `X^n` gets the r-th canonical binary string, so its length is
/// `floor(log2(rank+1))`.
pub struct OptimalOneToOne {
    source: IidSource,
    tables: Mutex<HashMap<usize, Arc<ClassSet>>>,
}

pub fn optimal_one_to_one(source: IidSource) -> OptimalOneToOne {
    OptimalOneToOne {
        source,
        tables: Mutex::new(HashMap::new()),
    }
}

impl OptimalOneToOne {
    pub fn source(&self) -> &IidSource {
        &self.source
    }

    /// Class table for block length n, built once and shared.
    pub fn class_set(&self, n: usize) -> Result<Arc<ClassSet>> {
        let mut tables = self.tables.lock().unwrap();
        if let Some(cs) = tables.get(&n) {
            return Ok(Arc::clone(cs));
        }
        let cs = Arc::new(ClassSet::build(&self.source, n)?);
        tables.insert(n, Arc::clone(&cs));
        Ok(cs)
    }

    pub fn rank(&self, seq: &[Symbol]) -> Result<Rank> {
        check_alphabet(self, seq)?;
        let classes = self.class_set(seq.len())?;
        rank_in_class_set(&classes, seq)
    }
}

impl CodeFamily for OptimalOneToOne {
    fn kind(&self) -> CodeKind {
        CodeKind::OneToOne
    }

    fn alphabet(&self) -> Alphabet {
        self.source.alphabet()
    }

    fn encode(&self, seq: &[Symbol]) -> Result<BitString> {
        Ok(canonical_bitstring(&self.rank(seq)?))
    }

    fn decode(&self, n: usize, bits: &BitString) -> Result<Vec<Symbol>> {
        let classes = self.class_set(n)?;
        unrank_in_class_set(&classes, &canonical_rank(bits))
    }

    fn length(&self, seq: &[Symbol]) -> Result<u64> {
        Ok(canonical_length(&self.rank(seq)?))
    }

    fn class_count_length_at_most(
        &self,
        n: usize,
        counts: &[u32],
        max_len: u64,
    ) -> Option<BigUint> {
        let classes = self.class_set(n).ok()?;
        let entry = classes.entry_for_counts(counts)?;
        // ranks in this class are consecutive; length <= max_len means
        // rank <= 2^(max_len+1) - 2
        let limit = (BigUint::one() << (max_len + 1)) - BigUint::from(2u8);
        let first = entry.first_rank();
        if *first > limit {
            return Some(BigUint::zero());
        }
        let last = entry.last_rank().min(limit);
        Some(last - first + BigUint::one())
    }

    fn expected_length_exact(&self, source: &SourceModel, n: usize) -> Result<Option<f64>> {
        let Some(iid) = source.as_iid() else {
            return Ok(None);
        };
        if iid.alphabet() != self.alphabet() {
            return Err(Error::InvalidInput(
                "averaging source alphabet does not match the code's".into(),
            ));
        }
        // within a class ranks are consecutive, so the total codeword
        // length over ranks a..=b is a closed form in O(log b) steps
        let classes = self.class_set(n)?;
        let mut acc = KahanSum::new();
        for entry in classes.entries() {
            let first = entry.first_rank();
            let past_last = first + &entry.size;
            let total_bits = floor_log2_prefix_sum(&past_last) - floor_log2_prefix_sum(first);
            if total_bits.is_zero() {
                continue;
            }
            let lp = iid.log2_prob_of_counts(&entry.counts);
            acc.add(crate::numeric::scaled_exp2(&total_bits, lp));
        }
        Ok(Some(acc.value()))
    }
}

/// Fixed-width block code: every symbol in `ceil(log2 K)` bits. For a
/// binary alphabet this is the identity map on bits.
pub struct FixedWidthCode {
    alphabet: Alphabet,
    width: u32,
}

pub fn fixed_width(alphabet: Alphabet) -> FixedWidthCode {
    let width = usize::BITS - (alphabet.size() - 1).leading_zeros();
    FixedWidthCode { alphabet, width }
}

impl FixedWidthCode {
    pub fn width(&self) -> u32 {
        self.width
    }
}

impl CodeFamily for FixedWidthCode {
    fn kind(&self) -> CodeKind {
        CodeKind::Prefix
    }

    fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    fn encode(&self, seq: &[Symbol]) -> Result<BitString> {
        check_alphabet(self, seq)?;
        let mut out = BitString::with_capacity(seq.len() * self.width as usize);
        for &s in seq {
            for i in (0..self.width).rev() {
                out.push((s >> i) & 1 == 1);
            }
        }
        Ok(out)
    }

    fn decode(&self, n: usize, bits: &BitString) -> Result<Vec<Symbol>> {
        if bits.len() != n * self.width as usize {
            return Err(Error::InvalidInput(format!(
                "expected {} bits for n = {n}, got {}",
                n * self.width as usize,
                bits.len()
            )));
        }
        let mut out = Vec::with_capacity(n);
        for c in 0..n {
            let mut s: usize = 0;
            for i in 0..self.width as usize {
                s = (s << 1) | bits.bit(c * self.width as usize + i) as usize;
            }
            if !self.alphabet.contains(s) {
                return Err(Error::InvalidInput(format!(
                    "decoded symbol {s} out of range"
                )));
            }
            out.push(s);
        }
        Ok(out)
    }

    fn length(&self, seq: &[Symbol]) -> Result<u64> {
        check_alphabet(self, seq)?;
        Ok(seq.len() as u64 * self.width as u64)
    }

    fn class_count_length_at_most(
        &self,
        n: usize,
        counts: &[u32],
        max_len: u64,
    ) -> Option<BigUint> {
        if n as u64 * self.width as u64 <= max_len {
            Some(multinomial(counts))
        } else {
            Some(BigUint::zero())
        }
    }

    fn expected_length_exact(&self, _source: &SourceModel, n: usize) -> Result<Option<f64>> {
        Ok(Some(n as f64 * self.width as f64))
    }
}

/// One-to-one to prefix conversion: prepend the Elias delta code of the
/// inner codeword length plus one (the shift admits the empty codeword).
/// The header costs O(log l) bits, so per-symbol performance is
/// asymptotically unchanged.
pub struct PrefixConverted {
    inner: Arc<dyn CodeFamily>,
}

pub fn to_prefix(inner: Arc<dyn CodeFamily>) -> PrefixConverted {
    PrefixConverted { inner }
}

impl PrefixConverted {
    pub fn inner(&self) -> &dyn CodeFamily {
        self.inner.as_ref()
    }
}

impl CodeFamily for PrefixConverted {
    fn kind(&self) -> CodeKind {
        CodeKind::Prefix
    }

    fn alphabet(&self) -> Alphabet {
        self.inner.alphabet()
    }

    fn encode(&self, seq: &[Symbol]) -> Result<BitString> {
        let payload = self.inner.encode(seq)?;
        let mut out = elias_delta(payload.len() as u64 + 1)?;
        out.extend_from(&payload);
        Ok(out)
    }

    fn decode(&self, n: usize, bits: &BitString) -> Result<Vec<Symbol>> {
        let (header, start) = decode_elias_delta(bits, 0)?;
        let payload_len = (header - 1) as usize;
        if bits.len() != start + payload_len {
            return Err(Error::InvalidInput(format!(
                "codeword length {} does not match delta header payload of {payload_len}",
                bits.len()
            )));
        }
        self.inner.decode(n, &bits.slice(start, bits.len()))
    }

    fn length(&self, seq: &[Symbol]) -> Result<u64> {
        let inner_len = self.inner.length(seq)?;
        Ok(inner_len + elias_delta_len(inner_len + 1))
    }

    fn usable_prefix(&self, n: usize) -> usize {
        self.inner.usable_prefix(n)
    }
}
