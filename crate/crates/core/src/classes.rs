//! Type classes of an i.i.d. source: sequences sharing a symbol-count
//! vector share one probability, so exact cardinalities and masses over
//! `X^n` reduce to sums over count vectors.
//!
//! Classes are kept in *code order*: per-sequence probability descending,
//! ties broken so that the class holding the lexicographically smallest
//! sequence comes first (equivalently, count vectors in descending
//! lexicographic order). This is the total order behind the optimal
//! one-to-one code, `n(q)`, and the C-set experiment.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::source_models::{Alphabet, IidSource, Symbol};

/// Hard limit on the number of type classes enumerated exactly.
pub const MAX_CLASSES: u64 = 10_000_000;

/// One type class: its count vector, per-sequence log2 probability,
/// exact size, and the total size of all strictly earlier classes.
#[derive(Debug, Clone)]
pub struct ClassEntry {
    pub counts: Vec<u32>,
    pub log2_prob: f64,
    pub size: BigUint,
    pub cum_before: BigUint,
}

impl ClassEntry {
    /// Rank range `[first, last]` occupied by this class.
    pub fn first_rank(&self) -> &BigUint {
        &self.cum_before
    }

    pub fn last_rank(&self) -> BigUint {
        &self.cum_before + &self.size - BigUint::one()
    }
}

/// All type classes of `X^n` for one i.i.d. source, in code order.
#[derive(Debug, Clone)]
pub struct ClassSet {
    n: usize,
    alphabet: Alphabet,
    entries: Vec<ClassEntry>,
    index_of: HashMap<Vec<u32>, usize>,
    total: BigUint,
}

impl ClassSet {
    pub fn build(source: &IidSource, n: usize) -> Result<ClassSet> {
        if n == 0 {
            return Err(Error::InvalidInput("class set needs n >= 1".into()));
        }
        let k = source.alphabet().size();
        match class_count(n, k) {
            Some(c) if c <= MAX_CLASSES => {}
            _ => {
                return Err(Error::Capacity(format!(
                    "type-class enumeration needs at most {MAX_CLASSES} classes; \
                     n={n}, K={k} exceeds that"
                )));
            }
        }

        let mut entries = Vec::new();
        let mut counts = vec![0u32; k];
        enumerate_classes(
            source.log2_probs(),
            0,
            n as u32,
            BigUint::one(),
            0.0,
            &mut counts,
            &mut entries,
        );

        // code order: probability descending, then descending-lex counts
        // (the class containing the smallest sequence first)
        entries.sort_by(|a, b| {
            b.log2_prob
                .partial_cmp(&a.log2_prob)
                .expect("log2 probabilities are never NaN")
                .then_with(|| b.counts.cmp(&a.counts))
        });

        let mut cum = BigUint::zero();
        let mut index_of = HashMap::with_capacity(entries.len());
        for (i, e) in entries.iter_mut().enumerate() {
            e.cum_before = cum.clone();
            cum += &e.size;
            index_of.insert(e.counts.clone(), i);
        }

        Ok(ClassSet {
            n,
            alphabet: source.alphabet(),
            entries,
            index_of,
            total: cum,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// Classes in code order.
    pub fn entries(&self) -> &[ClassEntry] {
        &self.entries
    }

    /// `K^n`, the number of sequences.
    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn entry_for_counts(&self, counts: &[u32]) -> Option<&ClassEntry> {
        self.index_of.get(counts).map(|&i| &self.entries[i])
    }

    /// The class whose rank range contains `rank`.
    pub fn entry_for_rank(&self, rank: &BigUint) -> Result<&ClassEntry> {
        if *rank >= self.total {
            return Err(Error::InvalidInput(format!(
                "rank {rank} out of range for K^n = {}",
                self.total
            )));
        }
        // last entry with cum_before <= rank
        let mut lo = 0usize;
        let mut hi = self.entries.len();
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.entries[mid].cum_before <= *rank {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(&self.entries[lo])
    }
}

/// Number of count vectors `C(n+K-1, K-1)`, or `None` on u64 overflow.
pub fn class_count(n: usize, k: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for i in 1..k as u64 {
        acc = acc.checked_mul(n as u64 + i)?;
        acc /= i;
    }
    Some(acc)
}

/// Depth-first composition enumeration with a running multinomial and a
/// running per-sequence log probability, so each class costs O(1)
/// big-integer work.
fn enumerate_classes(
    log2_probs: &[f64],
    level: usize,
    remaining: u32,
    size: BigUint,
    log2_prob: f64,
    counts: &mut Vec<u32>,
    out: &mut Vec<ClassEntry>,
) {
    let k = log2_probs.len();
    if level == k - 1 {
        counts[level] = remaining;
        let lp = log2_prob + weighted_log(remaining, log2_probs[level]);
        out.push(ClassEntry {
            counts: counts.clone(),
            log2_prob: lp,
            size,
            cum_before: BigUint::zero(),
        });
        return;
    }
    let mut binom = BigUint::one();
    for c in 0..=remaining {
        counts[level] = c;
        enumerate_classes(
            log2_probs,
            level + 1,
            remaining - c,
            &size * &binom,
            log2_prob + weighted_log(c, log2_probs[level]),
            counts,
            out,
        );
        if c < remaining {
            // C(remaining, c+1) from C(remaining, c)
            binom = binom * (remaining - c) / (c + 1);
        }
    }
}

/// `c * lp` with the convention `0 * (-inf) = 0`.
fn weighted_log(c: u32, lp: f64) -> f64 {
    if c == 0 {
        0.0
    } else {
        c as f64 * lp
    }
}

/// Symbol-count vector of a sequence over `0..K-1`.
pub fn count_vector(k: usize, seq: &[Symbol]) -> Result<Vec<u32>> {
    let mut counts = vec![0u32; k];
    for &s in seq {
        if s >= k {
            return Err(Error::InvalidInput(format!(
                "symbol {s} out of range for alphabet of size {k}"
            )));
        }
        counts[s] += 1;
    }
    Ok(counts)
}

/// Exact multinomial coefficient `(sum counts)! / prod counts_i!`.
pub fn multinomial(counts: &[u32]) -> BigUint {
    let mut result = BigUint::one();
    let mut remaining: u32 = counts.iter().sum();
    for &c in counts {
        result *= binomial(remaining, c);
        remaining -= c;
    }
    result
}

/// Exact binomial coefficient.
pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
