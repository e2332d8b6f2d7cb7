//! Enumerative ranking of sequences in the decreasing-probability order
//! of `X^n`, computed combinatorially: the rank is the total size of all
//! strictly earlier type classes plus the sequence's multiset-lex index
//! within its own class. Cost is O(n K) big-integer scalar updates;
//! `X^n` is never materialized.

use num_bigint::BigUint;
use num_traits::Zero;

use super::canonical::Rank;
use crate::classes::{count_vector, ClassSet};
use crate::error::{Error, Result};
use crate::source_models::{IidSource, Symbol};

/// Rank of `seq` in the code order of its source.
pub fn rank_of_sequence(source: &IidSource, seq: &[Symbol]) -> Result<Rank> {
    let classes = ClassSet::build(source, seq.len())?;
    rank_in_class_set(&classes, seq)
}

/// Inverse of `rank_of_sequence`.
pub fn sequence_of_rank(source: &IidSource, n: usize, rank: &Rank) -> Result<Vec<Symbol>> {
    let classes = ClassSet::build(source, n)?;
    unrank_in_class_set(&classes, rank)
}

pub(crate) fn rank_in_class_set(classes: &ClassSet, seq: &[Symbol]) -> Result<Rank> {
    if seq.len() != classes.n() {
        return Err(Error::InvalidInput(format!(
            "sequence length {} does not match class set for n = {}",
            seq.len(),
            classes.n()
        )));
    }
    let k = classes.alphabet().size();
    let counts = count_vector(k, seq)?;
    let entry = classes
        .entry_for_counts(&counts)
        .expect("every count vector has a class");
    let index = multiset_rank(&counts, seq, &entry.size);
    Ok(Rank::new(&entry.cum_before + index))
}

pub(crate) fn unrank_in_class_set(classes: &ClassSet, rank: &Rank) -> Result<Vec<Symbol>> {
    let entry = classes.entry_for_rank(rank.as_biguint())?;
    let index = rank.as_biguint() - &entry.cum_before;
    Ok(multiset_unrank(
        &entry.counts,
        classes.n(),
        &entry.size,
        index,
    ))
}

/// Lexicographic index of `seq` among the permutations of its own
/// multiset. `size` is the multinomial count of that multiset.
fn multiset_rank(counts: &[u32], seq: &[Symbol], size: &BigUint) -> BigUint {
    let mut rem = counts.to_vec();
    let mut remaining = seq.len() as u32;
    let mut arrangements = size.clone();
    let mut index = BigUint::zero();
    for &s in seq {
        for &c in rem.iter().take(s) {
            if c > 0 {
                // sequences that continue with a smaller symbol instead
                index += &arrangements * c / remaining;
            }
        }
        arrangements = arrangements * rem[s] / remaining;
        rem[s] -= 1;
        remaining -= 1;
    }
    index
}

fn multiset_unrank(counts: &[u32], n: usize, size: &BigUint, mut index: BigUint) -> Vec<Symbol> {
    let mut rem = counts.to_vec();
    let mut remaining = n as u32;
    let mut arrangements = size.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        for (s, count) in rem.iter_mut().enumerate() {
            if *count == 0 {
                continue;
            }
            let with_s = &arrangements * *count / remaining;
            if index < with_s {
                out.push(s);
                arrangements = with_s;
                *count -= 1;
                remaining -= 1;
                break;
            }
            index -= with_s;
        }
    }
    out
}
