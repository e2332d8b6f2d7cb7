//! Huffman block prefix codes over `X^B`, concatenated blockwise to form
//! a prefix-code sequence on multiples of B.
//!
//! Construction is deterministic: the two lowest-probability nodes merge
//! first, ties broken by smallest canonical index (block index for
//! leaves, creation order above that), and the earlier of the merged
//! pair takes branch bit 0.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::bitstring::BitString;
use super::families::{CodeFamily, CodeKind};
use super::kraft::{kraft_sum, KraftSum};
use crate::error::{Error, Result};
use crate::numeric::KahanSum;
use crate::source_models::{Alphabet, SourceModel, Symbol};

/// Exact block-distribution enumeration limit: `K^B <= 2^20`.
pub const MAX_BLOCKS: usize = 1 << 20;

enum HuffNode {
    Leaf(usize),
    Internal(usize, usize),
}

pub struct HuffmanBlockCode {
    alphabet: Alphabet,
    block: usize,
    codewords: Vec<BitString>,
    lengths: Vec<u64>,
    nodes: Vec<HuffNode>,
    root: usize,
}

struct HeapItem {
    prob: f64,
    index: usize,
}

impl PartialEq for HeapItem {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapItem {}
impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        // BinaryHeap is a max-heap; reverse for smallest-first pops
        other
            .prob
            .total_cmp(&self.prob)
            .then_with(|| other.index.cmp(&self.index))
    }
}

/// Optimal prefix code on `X^block` for the given source, with block
/// probabilities taken exactly (chain product from the stationary start
/// for Markov sources).
pub fn huffman_block(source: &SourceModel, block: usize) -> Result<HuffmanBlockCode> {
    if block == 0 {
        return Err(Error::InvalidInput("block length must be >= 1".into()));
    }
    let k = source.alphabet().size();
    let m = checked_pow(k, block)
        .filter(|&m| m <= MAX_BLOCKS)
        .ok_or_else(|| {
            Error::Capacity(format!(
            "Huffman needs K^B <= {MAX_BLOCKS} enumerable blocks; K={k}, B={block} exceeds that"
        ))
        })?;

    let mut probs = Vec::with_capacity(m);
    let mut symbols = vec![0usize; block];
    for idx in 0..m {
        block_symbols(idx, k, block, &mut symbols);
        probs.push(source.log2_prob(&symbols)?.value().exp2());
    }

    let mut nodes: Vec<HuffNode> = (0..m).map(HuffNode::Leaf).collect();
    let mut heap: BinaryHeap<HeapItem> = probs
        .iter()
        .enumerate()
        .map(|(index, &prob)| HeapItem { prob, index })
        .collect();
    while heap.len() > 1 {
        let a = heap.pop().unwrap();
        let b = heap.pop().unwrap();
        let index = nodes.len();
        nodes.push(HuffNode::Internal(a.index, b.index));
        heap.push(HeapItem {
            prob: a.prob + b.prob,
            index,
        });
    }
    let root = heap.pop().unwrap().index;

    let mut codewords = vec![BitString::new(); m];
    let mut lengths = vec![0u64; m];
    let mut stack = vec![(root, BitString::new())];
    while let Some((idx, word)) = stack.pop() {
        match nodes[idx] {
            HuffNode::Leaf(leaf) => {
                lengths[leaf] = word.len() as u64;
                codewords[leaf] = word;
            }
            HuffNode::Internal(zero, one) => {
                let mut w0 = word.clone();
                w0.push(false);
                let mut w1 = word;
                w1.push(true);
                stack.push((zero, w0));
                stack.push((one, w1));
            }
        }
    }

    Ok(HuffmanBlockCode {
        alphabet: source.alphabet(),
        block,
        codewords,
        lengths,
        nodes,
        root,
    })
}

impl HuffmanBlockCode {
    pub fn block(&self) -> usize {
        self.block
    }

    pub fn codewords(&self) -> &[BitString] {
        &self.codewords
    }

    pub fn codeword_lengths(&self) -> &[u64] {
        &self.lengths
    }

    pub fn kraft(&self) -> KraftSum {
        kraft_sum(&self.lengths)
    }

    /// Exact expected codeword length of a single block under `source`.
    pub fn expected_block_length(&self, source: &SourceModel) -> Result<f64> {
        if source.alphabet() != self.alphabet {
            return Err(Error::InvalidInput(
                "averaging source alphabet does not match the code's".into(),
            ));
        }
        let k = self.alphabet.size();
        let mut acc = KahanSum::new();
        let mut symbols = vec![0usize; self.block];
        for (idx, &len) in self.lengths.iter().enumerate() {
            block_symbols(idx, k, self.block, &mut symbols);
            acc.add(source.log2_prob(&symbols)?.value().exp2() * len as f64);
        }
        Ok(acc.value())
    }

    fn block_index_of(&self, chunk: &[Symbol]) -> Result<usize> {
        let k = self.alphabet.size();
        let mut idx = 0usize;
        for &s in chunk {
            if !self.alphabet.contains(s) {
                return Err(Error::InvalidInput(format!(
                    "symbol {s} out of range for alphabet of size {k}"
                )));
            }
            idx = idx * k + s;
        }
        Ok(idx)
    }

    fn check_block_multiple(&self, n: usize) -> Result<()> {
        if n == 0 || !n.is_multiple_of(self.block) {
            return Err(Error::InvalidInput(format!(
                "concatenated Huffman code is defined on positive multiples of B = {}, got n = {n}",
                self.block
            )));
        }
        Ok(())
    }
}

impl CodeFamily for HuffmanBlockCode {
    fn kind(&self) -> CodeKind {
        CodeKind::Prefix
    }

    fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    fn encode(&self, seq: &[Symbol]) -> Result<BitString> {
        self.check_block_multiple(seq.len())?;
        let mut out = BitString::new();
        for chunk in seq.chunks(self.block) {
            out.extend_from(&self.codewords[self.block_index_of(chunk)?]);
        }
        Ok(out)
    }

    fn decode(&self, n: usize, bits: &BitString) -> Result<Vec<Symbol>> {
        self.check_block_multiple(n)?;
        let k = self.alphabet.size();
        let mut out = Vec::with_capacity(n);
        let mut pos = 0usize;
        for _ in 0..n / self.block {
            let mut node = self.root;
            loop {
                match self.nodes[node] {
                    HuffNode::Leaf(leaf) => {
                        let mut idx = leaf;
                        let start = out.len();
                        for _ in 0..self.block {
                            out.insert(start, idx % k);
                            idx /= k;
                        }
                        break;
                    }
                    HuffNode::Internal(zero, one) => {
                        let bit = bits.get(pos).ok_or_else(|| {
                            Error::InvalidInput("truncated Huffman codeword".into())
                        })?;
                        pos += 1;
                        node = if bit { one } else { zero };
                    }
                }
            }
        }
        if pos != bits.len() {
            return Err(Error::InvalidInput(format!(
                "{} trailing bits after decoding {n} symbols",
                bits.len() - pos
            )));
        }
        Ok(out)
    }

    fn length(&self, seq: &[Symbol]) -> Result<u64> {
        self.check_block_multiple(seq.len())?;
        let mut total = 0u64;
        for chunk in seq.chunks(self.block) {
            total += self.lengths[self.block_index_of(chunk)?];
        }
        Ok(total)
    }

    fn usable_prefix(&self, n: usize) -> usize {
        n - n % self.block
    }

    fn expected_length_exact(&self, source: &SourceModel, n: usize) -> Result<Option<f64>> {
        self.check_block_multiple(n)?;
        // blocks of a stationary source are identically distributed, so
        // expectation is linear in the block count even under Markov
        // dependence between blocks
        Ok(Some(
            (n / self.block) as f64 * self.expected_block_length(source)?,
        ))
    }
}

fn checked_pow(k: usize, b: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..b {
        acc = acc.checked_mul(k)?;
    }
    Some(acc)
}

/// Big-endian digits of `idx` in base K.
fn block_symbols(idx: usize, k: usize, block: usize, out: &mut [usize]) {
    let mut rest = idx;
    for slot in out.iter_mut().rev().take(block) {
        *slot = rest % k;
        rest /= k;
    }
}
