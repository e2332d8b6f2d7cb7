//! Code families on `X^n`: the length-optimal one-to-one code via
//! enumerative ranking, Huffman block prefix codes, Elias integer codes,
//! the one-to-one to prefix conversion, and the Kraft checker.

mod bitstring;
mod canonical;
mod elias;
mod families;
mod huffman;
mod kraft;
mod ranking;

pub use bitstring::BitString;
pub use canonical::{canonical_bitstring, canonical_length, canonical_rank, Rank};
pub use elias::{
    decode_elias_delta, decode_elias_gamma, elias_delta, elias_delta_len, elias_gamma,
    elias_gamma_len,
};
pub use families::{
    fixed_width, optimal_one_to_one, to_prefix, CodeFamily, CodeKind, FixedWidthCode,
    OptimalOneToOne, PrefixConverted,
};
pub use huffman::{huffman_block, HuffmanBlockCode};
pub use kraft::{kraft_sum, KraftSum};
pub use ranking::{rank_of_sequence, sequence_of_rank};
