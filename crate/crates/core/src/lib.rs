//! An exact-arithmetic laboratory for the "entropy is a lower bound for
//! compression" inequalities: typical sets, length-optimal one-to-one
//! codes, Huffman block codes, Elias integer codes, prefix conversion,
//! and the experiments that check the bounds by type-class enumeration
//! and seeded Monte Carlo.
//!
//! Layout follows the moving parts:
//!
//! - [`source_models`]: i.i.d. and stationary Markov sources with exact
//!   log-domain evaluation and deterministic sampling;
//! - [`typical_sets`]: exact cardinality and mass of the typical set;
//! - [`code_sequences`]: the code families and their contracts;
//! - [`bounds_lab`]: the C-set, average-length, pointwise-trajectory,
//!   and n(q) experiments;
//! - [`report`]: deterministic CSV/JSON serialization of the results.
//!
//! Everything exact is exact: cardinalities and codeword ranks are
//! arbitrary-precision integers, Kraft sums are dyadic rationals, and
//! probability masses accumulate in compensated f64 from log-domain
//! class terms.
//!
//! ```
//! use entrolab::{optimal_one_to_one, typical_summary, CodeFamily, IidSource};
//!
//! let source = IidSource::bernoulli(0.3)?;
//!
//! // the most probable 4-sequence gets the empty codeword
//! let code = optimal_one_to_one(source.clone());
//! let bits = code.encode(&[0, 0, 0, 0])?;
//! assert_eq!(bits.len(), 0);
//! assert_eq!(code.decode(4, &bits)?, vec![0, 0, 0, 0]);
//!
//! // exact typical-set accounting at n = 64
//! let report = typical_summary(&source, 64, 0.1)?;
//! assert!(report.upper_ok);
//! assert!(report.mass > 0.0 && report.mass < 1.0);
//! # Ok::<(), entrolab::Error>(())
//! ```

#![forbid(unsafe_code)]

pub mod bounds_lab;
pub mod classes;
pub mod code_sequences;
pub mod error;
pub mod numeric;
pub mod report;
pub mod source_models;
pub mod typical_sets;

pub use bounds_lab::{
    average_curve, c_set_report, expected_code_length, pointwise_trajectories, shannon_nq,
    summarize_trajectories, AverageRow, CSetReport, CheckpointSummary, NqRow, TrajectoryRecord,
};
pub use code_sequences::{
    canonical_bitstring, canonical_length, canonical_rank, decode_elias_delta, decode_elias_gamma,
    elias_delta, elias_delta_len, elias_gamma, elias_gamma_len, fixed_width, huffman_block,
    kraft_sum, optimal_one_to_one, rank_of_sequence, sequence_of_rank, to_prefix, BitString,
    CodeFamily, CodeKind, FixedWidthCode, HuffmanBlockCode, KraftSum, OptimalOneToOne,
    PrefixConverted, Rank,
};
pub use error::{Error, Result};
pub use source_models::{
    stationary_distribution, trial_seed, Alphabet, IidSource, LogProb, MarkovSource, SourceModel,
    SourceSpec, Symbol,
};
pub use typical_sets::{aep_curve, is_typical, typical_summary, TypicalReport};
