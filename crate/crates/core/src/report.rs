//! Report serialization: CSV rows and serde helpers. Bodies are
//! deterministic byte-for-byte for identical inputs: fixed column
//! orders, shortest-roundtrip float formatting, big integers as decimal
//! strings, no timestamps.

use num_bigint::BigUint;
use serde::Serializer;

use crate::bounds_lab::{AverageRow, CSetReport, NqRow, TrajectoryRecord};
use crate::typical_sets::TypicalReport;

pub fn serialize_biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// One CSV row per record, fixed header.
pub trait CsvRecord {
    fn csv_header() -> &'static str;
    fn csv_row(&self) -> String;
}

/// Header line plus one line per row, `\n`-terminated.
pub fn csv_table<T: CsvRecord>(rows: &[T]) -> String {
    let mut out = String::from(T::csv_header());
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_row());
        out.push('\n');
    }
    out
}

impl CsvRecord for TypicalReport {
    fn csv_header() -> &'static str {
        "n,epsilon,cardinality,mass,bound_upper_card,bound_lower_card,mass_ok,upper_ok,lower_ok"
    }

    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.epsilon,
            self.cardinality,
            self.mass,
            self.bound_upper_card,
            self.bound_lower_card,
            self.mass_ok,
            self.upper_ok,
            self.lower_ok
        )
    }
}

impl CsvRecord for CSetReport {
    fn csv_header() -> &'static str {
        "n,epsilon,threshold,c_mass,bound,holds"
    }

    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n, self.epsilon, self.threshold, self.c_mass, self.bound, self.holds
        )
    }
}

impl CsvRecord for AverageRow {
    fn csv_header() -> &'static str {
        "n,expected_length_per_symbol,entropy,deficit"
    }

    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{}",
            self.n, self.expected_length_per_symbol, self.entropy, self.deficit
        )
    }
}

impl CsvRecord for NqRow {
    fn csv_header() -> &'static str {
        "n,q,n_of_q,rate"
    }

    fn csv_row(&self) -> String {
        format!("{},{},{},{}", self.n, self.q, self.n_of_q, self.rate)
    }
}

/// Trajectory dumps expand to one row per (trial, checkpoint).
pub fn trajectories_csv(records: &[TrajectoryRecord]) -> String {
    let mut out = String::from("trial,seed,n,length_per_symbol\n");
    for (trial, rec) in records.iter().enumerate() {
        for &(n, ratio) in &rec.checkpoints {
            out.push_str(&format!("{},{},{},{}\n", trial, rec.seed, n, ratio));
        }
    }
    out
}
