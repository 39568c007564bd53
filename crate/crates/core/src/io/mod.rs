//! On-disk formats: NPY arrays with a JSON manifest for datasets, JSONL for
//! training results, CSV for aggregates.

mod aggregate;
mod dataset;
mod manifest;
pub mod npy;
mod results;

pub use aggregate::{aggregate, aggregate_records, write_aggregate_csv, AggregateRow, GroupKey, KeyValue};
pub use dataset::{read_dataset, read_manifest, read_npy, write_dataset, write_npy, MANIFEST_FILE, X_FILE, Y_FILE};
pub use manifest::{Activations, Manifest, MemoryEntry, PRECISION, SCHEMA_VERSION};
pub use results::{append_result, read_results, ModelFamily, Optimizer, PosEncoding, ResultRecord, RESULT_SCHEMA_VERSION};

/// Round-trip formatting with 17 significant digits.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}
