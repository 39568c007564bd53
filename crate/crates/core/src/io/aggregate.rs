//! Min-over-seeds aggregation of result records.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use super::format_f64;
use super::results::{read_results, ResultRecord};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKey {
    Model,
    Memory,
    Alpha,
    M,
    NHeads,
    PosEncoding,
}

impl GroupKey {
    pub const DEFAULT: [GroupKey; 4] = [GroupKey::Model, GroupKey::Memory, GroupKey::Alpha, GroupKey::M];

    pub fn as_str(self) -> &'static str {
        match self {
            GroupKey::Model => "model",
            GroupKey::Memory => "memory",
            GroupKey::Alpha => "alpha",
            GroupKey::M => "m",
            GroupKey::NHeads => "n_heads",
            GroupKey::PosEncoding => "pos_encoding",
        }
    }

    fn extract(self, record: &ResultRecord) -> KeyValue {
        match self {
            GroupKey::Model => KeyValue::Text(record.model.as_str().into()),
            GroupKey::Memory => KeyValue::Text(record.memory.as_str().into()),
            GroupKey::Alpha => KeyValue::Real(record.alpha),
            GroupKey::M => KeyValue::Int(record.m),
            GroupKey::NHeads => record.n_heads.map_or(KeyValue::Missing, KeyValue::Int),
            GroupKey::PosEncoding => record.pos_encoding.map_or(KeyValue::Missing, |p| KeyValue::Text(p.as_str().into())),
        }
    }

    /// Parses a comma-separated key list such as `model,memory,alpha,m`.
    pub fn parse_list(list: &str) -> Result<Vec<GroupKey>> {
        let keys = list.split(',').map(str::trim).map(str::parse).collect::<Result<Vec<GroupKey>>>()?;
        if keys.is_empty() {
            return Err(Error::Domain("empty group key list".into()));
        }
        for (i, k) in keys.iter().enumerate() {
            if keys[..i].contains(k) {
                return Err(Error::Domain(format!("duplicate group key {}", k.as_str())));
            }
        }
        Ok(keys)
    }
}

impl FromStr for GroupKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "model" => GroupKey::Model,
            "memory" => GroupKey::Memory,
            "alpha" => GroupKey::Alpha,
            "m" => GroupKey::M,
            "n_heads" => GroupKey::NHeads,
            "pos_encoding" => GroupKey::PosEncoding,
            other => return Err(Error::Domain(format!("unknown group key {other:?}"))),
        })
    }
}

/// One component of a group key. Missing values sort first.
#[derive(Debug, Clone)]
pub enum KeyValue {
    Missing,
    Int(u64),
    Real(f64),
    Text(String),
}

impl KeyValue {
    fn rank(&self) -> u8 {
        match self {
            KeyValue::Missing => 0,
            KeyValue::Int(_) => 1,
            KeyValue::Real(_) => 2,
            KeyValue::Text(_) => 3,
        }
    }
}

impl Ord for KeyValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (KeyValue::Int(a), KeyValue::Int(b)) => a.cmp(b),
            (KeyValue::Real(a), KeyValue::Real(b)) => a.total_cmp(b),
            (KeyValue::Text(a), KeyValue::Text(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for KeyValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for KeyValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for KeyValue {}

impl fmt::Display for KeyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KeyValue::Missing => Ok(()),
            KeyValue::Int(v) => write!(f, "{v}"),
            KeyValue::Real(v) => f.write_str(&format_f64(*v)),
            KeyValue::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub key: Vec<KeyValue>,
    pub min_train_rmse: f64,
    /// Smallest steps-to-threshold among runs that reached it.
    pub min_steps_to_threshold: Option<u64>,
    /// Number of distinct seeds in the group.
    pub seed_count: usize,
}

#[derive(Default)]
struct Accumulator {
    min_train_rmse: f64,
    min_steps: Option<u64>,
    seeds: BTreeSet<u64>,
}

/// Groups records by `keys` and takes minima over seeds. Rows are sorted by
/// key.
pub fn aggregate_records(records: &[ResultRecord], keys: &[GroupKey]) -> Result<Vec<AggregateRow>> {
    let first = records.first().ok_or(Error::EmptyResults)?;
    if let Some(other) = records.iter().find(|r| r.schema_version != first.schema_version) {
        return Err(Error::Schema(format!(
            "mixed schema versions {:?} and {:?}",
            first.schema_version, other.schema_version
        )));
    }

    let mut groups: BTreeMap<Vec<KeyValue>, Accumulator> = BTreeMap::new();
    for record in records {
        let key = keys.iter().map(|k| k.extract(record)).collect();
        let acc = groups
            .entry(key)
            .or_insert_with(|| Accumulator { min_train_rmse: f64::INFINITY, ..Default::default() });
        acc.min_train_rmse = acc.min_train_rmse.min(record.final_train_rmse);
        if let Some(steps) = record.steps_to_threshold {
            acc.min_steps = Some(acc.min_steps.map_or(steps, |s| s.min(steps)));
        }
        acc.seeds.insert(record.seed);
    }
    Ok(groups
        .into_iter()
        .map(|(key, acc)| AggregateRow {
            key,
            min_train_rmse: acc.min_train_rmse,
            min_steps_to_threshold: acc.min_steps,
            seed_count: acc.seeds.len(),
        })
        .collect())
}

/// Reads and merges several JSONL files, then aggregates.
pub fn aggregate<P: AsRef<Path>>(paths: &[P], keys: &[GroupKey]) -> Result<Vec<AggregateRow>> {
    let mut records = Vec::new();
    for path in paths {
        records.extend(read_results(path.as_ref())?);
    }
    aggregate_records(&records, keys)
}

/// CSV with the key columns followed by the statistics.
pub fn write_aggregate_csv<W: Write>(writer: &mut W, keys: &[GroupKey], rows: &[AggregateRow]) -> Result<()> {
    let mut header: Vec<&str> = keys.iter().map(|k| k.as_str()).collect();
    header.extend(["min_train_rmse", "min_steps_to_threshold", "seed_count"]);
    writeln!(writer, "{}", header.join(","))?;
    for row in rows {
        let mut cells: Vec<String> = row.key.iter().map(ToString::to_string).collect();
        cells.push(format_f64(row.min_train_rmse));
        cells.push(row.min_steps_to_threshold.map(|s| s.to_string()).unwrap_or_default());
        cells.push(row.seed_count.to_string());
        writeln!(writer, "{}", cells.join(","))?;
    }
    Ok(())
}
