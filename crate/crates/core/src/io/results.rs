//! Training results as JSON lines, one record per run.

use std::fs::{File, OpenOptions};
use std::io::{BufReader, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::memory::MemoryKind;

pub const RESULT_SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelFamily {
    Lstm,
    S4d,
    Tcn,
    Transformer,
}

impl ModelFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelFamily::Lstm => "lstm",
            ModelFamily::S4d => "s4d",
            ModelFamily::Tcn => "tcn",
            ModelFamily::Transformer => "transformer",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PosEncoding {
    Absolute,
    Relative,
    T5,
    Rope,
}

impl PosEncoding {
    pub fn as_str(self) -> &'static str {
        match self {
            PosEncoding::Absolute => "absolute",
            PosEncoding::Relative => "relative",
            PosEncoding::T5 => "t5",
            PosEncoding::Rope => "rope",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Optimizer {
    Adam,
    Adamw,
}

fn default_schema_version() -> String {
    RESULT_SCHEMA_VERSION.to_string()
}

/// Outcome of one training run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    #[serde(default = "default_schema_version")]
    pub schema_version: String,
    pub model: ModelFamily,
    pub memory: MemoryKind,
    pub alpha: f64,
    /// Model size: hidden dim, d_model or channel count.
    pub m: u64,
    #[serde(default)]
    pub n_heads: Option<u64>,
    #[serde(default)]
    pub pos_encoding: Option<PosEncoding>,
    pub optimizer: Optimizer,
    pub lr: f64,
    pub batch_size: u64,
    pub seed: u64,
    pub final_train_rmse: f64,
    pub final_test_rmse: f64,
    pub steps_total: u64,
    #[serde(default)]
    pub threshold: Option<f64>,
    /// First step whose training loss reached `threshold`; `null` if never.
    #[serde(default)]
    pub steps_to_threshold: Option<u64>,
}

impl ResultRecord {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Schema(msg));
        if !(0.0..=1.0).contains(&self.alpha) {
            return fail(format!("alpha {} outside [0, 1]", self.alpha));
        }
        for (name, v) in [("final_train_rmse", self.final_train_rmse), ("final_test_rmse", self.final_test_rmse)] {
            if !(v >= 0.0) || !v.is_finite() {
                return fail(format!("{name} = {v} must be finite and nonnegative"));
            }
        }
        if !(self.lr > 0.0) || !self.lr.is_finite() {
            return fail(format!("lr {} must be positive", self.lr));
        }
        if self.m == 0 || self.batch_size == 0 {
            return fail("m and batch_size must be positive".into());
        }
        if let Some(steps) = self.steps_to_threshold {
            if steps > self.steps_total {
                return fail(format!("steps_to_threshold {steps} exceeds steps_total {}", self.steps_total));
            }
        }
        if matches!(self.n_heads, Some(0)) {
            return fail("n_heads must be positive".into());
        }
        Ok(())
    }

    /// Parses and validates one JSON object.
    pub fn from_json(line: &str) -> Result<Self> {
        let record: ResultRecord = serde_json::from_str(line).map_err(|e| Error::Schema(e.to_string()))?;
        record.validate()?;
        Ok(record)
    }
}

/// Appends `record` as one line to the JSONL file at `path`.
pub fn append_result(record: &ResultRecord, path: &Path) -> Result<()> {
    record.validate()?;
    let mut line = serde_json::to_string(record)?;
    line.push('\n');
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    file.write_all(line.as_bytes())?;
    Ok(())
}

/// Reads every record of a JSONL file. Blank lines are skipped, and so is a
/// final unterminated line that does not parse (a write torn by a crash).
pub fn read_results(path: &Path) -> Result<Vec<ResultRecord>> {
    let mut text = String::new();
    BufReader::new(File::open(path)?).read_to_string(&mut text)?;
    parse_results(&text).map_err(|e| match e {
        Error::Schema(msg) => Error::Schema(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn parse_results(text: &str) -> Result<Vec<ResultRecord>> {
    let terminated = text.ends_with('\n');
    let all: Vec<&str> = text.split('\n').collect();
    let mut records = Vec::new();
    for (index, line) in all.iter().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let is_last = index + 1 == all.len();
        match ResultRecord::from_json(line) {
            Ok(record) => records.push(record),
            Err(_) if is_last && !terminated => {}
            Err(Error::Schema(msg)) => return Err(Error::Schema(format!("line {}: {msg}", index + 1))),
            Err(e) => return Err(e),
        }
    }
    Ok(records)
}
