//! Append-only evidence log.
//!
//! One JSON object per line, discriminated by `kind`:
//!
//! ```text
//! {"kind":"evidence","merchant":"A","variable":"Delivery","outcome":"positive","timestamp":1700000000}
//! {"kind":"assessment","merchant":"A","variable":"Portal","c":0.8,"t_scaled":4.5,"timestamp":1700000000}
//! ```
//!
//! The file is only ever opened for appending. Lines that fail to parse (a
//! torn final write, for instance) are skipped with a warning.

use std::fs::{self, File, OpenOptions};
use std::io::{self, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::opinion::EvidenceCount;
use crate::pipeline::{normalize_name, MerchantInputs, PipelineConfig, VariableInput};

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),

    #[error("invalid record: {0}")]
    InvalidRecord(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Positive,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceRecord {
    pub merchant: String,
    pub variable: String,
    pub outcome: Outcome,
    pub timestamp: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectAssessment {
    pub merchant: String,
    pub variable: String,
    pub c: f64,
    pub t_scaled: f64,
    pub timestamp: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LogEntry {
    Evidence(EvidenceRecord),
    Assessment(DirectAssessment),
}

impl LogEntry {
    pub fn merchant(&self) -> &str {
        match self {
            LogEntry::Evidence(r) => &r.merchant,
            LogEntry::Assessment(a) => &a.merchant,
        }
    }

    pub fn variable(&self) -> &str {
        match self {
            LogEntry::Evidence(r) => &r.variable,
            LogEntry::Assessment(a) => &a.variable,
        }
    }

    fn variable_mut(&mut self) -> &mut String {
        match self {
            LogEntry::Evidence(r) => &mut r.variable,
            LogEntry::Assessment(a) => &mut a.variable,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VariableProfile {
    pub counts: EvidenceCount,
    pub assessment: Option<DirectAssessment>,
}

/// Everything the log knows about one merchant, per configured variable.
#[derive(Debug, Clone, PartialEq)]
pub struct MerchantProfile {
    pub merchant: String,
    pub variables: IndexMap<String, VariableProfile>,
}

impl MerchantProfile {
    /// Pipeline inputs: the latest direct assessment where one exists,
    /// otherwise the evidence counts. Variables with neither are left out.
    pub fn to_inputs(&self) -> MerchantInputs {
        let mut inputs = MerchantInputs::default();
        for (name, profile) in &self.variables {
            let input = match (&profile.assessment, profile.counts) {
                (Some(a), _) => VariableInput::Direct {
                    c: a.c,
                    t_scaled: a.t_scaled,
                },
                (None, counts) if !counts.is_empty() => VariableInput::Evidence(counts),
                _ => continue,
            };
            inputs.variables.insert(name.clone(), input);
        }
        inputs
    }
}

/// Line-delimited JSON evidence log bound to a pipeline configuration, which
/// supplies the variable catalogue and rating scale used for validation.
#[derive(Debug, Clone)]
pub struct EvidenceStore {
    path: PathBuf,
    config: PipelineConfig,
    permissive: bool,
}

impl EvidenceStore {
    pub fn new(path: impl Into<PathBuf>, config: PipelineConfig) -> Self {
        Self {
            path: path.into(),
            config,
            permissive: false,
        }
    }

    /// Accept variables outside the configured catalogue.
    pub fn permissive(mut self, permissive: bool) -> Self {
        self.permissive = permissive;
        self
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn io_error(&self, source: io::Error) -> StoreError {
        StoreError::Io {
            path: self.path.clone(),
            source,
        }
    }

    /// Checks ranges and resolves the variable to its configured spelling.
    pub fn normalize(&self, mut entry: LogEntry) -> Result<LogEntry, StoreError> {
        if entry.merchant().trim().is_empty() {
            return Err(StoreError::InvalidRecord(
                "merchant identifier is empty".into(),
            ));
        }
        if let LogEntry::Assessment(a) = &entry {
            if !(0.0..=1.0).contains(&a.c) {
                return Err(StoreError::InvalidRecord(format!(
                    "certainty {} outside [0, 1]",
                    a.c
                )));
            }
            let scale = self.config.params.scale;
            if !(0.0..=scale).contains(&a.t_scaled) {
                return Err(StoreError::InvalidRecord(format!(
                    "rating {} outside [0, {scale}]",
                    a.t_scaled
                )));
            }
        }
        match self.config.canonical_variable(entry.variable()) {
            Some(canonical) => *entry.variable_mut() = canonical.to_string(),
            None if self.permissive => {}
            None => return Err(StoreError::UnknownVariable(entry.variable().to_string())),
        }
        Ok(entry)
    }

    pub fn append(&self, entry: LogEntry) -> Result<LogEntry, StoreError> {
        let mut written = self.append_all(vec![entry])?;
        Ok(written.remove(0))
    }

    /// Validates every entry, then writes them in a single append. Nothing is
    /// written if any entry is rejected.
    pub fn append_all(&self, entries: Vec<LogEntry>) -> Result<Vec<LogEntry>, StoreError> {
        let entries = entries
            .into_iter()
            .map(|e| self.normalize(e))
            .collect::<Result<Vec<_>, _>>()?;
        if entries.is_empty() {
            return Ok(entries);
        }

        let mut buf = String::new();
        for entry in &entries {
            buf.push_str(&serde_json::to_string(entry).expect("log entries serialize"));
            buf.push('\n');
        }

        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .read(true)
            .open(&self.path)
            .map_err(|e| self.io_error(e))?;
        // Terminate a torn last line so the new records start on their own.
        if ends_without_newline(&mut file).map_err(|e| self.io_error(e))? {
            buf.insert(0, '\n');
        }
        file.write_all(buf.as_bytes())
            .map_err(|e| self.io_error(e))?;
        file.sync_data().map_err(|e| self.io_error(e))?;
        Ok(entries)
    }

    /// Every parseable entry in file order. A missing file reads as empty.
    pub fn entries(&self) -> Result<Vec<LogEntry>, StoreError> {
        let text = match fs::read_to_string(&self.path) {
            Ok(text) => text,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(self.io_error(e)),
        };
        let mut entries = Vec::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<LogEntry>(line) {
                Ok(entry) => entries.push(entry),
                Err(e) => log::warn!(
                    "{}:{}: skipping unreadable record: {e}",
                    self.path.display(),
                    n + 1
                ),
            }
        }
        Ok(entries)
    }

    pub fn counts(&self, merchant: &str, variable: &str) -> Result<EvidenceCount, StoreError> {
        let key = normalize_name(variable);
        let mut counts = EvidenceCount::default();
        for entry in self.entries()? {
            if let LogEntry::Evidence(r) = entry {
                if r.merchant == merchant && normalize_name(&r.variable) == key {
                    match r.outcome {
                        Outcome::Positive => counts.positive += 1,
                        Outcome::Negative => counts.negative += 1,
                    }
                }
            }
        }
        Ok(counts)
    }

    /// Counts and latest assessment for every configured variable. Among
    /// assessments with equal timestamps the later line wins.
    pub fn load_profile(&self, merchant: &str) -> Result<MerchantProfile, StoreError> {
        let mut variables: IndexMap<String, VariableProfile> = self
            .config
            .variables()
            .map(|v| (v.to_string(), VariableProfile::default()))
            .collect();
        for entry in self.entries()? {
            if entry.merchant() != merchant {
                continue;
            }
            let Some(name) = self.config.canonical_variable(entry.variable()) else {
                continue;
            };
            let slot = variables.get_mut(name).expect("catalogue variable");
            match entry {
                LogEntry::Evidence(r) => match r.outcome {
                    Outcome::Positive => slot.counts.positive += 1,
                    Outcome::Negative => slot.counts.negative += 1,
                },
                LogEntry::Assessment(a) => {
                    if slot
                        .assessment
                        .as_ref()
                        .is_none_or(|prev| a.timestamp >= prev.timestamp)
                    {
                        slot.assessment = Some(a);
                    }
                }
            }
        }
        Ok(MerchantProfile {
            merchant: merchant.to_string(),
            variables,
        })
    }

    /// Distinct merchant identifiers in order of first appearance.
    pub fn merchants(&self) -> Result<Vec<String>, StoreError> {
        let mut seen = indexmap::IndexSet::new();
        for entry in self.entries()? {
            seen.insert(entry.merchant().to_string());
        }
        Ok(seen.into_iter().collect())
    }
}

fn ends_without_newline(file: &mut File) -> io::Result<bool> {
    let len = file.metadata()?.len();
    if len == 0 {
        return Ok(false);
    }
    file.seek(SeekFrom::Start(len - 1))?;
    let mut last = [0u8; 1];
    file.read_exact(&mut last)?;
    Ok(last[0] != b'\n')
}
