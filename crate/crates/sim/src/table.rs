//! Result rows and their CSV / JSON serialization.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub experiment: String,
    pub method: String,
    /// Grid point, `key=value` pairs joined by `;`.
    pub grid: String,
    pub metric: String,
    pub value: f64,
    pub std_err: Option<f64>,
    pub trials: usize,
    pub seed: u64,
    pub config_hash: String,
    pub notes: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// Guesses the format from a file extension, defaulting to CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub rows: Vec<ResultRow>,
}

impl Table {
    pub fn find(&self, method: &str, grid: &str, metric: &str) -> Option<&ResultRow> {
        self.rows
            .iter()
            .find(|r| r.method == method && r.grid == grid && r.metric == metric)
    }

    /// Serializes the whole table in memory.
    pub fn to_bytes(&self, format: Format) -> Result<Vec<u8>> {
        if self.rows.is_empty() {
            return Err(SimError::EmptyTable);
        }
        let bad = |message: String| SimError::Format {
            what: "result table",
            path: "<memory>".into(),
            message,
        };
        match format {
            Format::Json => {
                let mut out = serde_json::to_vec_pretty(&self.rows).map_err(|e| bad(e.to_string()))?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for row in &self.rows {
                    w.serialize(row).map_err(|e| bad(e.to_string()))?;
                }
                w.into_inner().map_err(|e| bad(e.to_string()))
            }
        }
    }

    /// Writes the table, or nothing at all if serialization fails.
    pub fn write(&self, path: &Path, format: Format) -> Result<()> {
        let bytes = self.to_bytes(format)?;
        fs::write(path, bytes).map_err(|e| SimError::io(path, e))
    }

    pub fn write_to(&self, out: &mut impl Write, format: Format) -> Result<()> {
        let bytes = self.to_bytes(format)?;
        out.write_all(&bytes).map_err(|e| SimError::io("<stdout>", e))
    }

    pub fn read(path: &Path, format: Format) -> Result<Table> {
        let text = fs::read(path).map_err(|e| SimError::io(path, e))?;
        let bad = |message: String| SimError::Format {
            what: "result table",
            path: path.into(),
            message,
        };
        let rows = match format {
            Format::Json => serde_json::from_slice(&text).map_err(|e| bad(e.to_string()))?,
            Format::Csv => csv::Reader::from_reader(text.as_slice())
                .deserialize()
                .collect::<std::result::Result<Vec<ResultRow>, _>>()
                .map_err(|e| bad(e.to_string()))?,
        };
        Ok(Table { rows })
    }
}
