//! Figure/table data product: rectangular numeric tables with per-column
//! units, emitted as CSV behind a single `#`-prefixed JSON provenance line.
//!
//! Numbers are written with 17 significant digits so re-ingesting an emitted
//! file reproduces bit-identical values.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::json;

use crate::units::Unit;

use super::ReportError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Text(_) => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            Cell::Text(s) => Some(s),
            Cell::Num(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub header: String,
    /// `None` marks a label column; numeric columns declare their unit.
    pub unit: Option<Unit>,
}

impl Column {
    pub fn numeric(header: &str, unit: Unit) -> Self {
        Column {
            header: header.to_string(),
            unit: Some(unit),
        }
    }

    pub fn label(header: &str) -> Self {
        Column {
            header: header.to_string(),
            unit: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureTable {
    pub name: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
    /// What the table mirrors, plus the config fingerprint.
    pub provenance: String,
}

impl FigureTable {
    pub fn new(name: &str, columns: Vec<Column>, provenance: String) -> Self {
        FigureTable {
            name: name.to_string(),
            columns,
            rows: Vec::new(),
            provenance,
        }
    }

    /// Append a row; arity must match the declared columns.
    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "table {}: row arity {} vs {} columns",
            self.name,
            row.len(),
            self.columns.len()
        );
        for (cell, col) in row.iter().zip(&self.columns) {
            match (cell, col.unit.is_some()) {
                (Cell::Num(_), true) | (Cell::Text(_), false) => {}
                _ => panic!(
                    "table {}: cell kind mismatch in column {}",
                    self.name, col.header
                ),
            }
        }
        self.rows.push(row);
    }

    pub fn column_index(&self, header: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.header == header)
    }

    /// Numeric column as a vector (panics on label columns).
    pub fn numeric_column(&self, header: &str) -> Vec<f64> {
        let idx = self
            .column_index(header)
            .unwrap_or_else(|| panic!("no column {header}"));
        self.rows
            .iter()
            .map(|r| r[idx].as_f64().expect("numeric column"))
            .collect()
    }

    /// Serialize to CSV with the provenance header line.
    pub fn to_csv(&self) -> String {
        let units: serde_json::Map<String, serde_json::Value> = self
            .columns
            .iter()
            .map(|c| {
                (
                    c.header.clone(),
                    json!(c.unit.map(|u| u.label()).unwrap_or("label")),
                )
            })
            .collect();
        let header = json!({
            "table": self.name,
            "units": units,
            "provenance": self.provenance,
        });
        let mut out = String::new();
        writeln!(out, "# {header}").unwrap();
        writeln!(
            out,
            "{}",
            self.columns
                .iter()
                .map(|c| c.header.as_str())
                .collect::<Vec<_>>()
                .join(",")
        )
        .unwrap();
        for row in &self.rows {
            let line = row
                .iter()
                .map(|cell| match cell {
                    Cell::Num(v) => format_number(*v),
                    Cell::Text(s) => s.clone(),
                })
                .collect::<Vec<_>>()
                .join(",");
            writeln!(out, "{line}").unwrap();
        }
        out
    }

    pub fn write_csv(&self, dir: &Path) -> Result<std::path::PathBuf, ReportError> {
        std::fs::create_dir_all(dir).map_err(|source| ReportError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        let path = dir.join(format!("{}.csv", self.name));
        std::fs::write(&path, self.to_csv()).map_err(|source| ReportError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(path)
    }

    /// Re-ingest an emitted table. Column kinds are recovered from the JSON
    /// header line.
    pub fn from_csv(text: &str) -> Result<Self, ReportError> {
        let mut lines = text.lines().enumerate();
        let (_, header_line) = lines.next().ok_or_else(|| ReportError::MalformedDataFile {
            line: 1,
            reason: "empty file".into(),
        })?;
        let header_json =
            header_line
                .strip_prefix('#')
                .ok_or_else(|| ReportError::MalformedDataFile {
                    line: 1,
                    reason: "missing # provenance line".into(),
                })?;
        let meta: serde_json::Value = serde_json::from_str(header_json.trim())?;
        let name = meta["table"].as_str().unwrap_or("unnamed").to_string();
        let provenance = meta["provenance"].as_str().unwrap_or("").to_string();

        let (_, column_line) = lines.next().ok_or_else(|| ReportError::MalformedDataFile {
            line: 2,
            reason: "missing column header".into(),
        })?;
        let columns: Vec<Column> = column_line
            .split(',')
            .map(|h| {
                let unit_label = meta["units"][h].as_str().unwrap_or("label");
                Column {
                    header: h.to_string(),
                    unit: unit_from_label(unit_label),
                }
            })
            .collect();

        let mut table = FigureTable::new(&name, columns, provenance);
        for (i, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let cells = line.split(',').collect::<Vec<_>>();
            if cells.len() != table.columns.len() {
                return Err(ReportError::MalformedDataFile {
                    line: i + 1,
                    reason: format!(
                        "expected {} fields, found {}",
                        table.columns.len(),
                        cells.len()
                    ),
                });
            }
            let row = cells
                .iter()
                .zip(&table.columns)
                .map(|(raw, col)| {
                    if col.unit.is_some() {
                        raw.parse::<f64>().map(Cell::Num).map_err(|e| {
                            ReportError::MalformedDataFile {
                                line: i + 1,
                                reason: format!("bad number {raw:?}: {e}"),
                            }
                        })
                    } else {
                        Ok(Cell::Text(raw.to_string()))
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            table.rows.push(row);
        }
        Ok(table)
    }
}

/// 17 significant digits: enough for f64 round-trips.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        }
    } else {
        format!("{v:.16e}")
    }
}

fn unit_from_label(label: &str) -> Option<Unit> {
    match label {
        "au_time" => Some(Unit::AtomicTime),
        "as" => Some(Unit::Attosecond),
        "au_field" => Some(Unit::AtomicField),
        "W/cm2" => Some(Unit::WattPerCm2),
        "au_intensity" => Some(Unit::AtomicIntensity),
        "au_energy" => Some(Unit::AtomicEnergy),
        "1" => Some(Unit::Dimensionless),
        _ => None,
    }
}
