//! Ingestion of externally supplied measured ionization times.
//!
//! Format: CSV with header `intensity_Wcm2,time_as,error_as,instrument`.
//! The artifact ships no measured data; users transcribe it themselves.

use std::path::Path;

use super::ReportError;

#[derive(Debug, Clone, PartialEq)]
pub struct DataPoint {
    pub intensity_wcm2: f64,
    pub time_as: f64,
    pub error_as: f64,
    pub instrument: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentalDataset {
    /// Sorted by intensity, strictly increasing.
    pub rows: Vec<DataPoint>,
}

pub const DATASET_HEADER: &str = "intensity_Wcm2,time_as,error_as,instrument";

impl ExperimentalDataset {
    pub fn from_csv(text: &str) -> Result<Self, ReportError> {
        let mut rows = Vec::new();
        let mut saw_header = false;
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if !saw_header {
                if trimmed != DATASET_HEADER {
                    return Err(ReportError::MalformedDataFile {
                        line: line_no,
                        reason: format!("expected header {DATASET_HEADER:?}"),
                    });
                }
                saw_header = true;
                continue;
            }
            let fields: Vec<&str> = trimmed.split(',').collect();
            if fields.len() != 4 {
                return Err(ReportError::MalformedDataFile {
                    line: line_no,
                    reason: format!("expected 4 fields, found {}", fields.len()),
                });
            }
            let parse = |what: &str, raw: &str| -> Result<f64, ReportError> {
                raw.trim()
                    .parse::<f64>()
                    .map_err(|e| ReportError::MalformedDataFile {
                        line: line_no,
                        reason: format!("bad {what} {raw:?}: {e}"),
                    })
            };
            let intensity_wcm2 = parse("intensity", fields[0])?;
            if !(intensity_wcm2 > 0.0) {
                return Err(ReportError::MalformedDataFile {
                    line: line_no,
                    reason: format!("intensity must be positive, got {intensity_wcm2}"),
                });
            }
            rows.push(DataPoint {
                intensity_wcm2,
                time_as: parse("time", fields[1])?,
                error_as: parse("error", fields[2])?,
                instrument: fields[3].trim().to_string(),
            });
        }
        if !saw_header {
            return Err(ReportError::MalformedDataFile {
                line: 1,
                reason: format!("missing header {DATASET_HEADER:?}"),
            });
        }

        rows.sort_by(|a, b| a.intensity_wcm2.partial_cmp(&b.intensity_wcm2).unwrap());
        for pair in rows.windows(2) {
            if pair[0].intensity_wcm2 == pair[1].intensity_wcm2 {
                return Err(ReportError::MalformedDataFile {
                    line: 0,
                    reason: format!(
                        "duplicate intensity {:.6e} after sort",
                        pair[0].intensity_wcm2
                    ),
                });
            }
        }
        Ok(ExperimentalDataset { rows })
    }

    pub fn from_file(path: &Path) -> Result<Self, ReportError> {
        let text = std::fs::read_to_string(path).map_err(|source| ReportError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_csv(&text)
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}
