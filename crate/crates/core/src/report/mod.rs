//! Experiment orchestration: configuration, figure/table data products, and
//! the runtime cross-check suite behind the `validate` verb.

pub mod config;
pub mod dataset;
pub mod runs;
pub mod table;
pub mod validate;

pub use config::{ExperimentConfig, Mode, RectGrid};
pub use dataset::ExperimentalDataset;
pub use runs::{overlay_experiment, run_rect, run_tables, run_time_vs_intensity, run_trajectories};
pub use table::{Cell, Column, FigureTable};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("malformed data file at line {line}: {reason}")]
    MalformedDataFile { line: usize, reason: String },
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Atomic(#[from] crate::atomic::AtomicError),
    #[error(transparent)]
    Wkb(#[from] crate::wkb::WkbError),
    #[error(transparent)]
    Rect(#[from] crate::rect_barrier::RectBarrierError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
