//! Experiment configuration: JSON file keys mirror the struct fields and
//! every key is optional, falling back to the defaults used throughout.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::atomic::{Atom, DEFAULT_ELLIPTICITY, DEFAULT_OMEGA_AU, DEFAULT_TAU_FS};

use super::ReportError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Rect,
    Atom,
    Tables,
    Validate,
}

/// Rectangular-barrier sweep: E fixed, V0 × width grid, with the region-I
/// probe interval [x̃_L, x_L] and a region-III probe distance.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct RectGrid {
    pub energy: f64,
    pub v0_values: Vec<f64>,
    pub widths: Vec<f64>,
    pub x_left: f64,
    pub x_tilde_left: f64,
    pub region3_distance: f64,
}

impl Default for RectGrid {
    fn default() -> Self {
        let grid = |lo: f64, hi: f64, n: usize| -> Vec<f64> {
            (0..n)
                .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                .collect()
        };
        RectGrid {
            energy: 1.0,
            v0_values: grid(2.0, 9.0, 20),
            widths: grid(0.5, 4.0, 20),
            x_left: 2.0,
            x_tilde_left: 1.0,
            region3_distance: 3.0,
        }
    }
}

pub const DEFAULT_INTENSITIES_WCM2: [f64; 3] = [1.08e14, 1.7e14, 6.12e14];
pub const DEFAULT_TRAJECTORY_INTENSITIES_WCM2: [f64; 2] = [1.08e14, 6.12e14];

/// Laser-intensity window the model is meant for; configs outside it only
/// draw a warning.
pub const INTENSITY_WINDOW_WCM2: (f64, f64) = (1e13, 1e15);

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct ExperimentConfig {
    pub atoms: Vec<Atom>,
    pub intensities_wcm2: Vec<f64>,
    /// Intensities used for trajectory curves (deep vs near-threshold pair
    /// by default).
    pub trajectory_intensities_wcm2: Vec<f64>,
    pub ellipticity: f64,
    pub omega_au: f64,
    pub tau_fs: f64,
    pub rect: RectGrid,
    pub out_dir: PathBuf,
    /// Optional relative-tolerance override recorded in provenance; the
    /// numeric kernels run at their documented defaults.
    pub rel_tol: Option<f64>,
    /// Optional tunnel-exit override (η value) for the experimental overlay.
    pub exit_eta: Option<f64>,
    pub trajectories: bool,
    /// Multiplier on η_R that sets how far trajectories extend.
    pub eta_tilde_factor: f64,
    pub trajectory_samples: usize,
    /// Path to a measured-times CSV to overlay, if any.
    pub experiment_csv: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            atoms: vec![Atom::He, Atom::Ar, Atom::Kr],
            intensities_wcm2: DEFAULT_INTENSITIES_WCM2.to_vec(),
            trajectory_intensities_wcm2: DEFAULT_TRAJECTORY_INTENSITIES_WCM2.to_vec(),
            ellipticity: DEFAULT_ELLIPTICITY,
            omega_au: DEFAULT_OMEGA_AU,
            tau_fs: DEFAULT_TAU_FS,
            rect: RectGrid::default(),
            out_dir: PathBuf::from("out"),
            rel_tol: None,
            exit_eta: None,
            trajectories: false,
            eta_tilde_factor: 2.0,
            trajectory_samples: 121,
            experiment_csv: None,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json_file(path: &Path) -> Result<Self, ReportError> {
        let text = std::fs::read_to_string(path).map_err(|source| ReportError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Canonical JSON used for the provenance hash. File-system locations
    /// are normalized out: they do not influence any computed number, and
    /// hashing them would make otherwise identical runs differ byte-wise.
    pub fn canonical_json(&self) -> String {
        let mut canonical = self.clone();
        canonical.out_dir = PathBuf::new();
        canonical.experiment_csv = None;
        serde_json::to_string(&canonical).expect("config serializes")
    }

    /// FNV-1a hash of the canonical form; stamped into emitted files so two
    /// runs with the same configuration are byte-identical.
    pub fn fingerprint(&self) -> u64 {
        fnv1a(self.canonical_json().as_bytes())
    }

    pub fn laser(&self, intensity_wcm2: f64) -> Result<crate::atomic::LaserSpec, ReportError> {
        let mut laser = crate::atomic::LaserSpec::new(intensity_wcm2)?;
        laser.ellipticity = self.ellipticity;
        laser.omega = self.omega_au;
        laser.tau_fs = self.tau_fs;
        Ok(laser)
    }

    /// Grid sanity checks. Returns human-readable warnings (e.g. intensities
    /// outside the supported window) and fails on empty grids.
    pub fn validate(&self, mode: Mode) -> Result<Vec<String>, ReportError> {
        let mut warnings = Vec::new();
        match mode {
            Mode::Atom | Mode::Tables => {
                if self.atoms.is_empty() {
                    return Err(ReportError::InvalidConfig("empty atom list".into()));
                }
                if self.intensities_wcm2.is_empty() {
                    return Err(ReportError::InvalidConfig("empty intensity grid".into()));
                }
                for &i in self
                    .intensities_wcm2
                    .iter()
                    .chain(self.trajectory_intensities_wcm2.iter())
                {
                    if !(i > 0.0) {
                        return Err(ReportError::InvalidConfig(format!(
                            "non-positive intensity {i:e}"
                        )));
                    }
                    if i < INTENSITY_WINDOW_WCM2.0 || i > INTENSITY_WINDOW_WCM2.1 {
                        warnings.push(format!(
                            "intensity {i:.3e} W/cm² lies outside the supported window [{:.0e}, {:.0e}]",
                            INTENSITY_WINDOW_WCM2.0, INTENSITY_WINDOW_WCM2.1
                        ));
                    }
                }
                if self.trajectory_samples < 3 {
                    return Err(ReportError::InvalidConfig(
                        "trajectory_samples must be at least 3".into(),
                    ));
                }
                if !(self.eta_tilde_factor > 1.0) {
                    return Err(ReportError::InvalidConfig(
                        "eta_tilde_factor must exceed 1".into(),
                    ));
                }
            }
            Mode::Rect => {
                if self.rect.v0_values.is_empty() || self.rect.widths.is_empty() {
                    return Err(ReportError::InvalidConfig("empty rect grid".into()));
                }
                if !(self.rect.energy > 0.0) {
                    return Err(ReportError::InvalidConfig(
                        "rect energy must be positive".into(),
                    ));
                }
                if !(self.rect.x_tilde_left < self.rect.x_left) {
                    return Err(ReportError::InvalidConfig(
                        "requires x_tilde_left < x_left".into(),
                    ));
                }
            }
            Mode::Validate => {}
        }
        Ok(warnings)
    }
}

pub(crate) fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid_for_every_mode() {
        let cfg = ExperimentConfig::default();
        for mode in [Mode::Rect, Mode::Atom, Mode::Tables, Mode::Validate] {
            assert!(cfg.validate(mode).unwrap().is_empty());
        }
    }

    #[test]
    fn empty_atom_list_rejected_before_computation() {
        let cfg = ExperimentConfig {
            atoms: vec![],
            ..Default::default()
        };
        assert!(cfg.validate(Mode::Tables).is_err());
    }

    #[test]
    fn out_of_window_intensity_warns() {
        let cfg = ExperimentConfig {
            intensities_wcm2: vec![5e15],
            ..Default::default()
        };
        let warnings = cfg.validate(Mode::Atom).unwrap();
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn partial_json_fills_defaults() {
        let cfg: ExperimentConfig = serde_json::from_str(r#"{"atoms": ["Kr"]}"#).unwrap();
        assert_eq!(cfg.atoms, vec![Atom::Kr]);
        assert_eq!(cfg.ellipticity, DEFAULT_ELLIPTICITY);
        assert_eq!(cfg.intensities_wcm2, DEFAULT_INTENSITIES_WCM2.to_vec());
    }

    #[test]
    fn fingerprint_is_stable_and_sensitive() {
        let a = ExperimentConfig::default();
        let b = ExperimentConfig::default();
        assert_eq!(a.fingerprint(), b.fingerprint());
        let c = ExperimentConfig {
            ellipticity: 0.9,
            ..Default::default()
        };
        assert_ne!(a.fingerprint(), c.fingerprint());
    }
}
