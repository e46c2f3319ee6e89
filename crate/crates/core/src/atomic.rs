//! Strong-field ionization inputs: laser field, single-active-electron
//! screening, Stark-shifted ionization potential, and the 1D effective
//! potential along the parabolic coordinate η.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::units::intensity_wcm2_to_au;

#[derive(Debug, Error)]
pub enum AtomicError {
    #[error("laser intensity must be positive, got {0:.3e} W/cm²")]
    NonPositiveIntensity(f64),
    #[error("unknown atom name {0:?} (supported: He, Ar, Kr)")]
    UnknownAtom(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Atom {
    He,
    Ar,
    Kr,
}

impl Atom {
    pub const ALL: [Atom; 3] = [Atom::He, Atom::Ar, Atom::Kr];

    pub fn name(self) -> &'static str {
        match self {
            Atom::He => "He",
            Atom::Ar => "Ar",
            Atom::Kr => "Kr",
        }
    }
}

impl std::str::FromStr for Atom {
    type Err = AtomicError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "He" | "he" | "HE" => Ok(Atom::He),
            "Ar" | "ar" | "AR" => Ok(Atom::Ar),
            "Kr" | "kr" | "KR" => Ok(Atom::Kr),
            other => Err(AtomicError::UnknownAtom(other.to_string())),
        }
    }
}

/// Per-atom single-active-electron and polarizability parameters
/// (atomic units): nuclear charge Z, empirical screening coefficients
/// A, B, C, field-free ionization potential, and the static (neutral)
/// and ionic polarizabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AtomSpec {
    pub name: Atom,
    pub z: u32,
    pub screen_a: f64,
    pub screen_b: f64,
    pub screen_c: f64,
    pub ip0: f64,
    pub alpha_neutral: f64,
    pub alpha_ion: f64,
}

pub const HELIUM: AtomSpec = AtomSpec {
    name: Atom::He,
    z: 2,
    screen_a: 0.0,
    screen_b: 0.0,
    screen_c: 2.134,
    ip0: 0.903,
    alpha_neutral: 1.38,
    alpha_ion: 0.28,
};

pub const ARGON: AtomSpec = AtomSpec {
    name: Atom::Ar,
    z: 18,
    screen_a: 5.4,
    screen_b: 1.0,
    screen_c: 3.682,
    ip0: 0.580,
    alpha_neutral: 11.1,
    alpha_ion: 7.20,
};

pub const KRYPTON: AtomSpec = AtomSpec {
    name: Atom::Kr,
    z: 36,
    screen_a: 6.42,
    screen_b: 0.905,
    screen_c: 4.2,
    ip0: 0.515,
    alpha_neutral: 16.7,
    alpha_ion: 9.25,
};

impl AtomSpec {
    pub fn get(atom: Atom) -> &'static AtomSpec {
        match atom {
            Atom::He => &HELIUM,
            Atom::Ar => &ARGON,
            Atom::Kr => &KRYPTON,
        }
    }
}

/// How the peak field follows from intensity and ellipticity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum EllipticityConvention {
    /// E0 = √(I / (1 + ζ²)). Reproduces the 0.04–0.1 a.u. field range over
    /// the 1.08–6.12 ×10¹⁴ W/cm² window; used everywhere by default.
    #[default]
    DivideByEllipticityFactor,
    /// E0 = √(I · (1 + ζ²)). Kept for auditing sensitivity to the
    /// convention; not used by the pipelines.
    MultiplyByEllipticityFactor,
}

/// Laser pulse parameters. The envelope is treated as static (unity) on
/// tunneling time scales, so `omega` and `tau_fs` are carried for
/// completeness but drive no computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaserSpec {
    /// Peak intensity in W/cm².
    pub intensity_wcm2: f64,
    /// Ellipticity ζ of the polarization.
    pub ellipticity: f64,
    /// Carrier angular frequency, atomic units.
    pub omega: f64,
    /// Pulse duration in femtoseconds.
    pub tau_fs: f64,
}

pub const DEFAULT_ELLIPTICITY: f64 = 0.85;
pub const DEFAULT_OMEGA_AU: f64 = 0.035;
pub const DEFAULT_TAU_FS: f64 = 156.0;

impl LaserSpec {
    pub fn new(intensity_wcm2: f64) -> Result<Self, AtomicError> {
        if !(intensity_wcm2 > 0.0) {
            return Err(AtomicError::NonPositiveIntensity(intensity_wcm2));
        }
        Ok(LaserSpec {
            intensity_wcm2,
            ellipticity: DEFAULT_ELLIPTICITY,
            omega: DEFAULT_OMEGA_AU,
            tau_fs: DEFAULT_TAU_FS,
        })
    }

    /// Peak electric field in atomic units (default convention).
    pub fn peak_field(&self) -> f64 {
        self.peak_field_with(EllipticityConvention::default())
    }

    pub fn peak_field_with(&self, convention: EllipticityConvention) -> f64 {
        let i_au = intensity_wcm2_to_au(self.intensity_wcm2);
        let factor = 1.0 + self.ellipticity * self.ellipticity;
        match convention {
            EllipticityConvention::DivideByEllipticityFactor => (i_au / factor).sqrt(),
            EllipticityConvention::MultiplyByEllipticityFactor => (i_au * factor).sqrt(),
        }
    }
}

/// SAE screening function Φ(r) = A·e^(−Br) + (Z−1−A)·e^(−Cr).
pub fn screening(atom: &AtomSpec, r: f64) -> f64 {
    debug_assert!(r >= 0.0);
    atom.screen_a * (-atom.screen_b * r).exp()
        + (atom.z as f64 - 1.0 - atom.screen_a) * (-atom.screen_c * r).exp()
}

/// dΦ/dr.
pub fn screening_derivative(atom: &AtomSpec, r: f64) -> f64 {
    -atom.screen_a * atom.screen_b * (-atom.screen_b * r).exp()
        - (atom.z as f64 - 1.0 - atom.screen_a) * atom.screen_c * (-atom.screen_c * r).exp()
}

/// Stark-shifted ionization potential Ip = Ip⁰ + ½(α_N − α_I)·E0².
pub fn stark_ip(atom: &AtomSpec, e0: f64) -> f64 {
    debug_assert!(e0 >= 0.0);
    atom.ip0 + 0.5 * (atom.alpha_neutral - atom.alpha_ion) * e0 * e0
}

/// Frozen (atom, field) pair: everything the effective potential needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveModel {
    pub atom: &'static AtomSpec,
    /// Peak field, atomic units.
    pub e0: f64,
    /// Stark-shifted ionization potential, atomic units.
    pub ip: f64,
}

impl EffectiveModel {
    pub fn new(atom: Atom, e0: f64) -> Self {
        let spec = AtomSpec::get(atom);
        EffectiveModel {
            atom: spec,
            e0,
            ip: stark_ip(spec, e0),
        }
    }

    pub fn for_laser(atom: Atom, laser: &LaserSpec) -> Self {
        Self::new(atom, laser.peak_field())
    }

    /// Effective 1D potential along η. The Stark-shifted Ip feeds both the
    /// channel energy −Ip/4 and the separation term √(2Ip)/(4η).
    pub fn v_eff(&self, eta: f64) -> f64 {
        debug_assert!(eta > 0.0);
        let inv = 1.0 / eta;
        let inv2 = inv * inv;
        -0.125 * inv2 - 0.5 * inv - screening(self.atom, 0.5 * eta) * 0.5 * inv
            + self.atom.alpha_ion * self.e0 * inv2
            - 0.125 * self.e0 * eta
            + 0.25 * (2.0 * self.ip).sqrt() * inv
    }

    /// dV_eff/dη, term by term.
    pub fn v_eff_prime(&self, eta: f64) -> f64 {
        debug_assert!(eta > 0.0);
        let inv = 1.0 / eta;
        let inv2 = inv * inv;
        let inv3 = inv2 * inv;
        0.25 * inv3 + 0.5 * inv2 + screening(self.atom, 0.5 * eta) * 0.5 * inv2
            - screening_derivative(self.atom, 0.5 * eta) * 0.25 * inv
            - 2.0 * self.atom.alpha_ion * self.e0 * inv3
            - 0.125 * self.e0
            - 0.25 * (2.0 * self.ip).sqrt() * inv2
    }

    /// V_eff + Ip/4: positive inside the barrier, zero at turning points.
    pub fn barrier_excess(&self, eta: f64) -> f64 {
        self.v_eff(eta) + 0.25 * self.ip
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peak_field_reference_points() {
        let high = LaserSpec::new(6.12e14).unwrap();
        assert!(
            (high.peak_field() - 0.1006).abs() < 5e-5,
            "{}",
            high.peak_field()
        );
        let low = LaserSpec::new(1.08e14).unwrap();
        assert!(
            (low.peak_field() - 0.0423).abs() < 5e-5,
            "{}",
            low.peak_field()
        );
    }

    #[test]
    fn peak_field_linear_polarization() {
        let mut laser = LaserSpec::new(3.50944758e16).unwrap();
        laser.ellipticity = 0.0;
        assert!((laser.peak_field() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn peak_field_conventions_differ_by_ellipticity_factor() {
        let laser = LaserSpec::new(2.0e14).unwrap();
        let ratio = laser.peak_field_with(EllipticityConvention::MultiplyByEllipticityFactor)
            / laser.peak_field();
        assert!((ratio - (1.0 + 0.85 * 0.85)).abs() < 1e-12);
    }

    #[test]
    fn intensity_must_be_positive() {
        assert!(LaserSpec::new(0.0).is_err());
        assert!(LaserSpec::new(-1e14).is_err());
    }

    #[test]
    fn screening_at_origin() {
        // Φ(0) = Z − 1, so r·V(r) → −Z at the nucleus.
        assert!((screening(&HELIUM, 0.0) - 1.0).abs() < 1e-15);
        assert!((screening(&ARGON, 0.0) - 17.0).abs() < 1e-15);
        assert!((screening(&KRYPTON, 0.0) - 35.0).abs() < 1e-15);
    }

    #[test]
    fn screening_argon_reference_point() {
        let v = screening(&ARGON, 1.0);
        let direct = 5.4 * (-1.0f64).exp() + 11.6 * (-3.682f64).exp();
        assert!((v - direct).abs() < 1e-15);
        assert!((v - 2.27855).abs() < 1e-5, "Φ_Ar(1) = {v}");
    }

    #[test]
    fn screening_positive_and_decreasing() {
        for spec in [&HELIUM, &ARGON, &KRYPTON] {
            let mut prev = screening(spec, 0.0);
            for i in 1..=200 {
                let r = i as f64 * 0.1;
                let v = screening(spec, r);
                assert!(v > 0.0);
                assert!(v < prev, "{:?} not decreasing at r = {r}", spec.name);
                prev = v;
            }
        }
    }

    #[test]
    fn stark_shift_reference_points() {
        assert!((stark_ip(&HELIUM, 0.0) - 0.903).abs() < 1e-15);
        let he = stark_ip(&HELIUM, 0.0423);
        assert!((he - (0.903 + 0.55 * 0.0423 * 0.0423)).abs() < 1e-15);
        assert!((he - 0.90398).abs() < 1e-5);
        let kr = stark_ip(&KRYPTON, 0.1006);
        assert!((kr - 0.5526983).abs() < 1e-6, "Kr Ip = {kr}");
    }

    #[test]
    fn stark_shift_is_quadratic() {
        for spec in [&HELIUM, &ARGON, &KRYPTON] {
            for e0 in [0.01, 0.05, 0.1] {
                let lhs = stark_ip(spec, 2.0 * e0) - spec.ip0;
                let rhs = 4.0 * (stark_ip(spec, e0) - spec.ip0);
                assert!((lhs - rhs).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn v_eff_singular_at_origin() {
        let model = EffectiveModel::new(Atom::He, 0.0423);
        assert!(model.v_eff(1e-4) < -1e6);
    }

    #[test]
    fn v_eff_linear_tail() {
        let model = EffectiveModel::new(Atom::He, 0.0423);
        let eta = 1e4;
        let ratio = model.v_eff(eta) / (-0.125 * model.e0 * eta);
        assert!((ratio - 1.0).abs() < 1e-2, "ratio = {ratio}");
    }

    #[test]
    fn v_eff_prime_matches_finite_differences() {
        for atom in Atom::ALL {
            let model = EffectiveModel::new(atom, 0.06);
            for i in 0..40 {
                let eta = 0.5 + i as f64 * 2.5;
                let h = 1e-6 * eta.max(1.0);
                let fd = (model.v_eff(eta + h) - model.v_eff(eta - h)) / (2.0 * h);
                let an = model.v_eff_prime(eta);
                assert!(
                    (fd - an).abs() <= 1e-6 * an.abs().max(1e-6),
                    "{:?} η={eta}: fd {fd} vs analytic {an}",
                    atom
                );
            }
        }
    }

    #[test]
    fn v_eff_prime_tail_approaches_field_slope() {
        let model = EffectiveModel::new(Atom::Kr, 0.1006);
        let tail = model.v_eff_prime(1e6);
        assert!((tail - (-0.125 * model.e0)).abs() < 1e-8);
    }
}
