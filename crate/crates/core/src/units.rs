//! Units and physical constants.
//!
//! All internal computation happens in Hartree atomic units (ħ = m_e = e = 1);
//! conversion to laboratory units (attoseconds, W/cm²) is confined to the I/O
//! boundary.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One atomic unit of time in attoseconds (ħ/E_h, CODATA).
pub const ATOMIC_TIME_AS: f64 = 24.188843265857;

/// One atomic unit of intensity in W/cm² (½ ε₀ c E_au²).
pub const ATOMIC_INTENSITY_WCM2: f64 = 3.50944758e16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Unit {
    AtomicTime,
    Attosecond,
    AtomicField,
    WattPerCm2,
    AtomicIntensity,
    AtomicEnergy,
    Dimensionless,
}

impl Unit {
    /// Column label used in emitted tables.
    pub fn label(self) -> &'static str {
        match self {
            Unit::AtomicTime => "au_time",
            Unit::Attosecond => "as",
            Unit::AtomicField => "au_field",
            Unit::WattPerCm2 => "W/cm2",
            Unit::AtomicIntensity => "au_intensity",
            Unit::AtomicEnergy => "au_energy",
            Unit::Dimensionless => "1",
        }
    }

    /// Dimension class; conversion is defined within a class only.
    fn class(self) -> Dimension {
        match self {
            Unit::AtomicTime | Unit::Attosecond => Dimension::Time,
            Unit::WattPerCm2 | Unit::AtomicIntensity => Dimension::Intensity,
            Unit::AtomicField => Dimension::Field,
            Unit::AtomicEnergy => Dimension::Energy,
            Unit::Dimensionless => Dimension::Dimensionless,
        }
    }

    /// Scale of this unit expressed in the atomic unit of its class.
    fn in_atomic(self) -> f64 {
        match self {
            Unit::AtomicTime => 1.0,
            Unit::Attosecond => 1.0 / ATOMIC_TIME_AS,
            Unit::AtomicField => 1.0,
            Unit::WattPerCm2 => 1.0 / ATOMIC_INTENSITY_WCM2,
            Unit::AtomicIntensity => 1.0,
            Unit::AtomicEnergy => 1.0,
            Unit::Dimensionless => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dimension {
    Time,
    Intensity,
    Field,
    Energy,
    Dimensionless,
}

/// A value tagged with its unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: f64,
    pub unit: Unit,
}

impl Quantity {
    pub fn new(value: f64, unit: Unit) -> Self {
        Quantity { value, unit }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UnitError {
    #[error("cannot convert {from:?} to {to:?}: incompatible dimensions")]
    IncompatibleUnits { from: Unit, to: Unit },
}

/// Convert a quantity to a dimensionally compatible target unit.
///
/// The conversion is a single multiplication by a fixed constant, so it is
/// exact for same-unit targets and loses at most one rounding step otherwise.
pub fn convert(q: Quantity, target: Unit) -> Result<Quantity, UnitError> {
    if q.unit.class() != target.class() {
        return Err(UnitError::IncompatibleUnits {
            from: q.unit,
            to: target,
        });
    }
    if q.unit == target {
        return Ok(q);
    }
    Ok(Quantity::new(
        q.value * (q.unit.in_atomic() / target.in_atomic()),
        target,
    ))
}

/// Shorthand: atomic time units to attoseconds.
pub fn au_time_to_attoseconds(t_au: f64) -> f64 {
    t_au * ATOMIC_TIME_AS
}

/// Shorthand: W/cm² to atomic intensity units.
pub fn intensity_wcm2_to_au(i_wcm2: f64) -> f64 {
    i_wcm2 / ATOMIC_INTENSITY_WCM2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_time_unit_matches_published_constant() {
        // ħ/E_h = 2.4188843265857e-17 s
        let q = convert(Quantity::new(1.0, Unit::AtomicTime), Unit::Attosecond).unwrap();
        assert!((q.value - 24.188843265).abs() / 24.188843265 < 1e-10);
        assert_eq!(q.unit, Unit::Attosecond);
    }

    #[test]
    fn atomic_intensity_unit() {
        let q = convert(
            Quantity::new(3.50944758e16, Unit::WattPerCm2),
            Unit::AtomicIntensity,
        )
        .unwrap();
        assert!((q.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_converts_to_zero() {
        for (u, t) in [
            (Unit::AtomicTime, Unit::Attosecond),
            (Unit::WattPerCm2, Unit::AtomicIntensity),
            (Unit::AtomicEnergy, Unit::AtomicEnergy),
        ] {
            let q = convert(Quantity::new(0.0, u), t).unwrap();
            assert_eq!(q.value, 0.0);
        }
    }

    #[test]
    fn round_trip_within_1e12_relative() {
        for v in [1.0, 3.7e-5, 9.13e14, -2.5] {
            let q = Quantity::new(v, Unit::Attosecond);
            let back = convert(convert(q, Unit::AtomicTime).unwrap(), Unit::Attosecond).unwrap();
            assert!((back.value - v).abs() <= 1e-12 * v.abs());
        }
    }

    #[test]
    fn incompatible_units_rejected() {
        let err = convert(Quantity::new(1.0, Unit::AtomicTime), Unit::WattPerCm2).unwrap_err();
        assert_eq!(
            err,
            UnitError::IncompatibleUnits {
                from: Unit::AtomicTime,
                to: Unit::WattPerCm2
            }
        );
    }

    #[test]
    fn convert_is_linear() {
        for alpha in [0.5, 2.0, -13.0, 1e-9] {
            let q = Quantity::new(7.25, Unit::WattPerCm2);
            let scaled = Quantity::new(alpha * q.value, q.unit);
            let a = convert(scaled, Unit::AtomicIntensity).unwrap().value;
            let b = alpha * convert(q, Unit::AtomicIntensity).unwrap().value;
            assert!((a - b).abs() <= 1e-15 * a.abs().max(b.abs()));
        }
    }
}
