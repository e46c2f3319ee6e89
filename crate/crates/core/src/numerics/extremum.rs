//! Bounded search for a unimodal interior maximum.

use super::{Bracket, NumericsError};

const INV_GOLDEN: f64 = 0.618_033_988_749_894_9; // (√5 − 1)/2
const SCAN_POINTS: usize = 64;
const MAX_ITER: usize = 400;

/// Locate the interior maximum of `f` on `bracket` to width `tol`.
///
/// A coarse scan first verifies that the bracket holds a single peak; if
/// several candidate local maxima show up the caller must split the bracket.
/// Returns the abscissa and the function value there.
pub fn find_max<F: Fn(f64) -> f64>(
    f: F,
    bracket: Bracket,
    tol: f64,
) -> Result<(f64, f64), NumericsError> {
    let (lo, hi) = (bracket.lo, bracket.hi);

    // Unimodality pre-check on a uniform scan. A scan that finds no strict
    // interior peak is fine (the maximum may sit between scan points);
    // finding more than one is not.
    let step = (hi - lo) / (SCAN_POINTS as f64 + 1.0);
    let mut prev2 = f(lo + step);
    let mut prev1 = f(lo + 2.0 * step);
    let mut peaks = 0usize;
    for i in 3..=SCAN_POINTS {
        let v = f(lo + step * i as f64);
        if prev1 > prev2 && prev1 > v {
            peaks += 1;
        }
        prev2 = prev1;
        prev1 = v;
    }
    if peaks > 1 {
        return Err(NumericsError::NotUnimodal { candidates: peaks });
    }

    // Golden-section search, shrinking toward the larger value.
    let mut a = lo;
    let mut b = hi;
    let mut x1 = b - INV_GOLDEN * (b - a);
    let mut x2 = a + INV_GOLDEN * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);

    for _ in 0..MAX_ITER {
        if (b - a) <= tol {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_GOLDEN * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_GOLDEN * (b - a);
            f1 = f(x1);
        }
    }

    let (x, fx) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    Ok((x, fx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola_peak() {
        let (x, fx) = find_max(
            |x| -(x - 3.0) * (x - 3.0),
            Bracket::new(0.0, 10.0).unwrap(),
            1e-10,
        )
        .unwrap();
        assert!((x - 3.0).abs() < 1e-7);
        assert!(fx.abs() < 1e-13);
    }

    #[test]
    fn multimodal_rejected() {
        // Two clear peaks on [0, 2π]: sin(2x) has maxima at π/4 and 5π/4.
        let err = find_max(
            |x| (2.0 * x).sin(),
            Bracket::new(0.0, 2.0 * std::f64::consts::PI).unwrap(),
            1e-8,
        )
        .unwrap_err();
        assert!(matches!(err, NumericsError::NotUnimodal { .. }));
    }

    #[test]
    fn asymmetric_peak() {
        // x·e^(-x) peaks at x = 1; a quadratic peak is locatable only to
        // ~√ε however tight the bracket tolerance.
        let (x, _) = find_max(
            |x: f64| x * (-x).exp(),
            Bracket::new(0.0, 6.0).unwrap(),
            1e-11,
        )
        .unwrap();
        assert!((x - 1.0).abs() < 1e-6);
    }
}
