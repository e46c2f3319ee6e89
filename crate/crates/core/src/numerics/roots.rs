//! Bracketed root finding (Brent's method).

use super::NumericsError;

const MAX_ITER: usize = 200;

/// An interval known to contain the feature being searched for: a sign
/// change for root finding, an interior peak for extremum search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self, NumericsError> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(NumericsError::InvalidBracket { lo, hi });
        }
        Ok(Bracket { lo, hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Find a root of `f` inside `bracket` by Brent's method.
///
/// Requires a sign change over the bracket. Converges when the bracket has
/// shrunk below `tol` (absolute, in x). Deterministic for fixed inputs.
pub fn find_root<F: Fn(f64) -> f64>(
    f: F,
    bracket: Bracket,
    tol: f64,
) -> Result<f64, NumericsError> {
    let mut a = bracket.lo;
    let mut b = bracket.hi;
    let mut fa = f(a);
    let mut fb = f(b);

    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(NumericsError::NoSignChange {
            lo: bracket.lo,
            hi: bracket.hi,
        });
    }

    // c is the previous iterate; (b, fb) is always the best point.
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }

        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }

        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Inverse quadratic interpolation, or secant if only two points.
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }

        a = b;
        fa = fb;
        b += if d.abs() > tol1 {
            d
        } else if xm > 0.0 {
            tol1
        } else {
            -tol1
        };
        fb = f(b);
    }

    Err(NumericsError::MaxIterations(MAX_ITER))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_root() {
        let r = find_root(|x| x - 2.0, Bracket::new(0.0, 5.0).unwrap(), 1e-12).unwrap();
        assert!((r - 2.0).abs() < 1e-11);
    }

    #[test]
    fn sqrt_two() {
        let r = find_root(|x| x * x - 2.0, Bracket::new(0.0, 2.0).unwrap(), 1e-12).unwrap();
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-11);
    }

    #[test]
    fn no_sign_change_detected() {
        let err = find_root(|x| x * x + 1.0, Bracket::new(-1.0, 1.0).unwrap(), 1e-10).unwrap_err();
        assert!(matches!(err, NumericsError::NoSignChange { .. }));
    }

    #[test]
    fn invariant_under_bracket_refinement() {
        let f = |x: f64| x.cos() - x;
        let wide = find_root(f, Bracket::new(0.0, 2.0).unwrap(), 1e-12).unwrap();
        let narrow = find_root(f, Bracket::new(0.7, 0.8).unwrap(), 1e-12).unwrap();
        assert!((wide - narrow).abs() < 1e-11);
    }

    #[test]
    fn invalid_bracket_rejected() {
        assert!(Bracket::new(2.0, 1.0).is_err());
        assert!(Bracket::new(1.0, 1.0).is_err());
        assert!(Bracket::new(f64::NAN, 1.0).is_err());
    }
}
