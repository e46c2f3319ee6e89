//! Runtime cross-check suite behind the `validate` verb: re-derives key
//! quantities along independent routes and reports measured discrepancies,
//! including the documented region-II factor between the closed form and the
//! quadrature of the printed integrand.

use serde::Serialize;

use crate::atomic::{Atom, EffectiveModel, LaserSpec};
use crate::rect_barrier::{self, BarrierSpec, Method};
use crate::units::{au_time_to_attoseconds, convert, Quantity, Unit};
use crate::wkb;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    /// Measured discrepancy (route difference, residual, …).
    pub measured: f64,
    /// Threshold the measurement must stay under.
    pub threshold: f64,
    pub passed: bool,
    pub note: String,
}

impl Check {
    fn against(name: &str, measured: f64, threshold: f64, note: String) -> Self {
        Check {
            name: name.into(),
            measured,
            threshold,
            passed: measured <= threshold && measured.is_finite(),
            note,
        }
    }
}

/// Deterministic pseudo-random stream for the conservation sweep.
struct SplitMix(u64);

impl SplitMix {
    fn next_f64(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        ((z ^ (z >> 31)) >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn random_spec(rng: &mut SplitMix) -> BarrierSpec {
    let v0 = 0.5 + 9.5 * rng.next_f64();
    let energy = v0 * (0.02 + 0.96 * rng.next_f64());
    // Four decades of width against the decay scale 1/κ; |A|² then stays
    // small enough that the flux identity is testable at 1e-12 absolute.
    let kappa = (2.0 * (v0 - energy)).sqrt();
    let width = 10f64.powf(-3.5 + 4.0 * rng.next_f64()) / kappa;
    let x_left = -2.0 + 4.0 * rng.next_f64();
    BarrierSpec::new(energy, v0, x_left, x_left + width).unwrap()
}

/// Run every cross-check. Pure; the caller decides how to print.
pub fn run_all() -> Vec<Check> {
    let mut checks = Vec::new();

    // Flux conservation and R + T = 1 over random specs.
    let mut rng = SplitMix(0x5eed);
    let mut worst_flux = 0.0f64;
    let mut worst_rt = 0.0f64;
    for _ in 0..2000 {
        let spec = random_spec(&mut rng);
        let sol = rect_barrier::solve(&spec).unwrap();
        worst_flux = worst_flux.max(((sol.a.norm_sqr() - sol.b.norm_sqr()) - 1.0).abs());
        worst_rt = worst_rt.max((sol.reflection + sol.transmission - 1.0).abs());
    }
    checks.push(Check::against(
        "flux_conservation",
        worst_flux,
        1e-12,
        "max |(|A|²−|B|²) − 1| over 2000 random barriers".into(),
    ));
    checks.push(Check::against(
        "unitarity",
        worst_rt,
        1e-12,
        "max |R + T − 1| over 2000 random barriers".into(),
    ));

    // Full-wavefunction current is x-independent and equals k.
    let spec = BarrierSpec::new(1.0, 2.0, 0.0, 1.0).unwrap();
    let sol = rect_barrier::solve(&spec).unwrap();
    let k = spec.k();
    let mut worst_current = 0.0f64;
    for i in 0..=60 {
        let x = -2.0 + 5.0 * i as f64 / 60.0;
        worst_current = worst_current.max((rect_barrier::total_current(&spec, &sol, x) - k).abs());
    }
    checks.push(Check::against(
        "current_continuity",
        worst_current / k,
        1e-10,
        "max relative deviation of Im[ψ̄ψ′] from k across all regions".into(),
    ));

    // Region-I closed form vs quadrature.
    let mut rng = SplitMix(0xfeed);
    let mut worst_r1 = 0.0f64;
    let mut compared = 0usize;
    while compared < 50 {
        let spec = {
            let v0 = 1.2 + 6.0 * rng.next_f64();
            let energy = v0 * (0.1 + 0.8 * rng.next_f64());
            BarrierSpec::new(energy, v0, 2.0, 2.0 + 0.2 + 2.0 * rng.next_f64()).unwrap()
        };
        let sol = rect_barrier::solve(&spec).unwrap();
        let x_tilde = spec.x_left - (0.3 + 1.5 * rng.next_f64());
        if !region1_probe_is_clear(&spec, &sol, x_tilde) {
            continue;
        }
        compared += 1;
        let closed = rect_barrier::qtt_region_i(&spec, &sol, x_tilde, Method::ClosedForm)
            .unwrap()
            .time;
        let quad = rect_barrier::qtt_region_i(&spec, &sol, x_tilde, Method::Quadrature)
            .unwrap()
            .time;
        worst_r1 = worst_r1.max((closed - quad).abs() / quad.abs().max(1e-6));
    }
    checks.push(Check::against(
        "region1_route_agreement",
        worst_r1,
        1e-6,
        "closed form vs quadrature, 50 random probes away from branch points".into(),
    ));

    // Region-II linear term and the exponential-term route ratio.
    let mut worst_linear = 0.0f64;
    let mut ratios = Vec::new();
    for i in 0..5 {
        for j in 0..5 {
            let v0 = 2.0 + 1.5 * i as f64;
            let w = 0.4 + 0.5 * j as f64;
            let spec = BarrierSpec::new(1.0, v0, 0.0, w).unwrap();
            let sol = rect_barrier::solve(&spec).unwrap();
            let j_forward = rect_barrier::forward_current(&spec, &sol, 0.5 * w);
            let constant_density = 2.0 * sol.c.norm() * sol.d.norm() * sol.phi_cd.cos();
            let linear_quad = constant_density / j_forward * w;
            worst_linear =
                worst_linear.max((linear_quad - rect_barrier::region_ii_linear_term(&spec)).abs());
            let quad = rect_barrier::qtt_region_ii(&spec, &sol, Method::Quadrature)
                .unwrap()
                .time;
            let quad_exp = quad - rect_barrier::region_ii_linear_term(&spec);
            ratios.push(rect_barrier::region_ii_exponential_term(&spec) / quad_exp);
        }
    }
    checks.push(Check::against(
        "region2_linear_term",
        worst_linear,
        1e-10,
        "closed-form linear term vs term-wise integration".into(),
    ));
    let mean_ratio = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let spread = ratios
        .iter()
        .map(|r| (r - mean_ratio).abs())
        .fold(0.0f64, f64::max);
    checks.push(Check::against(
        "region2_exponential_ratio_stability",
        spread,
        1e-6,
        format!(
            "closed/quadrature exponential-term ratio = {mean_ratio:.12} (documented route discrepancy), max spread over 5×5 grid"
        ),
    ));

    // Dwell-time plateau.
    let w = 20.0 / (2.0f64).sqrt();
    let spec = BarrierSpec::new(1.0, 2.0, 0.0, w).unwrap();
    let sol = rect_barrier::solve(&spec).unwrap();
    let dwell = rect_barrier::dwell_time(&spec, &sol).unwrap();
    checks.push(Check::against(
        "dwell_asymptote",
        (dwell - 0.5).abs() / 0.5,
        0.01,
        format!("dwell time {dwell:.6} vs opaque-barrier plateau 0.5"),
    ));

    // Unit round trip.
    let round_trip = convert(
        convert(Quantity::new(1.0, Unit::AtomicTime), Unit::Attosecond).unwrap(),
        Unit::AtomicTime,
    )
    .unwrap()
    .value;
    checks.push(Check::against(
        "unit_round_trip",
        (round_trip - 1.0).abs(),
        1e-12,
        "a.u. → as → a.u.".into(),
    ));

    // Turning points against the tabulated references.
    let references = [
        (Atom::He, 1.08e14, [1.5358, 6.2307, 42.0210]),
        (Atom::Ar, 1.08e14, [4.2036, 8.5492, 25.9824]),
        (Atom::Kr, 1.08e14, [5.0274, 9.1864, 22.7422]),
        (Atom::He, 6.12e14, [1.5477, 4.3271, 17.2830]),
        (Atom::Ar, 6.12e14, [4.2493, 6.3563, 10.5383]),
        (Atom::Kr, 6.12e14, [5.2817, 6.8643, 9.2879]),
    ];
    let mut worst_tp = 0.0f64;
    for (atom, intensity, expected) in references {
        let model = EffectiveModel::for_laser(atom, &LaserSpec::new(intensity).unwrap());
        let geom = wkb::locate_barrier(&model).unwrap();
        for (got, want) in [geom.eta_left, geom.eta_peak, geom.eta_right]
            .into_iter()
            .zip(expected)
        {
            worst_tp = worst_tp.max((got - want).abs() / want);
        }
    }
    checks.push(Check::against(
        "turning_points",
        worst_tp,
        1e-3,
        "max relative deviation over 6 (atom, intensity) pairs".into(),
    ));

    // Kr tunneling times.
    let mut worst_kr = 0.0f64;
    for (intensity, reference) in [(1.08e14, 133.0), (1.7e14, 116.0), (6.12e14, 68.0)] {
        let model = EffectiveModel::for_laser(Atom::Kr, &LaserSpec::new(intensity).unwrap());
        let geom = wkb::locate_barrier(&model).unwrap();
        let t_as = au_time_to_attoseconds(wkb::qtt_tunneling(&model, &geom).unwrap());
        worst_kr = worst_kr.max((t_as - reference).abs());
    }
    checks.push(Check::against(
        "krypton_times",
        worst_kr,
        5.0,
        "max |computed − reference| over 133/116/68 as (attoseconds)".into(),
    ));

    checks
}

/// True when neither endpoint of the region-I probe sits near a tangent
/// branch point and no branch is crossed in between.
pub fn region1_probe_is_clear(
    spec: &BarrierSpec,
    sol: &rect_barrier::ScatteringSolution,
    x_tilde: f64,
) -> bool {
    let psi = |x: f64| spec.k() * x + 0.5 * sol.phi_ab;
    let branch = |p: f64| ((p / std::f64::consts::PI) + 0.5).floor();
    let clearance = |p: f64| {
        let local = p - branch(p) * std::f64::consts::PI;
        (std::f64::consts::FRAC_PI_2 - local.abs()).abs()
    };
    clearance(psi(x_tilde)) > 1e-3 && clearance(psi(spec.x_left)) > 1e-3
}

/// Render checks as one line each; returns true when everything passed.
pub fn print_report(checks: &[Check]) -> bool {
    let mut all_ok = true;
    for c in checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        println!(
            "{tag} {name:<38} measured={measured:.3e} threshold={threshold:.3e}  {note}",
            name = c.name,
            measured = c.measured,
            threshold = c.threshold,
            note = c.note
        );
        all_ok &= c.passed;
    }
    all_ok
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_suite_passes() {
        let checks = run_all();
        for c in &checks {
            assert!(
                c.passed,
                "{} failed: measured {} > {}",
                c.name, c.measured, c.threshold
            );
        }
    }
}
