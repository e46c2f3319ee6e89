//! C ABI over the travel-time library.
//!
//! Conventions: every function returns a [`QttStatus`]; results come back
//! through out-pointers; the atomic-barrier state lives behind an opaque
//! handle created by [`qtt_barrier_new`] and released by
//! [`qtt_barrier_free`]. The matching declarations are committed in
//! `include/qtt.h`.

use qtt_core::atomic::{Atom, EffectiveModel, LaserSpec};
use qtt_core::numerics::NumericsError;
use qtt_core::rect_barrier::{self, BarrierSpec, Method, RectBarrierError};
use qtt_core::units::au_time_to_attoseconds;
use qtt_core::wkb::{self, BarrierGeometry, WkbError};

/// Status codes shared with the C header.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QttStatus {
    Ok = 0,
    InvalidArgument = 1,
    DegenerateInput = 2,
    NoBarrier = 3,
    BracketFailure = 4,
    NonConvergence = 5,
    BranchDivergence = 6,
    InternalError = 7,
}

impl From<&RectBarrierError> for QttStatus {
    fn from(err: &RectBarrierError) -> Self {
        match err {
            RectBarrierError::DegenerateInput => QttStatus::DegenerateInput,
            RectBarrierError::InvalidSpec(_) => QttStatus::InvalidArgument,
            RectBarrierError::BranchDivergence => QttStatus::BranchDivergence,
            RectBarrierError::Numerics(e) => e.into(),
        }
    }
}

impl From<&NumericsError> for QttStatus {
    fn from(err: &NumericsError) -> Self {
        match err {
            NumericsError::NonConvergence { .. } | NumericsError::MaxIterations(_) => {
                QttStatus::NonConvergence
            }
            NumericsError::NoSignChange { .. } | NumericsError::NotUnimodal { .. } => {
                QttStatus::BracketFailure
            }
            NumericsError::NonFiniteSample { .. } | NumericsError::InvalidBracket { .. } => {
                QttStatus::InvalidArgument
            }
        }
    }
}

impl From<&WkbError> for QttStatus {
    fn from(err: &WkbError) -> Self {
        match err {
            WkbError::NoBarrier => QttStatus::NoBarrier,
            WkbError::RootBracketFailure(_) => QttStatus::BracketFailure,
            WkbError::InvalidInput(_) => QttStatus::InvalidArgument,
            WkbError::Numerics(e) => e.into(),
        }
    }
}

/// Atom codes shared with the C header.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QttAtom {
    He = 0,
    Ar = 1,
    Kr = 2,
}

impl From<QttAtom> for Atom {
    fn from(atom: QttAtom) -> Atom {
        match atom {
            QttAtom::He => Atom::He,
            QttAtom::Ar => Atom::Ar,
            QttAtom::Kr => Atom::Kr,
        }
    }
}

/// Scattering summary for the rectangular barrier.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct QttRectSolution {
    pub reflection: f64,
    pub transmission: f64,
    pub phi_ab: f64,
    pub phi_cd: f64,
}

/// Opaque: an atom in a static field with its located barrier.
pub struct QttBarrier {
    model: EffectiveModel,
    geometry: BarrierGeometry,
}

fn rect_spec(
    energy: f64,
    height: f64,
    x_left: f64,
    x_right: f64,
) -> Result<BarrierSpec, QttStatus> {
    BarrierSpec::new(energy, height, x_left, x_right).map_err(|e| QttStatus::from(&e))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> QttStatus {
    if out.is_null() {
        return QttStatus::InvalidArgument;
    }
    unsafe { out.write(value) };
    QttStatus::Ok
}

/// Solve the rectangular-barrier scattering problem.
///
/// # Safety
/// `out` must be null or point to writable memory for one `QttRectSolution`.
#[no_mangle]
pub unsafe extern "C" fn qtt_rect_solve(
    energy: f64,
    height: f64,
    x_left: f64,
    x_right: f64,
    out: *mut QttRectSolution,
) -> QttStatus {
    let spec = match rect_spec(energy, height, x_left, x_right) {
        Ok(s) => s,
        Err(status) => return status,
    };
    match rect_barrier::solve(&spec) {
        Ok(sol) => unsafe {
            write_out(
                out,
                QttRectSolution {
                    reflection: sol.reflection,
                    transmission: sol.transmission,
                    phi_ab: sol.phi_ab,
                    phi_cd: sol.phi_cd,
                },
            )
        },
        Err(e) => QttStatus::from(&e),
    }
}

/// Travel time across the barrier (region II), closed form or quadrature
/// (`use_quadrature` ≠ 0), in the barrier's own time units (ħ = m = 1).
///
/// # Safety
/// `out_time` must be null or point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn qtt_rect_region2_time(
    energy: f64,
    height: f64,
    x_left: f64,
    x_right: f64,
    use_quadrature: i32,
    out_time: *mut f64,
) -> QttStatus {
    let spec = match rect_spec(energy, height, x_left, x_right) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let method = if use_quadrature != 0 {
        Method::Quadrature
    } else {
        Method::ClosedForm
    };
    let result =
        rect_barrier::solve(&spec).and_then(|sol| rect_barrier::qtt_region_ii(&spec, &sol, method));
    match result {
        Ok(t) => unsafe { write_out(out_time, t.time) },
        Err(e) => QttStatus::from(&e),
    }
}

/// Smith dwell time of the barrier.
///
/// # Safety
/// `out_time` must be null or point to a writable f64.
#[no_mangle]
pub unsafe extern "C" fn qtt_rect_dwell_time(
    energy: f64,
    height: f64,
    x_left: f64,
    x_right: f64,
    out_time: *mut f64,
) -> QttStatus {
    let spec = match rect_spec(energy, height, x_left, x_right) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let result = rect_barrier::solve(&spec).and_then(|sol| rect_barrier::dwell_time(&spec, &sol));
    match result {
        Ok(t) => unsafe { write_out(out_time, t) },
        Err(e) => QttStatus::from(&e),
    }
}

/// Locate the tunneling barrier for `atom` in a laser of the given peak
/// intensity (W/cm², default ellipticity 0.85). On success `*out_handle`
/// owns the state and must be released with [`qtt_barrier_free`].
///
/// # Safety
/// `out_handle` must point to a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn qtt_barrier_new(
    atom: QttAtom,
    intensity_wcm2: f64,
    out_handle: *mut *mut QttBarrier,
) -> QttStatus {
    if out_handle.is_null() {
        return QttStatus::InvalidArgument;
    }
    let laser = match LaserSpec::new(intensity_wcm2) {
        Ok(l) => l,
        Err(_) => return QttStatus::InvalidArgument,
    };
    let model = EffectiveModel::for_laser(atom.into(), &laser);
    match wkb::locate_barrier(&model) {
        Ok(geometry) => {
            let boxed = Box::new(QttBarrier { model, geometry });
            unsafe { out_handle.write(Box::into_raw(boxed)) };
            QttStatus::Ok
        }
        Err(e) => QttStatus::from(&e),
    }
}

/// Release a barrier handle. Null is a no-op.
///
/// # Safety
/// `handle` must be null or a pointer obtained from [`qtt_barrier_new`]
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn qtt_barrier_free(handle: *mut QttBarrier) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Barrier geometry: turning points, potential peak and accumulated phase.
///
/// # Safety
/// `handle` must be a live handle; out-pointers null or writable.
#[no_mangle]
pub unsafe extern "C" fn qtt_barrier_geometry(
    handle: *const QttBarrier,
    out_eta_left: *mut f64,
    out_eta_peak: *mut f64,
    out_eta_right: *mut f64,
    out_chi: *mut f64,
) -> QttStatus {
    let Some(barrier) = (unsafe { handle.as_ref() }) else {
        return QttStatus::InvalidArgument;
    };
    let g = &barrier.geometry;
    for (out, value) in [
        (out_eta_left, g.eta_left),
        (out_eta_peak, g.eta_peak),
        (out_eta_right, g.eta_right),
        (out_chi, g.chi),
    ] {
        if !out.is_null() {
            unsafe { out.write(value) };
        }
    }
    QttStatus::Ok
}

/// Tunneling travel time (η_I → η_R) in attoseconds.
///
/// # Safety
/// `handle` must be a live handle; `out_time_as` null or writable.
#[no_mangle]
pub unsafe extern "C" fn qtt_barrier_tunneling_time_as(
    handle: *const QttBarrier,
    out_time_as: *mut f64,
) -> QttStatus {
    let Some(barrier) = (unsafe { handle.as_ref() }) else {
        return QttStatus::InvalidArgument;
    };
    match wkb::qtt_tunneling(&barrier.model, &barrier.geometry) {
        Ok(t_au) => unsafe { write_out(out_time_as, au_time_to_attoseconds(t_au)) },
        Err(e) => QttStatus::from(&e),
    }
}

/// Continuum travel time (η_R → η̃) in attoseconds.
///
/// # Safety
/// `handle` must be a live handle; `out_time_as` null or writable.
#[no_mangle]
pub unsafe extern "C" fn qtt_barrier_continuum_time_as(
    handle: *const QttBarrier,
    eta_tilde: f64,
    out_time_as: *mut f64,
) -> QttStatus {
    let Some(barrier) = (unsafe { handle.as_ref() }) else {
        return QttStatus::InvalidArgument;
    };
    match wkb::qtt_continuum(&barrier.model, &barrier.geometry, eta_tilde) {
        Ok(t_au) => unsafe { write_out(out_time_as, au_time_to_attoseconds(t_au)) },
        Err(e) => QttStatus::from(&e),
    }
}

/// Travel time from η_I to an arbitrary exit point, in attoseconds.
///
/// # Safety
/// `handle` must be a live handle; `out_time_as` null or writable.
#[no_mangle]
pub unsafe extern "C" fn qtt_barrier_time_to_exit_as(
    handle: *const QttBarrier,
    exit_eta: f64,
    out_time_as: *mut f64,
) -> QttStatus {
    let Some(barrier) = (unsafe { handle.as_ref() }) else {
        return QttStatus::InvalidArgument;
    };
    match wkb::qtt_to_exit(&barrier.model, &barrier.geometry, exit_eta) {
        Ok(t_au) => unsafe { write_out(out_time_as, au_time_to_attoseconds(t_au)) },
        Err(e) => QttStatus::from(&e),
    }
}
