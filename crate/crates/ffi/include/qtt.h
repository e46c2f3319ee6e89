/* C ABI for the quantum travel time library (libqtt_ffi).
 *
 * Conventions:
 *   - every function returns a QttStatus; outputs go through out-pointers;
 *   - null out-pointers are tolerated where a value is optional and are an
 *     error where it is the sole result;
 *   - QttBarrier is an opaque handle created by qtt_barrier_new() and
 *     released by qtt_barrier_free();
 *   - rectangular-barrier quantities are in natural units (hbar = m = 1);
 *     atomic travel times are returned in attoseconds.
 */

#ifndef QTT_H
#define QTT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum QttStatus {
  QTT_STATUS_OK = 0,
  QTT_STATUS_INVALID_ARGUMENT = 1,
  QTT_STATUS_DEGENERATE_INPUT = 2,
  QTT_STATUS_NO_BARRIER = 3,
  QTT_STATUS_BRACKET_FAILURE = 4,
  QTT_STATUS_NON_CONVERGENCE = 5,
  QTT_STATUS_BRANCH_DIVERGENCE = 6,
  QTT_STATUS_INTERNAL_ERROR = 7,
} QttStatus;

typedef enum QttAtom {
  QTT_ATOM_HE = 0,
  QTT_ATOM_AR = 1,
  QTT_ATOM_KR = 2,
} QttAtom;

typedef struct QttRectSolution {
  double reflection;
  double transmission;
  double phi_ab;
  double phi_cd;
} QttRectSolution;

/* Opaque. */
typedef struct QttBarrier QttBarrier;

/* Rectangular barrier: stationary scattering with unit transmitted flux. */
QttStatus qtt_rect_solve(double energy, double height, double x_left,
                         double x_right, QttRectSolution *out);

/* Travel time across the barrier; use_quadrature != 0 selects the
 * density/current quadrature route instead of the closed form. */
QttStatus qtt_rect_region2_time(double energy, double height, double x_left,
                                double x_right, int32_t use_quadrature,
                                double *out_time);

/* Smith dwell time (stored probability over incident flux). */
QttStatus qtt_rect_dwell_time(double energy, double height, double x_left,
                              double x_right, double *out_time);

/* Atomic tunneling: He/Ar/Kr in an elliptically polarized field of the
 * given peak intensity in W/cm^2 (ellipticity 0.85, the library default). */
QttStatus qtt_barrier_new(QttAtom atom, double intensity_wcm2,
                          QttBarrier **out_handle);

void qtt_barrier_free(QttBarrier *handle);

/* Turning points eta_L, eta_R, the potential peak eta_I, and the
 * accumulated barrier phase chi. Any out-pointer may be null. */
QttStatus qtt_barrier_geometry(const QttBarrier *handle, double *out_eta_left,
                               double *out_eta_peak, double *out_eta_right,
                               double *out_chi);

/* Tunneling travel time eta_I -> eta_R, attoseconds. */
QttStatus qtt_barrier_tunneling_time_as(const QttBarrier *handle,
                                        double *out_time_as);

/* Continuum travel time eta_R -> eta_tilde, attoseconds. */
QttStatus qtt_barrier_continuum_time_as(const QttBarrier *handle,
                                        double eta_tilde, double *out_time_as);

/* Travel time from eta_I to an arbitrary exit point (either side of
 * eta_R), attoseconds. */
QttStatus qtt_barrier_time_to_exit_as(const QttBarrier *handle,
                                      double exit_eta, double *out_time_as);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QTT_H */
