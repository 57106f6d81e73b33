#ifndef SPINROT_H
#define SPINROT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result of every call. `SPINROT_STATUS_OK` is zero.
 */
typedef enum SpinrotStatus {
  SPINROT_STATUS_OK = 0,
  SPINROT_STATUS_NULL_POINTER = 1,
  SPINROT_STATUS_INVALID_PARAMS = 2,
  SPINROT_STATUS_UNKNOWN_FIELD = 3,
  /*
   fields or spin axis not in the geometry the closed form needs
   */
  SPINROT_STATUS_GEOMETRY = 4,
  /*
   quadrature stopped short of its tolerance
   */
  SPINROT_STATUS_TOLERANCE = 5,
  SPINROT_STATUS_PANIC = 6,
} SpinrotStatus;

typedef enum SpinrotDimension {
  SPINROT_DIMENSION_PLANAR = 2,
  SPINROT_DIMENSION_BULK = 3,
} SpinrotDimension;

typedef enum SpinrotQuantity {
  SPINROT_QUANTITY_SPIN_DENSITY = 0,
  SPINROT_QUANTITY_EQUILIBRIUM_CURRENT = 1,
  SPINROT_QUANTITY_COLLISION_CURRENT = 2,
} SpinrotQuantity;

/*
 Opaque parameter set. Create with [`spinrot_params_new`], release with
 [`spinrot_params_free`].
 */
typedef struct SpinrotParams SpinrotParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 New handle holding the defaults `m = 1, q = 1, hbar = 1, mu = 2, tau = 1`,
 zero fields. Never null.
 */
struct SpinrotParams *spinrot_params_new(void);

/*
 Independent copy of `h`; null if `h` is null.

 # Safety
 `h` is null or a live handle.
 */
struct SpinrotParams *spinrot_params_clone(const struct SpinrotParams *h);

/*
 Release a handle. Null is ignored.

 # Safety
 `h` is null or a live handle not used afterwards.
 */
void spinrot_params_free(struct SpinrotParams *h);

/*
 Set a scalar field by name: `m`, `q`, `hbar`, `mu`, `mu_over_m`, `tau`,
 `temperature`, `radius`, or a component such as `b_z`, `omega_x`,
 `e_y`, `x_x`. Natural units with `c = 1`.

 # Safety
 `h` is null or a live handle; `name` is null or a NUL-terminated string.
 */
enum SpinrotStatus spinrot_params_set(struct SpinrotParams *h, const char *name, double value);

/*
 Read back a scalar field by name.

 # Safety
 As [`spinrot_params_set`]; `out` points to a writable double.
 */
enum SpinrotStatus spinrot_params_get(const struct SpinrotParams *h, const char *name, double *out);

/*
 Check the parameters without computing anything.

 # Safety
 `h` is null or a live handle.
 */
enum SpinrotStatus spinrot_params_validate(const struct SpinrotParams *h);

/*
 Copy the calling thread's last error message into `buf` (NUL-terminated,
 truncated to `len`). Returns the full message length plus one, or 0 when
 the last call succeeded.

 # Safety
 `buf` is null or points to `len` writable bytes.
 */
size_t spinrot_last_error(char *buf, size_t len);

/*
 Spin Hall conductivity `-q (mu - m)/(4 pi mu)`.

 # Safety
 `h` is a live handle, `out` a writable double.
 */
enum SpinrotStatus spinrot_sigma_sh(const struct SpinrotParams *h, double *out);

/*
 Collision correction to the spin Hall conductivity.

 # Safety
 As [`spinrot_sigma_sh`].
 */
enum SpinrotStatus spinrot_sigma_sh1(const struct SpinrotParams *h, double *out);

/*
 Planar spin density along `z`. `B` and `Omega` must point along `z`.

 # Safety
 As [`spinrot_sigma_sh`].
 */
enum SpinrotStatus spinrot_spin_density_2d(const struct SpinrotParams *h, double *out);

/*
 Planar equilibrium and collision spin currents (spin along `z`).

 # Safety
 `grad_mu` points to three doubles; `j_eq`, `j_neq` to three writable
 doubles each.
 */
enum SpinrotStatus spinrot_spin_current_2d(const struct SpinrotParams *h,
                                           const double *grad_mu,
                                           double *j_eq,
                                           double *j_neq);

/*
 Consistency coefficient of the planar spin constraint.

 # Safety
 As [`spinrot_sigma_sh`].
 */
enum SpinrotStatus spinrot_consistency_2d(const struct SpinrotParams *h, double *out);

/*
 Bulk spin density along the unit vector `axis`; needs `B` parallel to
 `Omega`.

 # Safety
 `axis` points to three doubles, `out` to a writable double.
 */
enum SpinrotStatus spinrot_spin_density_3d(const struct SpinrotParams *h,
                                           const double *axis,
                                           double *out);

/*
 Bulk equilibrium and collision spin currents for spin along `axis`.

 # Safety
 As [`spinrot_spin_current_2d`], plus `axis` pointing to three doubles.
 */
enum SpinrotStatus spinrot_spin_current_3d(const struct SpinrotParams *h,
                                           const double *axis,
                                           const double *grad_mu,
                                           double *j_eq,
                                           double *j_neq);

/*
 Bulk perpendicular spin Hall conductivity.

 # Safety
 As [`spinrot_sigma_sh`].
 */
enum SpinrotStatus spinrot_sigma_perp_3d(const struct SpinrotParams *h, double *out);

/*
 Consistency coefficient of the bulk spin constraint along `axis`.

 # Safety
 As [`spinrot_spin_density_3d`].
 */
enum SpinrotStatus spinrot_consistency_3d(const struct SpinrotParams *h,
                                          const double *axis,
                                          double *out);

/*
 Direct momentum-space quadrature of a spin density (written to
 `value[0]`) or spin current (all of `value`) at occupation temperature
 `temperature` (0 for a sharp Fermi surface). `error` receives the
 estimated absolute error and may be null. Returns
 `SPINROT_STATUS_TOLERANCE` when the integral did not converge; `value`
 then still holds the last estimate. `dimension` and `quantity` take the
 `SpinrotDimension` and `SpinrotQuantity` values.

 # Safety
 `axis` and `grad_mu` point to three doubles, `value` to three writable
 doubles, `error` is null or writable.
 */
enum SpinrotStatus spinrot_quadrature(const struct SpinrotParams *h,
                                      int32_t dimension,
                                      int32_t quantity,
                                      const double *axis,
                                      const double *grad_mu,
                                      double temperature,
                                      double *value,
                                      double *error);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPINROT_H */
