//! C ABI over the `spinrot` closed forms and momentum quadrature.
//!
//! Parameters live behind an opaque [`SpinrotParams`] handle. Every call
//! returns a [`SpinrotStatus`]; on failure the message is kept per thread
//! and read back with [`spinrot_last_error`]. Vectors cross the boundary as
//! pointers to three `double`s. Panics never unwind into C.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use spinrot::densities::{self as dens, DensityError, Dimension, Distribution, Drive, Integrand, Kind, QuadOptions};
use spinrot::{ModelError, ParamSet, Vec3};

/// Result of every call. `SPINROT_STATUS_OK` is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinrotStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParams = 2,
    UnknownField = 3,
    /// fields or spin axis not in the geometry the closed form needs
    Geometry = 4,
    /// quadrature stopped short of its tolerance
    Tolerance = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinrotDimension {
    Planar = 2,
    Bulk = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinrotQuantity {
    SpinDensity = 0,
    EquilibriumCurrent = 1,
    CollisionCurrent = 2,
}

/// Opaque parameter set. Create with [`spinrot_params_new`], release with
/// [`spinrot_params_free`].
pub struct SpinrotParams(ParamSet);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(SpinrotStatus, String);

impl From<DensityError> for Fail {
    fn from(e: DensityError) -> Self {
        let s = match e {
            DensityError::Model(_) => SpinrotStatus::InvalidParams,
            DensityError::Tolerance { .. } => SpinrotStatus::Tolerance,
            DensityError::NotParallel
            | DensityError::NotAlongZ(_)
            | DensityError::AxisNotUnit(_)
            | DensityError::GridTooCoarse { .. } => SpinrotStatus::Geometry,
        };
        Fail(s, e.to_string())
    }
}

impl From<ModelError> for Fail {
    fn from(e: ModelError) -> Self {
        Fail(SpinrotStatus::InvalidParams, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(SpinrotStatus::NullPointer, format!("`{what}` is null"))
}

/// Run `f`, turning errors and panics into a status plus last-error text.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SpinrotStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            clear_error();
            SpinrotStatus::Ok
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            SpinrotStatus::Panic
        }
    }
}

/// # Safety
/// `h` is null or a live handle from [`spinrot_params_new`].
unsafe fn params<'a>(h: *const SpinrotParams) -> Result<&'a ParamSet, Fail> {
    h.as_ref().map(|p| &p.0).ok_or_else(|| null("params"))
}

/// # Safety
/// `v` is null or points to three readable doubles.
unsafe fn read3(v: *const f64, what: &str) -> Result<Vec3, Fail> {
    if v.is_null() {
        return Err(null(what));
    }
    let s = std::slice::from_raw_parts(v, 3);
    Ok(Vec3::new(s[0], s[1], s[2]))
}

/// # Safety
/// `out` is null or points to three writable doubles.
unsafe fn write3(out: *mut f64, v: &Vec3, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    std::slice::from_raw_parts_mut(out, 3).copy_from_slice(v.as_slice());
    Ok(())
}

/// # Safety
/// `out` is null or points to a writable double.
unsafe fn write1(out: *mut f64, v: f64) -> Result<(), Fail> {
    out.as_mut().map(|o| *o = v).ok_or_else(|| null("out"))
}

/// Validated parameters.
unsafe fn valid<'a>(h: *const SpinrotParams) -> Result<&'a ParamSet, Fail> {
    let p = params(h)?;
    p.validate()?;
    Ok(p)
}

// ------------------------------------------------------------ handle

/// New handle holding the defaults `m = 1, q = 1, hbar = 1, mu = 2, tau = 1`,
/// zero fields. Never null.
#[no_mangle]
pub extern "C" fn spinrot_params_new() -> *mut SpinrotParams {
    Box::into_raw(Box::new(SpinrotParams(ParamSet::default())))
}

/// Independent copy of `h`; null if `h` is null.
///
/// # Safety
/// `h` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spinrot_params_clone(h: *const SpinrotParams) -> *mut SpinrotParams {
    match h.as_ref() {
        Some(p) => Box::into_raw(Box::new(SpinrotParams(p.0.clone()))),
        None => std::ptr::null_mut(),
    }
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `h` is null or a live handle not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn spinrot_params_free(h: *mut SpinrotParams) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Set a scalar field by name: `m`, `q`, `hbar`, `mu`, `mu_over_m`, `tau`,
/// `temperature`, `radius`, or a component such as `b_z`, `omega_x`,
/// `e_y`, `x_x`. Natural units with `c = 1`.
///
/// # Safety
/// `h` is null or a live handle; `name` is null or a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn spinrot_params_set(h: *mut SpinrotParams, name: *const c_char, value: f64) -> SpinrotStatus {
    guard(|| {
        let p = h.as_mut().ok_or_else(|| null("params"))?;
        if name.is_null() {
            return Err(null("name"));
        }
        let name = CStr::from_ptr(name).to_string_lossy();
        if p.0.set_scalar(&name, value) {
            Ok(())
        } else {
            Err(Fail(SpinrotStatus::UnknownField, format!("unknown field `{name}`")))
        }
    })
}

/// Read back a scalar field by name.
///
/// # Safety
/// As [`spinrot_params_set`]; `out` points to a writable double.
#[no_mangle]
pub unsafe extern "C" fn spinrot_params_get(h: *const SpinrotParams, name: *const c_char, out: *mut f64) -> SpinrotStatus {
    guard(|| {
        let p = params(h)?;
        if name.is_null() {
            return Err(null("name"));
        }
        let name = CStr::from_ptr(name).to_string_lossy();
        let v = p
            .get_scalar(&name)
            .ok_or_else(|| Fail(SpinrotStatus::UnknownField, format!("unknown field `{name}`")))?;
        write1(out, v)
    })
}

/// Check the parameters without computing anything.
///
/// # Safety
/// `h` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spinrot_params_validate(h: *const SpinrotParams) -> SpinrotStatus {
    guard(|| valid(h).map(|_| ()))
}

// ------------------------------------------------------------ errors

/// Copy the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length plus one, or 0 when
/// the last call succeeded.
///
/// # Safety
/// `buf` is null or points to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn spinrot_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len);
            std::ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n - 1) = 0;
        }
        bytes.len()
    })
}

// ------------------------------------------------------------ planar

/// Spin Hall conductivity `-q (mu - m)/(4 pi mu)`.
///
/// # Safety
/// `h` is a live handle, `out` a writable double.
#[no_mangle]
pub unsafe extern "C" fn spinrot_sigma_sh(h: *const SpinrotParams, out: *mut f64) -> SpinrotStatus {
    guard(|| write1(out, dens::sigma_sh(valid(h)?)))
}

/// Collision correction to the spin Hall conductivity.
///
/// # Safety
/// As [`spinrot_sigma_sh`].
#[no_mangle]
pub unsafe extern "C" fn spinrot_sigma_sh1(h: *const SpinrotParams, out: *mut f64) -> SpinrotStatus {
    guard(|| write1(out, dens::sigma_sh1(valid(h)?)))
}

/// Planar spin density along `z`. `B` and `Omega` must point along `z`.
///
/// # Safety
/// As [`spinrot_sigma_sh`].
#[no_mangle]
pub unsafe extern "C" fn spinrot_spin_density_2d(h: *const SpinrotParams, out: *mut f64) -> SpinrotStatus {
    guard(|| write1(out, dens::spin_density_2d(valid(h)?)?))
}

/// Planar equilibrium and collision spin currents (spin along `z`).
///
/// # Safety
/// `grad_mu` points to three doubles; `j_eq`, `j_neq` to three writable
/// doubles each.
#[no_mangle]
pub unsafe extern "C" fn spinrot_spin_current_2d(
    h: *const SpinrotParams,
    grad_mu: *const f64,
    j_eq: *mut f64,
    j_neq: *mut f64,
) -> SpinrotStatus {
    guard(|| {
        let p = valid(h)?;
        let gm = read3(grad_mu, "grad_mu")?;
        write3(j_eq, &dens::spin_current_2d_eq(p)?, "j_eq")?;
        write3(j_neq, &dens::spin_current_2d_noneq(p, &gm)?, "j_neq")
    })
}

/// Consistency coefficient of the planar spin constraint.
///
/// # Safety
/// As [`spinrot_sigma_sh`].
#[no_mangle]
pub unsafe extern "C" fn spinrot_consistency_2d(h: *const SpinrotParams, out: *mut f64) -> SpinrotStatus {
    guard(|| write1(out, dens::consistency_coefficient_2d(valid(h)?)?))
}

// ------------------------------------------------------------ bulk

/// Bulk spin density along the unit vector `axis`; needs `B` parallel to
/// `Omega`.
///
/// # Safety
/// `axis` points to three doubles, `out` to a writable double.
#[no_mangle]
pub unsafe extern "C" fn spinrot_spin_density_3d(h: *const SpinrotParams, axis: *const f64, out: *mut f64) -> SpinrotStatus {
    guard(|| {
        let p = valid(h)?;
        write1(out, dens::spin_density_3d(p, &read3(axis, "axis")?)?)
    })
}

/// Bulk equilibrium and collision spin currents for spin along `axis`.
///
/// # Safety
/// As [`spinrot_spin_current_2d`], plus `axis` pointing to three doubles.
#[no_mangle]
pub unsafe extern "C" fn spinrot_spin_current_3d(
    h: *const SpinrotParams,
    axis: *const f64,
    grad_mu: *const f64,
    j_eq: *mut f64,
    j_neq: *mut f64,
) -> SpinrotStatus {
    guard(|| {
        let p = valid(h)?;
        let a = read3(axis, "axis")?;
        let gm = read3(grad_mu, "grad_mu")?;
        write3(j_eq, &dens::spin_current_3d_eq(p, &a)?, "j_eq")?;
        write3(j_neq, &dens::spin_current_3d_noneq(p, &a, &gm)?, "j_neq")
    })
}

/// Bulk perpendicular spin Hall conductivity.
///
/// # Safety
/// As [`spinrot_sigma_sh`].
#[no_mangle]
pub unsafe extern "C" fn spinrot_sigma_perp_3d(h: *const SpinrotParams, out: *mut f64) -> SpinrotStatus {
    guard(|| write1(out, dens::sigma_perp_3d(valid(h)?)))
}

/// Consistency coefficient of the bulk spin constraint along `axis`.
///
/// # Safety
/// As [`spinrot_spin_density_3d`].
#[no_mangle]
pub unsafe extern "C" fn spinrot_consistency_3d(h: *const SpinrotParams, axis: *const f64, out: *mut f64) -> SpinrotStatus {
    guard(|| {
        let p = valid(h)?;
        write1(out, dens::consistency_coefficient_3d(p, &read3(axis, "axis")?)?)
    })
}

// ------------------------------------------------------------ quadrature

/// Direct momentum-space quadrature of a spin density (written to
/// `value[0]`) or spin current (all of `value`) at occupation temperature
/// `temperature` (0 for a sharp Fermi surface). `error` receives the
/// estimated absolute error and may be null. Returns
/// `SPINROT_STATUS_TOLERANCE` when the integral did not converge; `value`
/// then still holds the last estimate. `dimension` and `quantity` take the
/// `SpinrotDimension` and `SpinrotQuantity` values.
///
/// # Safety
/// `axis` and `grad_mu` point to three doubles, `value` to three writable
/// doubles, `error` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn spinrot_quadrature(
    h: *const SpinrotParams,
    dimension: i32,
    quantity: i32,
    axis: *const f64,
    grad_mu: *const f64,
    temperature: f64,
    value: *mut f64,
    error: *mut f64,
) -> SpinrotStatus {
    guard(|| {
        let p = valid(h)?;
        let a = read3(axis, "axis")?;
        let gm = read3(grad_mu, "grad_mu")?;
        if !(temperature >= 0.0 && temperature.is_finite()) {
            return Err(Fail(SpinrotStatus::InvalidParams, format!("temperature {temperature} must be finite and >= 0")));
        }
        let dim = match dimension {
            d if d == SpinrotDimension::Planar as i32 => Dimension::Two,
            d if d == SpinrotDimension::Bulk as i32 => Dimension::Three,
            d => return Err(Fail(SpinrotStatus::InvalidParams, format!("unknown dimension {d}"))),
        };
        let (kind, dist) = match quantity {
            q if q == SpinrotQuantity::SpinDensity as i32 => (Kind::Density, Distribution::F0),
            q if q == SpinrotQuantity::EquilibriumCurrent as i32 => (Kind::Current, Distribution::F0),
            q if q == SpinrotQuantity::CollisionCurrent as i32 => (Kind::Current, Distribution::F1),
            q => return Err(Fail(SpinrotStatus::InvalidParams, format!("unknown quantity {q}"))),
        };
        let ig = Integrand::spin(kind, dist, dim, a);
        let r = dens::quad_density(&ig, p, &Drive { grad_mu: gm, dmu_dt: 0.0 }, temperature, &QuadOptions::default());
        let (v, err) = match &r {
            Ok(q) => (q.value, q.error),
            Err(DensityError::Tolerance { value, error, .. }) => (Vec3::from(*value), *error),
            Err(_) => (Vec3::zeros(), f64::NAN),
        };
        if r.is_ok() || matches!(r, Err(DensityError::Tolerance { .. })) {
            write3(value, &v, "value")?;
            if let Some(e) = error.as_mut() {
                *e = err;
            }
        }
        r.map(|_| ()).map_err(Fail::from)
    })
}
