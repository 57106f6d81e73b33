//! The exported functions, driven as a C caller would.

use std::ffi::CString;
use std::process::Command;
use std::ptr;

use spinrot::densities as dens;
use spinrot::{ParamSet, Vec3};
use spinrot_ffi::*;

fn name(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let mut buf = vec![0 as std::ffi::c_char; 256];
    let n = unsafe { spinrot_last_error(buf.as_mut_ptr(), buf.len()) };
    assert!(n > 0);
    unsafe { std::ffi::CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

struct Handle(*mut SpinrotParams);

impl Handle {
    fn new(fields: &[(&str, f64)]) -> Self {
        let h = spinrot_params_new();
        for (k, v) in fields {
            assert_eq!(unsafe { spinrot_params_set(h, name(k).as_ptr(), *v) }, SpinrotStatus::Ok, "{k}");
        }
        Handle(h)
    }
}

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { spinrot_params_free(self.0) };
    }
}

const PLANAR: &[(&str, f64)] =
    &[("m", 0.8), ("q", -1.2), ("hbar", 0.6), ("mu", 1.9), ("tau", 1.3), ("b_z", 0.4), ("omega_z", -0.07), ("e_x", 0.2), ("x_y", 0.5)];

fn planar() -> ParamSet {
    ParamSet {
        m: 0.8,
        q: -1.2,
        hbar: 0.6,
        mu: 1.9,
        tau: 1.3,
        b_field: Vec3::z() * 0.4,
        omega: Vec3::z() * -0.07,
        e_field: Vec3::x() * 0.2,
        x: Vec3::y() * 0.5,
        ..ParamSet::default()
    }
}

#[test]
fn planar_values_match_library() {
    let h = Handle::new(PLANAR);
    let p = planar();
    let mut v = 0.0;
    unsafe {
        assert_eq!(spinrot_sigma_sh(h.0, &mut v), SpinrotStatus::Ok);
        assert_eq!(v, dens::sigma_sh(&p));
        assert_eq!(spinrot_sigma_sh1(h.0, &mut v), SpinrotStatus::Ok);
        assert_eq!(v, dens::sigma_sh1(&p));
        assert_eq!(spinrot_spin_density_2d(h.0, &mut v), SpinrotStatus::Ok);
        assert_eq!(v, dens::spin_density_2d(&p).unwrap());
        assert_eq!(spinrot_consistency_2d(h.0, &mut v), SpinrotStatus::Ok);
        assert_eq!(v, dens::consistency_coefficient_2d(&p).unwrap());
        let gm = [0.1, -0.05, 0.0];
        let (mut je, mut jn) = ([0.0; 3], [0.0; 3]);
        assert_eq!(spinrot_spin_current_2d(h.0, gm.as_ptr(), je.as_mut_ptr(), jn.as_mut_ptr()), SpinrotStatus::Ok);
        assert_eq!(Vec3::from(je), dens::spin_current_2d_eq(&p).unwrap());
        assert_eq!(Vec3::from(jn), dens::spin_current_2d_noneq(&p, &Vec3::from(gm)).unwrap());
    }
}

#[test]
fn bulk_values_and_quadrature() {
    let h = Handle::new(&[("mu", 2.4), ("b_x", 0.3), ("b_z", 0.4), ("omega_x", 0.06), ("omega_z", 0.08), ("e_y", 0.3)]);
    let axis = [0.0, 0.6, 0.8];
    let zero = [0.0; 3];
    let (mut n, mut je, mut jn) = (0.0, [0.0; 3], [0.0; 3]);
    unsafe {
        assert_eq!(spinrot_spin_density_3d(h.0, axis.as_ptr(), &mut n), SpinrotStatus::Ok);
        assert_eq!(spinrot_spin_current_3d(h.0, axis.as_ptr(), zero.as_ptr(), je.as_mut_ptr(), jn.as_mut_ptr()), SpinrotStatus::Ok);
        let (mut q, mut err) = ([0.0; 3], 0.0);
        let s = spinrot_quadrature(
            h.0,
            SpinrotDimension::Bulk as i32,
            SpinrotQuantity::SpinDensity as i32,
            axis.as_ptr(),
            zero.as_ptr(),
            0.0,
            q.as_mut_ptr(),
            &mut err,
        );
        assert_eq!(s, SpinrotStatus::Ok);
        assert!((q[0] - n).abs() < 1e-8 * n.abs());
        let s = spinrot_quadrature(
            h.0,
            SpinrotDimension::Bulk as i32,
            SpinrotQuantity::CollisionCurrent as i32,
            axis.as_ptr(),
            zero.as_ptr(),
            0.0,
            q.as_mut_ptr(),
            ptr::null_mut(),
        );
        assert_eq!(s, SpinrotStatus::Ok);
        assert!((Vec3::from(q) - Vec3::from(jn)).norm() < 1e-8 * Vec3::from(jn).norm());
        let mut s3 = 0.0;
        assert_eq!(spinrot_sigma_perp_3d(h.0, &mut s3), SpinrotStatus::Ok);
        assert!(s3 > 0.0);
        assert_eq!(spinrot_consistency_3d(h.0, axis.as_ptr(), &mut s3), SpinrotStatus::Ok);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let h = Handle::new(&[]);
    let mut v = 0.0;
    unsafe {
        assert_eq!(spinrot_sigma_sh(ptr::null(), &mut v), SpinrotStatus::NullPointer);
        assert!(last_error().contains("params"));
        assert_eq!(spinrot_sigma_sh(h.0, ptr::null_mut()), SpinrotStatus::NullPointer);
        assert_eq!(spinrot_params_set(h.0, name("colour").as_ptr(), 1.0), SpinrotStatus::UnknownField);
        assert!(last_error().contains("colour"));

        assert_eq!(spinrot_params_set(h.0, name("m").as_ptr(), -1.0), SpinrotStatus::Ok);
        assert_eq!(spinrot_params_validate(h.0), SpinrotStatus::InvalidParams);
        assert!(last_error().contains("mass"));
        assert_eq!(spinrot_sigma_sh(h.0, &mut v), SpinrotStatus::InvalidParams);
        assert_eq!(spinrot_params_set(h.0, name("m").as_ptr(), 1.0), SpinrotStatus::Ok);

        assert_eq!(spinrot_params_set(h.0, name("b_x").as_ptr(), 0.5), SpinrotStatus::Ok);
        assert_eq!(spinrot_spin_density_2d(h.0, &mut v), SpinrotStatus::Geometry);
        let axis = [1.0, 1.0, 0.0];
        assert_eq!(spinrot_spin_density_3d(h.0, axis.as_ptr(), &mut v), SpinrotStatus::Geometry);

        let zero = [0.0; 3];
        let mut q = [0.0; 3];
        let s = spinrot_quadrature(h.0, 7, 0, zero.as_ptr(), zero.as_ptr(), 0.0, q.as_mut_ptr(), ptr::null_mut());
        assert_eq!(s, SpinrotStatus::InvalidParams);
        assert!(last_error().contains("dimension"));

        // success clears the message
        assert_eq!(spinrot_sigma_sh1(h.0, &mut v), SpinrotStatus::Ok);
        assert_eq!(spinrot_last_error(ptr::null_mut(), 0), 0);
    }
}

#[test]
fn get_clone_and_truncation() {
    let h = Handle::new(&[("mu_over_m", 3.0), ("omega_y", 0.25)]);
    let mut v = 0.0;
    unsafe {
        assert_eq!(spinrot_params_get(h.0, name("mu").as_ptr(), &mut v), SpinrotStatus::Ok);
        assert_eq!(v, 3.0);
        assert_eq!(spinrot_params_get(h.0, name("omega_y").as_ptr(), &mut v), SpinrotStatus::Ok);
        assert_eq!(v, 0.25);
        let c = Handle(spinrot_params_clone(h.0));
        assert_eq!(spinrot_params_set(h.0, name("omega_y").as_ptr(), 1.0), SpinrotStatus::Ok);
        assert_eq!(spinrot_params_get(c.0, name("omega_y").as_ptr(), &mut v), SpinrotStatus::Ok);
        assert_eq!(v, 0.25);
        assert!(spinrot_params_clone(ptr::null()).is_null());
        spinrot_params_free(ptr::null_mut());

        assert_eq!(spinrot_params_get(h.0, name("nope").as_ptr(), &mut v), SpinrotStatus::UnknownField);
        let mut small = [0 as std::ffi::c_char; 4];
        let full = spinrot_last_error(small.as_mut_ptr(), small.len());
        assert!(full > 4);
        assert_eq!(small[3], 0);
    }
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/spinrot.h");
    let text = std::fs::read_to_string(header).unwrap();
    for f in ["spinrot_params_new", "spinrot_quadrature", "spinrot_last_error", "SPINROT_STATUS_TOLERANCE"] {
        assert!(text.contains(f), "{f}");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"spinrot.h\"\nint main(void) { SpinrotParams *h = spinrot_params_new(); double s; \
         int ok = spinrot_sigma_sh(h, &s) == SPINROT_STATUS_OK; spinrot_params_free(h); return !ok; }\n",
    )
    .unwrap();
    let inc = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    for (cc, extra) in [("cc", &["-std=c99"][..]), ("c++", &["-x", "c++"][..])] {
        let out = Command::new(cc).args(extra).args(["-fsyntax-only", "-Wall", "-Werror", "-I", inc]).arg(&src).output().unwrap();
        assert!(out.status.success(), "{cc}: {}", String::from_utf8_lossy(&out.stderr));
    }
}
