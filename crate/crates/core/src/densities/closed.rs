//! Zero-temperature closed forms for spin densities, spin currents and
//! conductivities.
//!
//! 2D results live in the `z = 0` plane with `B`, `Omega` along `z`; 3D
//! results need `B` parallel to `Omega` and are projected on a spin axis.
//! Notation: `k = sqrt(mu^2 - m^2)`, `L = ln((k + mu)/m)`, `calB = qB + 2 mu Omega`,
//! `g = tau/mu`, `d^2 = g^2 calB^2`.

use std::f64::consts::PI;

use super::DensityError;
use crate::kinematics::{effective_force, rotating_efield};
use crate::model::ParamSet;
use crate::transport::{big_c, chi0};
use crate::Vec3;

const ALIGN_TOL: f64 = 1e-12;

/// `(B_z, Omega_z)` after checking both fields point along `z`.
pub(crate) fn z_fields(params: &ParamSet) -> Result<(f64, f64), DensityError> {
    for (name, v) in [("b_field", params.b_field), ("omega", params.omega)] {
        if v.xy().norm() > ALIGN_TOL * v.norm() {
            return Err(DensityError::NotAlongZ(name));
        }
    }
    Ok((params.b_field.z, params.omega.z))
}

pub(crate) fn check_parallel(params: &ParamSet) -> Result<(), DensityError> {
    let (b, w) = (params.b_field, params.omega);
    if b.cross(&w).norm() > ALIGN_TOL * b.norm() * w.norm() {
        return Err(DensityError::NotParallel);
    }
    Ok(())
}

fn unit_axis(axis: &Vec3) -> Result<Vec3, DensityError> {
    let n = axis.norm();
    if (n - 1.0).abs() > 1e-12 {
        return Err(DensityError::AxisNotUnit(n));
    }
    Ok(*axis)
}

/// `e_mu` on the Fermi surface: the force with `cal(E) = mu` minus `grad mu`.
pub fn fermi_drive(params: &ParamSet, grad_mu: &Vec3) -> Vec3 {
    effective_force(params, params.mu) - grad_mu
}

// ---------------------------------------------------------------- 2D

/// `n = (qB/4pi)(mu - m)/mu + (Omega m / 2pi) ln(mu/m)`.
pub fn spin_density_2d(params: &ParamSet) -> Result<f64, DensityError> {
    let (b, w) = z_fields(params)?;
    if params.fermi_sea_empty() {
        return Ok(0.0);
    }
    let (m, mu, q) = (params.m, params.mu, params.q);
    Ok(q * b / (4.0 * PI) * (mu - m) / mu + w * m / (2.0 * PI) * (mu / m).ln())
}

/// `sigma_SH = -(q/4pi)(mu - m)/mu`.
pub fn sigma_sh(params: &ParamSet) -> f64 {
    if params.mu <= params.m {
        return 0.0;
    }
    -params.q / (4.0 * PI) * (params.mu - params.m) / params.mu
}

/// `J = sigma_SH z x E' + (m/4pi) ln(mu/m) ((Omega x x) x Omega) x z` with
/// `E' = E + (Omega x x) x B` evaluated at `params.x`.
pub fn spin_current_2d_eq(params: &ParamSet) -> Result<Vec3, DensityError> {
    z_fields(params)?;
    if params.fermi_sea_empty() {
        return Ok(Vec3::zeros());
    }
    let z = Vec3::z();
    let ep = rotating_efield(params, &params.x);
    let cf = params.omega.cross(&params.x).cross(&params.omega);
    let lm = (params.mu / params.m).ln();
    Ok(z.cross(&ep) * sigma_sh(params) + cf.cross(&z) * (params.m / (4.0 * PI) * lm))
}

/// `P = m (mu^2 - m^2) / (8 pi mu^3)`.
fn p2(params: &ParamSet) -> f64 {
    let (m, mu) = (params.m, params.mu);
    m * (mu * mu - m * m) / (8.0 * PI * mu.powi(3))
}

/// `(g calB, d^2)` on the Fermi surface, `calB` along `z`.
fn fermi_gb(params: &ParamSet) -> Result<(f64, f64), DensityError> {
    let (b, w) = z_fields(params)?;
    let gb = params.tau / params.mu * (params.q * b + 2.0 * params.mu * w);
    Ok((gb, gb * gb))
}

/// Collision spin current
/// `-P g calB / (1+d^2)^2 [(1 - d^2) e_mu - 2 g calB z x e_mu]`
/// with the in-plane part of `e_mu`.
pub fn spin_current_2d_noneq(params: &ParamSet, grad_mu: &Vec3) -> Result<Vec3, DensityError> {
    let (gb, d2) = fermi_gb(params)?;
    if params.fermi_sea_empty() {
        return Ok(Vec3::zeros());
    }
    let mut e = fermi_drive(params, grad_mu);
    e.z = 0.0;
    let pre = -p2(params) * gb / ((1.0 + d2) * (1.0 + d2));
    Ok((e * (1.0 - d2) - Vec3::z().cross(&e) * (2.0 * gb)) * pre)
}

/// Coefficients of the collision current `a1 E' + a2 z x E'` and the
/// quantities built from them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HallDecomposition {
    pub a1: f64,
    pub a2: f64,
    /// `(a1^2 + a2^2)/a2`; `None` when `a2 = 0`
    pub sigma_sh1: Option<f64>,
    /// `(a1^2 + a2^2)/a1`; `None` at the `g calB = +-1` pole or when `a1 = 0`
    pub ohm_coeff: Option<f64>,
    /// `|g calB|` within `1e-9` of 1
    pub at_pole: bool,
}

pub fn hall_decompose_2d(params: &ParamSet) -> Result<HallDecomposition, DensityError> {
    let (gb, d2) = fermi_gb(params)?;
    let qp = params.q * p2(params);
    let den = (1.0 + d2) * (1.0 + d2);
    let a1 = -qp * gb * (1.0 - d2) / den;
    let a2 = 2.0 * qp * d2 / den;
    let at_pole = (d2 - 1.0).abs() < 1e-9;
    let s = a1 * a1 + a2 * a2;
    Ok(HallDecomposition {
        a1,
        a2,
        sigma_sh1: (a2 != 0.0).then(|| s / a2),
        ohm_coeff: (!at_pole && a1 != 0.0).then(|| s / a1),
        at_pole,
    })
}

/// `(qm/16pi)(mu^2 - m^2)/mu^3`.
pub fn sigma_sh1(params: &ParamSet) -> f64 {
    if params.mu <= params.m {
        return 0.0;
    }
    params.q * p2(params) / 2.0
}

/// Ohm coefficient `-qP g calB / (1 - g^2 calB^2)`; `None` at the pole.
pub fn ohm_coeff_2d(params: &ParamSet) -> Result<Option<f64>, DensityError> {
    let (gb, d2) = fermi_gb(params)?;
    if (d2 - 1.0).abs() < 1e-9 {
        return Ok(None);
    }
    Ok(Some(-params.q * p2(params) * gb / (1.0 - d2)))
}

/// Ohm coefficient with the sign as printed, `+(qm/8pi)((mu^2-m^2)/mu^3) g calB/(1 - g^2 calB^2)`.
pub fn ohm_coeff_2d_printed(params: &ParamSet) -> Result<Option<f64>, DensityError> {
    Ok(ohm_coeff_2d(params)?.map(|v| -v))
}

// ---------------------------------------------------------------- 3D

fn fermi_parts(params: &ParamSet) -> (f64, f64, f64) {
    let (m, mu) = (params.m, params.mu);
    let k = params.p_fermi();
    (k, ((k + mu) / m).ln(), (k / m).atan())
}

/// Radial bracket multiplying `qB` in the density and `qE'` in the current.
fn bracket_b(params: &ParamSet) -> f64 {
    let (m, mu) = (params.m, params.mu);
    let (k, l, at) = fermi_parts(params);
    k * (1.0 - 2.0 * m / mu) + 2.0 * m * l - m * at
}

/// Radial bracket multiplying `Omega` in the density and the centrifugal
/// force in the current.
fn bracket_w(params: &ParamSet) -> f64 {
    let (m, mu) = (params.m, params.mu);
    let (k, l, at) = fermi_parts(params);
    (4.0 * m + mu) * k - m * m * l - 4.0 * m * m * at
}

/// Spin density along `axis` for `B` parallel to `Omega`.
pub fn spin_density_3d(params: &ParamSet, axis: &Vec3) -> Result<f64, DensityError> {
    check_parallel(params)?;
    let a = unit_axis(axis)?;
    if params.fermi_sea_empty() {
        return Ok(0.0);
    }
    let pre = 1.0 / (12.0 * PI * PI * params.hbar);
    Ok(pre * (params.q * params.b_field.dot(&a) * bracket_b(params) + params.omega.dot(&a) * bracket_w(params)))
}

/// Equilibrium spin current
/// `(qE' x a)/(12 pi^2 hbar) [..] + (((Omega x x) x Omega) x a)/(24 pi^2 hbar) [..]`.
pub fn spin_current_3d_eq(params: &ParamSet, axis: &Vec3) -> Result<Vec3, DensityError> {
    check_parallel(params)?;
    let a = unit_axis(axis)?;
    if params.fermi_sea_empty() {
        return Ok(Vec3::zeros());
    }
    let h = params.hbar;
    let ep = rotating_efield(params, &params.x) * params.q;
    let cf = params.omega.cross(&params.x).cross(&params.omega);
    Ok(ep.cross(&a) * (bracket_b(params) / (12.0 * PI * PI * h))
        + cf.cross(&a) * (bracket_w(params) / (24.0 * PI * PI * h)))
}

/// Collision spin current along `axis` from the angular-averaged Fermi
/// surface integral. Valid for any orientation of `calB`, `e_mu` and `axis`.
pub fn spin_current_3d_noneq(
    params: &ParamSet,
    axis: &Vec3,
    grad_mu: &Vec3,
) -> Result<Vec3, DensityError> {
    let a = unit_axis(axis)?;
    if params.fermi_sea_empty() {
        return Ok(Vec3::zeros());
    }
    let (m, en, h, tau) = (params.m, params.mu, params.hbar, params.tau);
    let k = params.p_fermi();
    let b = params.calb_mu();
    let e = fermi_drive(params, grad_mu);
    let g = tau / en;
    let d2 = g * g * b.norm_squared();
    let x0 = chi0(en, tau, &b, &e);
    let c = big_c(&x0, g, &b, d2);
    let (eb, cb) = (e.dot(&b), c.dot(&b));
    let k2 = k * k;

    let mut s = a * (h * k2 / (6.0 * en.powi(3)) * g * eb);
    s += (c * ((4.0 * m + en) * b.dot(&a)) + (b * c.dot(&a) + a * cb) * (en - m))
        * (h * k2 / (30.0 * en.powi(4)));
    let kt = b.cross(&a) * (g * g) - (b * b.dot(&a) - a * b.norm_squared()) * (g * g * g);
    s -= kt * (m * h * k2 / (6.0 * en.powi(4)) * eb / (1.0 + d2));
    s += b * (h * k2 / (6.0 * en.powi(3)) * x0.dot(&a));
    Ok(s * (k * en / (2.0 * PI * PI * h * h)))
}

/// `calB_z`, `g calB`, `d^2` on the Fermi surface for the axial special cases.
fn axial(params: &ParamSet) -> Result<(f64, f64, f64), DensityError> {
    z_fields(params)?;
    let b = params.calb_mu().z;
    let gb = params.tau / params.mu * b;
    Ok((b, gb, gb * gb))
}

/// `tau k^3 (7 mu - 2m) calB e_z / (60 pi^2 hbar mu^4)`: drive along `calB`.
pub fn spin_current_3d_parallel(params: &ParamSet, e_z: f64) -> Result<f64, DensityError> {
    let (b, _, _) = axial(params)?;
    let (m, mu, k) = (params.m, params.mu, params.p_fermi());
    Ok(params.tau * k.powi(3) * (7.0 * mu - 2.0 * m) * b * e_z / (60.0 * PI * PI * params.hbar * mu.powi(4)))
}

/// `Q = tau (4m + mu) k^3 calB / (60 pi^2 hbar (mu^2 + tau^2 calB^2)^2)`.
fn q3(params: &ParamSet, b: f64) -> f64 {
    let (m, mu, k, tau) = (params.m, params.mu, params.p_fermi(), params.tau);
    let den = mu * mu + tau * tau * b * b;
    tau * (4.0 * m + mu) * k.powi(3) * b / (60.0 * PI * PI * params.hbar * den * den)
}

/// `-Q [(1 - d^2) e - 2 g calB z x e]` for an in-plane drive.
pub fn spin_current_3d_perp(params: &ParamSet, e_perp: &Vec3) -> Result<Vec3, DensityError> {
    let (b, gb, d2) = axial(params)?;
    let e = Vec3::new(e_perp.x, e_perp.y, 0.0);
    Ok((e * (1.0 - d2) - Vec3::z().cross(&e) * (2.0 * gb)) * (-q3(params, b)))
}

/// Axial special cases combined: spin axis and fields along `z`.
pub fn spin_current_3d_noneq_axial(params: &ParamSet, grad_mu: &Vec3) -> Result<Vec3, DensityError> {
    if params.fermi_sea_empty() {
        z_fields(params)?;
        return Ok(Vec3::zeros());
    }
    let e = fermi_drive(params, grad_mu);
    let par = spin_current_3d_parallel(params, e.z)?;
    Ok(spin_current_3d_perp(params, &e)? + Vec3::z() * par)
}

/// `b1 E' + b2 z x E'` coefficients of the perpendicular collision current.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerpDecomposition {
    pub b1: f64,
    pub b2: f64,
    /// `(b1^2 + b2^2)/b2`; `None` when `b2 = 0`
    pub sigma_perp: Option<f64>,
}

pub fn hall_decompose_3d(params: &ParamSet) -> Result<PerpDecomposition, DensityError> {
    let (b, gb, d2) = axial(params)?;
    let qq = params.q * q3(params, b);
    let b1 = -qq * (1.0 - d2);
    let b2 = 2.0 * qq * gb;
    Ok(PerpDecomposition { b1, b2, sigma_perp: (b2 != 0.0).then(|| (b1 * b1 + b2 * b2) / b2) })
}

/// `q (4m + mu) k^3 / (120 pi^2 hbar mu^3)`.
pub fn sigma_perp_3d(params: &ParamSet) -> f64 {
    if params.mu <= params.m {
        return 0.0;
    }
    let (m, mu, k) = (params.m, params.mu, params.p_fermi());
    params.q * (4.0 * m + mu) * k.powi(3) / (120.0 * PI * PI * params.hbar * mu.powi(3))
}

/// `((4m - mu)/(120 pi^2 hbar)) (mu^2 - m^2)^(3/2) / mu^3`, as printed.
pub fn sigma_perp_3d_printed(params: &ParamSet) -> f64 {
    if params.mu <= params.m {
        return 0.0;
    }
    let (m, mu, k) = (params.m, params.mu, params.p_fermi());
    (4.0 * m - mu) * k.powi(3) / (120.0 * PI * PI * params.hbar * mu.powi(3))
}

/// Coefficient of `dmu/dt` in the integrated spin-constraint; the constraint
/// forces `dmu/dt = 0` whenever it is nonzero.
///
/// 2D: `-(tau/2 pi hbar)(m/mu^2) calB_z`.
/// 3D: `-(tau/6 pi^2 hbar^2)((2m + mu)/mu^2) k calB.a`.
pub fn consistency_coefficient_2d(params: &ParamSet) -> Result<f64, DensityError> {
    z_fields(params)?;
    if params.fermi_sea_empty() {
        return Ok(0.0);
    }
    let (m, mu, h) = (params.m, params.mu, params.hbar);
    Ok(-params.tau / (2.0 * PI * h) * m / (mu * mu) * params.calb_mu().z)
}

pub fn consistency_coefficient_3d(params: &ParamSet, axis: &Vec3) -> Result<f64, DensityError> {
    let a = unit_axis(axis)?;
    if params.fermi_sea_empty() {
        return Ok(0.0);
    }
    let (m, mu, h) = (params.m, params.mu, params.hbar);
    let k = params.p_fermi();
    Ok(-params.tau / (6.0 * PI * PI * h * h) * (2.0 * m + mu) / (mu * mu) * k * params.calb_mu().dot(&a))
}
