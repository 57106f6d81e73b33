//! Effective force, canonical velocity, the Pfaffian phase-space measure and
//! the measure-weighted equations of motion in the rotating frame.

use nalgebra::Matrix6;
use thiserror::Error;

use crate::berry::{berry_curvature, semiclassical_hamiltonian};
use crate::model::{dispersion, ParamSet};
use crate::spinalg::{MatrixVector3, PauliCoeff};
use crate::Vec3;

/// Coefficient of `E Omega` in the last term of the canonical velocity.
pub const OMEGA_VELOCITY_FACTOR: f64 = 2.0;

/// Rotation speeds `|Omega x x|` above this are flagged as outside the
/// nonrelativistic regime.
pub const ROTATION_SPEED_WARN: f64 = 0.1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KinematicsError {
    #[error("6x6 symplectic matrix not antisymmetric (max |M + M^T| = {0:e})")]
    NotAntisymmetric(f64),
    #[error("spin axis must have unit norm, got |n| = {0}")]
    SpinAxisNotUnit(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum VelocityMode {
    /// `p/E` and its first-order Berry corrections
    #[default]
    Full,
    /// `p/E` only
    Simplified,
}

/// Energy entering the force and `calB'` terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EnergyModel {
    /// band energy `E`
    #[default]
    Bare,
    /// semiclassical Hamiltonian including its Berry shift
    Corrected,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KinematicsOptions {
    pub velocity: VelocityMode,
    pub energy: EnergyModel,
    pub omega_velocity_factor: f64,
}

impl Default for KinematicsOptions {
    fn default() -> Self {
        Self {
            velocity: VelocityMode::Full,
            energy: EnergyModel::Bare,
            omega_velocity_factor: OMEGA_VELOCITY_FACTOR,
        }
    }
}

impl KinematicsOptions {
    /// `nu = p/E`, band energy: the setting used by the transport integrals.
    pub fn transport() -> Self {
        Self { velocity: VelocityMode::Simplified, ..Self::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePoint {
    pub x: Vec3,
    pub p: Vec3,
}

impl PhasePoint {
    pub fn new(x: Vec3, p: Vec3) -> Self {
        Self { x, p }
    }

    /// `|Omega x x|`
    pub fn rotation_speed(&self, omega: &Vec3) -> f64 {
        omega.cross(&self.x).norm()
    }

    pub fn is_nonrelativistic(&self, omega: &Vec3) -> bool {
        self.rotation_speed(omega) <= ROTATION_SPEED_WARN
    }
}

/// `e = qE + (Omega x x) x (qB + energy Omega)` at `params.x`.
pub fn effective_force(params: &ParamSet, energy: f64) -> Vec3 {
    effective_force_at(params, &params.x, energy)
}

pub fn effective_force_at(params: &ParamSet, x: &Vec3, energy: f64) -> Vec3 {
    let v = params.omega.cross(x);
    params.e_field * params.q + v.cross(&(params.b_field * params.q + params.omega * energy))
}

/// `E' = E + (Omega x x) x B`, the electric field seen in the rotating frame.
pub fn rotating_efield(params: &ParamSet, x: &Vec3) -> Vec3 {
    params.e_field + params.omega.cross(x).cross(&params.b_field)
}

pub fn canonical_velocity(p: &Vec3, params: &ParamSet, mode: VelocityMode) -> MatrixVector3 {
    canonical_velocity_with(p, params, mode, OMEGA_VELOCITY_FACTOR)
}

/// `nu = (p/E)[1 + 2 sign G.(qB + E Omega/2)] - (hbar/2E^3)(qB + k E Omega)(sigma.p)`
/// with `k = omega_factor`; `Simplified` keeps `p/E`.
pub fn canonical_velocity_with(
    p: &Vec3,
    params: &ParamSet,
    mode: VelocityMode,
    omega_factor: f64,
) -> MatrixVector3 {
    let e = dispersion(p, params.m);
    let v = p / e;
    match mode {
        VelocityMode::Simplified => MatrixVector3::from_real(&v),
        VelocityMode::Full => {
            let s = params.branch.sign();
            let g = berry_curvature(p, params.m, params.hbar);
            let qb = params.b_field * params.q;
            let shift = g.dot_real(&(qb + params.omega * (0.5 * e))).scale(2.0 * s);
            let first = MatrixVector3::outer(&v, &(PauliCoeff::IDENTITY + shift));
            let tail = qb + params.omega * (omega_factor * e);
            let coeff = params.hbar / (2.0 * e * e * e);
            first - MatrixVector3::outer(&(tail * coeff), &PauliCoeff::sigma_dot(p))
        }
    }
}

/// Ingredients shared by the Pfaffian and the weighted velocities.
struct Local {
    s: f64,
    qb: Vec3,
    /// `x x Omega`
    w: Vec3,
    /// `1 - (Omega x x)^2 / 2`
    damp: f64,
    g: MatrixVector3,
    nu: MatrixVector3,
    /// `qB + 2 cal(E) Omega`
    calb: MatrixVector3,
    e: MatrixVector3,
}

fn local(xp: &PhasePoint, params: &ParamSet, opts: &KinematicsOptions) -> Local {
    let energy = dispersion(&xp.p, params.m);
    let eh = match opts.energy {
        EnergyModel::Bare => PauliCoeff::scalar(energy),
        EnergyModel::Corrected => semiclassical_hamiltonian(&xp.p, params),
    };
    let qb = params.b_field * params.q;
    let om = &params.omega;
    let calb = MatrixVector3::from_real(&qb) + MatrixVector3::outer(om, &eh).scale(2.0);
    let field = MatrixVector3::from_real(&qb) + MatrixVector3::outer(om, &eh);
    let rot = om.cross(&xp.x);
    let e = MatrixVector3::from_real(&(params.e_field * params.q))
        + MatrixVector3::real_cross(&rot, &field);
    Local {
        s: params.branch.sign(),
        qb,
        w: -rot,
        damp: 1.0 - 0.5 * rot.norm_squared(),
        g: berry_curvature(&xp.p, params.m, params.hbar),
        nu: canonical_velocity_with(&xp.p, params, opts.velocity, opts.omega_velocity_factor),
        calb,
        e,
    }
}

/// Weighted velocity, weighted force and measure at one phase-space point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KinematicFields {
    pub e: Vec3,
    pub nu: MatrixVector3,
    pub pf: PauliCoeff,
    pub xdot_w: MatrixVector3,
    pub pdot_w: MatrixVector3,
}

impl KinematicFields {
    pub fn evaluate(xp: &PhasePoint, params: &ParamSet, opts: &KinematicsOptions) -> Self {
        let l = local(xp, params, opts);
        Self {
            e: l.e.scalar_part(),
            nu: l.nu,
            pf: pfaffian_of(&l),
            xdot_w: vel_weighted_of(&l),
            pdot_w: force_weighted_of(&l),
        }
    }
}

fn pfaffian_of(l: &Local) -> PauliCoeff {
    let nug = l.nu.sym_dot(&l.g);
    PauliCoeff::IDENTITY + l.g.sym_dot(&l.calb).scale(l.s)
        - l.nu.dot_real(&l.w)
        - nug.scale(l.s * l.qb.dot(&l.w))
}

fn vel_weighted_of(l: &Local) -> MatrixVector3 {
    let nug = l.nu.sym_dot(&l.g);
    let we = MatrixVector3::real_cross(&l.w, &l.e);
    l.nu.scale(l.damp)
        + l.e.sym_cross(&l.g).scale(l.s)
        + l.calb.sym_scale(&nug).scale(l.s * l.damp)
        + we.sym_scale(&nug).scale(l.s)
}

fn force_weighted_of(l: &Local) -> MatrixVector3 {
    let we = MatrixVector3::real_cross(&l.w, &l.e);
    l.e + l.nu.sym_cross(&l.calb).scale(l.damp) + l.g.sym_scale(&l.e.sym_dot(&l.calb)).scale(l.s)
        - we.sym_cross(&l.nu)
}

/// `1 + sign G.(qB + 2 cal(E) Omega) - nu.(x x Omega) - sign (nu.G)(qB.(x x Omega))`
pub fn pfaffian(xp: &PhasePoint, params: &ParamSet, opts: &KinematicsOptions) -> PauliCoeff {
    pfaffian_of(&local(xp, params, opts))
}

pub fn vel_weighted(xp: &PhasePoint, params: &ParamSet, opts: &KinematicsOptions) -> MatrixVector3 {
    vel_weighted_of(&local(xp, params, opts))
}

pub fn force_weighted(
    xp: &PhasePoint,
    params: &ParamSet,
    opts: &KinematicsOptions,
) -> MatrixVector3 {
    force_weighted_of(&local(xp, params, opts))
}

/// `eps_ijk v_k`
fn eps(v: &Vec3) -> nalgebra::Matrix3<f64> {
    nalgebra::Matrix3::new(0.0, v.z, -v.y, -v.z, 0.0, v.x, v.y, -v.x, 0.0)
}

fn real(z: [num_complex::Complex64; 3]) -> Vec3 {
    Vec3::new(z[0].re, z[1].re, z[2].re)
}

/// The 6x6 symplectic matrix with spin replaced by `sigma -> lambda n`.
pub fn symplectic_matrix(
    xp: &PhasePoint,
    params: &ParamSet,
    opts: &KinematicsOptions,
    axis: &Vec3,
    lambda: f64,
) -> Result<Matrix6<f64>, KinematicsError> {
    let norm = axis.norm();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(KinematicsError::SpinAxisNotUnit(norm));
    }
    let l = local(xp, params, opts);
    let calb = real(l.calb.project(axis, lambda));
    let g = real(l.g.project(axis, lambda));
    let nu = real(l.nu.project(axis, lambda));
    let lower = nalgebra::Matrix3::identity() - nu * l.w.transpose();
    let mut m = Matrix6::zeros();
    m.fixed_view_mut::<3, 3>(0, 0).copy_from(&eps(&calb));
    m.fixed_view_mut::<3, 3>(0, 3).copy_from(&(-lower.transpose()));
    m.fixed_view_mut::<3, 3>(3, 0).copy_from(&lower);
    m.fixed_view_mut::<3, 3>(3, 3).copy_from(&(-eps(&g) * l.s));
    let asym = (m + m.transpose()).amax();
    if asym > 1e-12 * (1.0 + m.amax()) {
        return Err(KinematicsError::NotAntisymmetric(asym));
    }
    Ok(m)
}

/// Numerical Pfaffian of the scalarized symplectic matrix.
pub fn pfaffian_6x6_oracle(
    xp: &PhasePoint,
    params: &ParamSet,
    opts: &KinematicsOptions,
    axis: &Vec3,
    lambda: f64,
) -> Result<f64, KinematicsError> {
    symplectic_matrix(xp, params, opts, axis, lambda).map(skew_pfaffian)
}

/// Pfaffian of an antisymmetric matrix by pivoted Parlett-Reid reduction.
pub fn skew_pfaffian(mut a: Matrix6<f64>) -> f64 {
    let n = 6;
    let mut pf = 1.0;
    for k in (0..n - 1).step_by(2) {
        let mut kp = k + 1;
        for r in k + 2..n {
            if a[(r, k)].abs() > a[(kp, k)].abs() {
                kp = r;
            }
        }
        if kp != k + 1 {
            a.swap_rows(k + 1, kp);
            a.swap_columns(k + 1, kp);
            pf = -pf;
        }
        if a[(k + 1, k)] == 0.0 {
            return 0.0;
        }
        pf *= a[(k, k + 1)];
        if k + 2 < n {
            let piv = a[(k, k + 1)];
            let tau: Vec<f64> = (k + 2..n).map(|j| a[(k, j)] / piv).collect();
            let col: Vec<f64> = (k + 2..n).map(|i| a[(i, k + 1)]).collect();
            for (ii, i) in (k + 2..n).enumerate() {
                for (jj, j) in (k + 2..n).enumerate() {
                    a[(i, j)] += tau[ii] * col[jj] - col[ii] * tau[jj];
                }
            }
        }
    }
    pf
}
