//! Momentum-space integrals for spin densities and spin currents, the
//! zero-temperature closed forms they reduce to, and continuity checks.
//!
//! Densities are `(hbar/2) int d^dp/(2 pi hbar)^d Tr[sigma_a w f]` and
//! currents `(hbar/2) int d^dp/(2 pi hbar)^d Tr[sigma_a xdot_w f]`, with
//! `w` the phase-space measure. The equilibrium part uses the full measure
//! and weighted velocity; the collision part `f1` is already linear in the
//! drive, so it multiplies their drive-free values
//! `w = 1 + G.calB` and `V = p/E + calB (G.p)/E`.
//! 2D integrals set `p_z = 0`.

pub mod closed;
pub mod continuity;
pub mod quad;

use num_complex::Complex64;
use thiserror::Error;

use crate::kinematics::{KinematicFields, KinematicsOptions, PhasePoint};
use crate::model::{dispersion, ModelError, ParamSet};
use crate::spinalg::{sym_mul, PauliCoeff};
use crate::transport::{df0_de, f0, f1, EnergyDerivative};
use crate::Vec3;

pub use closed::*;
pub use continuity::{continuity_residual, current_at, ContinuityGrid, ContinuityReport, FieldProfile, Part};
use quad::{integrate_pieces, SphereRule};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DensityError {
    #[error("B and Omega must be parallel")]
    NotParallel,
    #[error("`{0}` must point along z for the planar closed forms")]
    NotAlongZ(&'static str),
    #[error("spin axis must be a unit vector, |a| = {0}")]
    AxisNotUnit(f64),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("quadrature reached error {error:e}, requested {target:e} (value {value:?})")]
    Tolerance { value: [f64; 3], error: f64, target: f64 },
    #[error("grid step {h} too coarse for inner radius {r_min}")]
    GridTooCoarse { h: f64, r_min: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Density,
    Current,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Weight {
    /// `Tr[X f]`
    None,
    /// `Tr[(sigma.a) X f]` for a unit axis `a`
    Sigma(Vec3),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distribution {
    F0,
    F1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Two,
    Three,
}

impl Dimension {
    fn power(self) -> i32 {
        match self {
            Dimension::Two => 2,
            Dimension::Three => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integrand {
    pub kind: Kind,
    pub weight: Weight,
    pub distribution: Distribution,
    pub dimension: Dimension,
}

impl Integrand {
    pub fn spin(kind: Kind, distribution: Distribution, dimension: Dimension, axis: Vec3) -> Self {
        Self { kind, weight: Weight::Sigma(axis), distribution, dimension }
    }
}

/// Linear-response drive entering `f1`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Drive {
    pub grad_mu: Vec3,
    pub dmu_dt: f64,
}

/// Quadrature controls.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Gauss-Legendre nodes in `cos(theta)` (3D)
    pub n_theta: usize,
    /// uniform nodes in `phi`
    pub n_phi: usize,
    /// energy window half-width in units of the temperature
    pub window: f64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-300, n_theta: 8, n_phi: 16, window: 40.0 }
    }
}

/// Integrated density (only `value.x` is used) or current vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadValue {
    pub value: Vec3,
    /// largest imaginary part of the spin trace, integrated
    pub imag: f64,
    pub error: f64,
}

impl QuadValue {
    pub fn scalar(&self) -> f64 {
        self.value.x
    }
}

fn weighted_trace(weight: &Weight, x: &PauliCoeff) -> Complex64 {
    match weight {
        Weight::None => x.trace(),
        Weight::Sigma(a) => (x.cv[0] * a.x + x.cv[1] * a.y + x.cv[2] * a.z) * 2.0,
    }
}

/// Angular integrand at momentum `p`, without the distribution factor:
/// `[Re, Re, Re, Im, Im, Im]` of the three components.
fn local_trace(ig: &Integrand, params: &ParamSet, drive: &Drive, p: &Vec3) -> [f64; 6] {
    let opts = KinematicsOptions::transport();
    let xs: [PauliCoeff; 3] = match ig.distribution {
        Distribution::F0 => {
            let kf = KinematicFields::evaluate(&PhasePoint::new(params.x, *p), params, &opts);
            match ig.kind {
                Kind::Density => [kf.pf, PauliCoeff::ZERO, PauliCoeff::ZERO],
                Kind::Current => kf.xdot_w.0,
            }
        }
        Distribution::F1 => {
            let coeff = f1(&PhasePoint::new(params.x, *p), params, &drive.grad_mu, drive.dmu_dt).coeff;
            let free = ParamSet { e_field: Vec3::zeros(), x: Vec3::zeros(), ..params.clone() };
            let kf = KinematicFields::evaluate(&PhasePoint::new(Vec3::zeros(), *p), &free, &opts);
            match ig.kind {
                Kind::Density => [sym_mul(&kf.pf, &coeff), PauliCoeff::ZERO, PauliCoeff::ZERO],
                Kind::Current => kf.xdot_w.0.map(|v| sym_mul(&v, &coeff)),
            }
        }
    };
    let mut out = [0.0; 6];
    for i in 0..3 {
        let t = weighted_trace(&ig.weight, &xs[i]);
        out[i] = t.re;
        out[i + 3] = t.im;
    }
    out
}

fn rule(dim: Dimension, o: &QuadOptions) -> SphereRule {
    match dim {
        Dimension::Two => SphereRule::circle(o.n_phi),
        Dimension::Three => SphereRule::new(o.n_theta, o.n_phi),
    }
}

fn momentum(energy: f64, m: f64) -> f64 {
    (energy * energy - m * m).max(0.0).sqrt()
}

/// Momentum integral of `integrand` at temperature `t_smear` (replacing
/// `params.temperature`). At `t_smear = 0` the equilibrium part integrates
/// the filled Fermi sea and the collision part reduces to the Fermi surface
/// through `df0/dE = -delta(E - mu)`; otherwise the occupation is smeared
/// and the energy window is `mu +- window T`.
pub fn quad_density(
    ig: &Integrand,
    params: &ParamSet,
    drive: &Drive,
    t_smear: f64,
    opts: &QuadOptions,
) -> Result<QuadValue, DensityError> {
    let params = ParamSet { temperature: t_smear, ..params.clone() };
    params.validate()?;
    if let Weight::Sigma(a) = ig.weight {
        if (a.norm() - 1.0).abs() > 1e-12 {
            return Err(DensityError::AxisNotUnit(a.norm()));
        }
    }
    let d = ig.dimension.power();
    let pre = 0.5 * params.hbar / (2.0 * std::f64::consts::PI * params.hbar).powi(d);
    let rule = rule(ig.dimension, opts);
    let m = params.m;
    let edge = params.branch.sign() * params.mu;
    let angular = |p: f64| -> [f64; 6] {
        rule.integrate(|n| {
            let pv = if ig.dimension == Dimension::Two { Vec3::new(n.x, n.y, 0.0) * p } else { n * p };
            local_trace(ig, &params, drive, &pv)
        })
    };

    let (raw, error, converged) = match (ig.distribution, t_smear == 0.0) {
        (_, true) if edge <= m => ([0.0; 6], 0.0, true),
        (Distribution::F0, true) => {
            let pf = momentum(edge, m);
            let r = integrate_pieces(|p| scale6(angular(p), p.powi(d - 1)), &[0.0, pf], opts.rel_tol, opts.abs_tol);
            (r.value, r.error, r.converged)
        }
        (Distribution::F1, true) => {
            // int d^dp delta(E - edge) F = p^(d-2) E int dOmega F on the Fermi surface
            let pf = momentum(edge, m);
            (scale6(angular(pf), -pf.powi(d - 2) * edge), 0.0, true)
        }
        (Distribution::F0, false) => {
            let top = edge + opts.window * t_smear;
            if top <= m {
                ([0.0; 6], 0.0, true)
            } else {
                let mut pts = vec![0.0];
                if edge > m {
                    pts.push(momentum(edge, m));
                }
                pts.push(momentum(top, m));
                let r = integrate_pieces(
                    |p| {
                        let occ = f0(dispersion(&Vec3::new(p, 0.0, 0.0), m), params.mu, t_smear, params.branch);
                        scale6(angular(p), p.powi(d - 1) * occ)
                    },
                    &pts,
                    opts.rel_tol,
                    opts.abs_tol,
                );
                (r.value, r.error, r.converged)
            }
        }
        (Distribution::F1, false) => {
            let lo = m.max(edge - opts.window * t_smear);
            let hi = edge + opts.window * t_smear;
            if hi <= m {
                ([0.0; 6], 0.0, true)
            } else {
                let mut pts = vec![lo];
                if edge > lo {
                    pts.push(edge);
                }
                pts.push(hi);
                let r = integrate_pieces(
                    |e| {
                        let EnergyDerivative::Value(w) = df0_de(e, params.mu, t_smear, params.branch) else {
                            unreachable!("smooth derivative at T > 0")
                        };
                        let p = momentum(e, m);
                        scale6(angular(p), p.powi(d - 2) * e * w)
                    },
                    &pts,
                    opts.rel_tol,
                    opts.abs_tol,
                );
                (r.value, r.error, r.converged)
            }
        }
    };
    let v = scale6(raw, pre);
    let value = match ig.kind {
        Kind::Density => Vec3::new(v[0], 0.0, 0.0),
        Kind::Current => Vec3::new(v[0], v[1], v[2]),
    };
    let imag = v[3].abs().max(v[4].abs()).max(v[5].abs());
    let error = error * pre.abs();
    if !converged {
        let target = opts.abs_tol.max(opts.rel_tol * value.amax());
        return Err(DensityError::Tolerance { value: value.into(), error, target });
    }
    Ok(QuadValue { value, imag, error })
}

fn scale6(mut v: [f64; 6], s: f64) -> [f64; 6] {
    for x in &mut v {
        *x *= s;
    }
    v
}

/// Spin-constraint coefficient by quadrature:
/// `int d^dp/(2 pi hbar)^d Tr[sigma_a w f1]` with `dmu/dt = 1`.
pub fn consistency_quadrature(
    params: &ParamSet,
    dimension: Dimension,
    axis: &Vec3,
    grad_mu: &Vec3,
    t_smear: f64,
    opts: &QuadOptions,
) -> Result<f64, DensityError> {
    let ig = Integrand::spin(Kind::Density, Distribution::F1, dimension, *axis);
    let drive = Drive { grad_mu: *grad_mu, dmu_dt: 1.0 };
    Ok(quad_density(&ig, params, &drive, t_smear, opts)?.scalar() / (0.5 * params.hbar))
}

/// Closed-form results at one parameter point.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub n_spin: f64,
    pub j_eq: Vec3,
    pub j_neq: Vec3,
    pub sigma_sh: f64,
    pub sigma_sh1: Option<f64>,
    pub sigma_perp_sh: Option<f64>,
    pub ohm_coeff: Option<f64>,
    pub ohm_pole: bool,
    pub a1: Option<f64>,
    pub a2: Option<f64>,
    pub b1: Option<f64>,
    pub b2: Option<f64>,
    pub consistency: f64,
    pub continuity_residual: Option<f64>,
}

impl DensityReport {
    /// Planar conductor, `B`, `Omega` along `z`.
    pub fn two_d(params: &ParamSet, grad_mu: &Vec3) -> Result<Self, DensityError> {
        params.validate()?;
        let h = hall_decompose_2d(params)?;
        Ok(Self {
            n_spin: spin_density_2d(params)?,
            j_eq: spin_current_2d_eq(params)?,
            j_neq: spin_current_2d_noneq(params, grad_mu)?,
            sigma_sh: sigma_sh(params),
            // field-independent, so defined even where a2 = 0
            sigma_sh1: Some(sigma_sh1(params)),
            sigma_perp_sh: None,
            ohm_coeff: h.ohm_coeff,
            ohm_pole: h.at_pole,
            a1: Some(h.a1),
            a2: Some(h.a2),
            b1: None,
            b2: None,
            consistency: consistency_coefficient_2d(params)?,
            continuity_residual: None,
        })
    }

    /// Bulk conductor, `B` parallel to `Omega`, spin along `axis`. The
    /// perpendicular decomposition needs the fields along `z`; otherwise
    /// `b1`, `b2` and `sigma_perp_sh` stay empty.
    pub fn three_d(params: &ParamSet, axis: &Vec3, grad_mu: &Vec3) -> Result<Self, DensityError> {
        params.validate()?;
        let perp = hall_decompose_3d(params).ok();
        Ok(Self {
            n_spin: spin_density_3d(params, axis)?,
            j_eq: spin_current_3d_eq(params, axis)?,
            j_neq: spin_current_3d_noneq(params, axis, grad_mu)?,
            sigma_sh: 0.0,
            sigma_sh1: None,
            sigma_perp_sh: Some(sigma_perp_3d(params)),
            ohm_coeff: None,
            ohm_pole: false,
            a1: None,
            a2: None,
            b1: perp.map(|d| d.b1),
            b2: perp.map(|d| d.b2),
            consistency: consistency_coefficient_3d(params, axis)?,
            continuity_residual: None,
        })
    }
}
