//! Numerical divergence of the closed-form spin current over an annulus
//! around the rotation axis.
//!
//! The electric field may vary in the plane as
//! `E(x) = E0 + lambda x_perp/|x_perp|^2 + kappa x_perp`; the line-charge
//! term is divergence-free, and `kappa` models a uniform background charge.
//! With static `mu` the spin density is time independent, so the check is
//! `div j = 0`.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::closed::{spin_current_2d_eq, spin_current_2d_noneq, spin_current_3d_eq, spin_current_3d_noneq_axial, z_fields};
use super::{Dimension, DensityError};
use crate::model::ParamSet;
use crate::Vec3;

/// In-plane electric field profile.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FieldProfile {
    pub background: Vec3,
    pub line_charge: f64,
    pub kappa: f64,
}

impl FieldProfile {
    pub fn uniform(e: Vec3) -> Self {
        Self { background: e, ..Self::default() }
    }

    /// `kappa` chosen so that `e_mu = q E_h` on the Fermi surface, which
    /// cancels the second-order source `2(q Omega B + mu Omega^2)` of
    /// `div e_mu`; then `div j` vanishes identically.
    pub fn compensated(params: &ParamSet, background: Vec3, line_charge: f64) -> Self {
        let (b, w) = (params.b_field.z, params.omega.z);
        let kappa = if params.q == 0.0 { 0.0 } else { -(params.q * w * b + params.mu * w * w) / params.q };
        Self { background, line_charge, kappa }
    }

    pub fn at(&self, x: &Vec3) -> Vec3 {
        let xp = Vec3::new(x.x, x.y, 0.0);
        let r2 = xp.norm_squared();
        let line = if self.line_charge == 0.0 { Vec3::zeros() } else { xp * (self.line_charge / r2) };
        self.background + line + xp * self.kappa
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Equilibrium,
    Collision,
    Total,
}

/// Sample centres on an annulus with a central-difference step `h`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContinuityGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub n_r: usize,
    pub n_phi: usize,
    pub h: f64,
}

impl Default for ContinuityGrid {
    fn default() -> Self {
        Self { r_min: 1.0, r_max: 2.0, n_r: 6, n_phi: 12, h: 0.005 }
    }
}

impl ContinuityGrid {
    pub fn halved(&self) -> Self {
        Self { h: 0.5 * self.h, ..*self }
    }

    fn centres(&self) -> Vec<Vec3> {
        let mut out = Vec::with_capacity(self.n_r * self.n_phi);
        for i in 0..self.n_r {
            let r = if self.n_r == 1 {
                self.r_min
            } else {
                self.r_min + (self.r_max - self.r_min) * i as f64 / (self.n_r - 1) as f64
            };
            for j in 0..self.n_phi {
                // offset so no centre sits on an axis
                let phi = 2.0 * PI * (j as f64 + 0.3) / self.n_phi as f64;
                out.push(Vec3::new(r * phi.cos(), r * phi.sin(), 0.0));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContinuityReport {
    /// `max |div j| / (max |j| / r_max)`, zero when the current vanishes
    pub residual: f64,
    pub max_div: f64,
    pub max_current: f64,
    pub h: f64,
}

/// Closed-form spin current (axis `z`) at position `x` under `profile`.
pub fn current_at(
    params: &ParamSet,
    profile: &FieldProfile,
    x: &Vec3,
    part: Part,
    dim: Dimension,
) -> Result<Vec3, DensityError> {
    let p = ParamSet { x: *x, e_field: profile.at(x), ..params.clone() };
    let zero = Vec3::zeros();
    let eq = || match dim {
        Dimension::Two => spin_current_2d_eq(&p),
        Dimension::Three => spin_current_3d_eq(&p, &Vec3::z()),
    };
    let neq = || match dim {
        Dimension::Two => spin_current_2d_noneq(&p, &zero),
        Dimension::Three => spin_current_3d_noneq_axial(&p, &zero),
    };
    Ok(match part {
        Part::Equilibrium => eq()?,
        Part::Collision => neq()?,
        Part::Total => eq()? + neq()?,
    })
}

/// Central-difference divergence of the spin current at every grid
/// centre, normalised by the current scale.
pub fn continuity_residual(
    params: &ParamSet,
    profile: &FieldProfile,
    grid: &ContinuityGrid,
    part: Part,
    dim: Dimension,
) -> Result<ContinuityReport, DensityError> {
    params.validate()?;
    z_fields(params)?;
    if grid.h <= 0.0 || grid.h >= 0.5 * grid.r_min {
        return Err(DensityError::GridTooCoarse { h: grid.h, r_min: grid.r_min });
    }
    let h = grid.h;
    let axes = match dim {
        Dimension::Two => 2,
        Dimension::Three => 3,
    };
    let samples: Vec<(f64, f64)> = grid
        .centres()
        .par_iter()
        .map(|x| -> Result<(f64, f64), DensityError> {
            let j = current_at(params, profile, x, part, dim)?;
            let mut div = 0.0;
            for k in 0..axes {
                let mut dx = Vec3::zeros();
                dx[k] = h;
                let up = current_at(params, profile, &(x + dx), part, dim)?;
                let dn = current_at(params, profile, &(x - dx), part, dim)?;
                div += (up[k] - dn[k]) / (2.0 * h);
            }
            Ok((div.abs(), j.norm()))
        })
        .collect::<Result<_, _>>()?;
    let max_div = samples.iter().fold(0.0f64, |m, s| m.max(s.0));
    let max_current = samples.iter().fold(0.0f64, |m, s| m.max(s.1));
    let residual = if max_current == 0.0 { 0.0 } else { max_div / (max_current / grid.r_max) };
    Ok(ContinuityReport { residual, max_div, max_current, h })
}
