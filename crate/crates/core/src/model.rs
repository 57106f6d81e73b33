//! Physical parameters, dispersion and the energy-dependent field `calB`.

pub mod units;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Vec3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("mass must be positive, got {0}")]
    NonPositiveMass(f64),
    #[error("hbar must be positive, got {0}")]
    NonPositiveHbar(f64),
    #[error("relaxation time must be positive, got {0}")]
    NonPositiveTau(f64),
    #[error("temperature must be non-negative, got {0}")]
    NegativeTemperature(f64),
    #[error("radius must be non-negative, got {0}")]
    NegativeRadius(f64),
    #[error("parameter `{0}` is not finite")]
    NonFinite(&'static str),
}

/// Particle (`+1`) or antiparticle (`-1`) branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    #[default]
    Particle,
    Antiparticle,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Particle => 1.0,
            Branch::Antiparticle => -1.0,
        }
    }
}

/// One physical configuration in natural units (`c = 1`, explicit `hbar`).
///
/// Energies share one unit and `temperature` is `k_B T`. `tau` enters only
/// through `g = tau / E`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamSet {
    pub m: f64,
    pub q: f64,
    pub hbar: f64,
    pub mu: f64,
    pub tau: f64,
    #[serde(default)]
    pub temperature: f64,
    #[serde(default = "zero3")]
    pub b_field: Vec3,
    #[serde(default = "zero3")]
    pub omega: Vec3,
    #[serde(default = "zero3")]
    pub e_field: Vec3,
    #[serde(default = "zero3")]
    pub x: Vec3,
    #[serde(default)]
    pub radius: f64,
    #[serde(default)]
    pub branch: Branch,
}

fn zero3() -> Vec3 {
    Vec3::zeros()
}

impl Default for ParamSet {
    fn default() -> Self {
        Self {
            m: 1.0,
            q: 1.0,
            hbar: 1.0,
            mu: 2.0,
            tau: 1.0,
            temperature: 0.0,
            b_field: Vec3::zeros(),
            omega: Vec3::zeros(),
            e_field: Vec3::zeros(),
            x: Vec3::zeros(),
            radius: 0.0,
            branch: Branch::Particle,
        }
    }
}

/// Names of the scalar fields reachable by [`ParamSet::set_scalar`].
pub const SCALAR_FIELDS: &[&str] = &[
    "m", "q", "hbar", "mu", "mu_over_m", "tau", "temperature", "b_x", "b_y", "b_z", "omega_x",
    "omega_y", "omega_z", "e_x", "e_y", "e_z", "x_x", "x_y", "x_z", "radius",
];

impl ParamSet {
    pub fn validate(&self) -> Result<(), ModelError> {
        let scalars = [
            ("m", self.m),
            ("q", self.q),
            ("hbar", self.hbar),
            ("mu", self.mu),
            ("tau", self.tau),
            ("temperature", self.temperature),
            ("radius", self.radius),
        ];
        for (name, v) in scalars {
            if !v.is_finite() {
                return Err(ModelError::NonFinite(name));
            }
        }
        let vectors = [
            ("b_field", self.b_field),
            ("omega", self.omega),
            ("e_field", self.e_field),
            ("x", self.x),
        ];
        for (name, v) in vectors {
            if !v.iter().all(|c| c.is_finite()) {
                return Err(ModelError::NonFinite(name));
            }
        }
        if self.m <= 0.0 {
            return Err(ModelError::NonPositiveMass(self.m));
        }
        if self.hbar <= 0.0 {
            return Err(ModelError::NonPositiveHbar(self.hbar));
        }
        if self.tau <= 0.0 {
            return Err(ModelError::NonPositiveTau(self.tau));
        }
        if self.temperature < 0.0 {
            return Err(ModelError::NegativeTemperature(self.temperature));
        }
        if self.radius < 0.0 {
            return Err(ModelError::NegativeRadius(self.radius));
        }
        Ok(())
    }

    /// No occupied states at `T = 0`.
    pub fn fermi_sea_empty(&self) -> bool {
        self.temperature == 0.0 && self.mu <= self.m
    }

    /// Fermi momentum `sqrt(mu^2 - m^2)`, zero below the band edge.
    pub fn p_fermi(&self) -> f64 {
        (self.mu * self.mu - self.m * self.m).max(0.0).sqrt()
    }

    /// `calB` on the Fermi surface.
    pub fn calb_mu(&self) -> Vec3 {
        effective_bfield(self, self.mu)
    }

    /// Set a named scalar (sweep axis). Unknown names return `false`.
    /// Read a field named as in [`SCALAR_FIELDS`].
    pub fn get_scalar(&self, name: &str) -> Option<f64> {
        Some(match name {
            "m" => self.m,
            "q" => self.q,
            "hbar" => self.hbar,
            "mu" => self.mu,
            "mu_over_m" => self.mu / self.m,
            "tau" => self.tau,
            "temperature" => self.temperature,
            "b_x" => self.b_field.x,
            "b_y" => self.b_field.y,
            "b_z" => self.b_field.z,
            "omega_x" => self.omega.x,
            "omega_y" => self.omega.y,
            "omega_z" => self.omega.z,
            "e_x" => self.e_field.x,
            "e_y" => self.e_field.y,
            "e_z" => self.e_field.z,
            "x_x" => self.x.x,
            "x_y" => self.x.y,
            "x_z" => self.x.z,
            "radius" => self.radius,
            _ => return None,
        })
    }

    pub fn set_scalar(&mut self, name: &str, v: f64) -> bool {
        match name {
            "m" => self.m = v,
            "q" => self.q = v,
            "hbar" => self.hbar = v,
            "mu" => self.mu = v,
            "mu_over_m" => self.mu = v * self.m,
            "tau" => self.tau = v,
            "temperature" => self.temperature = v,
            "b_x" => self.b_field.x = v,
            "b_y" => self.b_field.y = v,
            "b_z" => self.b_field.z = v,
            "omega_x" => self.omega.x = v,
            "omega_y" => self.omega.y = v,
            "omega_z" => self.omega.z = v,
            "e_x" => self.e_field.x = v,
            "e_y" => self.e_field.y = v,
            "e_z" => self.e_field.z = v,
            "x_x" => self.x.x = v,
            "x_y" => self.x.y = v,
            "x_z" => self.x.z = v,
            "radius" => self.radius = v,
            _ => return false,
        }
        true
    }
}

/// `E = sqrt(p^2 + m^2)`.
pub fn dispersion(p: &Vec3, m: f64) -> f64 {
    (p.norm_squared() + m * m).sqrt()
}

/// `mu = sqrt((hbar kF)^2 + m^2)`.
pub fn mu_from_kf(kf: f64, m: f64, hbar: f64) -> f64 {
    let p = hbar * kf;
    (p * p + m * m).sqrt()
}

/// `calB = qB + 2 E Omega`.
pub fn effective_bfield(params: &ParamSet, energy: f64) -> Vec3 {
    params.b_field * params.q + params.omega * (2.0 * energy)
}

/// Energy-dependent combinations entering the relaxation-time solution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedFields {
    pub energy: f64,
    pub calb: Vec3,
    /// `tau / E`
    pub g: f64,
    /// `g^2 calB^2`
    pub d2: f64,
    /// driving force minus the chemical-potential gradient
    pub e_mu: Vec3,
}

impl DerivedFields {
    pub fn new(params: &ParamSet, energy: f64, force: &Vec3, grad_mu: &Vec3) -> Self {
        Self::from_parts(energy, params.tau, effective_bfield(params, energy), force - grad_mu)
    }

    pub fn from_parts(energy: f64, tau: f64, calb: Vec3, e_mu: Vec3) -> Self {
        let g = tau / energy;
        Self { energy, calb, g, d2: g * g * calb.norm_squared(), e_mu }
    }
}
