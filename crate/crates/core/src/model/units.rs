//! SI boundary layer.
//!
//! The natural system used internally keeps `c = 1` by measuring time in
//! metres. Energies stay in joules, so the conversions are
//!
//! | quantity | natural value |
//! |---|---|
//! | mass `m`, `mu`, `k_B T` | joules |
//! | `hbar` | `hbar c` (J m) |
//! | `tau` | `tau c` (m) |
//! | `B` | `B c` |
//! | `Omega` | `Omega / c` |
//! | `E`, `x`, `R`, `q` | unchanged |
//!
//! Spin currents come out in J/m (2D) or J/m^2 (3D), which are already the
//! SI units of `(hbar/2) x number current`. Spin densities pick up a factor
//! `c` and are divided back on output.

use serde::{Deserialize, Serialize};

use super::{Branch, ParamSet};
use crate::Vec3;

/// Speed of light, m/s.
pub const C_LIGHT: f64 = 299_792_458.0;
/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Elementary charge, C.
pub const E_CHARGE: f64 = 1.602_176_634e-19;
/// Electron mass, kg.
pub const M_ELECTRON: f64 = 9.109_383_701_5e-31;
/// Boltzmann constant, J/K.
pub const K_BOLTZMANN: f64 = 1.380_649e-23;

/// Electron rest energy, J.
pub fn electron_rest_energy() -> f64 {
    M_ELECTRON * C_LIGHT * C_LIGHT
}

/// Either a chemical potential or a Fermi wavenumber fixes the filling.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Filling {
    /// total chemical potential including rest energy, J
    MuJoule(f64),
    /// Fermi wavenumber, 1/m
    KfPerMetre(f64),
    /// `mu / m`
    MuOverM(f64),
}

/// Configuration in SI units.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SiParams {
    pub mass_kg: f64,
    pub charge_c: f64,
    pub filling: Filling,
    pub tau_s: f64,
    #[serde(default)]
    pub temperature_k: f64,
    #[serde(default)]
    pub b_tesla: [f64; 3],
    #[serde(default)]
    pub omega_rad_s: [f64; 3],
    #[serde(default)]
    pub e_volt_per_m: [f64; 3],
    #[serde(default)]
    pub x_m: [f64; 3],
    #[serde(default)]
    pub radius_m: f64,
}

impl SiParams {
    pub fn to_natural(&self) -> ParamSet {
        let m = self.mass_kg * C_LIGHT * C_LIGHT;
        let hbar = HBAR * C_LIGHT;
        let mu = match self.filling {
            Filling::MuJoule(mu) => mu,
            Filling::KfPerMetre(kf) => super::mu_from_kf(kf, m, hbar),
            Filling::MuOverM(r) => r * m,
        };
        ParamSet {
            m,
            q: self.charge_c,
            hbar,
            mu,
            tau: self.tau_s * C_LIGHT,
            temperature: self.temperature_k * K_BOLTZMANN,
            b_field: Vec3::from(self.b_tesla) * C_LIGHT,
            omega: Vec3::from(self.omega_rad_s) / C_LIGHT,
            e_field: Vec3::from(self.e_volt_per_m),
            x: Vec3::from(self.x_m),
            radius: self.radius_m,
            branch: Branch::Particle,
        }
    }
}

/// Spin current (J/m or J/m^2) to a charge-current equivalent (A/m or
/// A/m^2) by the factor `charge / (hbar/2)`.
pub fn spin_current_to_ampere(j: f64, charge: f64) -> f64 {
    j * charge / (0.5 * HBAR)
}

/// Natural spin density to SI (J s / m^2 or J s / m^3).
pub fn spin_density_to_si(n: f64) -> f64 {
    n / C_LIGHT
}

/// `dmu/dt` coefficients carry one inverse natural time.
pub fn consistency_coeff_to_si(c: f64) -> f64 {
    c / C_LIGHT
}

/// `mu / m` for a given `(mu - m)/mu`.
pub fn mu_over_m_from_fraction(f: f64) -> f64 {
    1.0 / (1.0 - f)
}

/// `mu / m` for an electron with Fermi wavenumber `kf` (1/m).
pub fn electron_mu_over_m(kf: f64) -> f64 {
    let m = electron_rest_energy();
    super::mu_from_kf(kf, m, HBAR * C_LIGHT) / m
}
