//! Semiclassical kinetic theory of massive Dirac fermions in a rotating frame.
//!
//! Spin-space quantities live in the Pauli basis ([`spinalg`]). Berry
//! connection and curvature ([`berry`]) feed the phase-space measure and the
//! measure-weighted equations of motion ([`kinematics`]); the relaxation-time
//! Boltzmann solution ([`transport`]) and momentum integrals ([`densities`])
//! produce spin densities, spin currents and spin Hall conductivities.
//!
//! All core math uses natural units with `c = 1` and an explicit `hbar`.
//! [`model::units`] converts SI inputs at the boundary.

pub mod berry;
pub mod cli;
pub mod densities;
pub mod kinematics;
pub mod model;
pub mod spinalg;
pub mod transport;

/// Real 3-vector used for momenta, positions and fields.
pub type Vec3 = nalgebra::Vector3<f64>;

pub use model::{Branch, DerivedFields, ModelError, ParamSet};
pub use spinalg::{MatrixVector3, PauliCoeff};
