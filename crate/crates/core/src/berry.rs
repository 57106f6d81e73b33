//! Matrix-valued Berry connection and curvature of the positive-energy
//! Dirac branch, and the semiclassical Hamiltonian built from them.

use num_complex::Complex64;

use crate::model::{dispersion, ParamSet};
use crate::spinalg::{pauli_commutator, MatrixVector3, PauliCoeff};
use crate::Vec3;

/// Connection and curvature at one momentum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BerryData {
    pub connection: MatrixVector3,
    pub curvature: MatrixVector3,
    pub at: Vec3,
}

impl BerryData {
    pub fn at(p: &Vec3, m: f64, hbar: f64) -> Self {
        Self {
            connection: berry_connection(p, m, hbar),
            curvature: berry_curvature(p, m, hbar),
            at: *p,
        }
    }
}

/// `A = hbar (sigma x p) / (2E(E+m))`.
pub fn berry_connection(p: &Vec3, m: f64, hbar: f64) -> MatrixVector3 {
    let e = dispersion(p, m);
    let f = hbar / (2.0 * e * (e + m));
    // (sigma x p)_j = (p x e_j) . sigma
    let basis = [Vec3::x(), Vec3::y(), Vec3::z()];
    MatrixVector3(basis.map(|ej| PauliCoeff::sigma_dot(&(p.cross(&ej) * f))))
}

/// `G = (hbar m / 2E^3) (sigma + p (sigma.p) / (m (m+E)))`.
pub fn berry_curvature(p: &Vec3, m: f64, hbar: f64) -> MatrixVector3 {
    let e = dispersion(p, m);
    let f = hbar * m / (2.0 * e * e * e);
    let w = 1.0 / (m * (m + e));
    let basis = [Vec3::x(), Vec3::y(), Vec3::z()];
    let mut out = MatrixVector3::ZERO;
    for k in 0..3 {
        out[k] = PauliCoeff::sigma_dot(&((basis[k] + p * (p[k] * w)) * f));
    }
    out
}

/// Default finite-difference step `1e-5 max(|p|, m)`.
pub fn default_fd_step(p: &Vec3, m: f64) -> f64 {
    1e-5 * p.norm().max(m)
}

/// Curvature from the covariant-derivative definition
/// `G_ij = dA_j/dp_i - dA_i/dp_j + (i/hbar)[A_i, A_j]`, `G_ij = eps_ijk G_k`,
/// with central differences of step `h`.
pub fn curvature_fd_oracle(p: &Vec3, m: f64, hbar: f64, h: f64) -> MatrixVector3 {
    let basis = [Vec3::x(), Vec3::y(), Vec3::z()];
    let deriv = |i: usize| -> MatrixVector3 {
        let up = berry_connection(&(p + basis[i] * h), m, hbar);
        let dn = berry_connection(&(p - basis[i] * h), m, hbar);
        (up - dn).scale(0.5 / h)
    };
    let d = [deriv(0), deriv(1), deriv(2)];
    let a = berry_connection(p, m, hbar);
    let ih = Complex64::new(0.0, 1.0 / hbar);
    let mut out = MatrixVector3::ZERO;
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        out[k] = d[i][j] - d[j][i] + pauli_commutator(&a[i], &a[j]).scale_c(ih);
    }
    out
}

/// `H = E [1 - sign G.(qB + E Omega)]`.
pub fn semiclassical_hamiltonian(p: &Vec3, params: &ParamSet) -> PauliCoeff {
    let e = dispersion(p, params.m);
    let g = berry_curvature(p, params.m, params.hbar);
    let field = params.b_field * params.q + params.omega * e;
    let s = params.branch.sign();
    (PauliCoeff::IDENTITY - g.dot_real(&field).scale(s)).scale(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Branch;
    use proptest::prelude::*;

    fn vec3(r: f64) -> impl Strategy<Value = Vec3> {
        prop::array::uniform3(-r..r).prop_map(Vec3::from)
    }

    #[test]
    fn connection_at_rest_vanishes() {
        assert_eq!(berry_connection(&Vec3::zeros(), 1.0, 1.0), MatrixVector3::ZERO);
    }

    #[test]
    fn connection_along_z() {
        let (p, m, hbar): (f64, f64, f64) = (0.8, 0.6, 0.3);
        let e: f64 = (p * p + m * m).sqrt();
        let a = berry_connection(&Vec3::new(0.0, 0.0, p), m, hbar);
        let f = hbar * p / (2.0 * e * (e + m));
        let want = MatrixVector3::new(PauliCoeff::sigma(1).scale(f), PauliCoeff::sigma(0).scale(-f), PauliCoeff::ZERO);
        assert!((a - want).max_abs() < 1e-16);
    }

    #[test]
    fn curvature_at_rest() {
        let (m, hbar) = (1.7, 0.4);
        let g = berry_curvature(&Vec3::zeros(), m, hbar);
        let want = MatrixVector3::sigma().scale(hbar / (2.0 * m * m));
        assert!((g - want).max_abs() < 1e-16);
        let fd = curvature_fd_oracle(&Vec3::zeros(), m, hbar, 1e-4);
        assert!((fd - want).max_abs() < 1e-9);
    }

    #[test]
    fn weyl_limit_helicity() {
        // m << |p|: G.p_hat on helicity eigenstates -> +-hbar/(2p^2)
        let (p, hbar) = (2.0, 1.0);
        let dir = Vec3::new(1.0, 2.0, -0.5).normalize();
        let g = berry_curvature(&(dir * p), 1e-6 * p, hbar);
        let gp = g.dot_real(&dir);
        for lambda in [1.0, -1.0] {
            let v = gp.project(&dir, lambda).re;
            assert!((v - lambda * hbar / (2.0 * p * p)).abs() < 1e-9);
        }
    }

    #[test]
    fn hamiltonian_cases() {
        let params = ParamSet { m: 1.3, hbar: 0.2, ..ParamSet::default() };
        let p = Vec3::new(0.3, -0.1, 0.4);
        let h = semiclassical_hamiltonian(&p, &params);
        assert!((h - PauliCoeff::scalar(dispersion(&p, 1.3))).max_abs() < 1e-16);

        let w = 0.7;
        for branch in [Branch::Particle, Branch::Antiparticle] {
            let params = ParamSet { q: 0.0, omega: Vec3::z() * w, branch, ..params.clone() };
            let h = semiclassical_hamiltonian(&Vec3::zeros(), &params);
            let want = PauliCoeff::from_real(1.3, &Vec3::new(0.0, 0.0, -branch.sign() * 0.2 * w / 2.0));
            assert!((h - want).max_abs() < 1e-15);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn connection_orthogonal_to_p(p in vec3(3.0), m in 0.1..3.0f64) {
            let a = berry_connection(&p, m, 1.0);
            prop_assert!(a.dot_real(&p).max_abs() < 1e-15);
            prop_assert!(a.max_trace_part() == 0.0 && a.is_hermitian(0.0));
        }

        #[test]
        fn curvature_longitudinal_identity(p in vec3(3.0), m in 0.1..3.0f64, hbar in 0.1..2.0f64) {
            prop_assume!(p.norm() > 1e-3);
            let e = dispersion(&p, m);
            let ph = p.normalize();
            let g = berry_curvature(&p, m, hbar);
            let diff = g.dot_real(&ph) - PauliCoeff::sigma_dot(&ph).scale(hbar / (2.0 * e * e));
            prop_assert!(diff.max_abs() < 1e-12 * hbar / (m * m));
            prop_assert!(g.max_trace_part() == 0.0 && g.is_hermitian(0.0));
        }

        #[test]
        fn curvature_linear_in_hbar(p in vec3(3.0), m in 0.1..3.0f64) {
            let g1 = berry_curvature(&p, m, 1.0);
            let g3 = berry_curvature(&p, m, 3.0);
            prop_assert!((g3 - g1.scale(3.0)).max_abs() < 1e-14 / (m * m));
        }

        #[test]
        fn hamiltonian_linear_in_b(p in vec3(2.0), b1 in vec3(2.0), b2 in vec3(2.0)) {
            let base = ParamSet { m: 0.9, hbar: 0.5, q: -0.8, ..ParamSet::default() };
            let e = PauliCoeff::scalar(dispersion(&p, 0.9));
            let h = |b: Vec3| semiclassical_hamiltonian(&p, &ParamSet { b_field: b, ..base.clone() }) - e;
            prop_assert!((h(b1 + b2) - h(b1) - h(b2)).max_abs() < 1e-14);
            prop_assert!(h(b1).is_hermitian(0.0));
        }
    }
}
