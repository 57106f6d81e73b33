//! Relaxation-time solution of the Boltzmann equation to linear order in
//! the driving force `e_mu`.
//!
//! `f1 = -(df0/dE)(chi.p) + tau (df0/dE)(dmu/dt)` with
//! `chi = chi0 + chi1`, `chi1 = g(e_mu.calB) G + (G.calB) C + K`.

use nalgebra::{Matrix3, Vector3};

use crate::berry::berry_curvature;
use crate::kinematics::{effective_force_at, PhasePoint};
use crate::model::{dispersion, Branch, DerivedFields, ParamSet};
use crate::spinalg::{MatrixVector3, PauliCoeff};
use crate::Vec3;

/// Fermi-Dirac occupation `1/(exp[(E - sign mu)/kT] + 1)`; a step at `T = 0`.
pub fn f0(energy: f64, mu: f64, temperature: f64, branch: Branch) -> f64 {
    let edge = branch.sign() * mu;
    if temperature == 0.0 {
        return if energy < edge {
            1.0
        } else if energy == edge {
            0.5
        } else {
            0.0
        };
    }
    let x = (energy - edge) / temperature;
    // 1/(e^x + 1) written to avoid overflow for large |x|
    if x > 0.0 {
        let t = (-x).exp();
        t / (1.0 + t)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

/// `df0/dE`, kept symbolic at `T = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EnergyDerivative {
    Value(f64),
    /// `-delta(E - at)`
    NegDelta { at: f64 },
}

pub fn df0_de(energy: f64, mu: f64, temperature: f64, branch: Branch) -> EnergyDerivative {
    if temperature == 0.0 {
        return EnergyDerivative::NegDelta { at: branch.sign() * mu };
    }
    let f = f0(energy, mu, temperature, branch);
    EnergyDerivative::Value(-f * (1.0 - f) / temperature)
}

/// `chi0 = [g e - g^2 calB x e + g^3 calB (e.calB)] / (1 + d^2)`, `g = tau/E`.
pub fn chi0(energy: f64, tau: f64, calb: &Vec3, e_mu: &Vec3) -> Vec3 {
    let g = tau / energy;
    let d2 = g * g * calb.norm_squared();
    (e_mu * g - calb.cross(e_mu) * (g * g) + calb * (g * g * g * e_mu.dot(calb))) / (1.0 + d2)
}

/// Solves `(E/tau) chi + calB x chi = e_mu` by LU decomposition.
pub fn chi0_linear_oracle(energy: f64, tau: f64, calb: &Vec3, e_mu: &Vec3) -> Vec3 {
    let r = energy / tau;
    let op = Matrix3::new(r, -calb.z, calb.y, calb.z, r, -calb.x, -calb.y, calb.x, r);
    let rhs = Vector3::new(e_mu.x, e_mu.y, e_mu.z);
    // determinant r (r^2 + calB^2) > 0
    op.lu().solve(&rhs).expect("operator is nonsingular for E, tau > 0")
}

/// `C = [-chi0 + g calB x chi0 - g^2 (calB.chi0) calB] / (1 + d^2)`.
pub fn big_c(chi0: &Vec3, g: f64, calb: &Vec3, d2: f64) -> Vec3 {
    (-chi0 + calb.cross(chi0) * g - calb * (g * g * calb.dot(chi0))) / (1.0 + d2)
}

/// `K = -(m hbar / 2E^3)[g^2 (calB x sigma) - g^3 calB x (calB x sigma)](e.calB) / (1 + d^2)`.
pub fn big_k(
    energy: f64,
    m: f64,
    hbar: f64,
    g: f64,
    calb: &Vec3,
    e_mu: &Vec3,
    d2: f64,
) -> MatrixVector3 {
    let bs = MatrixVector3::real_cross(calb, &MatrixVector3::sigma());
    let bbs = MatrixVector3::real_cross(calb, &bs);
    let pre = -m * hbar / (2.0 * energy.powi(3)) * e_mu.dot(calb) / (1.0 + d2);
    (bs.scale(g * g) - bbs.scale(g * g * g)).scale(pre)
}

/// Absolute residual of a defining equation together with the size of its
/// largest term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residual {
    pub abs: f64,
    pub scale: f64,
}

impl Residual {
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.abs
        } else {
            self.abs / self.scale
        }
    }
}

/// `-(E/tau) chi0 - calB x C - (E/tau) C`.
pub fn big_c_residual(energy: f64, tau: f64, calb: &Vec3, chi0: &Vec3, c: &Vec3) -> Residual {
    let r = energy / tau;
    let terms = [chi0 * r, calb.cross(c), c * r];
    let res = -terms[0] - terms[1] - terms[2];
    Residual { abs: res.amax(), scale: terms.iter().fold(0.0, |m, t| m.max(t.amax())) }
}

/// `-g (m hbar / 2E^3)(calB x sigma)(e.calB) - calB x K - (E/tau) K`.
pub fn big_k_residual(
    energy: f64,
    m: f64,
    hbar: f64,
    tau: f64,
    calb: &Vec3,
    e_mu: &Vec3,
    k: &MatrixVector3,
) -> Residual {
    let g = tau / energy;
    let bs = MatrixVector3::real_cross(calb, &MatrixVector3::sigma());
    let src = bs.scale(g * m * hbar / (2.0 * energy.powi(3)) * e_mu.dot(calb));
    let bk = MatrixVector3::real_cross(calb, k);
    let kk = k.scale(energy / tau);
    let res = -src - bk - kk;
    let scale = src.max_abs().max(bk.max_abs()).max(kk.max_abs());
    Residual { abs: res.max_abs(), scale }
}

/// The four vectors parameterizing `f1` at one momentum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiSolution {
    pub chi0: Vec3,
    pub big_c: Vec3,
    pub big_k: MatrixVector3,
    pub chi1: MatrixVector3,
    pub at_energy: f64,
}

impl ChiSolution {
    /// Solve at momentum `p`. `branch` flips the sign of every curvature term.
    pub fn solve(p: &Vec3, d: &DerivedFields, m: f64, hbar: f64, branch: Branch) -> Self {
        let s = branch.sign();
        let chi0 = chi0(d.energy, d.g * d.energy, &d.calb, &d.e_mu);
        let c = big_c(&chi0, d.g, &d.calb, d.d2);
        let k = big_k(d.energy, m, hbar, d.g, &d.calb, &d.e_mu, d.d2).scale(s);
        let g = berry_curvature(p, m, hbar).scale(s);
        let chi1 = chi1_from_parts(&g, d, &c, &k);
        Self { chi0, big_c: c, big_k: k, chi1, at_energy: d.energy }
    }

    /// `chi0 + chi1`.
    pub fn total(&self) -> MatrixVector3 {
        MatrixVector3::from_real(&self.chi0) + self.chi1
    }
}

fn chi1_from_parts(g: &MatrixVector3, d: &DerivedFields, c: &Vec3, k: &MatrixVector3) -> MatrixVector3 {
    g.scale(d.g * d.e_mu.dot(&d.calb)) + MatrixVector3::outer(c, &g.dot_real(&d.calb)) + *k
}

/// `chi1 = g(e.calB) G + (G.calB) C + K` on the particle branch.
pub fn chi1(p: &Vec3, d: &DerivedFields, m: f64, hbar: f64) -> MatrixVector3 {
    ChiSolution::solve(p, d, m, hbar, Branch::Particle).chi1
}

/// Residual of
/// `-(p/E x calB).chi1 + (e.calB)(G.p)/E = (1/tau) chi1.p + (1/tau)(G.calB)(chi0.p)`.
pub fn chi1_residual(p: &Vec3, d: &DerivedFields, m: f64, hbar: f64) -> Residual {
    chi1_residual_with(p, d, m, hbar, d.energy)
}

/// Same equation with the source term as printed, `(e.calB)(G.p)` without
/// the `1/E`; kept to document the discrepancy.
pub fn chi1_residual_printed(p: &Vec3, d: &DerivedFields, m: f64, hbar: f64) -> Residual {
    chi1_residual_with(p, d, m, hbar, 1.0)
}

fn chi1_residual_with(p: &Vec3, d: &DerivedFields, m: f64, hbar: f64, source_div: f64) -> Residual {
    let sol = ChiSolution::solve(p, d, m, hbar, Branch::Particle);
    let tau = d.g * d.energy;
    let g = berry_curvature(p, m, hbar);
    let terms = [
        sol.chi1.dot_real(&(p / d.energy).cross(&d.calb)).scale(-1.0),
        g.dot_real(p).scale(d.e_mu.dot(&d.calb) / source_div),
        sol.chi1.dot_real(p).scale(1.0 / tau),
        g.dot_real(&d.calb).scale(sol.chi0.dot(p) / tau),
    ];
    let res = terms[0] + terms[1] - terms[2] - terms[3];
    Residual { abs: res.max_abs(), scale: terms.iter().fold(0.0, |m, t| m.max(t.max_abs())) }
}

/// `f1 = df0 * coeff`: a spin matrix multiplying `df0/dE`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct F1 {
    pub coeff: PauliCoeff,
    pub df0: EnergyDerivative,
}

impl F1 {
    /// Numeric value when `df0/dE` is smooth.
    pub fn value(&self) -> Option<PauliCoeff> {
        match self.df0 {
            EnergyDerivative::Value(v) => Some(self.coeff.scale(v)),
            EnergyDerivative::NegDelta { .. } => None,
        }
    }
}

/// Occupation data at one phase-space point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistributionPoint {
    pub f0: f64,
    pub df0_de: EnergyDerivative,
    pub f1: F1,
    pub at: PhasePoint,
}

impl DistributionPoint {
    pub fn evaluate(xp: &PhasePoint, params: &ParamSet, grad_mu: &Vec3, dmu_dt: f64) -> Self {
        let e = dispersion(&xp.p, params.m);
        let f1 = f1(xp, params, grad_mu, dmu_dt);
        Self {
            f0: f0(e, params.mu, params.temperature, params.branch),
            df0_de: f1.df0,
            f1,
            at: *xp,
        }
    }
}

pub fn derived_at(xp: &PhasePoint, params: &ParamSet, grad_mu: &Vec3) -> DerivedFields {
    let e = dispersion(&xp.p, params.m);
    let force = effective_force_at(params, &xp.x, e);
    DerivedFields::new(params, e, &force, grad_mu)
}

/// `-(df0/dE)(chi.p) + tau (df0/dE)(dmu/dt)`.
pub fn f1_from_chi(xp: &PhasePoint, params: &ParamSet, chi: &ChiSolution, dmu_dt: f64) -> F1 {
    let e = dispersion(&xp.p, params.m);
    let coeff = -chi.total().dot_real(&xp.p) + PauliCoeff::scalar(params.tau * dmu_dt);
    F1 { coeff, df0: df0_de(e, params.mu, params.temperature, params.branch) }
}

/// The expanded first-order distribution, term by term as displayed:
/// `-(df0/dE){ g(calB.e)(G.p) - tau dmu/dt
///   + p.(g e - g^2 calB x e + g^3 (1 - G.calB)(calB.e) calB
///        - g^2 (m hbar/2E^3)(calB.e)[calB x sigma - g calB x (calB x sigma)]) / (1+d^2)
///   - (G.calB)/(1+d^2)^2 (g(1-d^2) e.p - 2g^2 (calB x e).p + 2g^3 (calB.e)(calB.p)) }`.
pub fn f1(xp: &PhasePoint, params: &ParamSet, grad_mu: &Vec3, dmu_dt: f64) -> F1 {
    let d = derived_at(xp, params, grad_mu);
    let s = params.branch.sign();
    let (g, d2, b, e, p) = (d.g, d.d2, d.calb, d.e_mu, xp.p);
    let en = d.energy;
    let gc = berry_curvature(&p, params.m, params.hbar).scale(s);
    let gb = gc.dot_real(&b);
    let be = b.dot(&e);

    let mut brace = gc.dot_real(&p).scale(g * be) - PauliCoeff::scalar(params.tau * dmu_dt);

    let plain = p.dot(&(e * g - b.cross(&e) * (g * g)));
    let with_gb = (PauliCoeff::IDENTITY - gb).scale(g * g * g * be * b.dot(&p));
    let bs = MatrixVector3::real_cross(&b, &MatrixVector3::sigma());
    let bbs = MatrixVector3::real_cross(&b, &bs);
    let kterm = (bs - bbs.scale(g))
        .dot_real(&p)
        .scale(s * g * g * params.m * params.hbar / (2.0 * en.powi(3)) * be);
    brace += (PauliCoeff::scalar(plain) + with_gb - kterm).scale(1.0 / (1.0 + d2));

    let last = g * (1.0 - d2) * e.dot(&p) - 2.0 * g * g * b.cross(&e).dot(&p)
        + 2.0 * g * g * g * be * b.dot(&p);
    brace += gb.scale(-last / ((1.0 + d2) * (1.0 + d2)));

    F1 { coeff: -brace, df0: df0_de(en, params.mu, params.temperature, params.branch) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vec3(r: f64) -> impl Strategy<Value = Vec3> {
        prop::array::uniform3(-r..r).prop_map(Vec3::from)
    }

    #[test]
    fn fermi_dirac_cases() {
        let p = Branch::Particle;
        assert_eq!(f0(0.5, 1.0, 0.0, p), 1.0);
        assert_eq!(f0(1.5, 1.0, 0.0, p), 0.0);
        assert_eq!(f0(1.0, 1.0, 0.01, p), 0.5);
        assert_eq!(f0(1.5, 1.0, 0.0, Branch::Antiparticle), 0.0);
        assert!(f0(1e3, 1.0, 1e-3, p) == 0.0 && f0(-1e3, 1.0, 1e-3, p) == 1.0);
        assert_eq!(df0_de(1.0, 1.0, 0.0, p), EnergyDerivative::NegDelta { at: 1.0 });
        assert_eq!(df0_de(1.0, 1.0, 0.1, p), EnergyDerivative::Value(-2.5));
    }

    #[test]
    fn chi0_drift_limit() {
        let e = Vec3::new(0.3, -0.2, 0.9);
        let c = chi0(2.0, 0.5, &Vec3::zeros(), &e);
        assert!((c - e * 0.25).norm() < 1e-16);
        let b = e * 1.7;
        let c = chi0(2.0, 0.5, &b, &e);
        assert!((c - e * 0.25).norm() < 1e-15);
    }

    #[test]
    fn c_cases() {
        let x = Vec3::new(0.3, -0.2, 0.9);
        assert_eq!(big_c(&x, 0.4, &Vec3::zeros(), 0.0), -x);
        let b = x * 2.0;
        let g = 0.4;
        let d2 = g * g * b.norm_squared();
        assert!((big_c(&x, g, &b, d2) + x).norm() < 1e-15);
    }

    #[test]
    fn k_vanishes_without_parallel_drive() {
        let b = Vec3::new(0.0, 0.0, 1.3);
        let k = big_k(1.5, 1.0, 0.3, 0.5, &b, &Vec3::x(), 0.25 * 1.69);
        assert_eq!(k, MatrixVector3::ZERO);
        let k = big_k(1.5, 1.0, 0.3, 0.5, &Vec3::zeros(), &Vec3::x(), 0.0);
        assert_eq!(k, MatrixVector3::ZERO);
    }

    #[test]
    fn chi1_vanishing_cases() {
        let p = Vec3::new(0.2, 0.4, -0.3);
        let en = dispersion(&p, 1.0);
        let d = DerivedFields::from_parts(en, 0.7, Vec3::zeros(), Vec3::new(1.0, 2.0, 3.0));
        assert_eq!(chi1(&p, &d, 1.0, 0.2), MatrixVector3::ZERO);
        assert_eq!(chi1_residual(&p, &d, 1.0, 0.2).abs, 0.0);
        let d = DerivedFields::from_parts(en, 0.7, Vec3::new(1.0, 2.0, 3.0), Vec3::zeros());
        assert_eq!(chi1(&p, &d, 1.0, 0.2), MatrixVector3::ZERO);
    }

    #[test]
    fn chi1_residual_collinear() {
        let dir = Vec3::new(1.0, -2.0, 0.5).normalize();
        let p = dir * 0.8;
        let en = dispersion(&p, 1.0);
        let d = DerivedFields::from_parts(en, 0.7, dir * 1.1, dir * 0.4);
        assert!(chi1_residual(&p, &d, 1.0, 0.2).abs < 1e-12);
    }

    #[test]
    fn printed_chi1_source_leaves_residual() {
        let p = Vec3::new(0.3, 0.1, -0.4);
        let en = dispersion(&p, 1.0);
        let d = DerivedFields::from_parts(en, 0.7, Vec3::new(0.2, 0.3, 1.1), Vec3::new(0.5, -0.1, 0.8));
        assert!(chi1_residual(&p, &d, 1.0, 0.2).relative() < 1e-13);
        assert!(chi1_residual_printed(&p, &d, 1.0, 0.2).relative() > 1e-3);
    }

    #[test]
    fn f1_drift_and_time_terms() {
        let xp = PhasePoint::new(Vec3::zeros(), Vec3::new(0.3, 0.1, -0.4));
        let params = ParamSet { tau: 0.6, e_field: Vec3::new(0.2, 0.0, 0.1), temperature: 0.05, ..ParamSet::default() };
        let f = f1(&xp, &params, &Vec3::zeros(), 0.3);
        let en = dispersion(&xp.p, 1.0);
        let g = params.tau / en;
        let want = PauliCoeff::scalar(-g * (params.e_field * params.q).dot(&xp.p) + params.tau * 0.3);
        assert!((f.coeff - want).max_abs() < 1e-16);
        let zero = f1(&xp, &ParamSet { e_field: Vec3::zeros(), ..params }, &Vec3::zeros(), 0.0);
        assert_eq!(zero.coeff.max_abs(), 0.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn chi0_matches_linear_solve(en in 0.1..10.0f64, tau in 0.01..10.0f64, b in vec3(5.0), e in vec3(5.0)) {
            let a = chi0(en, tau, &b, &e);
            let o = chi0_linear_oracle(en, tau, &b, &e);
            prop_assert!((a - o).norm() <= 1e-12 * o.norm().max(1e-300));
        }

        #[test]
        fn c_and_k_residuals(en in 0.5..10.0f64, tau in 0.01..10.0f64, b in vec3(5.0), e in vec3(5.0), hbar in 0.01..1.0f64) {
            let d = DerivedFields::from_parts(en, tau, b, e);
            let sol = ChiSolution::solve(&Vec3::new(0.1, 0.2, 0.3), &d, 0.5, hbar, Branch::Particle);
            prop_assert!(big_c_residual(en, tau, &b, &sol.chi0, &sol.big_c).relative() < 1e-12);
            prop_assert!(big_k_residual(en, 0.5, hbar, tau, &b, &e, &sol.big_k).relative() < 1e-12);
            prop_assert!(sol.big_k.max_trace_part() == 0.0 && sol.big_k.is_hermitian(0.0));
        }

        #[test]
        fn chi1_residual_small(p in vec3(3.0), m in 0.2..3.0f64, tau in 0.01..5.0f64, b in vec3(3.0), e in vec3(3.0)) {
            let d = DerivedFields::from_parts(dispersion(&p, m), tau, b, e);
            prop_assert!(chi1_residual(&p, &d, m, 0.3).relative() < 1e-10);
            prop_assert!(chi1(&p, &d, m, 0.3).max_trace_part() == 0.0);
        }

        #[test]
        fn chi0_and_c_isotropic(r in 0.1..3.0f64, b in vec3(3.0), e in vec3(3.0), d1 in vec3(1.0), d2 in vec3(1.0)) {
            prop_assume!(d1.norm() > 0.1 && d2.norm() > 0.1);
            let m = 0.7;
            let solve = |dir: Vec3| {
                let p = dir.normalize() * r;
                ChiSolution::solve(&p, &DerivedFields::from_parts(dispersion(&p, m), 0.8, b, e), m, 0.2, Branch::Particle)
            };
            let (a, c) = (solve(d1), solve(d2));
            prop_assert!((a.chi0 - c.chi0).norm() <= 1e-14 * (1.0 + a.chi0.norm()));
            prop_assert!((a.big_c - c.big_c).norm() <= 1e-14 * (1.0 + a.big_c.norm()));
        }

        #[test]
        fn expanded_f1_equals_assembly(x in vec3(0.5), p in vec3(2.0), b in vec3(1.0), w in vec3(0.3), ef in vec3(1.0), gm in vec3(0.5), dmu in -1.0..1.0f64, anti in any::<bool>()) {
            let branch = if anti { Branch::Antiparticle } else { Branch::Particle };
            let params = ParamSet { m: 0.8, q: -0.6, hbar: 0.3, tau: 0.9, b_field: b, omega: w, e_field: ef, branch, ..ParamSet::default() };
            let xp = PhasePoint::new(x, p);
            let d = derived_at(&xp, &params, &gm);
            let chi = ChiSolution::solve(&p, &d, params.m, params.hbar, branch);
            let a = f1(&xp, &params, &gm, dmu);
            let c = f1_from_chi(&xp, &params, &chi, dmu);
            prop_assert_eq!(a.df0, c.df0);
            prop_assert!((a.coeff - c.coeff).max_abs() <= 1e-12 * (1.0 + c.coeff.max_abs()));
        }

        #[test]
        fn f1_odd_in_drive(x in vec3(0.5), p in vec3(2.0), b in vec3(1.0), ef in vec3(1.0)) {
            let params = ParamSet { hbar: 0.3, b_field: b, e_field: ef, ..ParamSet::default() };
            let flipped = ParamSet { e_field: -ef, ..params.clone() };
            let xp = PhasePoint::new(x, p);
            let a = f1(&xp, &params, &Vec3::zeros(), 0.0).coeff;
            let c = f1(&xp, &flipped, &Vec3::zeros(), 0.0).coeff;
            prop_assert!((a + c).max_abs() <= 1e-14 * (1.0 + a.max_abs()));
        }

        #[test]
        fn antiparticle_flips_curvature_terms(p in vec3(2.0), b in vec3(2.0), e in vec3(2.0)) {
            let d = DerivedFields::from_parts(dispersion(&p, 1.0), 0.5, b, e);
            let a = ChiSolution::solve(&p, &d, 1.0, 0.3, Branch::Particle);
            let c = ChiSolution::solve(&p, &d, 1.0, 0.3, Branch::Antiparticle);
            prop_assert_eq!(a.chi0, c.chi0);
            prop_assert!((a.chi1 + c.chi1).max_abs() < 1e-15);
        }
    }
}
