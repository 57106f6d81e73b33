//! 2x2 spin matrices in the Pauli basis.
//!
//! A [`PauliCoeff`] `(c0, c)` stands for `c0 * 1 + c . sigma` with complex
//! coefficients. Vector-valued spin quantities (Berry connection, curvature,
//! velocities) are [`MatrixVector3`]s of those.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::Vec3;

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Complex 3-vector of Pauli coefficients.
pub type CVec3 = [C64; 3];

fn cdot(a: &CVec3, b: &CVec3) -> C64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn ccross(a: &CVec3, b: &CVec3) -> CVec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn real3(v: &Vec3) -> CVec3 {
    [v.x.into(), v.y.into(), v.z.into()]
}

/// `c0 * 1 + cv . sigma`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct PauliCoeff {
    pub c0: C64,
    pub cv: CVec3,
}

impl PauliCoeff {
    pub const ZERO: PauliCoeff = PauliCoeff { c0: ZERO, cv: [ZERO; 3] };
    pub const IDENTITY: PauliCoeff = PauliCoeff { c0: C64::new(1.0, 0.0), cv: [ZERO; 3] };

    pub fn new(c0: C64, cv: CVec3) -> Self {
        Self { c0, cv }
    }

    /// Real scalar times the identity.
    pub fn scalar(s: f64) -> Self {
        Self { c0: s.into(), cv: [ZERO; 3] }
    }

    /// Hermitian element `c0 * 1 + v . sigma` with real coefficients.
    pub fn from_real(c0: f64, v: &Vec3) -> Self {
        Self { c0: c0.into(), cv: real3(v) }
    }

    /// `v . sigma`.
    pub fn sigma_dot(v: &Vec3) -> Self {
        Self::from_real(0.0, v)
    }

    /// Single Pauli matrix, `axis` in 0..3.
    pub fn sigma(axis: usize) -> Self {
        let mut cv = [ZERO; 3];
        cv[axis] = C64::new(1.0, 0.0);
        Self { c0: ZERO, cv }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { c0: self.c0 * s, cv: self.cv.map(|c| c * s) }
    }

    pub fn scale_c(&self, s: C64) -> Self {
        Self { c0: self.c0 * s, cv: self.cv.map(|c| c * s) }
    }

    pub fn trace(&self) -> C64 {
        self.c0 * 2.0
    }

    /// Hermitian conjugate.
    pub fn adjoint(&self) -> Self {
        Self { c0: self.c0.conj(), cv: self.cv.map(|c| c.conj()) }
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.cv.iter().fold(self.c0.norm(), |m, c| m.max(c.norm()))
    }

    /// Largest imaginary part among the coefficients.
    pub fn max_imag(&self) -> f64 {
        self.cv.iter().fold(self.c0.im.abs(), |m, c| m.max(c.im.abs()))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_imag() <= tol
    }

    /// Real parts `(c0, cv)`; meaningful for Hermitian elements.
    pub fn real_parts(&self) -> (f64, Vec3) {
        (self.c0.re, Vec3::new(self.cv[0].re, self.cv[1].re, self.cv[2].re))
    }

    /// Eigenvalue on the spin state with `sigma . n = lambda` when `self`
    /// is read as a c-number: `c0 + lambda * cv . n`.
    pub fn project(&self, axis: &Vec3, lambda: f64) -> C64 {
        self.c0 + cdot(&self.cv, &real3(axis)) * lambda
    }

    /// `Tr[sigma_a self]`.
    pub fn sigma_trace(&self, axis: usize) -> C64 {
        self.cv[axis] * 2.0
    }
}

impl Add for PauliCoeff {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            c0: self.c0 + o.c0,
            cv: [self.cv[0] + o.cv[0], self.cv[1] + o.cv[1], self.cv[2] + o.cv[2]],
        }
    }
}

impl AddAssign for PauliCoeff {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for PauliCoeff {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for PauliCoeff {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for PauliCoeff {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        pauli_mul(&self, &o)
    }
}

impl Mul<f64> for PauliCoeff {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

/// `(a0 + a.s)(b0 + b.s) = (a0 b0 + a.b) + (a0 b + b0 a + i a x b).s`
pub fn pauli_mul(a: &PauliCoeff, b: &PauliCoeff) -> PauliCoeff {
    let x = ccross(&a.cv, &b.cv);
    let mut cv = [ZERO; 3];
    for k in 0..3 {
        cv[k] = a.c0 * b.cv[k] + b.c0 * a.cv[k] + I * x[k];
    }
    PauliCoeff { c0: a.c0 * b.c0 + cdot(&a.cv, &b.cv), cv }
}

/// `[a, b] = (0, 2i a x b)`.
pub fn pauli_commutator(a: &PauliCoeff, b: &PauliCoeff) -> PauliCoeff {
    let x = ccross(&a.cv, &b.cv);
    PauliCoeff { c0: ZERO, cv: x.map(|c| c * 2.0 * I) }
}

/// `Tr(ab) = 2 (a0 b0 + a.b)`.
pub fn pauli_trace_prod(a: &PauliCoeff, b: &PauliCoeff) -> C64 {
    (a.c0 * b.c0 + cdot(&a.cv, &b.cv)) * 2.0
}

/// Symmetrized product `(ab + ba)/2`. Products of Hermitian factors stay
/// Hermitian, which is how every operator product in the kinetic formulas
/// is ordered.
pub fn sym_mul(a: &PauliCoeff, b: &PauliCoeff) -> PauliCoeff {
    let cv = std::array::from_fn(|k| a.c0 * b.cv[k] + b.c0 * a.cv[k]);
    PauliCoeff { c0: a.c0 * b.c0 + cdot(&a.cv, &b.cv), cv }
}

/// 3-vector with [`PauliCoeff`] components.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct MatrixVector3(pub [PauliCoeff; 3]);

impl MatrixVector3 {
    pub const ZERO: MatrixVector3 = MatrixVector3([PauliCoeff::ZERO; 3]);

    pub fn new(x: PauliCoeff, y: PauliCoeff, z: PauliCoeff) -> Self {
        Self([x, y, z])
    }

    pub fn x(&self) -> &PauliCoeff {
        &self.0[0]
    }
    pub fn y(&self) -> &PauliCoeff {
        &self.0[1]
    }
    pub fn z(&self) -> &PauliCoeff {
        &self.0[2]
    }

    /// `v * 1`.
    pub fn from_real(v: &Vec3) -> Self {
        Self([0, 1, 2].map(|i| PauliCoeff::scalar(v[i])))
    }

    /// The vector of Pauli matrices.
    pub fn sigma() -> Self {
        Self([0, 1, 2].map(PauliCoeff::sigma))
    }

    /// `v_i * p` componentwise.
    pub fn outer(v: &Vec3, p: &PauliCoeff) -> Self {
        Self([0, 1, 2].map(|i| p.scale(v[i])))
    }

    pub fn map(&self, f: impl Fn(&PauliCoeff) -> PauliCoeff) -> Self {
        Self([f(&self.0[0]), f(&self.0[1]), f(&self.0[2])])
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|p| p.scale(s))
    }

    /// Symmetrized product of every component with `p`.
    pub fn sym_scale(&self, p: &PauliCoeff) -> Self {
        self.map(|c| sym_mul(c, p))
    }

    /// `sum_i self_i v_i`.
    pub fn dot_real(&self, v: &Vec3) -> PauliCoeff {
        self.0[0].scale(v.x) + self.0[1].scale(v.y) + self.0[2].scale(v.z)
    }

    /// `sum_i sym(self_i, o_i)`.
    pub fn sym_dot(&self, o: &MatrixVector3) -> PauliCoeff {
        sym_mul(&self.0[0], &o.0[0]) + sym_mul(&self.0[1], &o.0[1]) + sym_mul(&self.0[2], &o.0[2])
    }

    /// `self x v` with real `v`.
    pub fn cross_real(&self, v: &Vec3) -> Self {
        let a = &self.0;
        Self([
            a[1].scale(v.z) - a[2].scale(v.y),
            a[2].scale(v.x) - a[0].scale(v.z),
            a[0].scale(v.y) - a[1].scale(v.x),
        ])
    }

    /// `v x self` with real `v`.
    pub fn real_cross(v: &Vec3, m: &MatrixVector3) -> Self {
        -m.cross_real(v)
    }

    /// `self x o` with symmetrized component products.
    pub fn sym_cross(&self, o: &MatrixVector3) -> Self {
        let (a, b) = (&self.0, &o.0);
        Self([
            sym_mul(&a[1], &b[2]) - sym_mul(&a[2], &b[1]),
            sym_mul(&a[2], &b[0]) - sym_mul(&a[0], &b[2]),
            sym_mul(&a[0], &b[1]) - sym_mul(&a[1], &b[0]),
        ])
    }

    /// Identity coefficients as a real vector.
    pub fn scalar_part(&self) -> Vec3 {
        Vec3::new(self.0[0].c0.re, self.0[1].c0.re, self.0[2].c0.re)
    }

    /// `Tr[sigma_a self_i]` for each component `i`.
    pub fn sigma_trace(&self, axis: usize) -> [C64; 3] {
        [0, 1, 2].map(|i| self.0[i].sigma_trace(axis))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, p| m.max(p.max_abs()))
    }

    pub fn max_imag(&self) -> f64 {
        self.0.iter().fold(0.0, |m, p| m.max(p.max_imag()))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_imag() <= tol
    }

    /// Largest identity coefficient modulus.
    pub fn max_trace_part(&self) -> f64 {
        self.0.iter().fold(0.0, |m, p| m.max(p.c0.norm()))
    }

    /// Componentwise [`PauliCoeff::project`].
    pub fn project(&self, axis: &Vec3, lambda: f64) -> [C64; 3] {
        [0, 1, 2].map(|i| self.0[i].project(axis, lambda))
    }
}

impl Index<usize> for MatrixVector3 {
    type Output = PauliCoeff;
    fn index(&self, i: usize) -> &PauliCoeff {
        &self.0[i]
    }
}

impl IndexMut<usize> for MatrixVector3 {
    fn index_mut(&mut self, i: usize) -> &mut PauliCoeff {
        &mut self.0[i]
    }
}

impl Add for MatrixVector3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl AddAssign for MatrixVector3 {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for MatrixVector3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for MatrixVector3 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul<f64> for MatrixVector3 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type M2 = [[C64; 2]; 2];

    fn dense(p: &PauliCoeff) -> M2 {
        let (c0, c) = (p.c0, p.cv);
        [[c0 + c[2], c[0] - I * c[1]], [c[0] + I * c[1], c0 - c[2]]]
    }

    fn matmul(a: &M2, b: &M2) -> M2 {
        let mut r = [[ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        r
    }

    fn close(a: &M2, b: &M2, tol: f64) -> bool {
        (0..2).all(|i| (0..2).all(|j| (a[i][j] - b[i][j]).norm() <= tol))
    }

    fn c64() -> impl Strategy<Value = C64> {
        (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(r, i)| C64::new(r, i))
    }

    fn pauli() -> impl Strategy<Value = PauliCoeff> {
        (c64(), c64(), c64(), c64()).prop_map(|(a, b, c, d)| PauliCoeff::new(a, [b, c, d]))
    }

    fn hermitian() -> impl Strategy<Value = PauliCoeff> {
        prop::array::uniform4(-2.0..2.0f64)
            .prop_map(|v| PauliCoeff::from_real(v[0], &Vec3::new(v[1], v[2], v[3])))
    }

    #[test]
    fn identity_and_sigma_products() {
        let p = PauliCoeff::new(C64::new(0.3, 1.0), [C64::new(1.0, 0.0), I, C64::new(-2.0, 0.5)]);
        assert_eq!(pauli_mul(&PauliCoeff::IDENTITY, &p), p);
        let xy = pauli_mul(&PauliCoeff::sigma(0), &PauliCoeff::sigma(1));
        assert_eq!(xy, PauliCoeff::sigma(2).scale_c(I));
    }

    #[test]
    fn commutator_cases() {
        let sx = PauliCoeff::sigma(0);
        assert_eq!(pauli_commutator(&sx, &sx), PauliCoeff::ZERO);
        let c = pauli_commutator(&sx, &PauliCoeff::sigma(1));
        assert_eq!(c, PauliCoeff::sigma(2).scale_c(I * 2.0));
    }

    #[test]
    fn trace_cases() {
        let one = PauliCoeff::IDENTITY;
        assert_eq!(pauli_trace_prod(&one, &one), C64::new(2.0, 0.0));
        let sz = PauliCoeff::sigma(2);
        assert_eq!(pauli_trace_prod(&sz, &sz), C64::new(2.0, 0.0));
    }

    #[test]
    fn projection_on_axis() {
        let p = PauliCoeff::from_real(1.0, &Vec3::new(0.0, 0.0, 0.5));
        assert!((p.project(&Vec3::z(), -1.0).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn cross_with_real_vector() {
        let s = MatrixVector3::sigma();
        let c = s.cross_real(&Vec3::z());
        // sigma x z = (sigma_y, -sigma_x, 0)
        assert_eq!(c[0], PauliCoeff::sigma(1));
        assert_eq!(c[1], -PauliCoeff::sigma(0));
        assert_eq!(c[2], PauliCoeff::ZERO);
        assert_eq!(MatrixVector3::real_cross(&Vec3::z(), &s), -c);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn mul_matches_dense(a in pauli(), b in pauli()) {
            let r = dense(&pauli_mul(&a, &b));
            prop_assert!(close(&r, &matmul(&dense(&a), &dense(&b)), 1e-14));
        }

        #[test]
        fn commutator_matches_dense(a in pauli(), b in pauli()) {
            let (da, db) = (dense(&a), dense(&b));
            let (ab, ba) = (matmul(&da, &db), matmul(&db, &da));
            let mut want = [[ZERO; 2]; 2];
            for i in 0..2 { for j in 0..2 { want[i][j] = ab[i][j] - ba[i][j]; } }
            prop_assert!(close(&dense(&pauli_commutator(&a, &b)), &want, 1e-14));
        }

        #[test]
        fn trace_prod_matches_dense(a in pauli(), b in pauli()) {
            let ab = matmul(&dense(&a), &dense(&b));
            prop_assert!((pauli_trace_prod(&a, &b) - (ab[0][0] + ab[1][1])).norm() < 1e-14);
            prop_assert!((a.trace() - (dense(&a)[0][0] + dense(&a)[1][1])).norm() < 1e-15);
        }

        #[test]
        fn associative(a in pauli(), b in pauli(), c in pauli()) {
            let l = pauli_mul(&pauli_mul(&a, &b), &c);
            let r = pauli_mul(&a, &pauli_mul(&b, &c));
            let scale = 1.0 + l.max_abs();
            prop_assert!((l - r).max_abs() <= 1e-13 * scale);
        }

        #[test]
        fn symmetrized_product_is_hermitian(a in hermitian(), b in hermitian()) {
            let s = sym_mul(&a, &b);
            prop_assert!(s.is_hermitian(1e-15));
            let half = (pauli_mul(&a, &b) + pauli_mul(&b, &a)).scale(0.5);
            prop_assert!((half - s).max_abs() < 1e-14);
            prop_assert_eq!(s.adjoint(), s);
        }
    }
}
