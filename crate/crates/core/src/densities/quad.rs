//! One-dimensional adaptive quadrature and fixed angular rules.

use std::f64::consts::PI;

use crate::Vec3;

// Kronrod 15-point abscissae and weights, embedded 7-point Gauss weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Outcome of an adaptive integration of an `N`-component integrand.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult<const N: usize> {
    pub value: [f64; N],
    /// estimated absolute error (max over components)
    pub error: f64,
    pub intervals: usize,
    pub converged: bool,
}

fn norm<const N: usize>(v: &[f64; N]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn gk15<const N: usize>(f: &impl Fn(f64) -> [f64; N], a: f64, b: f64) -> ([f64; N], f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut k = [0.0; N];
    let mut g = [0.0; N];
    let fc = f(c);
    for n in 0..N {
        k[n] = WGK[7] * fc[n];
        g[n] = WG[3] * fc[n];
    }
    for j in 0..7 {
        let dx = h * XGK[j];
        let (f1, f2) = (f(c - dx), f(c + dx));
        for n in 0..N {
            let s = f1[n] + f2[n];
            k[n] += WGK[j] * s;
            if j % 2 == 1 {
                g[n] += WG[j / 2] * s;
            }
        }
    }
    let mut err = 0.0f64;
    for n in 0..N {
        k[n] *= h;
        g[n] *= h;
        err = err.max((k[n] - g[n]).abs());
    }
    (k, err)
}

/// Adaptive Gauss-Kronrod integration over `[a, b]`, bisecting the interval
/// with the largest error estimate until the total error is below
/// `max(abs_tol, rel_tol |I|)`.
pub fn integrate<const N: usize>(
    f: impl Fn(f64) -> [f64; N],
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> QuadResult<N> {
    const MAX_INTERVALS: usize = 2000;
    if a == b {
        return QuadResult { value: [0.0; N], error: 0.0, intervals: 0, converged: true };
    }
    let (v, e) = gk15(&f, a, b);
    let mut parts = vec![(a, b, v, e)];
    loop {
        let mut total = [0.0; N];
        let mut err = 0.0;
        for (_, _, v, e) in &parts {
            for n in 0..N {
                total[n] += v[n];
            }
            err += e;
        }
        let target = abs_tol.max(rel_tol * norm(&total));
        // the error estimate of GK15 is pessimistic; also stop at round-off
        let floor = 50.0 * f64::EPSILON * norm(&total);
        if err <= target || err <= floor || parts.len() >= MAX_INTERVALS {
            let converged = err <= target || err <= floor;
            return QuadResult { value: total, error: err, intervals: parts.len(), converged };
        }
        let (i, _) = parts
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, p)| if p.3 > best.1 { (i, p.3) } else { best });
        let (lo, hi, _, _) = parts.swap_remove(i);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
}

/// Sum of several [`integrate`] calls over consecutive breakpoints.
pub fn integrate_pieces<const N: usize>(
    f: impl Fn(f64) -> [f64; N],
    points: &[f64],
    rel_tol: f64,
    abs_tol: f64,
) -> QuadResult<N> {
    let mut out = QuadResult { value: [0.0; N], error: 0.0, intervals: 0, converged: true };
    for w in points.windows(2) {
        let r = integrate(&f, w[0], w[1], rel_tol, abs_tol);
        for n in 0..N {
            out.value[n] += r.value[n];
        }
        out.error += r.error;
        out.intervals += r.intervals;
        out.converged &= r.converged;
    }
    out
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on
/// `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, 0.0);
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Product rule on the unit sphere: Gauss-Legendre in `cos(theta)` times a
/// uniform rule in `phi`. Weights sum to `4 pi`.
#[derive(Clone, Debug)]
pub struct SphereRule {
    pub nodes: Vec<(Vec3, f64)>,
}

impl SphereRule {
    pub fn new(n_theta: usize, n_phi: usize) -> Self {
        let (ct, wt) = gauss_legendre(n_theta);
        let dphi = 2.0 * PI / n_phi as f64;
        let mut nodes = Vec::with_capacity(n_theta * n_phi);
        for (c, w) in ct.iter().zip(&wt) {
            let s = (1.0 - c * c).sqrt();
            for k in 0..n_phi {
                let phi = (k as f64 + 0.5) * dphi;
                nodes.push((Vec3::new(s * phi.cos(), s * phi.sin(), *c), w * dphi));
            }
        }
        Self { nodes }
    }

    /// Uniform rule on the unit circle in the xy-plane; weights sum to `2 pi`.
    pub fn circle(n_phi: usize) -> Self {
        let dphi = 2.0 * PI / n_phi as f64;
        let nodes = (0..n_phi)
            .map(|k| {
                let phi = (k as f64 + 0.5) * dphi;
                (Vec3::new(phi.cos(), phi.sin(), 0.0), dphi)
            })
            .collect();
        Self { nodes }
    }

    pub fn integrate<const N: usize>(&self, f: impl Fn(&Vec3) -> [f64; N]) -> [f64; N] {
        let mut acc = [0.0; N];
        for (n, w) in &self.nodes {
            let v = f(n);
            for i in 0..N {
                acc[i] += w * v[i];
            }
        }
        acc
    }
}
