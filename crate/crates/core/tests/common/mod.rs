#![allow(dead_code)]

use nalgebra::{Complex, Matrix2, Matrix4};
use quancorr::pauli::Op4;
use quancorr::state::{DensityMatrix, DeviationState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex<f64>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gauss(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Full-rank random state `GG†/tr(GG†)`, optionally mixed toward purity.
pub fn random_density(rng: &mut ChaCha8Rng) -> DensityMatrix {
    let g = Matrix4::from_fn(|_, _| gauss(rng));
    let m = g * g.adjoint();
    let tr = m.trace();
    DensityMatrix::new(m.map(|z| z / tr)).unwrap()
}

/// Random traceless Hermitian deviation with entries of order one.
pub fn random_deviation(rng: &mut ChaCha8Rng, epsilon: f64) -> DeviationState {
    let g = Matrix4::from_fn(|_, _| gauss(rng));
    let mut h = (g + g.adjoint()).map(|z| z * 0.25);
    let tr = h.trace() / 4.0;
    for k in 0..4 {
        h[(k, k)] -= tr;
    }
    DeviationState::new(epsilon, h).unwrap()
}

pub fn random_unitary2(rng: &mut ChaCha8Rng) -> Matrix2<C64> {
    let g = Matrix2::from_fn(|_, _| gauss(rng));
    g.qr().q()
}

pub fn kron2(a: &Matrix2<C64>, b: &Matrix2<C64>) -> Op4<f64> {
    Matrix4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// Kets `|+n⟩, |−n⟩` for `n = (sinθcosφ, sinθsinφ, cosθ)`.
pub fn kets(theta: f64, phi: f64) -> [[C64; 2]; 2] {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let e = C64::from_polar(1.0, phi);
    [[C64::new(c, 0.0), e * s], [C64::new(s, 0.0), -e * c]]
}

pub struct Grid {
    pub thetas: Vec<f64>,
    pub phis: Vec<f64>,
}

impl Grid {
    /// `n` polar angles over `[0, π]` inclusive and `n` azimuths over `[0, 2π)`.
    pub fn new(n: usize) -> Self {
        let pi = std::f64::consts::PI;
        Self {
            thetas: (0..n).map(|k| pi * k as f64 / (n - 1) as f64).collect(),
            phis: (0..n).map(|k| 2.0 * pi * k as f64 / n as f64).collect(),
        }
    }

    /// Directions whose antipodes are also on the grid are kept once, since
    /// `±n` define the same measurement.
    pub fn half_sphere(&self) -> Vec<[[C64; 2]; 2]> {
        let half = self.thetas.len().div_ceil(2);
        let mut out = Vec::new();
        for &t in &self.thetas[..half] {
            for &p in &self.phis {
                out.push(kets(t, p));
            }
        }
        out
    }
}

/// `⟨ψ|_a M |ψ⟩_a` as a 2×2 operator on `b`.
fn conditional(m: &Op4<f64>, ket: &[C64; 2]) -> Matrix2<C64> {
    Matrix2::from_fn(|r, c| {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                acc += ket[i].conj() * m[(2 * i + r, 2 * j + c)] * ket[j];
            }
        }
        acc
    })
}

fn form(m: &Matrix2<C64>, ket: &[C64; 2]) -> f64 {
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            acc += ket[i].conj() * m[(i, j)] * ket[j];
        }
    }
    acc.re
}

/// Maximum over the grid of `objective(d)` where
/// `d = [⟨++|M|++⟩, ⟨+−|M|+−⟩, ⟨−+|M|−+⟩, ⟨−−|M|−−⟩]`.
pub fn grid_max(m: &Op4<f64>, n: usize, objective: impl Fn(&[f64; 4]) -> f64) -> f64 {
    let dirs = Grid::new(n).half_sphere();
    let mut best = f64::NEG_INFINITY;
    for ka in &dirs {
        let cond = [conditional(m, &ka[0]), conditional(m, &ka[1])];
        for kb in &dirs {
            let d = [form(&cond[0], &kb[0]), form(&cond[0], &kb[1]), form(&cond[1], &kb[0]), form(&cond[1], &kb[1])];
            best = best.max(objective(&d));
        }
    }
    best
}

fn h(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

/// Classical mutual information of outcome probabilities, in bits.
pub fn classical_mi(p: &[f64; 4]) -> f64 {
    h(&[p[0] + p[1], p[2] + p[3]]) + h(&[p[0] + p[2], p[1] + p[3]]) - h(p)
}

/// Second-order measured mutual information of deviation weights.
pub fn epsilon_mi(d: &[f64; 4]) -> f64 {
    let sq: f64 = d.iter().map(|x| x * x).sum();
    let a = (d[0] + d[1]).powi(2) + (d[2] + d[3]).powi(2);
    let b = (d[0] + d[2]).powi(2) + (d[1] + d[3]).powi(2);
    2.0 * sq - a - b
}
