#![allow(dead_code)]

use nalgebra::{Complex, Matrix2, Matrix4};
use quancorr::pauli::Op4;
use quancorr::state::DensityMatrix;
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

/// `GG†/tr(GG†)` for a complex Gaussian `G`.
pub fn random_density(rng: &mut ChaCha8Rng) -> DensityMatrix {
    let g = Matrix4::from_fn(|_, _| gauss(rng));
    let m = g * g.adjoint();
    let tr = m.trace();
    DensityMatrix::new(m.map(|z| z / tr)).unwrap()
}

pub fn random_pure(rng: &mut ChaCha8Rng) -> DensityMatrix {
    let v: [C64; 4] = std::array::from_fn(|_| gauss(rng));
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    DensityMatrix::from_ket(&v.map(|z| z / n)).unwrap()
}

/// Kets `|+n⟩, |−n⟩` for `n = (sinθcosφ, sinθsinφ, cosθ)`.
fn kets(theta: f64, phi: f64) -> [[C64; 2]; 2] {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let e = C64::from_polar(1.0, phi);
    [[C64::new(c, 0.0), e * s], [C64::new(s, 0.0), -e * c]]
}

/// `n` polar angles over `[0, π]` and `n` azimuths over `[0, 2π)`, with
/// antipodal directions kept once.
fn half_sphere(n: usize) -> Vec<[[C64; 2]; 2]> {
    let pi = std::f64::consts::PI;
    let mut out = Vec::new();
    for k in 0..n.div_ceil(2) {
        let t = pi * k as f64 / (n - 1) as f64;
        for m in 0..n {
            out.push(kets(t, 2.0 * pi * m as f64 / n as f64));
        }
    }
    out
}

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

/// Grid maximum of `objective` over product measurements on an `n⁴` angle grid.
pub fn grid_max(m: &Op4<f64>, n: usize, objective: impl Fn(&[f64; 4]) -> f64) -> f64 {
    let dirs = half_sphere(n);
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

/// Second-order measured mutual information of deviation weights.
pub fn epsilon_mi(d: &[f64; 4]) -> f64 {
    let sq: f64 = d.iter().map(|x| x * x).sum();
    let a = (d[0] + d[1]).powi(2) + (d[2] + d[3]).powi(2);
    let b = (d[0] + d[2]).powi(2) + (d[1] + d[3]).powi(2);
    2.0 * sq - a - b
}

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_quancorr")
}
