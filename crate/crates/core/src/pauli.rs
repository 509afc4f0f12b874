//! Pauli operators, tensor products and small matrix helpers on the
//! `|00>, |01>, |10>, |11>` basis with qubit `a` as the left factor.

use nalgebra::{Complex, Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::scalar::Real;

pub type Op2<T> = Matrix2<Complex<T>>;
pub type Op4<T> = Matrix4<Complex<T>>;

#[inline]
pub fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

#[inline]
pub fn cr<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

/// Single-qubit Pauli operators; `X`, `Y`, `Z` are indices 1, 2, 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const AXES: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix<T: Real>(self) -> Op2<T> {
        let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
        match self {
            Pauli::I => Op2::identity(),
            Pauli::X => Op2::new(o, l, l, o),
            Pauli::Y => Op2::new(o, -i, i, o),
            Pauli::Z => Op2::new(l, o, o, -l),
        }
    }
}

/// Which half of the bipartite system an operation addresses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Qubit {
    /// Left tensor factor (hydrogen in the NMR experiment).
    A,
    /// Right tensor factor (carbon).
    B,
}

pub fn kron<T: Real>(a: &Op2<T>, b: &Op2<T>) -> Op4<T> {
    Op4::from_fn(|r, col| a[(r / 2, col / 2)] * b[(r % 2, col % 2)])
}

/// `σ_p ⊗ σ_q`.
pub fn pauli_pair<T: Real>(p: Pauli, q: Pauli) -> Op4<T> {
    kron(&p.matrix(), &q.matrix())
}

/// Embeds a single-qubit operator on `qubit`, identity on the other factor.
pub fn embed<T: Real>(op: &Op2<T>, qubit: Qubit) -> Op4<T> {
    match qubit {
        Qubit::A => kron(op, &Op2::identity()),
        Qubit::B => kron(&Op2::identity(), op),
    }
}

/// `σ_p` acting on `qubit`.
pub fn local_pauli<T: Real>(p: Pauli, qubit: Qubit) -> Op4<T> {
    embed(&p.matrix(), qubit)
}

/// Real part of `tr(A B)`; exact for Hermitian pairs.
pub fn trace_product<T: Real>(a: &Op4<T>, b: &Op4<T>) -> T {
    let mut acc = T::zero();
    for r in 0..4 {
        for k in 0..4 {
            acc += (a[(r, k)] * b[(k, r)]).re;
        }
    }
    acc
}

pub fn trace_product2<T: Real>(a: &Op2<T>, b: &Op2<T>) -> T {
    let mut acc = T::zero();
    for r in 0..2 {
        for k in 0..2 {
            acc += (a[(r, k)] * b[(k, r)]).re;
        }
    }
    acc
}

/// Largest entry modulus of `m - m†`.
pub fn hermiticity_defect<T: Real>(m: &Op4<T>) -> T {
    let mut worst = T::zero();
    for r in 0..4 {
        for k in 0..4 {
            let d = (m[(r, k)] - m[(k, r)].conj()).norm_sqr().sqrt();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Replaces `m` by `(m + m†)/2`.
pub fn hermitize<T: Real>(m: &Op4<T>) -> Op4<T> {
    (m + m.adjoint()).map(|z| z * T::lit(0.5))
}

/// Eigenvalues of a Hermitian 4x4 operator in ascending order.
pub fn hermitian_eigenvalues<T: Real>(m: &Op4<T>) -> [T; 4] {
    let eig = nalgebra::SymmetricEigen::new(hermitize(m));
    let mut vals = [
        eig.eigenvalues[0],
        eig.eigenvalues[1],
        eig.eigenvalues[2],
        eig.eigenvalues[3],
    ];
    vals.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    vals
}

pub fn hermitian_eigenvalues2<T: Real>(m: &Op2<T>) -> [T; 2] {
    let h = (m + m.adjoint()).map(|z| z * T::lit(0.5));
    let eig = nalgebra::SymmetricEigen::new(h);
    let (x, y) = (eig.eigenvalues[0], eig.eigenvalues[1]);
    if x <= y {
        [x, y]
    } else {
        [y, x]
    }
}

/// Partial trace of a 4x4 operator, keeping `keep`.
pub fn partial_trace_op<T: Real>(m: &Op4<T>, keep: Qubit) -> Op2<T> {
    Op2::from_fn(|r, col| match keep {
        Qubit::A => m[(2 * r, 2 * col)] + m[(2 * r + 1, 2 * col + 1)],
        Qubit::B => m[(r, col)] + m[(r + 2, col + 2)],
    })
}

/// `U M U†`.
pub fn conjugate<T: Real>(u: &Op4<T>, m: &Op4<T>) -> Op4<T> {
    u * m * u.adjoint()
}

pub fn is_finite<T: Real>(m: &Op4<T>) -> bool {
    m.iter()
        .all(|z| z.re.as_f64().is_finite() && z.im.as_f64().is_finite())
}

/// `|tr(U† V)|/4`, the phase-insensitive overlap of two 4x4 unitaries.
pub fn propagator_fidelity<T: Real>(u: &Op4<T>, v: &Op4<T>) -> T {
    (u.adjoint() * v).trace().norm_sqr().sqrt() / T::lit(4.0)
}

/// Largest entry modulus of `U U† - 𝕀`.
pub fn unitarity_defect<T: Real>(u: &Op4<T>) -> T {
    let d = u * u.adjoint() - Op4::<T>::identity();
    d.iter().fold(T::zero(), |acc, z| {
        let m = z.norm_sqr().sqrt();
        if m > acc {
            m
        } else {
            acc
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        let x = Pauli::X.matrix::<f64>();
        let y = Pauli::Y.matrix::<f64>();
        let z = Pauli::Z.matrix::<f64>();
        let i = Complex::new(0.0, 1.0);
        assert_eq!(x * y, z.map(|e| e * i));
        assert_eq!(x * x, Op2::identity());
    }

    #[test]
    fn kron_ordering_puts_a_first() {
        // σ_z ⊗ 𝕀 is diag(1, 1, -1, -1).
        let m = local_pauli::<f64>(Pauli::Z, Qubit::A);
        let d: Vec<f64> = (0..4).map(|k| m[(k, k)].re).collect();
        assert_eq!(d, vec![1.0, 1.0, -1.0, -1.0]);
        let m = local_pauli::<f64>(Pauli::Z, Qubit::B);
        let d: Vec<f64> = (0..4).map(|k| m[(k, k)].re).collect();
        assert_eq!(d, vec![1.0, -1.0, 1.0, -1.0]);
    }

    #[test]
    fn partial_trace_of_product() {
        let a = Pauli::X.matrix::<f64>();
        let b = Op2::identity();
        let m = kron(&a, &b);
        assert_eq!(partial_trace_op(&m, Qubit::A), a.map(|z| z * 2.0));
        assert_eq!(partial_trace_op(&m, Qubit::B), Op2::zeros());
    }
}
