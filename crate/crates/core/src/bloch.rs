//! Bloch-form parametrization `ρ = (𝕀 + Σ 𝒜ᵢσᵢ⊗𝕀 + ℬᵢ𝕀⊗σᵢ + 𝒞ᵢσᵢ⊗σᵢ)/4`
//! and the orthogonal-basis classical states `Σ p_ij |αᵢ><αᵢ| ⊗ |βⱼ><βⱼ|`.

use nalgebra::{Complex, Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{self, local_pauli, pauli_pair, Op2, Op4, Pauli, Qubit};
use crate::scalar::Real;
use crate::state::DensityMatrix;

/// Local vectors 𝒜, ℬ and the diagonal correlation vector 𝒞.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct BlochSpec<T: Real = f64> {
    pub a: Vector3<T>,
    pub b: Vector3<T>,
    pub c: Vector3<T>,
}

impl<T: Real> BlochSpec<T> {
    pub fn new(a: [T; 3], b: [T; 3], c: [T; 3]) -> Self {
        Self {
            a: Vector3::from(a),
            b: Vector3::from(b),
            c: Vector3::from(c),
        }
    }

    /// Bell-diagonal member: `𝒜 = ℬ = 0`.
    pub fn bell_diagonal(c: [T; 3]) -> Self {
        Self::new([T::zero(); 3], [T::zero(); 3], c)
    }

    pub fn is_finite(&self) -> bool {
        self.a
            .iter()
            .chain(self.b.iter())
            .chain(self.c.iter())
            .all(|v| v.as_f64().is_finite())
    }

    /// The operator `Σ 𝒜ᵢσᵢ⊗𝕀 + ℬᵢ𝕀⊗σᵢ + 𝒞ᵢσᵢ⊗σᵢ` (no identity, no 1/4).
    pub fn traceless_operator(&self) -> Op4<T> {
        let mut m = Op4::zeros();
        for (i, p) in Pauli::AXES.into_iter().enumerate() {
            m += local_pauli::<T>(p, Qubit::A).map(|z| z * pauli::cr(self.a[i]));
            m += local_pauli::<T>(p, Qubit::B).map(|z| z * pauli::cr(self.b[i]));
            m += pauli_pair::<T>(p, p).map(|z| z * pauli::cr(self.c[i]));
        }
        m
    }
}

/// Composes the Bloch-form state; rejects specs that are not PSD.
pub fn from_bloch<T: Real>(spec: &BlochSpec<T>) -> Result<DensityMatrix<T>> {
    if !spec.is_finite() {
        return Err(Error::NonFinite("Bloch spec"));
    }
    let quarter = Complex::new(T::lit(0.25), T::zero());
    let m = (Op4::identity() + spec.traceless_operator()).map(|z| z * quarter);
    DensityMatrix::new(m)
}

/// Pauli coefficients of any Hermitian two-qubit operator:
/// `a_i = tr(M σᵢ⊗𝕀)`, `b_i = tr(M 𝕀⊗σᵢ)`, `T_ij = tr(M σᵢ⊗σⱼ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliCoefficients<T: Real = f64> {
    pub a: Vector3<T>,
    pub b: Vector3<T>,
    pub correlations: Matrix3<T>,
}

impl<T: Real> PauliCoefficients<T> {
    pub fn of(m: &Op4<T>) -> Self {
        let mut a = Vector3::zeros();
        let mut b = Vector3::zeros();
        let mut t = Matrix3::zeros();
        for (i, p) in Pauli::AXES.into_iter().enumerate() {
            a[i] = pauli::trace_product(m, &local_pauli(p, Qubit::A));
            b[i] = pauli::trace_product(m, &local_pauli(p, Qubit::B));
            for (j, q) in Pauli::AXES.into_iter().enumerate() {
                t[(i, j)] = pauli::trace_product(m, &pauli_pair(p, q));
            }
        }
        Self {
            a,
            b,
            correlations: t,
        }
    }
}

/// Result of [`bloch_decompose`]: the diagonal-class spec plus the full 3x3
/// correlation matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct BlochDecomposition<T: Real = f64> {
    pub spec: BlochSpec<T>,
    pub correlations: Matrix3<T>,
}

pub fn bloch_decompose<T: Real>(rho: &DensityMatrix<T>) -> BlochDecomposition<T> {
    let coeffs = PauliCoefficients::of(rho.entries());
    let c = Vector3::new(
        coeffs.correlations[(0, 0)],
        coeffs.correlations[(1, 1)],
        coeffs.correlations[(2, 2)],
    );
    BlochDecomposition {
        spec: BlochSpec {
            a: coeffs.a,
            b: coeffs.b,
            c,
        },
        correlations: coeffs.correlations,
    }
}

/// A point on the Bloch sphere, `n = (sinθ cosφ, sinθ sinφ, cosθ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct BlochAngles<T: Real = f64> {
    pub theta: T,
    pub phi: T,
}

impl<T: Real> BlochAngles<T> {
    pub fn new(theta: T, phi: T) -> Self {
        Self { theta, phi }
    }

    /// The σ_z eigenbasis.
    pub fn computational() -> Self {
        Self::new(T::zero(), T::zero())
    }

    /// The σ_x eigenbasis.
    pub fn x_basis() -> Self {
        Self::new(T::frac_pi_2(), T::zero())
    }

    pub fn direction(&self) -> Vector3<T> {
        let st = self.theta.sin();
        Vector3::new(st * self.phi.cos(), st * self.phi.sin(), self.theta.cos())
    }

    /// Orthonormal kets `|n+>`, `|n->`.
    pub fn kets(&self) -> [[Complex<T>; 2]; 2] {
        let half = self.theta / T::lit(2.0);
        let (c, s) = (half.cos(), half.sin());
        let e = Complex::new(self.phi.cos(), self.phi.sin());
        let z = |x: T| Complex::new(x, T::zero());
        [[z(c), e * z(s)], [z(s), -(e * z(c))]]
    }

    /// Projectors `(𝕀 ± n·σ)/2`.
    pub fn projectors(&self) -> [Op2<T>; 2] {
        let n = self.direction();
        let mut ns = Op2::zeros();
        for (i, p) in Pauli::AXES.into_iter().enumerate() {
            ns += p.matrix::<T>().map(|z| z * pauli::cr(n[i]));
        }
        let half = pauli::cr(T::lit(0.5));
        let id = Op2::<T>::identity();
        [(id + ns).map(|z| z * half), (id - ns).map(|z| z * half)]
    }
}

/// Joint distribution `p_ij` (row-major: `p00, p01, p10, p11`) over a product
/// of orthonormal single-qubit bases.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ClassicalSpec<T: Real = f64> {
    pub probabilities: [T; 4],
    pub basis_a: BlochAngles<T>,
    pub basis_b: BlochAngles<T>,
}

impl<T: Real> ClassicalSpec<T> {
    pub fn validate(&self) -> Result<()> {
        let mut total = T::zero();
        for (k, p) in self.probabilities.iter().enumerate() {
            if !p.as_f64().is_finite() || *p < T::zero() {
                return Err(Error::BadDistribution(format!(
                    "p[{k}] = {p} is negative or not finite"
                )));
            }
            total += *p;
        }
        if (total - T::one()).abs() > T::state_tol() {
            return Err(Error::BadDistribution(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(())
    }
}

pub fn classical_state<T: Real>(spec: &ClassicalSpec<T>) -> Result<DensityMatrix<T>> {
    spec.validate()?;
    let ka = spec.basis_a.kets();
    let kb = spec.basis_b.kets();
    let mut m = Op4::zeros();
    for (i, a) in ka.iter().enumerate() {
        for (j, b) in kb.iter().enumerate() {
            let p = spec.probabilities[2 * i + j];
            if p == T::zero() {
                continue;
            }
            let ket = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]];
            m += Op4::from_fn(|r, col| ket[r] * ket[col].conj() * pauli::cr(p));
        }
    }
    DensityMatrix::new(pauli::hermitize(&m))
}
