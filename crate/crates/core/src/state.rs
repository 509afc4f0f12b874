//! Two-qubit state carriers: full density matrices and high-temperature
//! deviation states `ρ = 𝕀/4 + εΔρ`.

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{self, Op2, Op4, Qubit};
use crate::scalar::Real;

/// Nominal ratio of magnetic to thermal energy for the room-temperature sample.
pub const DEFAULT_EPSILON: f64 = 1e-5;

/// A validated 4x4 density operator: Hermitian, unit trace, PSD within tolerance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct DensityMatrix<T: Real = f64> {
    entries: Op4<T>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(entries: Op4<T>) -> Result<Self> {
        validate_state(&entries)?;
        Ok(Self { entries })
    }

    /// Wraps a matrix known to be a state, e.g. the image of a channel.
    /// Only re-symmetrizes rounding noise in the hermitian part.
    pub(crate) fn from_trusted(entries: Op4<T>) -> Self {
        Self {
            entries: pauli::hermitize(&entries),
        }
    }

    pub fn maximally_mixed() -> Self {
        Self {
            entries: Op4::identity().map(|z| z * T::lit(0.25)),
        }
    }

    /// `|ψ><ψ|` for a (not necessarily normalized) ket.
    pub fn from_ket(ket: &[Complex<T>; 4]) -> Result<Self> {
        let norm: T = ket.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
        if norm <= T::zero() {
            return Err(Error::BadTrace {
                trace: 0.0,
                expected: 1.0,
            });
        }
        let m = Op4::from_fn(|r, col| ket[r] * ket[col].conj() / Complex::new(norm, T::zero()));
        Ok(Self::from_trusted(m))
    }

    /// Computational basis projector `|k><k|`, `k` in `0..4` read as `ab` bits.
    pub fn basis_state(k: usize) -> Self {
        let mut m = Op4::zeros();
        m[(k, k)] = pauli::cr(T::one());
        Self { entries: m }
    }

    pub fn entries(&self) -> &Op4<T> {
        &self.entries
    }

    pub fn into_entries(self) -> Op4<T> {
        self.entries
    }

    pub fn eigenvalues(&self) -> [T; 4] {
        pauli::hermitian_eigenvalues(&self.entries)
    }

    pub fn trace(&self) -> T {
        self.entries.trace().re
    }

    pub fn partial_trace(&self, keep: Qubit) -> QubitState<T> {
        QubitState {
            entries: pauli::partial_trace_op(&self.entries, keep),
        }
    }

    /// `tr(ρ O)` for Hermitian `O`.
    pub fn expectation(&self, op: &Op4<T>) -> T {
        pauli::trace_product(&self.entries, op)
    }

    pub fn conjugated(&self, u: &Op4<T>) -> Self {
        Self::from_trusted(pauli::conjugate(u, &self.entries))
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        max_abs(&(self.entries - other.entries))
    }
}

fn validate_state<T: Real>(m: &Op4<T>) -> Result<()> {
    if !pauli::is_finite(m) {
        return Err(Error::NonFinite("density matrix"));
    }
    let herm = pauli::hermiticity_defect(m);
    if herm > T::state_tol() {
        return Err(Error::NotHermitian {
            deviation: herm.as_f64(),
        });
    }
    let tr = m.trace().re;
    if (tr - T::one()).abs() > T::state_tol() {
        return Err(Error::BadTrace {
            trace: tr.as_f64(),
            expected: 1.0,
        });
    }
    let min = pauli::hermitian_eigenvalues(m)[0];
    if min < T::psd_tol() {
        return Err(Error::NotAState {
            min_eigenvalue: min.as_f64(),
        });
    }
    Ok(())
}

pub(crate) fn max_abs<T: Real>(m: &Op4<T>) -> T {
    m.iter().fold(T::zero(), |acc, z| {
        let v = z.norm_sqr().sqrt();
        if v > acc {
            v
        } else {
            acc
        }
    })
}

/// Single-qubit reduced state.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitState<T: Real = f64> {
    entries: Op2<T>,
}

impl<T: Real> QubitState<T> {
    pub fn entries(&self) -> &Op2<T> {
        &self.entries
    }

    pub fn trace(&self) -> T {
        self.entries.trace().re
    }

    pub fn eigenvalues(&self) -> [T; 2] {
        pauli::hermitian_eigenvalues2(&self.entries)
    }

    /// Bloch vector `tr(ρ σ_i)`.
    pub fn bloch_vector(&self) -> [T; 3] {
        crate::pauli::Pauli::AXES.map(|p| pauli::trace_product2(&self.entries, &p.matrix()))
    }
}

/// High-temperature state `ρ = 𝕀/4 + ε Δρ` with traceless Hermitian `Δρ`.
///
/// Every expectation of a traceless observable is `ε tr(Δρ O)`, which this
/// type evaluates without ever forming the nearly-maximally-mixed matrix, so
/// deviation-scale quantities keep full relative precision.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct DeviationState<T: Real = f64> {
    epsilon: T,
    delta: Op4<T>,
}

impl<T: Real> DeviationState<T> {
    pub fn new(epsilon: T, delta: Op4<T>) -> Result<Self> {
        check_epsilon(epsilon)?;
        if !pauli::is_finite(&delta) {
            return Err(Error::NonFinite("deviation matrix"));
        }
        let scale = T::one().max(max_abs(&delta));
        let herm = pauli::hermiticity_defect(&delta);
        if herm > T::state_tol() * scale {
            return Err(Error::NotHermitian {
                deviation: herm.as_f64(),
            });
        }
        let tr = delta.trace().re;
        if tr.abs() > T::state_tol() * scale {
            return Err(Error::BadTrace {
                trace: tr.as_f64(),
                expected: 0.0,
            });
        }
        Ok(Self {
            epsilon,
            delta: pauli::hermitize(&delta),
        })
    }

    /// No deviation: the maximally mixed state.
    pub fn zero(epsilon: T) -> Result<Self> {
        Self::new(epsilon, Op4::zeros())
    }

    pub(crate) fn from_trusted(epsilon: T, delta: Op4<T>) -> Self {
        Self {
            epsilon,
            delta: pauli::hermitize(&delta),
        }
    }

    /// `Δρ = (ρ - 𝕀/4)/ε`; requires `tr ρ = 1`.
    pub fn extract(rho: &DensityMatrix<T>, epsilon: T) -> Result<Self> {
        check_epsilon(epsilon)?;
        let tr = rho.trace();
        if (tr - T::one()).abs() > T::state_tol() {
            return Err(Error::BadTrace {
                trace: tr.as_f64(),
                expected: 1.0,
            });
        }
        let quarter = Op4::<T>::identity().map(|z| z * T::lit(0.25));
        let inv = Complex::new(T::one() / epsilon, T::zero());
        let mut delta = (rho.entries() - quarter).map(|z| z * inv);
        // Remove the residual trace left by rounding so Δρ is exactly traceless.
        let resid = delta.trace().re / T::lit(4.0);
        for k in 0..4 {
            delta[(k, k)].re -= resid;
        }
        Ok(Self::from_trusted(epsilon, delta))
    }

    /// `𝕀/4 + εΔρ`, validated.
    pub fn compose(&self) -> Result<DensityMatrix<T>> {
        DensityMatrix::new(self.composed_entries())
    }

    pub(crate) fn composed_entries(&self) -> Op4<T> {
        let quarter = Op4::<T>::identity().map(|z| z * T::lit(0.25));
        let eps = Complex::new(self.epsilon, T::zero());
        quarter + self.delta.map(|z| z * eps)
    }

    pub fn epsilon(&self) -> T {
        self.epsilon
    }

    pub fn delta(&self) -> &Op4<T> {
        &self.delta
    }

    /// Same state expressed with another deviation matrix at this ε.
    pub fn with_delta(&self, delta: Op4<T>) -> Result<Self> {
        Self::new(self.epsilon, delta)
    }

    /// `Δρ^{a(b)} = tr_{b(a)} Δρ`.
    pub fn reduced(&self, keep: Qubit) -> Op2<T> {
        pauli::partial_trace_op(&self.delta, keep)
    }

    /// `ε tr(Δρ O)`; equals `tr(ρ O)` for traceless `O`.
    pub fn expectation(&self, op: &Op4<T>) -> T {
        self.epsilon * pauli::trace_product(&self.delta, op)
    }

    pub fn conjugated(&self, u: &Op4<T>) -> Self {
        Self::from_trusted(self.epsilon, pauli::conjugate(u, &self.delta))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        max_abs(&(self.delta - other.delta))
    }
}

fn check_epsilon<T: Real>(epsilon: T) -> Result<()> {
    let e = epsilon.as_f64();
    if !e.is_finite() || e <= 0.0 {
        return Err(Error::BadEpsilon(e));
    }
    Ok(())
}

/// `tr|Δρ₁ - Δρ₂|/2`, the trace distance of the two states divided by ε.
pub fn normalized_trace_distance<T: Real>(
    d1: &DeviationState<T>,
    d2: &DeviationState<T>,
) -> Result<T> {
    let (e1, e2) = (d1.epsilon(), d2.epsilon());
    if (e1 - e2).abs() > T::state_tol() * e1.max(e2) {
        return Err(Error::EpsilonMismatch(e1.as_f64(), e2.as_f64()));
    }
    let diff = d1.delta() - d2.delta();
    let eig = pauli::hermitian_eigenvalues(&diff);
    let sum = eig.iter().fold(T::zero(), |acc, v| acc + v.abs());
    Ok(sum / T::lit(2.0))
}

/// Anything whose expectation values and unitary images the witness
/// protocol can read: full density matrices and deviation states.
pub trait TwoQubitState<T: Real>: Clone {
    /// `tr(ρ O)` for a traceless Hermitian observable.
    fn expect(&self, op: &Op4<T>) -> T;
    fn conjugate(&self, u: &Op4<T>) -> Self;
    /// Complete dephasing in the computational product basis.
    fn dephase_computational(&self) -> Self;
}

fn keep_diagonal<T: Real>(m: &Op4<T>) -> Op4<T> {
    Op4::from_fn(|r, col| if r == col { m[(r, col)] } else { Complex::new(T::zero(), T::zero()) })
}

impl<T: Real> TwoQubitState<T> for DensityMatrix<T> {
    fn expect(&self, op: &Op4<T>) -> T {
        self.expectation(op)
    }
    fn conjugate(&self, u: &Op4<T>) -> Self {
        self.conjugated(u)
    }
    fn dephase_computational(&self) -> Self {
        Self::from_trusted(keep_diagonal(&self.entries))
    }
}

impl<T: Real> TwoQubitState<T> for DeviationState<T> {
    fn expect(&self, op: &Op4<T>) -> T {
        self.expectation(op)
    }
    fn conjugate(&self, u: &Op4<T>) -> Self {
        self.conjugated(u)
    }
    fn dephase_computational(&self) -> Self {
        Self::from_trusted(self.epsilon, keep_diagonal(&self.delta))
    }
}
