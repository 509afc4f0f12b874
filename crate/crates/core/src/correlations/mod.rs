//! Entropic correlation quantifiers.
//!
//! Exact quantities are in bits. The small-polarization versions work on the
//! deviation `Δρ` and are reported in units of `(ε²/ln2)` bits, dropping the
//! prefactor: `I ≈ 2tr[(Δρ)²] − tr[(Δρ^a)²] − tr[(Δρ^b)²]`.

mod epsilon;
mod optimize;

pub use epsilon::{
    discord_epsilon, measure_map_deviation, measured_mim_epsilon, mim_epsilon, mutual_information_epsilon,
};
pub use optimize::{maximize, OptimizerConfig, Optimum};

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::bloch::{BlochAngles, PauliCoefficients};
use crate::error::Result;
use crate::pauli::{kron, Op4, Qubit};
use crate::scalar::Real;
use crate::state::DensityMatrix;

/// Shannon entropy in bits of a (sub)normalized spectrum; entries ≤ 0 contribute 0.
pub fn shannon<T: Real>(p: &[T]) -> T {
    p.iter()
        .filter(|&&x| x > T::zero())
        .fold(T::zero(), |acc, &x| acc - x * x.log2())
}

/// `S(ρ) = −tr(ρ log₂ ρ)`.
pub fn entropy<T: Real>(rho: &DensityMatrix<T>) -> T {
    shannon(&rho.eigenvalues())
}

/// `S(ρ^a) + S(ρ^b) − S(ρ)`.
pub fn mutual_information<T: Real>(rho: &DensityMatrix<T>) -> T {
    let sa = shannon(&rho.partial_trace(Qubit::A).eigenvalues());
    let sb = shannon(&rho.partial_trace(Qubit::B).eigenvalues());
    sa + sb - entropy(rho)
}

/// Product of two rank-one projective measurements.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct MeasurementBasis<T: Real = f64> {
    pub theta_a: T,
    pub phi_a: T,
    pub theta_b: T,
    pub phi_b: T,
}

impl<T: Real> MeasurementBasis<T> {
    pub fn new(a: BlochAngles<T>, b: BlochAngles<T>) -> Self {
        Self {
            theta_a: a.theta,
            phi_a: a.phi,
            theta_b: b.theta,
            phi_b: b.phi,
        }
    }

    pub fn computational() -> Self {
        Self::from_array([T::zero(); 4])
    }

    pub fn from_array(p: [T; 4]) -> Self {
        Self {
            theta_a: p[0],
            phi_a: p[1],
            theta_b: p[2],
            phi_b: p[3],
        }
    }

    pub fn to_array(&self) -> [T; 4] {
        [self.theta_a, self.phi_a, self.theta_b, self.phi_b]
    }

    pub fn angles(&self, qubit: Qubit) -> BlochAngles<T> {
        match qubit {
            Qubit::A => BlochAngles::new(self.theta_a, self.phi_a),
            Qubit::B => BlochAngles::new(self.theta_b, self.phi_b),
        }
    }

    pub fn directions(&self) -> (Vector3<T>, Vector3<T>) {
        (self.angles(Qubit::A).direction(), self.angles(Qubit::B).direction())
    }

    /// `[Π₊⊗Π₊, Π₊⊗Π₋, Π₋⊗Π₊, Π₋⊗Π₋]`.
    pub fn product_projectors(&self) -> [Op4<T>; 4] {
        let pa = self.angles(Qubit::A).projectors();
        let pb = self.angles(Qubit::B).projectors();
        [kron(&pa[0], &pb[0]), kron(&pa[0], &pb[1]), kron(&pa[1], &pb[0]), kron(&pa[1], &pb[1])]
    }

    /// Same measurement with each direction moved to the upper hemisphere,
    /// angles in `θ ∈ [0, π/2]`, `φ ∈ [0, 2π)` and `φ = 0` at the pole.
    pub fn canonical(&self) -> Self {
        let (na, nb) = self.directions();
        let a = canonical_angles(na);
        let b = canonical_angles(nb);
        Self::new(a, b)
    }
}

fn canonical_angles<T: Real>(n: Vector3<T>) -> BlochAngles<T> {
    let tiny = T::lit(1e-12);
    let flip = n.z < -tiny || (n.z.abs() <= tiny && (n.y < -tiny || (n.y.abs() <= tiny && n.x < T::zero())));
    let n = if flip { -n } else { n };
    let theta = n.z.max(-T::one()).min(T::one()).acos();
    let mut phi = if theta.sin() < tiny { T::zero() } else { n.y.atan2(n.x) };
    if phi < T::zero() {
        phi += T::two_pi();
    }
    if phi >= T::two_pi() - tiny {
        phi = T::zero();
    }
    BlochAngles::new(theta, phi)
}

/// `χ = Σ_ij (Π_i⊗Π_j) ρ (Π_i⊗Π_j)`.
pub fn measure_map<T: Real>(rho: &DensityMatrix<T>, basis: &MeasurementBasis<T>) -> DensityMatrix<T> {
    DensityMatrix::from_trusted(measure_op(rho.entries(), basis))
}

pub(crate) fn measure_op<T: Real>(m: &Op4<T>, basis: &MeasurementBasis<T>) -> Op4<T> {
    basis
        .product_projectors()
        .iter()
        .fold(Op4::zeros(), |acc, p| acc + p * m * p)
}

/// Outcome probabilities `p_st` (`s, t = ±`) for Pauli coefficients of a
/// unit-trace operator, ordered as in [`MeasurementBasis::product_projectors`].
pub(crate) fn outcome_weights<T: Real>(
    coeffs: &PauliCoefficients<T>,
    na: &Vector3<T>,
    nb: &Vector3<T>,
    constant: T,
) -> [T; 4] {
    let quarter = T::lit(0.25);
    let la = coeffs.a.dot(na);
    let lb = coeffs.b.dot(nb);
    let cc = na.dot(&(coeffs.correlations * nb));
    let signs = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)];
    signs.map(|(s, t)| {
        let (s, t) = (T::lit(s), T::lit(t));
        (constant + s * la + t * lb + s * t * cc) * quarter
    })
}

/// Mutual information in bits of `χ` after measuring in `(n_a, n_b)`.
pub fn measured_mutual_information<T: Real>(coeffs: &PauliCoefficients<T>, na: &Vector3<T>, nb: &Vector3<T>) -> T {
    let p = outcome_weights(coeffs, na, nb, T::one());
    let pa = [p[0] + p[1], p[2] + p[3]];
    let pb = [p[0] + p[2], p[1] + p[3]];
    shannon(&pa) + shannon(&pb) - shannon(&p)
}

/// Units a [`CorrelationReport`] is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Units {
    #[serde(rename = "bits")]
    Bits,
    /// `(ε²/ln2)` bits.
    #[serde(rename = "epsilon2-bits")]
    Epsilon2Bits,
}

impl Units {
    pub fn as_str(self) -> &'static str {
        match self {
            Units::Bits => "bits",
            Units::Epsilon2Bits => "epsilon2-bits",
        }
    }
}

/// Mutual information split into quantum and classical parts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct CorrelationReport<T: Real = f64> {
    pub mutual_info: T,
    pub quantum: T,
    pub classical: T,
    pub units: Units,
    pub argmax_basis: MeasurementBasis<T>,
}

impl<T: Real> CorrelationReport<T> {
    pub(crate) fn from_parts(mutual_info: T, optimum: Optimum<T>, units: Units) -> Self {
        Self {
            mutual_info,
            quantum: mutual_info - optimum.value,
            classical: optimum.value,
            units,
            argmax_basis: optimum.basis,
        }
    }

    /// Header matching [`CorrelationReport::csv_record`].
    pub const CSV_HEADER: [&'static str; 9] =
        ["state_id", "I", "Q", "C", "units", "theta_a", "phi_a", "theta_b", "phi_b"];

    pub fn csv_record(&self, state_id: &str) -> [String; 9] {
        let b = &self.argmax_basis;
        [
            state_id.to_string(),
            self.mutual_info.to_string(),
            self.quantum.to_string(),
            self.classical.to_string(),
            self.units.as_str().to_string(),
            b.theta_a.to_string(),
            b.phi_a.to_string(),
            b.theta_b.to_string(),
            b.phi_b.to_string(),
        ]
    }
}

/// Exact symmetric discord `Q = I(ρ) − max 𝓘(χ)` in bits.
pub fn symmetric_discord<T: Real>(rho: &DensityMatrix<T>, cfg: &OptimizerConfig) -> Result<CorrelationReport<T>> {
    let coeffs = PauliCoefficients::of(rho.entries());
    let optimum = maximize(
        |p| {
            let basis = MeasurementBasis::from_array(*p);
            let (na, nb) = basis.directions();
            measured_mutual_information(&coeffs, &na, &nb)
        },
        cfg,
    )?;
    Ok(CorrelationReport::from_parts(mutual_information(rho), optimum, Units::Bits))
}
