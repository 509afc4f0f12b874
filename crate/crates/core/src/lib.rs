//! Two-qubit quantumness-of-correlations toolkit for high-temperature NMR
//! states.
//!
//! States live either as full density matrices or as deviations
//! `ρ = 𝕀/4 + εΔρ`. The [`circuit`] module evaluates the nonlinear witness
//! through the CNOT readout protocol, [`correlations`] computes mutual
//! information and symmetric discord (exact and to order ε²), and [`nmr`]
//! simulates pulses, relaxation and state preparation on a ¹H-¹³C pair.
//!
//! Everything numeric is generic over [`Real`]; the aliases below fix `f64`
//! or `f32`.

pub mod bloch;
pub mod circuit;
pub mod correlations;
pub mod document;
pub mod error;
pub mod nmr;
pub mod pauli;
pub mod scalar;
pub mod state;

pub use error::{Error, Result};
pub use scalar::Real;

pub type DensityMatrix64 = state::DensityMatrix<f64>;
pub type DensityMatrix32 = state::DensityMatrix<f32>;
pub type DeviationState64 = state::DeviationState<f64>;
pub type DeviationState32 = state::DeviationState<f32>;
pub type BlochSpec64 = bloch::BlochSpec<f64>;
pub type BlochSpec32 = bloch::BlochSpec<f32>;
pub type WitnessDirection64 = circuit::WitnessDirection<f64>;
pub type WitnessDirection32 = circuit::WitnessDirection<f32>;
pub type CorrelationReport64 = correlations::CorrelationReport<f64>;
pub type CorrelationReport32 = correlations::CorrelationReport<f32>;
pub type DynamicsSeries64 = nmr::DynamicsSeries<f64>;
