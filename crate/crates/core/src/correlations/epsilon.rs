//! Second-order expansion in the polarization ε, in units of `(ε²/ln2)` bits.

use nalgebra::Vector3;

use crate::bloch::PauliCoefficients;
use crate::error::Result;
use crate::pauli::{self, Op2, Op4, Qubit};
use crate::scalar::Real;
use crate::state::DeviationState;

use super::{maximize, measure_op, outcome_weights, CorrelationReport, MeasurementBasis, OptimizerConfig, Units};

fn square_trace2<T: Real>(m: &Op2<T>) -> T {
    pauli::trace_product2(m, m)
}

fn brace<T: Real>(delta: &Op4<T>) -> T {
    let a = pauli::partial_trace_op(delta, Qubit::A);
    let b = pauli::partial_trace_op(delta, Qubit::B);
    T::lit(2.0) * pauli::trace_product(delta, delta) - square_trace2(&a) - square_trace2(&b)
}

/// `2tr[(Δρ)²] − tr[(Δρ^a)²] − tr[(Δρ^b)²]`.
pub fn mutual_information_epsilon<T: Real>(dev: &DeviationState<T>) -> T {
    brace(dev.delta())
}

/// The same functional, applied to a measured deviation `Δχ`.
pub fn mim_epsilon<T: Real>(dev_chi: &DeviationState<T>) -> T {
    brace(dev_chi.delta())
}

/// `Δχ = Σ_ij (Π_i⊗Π_j) Δρ (Π_i⊗Π_j)` at the same ε.
pub fn measure_map_deviation<T: Real>(dev: &DeviationState<T>, basis: &MeasurementBasis<T>) -> DeviationState<T> {
    DeviationState::from_trusted(dev.epsilon(), measure_op(dev.delta(), basis))
}

/// [`mim_epsilon`] of `Δχ` measured along `(n_a, n_b)`, from the Pauli
/// coefficients of `Δρ`.
pub fn measured_mim_epsilon<T: Real>(coeffs: &PauliCoefficients<T>, na: &Vector3<T>, nb: &Vector3<T>) -> T {
    let d = outcome_weights(coeffs, na, nb, T::zero());
    let total = d.iter().fold(T::zero(), |acc, &x| acc + x * x);
    let ra = [d[0] + d[1], d[2] + d[3]];
    let rb = [d[0] + d[2], d[1] + d[3]];
    let sq = |v: [T; 2]| v[0] * v[0] + v[1] * v[1];
    T::lit(2.0) * total - sq(ra) - sq(rb)
}

/// `Q_ε = I_ε − max 𝓘_ε`, `C_ε = max 𝓘_ε`.
pub fn discord_epsilon<T: Real>(dev: &DeviationState<T>, cfg: &OptimizerConfig) -> Result<CorrelationReport<T>> {
    let coeffs = PauliCoefficients::of(dev.delta());
    let optimum = maximize(
        |p| {
            let (na, nb) = MeasurementBasis::from_array(*p).directions();
            measured_mim_epsilon(&coeffs, &na, &nb)
        },
        cfg,
    )?;
    Ok(CorrelationReport::from_parts(mutual_information_epsilon(dev), optimum, Units::Epsilon2Bits))
}
