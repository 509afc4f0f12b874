//! Non-unitary processes: gradient dephasing and relaxation.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::pauli::{self, local_pauli, Op4, Pauli, Qubit};
use crate::scalar::Real;
use crate::state::{DensityMatrix, DeviationState, TwoQubitState};

use super::params::SpinSystemParams;

/// `ρ ↦ Σ_k P_k ρ P_k` over the computational product projectors.
pub fn gradient_dephase<T: Real, S: TwoQubitState<T>>(state: &S) -> S {
    state.dephase_computational()
}

/// `Δρ_T = (σ_z⊗𝕀 + (γ_C/γ_H) 𝕀⊗σ_z)/2`, so `<σ_z⊗𝕀> = 2ε` sets the unit.
pub fn thermal_deviation<T: Real>(params: &SpinSystemParams) -> Op4<T> {
    let g = T::lit(1.0 / params.gamma_ratio);
    let half = pauli::cr(T::lit(0.5));
    (local_pauli::<T>(Pauli::Z, Qubit::A) + local_pauli::<T>(Pauli::Z, Qubit::B).map(|z| z * pauli::cr(g)))
        .map(|z| z * half)
}

pub fn thermal_state<T: Real>(params: &SpinSystemParams) -> Result<DeviationState<T>> {
    DeviationState::new(T::lit(params.epsilon), thermal_deviation(params))
}

/// `<σ_z⊗𝕀>` of the thermal state at `epsilon`.
pub fn thermal_unit<T: Real>(epsilon: T) -> T {
    T::lit(2.0) * epsilon
}

type Super<T> = DMatrix<Complex<T>>;

fn to_dense<T: Real>(m: &Op4<T>) -> DMatrix<Complex<T>> {
    DMatrix::from_column_slice(4, 4, m.as_slice())
}

/// `D[L]ρ = LρL† − ½{L†L, ρ}` as a 16×16 matrix on column-major `vec ρ`.
fn dissipator<T: Real>(l: &Op4<T>) -> Super<T> {
    let l = to_dense(l);
    let ldl = l.adjoint() * &l;
    let id = DMatrix::<Complex<T>>::identity(4, 4);
    let half = Complex::new(T::lit(0.5), T::zero());
    l.conjugate().kronecker(&l) - (id.kronecker(&ldl) + ldl.transpose().kronecker(&id)).map(|z| z * half)
}

/// Relaxation over a fixed time `t`, as a linear map on operators.
///
/// Longitudinal relaxation drives each spin-flip transition toward the
/// thermal populations at rate `1/T₁` with detailed balance. The flip
/// amplitude of one spin depends on the state of the other, at order ε, so
/// that the thermal deviation is the exact fixed point. Pure dephasing at
/// `1/T₂* − 1/(2T₁)` makes `T₂*` the total transverse decay time.
#[derive(Clone, Debug)]
pub struct RelaxationChannel<T: Real = f64> {
    map: Super<T>,
    fixed: Op4<T>,
    epsilon: T,
}

impl<T: Real> RelaxationChannel<T> {
    pub fn new(params: &SpinSystemParams, t: f64, epsilon: T) -> Result<Self> {
        params.validate()?;
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::BadParameter(format!("relaxation time {t} must be finite and nonnegative")));
        }
        let fixed = thermal_deviation::<T>(params);
        let pop: Vec<T> = (0..4).map(|k| T::lit(0.25) + epsilon * fixed[(k, k)].re).collect();
        if pop.iter().any(|&p| p <= T::zero()) {
            return Err(Error::BadEpsilon(epsilon.as_f64()));
        }
        let mut gen = Super::<T>::zeros(16, 16);
        let rate = |i: usize, j: usize, r: f64| -> T { T::lit(r) * pop[j] / (pop[i] + pop[j]) };
        // One jump per spin and direction; the partner state only sets the
        // amplitude, so coherences of the partner survive the jump.
        // Indices are 2·a + b: spin a flips (b, 2+b), spin b flips (2a, 2a+1).
        let spins = [
            ([(0, 2), (1, 3)], 1.0 / params.t1_h),
            ([(0, 1), (2, 3)], 1.0 / params.t1_c),
        ];
        for (pairs, r) in spins {
            let mut up = Op4::zeros();
            let mut down = Op4::zeros();
            for (i, j) in pairs {
                up[(j, i)] = pauli::cr(rate(i, j, r).sqrt());
                down[(i, j)] = pauli::cr(rate(j, i, r).sqrt());
            }
            gen += dissipator(&up);
            gen += dissipator(&down);
        }
        let (gh, gc) = params.dephasing_rates();
        for (qubit, rate) in [(Qubit::A, gh), (Qubit::B, gc)] {
            let z = local_pauli::<T>(Pauli::Z, qubit).map(|e| e * pauli::cr(T::lit(rate / 2.0).sqrt()));
            gen += dissipator(&z);
        }
        let map = gen.map(|z| z * pauli::cr(T::lit(t))).exp();
        Ok(Self { map, fixed, epsilon })
    }

    /// The map applied to an arbitrary operator.
    pub fn apply_operator(&self, m: &Op4<T>) -> Op4<T> {
        let v = DVector::from_column_slice(m.as_slice());
        let out = &self.map * v;
        Op4::from_column_slice(out.as_slice())
    }

    /// `Δ ↦ Δ_T + E(Δ − Δ_T)`; the channel maps `ρ_T` to itself.
    pub fn apply_deviation(&self, dev: &DeviationState<T>) -> Result<DeviationState<T>> {
        if (dev.epsilon() - self.epsilon).abs() > T::state_tol() * self.epsilon {
            return Err(Error::EpsilonMismatch(dev.epsilon().as_f64(), self.epsilon.as_f64()));
        }
        let moved = self.apply_operator(&(dev.delta() - self.fixed));
        Ok(DeviationState::from_trusted(self.epsilon, self.fixed + moved))
    }

    pub fn apply(&self, rho: &DensityMatrix<T>) -> DensityMatrix<T> {
        let eps = pauli::cr(self.epsilon);
        let thermal = Op4::<T>::identity().map(|z| z * pauli::cr(T::lit(0.25))) + self.fixed.map(|z| z * eps);
        DensityMatrix::from_trusted(thermal + self.apply_operator(&(rho.entries() - thermal)))
    }
}

/// Relaxes a full state for `t` seconds toward the thermal state at `params.epsilon`.
pub fn relax<T: Real>(rho: &DensityMatrix<T>, t: f64, params: &SpinSystemParams) -> Result<DensityMatrix<T>> {
    Ok(RelaxationChannel::new(params, t, T::lit(params.epsilon))?.apply(rho))
}

/// Relaxes a deviation state toward the thermal deviation at its own ε.
pub fn relax_deviation<T: Real>(dev: &DeviationState<T>, t: f64, params: &SpinSystemParams) -> Result<DeviationState<T>> {
    RelaxationChannel::new(params, t, dev.epsilon())?.apply_deviation(dev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::{from_bloch, BlochSpec};

    #[test]
    fn gradient_examples() {
        let diag = DensityMatrix::<f64>::basis_state(3);
        assert_eq!(gradient_dephase(&diag), diag);
        let trip: DensityMatrix = from_bloch(&BlochSpec::bell_diagonal([1.0, 1.0, -1.0])).unwrap();
        let out = gradient_dephase(&trip);
        let want: DensityMatrix = from_bloch(&BlochSpec::bell_diagonal([0.0, 0.0, -1.0])).unwrap();
        assert!(out.max_abs_diff(&want) < 1e-15);
        assert_eq!(gradient_dephase(&out), out);
    }

    #[test]
    fn relax_identity_and_fixed_point() {
        let p = SpinSystemParams::default();
        let trip: DensityMatrix = from_bloch(&BlochSpec::bell_diagonal([0.5, 0.5, -0.5])).unwrap();
        assert!(relax(&trip, 0.0, &p).unwrap().max_abs_diff(&trip) < 1e-14);
        let th = thermal_state::<f64>(&p).unwrap();
        for t in [0.1, 3.0, 100.0] {
            let out = relax_deviation(&th, t, &p).unwrap();
            assert!(out.max_abs_diff(&th) < 1e-10);
        }
        assert!(relax(&trip, -1.0, &p).is_err());
    }

    #[test]
    fn transverse_rates() {
        let p = SpinSystemParams {
            t1_h: 1e9,
            t1_c: 1e9,
            ..Default::default()
        };
        let ch = RelaxationChannel::<f64>::new(&p, 0.1, 1e-5).unwrap();
        let xa = local_pauli::<f64>(Pauli::X, Qubit::A);
        let out = ch.apply_operator(&xa);
        assert!((out[(0, 2)].re - (-0.1 / p.t2s_h).exp()).abs() < 1e-9);
    }
}
