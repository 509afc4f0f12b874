//! Gate-level witness protocol.
//!
//! The witness `W = Σ_{i<j} |<O_i><O_j>|` uses the correlation observables
//! `O_i = σ_i⊗σ_i` (`i = 1, 2, 3`) and the local observable
//! `O_4 = Σ z_i σ_i⊗𝕀 + w_i 𝕀⊗σ_i`. Each correlation `<O_i>` is read as the
//! single-spin magnetization `<σ_x⊗𝕀>` of `ξ_i = CNOT R_i ρ R_i† CNOT`.

use nalgebra::{Complex, Vector3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{self, embed, kron, local_pauli, pauli_pair, Op2, Op4, Pauli, Qubit};
use crate::scalar::Real;
use crate::state::TwoQubitState;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn pauli(self) -> Pauli {
        match self {
            Axis::X => Pauli::X,
            Axis::Y => Pauli::Y,
            Axis::Z => Pauli::Z,
        }
    }
}

/// `exp(-i θ σ_axis / 2)`.
pub fn rotation<T: Real>(axis: Axis, angle: T) -> Op2<T> {
    let half = angle / T::lit(2.0);
    let cos = pauli::cr(half.cos());
    let msin = Complex::new(T::zero(), -half.sin());
    Op2::<T>::identity().map(|z| z * cos) + axis.pauli().matrix::<T>().map(|z| z * msin)
}

/// A two-qubit unitary with a human-readable label.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate<T: Real = f64> {
    unitary: Op4<T>,
    label: String,
}

impl<T: Real> Gate<T> {
    pub fn new(unitary: Op4<T>, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        let defect = pauli::unitarity_defect(&unitary);
        if defect > T::state_tol() {
            return Err(Error::NotUnitary {
                label,
                deviation: defect.as_f64(),
            });
        }
        Ok(Self { unitary, label })
    }

    pub fn identity() -> Self {
        Self {
            unitary: Op4::identity(),
            label: "I".into(),
        }
    }

    /// Controlled-NOT with qubit `a` as control: swaps `|10>` and `|11>`.
    pub fn cnot() -> Self {
        let mut u = Op4::zeros();
        let one = pauli::cr(T::one());
        u[(0, 0)] = one;
        u[(1, 1)] = one;
        u[(2, 3)] = one;
        u[(3, 2)] = one;
        Self {
            unitary: u,
            label: "CNOT(a->b)".into(),
        }
    }

    /// `R^a ⊗ R^b`.
    pub fn local(ra: &Op2<T>, rb: &Op2<T>, label: impl Into<String>) -> Self {
        Self {
            unitary: kron(ra, rb),
            label: label.into(),
        }
    }

    /// Single-qubit operator on one side, identity on the other.
    pub fn on(qubit: Qubit, op: &Op2<T>, label: impl Into<String>) -> Self {
        Self {
            unitary: embed(op, qubit),
            label: label.into(),
        }
    }

    /// The same rotation applied to both qubits.
    pub fn product_rotation(axis: Axis, angle: T) -> Self {
        let r = rotation(axis, angle);
        Self::local(&r, &r, format!("R{axis:?}({angle})⊗R{axis:?}({angle})"))
    }

    pub fn unitary(&self) -> &Op4<T> {
        &self.unitary
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `other` after `self`.
    pub fn then(&self, other: &Gate<T>) -> Gate<T> {
        Gate {
            unitary: other.unitary * self.unitary,
            label: format!("{}; {}", self.label, other.label),
        }
    }
}

/// Local rotation used before the CNOT for witness step `i`.
///
/// Step 1 reads `σ_x⊗σ_x` directly. Step 2 needs `R_z(π/2)⊗R_z(π/2)`, which
/// maps `σ_x⊗σ_x` onto `σ_y⊗σ_y`; step 3 needs `R_y(π/2)⊗R_y(π/2)`, which
/// maps it onto `σ_z⊗σ_z`.
pub fn step_rotation<T: Real>(step: usize) -> Result<Gate<T>> {
    match step {
        1 => Ok(Gate::identity()),
        2 => Ok(Gate::product_rotation(Axis::Z, T::frac_pi_2())),
        3 => Ok(Gate::product_rotation(Axis::Y, T::frac_pi_2())),
        other => Err(Error::BadIndex(other)),
    }
}

/// Anything that can carry a state through the `ξ_i` preparation.
pub trait ProtocolBackend<T: Real> {
    fn protocol_state<S: TwoQubitState<T>>(&self, state: &S, step: usize) -> Result<S>;
}

/// Ideal gates, no pulse structure.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdealGates;

impl<T: Real> ProtocolBackend<T> for IdealGates {
    fn protocol_state<S: TwoQubitState<T>>(&self, state: &S, step: usize) -> Result<S> {
        let gate = step_rotation::<T>(step)?.then(&Gate::cnot());
        Ok(state.conjugate(gate.unitary()))
    }
}

/// `ξ_i = U_{a→b} R_i ρ R_i† U_{a→b}` with ideal gates.
pub fn protocol_state<T: Real, S: TwoQubitState<T>>(state: &S, step: usize) -> Result<S> {
    IdealGates.protocol_state(state, step)
}

/// `<σ_x ⊗ 𝕀>` of a state.
pub fn readout_sigma_x_a<T: Real, S: TwoQubitState<T>>(xi: &S) -> T {
    xi.expect(&local_pauli(Pauli::X, Qubit::A))
}

/// Local Bloch vectors `(𝒜, ℬ)`.
pub fn local_magnetizations<T: Real, S: TwoQubitState<T>>(state: &S) -> (Vector3<T>, Vector3<T>) {
    let mut a = Vector3::zeros();
    let mut b = Vector3::zeros();
    for (i, p) in Pauli::AXES.into_iter().enumerate() {
        a[i] = state.expect(&local_pauli(p, Qubit::A));
        b[i] = state.expect(&local_pauli(p, Qubit::B));
    }
    (a, b)
}

/// Unit vectors `z`, `w` weighting the local observable `O_4`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct WitnessDirection<T: Real = f64> {
    z: Vector3<T>,
    w: Vector3<T>,
}

impl<T: Real> WitnessDirection<T> {
    pub fn new(z: Vector3<T>, w: Vector3<T>) -> Result<Self> {
        for v in [&z, &w] {
            let n = v.norm_squared();
            if (n - T::one()).abs() > T::state_tol() {
                return Err(Error::NotUnitVector(n.sqrt().as_f64()));
            }
        }
        Ok(Self { z, w })
    }

    pub fn z(&self) -> &Vector3<T> {
        &self.z
    }

    pub fn w(&self) -> &Vector3<T> {
        &self.w
    }

    /// `<O_4>` from the local Bloch vectors.
    pub fn weigh(&self, a: &Vector3<T>, b: &Vector3<T>) -> T {
        self.z.dot(a) + self.w.dot(b)
    }

    pub fn observable(&self) -> Op4<T> {
        let mut m = Op4::zeros();
        for (i, p) in Pauli::AXES.into_iter().enumerate() {
            m += local_pauli::<T>(p, Qubit::A).map(|e| e * pauli::cr(self.z[i]));
            m += local_pauli::<T>(p, Qubit::B).map(|e| e * pauli::cr(self.w[i]));
        }
        m
    }
}

/// Seed-deterministic direction: each of `z`, `w` is an isotropic Gaussian
/// triple normalized onto the unit sphere.
pub fn sample_direction<T: Real>(seed: u64) -> WitnessDirection<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || loop {
        let v: [f64; 3] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-9 {
            return Vector3::new(T::lit(v[0]), T::lit(v[1]), T::lit(v[2])) / T::lit(n);
        }
    };
    let z = draw();
    let w = draw();
    WitnessDirection { z, w }
}

/// `σ_i ⊗ σ_i` for `i` in `1..=3`.
pub fn correlation_observable<T: Real>(i: usize) -> Result<Op4<T>> {
    match i {
        1..=3 => {
            let p = Pauli::AXES[i - 1];
            Ok(pauli_pair(p, p))
        }
        other => Err(Error::BadIndex(other)),
    }
}

/// `Σ_{i=1}^{3} Σ_{j>i}^{4} |o_i o_j|`.
pub fn witness_value<T: Real>(o: &[T; 4]) -> T {
    let mut total = T::zero();
    for i in 0..3 {
        for j in (i + 1)..4 {
            total += (o[i] * o[j]).abs();
        }
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvaluationMode {
    /// `<O_i>` as `tr(ρ O_i)`.
    Direct,
    /// `<O_1..3>` read from `ξ_i`, `<O_4>` from local magnetizations.
    Circuit,
}

/// How expectations are scaled before forming `W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    Raw,
    /// Divided by the thermal-equilibrium hydrogen magnetization.
    Thermal,
}

/// The four expectations and the resulting witness.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessOutcome<T: Real = f64> {
    pub o: [T; 4],
    pub w: T,
}

impl<T: Real> WitnessOutcome<T> {
    fn from_o(o: [T; 4]) -> Self {
        Self { w: witness_value(&o), o }
    }

    /// Expectations divided by `unit`; `W` scales by `1/unit²`.
    pub fn scaled(&self, unit: T) -> Self {
        Self::from_o(self.o.map(|v| v / unit))
    }

    /// `Σ_{i<j≤3} |o_i o_j|`, the value obtained from the three `ξ_i`
    /// readouts alone when `<O_4>` is taken as zero.
    pub fn correlations_only(&self) -> T {
        witness_value(&[self.o[0], self.o[1], self.o[2], T::zero()])
    }
}

/// Readouts of one circuit-mode evaluation, with the intermediate `ξ_i`.
#[derive(Clone, Debug)]
pub struct ProtocolReadout<T: Real, S> {
    pub o: [T; 4],
    pub xi: [S; 3],
}

/// Runs the three `ξ_i` preparations from scratch on `backend`.
pub fn run_protocol<T: Real, S: TwoQubitState<T>, B: ProtocolBackend<T>>(
    state: &S,
    dir: &WitnessDirection<T>,
    backend: &B,
) -> Result<ProtocolReadout<T, S>> {
    let xi1 = backend.protocol_state(state, 1)?;
    let xi2 = backend.protocol_state(state, 2)?;
    let xi3 = backend.protocol_state(state, 3)?;
    let (a, b) = local_magnetizations(state);
    let o = [
        readout_sigma_x_a(&xi1),
        readout_sigma_x_a(&xi2),
        readout_sigma_x_a(&xi3),
        dir.weigh(&a, &b),
    ];
    Ok(ProtocolReadout {
        o,
        xi: [xi1, xi2, xi3],
    })
}

/// Witness evaluated with ideal gates (circuit mode) or directly.
pub fn witness<T: Real, S: TwoQubitState<T>>(
    state: &S,
    dir: &WitnessDirection<T>,
    mode: EvaluationMode,
) -> Result<WitnessOutcome<T>> {
    match mode {
        EvaluationMode::Direct => {
            let mut o = [T::zero(); 4];
            for (i, slot) in o.iter_mut().take(3).enumerate() {
                *slot = state.expect(&correlation_observable(i + 1)?);
            }
            o[3] = state.expect(&dir.observable());
            Ok(WitnessOutcome::from_o(o))
        }
        EvaluationMode::Circuit => witness_on(state, dir, &IdealGates),
    }
}

/// Circuit-mode witness on an arbitrary backend.
pub fn witness_on<T: Real, S: TwoQubitState<T>, B: ProtocolBackend<T>>(
    state: &S,
    dir: &WitnessDirection<T>,
    backend: &B,
) -> Result<WitnessOutcome<T>> {
    Ok(WitnessOutcome::from_o(run_protocol(state, dir, backend)?.o))
}

/// Serialized witness result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub o: [f64; 4],
    #[serde(rename = "W")]
    pub w: f64,
    pub mode: EvaluationMode,
    pub seed: u64,
    pub normalization: Normalization,
}

impl WitnessReport {
    pub fn new<T: Real>(
        outcome: &WitnessOutcome<T>,
        mode: EvaluationMode,
        seed: u64,
        normalization: Normalization,
    ) -> Self {
        Self {
            o: outcome.o.map(|v| v.as_f64()),
            w: outcome.w.as_f64(),
            mode,
            seed,
            normalization,
        }
    }
}
