//! Two-spin NMR model: ¹H (qubit `a`) and ¹³C (qubit `b`) with scalar coupling.

mod backend;
mod channels;
mod dynamics;
mod params;
mod prepare;
mod propagate;
pub mod pulse;

pub use backend::PulseBackend;
pub use channels::{
    gradient_dephase, relax, relax_deviation, thermal_deviation, thermal_state, thermal_unit, RelaxationChannel,
};
pub use dynamics::{dynamics_sweep, DynamicsPoint, DynamicsSeries, FIG4_DELTA_T, FIG4_LAST_STEP};
pub use params::SpinSystemParams;
pub use prepare::{
    prepare_pulse_level, prepare_state, preparation_sequence, target_deviation, PreparationLevel, PulsePreparation,
    StateKind, PULSE_LEVEL_LIMIT,
};
pub use propagate::{
    apply_sequence, composite_cnot, composite_cnot_propagator, composite_z_propagator, composite_z_rotation,
    event_propagator, free_evolution, free_hamiltonian, free_propagator, ideal_z_rotation, phased_rotation, rf_propagator,
    rf_pulse, sequence_propagator, FINITE_THRESHOLD, INSTANTANEOUS_THRESHOLD,
};
pub use pulse::{Channel, PulseEvent, PulseModel};
