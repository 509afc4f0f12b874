//! Rotating-frame propagators: `H = 2πJ I_zI_z + Σ 2πν I_z + ω₁(I_x cosφ + I_y sinφ)`.

use nalgebra::Complex;

use crate::circuit::{rotation, Axis, Gate};
use crate::error::{Error, Result};
use crate::pauli::{self, embed, kron, Op2, Op4, Pauli, Qubit};
use crate::scalar::Real;
use crate::state::TwoQubitState;

use super::params::SpinSystemParams;
use super::pulse::{composite_cnot_sequence, composite_z_sequence, Channel, PulseEvent, PulseModel};

/// Fidelity an instantaneous-pulse composite gate must reach.
pub const INSTANTANEOUS_THRESHOLD: f64 = 1.0 - 1e-6;
/// Fidelity a finite-pulse composite gate must reach.
pub const FINITE_THRESHOLD: f64 = 0.999;

fn scaled<T: Real>(m: &Op4<T>, s: T) -> Op4<T> {
    m.map(|z| z * pauli::cr(s))
}

/// Free-precession Hamiltonian in rad/s.
pub fn free_hamiltonian<T: Real>(params: &SpinSystemParams) -> Op4<T> {
    let pi = std::f64::consts::PI;
    let zz = pauli::pauli_pair::<T>(Pauli::Z, Pauli::Z);
    let za = pauli::local_pauli::<T>(Pauli::Z, Qubit::A);
    let zb = pauli::local_pauli::<T>(Pauli::Z, Qubit::B);
    scaled(&zz, T::lit(pi * params.j_coupling / 2.0))
        + scaled(&za, T::lit(pi * params.offset_h))
        + scaled(&zb, T::lit(pi * params.offset_c))
}

/// `exp(−iHτ)` for the (diagonal) free Hamiltonian.
pub fn free_propagator<T: Real>(tau: T, params: &SpinSystemParams) -> Op4<T> {
    let h = free_hamiltonian::<T>(params);
    Op4::from_fn(|r, c| {
        if r == c {
            let angle = -h[(r, r)].re * tau;
            Complex::new(angle.cos(), angle.sin())
        } else {
            Complex::new(T::zero(), T::zero())
        }
    })
}

pub fn free_evolution<T: Real, S: TwoQubitState<T>>(state: &S, tau: T, params: &SpinSystemParams) -> S {
    state.conjugate(&free_propagator(tau, params))
}

/// `exp(−iθ(σ_x cosφ + σ_y sinφ)/2)`.
pub fn phased_rotation<T: Real>(angle: T, phase: T) -> Op2<T> {
    rotation(Axis::Z, phase) * rotation(Axis::X, angle) * rotation(Axis::Z, -phase)
}

fn rf_generator<T: Real>(qubit: Qubit, phase: T) -> Op4<T> {
    let x = pauli::local_pauli::<T>(Pauli::X, qubit);
    let y = pauli::local_pauli::<T>(Pauli::Y, qubit);
    scaled(&x, phase.cos() / T::lit(2.0)) + scaled(&y, phase.sin() / T::lit(2.0))
}

fn evolve<T: Real>(h: &Op4<T>, tau: T) -> Op4<T> {
    h.map(|z| z * Complex::new(T::zero(), -tau)).exp()
}

pub fn rf_propagator<T: Real>(
    channel: Channel,
    angle: T,
    phase: T,
    params: &SpinSystemParams,
    model: PulseModel,
) -> Op4<T> {
    match model {
        PulseModel::Instantaneous => {
            let r = phased_rotation(angle, phase);
            match channel {
                Channel::H => embed(&r, Qubit::A),
                Channel::C => embed(&r, Qubit::B),
                Channel::Both => kron(&r, &r),
            }
        }
        PulseModel::Finite => {
            let free = free_hamiltonian::<T>(params);
            let w_h = T::frac_pi_2() / T::lit(params.pulse_pi2_h);
            let w_c = T::frac_pi_2() / T::lit(params.pulse_pi2_c);
            let (gh, gc) = (rf_generator(Qubit::A, phase), rf_generator(Qubit::B, phase));
            match channel {
                Channel::H => evolve(&(free + scaled(&gh, w_h)), angle / w_h),
                Channel::C => evolve(&(free + scaled(&gc, w_c)), angle / w_c),
                Channel::Both => {
                    let (tau_h, tau_c) = (angle / w_h, angle / w_c);
                    let common = tau_h.min(tau_c);
                    let both = evolve(&(free + scaled(&gh, w_h) + scaled(&gc, w_c)), common);
                    let tail = if tau_h > tau_c {
                        evolve(&(free + scaled(&gh, w_h)), tau_h - common)
                    } else {
                        evolve(&(free + scaled(&gc, w_c)), tau_c - common)
                    };
                    tail * both
                }
            }
        }
    }
}

/// Propagator of one event, `None` for a gradient.
pub fn event_propagator<T: Real>(event: &PulseEvent, params: &SpinSystemParams) -> Result<Option<Op4<T>>> {
    event.validate()?;
    Ok(match *event {
        PulseEvent::Rf {
            channel,
            angle,
            phase,
            duration_model,
        } => Some(rf_propagator(channel, T::lit(angle), T::lit(phase), params, duration_model)),
        PulseEvent::Delay { j_units } => Some(free_propagator(T::lit(j_units / params.j_coupling), params)),
        PulseEvent::Gradient => None,
    })
}

/// Net propagator of a gradient-free sequence.
pub fn sequence_propagator<T: Real>(events: &[PulseEvent], params: &SpinSystemParams) -> Result<Op4<T>> {
    let mut u = Op4::identity();
    for e in events {
        let step = event_propagator(e, params)?.ok_or(Error::NonUnitarySequence)?;
        u = step * u;
    }
    Ok(u)
}

/// Applies events in time order; gradients dephase in the product basis.
pub fn apply_sequence<T: Real, S: TwoQubitState<T>>(
    state: &S,
    events: &[PulseEvent],
    params: &SpinSystemParams,
) -> Result<S> {
    let mut s = state.clone();
    let mut pending: Option<Op4<T>> = None;
    for e in events {
        match event_propagator::<T>(e, params)? {
            Some(u) => pending = Some(pending.map_or(u, |p| u * p)),
            None => {
                if let Some(p) = pending.take() {
                    s = s.conjugate(&p);
                }
                s = s.dephase_computational();
            }
        }
    }
    if let Some(p) = pending {
        s = s.conjugate(&p);
    }
    Ok(s)
}

/// One rf event under the given pulse model.
pub fn rf_pulse<T: Real, S: TwoQubitState<T>>(
    state: &S,
    event: &PulseEvent,
    params: &SpinSystemParams,
    model: PulseModel,
) -> Result<S> {
    match event {
        PulseEvent::Rf { .. } => apply_sequence(state, &[event.clone().with_model(model)], params),
        _ => Err(Error::InvalidPulse("rf_pulse needs an rf event".into())),
    }
}

fn threshold(model: PulseModel) -> f64 {
    match model {
        PulseModel::Instantaneous => INSTANTANEOUS_THRESHOLD,
        PulseModel::Finite => FINITE_THRESHOLD,
    }
}

fn checked<T: Real>(label: &str, events: &[PulseEvent], ideal: &Op4<T>, params: &SpinSystemParams, model: PulseModel) -> Result<Op4<T>> {
    let events: Vec<PulseEvent> = events.iter().cloned().map(|e| e.with_model(model)).collect();
    let u = sequence_propagator::<T>(&events, params)?;
    let fidelity = pauli::propagator_fidelity(&u, ideal).as_f64();
    let limit = threshold(model);
    if fidelity < limit {
        return Err(Error::SequenceMismatch {
            label: label.into(),
            fidelity,
            threshold: limit,
        });
    }
    Ok(u)
}

/// Ideal `R_z(π/2)` on the given channel(s).
pub fn ideal_z_rotation<T: Real>(channel: Channel) -> Op4<T> {
    let r = rotation(Axis::Z, T::frac_pi_2());
    match channel {
        Channel::H => embed(&r, Qubit::A),
        Channel::C => embed(&r, Qubit::B),
        Channel::Both => kron(&r, &r),
    }
}

fn z_events(channel: Channel) -> Vec<PulseEvent> {
    match channel {
        Channel::Both => {
            let mut seq = composite_z_sequence(Channel::H);
            seq.extend(composite_z_sequence(Channel::C));
            seq
        }
        single => composite_z_sequence(single),
    }
}

/// Composite z rotation propagator, checked against the ideal gate.
pub fn composite_z_propagator<T: Real>(channel: Channel, params: &SpinSystemParams, model: PulseModel) -> Result<Op4<T>> {
    checked("composite z rotation", &z_events(channel), &ideal_z_rotation(channel), params, model)
}

/// Composite CNOT propagator, checked against the ideal gate.
pub fn composite_cnot_propagator<T: Real>(params: &SpinSystemParams, model: PulseModel) -> Result<Op4<T>> {
    checked("composite CNOT", &composite_cnot_sequence(), Gate::<T>::cnot().unitary(), params, model)
}

pub fn composite_z_rotation<T: Real, S: TwoQubitState<T>>(state: &S, channel: Channel, params: &SpinSystemParams) -> Result<S> {
    Ok(state.conjugate(&composite_z_propagator(channel, params, PulseModel::Instantaneous)?))
}

pub fn composite_cnot<T: Real, S: TwoQubitState<T>>(state: &S, params: &SpinSystemParams) -> Result<S> {
    Ok(state.conjugate(&composite_cnot_propagator(params, PulseModel::Instantaneous)?))
}
