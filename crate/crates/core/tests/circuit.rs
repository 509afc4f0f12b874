mod common;

use common::*;
use proptest::prelude::*;
use quancorr::bloch::{from_bloch, BlochSpec};
use quancorr::circuit::*;
use quancorr::nmr::{PulseBackend, SpinSystemParams};
use quancorr::pauli::{pauli_pair, Pauli};
use quancorr::state::{DensityMatrix, TwoQubitState};

fn oracle_correlation(rho: &DensityMatrix, i: usize) -> f64 {
    let p = [Pauli::X, Pauli::Y, Pauli::Z][i - 1];
    (rho.entries() * pauli_pair::<f64>(p, p)).trace().re
}

#[test]
fn circuit_readout_matches_direct_correlations() {
    let mut rng = rng(1);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let rho = random_density(&mut rng);
        for i in 1..=3 {
            let xi = protocol_state(&rho, i).unwrap();
            worst = worst.max((readout_sigma_x_a(&xi) - oracle_correlation(&rho, i)).abs());
        }
    }
    assert!(worst <= 1e-10, "{worst}");
}

#[test]
fn deviation_readout_keeps_precision() {
    let mut rng = rng(2);
    for _ in 0..200 {
        let dev = random_deviation(&mut rng, 1e-5);
        let dir = sample_direction(3);
        let a = witness(&dev, &dir, EvaluationMode::Direct).unwrap();
        let b = witness(&dev, &dir, EvaluationMode::Circuit).unwrap();
        for k in 0..4 {
            assert!((a.o[k] - b.o[k]).abs() <= 1e-12 * dev.epsilon());
        }
    }
}

#[test]
fn pulse_backend_reproduces_ideal_readout() {
    let backend = PulseBackend::new(SpinSystemParams::default());
    let mut rng = rng(4);
    for seed in 0..50 {
        let rho = random_density(&mut rng);
        let dir = sample_direction(seed);
        let ideal = witness(&rho, &dir, EvaluationMode::Circuit).unwrap();
        let pulsed = witness_on(&rho, &dir, &backend).unwrap();
        for k in 0..4 {
            assert!((ideal.o[k] - pulsed.o[k]).abs() < 1e-10);
        }
    }
}

#[test]
fn one_sided_for_product_states() {
    let ground = DensityMatrix::<f64>::basis_state(0);
    let dir = WitnessDirection::new(nalgebra::Vector3::z(), nalgebra::Vector3::z()).unwrap();
    let out = witness(&ground, &dir, EvaluationMode::Direct).unwrap();
    assert!((out.w - 2.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn witness_nonnegative_and_modes_agree(seed in any::<u64>(), dseed in any::<u64>()) {
        let rho = random_density(&mut rng(seed));
        let dir = sample_direction(dseed);
        let a = witness(&rho, &dir, EvaluationMode::Direct).unwrap();
        let b = witness(&rho, &dir, EvaluationMode::Circuit).unwrap();
        prop_assert!(a.w >= 0.0);
        prop_assert!((a.w - b.w).abs() < 1e-10);
    }

    #[test]
    fn bell_diagonal_witness_vanishes_iff_classical(c in prop::array::uniform3(-1.0..1.0f64), dseed in any::<u64>()) {
        let spec = BlochSpec::bell_diagonal(c);
        prop_assume!(from_bloch(&spec).is_ok());
        let rho = from_bloch(&spec).unwrap();
        let dir = sample_direction(dseed);
        let w = witness(&rho, &dir, EvaluationMode::Circuit).unwrap().w;
        let nonzero = c.iter().filter(|x| x.abs() > 1e-9).count();
        prop_assert_eq!(w > 1e-12, nonzero >= 2);
        let classical = rho.dephase_computational();
        prop_assert!(witness(&classical, &dir, EvaluationMode::Circuit).unwrap().w < 1e-12);
    }

    #[test]
    fn readout_trace_preserved(seed in any::<u64>(), step in 1usize..=3) {
        let rho = random_density(&mut rng(seed));
        let xi = protocol_state(&rho, step).unwrap();
        prop_assert!((xi.trace() - 1.0).abs() < 1e-12);
    }
}
