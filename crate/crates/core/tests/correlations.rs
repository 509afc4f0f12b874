mod common;

use common::*;
use proptest::prelude::*;
use quancorr::bloch::{classical_state, from_bloch, BlochAngles, BlochSpec, ClassicalSpec};
use quancorr::correlations::*;
use quancorr::nmr::{prepare_state, PreparationLevel, SpinSystemParams, StateKind};
use quancorr::state::{DensityMatrix, DeviationState};

const GRID: usize = 64;

fn deviation(kind: StateKind) -> DeviationState {
    prepare_state(kind, &SpinSystemParams::default(), PreparationLevel::Deviation).unwrap()
}

#[test]
fn epsilon_discord_matches_grid_oracle() {
    let cfg = OptimizerConfig::default();
    for (kind, want) in [(StateKind::Qc, [6.0, 4.0, 2.0]), (StateKind::Cc, [8.0, 0.0, 8.0])] {
        let dev = deviation(kind);
        let oracle_c = grid_max(dev.delta(), GRID, epsilon_mi);
        let r = discord_epsilon(&dev, &cfg).unwrap();
        assert!((r.classical - oracle_c).abs() < 1e-6, "{kind}: {} vs {oracle_c}", r.classical);
        let got = [r.mutual_info, r.quantum, r.classical];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-6, "{kind}: {got:?}");
        }
    }
}

#[test]
fn bell_state_discord() {
    let bell: DensityMatrix = from_bloch(&BlochSpec::bell_diagonal([1.0, -1.0, 1.0])).unwrap();
    let r = symmetric_discord(&bell, &OptimizerConfig::default()).unwrap();
    let oracle = grid_max(bell.entries(), GRID, classical_mi);
    assert!((oracle - 1.0).abs() < 1e-9);
    assert!((r.mutual_info - 2.0).abs() < 1e-6);
    assert!((r.quantum - 1.0).abs() < 1e-6 && (r.classical - 1.0).abs() < 1e-6);
}

#[test]
fn optimizer_not_beaten_by_oracle_grid() {
    let cfg = OptimizerConfig::default();
    let mut rng = rng(2024);
    for k in 0..50 {
        let rho = random_density(&mut rng);
        let oracle = grid_max(rho.entries(), GRID, classical_mi);
        let r = symmetric_discord(&rho, &cfg).unwrap();
        assert!(r.classical >= oracle - 1e-6, "state {k}: {} < {oracle}", r.classical);
        assert!((r.quantum + r.classical - r.mutual_info).abs() < 1e-9);
        assert!(r.quantum >= -1e-9);
    }
}

fn classical_specs() -> Vec<ClassicalSpec<f64>> {
    let mut rng = rng(9);
    let bases = [
        BlochAngles::computational(),
        BlochAngles::x_basis(),
        BlochAngles::new(0.7, 2.1),
        BlochAngles::new(2.4, 5.5),
    ];
    let mut specs = Vec::new();
    let fixed = [[0.5, 0.0, 0.0, 0.5], [0.25; 4], [1.0, 0.0, 0.0, 0.0], [0.1, 0.2, 0.3, 0.4], [0.0, 0.5, 0.5, 0.0]];
    for ba in bases {
        for bb in bases {
            for p in fixed {
                specs.push(ClassicalSpec {
                    probabilities: p,
                    basis_a: ba,
                    basis_b: bb,
                });
            }
            let raw: [f64; 4] = std::array::from_fn(|_| rand::Rng::random::<f64>(&mut rng));
            let total: f64 = raw.iter().sum();
            specs.push(ClassicalSpec {
                probabilities: raw.map(|x| x / total),
                basis_a: ba,
                basis_b: bb,
            });
        }
    }
    specs
}

#[test]
fn classical_states_have_zero_discord() {
    let cfg = OptimizerConfig::default();
    for spec in classical_specs() {
        let rho = classical_state(&spec).unwrap();
        let r = symmetric_discord(&rho, &cfg).unwrap();
        assert!(r.quantum.abs() <= 1e-6, "{spec:?}: Q = {}", r.quantum);
        let dev = DeviationState::extract(&rho, 1.0).unwrap();
        let r = discord_epsilon(&dev, &cfg).unwrap();
        assert!(r.quantum.abs() <= 1e-6, "{spec:?}: Q_eps = {}", r.quantum);
    }
}

#[test]
fn expansion_converges_linearly() {
    let delta = deviation(StateKind::Qc).delta().to_owned();
    let eps = [1e-2, 1e-3, 1e-4];
    let gaps: Vec<f64> = eps
        .iter()
        .map(|&e| {
            let rho = DeviationState::new(e, delta).unwrap().compose().unwrap();
            (mutual_information(&rho) * std::f64::consts::LN_2 / (e * e) - 6.0).abs()
        })
        .collect();
    assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
    let slope = |i: usize| (gaps[i].ln() - gaps[i + 1].ln()) / (eps[i].ln() - eps[i + 1].ln());
    assert!(slope(0) >= 0.9 && slope(1) >= 0.9, "{gaps:?}");
}

#[test]
fn expansion_tracks_exact_for_random_deviations() {
    let mut rng = rng(5);
    for _ in 0..5 {
        // Keep the state positive at the largest ε.
        let dev = random_deviation(&mut rng, 1.0);
        let scale = dev.delta().norm() * 4.0;
        let delta = dev.delta().map(|z| z / scale);
        let target = mutual_information_epsilon(&DeviationState::new(1.0, delta).unwrap());
        let gaps: Vec<f64> = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&e| {
                let rho = DeviationState::new(e, delta).unwrap().compose().unwrap();
                (mutual_information(&rho) * std::f64::consts::LN_2 / (e * e) - target).abs()
            })
            .collect();
        let slope = (gaps[0].ln() - gaps[2].ln()) / (1e-2f64.ln() - 1e-4f64.ln());
        assert!(slope >= 0.9, "{gaps:?}");
    }
}

#[test]
fn exact_matches_expansion_at_default_epsilon() {
    let dev = deviation(StateKind::Qc);
    let rho = dev.compose().unwrap();
    let exact = mutual_information(&rho) * std::f64::consts::LN_2 / (dev.epsilon() * dev.epsilon());
    assert!((exact - 6.0).abs() < 1e-2);
}

#[test]
fn discord_is_local_unitary_invariant() {
    let cfg = OptimizerConfig::default();
    let mut rng = rng(77);
    for _ in 0..5 {
        let rho = random_density(&mut rng);
        let u = kron2(&random_unitary2(&mut rng), &random_unitary2(&mut rng));
        let moved = DensityMatrix::new(u * rho.entries() * u.adjoint()).unwrap();
        let a = symmetric_discord(&rho, &cfg).unwrap();
        let b = symmetric_discord(&moved, &cfg).unwrap();
        assert!((a.quantum - b.quantum).abs() < 1e-6);
        assert!((a.classical - b.classical).abs() < 1e-6);
    }
}

#[test]
fn thermal_and_mixed_have_no_correlations() {
    let cfg = OptimizerConfig::default();
    let r = discord_epsilon(&deviation(StateKind::Thermal), &cfg).unwrap();
    assert!(r.mutual_info.abs() < 1e-12 && r.quantum.abs() < 1e-12 && r.classical.abs() < 1e-12);
    let r = symmetric_discord(&DensityMatrix::<f64>::maximally_mixed(), &cfg).unwrap();
    assert!(r.quantum.abs() < 1e-12 && r.classical.abs() < 1e-12);
}

#[test]
fn discord_is_generic_over_f32() {
    let bell: DensityMatrix<f32> = from_bloch(&BlochSpec::bell_diagonal([1.0f32, -1.0, 1.0])).unwrap();
    let r = symmetric_discord(&bell, &OptimizerConfig::default()).unwrap();
    assert!((r.quantum - 1.0).abs() < 1e-3 && (r.classical - 1.0).abs() < 1e-3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn measurement_never_increases_information(seed in any::<u64>(), angles in prop::array::uniform4(0.0..6.3f64)) {
        let rho = random_density(&mut rng(seed));
        let basis = MeasurementBasis::from_array(angles);
        let chi = measure_map(&rho, &basis);
        prop_assert!(mutual_information(&chi) <= mutual_information(&rho) + 1e-9);
        prop_assert!((chi.trace() - 1.0).abs() < 1e-12);
        let again = measure_map(&chi, &basis);
        prop_assert!(again.max_abs_diff(&chi) < 1e-12);
    }

    #[test]
    fn closed_form_objectives_match_operators(seed in any::<u64>(), angles in prop::array::uniform4(0.0..6.3f64)) {
        let rho = random_density(&mut rng(seed));
        let basis = MeasurementBasis::from_array(angles);
        let coeffs = quancorr::bloch::PauliCoefficients::of(rho.entries());
        let (na, nb) = basis.directions();
        let chi = measure_map(&rho, &basis);
        prop_assert!((measured_mutual_information(&coeffs, &na, &nb) - mutual_information(&chi)).abs() < 1e-9);
        let dev = random_deviation(&mut rng(seed ^ 1), 1e-5);
        let coeffs = quancorr::bloch::PauliCoefficients::of(dev.delta());
        let direct = mim_epsilon(&measure_map_deviation(&dev, &basis));
        prop_assert!((measured_mim_epsilon(&coeffs, &na, &nb) - direct).abs() < 1e-9);
    }

    #[test]
    fn entropy_bounds(seed in any::<u64>()) {
        let rho = random_density(&mut rng(seed));
        let s = entropy(&rho);
        prop_assert!((-1e-12..=2.0 + 1e-12).contains(&s));
        let i = mutual_information(&rho);
        prop_assert!((-1e-12..=2.0 + 1e-12).contains(&i));
    }
}
