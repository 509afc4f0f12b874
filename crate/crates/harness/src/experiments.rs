use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quancorr::circuit::{
    sample_direction, witness, witness_on, EvaluationMode, Normalization, WitnessDirection, WitnessOutcome,
    WitnessReport,
};
use quancorr::correlations::{discord_epsilon, symmetric_discord};
use quancorr::document::StateDocument;
use quancorr::nmr::{
    dynamics_sweep, prepare_pulse_level, prepare_state, target_deviation, thermal_unit, PreparationLevel,
    PulseBackend, StateKind,
};
use quancorr::state::{normalized_trace_distance, DensityMatrix, DeviationState, TwoQubitState};

use crate::config::{Experiment, ExperimentConfig};
use crate::error::{HarnessError, Result};
use crate::noise::perturb;
use crate::report::{DynamicsReport, RunReport, StateReport, TOOLKIT_VERSION};

/// Largest allowed `|<O_i>_circuit − <O_i>_direct|`, in units of ε for
/// deviation states and absolute for full states.
pub const MODE_TOLERANCE: f64 = 1e-8;

/// Fails when two evaluations of the same expectations disagree.
pub fn check_modes(a: &[f64; 4], b: &[f64; 4], scale: f64) -> Result<f64> {
    let dev = a.iter().zip(b).map(|(x, y)| (x - y).abs() / scale).fold(0.0, f64::max);
    if dev > MODE_TOLERANCE {
        return Err(HarnessError::Invariant {
            max_deviation: dev,
            limit: MODE_TOLERANCE,
        });
    }
    Ok(dev)
}

struct Prepared {
    deviation: DeviationState,
    level: PreparationLevel,
    distance: f64,
    amplitude: Option<f64>,
    rotation_error: Option<f64>,
}

/// Noise stream for the state at `index`, independent across states.
pub fn noise_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64 + 1);
    rng
}

fn prepare(kind: StateKind, index: usize, cfg: &ExperimentConfig) -> Result<Prepared> {
    let params = &cfg.params;
    let ideal = DeviationState::new(params.epsilon, target_deviation(kind, params))?;
    // The classically correlated state has no pulse-level route and is injected.
    let (dev, level, amplitude) = if cfg.pulse_level && kind != StateKind::Cc {
        let prep = prepare_pulse_level::<f64>(kind, params)?;
        (prep.deviation, PreparationLevel::Pulse, Some(prep.amplitude))
    } else {
        (prepare_state(kind, params, PreparationLevel::Deviation)?, PreparationLevel::Deviation, None)
    };
    let (deviation, rotation_error) = if cfg.noise.enabled {
        let out = perturb(&dev, &cfg.noise, &mut noise_rng(cfg.seed, index))?;
        (out.deviation, Some(out.angle))
    } else {
        (dev, None)
    };
    let distance = normalized_trace_distance(&deviation, &ideal)?;
    Ok(Prepared {
        deviation,
        level,
        distance,
        amplitude,
        rotation_error,
    })
}

fn backend(cfg: &ExperimentConfig) -> PulseBackend {
    let mut b = PulseBackend::new(cfg.params.clone());
    if cfg.noise.enabled {
        b.flip_error = cfg.noise.flip_error;
    }
    b
}

struct WitnessPair {
    circuit: WitnessOutcome,
    direct: WitnessOutcome,
    mode_deviation: f64,
}

/// Circuit-mode witness (ideal gates, or pulses at pulse level) and the
/// direct evaluation, cross-checked against each other.
fn evaluate_witness<S: TwoQubitState<f64>>(
    state: &S,
    dir: &WitnessDirection,
    cfg: &ExperimentConfig,
    scale: f64,
) -> Result<WitnessPair> {
    let direct = witness(state, dir, EvaluationMode::Direct)?;
    let ideal = witness(state, dir, EvaluationMode::Circuit)?;
    let mut mode_deviation = check_modes(&ideal.o, &direct.o, scale)?;
    let circuit = if cfg.pulse_level {
        let b = backend(cfg);
        let pulsed = witness_on(state, dir, &b)?;
        if b.flip_error == 0.0 {
            mode_deviation = mode_deviation.max(check_modes(&pulsed.o, &direct.o, scale)?);
        }
        pulsed
    } else {
        ideal
    };
    Ok(WitnessPair {
        circuit,
        direct,
        mode_deviation,
    })
}

fn unit(cfg: &ExperimentConfig, epsilon: f64) -> f64 {
    match cfg.normalization {
        Normalization::Raw => 1.0,
        Normalization::Thermal => thermal_unit(epsilon),
    }
}

fn state_report(
    id: String,
    prep: &Prepared,
    dir: &WitnessDirection,
    cfg: &ExperimentConfig,
) -> Result<(StateReport, f64)> {
    let dev = &prep.deviation;
    let pair = evaluate_witness(dev, dir, cfg, dev.epsilon())?;
    let u = unit(cfg, dev.epsilon());
    let correlations = discord_epsilon(dev, &cfg.optimizer)?;
    Ok((
        StateReport {
            state_id: id,
            preparation: prep.level,
            witness: WitnessReport::new(&pair.circuit.scaled(u), EvaluationMode::Circuit, cfg.seed, cfg.normalization),
            witness_direct: WitnessReport::new(&pair.direct.scaled(u), EvaluationMode::Direct, cfg.seed, cfg.normalization),
            correlations,
            correlations_exact: None,
            deviation: StateDocument::from_deviation(dev),
            trace_distance: prep.distance,
            amplitude: prep.amplitude,
            rotation_error: prep.rotation_error,
        },
        pair.mode_deviation,
    ))
}

fn empty_report(cfg: &ExperimentConfig) -> RunReport {
    RunReport {
        toolkit_version: TOOLKIT_VERSION.to_string(),
        experiment: cfg.experiment,
        seed: cfg.seed,
        normalization: cfg.normalization,
        epsilon: cfg.params.epsilon,
        pulse_level: cfg.pulse_level,
        noise: cfg.noise.enabled.then(|| cfg.noise.clone()),
        states: Vec::new(),
        dynamics: None,
        max_mode_deviation: 0.0,
        timing: Vec::new(),
    }
}

fn run_states(cfg: &ExperimentConfig, experiment: Experiment) -> Result<RunReport> {
    let cfg = ExperimentConfig {
        experiment,
        ..cfg.clone()
    };
    cfg.validate()?;
    let mut report = empty_report(&cfg);
    let dir = sample_direction::<f64>(cfg.seed);
    for (index, &kind) in cfg.states.iter().enumerate() {
        let start = Instant::now();
        let prep = prepare(kind, index, &cfg)?;
        let (state, dev) = state_report(kind.to_string(), &prep, &dir, &cfg)?;
        report.max_mode_deviation = report.max_mode_deviation.max(dev);
        report.states.push(state);
        report.timing.push((kind.to_string(), start.elapsed()));
    }
    report.check_finite()?;
    Ok(report)
}

/// Witness and ε-expansion correlations for each configured state.
pub fn run_fig2(cfg: &ExperimentConfig) -> Result<RunReport> {
    run_states(cfg, Experiment::Fig2)
}

/// Deviation matrices and their distance to the ideal targets.
pub fn run_fig3(cfg: &ExperimentConfig) -> Result<RunReport> {
    run_states(cfg, Experiment::Fig3)
}

/// Decoherence sweep of the QC state.
pub fn run_fig4(cfg: &ExperimentConfig) -> Result<RunReport> {
    let cfg = ExperimentConfig {
        experiment: Experiment::Fig4,
        states: vec![StateKind::Qc],
        ..cfg.clone()
    };
    cfg.validate()?;
    let mut report = empty_report(&cfg);
    let dir = sample_direction::<f64>(cfg.seed);
    let start = Instant::now();
    let prep = prepare(StateKind::Qc, 0, &cfg)?;
    let (state, dev) = state_report(StateKind::Qc.to_string(), &prep, &dir, &cfg)?;
    report.max_mode_deviation = dev;
    report.states.push(state);
    report.timing.push(("prepare".into(), start.elapsed()));

    let start = Instant::now();
    let series = dynamics_sweep(
        &prep.deviation,
        cfg.sweep.delta_t,
        cfg.sweep.last_step,
        &cfg.params,
        &dir,
        &cfg.optimizer,
    )?;
    for p in &series.points {
        let direct = witness(&p.deviation, &dir, EvaluationMode::Direct)?;
        let circuit = witness(&p.deviation, &dir, EvaluationMode::Circuit)?;
        let d = check_modes(&circuit.o, &direct.o, p.deviation.epsilon())?;
        report.max_mode_deviation = report.max_mode_deviation.max(d);
    }
    report.dynamics = Some(DynamicsReport::from_series(&series));
    report.timing.push(("sweep".into(), start.elapsed()));
    report.check_finite()?;
    Ok(report)
}

/// Full analysis of a user-supplied state.
///
/// Bloch documents describe full states and are analysed as such, with raw
/// witness values and exact correlations in bits; their ε-expansion
/// correlations use the deviation from `𝕀/4` at unit scale. Deviation
/// documents are analysed at their own ε with the configured normalization.
pub fn run_custom(cfg: &ExperimentConfig) -> Result<RunReport> {
    let mut cfg = ExperimentConfig {
        experiment: Experiment::Custom,
        ..cfg.clone()
    };
    cfg.validate()?;
    let doc = cfg.state.clone().expect("validated");
    let start = Instant::now();
    let dir = sample_direction::<f64>(cfg.seed);
    let rho: DensityMatrix = doc.density()?;
    let (dev, full_state) = match doc {
        StateDocument::Bloch { .. } => {
            cfg.normalization = Normalization::Raw;
            (DeviationState::extract(&rho, 1.0)?, true)
        }
        StateDocument::Deviation { .. } => (doc.deviation(cfg.params.epsilon)?, false),
    };
    let mut report = empty_report(&cfg);
    let (witness_pair, u) = if full_state {
        (evaluate_witness(&rho, &dir, &cfg, 1.0)?, 1.0)
    } else {
        (evaluate_witness(&dev, &dir, &cfg, dev.epsilon())?, unit(&cfg, dev.epsilon()))
    };
    let correlations = discord_epsilon(&dev, &cfg.optimizer)?;
    let correlations_exact = if full_state {
        Some(symmetric_discord(&rho, &cfg.optimizer)?)
    } else {
        None
    };
    report.max_mode_deviation = witness_pair.mode_deviation;
    report.states.push(StateReport {
        state_id: "custom".into(),
        preparation: PreparationLevel::Deviation,
        witness: WitnessReport::new(&witness_pair.circuit.scaled(u), EvaluationMode::Circuit, cfg.seed, cfg.normalization),
        witness_direct: WitnessReport::new(&witness_pair.direct.scaled(u), EvaluationMode::Direct, cfg.seed, cfg.normalization),
        correlations,
        correlations_exact,
        deviation: StateDocument::from_deviation(&dev),
        trace_distance: 0.0,
        amplitude: None,
        rotation_error: None,
    });
    report.timing.push(("custom".into(), start.elapsed()));
    report.check_finite()?;
    Ok(report)
}

pub fn run(cfg: &ExperimentConfig) -> Result<RunReport> {
    match cfg.experiment {
        Experiment::Fig2 => run_fig2(cfg),
        Experiment::Fig3 => run_fig3(cfg),
        Experiment::Fig4 => run_fig4(cfg),
        Experiment::Custom => run_custom(cfg),
    }
}
