use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::complexity::complexity_upper_bound;
use super::noise::{inject_error_with, NoiseModel};
use super::register::{Gate, InitSpec, QubitRegister, DEFAULT_QUBIT_CAP};
use super::QuantumError;

pub const LIMITATION_NOTE: &str = "compressed_bits is an upper bound on algorithmic information \
from a generic lossless compressor, not the algorithmic information itself; it cannot see that \
pi-digit amplitudes have a short generating program";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub depth: usize,
    #[serde(serialize_with = "serialize_display")]
    pub init: InitSpec,
    pub noise: NoiseModel,
    pub trials: usize,
    pub precision_bits: u32,
    pub cap: usize,
}

fn serialize_display<S: serde::Serializer>(v: &InitSpec, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl ExperimentConfig {
    pub fn new(n: usize, depth: usize, init: InitSpec, noise: NoiseModel, trials: usize, precision_bits: u32) -> Self {
        Self { n, depth, init, noise, trials, precision_bits, cap: DEFAULT_QUBIT_CAP }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrialStat {
    Control,
    Mean,
    Min,
    Max,
}

impl TrialStat {
    pub fn as_str(self) -> &'static str {
        match self {
            TrialStat::Control => "control",
            TrialStat::Mean => "mean",
            TrialStat::Min => "min",
            TrialStat::Max => "max",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub step: usize,
    #[serde(rename = "trial_stat")]
    pub stat: TrialStat,
    pub raw_bits: u64,
    pub compressed_bits: f64,
    pub norm_error: f64,
}

/// One step of the fixed circuit: CNOT(q, q+1) for q = 0..n-1, then X on
/// qubit 0. A pure permutation of basis amplitudes.
pub fn simple_layer(reg: &mut QubitRegister) -> Result<(), QuantumError> {
    for q in 0..reg.n().saturating_sub(1) {
        reg.apply_in_place(&Gate::Cnot, &[q, q + 1])?;
    }
    reg.apply_in_place(&Gate::X, &[0])
}

#[derive(Debug, Clone, Copy)]
struct Sample {
    compressed_bits: u64,
    norm_error: f64,
}

fn trajectory(
    cfg: &ExperimentConfig,
    start: &QubitRegister,
    noise: Option<(&NoiseModel, u64)>,
) -> Result<(u64, Vec<Sample>), QuantumError> {
    let mut rng = noise.map(|(_, seed)| ChaCha8Rng::seed_from_u64(seed));
    let mut reg = start.clone();
    let mut out = Vec::with_capacity(cfg.depth + 1);
    let mut raw_bits = 0;
    for step in 0..=cfg.depth {
        if step > 0 {
            simple_layer(&mut reg)?;
            if let (Some((model, _)), Some(rng)) = (noise, rng.as_mut()) {
                reg = inject_error_with(&reg, model, rng)?;
            }
        }
        let est = complexity_upper_bound(&reg, cfg.precision_bits)?;
        raw_bits = est.raw_bits;
        out.push(Sample { compressed_bits: est.compressed_bits, norm_error: reg.norm_error() });
    }
    Ok((raw_bits, out))
}

/// Runs the noiseless control plus `trials` noisy trajectories.
///
/// Trial `i` draws its error stream from `noise.seed + i` (wrapping), so
/// the output is independent of thread scheduling. Rows are ordered by step,
/// then control, mean, min, max.
pub fn run_degradation_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRow>, QuantumError> {
    if cfg.trials == 0 {
        return Err(QuantumError::NoTrials);
    }
    cfg.noise.validate()?;
    let start = QubitRegister::with_cap(cfg.n, cfg.init, cfg.cap)?;
    // Validates precision before spawning trials.
    complexity_upper_bound(&start, cfg.precision_bits)?;

    let (raw_bits, control) = trajectory(cfg, &start, None)?;
    let trials: Vec<Vec<Sample>> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let seed = cfg.noise.seed.wrapping_add(i as u64);
            trajectory(cfg, &start, Some((&cfg.noise, seed))).map(|(_, s)| s)
        })
        .collect::<Result<_, _>>()?;

    let mut rows = Vec::with_capacity(4 * (cfg.depth + 1));
    for (step, c) in control.iter().enumerate() {
        rows.push(ExperimentRow {
            step,
            stat: TrialStat::Control,
            raw_bits,
            compressed_bits: c.compressed_bits as f64,
            norm_error: c.norm_error,
        });
        let at: Vec<Sample> = trials.iter().map(|t| t[step]).collect();
        let count = at.len() as f64;
        let bits = at.iter().map(|s| s.compressed_bits);
        let norms = at.iter().map(|s| s.norm_error);
        let mean = bits.clone().map(|b| b as f64).sum::<f64>() / count;
        let mean_norm = norms.clone().sum::<f64>() / count;
        let min = bits.clone().min().expect("at least one trial") as f64;
        let max = bits.max().expect("at least one trial") as f64;
        let min_norm = norms.clone().fold(f64::INFINITY, f64::min);
        let max_norm = norms.fold(0.0, f64::max);
        for (stat, compressed_bits, norm_error) in [
            (TrialStat::Mean, mean, mean_norm),
            (TrialStat::Min, min, min_norm),
            (TrialStat::Max, max, max_norm),
        ] {
            rows.push(ExperimentRow { step, stat, raw_bits, compressed_bits, norm_error });
        }
    }
    Ok(rows)
}
