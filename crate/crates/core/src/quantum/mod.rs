//! Small exact state-vector simulator and compression-based upper bounds on
//! the algorithmic information of amplitude sets.

mod complexity;
mod experiment;
mod noise;
mod pi;
mod register;

pub use complexity::{
    check_specifiability, complexity_upper_bound, decode_amplitudes, max_overhead_bits,
    serialize_amplitudes, ComplexityEstimate, SpecifiabilityCheck, Verdict, COMPRESSOR_ID,
    MAX_PRECISION_BITS, MIN_PRECISION_BITS,
};
pub use experiment::{
    run_degradation_experiment, simple_layer, ExperimentConfig, ExperimentRow, TrialStat,
    LIMITATION_NOTE,
};
pub use noise::{inject_error, inject_error_with, NoiseKind, NoiseModel};
pub use pi::pi_digits;
pub use register::{Gate, InitSpec, QubitRegister, DEFAULT_QUBIT_CAP};

use thiserror::Error;

use crate::units::UnitsError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantumError {
    #[error("qubit count {n} outside 1..={cap}")]
    QubitCountOutOfRange { n: usize, cap: usize },
    #[error("basis index {index} out of range for {n} qubits")]
    BasisIndexOutOfRange { index: usize, n: usize },
    #[error("invalid gate targets {0:?}")]
    InvalidTargets(Vec<usize>),
    #[error("matrix is not unitary (deviation {0:e})")]
    NonUnitaryMatrix(f64),
    #[error("precision {0} bits outside {MIN_PRECISION_BITS}..={MAX_PRECISION_BITS}")]
    PrecisionOutOfRange(u32),
    #[error("invalid noise model: {0}")]
    InvalidNoise(String),
    #[error("area must be positive, got {0}")]
    NonPositiveArea(f64),
    #[error("need at least one trial")]
    NoTrials,
    #[error("unknown initial-state spec `{0}`")]
    UnknownInitSpec(String),
    #[error("compressor failure: {0}")]
    Compressor(String),
    #[error(transparent)]
    Units(#[from] UnitsError),
}
