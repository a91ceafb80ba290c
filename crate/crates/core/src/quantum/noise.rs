use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::register::QubitRegister;
use super::QuantumError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseKind {
    /// Rz(θ)
    PhaseJitter,
    /// Rotation by θ about a uniformly random axis.
    SmallRotation,
    /// Rotation by θ about x, y or z, chosen uniformly.
    DepolarizingApprox,
}

impl NoiseKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NoiseKind::PhaseJitter => "phase-jitter",
            NoiseKind::SmallRotation => "small-rotation",
            NoiseKind::DepolarizingApprox => "depolarizing-approx",
        }
    }
}

impl std::str::FromStr for NoiseKind {
    type Err = QuantumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "phase-jitter" => Ok(NoiseKind::PhaseJitter),
            "small-rotation" => Ok(NoiseKind::SmallRotation),
            "depolarizing-approx" => Ok(NoiseKind::DepolarizingApprox),
            other => Err(QuantumError::InvalidNoise(format!("unknown kind `{other}`"))),
        }
    }
}

/// Independent per-qubit random unitaries: each qubit is hit with
/// probability `rate`, by an angle drawn from N(0, sigma²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseModel {
    pub kind: NoiseKind,
    pub rate: f64,
    pub sigma: f64,
    pub seed: u64,
}

impl NoiseModel {
    pub fn validate(&self) -> Result<(), QuantumError> {
        if !(0.0..=1.0).contains(&self.rate) {
            return Err(QuantumError::InvalidNoise(format!("rate {} outside [0, 1]", self.rate)));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(QuantumError::InvalidNoise(format!("sigma {} must be positive", self.sigma)));
        }
        Ok(())
    }
}

fn rotation(axis: [f64; 3], theta: f64) -> [[Complex64; 2]; 2] {
    // exp(−iθ n·σ/2)
    let (s, c) = (theta / 2.0).sin_cos();
    let [x, y, z] = axis;
    [
        [Complex64::new(c, -s * z), Complex64::new(-s * y, -s * x)],
        [Complex64::new(s * y, -s * x), Complex64::new(c, s * z)],
    ]
}

fn random_unitary<R: Rng>(kind: NoiseKind, sigma: f64, rng: &mut R) -> [[Complex64; 2]; 2] {
    let z: f64 = StandardNormal.sample(rng);
    let theta = sigma * z;
    let axis = match kind {
        NoiseKind::PhaseJitter => [0.0, 0.0, 1.0],
        NoiseKind::DepolarizingApprox => match rng.random_range(0..3) {
            0 => [1.0, 0.0, 0.0],
            1 => [0.0, 1.0, 0.0],
            _ => [0.0, 0.0, 1.0],
        },
        NoiseKind::SmallRotation => loop {
            let v: [f64; 3] = [
                StandardNormal.sample(rng),
                StandardNormal.sample(rng),
                StandardNormal.sample(rng),
            ];
            let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if norm > 1e-12 {
                break v.map(|c| c / norm);
            }
        },
    };
    rotation(axis, theta)
}

/// Perturbs `reg` using an explicit random stream.
pub fn inject_error_with<R: Rng>(
    reg: &QubitRegister,
    model: &NoiseModel,
    rng: &mut R,
) -> Result<QubitRegister, QuantumError> {
    model.validate()?;
    let mut out = reg.clone();
    let mut touched = false;
    for q in 0..reg.n() {
        if rng.random::<f64>() < model.rate {
            let u = random_unitary(model.kind, model.sigma, rng);
            out.apply_1q(&u, q);
            touched = true;
        }
    }
    if touched {
        out.renormalize();
    }
    Ok(out)
}

/// Perturbs `reg` with a stream seeded from `model.seed`.
pub fn inject_error(reg: &QubitRegister, model: &NoiseModel) -> Result<QubitRegister, QuantumError> {
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    inject_error_with(reg, model, &mut rng)
}
