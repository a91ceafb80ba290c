use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::pi::pi_digits;
use super::QuantumError;

/// Default qubit cap: 2¹⁴ amplitudes keeps simulation and compression fast.
pub const DEFAULT_QUBIT_CAP: usize = 14;

const UNITARY_TOL: f64 = 1e-10;

/// How to fill a fresh register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitSpec {
    Basis(usize),
    Uniform,
    /// Real and imaginary parts i.i.d. uniform on [−1, 1], then normalised.
    SeededRandom(u64),
    /// Real parts are successive decimal digits of π divided by 9.
    PiDigit,
}

impl fmt::Display for InitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitSpec::Basis(k) => write!(f, "basis:{k}"),
            InitSpec::Uniform => write!(f, "uniform"),
            InitSpec::SeededRandom(s) => write!(f, "random:{s}"),
            InitSpec::PiDigit => write!(f, "pi-digit"),
        }
    }
}

impl FromStr for InitSpec {
    type Err = QuantumError;

    /// Accepts `basis:K`, `uniform`, `random:SEED`, `pi-digit`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || QuantumError::UnknownInitSpec(s.to_string());
        match s.split_once(':') {
            Some(("basis", k)) => k.parse().map(InitSpec::Basis).map_err(|_| bad()),
            Some(("random", seed)) => seed.parse().map(InitSpec::SeededRandom).map_err(|_| bad()),
            None if s == "uniform" => Ok(InitSpec::Uniform),
            None if s == "pi-digit" => Ok(InitSpec::PiDigit),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    X,
    H,
    T,
    /// targets = [control, target]
    Cnot,
    Unitary([[Complex64; 2]; 2]),
}

impl Gate {
    fn matrix(&self) -> Option<[[Complex64; 2]; 2]> {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            Gate::X => Some([[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]),
            Gate::H => Some([[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]]),
            Gate::T => Some([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)]]),
            Gate::Unitary(u) => Some(*u),
            Gate::Cnot => None,
        }
    }
}

/// Max |(U†U − I)_ij|.
pub(crate) fn unitarity_deviation(u: &[[Complex64; 2]; 2]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for r in 0..2 {
                acc += u[r][i].conj() * u[r][j];
            }
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((acc - target).norm());
        }
    }
    worst
}

/// n qubits, 2ⁿ amplitudes, unit norm. Qubit q is bit q of the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitRegister {
    n: usize,
    amps: Vec<Complex64>,
}

impl QubitRegister {
    pub fn new(n: usize, spec: InitSpec) -> Result<Self, QuantumError> {
        Self::with_cap(n, spec, DEFAULT_QUBIT_CAP)
    }

    pub fn with_cap(n: usize, spec: InitSpec, cap: usize) -> Result<Self, QuantumError> {
        if n == 0 || n > cap || n >= usize::BITS as usize {
            return Err(QuantumError::QubitCountOutOfRange { n, cap });
        }
        let dim = 1usize << n;
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        match spec {
            InitSpec::Basis(k) => {
                if k >= dim {
                    return Err(QuantumError::BasisIndexOutOfRange { index: k, n });
                }
                amps[k] = Complex64::new(1.0, 0.0);
                return Ok(Self { n, amps });
            }
            InitSpec::Uniform => {
                let a = 1.0 / (dim as f64).sqrt();
                amps.fill(Complex64::new(a, 0.0));
                return Ok(Self { n, amps });
            }
            InitSpec::SeededRandom(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for a in amps.iter_mut() {
                    *a = Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
                }
            }
            InitSpec::PiDigit => {
                for (a, d) in amps.iter_mut().zip(pi_digits(dim)) {
                    *a = Complex64::new(d as f64 / 9.0, 0.0);
                }
            }
        }
        let mut reg = Self { n, amps };
        reg.renormalize();
        Ok(reg)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// |Σ|α|² − 1|.
    pub fn norm_error(&self) -> f64 {
        (self.norm_sqr() - 1.0).abs()
    }

    pub(crate) fn renormalize(&mut self) {
        let norm = self.norm_sqr().sqrt();
        for a in self.amps.iter_mut() {
            *a /= norm;
        }
    }

    fn check_qubit(&self, q: usize, targets: &[usize]) -> Result<(), QuantumError> {
        if q < self.n {
            Ok(())
        } else {
            Err(QuantumError::InvalidTargets(targets.to_vec()))
        }
    }

    /// Returns the register after applying `gate` to `targets`.
    pub fn apply(&self, gate: &Gate, targets: &[usize]) -> Result<QubitRegister, QuantumError> {
        let mut out = self.clone();
        out.apply_in_place(gate, targets)?;
        Ok(out)
    }

    pub fn apply_in_place(&mut self, gate: &Gate, targets: &[usize]) -> Result<(), QuantumError> {
        match gate {
            Gate::Cnot => {
                let &[control, target] = targets else {
                    return Err(QuantumError::InvalidTargets(targets.to_vec()));
                };
                self.check_qubit(control, targets)?;
                self.check_qubit(target, targets)?;
                if control == target {
                    return Err(QuantumError::InvalidTargets(targets.to_vec()));
                }
                let (cm, tm) = (1usize << control, 1usize << target);
                for i in 0..self.amps.len() {
                    if i & cm != 0 && i & tm == 0 {
                        self.amps.swap(i, i | tm);
                    }
                }
                Ok(())
            }
            single => {
                let &[q] = targets else {
                    return Err(QuantumError::InvalidTargets(targets.to_vec()));
                };
                self.check_qubit(q, targets)?;
                let u = single.matrix().expect("single-qubit gate has a matrix");
                if let Gate::Unitary(_) = single {
                    let dev = unitarity_deviation(&u);
                    if !(dev <= UNITARY_TOL) {
                        return Err(QuantumError::NonUnitaryMatrix(dev));
                    }
                }
                self.apply_1q(&u, q);
                Ok(())
            }
        }
    }

    pub(crate) fn apply_1q(&mut self, u: &[[Complex64; 2]; 2], q: usize) {
        let mask = 1usize << q;
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let j = i | mask;
                let (a0, a1) = (self.amps[i], self.amps[j]);
                self.amps[i] = u[0][0] * a0 + u[0][1] * a1;
                self.amps[j] = u[1][0] * a0 + u[1][1] * a1;
            }
        }
    }
}
