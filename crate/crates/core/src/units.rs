//! Runtime-checked dimensioned quantities and the physical constants the rest
//! of the crate is built from.
//!
//! Everything is SI internally. A [`Quantity`] carries an exponent vector over
//! (length, mass, time, temperature); every arithmetic operation checks it and
//! mismatches are hard errors.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UnitsError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: Dimension, right: Dimension },
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-integer power {exponent} of dimensioned quantity ({dims})")]
    NonIntegerPowerOfDimensioned { exponent: f64, dims: Dimension },
    #[error("non-finite value {0}")]
    NonFinite(f64),
    #[error("constant `{name}` must be strictly positive, got {value}")]
    NonPositiveConstant { name: &'static str, value: f64 },
}

/// Integer exponents over the base dimensions (length, mass, time, temperature).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Dimension(pub [i32; 4]);

impl Dimension {
    pub const NONE: Dimension = Dimension([0, 0, 0, 0]);
    pub const LENGTH: Dimension = Dimension([1, 0, 0, 0]);
    pub const MASS: Dimension = Dimension([0, 1, 0, 0]);
    pub const TIME: Dimension = Dimension([0, 0, 1, 0]);
    pub const TEMPERATURE: Dimension = Dimension([0, 0, 0, 1]);
    pub const AREA: Dimension = Dimension([2, 0, 0, 0]);
    pub const VELOCITY: Dimension = Dimension([1, 0, -1, 0]);
    pub const FREQUENCY: Dimension = Dimension([0, 0, -1, 0]);
    pub const ENERGY: Dimension = Dimension([2, 1, -2, 0]);
    /// J/m³, identical to pressure.
    pub const ENERGY_DENSITY: Dimension = Dimension([-1, 1, -2, 0]);
    pub const ACTION: Dimension = Dimension([2, 1, -1, 0]);
    pub const GRAVITATIONAL: Dimension = Dimension([3, -1, -2, 0]);
    pub const ENTROPY: Dimension = Dimension([2, 1, -2, -1]);
    pub const ACCELERATION: Dimension = Dimension([1, 0, -2, 0]);

    pub fn is_dimensionless(self) -> bool {
        self == Self::NONE
    }

    fn combine(self, other: Dimension, sign: i32) -> Dimension {
        let mut out = self.0;
        for (o, e) in out.iter_mut().zip(other.0) {
            *o += sign * e;
        }
        Dimension(out)
    }

    pub fn mul(self, other: Dimension) -> Dimension {
        self.combine(other, 1)
    }

    pub fn div(self, other: Dimension) -> Dimension {
        self.combine(other, -1)
    }

    pub fn powi(self, n: i32) -> Dimension {
        Dimension(self.0.map(|e| e * n))
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_dimensionless() {
            return write!(f, "1");
        }
        let mut first = true;
        for (sym, e) in ["m", "kg", "s", "K"].iter().zip(self.0) {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A finite real value tagged with its dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quantity {
    value: f64,
    dims: Dimension,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    /// `b` must be dimensionless; its value is the exponent.
    Pow,
}

fn finite(value: f64) -> Result<f64, UnitsError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(UnitsError::NonFinite(value))
    }
}

impl Quantity {
    pub fn new(value: f64, dims: Dimension) -> Result<Self, UnitsError> {
        Ok(Self {
            value: finite(value)?,
            dims,
        })
    }

    pub fn dimensionless(value: f64) -> Result<Self, UnitsError> {
        Self::new(value, Dimension::NONE)
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn dims(&self) -> Dimension {
        self.dims
    }

    /// Unwraps the value after asserting the dimension.
    pub fn value_in(&self, dims: Dimension) -> Result<f64, UnitsError> {
        if self.dims == dims {
            Ok(self.value)
        } else {
            Err(UnitsError::DimensionMismatch {
                left: self.dims,
                right: dims,
            })
        }
    }

    pub fn add(&self, other: &Quantity) -> Result<Quantity, UnitsError> {
        self.same_dims(other)?;
        Quantity::new(self.value + other.value, self.dims)
    }

    pub fn sub(&self, other: &Quantity) -> Result<Quantity, UnitsError> {
        self.same_dims(other)?;
        Quantity::new(self.value - other.value, self.dims)
    }

    pub fn mul(&self, other: &Quantity) -> Result<Quantity, UnitsError> {
        Quantity::new(self.value * other.value, self.dims.mul(other.dims))
    }

    pub fn div(&self, other: &Quantity) -> Result<Quantity, UnitsError> {
        if other.value == 0.0 {
            return Err(UnitsError::DivisionByZero);
        }
        Quantity::new(self.value / other.value, self.dims.div(other.dims))
    }

    /// Multiplies by a dimensionless scalar.
    pub fn scale(&self, factor: f64) -> Result<Quantity, UnitsError> {
        Quantity::new(self.value * factor, self.dims)
    }

    pub fn powi(&self, n: i32) -> Result<Quantity, UnitsError> {
        if n < 0 && self.value == 0.0 {
            return Err(UnitsError::DivisionByZero);
        }
        Quantity::new(self.value.powi(n), self.dims.powi(n))
    }

    /// Real power. Dimensioned bases only accept integral exponents.
    pub fn powf(&self, exponent: f64) -> Result<Quantity, UnitsError> {
        if exponent.fract() == 0.0 && exponent.abs() <= i32::MAX as f64 {
            return self.powi(exponent as i32);
        }
        if !self.dims.is_dimensionless() {
            return Err(UnitsError::NonIntegerPowerOfDimensioned {
                exponent,
                dims: self.dims,
            });
        }
        Quantity::new(self.value.powf(exponent), self.dims)
    }

    /// Square root; every exponent must be even.
    pub fn sqrt(&self) -> Result<Quantity, UnitsError> {
        if self.dims.0.iter().any(|e| e % 2 != 0) {
            return Err(UnitsError::NonIntegerPowerOfDimensioned {
                exponent: 0.5,
                dims: self.dims,
            });
        }
        Quantity::new(self.value.sqrt(), Dimension(self.dims.0.map(|e| e / 2)))
    }

    fn same_dims(&self, other: &Quantity) -> Result<(), UnitsError> {
        if self.dims == other.dims {
            Ok(())
        } else {
            Err(UnitsError::DimensionMismatch {
                left: self.dims,
                right: other.dims,
            })
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_dimensionless() {
            write!(f, "{:e}", self.value)
        } else {
            write!(f, "{:e} {}", self.value, self.dims)
        }
    }
}

/// Generic entry point over [`ArithOp`].
pub fn quantity_arith(a: &Quantity, b: &Quantity, op: ArithOp) -> Result<Quantity, UnitsError> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b),
        ArithOp::Pow => {
            if !b.dims.is_dimensionless() {
                return Err(UnitsError::DimensionMismatch {
                    left: b.dims,
                    right: Dimension::NONE,
                });
            }
            a.powf(b.value)
        }
    }
}

/// Megaparsec in metres.
pub const MPC_M: f64 = 3.0857e22;

/// Fundamental constants in SI. Defaults are CODATA 2018.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantsSet {
    /// m/s
    pub c: f64,
    /// m³ kg⁻¹ s⁻²
    #[serde(rename = "G")]
    pub g: f64,
    /// J s
    pub hbar: f64,
    /// J/K
    #[serde(rename = "k_B")]
    pub k_b: f64,
    /// Julian year, s
    pub year_seconds: f64,
}

impl Default for ConstantsSet {
    fn default() -> Self {
        Self::CODATA_2018
    }
}

impl ConstantsSet {
    pub const CODATA_2018: ConstantsSet = ConstantsSet {
        c: 299_792_458.0,
        g: 6.674_30e-11,
        hbar: 1.054_571_817e-34,
        k_b: 1.380_649e-23,
        year_seconds: 365.25 * 86_400.0,
    };

    /// All of c, G, ħ, k_B set to one (the dimensional bookkeeping is kept).
    pub fn natural() -> Self {
        Self {
            c: 1.0,
            g: 1.0,
            hbar: 1.0,
            k_b: 1.0,
            year_seconds: Self::CODATA_2018.year_seconds,
        }
    }

    pub fn validate(&self) -> Result<(), UnitsError> {
        for (name, value) in [
            ("c", self.c),
            ("G", self.g),
            ("hbar", self.hbar),
            ("k_B", self.k_b),
            ("year_seconds", self.year_seconds),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(UnitsError::NonPositiveConstant { name, value });
            }
        }
        Ok(())
    }

    pub fn c_q(&self) -> Quantity {
        Quantity {
            value: self.c,
            dims: Dimension::VELOCITY,
        }
    }

    pub fn g_q(&self) -> Quantity {
        Quantity {
            value: self.g,
            dims: Dimension::GRAVITATIONAL,
        }
    }

    pub fn hbar_q(&self) -> Quantity {
        Quantity {
            value: self.hbar,
            dims: Dimension::ACTION,
        }
    }

    pub fn k_b_q(&self) -> Quantity {
        Quantity {
            value: self.k_b,
            dims: Dimension::ENTROPY,
        }
    }

    /// sqrt(ħG/c³).
    pub fn planck_length(&self) -> Result<Quantity, UnitsError> {
        self.hbar_q()
            .mul(&self.g_q())?
            .div(&self.c_q().powi(3)?)?
            .sqrt()
    }

    /// sqrt(ħG/c⁵).
    pub fn planck_time(&self) -> Result<Quantity, UnitsError> {
        self.hbar_q()
            .mul(&self.g_q())?
            .div(&self.c_q().powi(5)?)?
            .sqrt()
    }

    /// sqrt(ħc/G).
    pub fn planck_mass(&self) -> Result<Quantity, UnitsError> {
        self.hbar_q().mul(&self.c_q())?.div(&self.g_q())?.sqrt()
    }

    /// c⁷/(ħG²), in J/m³.
    pub fn planck_energy_density(&self) -> Result<Quantity, UnitsError> {
        self.c_q()
            .powi(7)?
            .div(&self.hbar_q().mul(&self.g_q().powi(2)?)?)
    }

    /// ħc, the J·m combination that keeps appearing in vacuum estimates.
    pub fn hbar_c(&self) -> Result<Quantity, UnitsError> {
        self.hbar_q().mul(&self.c_q())
    }
}
