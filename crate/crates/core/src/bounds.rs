//! Information-bound calculus: Bekenstein–Hawking entropy, entropy/bit
//! conversion, holographic area bounds, t² time scaling, the inflation
//! expansion cap and the qubit specifiability limit.
//!
//! Bit counts reach 10^122 and their products overflow `f64`, so every
//! [`InfoBound`] carries `log10_bits` alongside `bits` and the scaling
//! arithmetic is done on the logarithm.

use std::f64::consts::{LN_10, LN_2, LOG2_10, PI};

use serde::Serialize;
use thiserror::Error;

use crate::units::{ConstantsSet, Dimension, Quantity, UnitsError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("mass must be positive, got {0}")]
    NonPositiveMass(f64),
    #[error("entropy must be non-negative, got {0}")]
    NegativeEntropy(f64),
    #[error("area must be positive, got {0}")]
    NonPositiveArea(f64),
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("time must be positive, got {0}")]
    NonPositiveTime(f64),
    #[error("reference bit count must be positive, got {0}")]
    NonPositiveBits(f64),
    #[error("bound of {0:e} bits is below one bit")]
    BoundBelowOneBit(f64),
    #[error(transparent)]
    Units(#[from] UnitsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMethod {
    HolographicEvent,
    HolographicParticle,
    LloydScaled,
    BlackHole,
}

impl BoundMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundMethod::HolographicEvent => "holographic-event",
            BoundMethod::HolographicParticle => "holographic-particle",
            BoundMethod::LloydScaled => "lloyd-scaled",
            BoundMethod::BlackHole => "black-hole",
        }
    }
}

/// A bit count with provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InfoBound {
    /// May be `inf` when the count exceeds `f64`; `log10_bits` stays exact.
    pub bits: f64,
    pub log10_bits: f64,
    pub method: BoundMethod,
    /// Epoch in seconds, set whenever time scaling was applied.
    pub epoch_t: Option<f64>,
}

impl InfoBound {
    pub fn from_bits(bits: f64, method: BoundMethod, epoch_t: Option<f64>) -> Self {
        Self {
            bits,
            log10_bits: bits.log10(),
            method,
            epoch_t,
        }
    }

    pub fn from_log10(log10_bits: f64, method: BoundMethod, epoch_t: Option<f64>) -> Self {
        Self {
            bits: 10f64.powf(log10_bits),
            log10_bits,
            method,
            epoch_t,
        }
    }

    /// Natural log of the bit count, from whichever field is exact.
    pub fn ln_bits(&self) -> f64 {
        if self.bits.is_finite() && self.bits > 0.0 {
            self.bits.ln()
        } else {
            self.log10_bits * LN_10
        }
    }

    pub fn log2_bits(&self) -> f64 {
        if self.bits.is_finite() && self.bits > 0.0 {
            self.bits.log2()
        } else {
            self.log10_bits * LOG2_10
        }
    }
}

/// Schwarzschild black hole of mass M.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlackHoleRecord {
    pub mass_kg: f64,
    pub schwarzschild_radius_m: f64,
    pub area_m2: f64,
    pub entropy_over_k: f64,
    pub bits: f64,
}

fn planck_area(k: &ConstantsSet) -> Result<Quantity, UnitsError> {
    k.planck_length()?.powi(2)
}

/// S/k = 4πGM²/(ħc), which is A/(4L_P²) for r_s = 2GM/c².
pub fn bh_entropy(mass_kg: f64, k: &ConstantsSet) -> Result<BlackHoleRecord, BoundsError> {
    if !(mass_kg.is_finite() && mass_kg > 0.0) {
        return Err(BoundsError::NonPositiveMass(mass_kg));
    }
    let m = Quantity::new(mass_kg, Dimension::MASS)?;
    let radius = k.g_q().mul(&m)?.div(&k.c_q().powi(2)?)?.scale(2.0)?;
    let area = radius.powi(2)?.scale(4.0 * PI)?;
    let entropy_over_k = k
        .g_q()
        .mul(&m.powi(2)?)?
        .div(&k.hbar_q().mul(&k.c_q())?)?
        .scale(4.0 * PI)?
        .value_in(Dimension::NONE)?;
    Ok(BlackHoleRecord {
        mass_kg,
        schwarzschild_radius_m: radius.value_in(Dimension::LENGTH)?,
        area_m2: area.value_in(Dimension::AREA)?,
        entropy_over_k,
        bits: entropy_to_bits(entropy_over_k)?,
    })
}

/// Area route to the same entropy: A/(4L_P²).
pub fn entropy_from_area(area_m2: f64, k: &ConstantsSet) -> Result<f64, BoundsError> {
    if !(area_m2.is_finite() && area_m2 > 0.0) {
        return Err(BoundsError::NonPositiveArea(area_m2));
    }
    let a = Quantity::new(area_m2, Dimension::AREA)?;
    Ok(a.div(&planck_area(k)?.scale(4.0)?)?
        .value_in(Dimension::NONE)?)
}

/// bits = (S/k)/ln 2.
pub fn entropy_to_bits(entropy_over_k: f64) -> Result<f64, BoundsError> {
    if !(entropy_over_k >= 0.0) {
        return Err(BoundsError::NegativeEntropy(entropy_over_k));
    }
    Ok(entropy_over_k / LN_2)
}

/// Diagnostic for the literal `S = k log₂ I` relation: returns log10 of
/// `I = 2^(S/k)`. Not used by any bound; the value is astronomically larger
/// than [`entropy_to_bits`] for any macroscopic entropy.
pub fn literal_log2_inversion_log10(entropy_over_k: f64) -> Result<f64, BoundsError> {
    if !(entropy_over_k >= 0.0) {
        return Err(BoundsError::NegativeEntropy(entropy_over_k));
    }
    Ok(entropy_over_k * std::f64::consts::LOG10_2)
}

/// Holographic bound: area/(4L_P²) bits.
pub fn holographic_bound(
    area_m2: f64,
    method: BoundMethod,
    k: &ConstantsSet,
) -> Result<InfoBound, BoundsError> {
    let bits = entropy_from_area(area_m2, k)?;
    Ok(InfoBound::from_bits(bits, method, None))
}

/// Quadratic time scaling from a reference point: bits(t) = ref_bits·(t/ref_t)².
pub fn lloyd_bound(t: f64, ref_bits: f64, ref_t: f64) -> Result<InfoBound, BoundsError> {
    for v in [t, ref_t] {
        if !(v.is_finite() && v > 0.0) {
            return Err(BoundsError::NonPositiveTime(v));
        }
    }
    if !(ref_bits > 0.0) {
        return Err(BoundsError::NonPositiveBits(ref_bits));
    }
    let log10_bits = ref_bits.log10() + 2.0 * (t.log10() - ref_t.log10());
    let mut bound = InfoBound::from_log10(log10_bits, BoundMethod::LloydScaled, Some(t));
    // direct product where it is representable, so t = ref_t returns ref_bits exactly
    let ratio = t / ref_t;
    let direct = ref_bits * ratio * ratio;
    if direct.is_finite() && direct > 0.0 {
        bound.bits = direct;
    }
    Ok(bound)
}

/// Largest qubit count n with 2ⁿ ≤ bits.
pub fn specifiability_limit(bound: &InfoBound) -> Result<u32, BoundsError> {
    if !(bound.log10_bits >= 0.0) {
        return Err(BoundsError::BoundBelowOneBit(bound.bits));
    }
    Ok(bound.log2_bits().floor() as u32)
}

/// Inflation needs at least this expansion factor in the original proposal.
pub const GUTH_REQUIRED_EXPANSION: f64 = 1e20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InflationVerdict {
    /// The cap is at least the requirement.
    Consistent,
    /// The cap sits below the requirement.
    MarginalBelowRequirement,
}

impl InflationVerdict {
    pub fn describe(self) -> &'static str {
        match self {
            InflationVerdict::Consistent => "consistent: bound meets requirement",
            InflationVerdict::MarginalBelowRequirement => "marginal: bound below requirement",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InflationCap {
    pub pre_inflation_radius_m: f64,
    /// Cap on a(after)/a(before), taken equal to the horizon bit count.
    pub max_expansion: f64,
    pub log10_max_expansion: f64,
    pub max_efolds: f64,
    pub required_expansion: f64,
    pub verdict: InflationVerdict,
}

/// Treats the holographic bit count of the pre-inflation horizon as the cap
/// on the scale-factor ratio across inflation.
pub fn inflation_expansion_limit(
    radius_m: f64,
    required_expansion: f64,
    k: &ConstantsSet,
) -> Result<InflationCap, BoundsError> {
    if !(radius_m.is_finite() && radius_m > 0.0) {
        return Err(BoundsError::NonPositiveRadius(radius_m));
    }
    let area = 4.0 * PI * radius_m * radius_m;
    let bound = holographic_bound(area, BoundMethod::HolographicEvent, k)?;
    let verdict = if bound.bits >= required_expansion {
        InflationVerdict::Consistent
    } else {
        InflationVerdict::MarginalBelowRequirement
    };
    Ok(InflationCap {
        pre_inflation_radius_m: radius_m,
        max_expansion: bound.bits,
        log10_max_expansion: bound.log10_bits,
        max_efolds: bound.ln_bits(),
        required_expansion,
        verdict,
    })
}
