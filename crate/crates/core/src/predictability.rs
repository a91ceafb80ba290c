//! Where deterministic prediction gives out: collision amplification in a
//! gas, recurrence-time reliability caps, Lyapunov horizons and the
//! exponential-redshift cutoff near a black hole.

use std::f64::consts::{LN_10, LN_2};

use serde::Serialize;
use thiserror::Error;

use crate::bounds::InfoBound;
use crate::units::{ConstantsSet, Dimension, Quantity, UnitsError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PredictabilityError {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("amplification factor {0} is not above one")]
    AmplificationNotAboveOne(f64),
    #[error("Lyapunov exponent must be positive, got {0}")]
    NonPositiveLyapunov(f64),
    #[error("budget of {budget} bits does not exceed the initial uncertainty of {initial} bits")]
    BudgetBelowInitial { budget: f64, initial: f64 },
    #[error("bound of {0:e} bits is too small")]
    BoundTooSmall(f64),
    #[error(transparent)]
    Units(#[from] UnitsError),
}

fn positive(name: &'static str, value: f64) -> Result<f64, PredictabilityError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(PredictabilityError::NonPositive { name, value })
    }
}

/// A gas molecule deflected by the gravity of a distant perturber.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GasParams {
    pub mean_free_path_m: f64,
    pub molecule_radius_m: f64,
    pub mean_speed_m_s: f64,
    pub perturber_mass_kg: f64,
    pub perturber_distance_m: f64,
}

impl Default for GasParams {
    /// Air at room conditions, perturbed by one electron at the edge of the
    /// observable universe.
    fn default() -> Self {
        Self {
            mean_free_path_m: 1e-7,
            molecule_radius_m: 1.5e-10,
            mean_speed_m_s: 500.0,
            perturber_mass_kg: 9.1e-31,
            perturber_distance_m: 4.4e26,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CollisionEstimate {
    pub params: GasParams,
    pub initial_angle_uncertainty_rad: f64,
    pub amplification_per_collision: f64,
    pub collisions_to_order_unity: u32,
}

/// n = ⌈ln(1/δθ₀)/ln f⌉, zero when δθ₀ ≥ 1.
///
/// The quotient is nudged down by a relative 1e-12 before the ceiling so
/// that exact powers such as δθ₀ = 10⁻¹², f = 10 give 12 rather than 13.
pub fn collisions_to_order_unity(initial_angle: f64, amplification: f64) -> Result<u32, PredictabilityError> {
    positive("initial angle uncertainty", initial_angle)?;
    if !(amplification > 1.0 && amplification.is_finite()) {
        return Err(PredictabilityError::AmplificationNotAboveOne(amplification));
    }
    let x = (1.0 / initial_angle).ln() / amplification.ln();
    Ok((x - x.abs() * 1e-12).ceil().max(0.0) as u32)
}

/// δθ₀ = ½·(Gm/d²)·τ²/l with τ = l/v, and f = l/r.
pub fn collision_predictability(g: &GasParams, k: &ConstantsSet) -> Result<CollisionEstimate, PredictabilityError> {
    positive("mean free path", g.mean_free_path_m)?;
    positive("molecule radius", g.molecule_radius_m)?;
    positive("mean speed", g.mean_speed_m_s)?;
    positive("perturber mass", g.perturber_mass_kg)?;
    positive("perturber distance", g.perturber_distance_m)?;

    let l = Quantity::new(g.mean_free_path_m, Dimension::LENGTH)?;
    let r = Quantity::new(g.molecule_radius_m, Dimension::LENGTH)?;
    let v = Quantity::new(g.mean_speed_m_s, Dimension::VELOCITY)?;
    let m = Quantity::new(g.perturber_mass_kg, Dimension::MASS)?;
    let d = Quantity::new(g.perturber_distance_m, Dimension::LENGTH)?;

    let accel = k.g_q().mul(&m)?.div(&d.powi(2)?)?;
    let tau = l.div(&v)?;
    let drift = accel.mul(&tau.powi(2)?)?.scale(0.5)?;
    let angle = drift.div(&l)?.value_in(Dimension::NONE)?;
    let f = l.div(&r)?.value_in(Dimension::NONE)?;
    if f <= 1.0 {
        return Err(PredictabilityError::AmplificationNotAboveOne(f));
    }
    Ok(CollisionEstimate {
        params: *g,
        initial_angle_uncertainty_rad: angle,
        amplification_per_collision: f,
        collisions_to_order_unity: collisions_to_order_unity(angle, f)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecurrenceInterpretation {
    /// cap = bits·t_P
    MaxRepresentableTime,
    /// cap = exp(min(10^N, ln bits))·t_P
    MaxExponentArgument,
}

impl RecurrenceInterpretation {
    pub fn as_str(self) -> &'static str {
        match self {
            RecurrenceInterpretation::MaxRepresentableTime => "max-representable-time",
            RecurrenceInterpretation::MaxExponentArgument => "max-exponent-argument",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RecurrenceCap {
    pub interpretation: RecurrenceInterpretation,
    /// N in a recurrence time exp(10^N) t_P, when one was supplied.
    pub exponent_n: Option<f64>,
    pub cap_seconds: f64,
    pub cap_years: f64,
    pub log10_cap_seconds: f64,
    pub log10_cap_years: f64,
}

/// Longest recurrence time the bound can resolve.
///
/// Under `MaxExponentArgument` the exponent is 10^N clipped at ln(bits);
/// without an `exponent_n`, or when exp(10^N) already exceeds the bound, it
/// reduces to bits·t_P.
pub fn recurrence_cap(
    bound: &InfoBound,
    interpretation: RecurrenceInterpretation,
    exponent_n: Option<f64>,
    k: &ConstantsSet,
) -> Result<RecurrenceCap, PredictabilityError> {
    if !(bound.log10_bits >= 0.0) {
        return Err(PredictabilityError::BoundTooSmall(bound.bits));
    }
    let tp = k.planck_time()?.value();
    let ln_exponent = match (interpretation, exponent_n) {
        (RecurrenceInterpretation::MaxExponentArgument, Some(n)) => 10f64.powf(n).min(bound.ln_bits()),
        _ => bound.ln_bits(),
    };
    let log10_cap_seconds = ln_exponent / LN_10 + tp.log10();
    let log10_cap_years = log10_cap_seconds - k.year_seconds.log10();
    let cap_seconds = if ln_exponent == bound.ln_bits() && bound.bits.is_finite() {
        bound.bits * tp
    } else {
        10f64.powf(log10_cap_seconds)
    };
    Ok(RecurrenceCap {
        interpretation,
        exponent_n,
        cap_seconds,
        cap_years: cap_seconds / k.year_seconds,
        log10_cap_seconds,
        log10_cap_years,
    })
}

/// t = budget·ln2/λ: the time for errors doubling at rate λ/ln2 to consume
/// `budget_bits`.
pub fn lyapunov_horizon(lambda: f64, initial_uncertainty_bits: f64, budget_bits: f64) -> Result<f64, PredictabilityError> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(PredictabilityError::NonPositiveLyapunov(lambda));
    }
    if !(budget_bits > initial_uncertainty_bits) {
        return Err(PredictabilityError::BudgetBelowInitial { budget: budget_bits, initial: initial_uncertainty_bits });
    }
    Ok(budget_bits * LN_2 / lambda)
}

/// t_cut = τ·ln(bits): when the accumulated redshift factor e^{t/τ}
/// reaches the bound, read as a pure factor.
pub fn redshift_cutoff(efold_time: f64, bound: &InfoBound) -> Result<f64, PredictabilityError> {
    positive("e-folding time", efold_time)?;
    let ln_bits = bound.ln_bits();
    if !(ln_bits > 0.0) {
        return Err(PredictabilityError::BoundTooSmall(bound.bits));
    }
    Ok(efold_time * ln_bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::BoundMethod;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const K: ConstantsSet = ConstantsSet::CODATA_2018;

    fn bound(bits: f64) -> InfoBound {
        InfoBound::from_bits(bits, BoundMethod::HolographicEvent, None)
    }

    #[test]
    fn exact_power_of_ten() {
        assert_eq!(collisions_to_order_unity(1e-12, 10.0).unwrap(), 12);
        assert_eq!(collisions_to_order_unity(1e-3, 10.0).unwrap(), 3);
        assert_eq!(collisions_to_order_unity(2.0, 10.0).unwrap(), 0);
        assert!(matches!(
            collisions_to_order_unity(1e-3, 1.0),
            Err(PredictabilityError::AmplificationNotAboveOne(_))
        ));
    }

    #[test]
    fn air_defaults() {
        let e = collision_predictability(&GasParams::default(), &K).unwrap();
        assert_relative_eq!(e.amplification_per_collision, 1e-7 / 1.5e-10, max_relative = 1e-14);
        // ½·G·m/d²·(l/v)²/l evaluated by hand
        let expect = 0.5 * K.g * 9.1e-31 / (4.4e26f64).powi(2) * (1e-7 / 500.0f64).powi(2) / 1e-7;
        assert_relative_eq!(e.initial_angle_uncertainty_rad, expect, max_relative = 1e-12);
        assert_eq!(e.collisions_to_order_unity, 38);
    }

    #[test]
    fn radius_not_below_path() {
        let g = GasParams { molecule_radius_m: 1e-7, ..GasParams::default() };
        assert!(matches!(
            collision_predictability(&g, &K),
            Err(PredictabilityError::AmplificationNotAboveOne(_))
        ));
        let g = GasParams { mean_speed_m_s: 0.0, ..GasParams::default() };
        assert!(collision_predictability(&g, &K).is_err());
    }

    #[test]
    fn cgs_rescaling_is_covariant() {
        let si = GasParams::default();
        let cgs = GasParams {
            mean_free_path_m: si.mean_free_path_m * 100.0,
            molecule_radius_m: si.molecule_radius_m * 100.0,
            mean_speed_m_s: si.mean_speed_m_s * 100.0,
            perturber_mass_kg: si.perturber_mass_kg * 1000.0,
            perturber_distance_m: si.perturber_distance_m * 100.0,
        };
        let k_cgs = ConstantsSet { g: K.g * 1e3, c: K.c * 100.0, hbar: K.hbar * 1e7, ..K };
        let a = collision_predictability(&si, &K).unwrap();
        let b = collision_predictability(&cgs, &k_cgs).unwrap();
        assert_relative_eq!(a.initial_angle_uncertainty_rad, b.initial_angle_uncertainty_rad, max_relative = 1e-12);
        assert_relative_eq!(a.amplification_per_collision, b.amplification_per_collision, max_relative = 1e-12);
        assert_eq!(a.collisions_to_order_unity, b.collisions_to_order_unity);
        // Planck time is unit-free in seconds.
        assert_relative_eq!(
            K.planck_time().unwrap().value(),
            k_cgs.planck_time().unwrap().value(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn recurrence_examples() {
        let tp = K.planck_time().unwrap().value();
        let c = recurrence_cap(&bound(1e122), RecurrenceInterpretation::MaxRepresentableTime, None, &K).unwrap();
        assert_relative_eq!(c.cap_seconds, 1e122 * tp, max_relative = 1e-15);
        assert_relative_eq!(c.cap_seconds, 5.39e78, max_relative = 1e-3);
        assert_relative_eq!(c.cap_years, 1.71e71, max_relative = 1e-2);
        assert_relative_eq!(c.log10_cap_seconds, c.cap_seconds.log10(), epsilon = 1e-12);

        let one = recurrence_cap(&bound(1.0 / tp), RecurrenceInterpretation::MaxRepresentableTime, None, &K).unwrap();
        assert_relative_eq!(one.cap_seconds, 1.0, max_relative = 1e-15);

        let big_n = recurrence_cap(&bound(1e122), RecurrenceInterpretation::MaxExponentArgument, Some(60.0), &K).unwrap();
        assert_relative_eq!(big_n.cap_seconds, c.cap_seconds, max_relative = 1e-15);
        let small_n = recurrence_cap(&bound(1e122), RecurrenceInterpretation::MaxExponentArgument, Some(2.0), &K).unwrap();
        assert_relative_eq!(small_n.cap_seconds, 100f64.exp() * tp, max_relative = 1e-12);

        // Neither reading lands near 10^60 years.
        assert!((c.log10_cap_years - 60.0).abs() > 10.0);
        assert!(recurrence_cap(&bound(0.5), RecurrenceInterpretation::MaxRepresentableTime, None, &K).is_err());
    }

    #[test]
    fn lyapunov_examples() {
        assert_relative_eq!(lyapunov_horizon(LN_2, 0.0, 10.0).unwrap(), 10.0, max_relative = 1e-15);
        assert_relative_eq!(lyapunov_horizon(1.0, 0.0, 1e122).unwrap(), 1e122 * LN_2, max_relative = 1e-15);
        let t1 = lyapunov_horizon(0.3, 1.0, 50.0).unwrap();
        let t2 = lyapunov_horizon(0.6, 1.0, 50.0).unwrap();
        assert_relative_eq!(t1, 2.0 * t2, max_relative = 1e-15);
        assert!(matches!(lyapunov_horizon(0.0, 0.0, 1.0), Err(PredictabilityError::NonPositiveLyapunov(_))));
        assert!(matches!(lyapunov_horizon(1.0, 5.0, 5.0), Err(PredictabilityError::BudgetBelowInitial { .. })));
    }

    #[test]
    fn redshift_examples() {
        let t = redshift_cutoff(1e-6, &bound(1e122)).unwrap();
        assert_relative_eq!(t, 122.0 * LN_10 * 1e-6, max_relative = 1e-14);
        assert_relative_eq!(t, 280.9e-6, max_relative = 1e-3);
        assert_relative_eq!(redshift_cutoff(3.0, &bound(std::f64::consts::E)).unwrap(), 3.0, max_relative = 1e-15);
        let doubled = InfoBound::from_log10(244.0, BoundMethod::LloydScaled, None);
        assert_relative_eq!(redshift_cutoff(1e-6, &doubled).unwrap(), 2.0 * t, max_relative = 1e-14);
        assert!(redshift_cutoff(1e-6, &bound(1.0)).is_err());
        assert!(redshift_cutoff(0.0, &bound(1e122)).is_err());
    }

    proptest! {
        #[test]
        fn collisions_monotone(l10 in -9.0f64..-5.0, scale in 1.0f64..1e3) {
            let g = GasParams { mean_free_path_m: 10f64.powf(l10), ..GasParams::default() };
            let near = collision_predictability(&g, &K).unwrap();
            let far = collision_predictability(&GasParams { perturber_distance_m: g.perturber_distance_m * scale, ..g }, &K).unwrap();
            prop_assert!(far.collisions_to_order_unity >= near.collisions_to_order_unity);
            let stiffer = GasParams { molecule_radius_m: g.molecule_radius_m / scale, ..g };
            if let Ok(s) = collision_predictability(&stiffer, &K) {
                prop_assert!(s.collisions_to_order_unity <= near.collisions_to_order_unity);
            }
        }

        #[test]
        fn decade_in_distance(d10 in 20.0f64..30.0, r in 1e-11f64..1e-8) {
            let g = GasParams { molecule_radius_m: r, perturber_distance_m: 10f64.powf(d10), ..GasParams::default() };
            let a = collision_predictability(&g, &K).unwrap();
            let b = collision_predictability(&GasParams { perturber_distance_m: g.perturber_distance_m * 10.0, ..g }, &K).unwrap();
            let step = 2.0 * LN_10 / a.amplification_per_collision.ln();
            let diff = (b.collisions_to_order_unity - a.collisions_to_order_unity) as f64;
            prop_assert!(diff == step.floor() || diff == step.ceil(), "diff {} step {}", diff, step);
        }

        #[test]
        fn caps_increase_with_bits(l1 in 1.0f64..300.0, dl in 0.01f64..5.0) {
            let a = InfoBound::from_log10(l1, BoundMethod::HolographicEvent, None);
            let b = InfoBound::from_log10(l1 + dl, BoundMethod::HolographicEvent, None);
            let ra = recurrence_cap(&a, RecurrenceInterpretation::MaxRepresentableTime, None, &K).unwrap();
            let rb = recurrence_cap(&b, RecurrenceInterpretation::MaxRepresentableTime, None, &K).unwrap();
            prop_assert!(rb.log10_cap_seconds > ra.log10_cap_seconds);
            prop_assert!(redshift_cutoff(1e-6, &b).unwrap() > redshift_cutoff(1e-6, &a).unwrap());
        }
    }
}
