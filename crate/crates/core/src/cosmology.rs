//! FRW background: expansion rate, cosmic time, particle and event horizons.
//!
//! Horizon and age integrals are evaluated in `u = ln a`. Near `a → 0` the
//! leading density term dominates and the integrand is a pure power of `a`,
//! so the piece below a cut `a_min` is added in closed form and only
//! `[ln a_min, ln a]` goes through adaptive quadrature. The event horizon is
//! integrated decade by decade until the de Sitter tail bound drops below
//! tolerance.

use std::f64::consts::PI;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::quad::{self, QuadError, QuadOptions};
use crate::units::{ConstantsSet, Dimension, Quantity, UnitsError, MPC_M};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CosmologyError {
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScaleFactor(f64),
    #[error("H²(a) is non-positive at a = {a:e}; curvature term dominates")]
    NegativeRadicand { a: f64 },
    #[error("{0} integral diverges for these parameters")]
    DivergentIntegral(&'static str),
    #[error("energy density must be positive, got {0}")]
    NonPositiveDensity(f64),
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("invalid cosmological parameter `{name}` = {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    Units(#[from] UnitsError),
}

/// FRW model. `omega_k` is derived as `1 − (Ω_r + Ω_m + Ω_Λ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosmologyParams {
    h0: f64,
    omega_r: f64,
    omega_m: f64,
    omega_lambda: f64,
}

impl CosmologyParams {
    /// `h0` in s⁻¹.
    pub fn new(
        h0: f64,
        omega_r: f64,
        omega_m: f64,
        omega_lambda: f64,
    ) -> Result<Self, CosmologyError> {
        if !(h0.is_finite() && h0 > 0.0) {
            return Err(CosmologyError::InvalidParameter {
                name: "hubble0",
                value: h0,
            });
        }
        for (name, value) in [
            ("omega_r", omega_r),
            ("omega_m", omega_m),
            ("omega_lambda", omega_lambda),
        ] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(CosmologyError::InvalidParameter { name, value });
            }
        }
        Ok(Self {
            h0,
            omega_r,
            omega_m,
            omega_lambda,
        })
    }

    pub fn from_km_s_mpc(
        h0_km_s_mpc: f64,
        omega_r: f64,
        omega_m: f64,
        omega_lambda: f64,
    ) -> Result<Self, CosmologyError> {
        Self::new(h0_km_s_mpc * 1e3 / MPC_M, omega_r, omega_m, omega_lambda)
    }

    /// H0 = 67.7 km/s/Mpc, Ω_m = 0.31, Ω_Λ = 0.69, Ω_r = 9e-5.
    pub fn benchmark() -> Self {
        Self::from_km_s_mpc(67.7, 9e-5, 0.31, 0.69).expect("benchmark parameters are valid")
    }

    pub fn matter_only(h0: f64) -> Result<Self, CosmologyError> {
        Self::new(h0, 0.0, 1.0, 0.0)
    }

    pub fn radiation_only(h0: f64) -> Result<Self, CosmologyError> {
        Self::new(h0, 1.0, 0.0, 0.0)
    }

    pub fn de_sitter(h0: f64) -> Result<Self, CosmologyError> {
        Self::new(h0, 0.0, 0.0, 1.0)
    }

    pub fn h0(&self) -> f64 {
        self.h0
    }

    pub fn h0_km_s_mpc(&self) -> f64 {
        self.h0 * MPC_M / 1e3
    }

    pub fn omega_r(&self) -> f64 {
        self.omega_r
    }

    pub fn omega_m(&self) -> f64 {
        self.omega_m
    }

    pub fn omega_lambda(&self) -> f64 {
        self.omega_lambda
    }

    pub fn omega_k(&self) -> f64 {
        1.0 - (self.omega_r + self.omega_m + self.omega_lambda)
    }

    /// (power of 1/a, coefficient) for each non-zero density term, steepest first.
    fn terms(&self) -> Vec<(i32, f64)> {
        [
            (4, self.omega_r),
            (3, self.omega_m),
            (2, self.omega_k()),
            (0, self.omega_lambda),
        ]
        .into_iter()
        .filter(|&(_, w)| w != 0.0)
        .collect()
    }

    /// E²(a) = H²(a)/H0².
    fn e2(&self, a: f64) -> f64 {
        let ia = 1.0 / a;
        let ia2 = ia * ia;
        self.omega_r * ia2 * ia2 + self.omega_m * ia2 * ia + self.omega_k() * ia2 + self.omega_lambda
    }
}

/// A horizon distance, either finite (metres) or divergent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HorizonDistance {
    Finite(f64),
    Infinite,
}

impl HorizonDistance {
    pub fn finite(&self) -> Option<f64> {
        match *self {
            HorizonDistance::Finite(d) => Some(d),
            HorizonDistance::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, HorizonDistance::Infinite)
    }
}

impl Serialize for HorizonDistance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            HorizonDistance::Finite(d) => s.serialize_f64(*d),
            HorizonDistance::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Horizons at one epoch. Serializes to the `cosmo` JSON schema.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HorizonSet {
    #[serde(rename = "a")]
    pub epoch_a: f64,
    #[serde(rename = "particle_horizon_m")]
    pub particle_horizon: HorizonDistance,
    #[serde(rename = "event_horizon_m")]
    pub event_horizon: HorizonDistance,
    #[serde(rename = "hubble_radius_m")]
    pub hubble_radius: f64,
}

/// A quadrature-backed value with its absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub abs_error: f64,
}

pub const DEFAULT_REL_TOL: f64 = 1e-9;

// Subleading/leading term ratio at the small-a cut.
const TAIL_DOMINANCE: f64 = 1e-12;
// Smallest a_min considered; below this the power-law tail is exact to f64.
const A_MIN_FLOOR: f64 = 1e-200;

fn check_a(a: f64) -> Result<(), CosmologyError> {
    if a.is_finite() && a > 0.0 {
        Ok(())
    } else {
        Err(CosmologyError::NonPositiveScaleFactor(a))
    }
}

/// H(a) in s⁻¹.
pub fn hubble_rate(a: f64, p: &CosmologyParams) -> Result<f64, CosmologyError> {
    check_a(a)?;
    let e2 = p.e2(a);
    if !(e2 > 0.0) {
        return Err(CosmologyError::NegativeRadicand { a });
    }
    Ok(p.h0 * e2.sqrt())
}

fn quad_opts(rel_tol: f64) -> QuadOptions {
    QuadOptions {
        rel_tol,
        abs_tol: 0.0,
        max_subdivisions: 4000,
    }
}

fn map_quad(e: QuadError) -> CosmologyError {
    match e {
        QuadError::NonFiniteIntegrand(u) => CosmologyError::NegativeRadicand { a: u.exp() },
        other => CosmologyError::Quadrature(other),
    }
}

/// ∫₀^a a'^k da' / H(a') for k = −1 (age) or k = −2 (comoving particle horizon / c).
fn early_integral(
    a: f64,
    p: &CosmologyParams,
    k: i32,
    rel_tol: f64,
    what: &'static str,
) -> Result<Estimate, CosmologyError> {
    check_a(a)?;
    let terms = p.terms();
    let &(lead_pow, lead_w) = terms.first().ok_or(CosmologyError::DivergentIntegral(what))?;
    if lead_w < 0.0 {
        // curvature-led with nothing steeper: H² < 0 at small a
        return Err(CosmologyError::NegativeRadicand { a: A_MIN_FLOOR });
    }
    // integrand ~ a^(k + lead_pow/2) / (H0 sqrt(lead_w)) as a → 0
    let q = k as f64 + lead_pow as f64 / 2.0;
    if q <= -1.0 {
        return Err(CosmologyError::DivergentIntegral(what));
    }

    let mut a_min = match terms.get(1) {
        Some(&(pow2, w2)) => {
            (TAIL_DOMINANCE * lead_w / w2.abs()).powf(1.0 / (lead_pow - pow2) as f64)
        }
        None => 1e-3 * a,
    };
    a_min = a_min.min(a).max(A_MIN_FLOOR);

    let tail = a_min.powf(q + 1.0) / ((q + 1.0) * p.h0 * lead_w.sqrt());
    // in u = ln a: a^k da / H = a^(k+1) du / H
    let body = quad::integrate(
        |u| {
            let x = u.exp();
            let e2 = p.e2(x);
            if e2 > 0.0 {
                x.powi(k + 1) / (p.h0 * e2.sqrt())
            } else {
                f64::NAN
            }
        },
        a_min.ln(),
        a.ln(),
        &quad_opts(rel_tol),
    )
    .map_err(map_quad)?;
    Ok(Estimate {
        value: tail + body.value,
        abs_error: body.abs_error + TAIL_DOMINANCE * tail,
    })
}

/// Cosmic time t(a) = ∫₀^a da'/(a' H(a')), with error estimate.
pub fn cosmic_time_with_tol(
    a: f64,
    p: &CosmologyParams,
    rel_tol: f64,
) -> Result<Estimate, CosmologyError> {
    early_integral(a, p, -1, rel_tol, "cosmic time")
}

/// Cosmic time in seconds.
pub fn cosmic_time(a: f64, p: &CosmologyParams) -> Result<f64, CosmologyError> {
    Ok(cosmic_time_with_tol(a, p, DEFAULT_REL_TOL)?.value)
}

/// Inverse of [`cosmic_time`]: the scale factor at age `t` seconds, by
/// bisection in ln a.
pub fn scale_factor_at_time(t: f64, p: &CosmologyParams) -> Result<f64, CosmologyError> {
    if !(t.is_finite() && t > 0.0) {
        return Err(CosmologyError::InvalidParameter { name: "t", value: t });
    }
    let (mut lo, mut hi) = (0.0f64, 0.0f64);
    while cosmic_time(lo.exp(), p)? > t {
        lo -= 10.0;
        if lo < -400.0 {
            return Err(CosmologyError::InvalidParameter { name: "t", value: t });
        }
    }
    while cosmic_time(hi.exp(), p)? < t {
        hi += 2.0;
        if hi > 600.0 {
            return Err(CosmologyError::InvalidParameter { name: "t", value: t });
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo < 1e-14 {
            break;
        }
        if cosmic_time(mid.exp(), p)? < t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi)).exp())
}

/// Proper particle horizon a·c·∫₀^a da'/(a'² H), with error estimate (metres).
pub fn particle_horizon_with_tol(
    a: f64,
    p: &CosmologyParams,
    k: &ConstantsSet,
    rel_tol: f64,
) -> Result<Estimate, CosmologyError> {
    let est = early_integral(a, p, -2, rel_tol, "particle horizon")?;
    Ok(Estimate {
        value: a * k.c * est.value,
        abs_error: a * k.c * est.abs_error,
    })
}

pub fn particle_horizon(
    a: f64,
    p: &CosmologyParams,
    k: &ConstantsSet,
) -> Result<f64, CosmologyError> {
    Ok(particle_horizon_with_tol(a, p, k, DEFAULT_REL_TOL)?.value)
}

/// Proper event horizon a·c·∫_a^∞ da'/(a'² H). Infinite when Ω_Λ = 0.
pub fn event_horizon_with_tol(
    a: f64,
    p: &CosmologyParams,
    k: &ConstantsSet,
    rel_tol: f64,
) -> Result<(HorizonDistance, f64), CosmologyError> {
    check_a(a)?;
    if p.omega_lambda == 0.0 {
        return Ok((HorizonDistance::Infinite, 0.0));
    }
    let lambda_rate = p.h0 * p.omega_lambda.sqrt();
    let integrand = |u: f64| {
        let x = u.exp();
        let e2 = p.e2(x);
        if e2 > 0.0 {
            1.0 / (x * p.h0 * e2.sqrt())
        } else {
            f64::NAN
        }
    };
    let opts = quad_opts(rel_tol);

    let mut lo = a;
    let mut hi = a.max(1.0) * 10.0;
    let mut sum = 0.0;
    let mut err = 0.0;
    loop {
        let r = quad::integrate(integrand, lo.ln(), hi.ln(), &opts).map_err(map_quad)?;
        sum += r.value;
        err += r.abs_error;
        // ∫_hi^∞ da/(a² H) ≤ 1/(hi · H0 √Ω_Λ) while the other terms are non-negative
        let tail = 1.0 / (hi * lambda_rate);
        if tail <= 1e-3 * rel_tol * (sum + tail) {
            sum += tail;
            err += tail;
            break;
        }
        if hi > 1e250 {
            return Err(CosmologyError::DivergentIntegral("event horizon"));
        }
        lo = hi;
        hi *= 10.0;
    }
    Ok((HorizonDistance::Finite(a * k.c * sum), a * k.c * err))
}

pub fn event_horizon(
    a: f64,
    p: &CosmologyParams,
    k: &ConstantsSet,
) -> Result<HorizonDistance, CosmologyError> {
    Ok(event_horizon_with_tol(a, p, k, DEFAULT_REL_TOL)?.0)
}

/// Particle and event horizons plus the Hubble radius c/H(a).
pub fn horizons(
    a: f64,
    p: &CosmologyParams,
    k: &ConstantsSet,
) -> Result<HorizonSet, CosmologyError> {
    let hubble_radius = k.c / hubble_rate(a, p)?;
    let particle_horizon = match particle_horizon(a, p, k) {
        Ok(d) => HorizonDistance::Finite(d),
        Err(CosmologyError::DivergentIntegral(_)) => HorizonDistance::Infinite,
        Err(e) => return Err(e),
    };
    Ok(HorizonSet {
        epoch_a: a,
        particle_horizon,
        event_horizon: event_horizon(a, p, k)?,
        hubble_radius,
    })
}

/// De Sitter radius c/H_Λ for a constant dark-energy density, H_Λ = sqrt(8πGρ/(3c²)).
pub fn desitter_radius_from_density(
    rho_lambda: f64,
    k: &ConstantsSet,
) -> Result<Quantity, CosmologyError> {
    if !(rho_lambda.is_finite() && rho_lambda > 0.0) {
        return Err(CosmologyError::NonPositiveDensity(rho_lambda));
    }
    let rho = Quantity::new(rho_lambda, Dimension::ENERGY_DENSITY)?;
    let h2 = k
        .g_q()
        .mul(&rho)?
        .div(&k.c_q().powi(2)?)?
        .scale(8.0 * PI / 3.0)?;
    let radius = k.c_q().div(&h2.sqrt()?)?;
    radius.value_in(Dimension::LENGTH)?;
    Ok(radius)
}

/// 4πR².
pub fn horizon_area(radius: f64) -> Result<Quantity, CosmologyError> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(CosmologyError::NonPositiveRadius(radius));
    }
    let r = Quantity::new(radius, Dimension::LENGTH)?;
    Ok(r.powi(2)?.scale(4.0 * PI)?)
}
