//! Vacuum energy density estimates for a massless scalar field.
//!
//! Conventions: periodic box of side L, one scalar polarization, modes
//! ω = (2πc/L)|n| for integer triples n. The continuum limit of the mode sum
//! up to a cutoff ω_c is ħω_c⁴/(16π²c³). Every estimate obeys p = −ρ.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::units::{ConstantsSet, Dimension, Quantity, UnitsError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VacuumError {
    #[error("mode budget n_max = {0} outside 1..={MAX_MODE_BUDGET}")]
    ModeBudgetTooLarge(u32),
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("need at least 3 samples, got {0}")]
    InsufficientSamples(usize),
    #[error("times must be strictly increasing (index {0})")]
    NonMonotoneTimes(usize),
    #[error("series lengths differ: {0} times, {1} rho, {2} scale factors")]
    LengthMismatch(usize, usize, usize),
    #[error(transparent)]
    Units(#[from] UnitsError),
}

/// Largest `n_max` accepted by [`discrete_mode_sum`]; the sum is O(n_max³).
pub const MAX_MODE_BUDGET: u32 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    DiscreteSum,
    PlanckCutoff,
    HolographicCutoff,
    CollapseBound,
    GeometricMean,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::DiscreteSum => "discrete-sum",
            Scheme::PlanckCutoff => "planck-cutoff",
            Scheme::HolographicCutoff => "holographic-cutoff",
            Scheme::CollapseBound => "collapse-bound",
            Scheme::GeometricMean => "geometric-mean",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VacuumEstimate {
    pub scheme: Scheme,
    pub rho_j_m3: f64,
    pub pressure_j_m3: f64,
    pub cutoff: String,
    pub box_scale_m: Option<f64>,
}

impl VacuumEstimate {
    fn new(scheme: Scheme, rho: Quantity, cutoff: String, box_scale_m: Option<f64>) -> Result<Self, VacuumError> {
        let rho = rho.value_in(Dimension::ENERGY_DENSITY)?;
        Ok(Self {
            scheme,
            rho_j_m3: rho,
            pressure_j_m3: vacuum_pressure(rho),
            cutoff,
            box_scale_m,
        })
    }
}

fn positive(name: &'static str, value: f64) -> Result<f64, VacuumError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(VacuumError::NonPositive { name, value })
    }
}

fn length(l: f64) -> Result<Quantity, VacuumError> {
    Ok(Quantity::new(positive("L", l)?, Dimension::LENGTH)?)
}

/// Pairwise summation; the reduction tree depends only on the slice length.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if xs.len() <= LEAF {
        xs.iter().sum()
    } else {
        let (lo, hi) = xs.split_at(xs.len() / 2);
        pairwise_sum(lo) + pairwise_sum(hi)
    }
}

/// Σ|n| over integer triples with 0 < |n| ≤ n_max. Each x-slab is summed
/// sequentially, slabs are combined pairwise, so the result is bit-stable
/// across thread counts.
fn lattice_norm_sum(n_max: u32) -> f64 {
    let n = n_max as i64;
    let r2 = n * n;
    let slabs: Vec<f64> = (-n..=n)
        .into_par_iter()
        .map(|x| {
            let mut row = Vec::with_capacity((2 * n + 1) as usize);
            for y in -n..=n {
                let mut acc = 0.0;
                for z in -n..=n {
                    let s = x * x + y * y + z * z;
                    if s > 0 && s <= r2 {
                        acc += (s as f64).sqrt();
                    }
                }
                row.push(acc);
            }
            pairwise_sum(&row)
        })
        .collect();
    pairwise_sum(&slabs)
}

/// ρ = (1/L³) Σ ½ħω over the box modes with 0 < |n| ≤ n_max.
pub fn discrete_mode_sum(l: f64, n_max: u32, k: &ConstantsSet) -> Result<VacuumEstimate, VacuumError> {
    if n_max == 0 || n_max > MAX_MODE_BUDGET {
        return Err(VacuumError::ModeBudgetTooLarge(n_max));
    }
    let l_q = length(l)?;
    let norm_sum = lattice_norm_sum(n_max);
    // ½ħ(2πc/L)/L³ = πħc/L⁴
    let rho = k.hbar_c()?.div(&l_q.powi(4)?)?.scale(PI * norm_sum)?;
    VacuumEstimate::new(Scheme::DiscreteSum, rho, format!("n_max = {n_max}"), Some(l))
}

/// Continuum mode integral up to ω_c: ħω_c⁴/(16π²c³).
pub fn continuum_cutoff_density(omega_c: f64, k: &ConstantsSet) -> Result<VacuumEstimate, VacuumError> {
    let w = Quantity::new(positive("omega_c", omega_c)?, Dimension::FREQUENCY)?;
    let rho = k
        .hbar_q()
        .mul(&w.powi(4)?)?
        .div(&k.c_q().powi(3)?)?
        .scale(1.0 / (16.0 * PI * PI))?;
    VacuumEstimate::new(Scheme::PlanckCutoff, rho, format!("omega_c = {omega_c:e} s^-1"), None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlanckConvention {
    /// ω_c = 1/t_P
    #[default]
    Inverse,
    /// ω_c = 2π/t_P
    Angular,
}

impl PlanckConvention {
    pub fn cutoff(self, k: &ConstantsSet) -> Result<f64, UnitsError> {
        let tp = k.planck_time()?.value();
        Ok(match self {
            PlanckConvention::Inverse => 1.0 / tp,
            PlanckConvention::Angular => 2.0 * PI / tp,
        })
    }
}

pub fn planck_cutoff_density(
    convention: PlanckConvention,
    k: &ConstantsSet,
) -> Result<VacuumEstimate, VacuumError> {
    let mut est = continuum_cutoff_density(convention.cutoff(k)?, k)?;
    est.cutoff = match convention {
        PlanckConvention::Inverse => format!("omega_c = 1/t_P ({})", est.cutoff),
        PlanckConvention::Angular => format!("omega_c = 2pi/t_P ({})", est.cutoff),
    };
    Ok(est)
}

/// ρ = ħc·budget/L⁴: the Σn⁴ of the mode sum replaced by the information budget.
pub fn holographic_cutoff_density(
    l: f64,
    mode_budget_bits: f64,
    k: &ConstantsSet,
) -> Result<VacuumEstimate, VacuumError> {
    let l_q = length(l)?;
    let budget = positive("mode_budget_bits", mode_budget_bits)?;
    let rho = k.hbar_c()?.div(&l_q.powi(4)?)?.scale(budget)?;
    VacuumEstimate::new(
        Scheme::HolographicCutoff,
        rho,
        format!("mode budget = {budget:e} bits"),
        Some(l),
    )
}

/// Diagnostic: the literal quartic partial sum Σ_{n=1}^{n_max} n⁴ that the
/// budget substitution replaces. Grows like n_max⁵/5.
pub fn literal_quartic_sum(n_max: u64) -> f64 {
    let n = n_max as f64;
    // Faulhaber: n(n+1)(2n+1)(3n²+3n−1)/30
    n * (n + 1.0) * (2.0 * n + 1.0) * (3.0 * n * n + 3.0 * n - 1.0) / 30.0
}

/// Saturating density c⁴/(GL²) above which a region of size L would collapse.
pub fn collapse_bound_density(l: f64, k: &ConstantsSet) -> Result<VacuumEstimate, VacuumError> {
    let l_q = length(l)?;
    let rho = k.c_q().powi(4)?.div(&k.g_q().mul(&l_q.powi(2)?)?)?;
    VacuumEstimate::new(Scheme::CollapseBound, rho, format!("L = {l:e} m"), Some(l))
}

/// One quantum of wavelength R_H in a Hubble volume: (2πħc/R_H)/((4π/3)R_H³).
pub fn hubble_energy_density(hubble_radius: f64, k: &ConstantsSet) -> Result<f64, VacuumError> {
    let r = length(hubble_radius)?;
    let energy = k.hbar_c()?.div(&r)?.scale(2.0 * PI)?;
    let volume = r.powi(3)?.scale(4.0 * PI / 3.0)?;
    Ok(energy.div(&volume)?.value_in(Dimension::ENERGY_DENSITY)?)
}

/// sqrt(ρ_P·ρ_H).
pub fn geometric_mean_bound(rho_p: f64, rho_h: f64) -> Result<VacuumEstimate, VacuumError> {
    let p = Quantity::new(positive("rho_P", rho_p)?, Dimension::ENERGY_DENSITY)?;
    let h = Quantity::new(positive("rho_H", rho_h)?, Dimension::ENERGY_DENSITY)?;
    let rho = p.mul(&h)?.sqrt()?;
    VacuumEstimate::new(
        Scheme::GeometricMean,
        rho,
        format!("rho_P = {rho_p:e}, rho_H = {rho_h:e} J/m^3"),
        None,
    )
}

/// Geometric mean of the Planck density and the Hubble density at `hubble_radius`.
pub fn geometric_mean_at_hubble_radius(
    hubble_radius: f64,
    k: &ConstantsSet,
) -> Result<VacuumEstimate, VacuumError> {
    let rho_p = k.planck_energy_density()?.value();
    let rho_h = hubble_energy_density(hubble_radius, k)?;
    let mut est = geometric_mean_bound(rho_p, rho_h)?;
    est.box_scale_m = Some(hubble_radius);
    Ok(est)
}

/// Vacuum equation of state.
pub fn vacuum_pressure(rho: f64) -> f64 {
    -rho
}

/// Sampled ρ(t), a(t) and the defect of p·d(a³) + d(ρa³) = 0 divided by a³.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConservationSeries {
    pub times: Vec<f64>,
    pub rho: Vec<f64>,
    pub scale_factor: Vec<f64>,
    pub residual: Vec<f64>,
}

/// First derivative on a possibly non-uniform grid: three-point central
/// stencil inside, one-sided three-point stencils at the ends. Second order
/// throughout.
pub fn derivative_nonuniform(t: &[f64], f: &[f64]) -> Vec<f64> {
    let n = t.len();
    assert!(n >= 3 && f.len() == n);
    let mut out = Vec::with_capacity(n);
    {
        let (h1, h2) = (t[1] - t[0], t[2] - t[1]);
        let c0 = -(2.0 * h1 + h2) / (h1 * (h1 + h2));
        let c1 = (h1 + h2) / (h1 * h2);
        let c2 = -h1 / (h2 * (h1 + h2));
        out.push(c0 * f[0] + c1 * f[1] + c2 * f[2]);
    }
    for i in 1..n - 1 {
        let (h1, h2) = (t[i] - t[i - 1], t[i + 1] - t[i]);
        let cm = -h2 / (h1 * (h1 + h2));
        let c0 = (h2 - h1) / (h1 * h2);
        let cp = h1 / (h2 * (h1 + h2));
        out.push(cm * f[i - 1] + c0 * f[i] + cp * f[i + 1]);
    }
    {
        let (h1, h2) = (t[n - 2] - t[n - 3], t[n - 1] - t[n - 2]);
        let c0 = h2 / (h1 * (h1 + h2));
        let c1 = -(h1 + h2) / (h1 * h2);
        let c2 = (h1 + 2.0 * h2) / (h2 * (h1 + h2));
        out.push(c0 * f[n - 3] + c1 * f[n - 2] + c2 * f[n - 1]);
    }
    out
}

/// Residual [p·d(a³)/dt + d(ρa³)/dt]/a³ with p = −ρ; zero iff energy is conserved.
pub fn conservation_residual(
    times: &[f64],
    rho: &[f64],
    scale_factor: &[f64],
) -> Result<ConservationSeries, VacuumError> {
    let n = times.len();
    if rho.len() != n || scale_factor.len() != n {
        return Err(VacuumError::LengthMismatch(n, rho.len(), scale_factor.len()));
    }
    if n < 3 {
        return Err(VacuumError::InsufficientSamples(n));
    }
    if let Some(i) = times.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(VacuumError::NonMonotoneTimes(i + 1));
    }
    for (&r, &a) in rho.iter().zip(scale_factor) {
        positive("rho", r)?;
        positive("a", a)?;
    }

    let a3: Vec<f64> = scale_factor.iter().map(|a| a * a * a).collect();
    let rho_a3: Vec<f64> = rho.iter().zip(&a3).map(|(r, v)| r * v).collect();
    let d_a3 = derivative_nonuniform(times, &a3);
    let d_rho_a3 = derivative_nonuniform(times, &rho_a3);
    let residual = (0..n)
        .map(|i| (vacuum_pressure(rho[i]) * d_a3[i] + d_rho_a3[i]) / a3[i])
        .collect();
    Ok(ConservationSeries {
        times: times.to_vec(),
        rho: rho.to_vec(),
        scale_factor: scale_factor.to_vec(),
        residual,
    })
}

/// Evaluates `f` on each time.
pub fn sample<F: Fn(f64) -> f64>(times: &[f64], f: F) -> Vec<f64> {
    times.iter().map(|&t| f(t)).collect()
}

/// Holographic dark energy whose cutoff tracks the epoch: budget ∝ t²
/// (normalised to `ref_bits` at `ref_t`) and L = c·t. Gives ρ ∝ t⁻², so the
/// conservation residual is non-zero.
pub fn holographic_series(
    times: &[f64],
    scale_factor: &[f64],
    ref_bits: f64,
    ref_t: f64,
    k: &ConstantsSet,
) -> Result<ConservationSeries, VacuumError> {
    let mut rho = Vec::with_capacity(times.len());
    for &t in times {
        let budget = ref_bits * (t / ref_t).powi(2);
        rho.push(holographic_cutoff_density(k.c * t, budget, k)?.rho_j_m3);
    }
    conservation_residual(times, &rho, scale_factor)
}
