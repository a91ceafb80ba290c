use std::fmt::Display;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use infobound::bounds::{
    bh_entropy, holographic_bound, lloyd_bound, specifiability_limit, BlackHoleRecord, BoundMethod, InfoBound,
};
use infobound::cosmology::{
    cosmic_time, desitter_radius_from_density, event_horizon, horizon_area, horizons, hubble_rate, particle_horizon,
    scale_factor_at_time, HorizonDistance,
};
use infobound::predictability::{
    collision_predictability, collisions_to_order_unity, lyapunov_horizon, recurrence_cap, redshift_cutoff,
    GasParams, RecurrenceInterpretation,
};
use infobound::quantum::{
    check_specifiability, run_degradation_experiment, ExperimentConfig, ExperimentRow, InitSpec, NoiseKind,
    NoiseModel, SpecifiabilityCheck, TrialStat, COMPRESSOR_ID, DEFAULT_QUBIT_CAP, LIMITATION_NOTE,
    MAX_PRECISION_BITS, MIN_PRECISION_BITS,
};
use infobound::vacuum::{
    collapse_bound_density, conservation_residual, continuum_cutoff_density, discrete_mode_sum,
    geometric_mean_at_hubble_radius, holographic_cutoff_density, holographic_series, planck_cutoff_density, sample,
    ConservationSeries, PlanckConvention, VacuumEstimate, MAX_MODE_BUDGET,
};
use serde::Serialize;

use crate::config::Format;
use crate::{CliError, Context};

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        Ok(_) => Err("must be positive and finite".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn non_negative(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        Ok(_) => Err("must be non-negative and finite".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn probability(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if (0.0..=1.0).contains(&v) => Ok(v),
        Ok(_) => Err("must be in [0, 1]".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// `1.234568e26  (log10 26.0915)`, or the bare value when it has no log.
fn mag(v: f64) -> String {
    if v.is_finite() && v > 0.0 {
        format!("{v:.6e}  (log10 {:.4})", v.log10())
    } else {
        format!("{v:e}")
    }
}

#[derive(Default)]
struct Block(Vec<(String, String)>);

impl Block {
    fn put(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        self.0.push((key.into(), value.to_string()));
        self
    }

    fn mag(&mut self, key: impl Into<String>, value: f64) -> &mut Self {
        self.put(key, mag(value))
    }

    fn render(&self) -> String {
        let w = self.0.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        self.0.iter().map(|(k, v)| format!("{k:<w$}  {v}\n")).collect()
    }
}

fn json<T: Serialize>(v: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn csv_bytes<R: Serialize>(rows: impl IntoIterator<Item = R>) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Numeric(e.to_string()))?;
    }
    w.into_inner().map_err(|e| CliError::Numeric(e.to_string()))
}

fn horizon_text(d: HorizonDistance) -> String {
    match d {
        HorizonDistance::Finite(v) => mag(v),
        HorizonDistance::Infinite => "infinite".into(),
    }
}

// ---------------------------------------------------------------- cosmo

#[derive(Debug, Args)]
pub struct CosmoArgs {
    /// Scale factor (1 today).
    #[arg(long, default_value = "1", value_parser = positive)]
    pub a: f64,
}

pub fn cosmo(ctx: &Context, args: &CosmoArgs) -> Result<String, CliError> {
    let p = ctx.config.cosmology()?;
    let set = horizons(args.a, &p, &ctx.config.constants)?;
    match ctx.format {
        Format::Json => json(&set),
        Format::Text => Ok(Block::default()
            .put("a", set.epoch_a)
            .put("particle_horizon_m", horizon_text(set.particle_horizon))
            .put("event_horizon_m", horizon_text(set.event_horizon))
            .mag("hubble_radius_m", set.hubble_radius)
            .render()),
    }
}

// ---------------------------------------------------------------- bound

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    /// Event horizon; the de Sitter horizon of the configured dark-energy
    /// density unless an epoch or area is given.
    Event,
    /// Particle horizon today, or at --epoch-seconds.
    Particle,
    /// t² scaling from a reference bound; needs --epoch-seconds.
    Lloyd,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, value_enum, default_value = "event")]
    pub method: BoundKind,
    /// Cosmic time in seconds.
    #[arg(long, value_parser = positive)]
    pub epoch_seconds: Option<f64>,
    /// Use this horizon area directly.
    #[arg(long, value_parser = positive, conflicts_with = "epoch_seconds")]
    pub area_m2: Option<f64>,
    /// Black-hole bound for this mass instead of a horizon.
    #[arg(long, value_parser = positive, conflicts_with_all = ["epoch_seconds", "area_m2"])]
    pub mass_kg: Option<f64>,
    /// Reference bit count for t² scaling.
    #[arg(long, default_value = "1e122", value_parser = positive)]
    pub ref_bits: f64,
    /// Reference time for t² scaling; defaults to the present age.
    #[arg(long, value_parser = positive)]
    pub ref_seconds: Option<f64>,
}

#[derive(Debug, Serialize)]
struct BoundOutput {
    #[serde(flatten)]
    bound: InfoBound,
    #[serde(skip_serializing_if = "Option::is_none")]
    radius_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    area_m2: Option<f64>,
    specifiability_limit: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    black_hole: Option<BlackHoleRecord>,
}

pub fn bound(ctx: &Context, args: &BoundArgs) -> Result<String, CliError> {
    let k = &ctx.config.constants;
    let mut out = BoundOutput {
        bound: InfoBound::from_bits(0.0, BoundMethod::HolographicEvent, None),
        radius_m: None,
        area_m2: None,
        specifiability_limit: None,
        black_hole: None,
    };
    if let Some(m) = args.mass_kg {
        let bh = bh_entropy(m, k)?;
        out.bound = InfoBound::from_bits(bh.bits, BoundMethod::BlackHole, None);
        out.radius_m = Some(bh.schwarzschild_radius_m);
        out.area_m2 = Some(bh.area_m2);
        out.black_hole = Some(bh);
    } else if args.method == BoundKind::Lloyd {
        let t = args
            .epoch_seconds
            .ok_or_else(|| CliError::Usage("--method lloyd needs --epoch-seconds".into()))?;
        let ref_t = match args.ref_seconds {
            Some(t) => t,
            None => cosmic_time(1.0, &ctx.config.cosmology()?)?,
        };
        out.bound = lloyd_bound(t, args.ref_bits, ref_t)?;
    } else {
        let method = match args.method {
            BoundKind::Particle => BoundMethod::HolographicParticle,
            _ => BoundMethod::HolographicEvent,
        };
        let area = match (args.area_m2, args.epoch_seconds) {
            (Some(area), _) => area,
            (None, epoch) => {
                let p = ctx.config.cosmology()?;
                let a = match epoch {
                    Some(t) => scale_factor_at_time(t, &p)?,
                    None => 1.0,
                };
                let r = match (method, epoch) {
                    (BoundMethod::HolographicParticle, _) => particle_horizon(a, &p, k)?,
                    (_, None) => desitter_radius_from_density(ctx.config.dark_energy_density, k)?.value(),
                    (_, Some(_)) => event_horizon(a, &p, k)?
                        .finite()
                        .ok_or_else(|| CliError::Numeric("event horizon is infinite".into()))?,
                };
                out.radius_m = Some(r);
                horizon_area(r)?.value()
            }
        };
        out.area_m2 = Some(area);
        out.bound = holographic_bound(area, method, k)?;
        out.bound.epoch_t = args.epoch_seconds;
    }
    out.specifiability_limit = specifiability_limit(&out.bound).ok();

    match ctx.format {
        Format::Json => json(&out),
        Format::Text => {
            let mut b = Block::default();
            b.mag("bits", out.bound.bits)
                .put("log10_bits", out.bound.log10_bits)
                .put("method", out.bound.method.as_str())
                .put("epoch_t", out.bound.epoch_t.map_or("-".into(), mag));
            if let Some(r) = out.radius_m {
                b.mag("radius_m", r);
            }
            if let Some(a) = out.area_m2 {
                b.mag("area_m2", a);
            }
            if let Some(bh) = &out.black_hole {
                b.mag("entropy_over_k", bh.entropy_over_k);
            }
            b.put("specifiability_limit", out.specifiability_limit.map_or("-".into(), |n| n.to_string()));
            Ok(b.render())
        }
    }
}

// ---------------------------------------------------------------- vacuum

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Cutoff {
    /// omega_c = 1/t_P
    Inverse,
    /// omega_c = 2 pi/t_P
    Angular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesModel {
    /// Holographic density with budget growing as t² and L = c t.
    Holographic,
    /// rho proportional to t^-2 with a proportional to t^(2/3).
    Analytic,
}

#[derive(Debug, Args)]
pub struct VacuumArgs {
    /// Box or horizon scale; defaults to the Hubble radius c/H0.
    #[arg(long, value_parser = positive)]
    pub length_m: Option<f64>,
    /// Largest mode index for the discrete sum.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..=MAX_MODE_BUDGET as i64))]
    pub n_max: u32,
    #[arg(long, value_enum, default_value = "inverse")]
    pub cutoff: Cutoff,
    /// Mode budget for the holographic cutoff.
    #[arg(long, default_value = "1e122", value_parser = positive)]
    pub budget_bits: f64,
    /// Emit a conservation-residual series as CSV instead of the table.
    #[arg(long)]
    pub series: bool,
    #[arg(long, value_enum, default_value = "holographic", requires = "series")]
    pub model: SeriesModel,
    /// First sample time, seconds.
    #[arg(long, default_value = "1e16", value_parser = positive, requires = "series")]
    pub t_start: f64,
    /// Last sample time; defaults to the present age.
    #[arg(long, value_parser = positive, requires = "series")]
    pub t_end: Option<f64>,
    #[arg(long, default_value_t = 65, value_parser = clap::value_parser!(u32).range(3..=100_000), requires = "series")]
    pub samples: u32,
    /// CSV destination; stdout when absent.
    #[arg(long, requires = "series")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct VacuumRow {
    label: String,
    #[serde(flatten)]
    estimate: VacuumEstimate,
    log10_rho: f64,
}

#[derive(Debug, Serialize)]
struct VacuumTable {
    length_m: f64,
    n_max: u32,
    discrete_continuum_gap: f64,
    schemes: Vec<VacuumRow>,
}

#[derive(Debug, Serialize)]
struct SeriesRow {
    t_s: f64,
    a: f64,
    #[serde(rename = "rho_J_m3")]
    rho_j_m3: f64,
    residual: f64,
}

pub fn vacuum(ctx: &Context, args: &VacuumArgs) -> Result<String, CliError> {
    let k = &ctx.config.constants;
    let p = ctx.config.cosmology()?;
    if args.series {
        return vacuum_series(ctx, args);
    }
    let l = match args.length_m {
        Some(l) => l,
        None => k.c / hubble_rate(1.0, &p)?,
    };
    let conv = match args.cutoff {
        Cutoff::Inverse => PlanckConvention::Inverse,
        Cutoff::Angular => PlanckConvention::Angular,
    };
    let discrete = discrete_mode_sum(l, args.n_max, k)?;
    let continuum = continuum_cutoff_density(2.0 * std::f64::consts::PI * k.c * args.n_max as f64 / l, k)?;
    let gap = discrete.rho_j_m3 / continuum.rho_j_m3 - 1.0;
    let mut schemes = Vec::new();
    for (label, estimate) in [
        ("discrete mode sum", discrete),
        ("continuum at matching cutoff", continuum),
        ("Planck cutoff", planck_cutoff_density(conv, k)?),
        ("holographic cutoff", holographic_cutoff_density(l, args.budget_bits, k)?),
        ("collapse bound", collapse_bound_density(l, k)?),
        ("geometric mean", geometric_mean_at_hubble_radius(l, k)?),
    ] {
        schemes.push(VacuumRow { label: label.into(), log10_rho: estimate.rho_j_m3.log10(), estimate });
    }
    let table = VacuumTable { length_m: l, n_max: args.n_max, discrete_continuum_gap: gap, schemes };
    match ctx.format {
        Format::Json => json(&table),
        Format::Text => {
            let mut out = Block::default()
                .mag("length_m", l)
                .put("n_max", args.n_max)
                .put("discrete_continuum_gap", format!("{gap:.6e}"))
                .render();
            out.push('\n');
            let w = table.schemes.iter().map(|r| r.label.len()).max().unwrap_or(0);
            for r in &table.schemes {
                out.push_str(&format!(
                    "{:<w$}  {:<18}  rho {}  p = -rho  [{}]\n",
                    r.label,
                    r.estimate.scheme.as_str(),
                    mag(r.estimate.rho_j_m3),
                    r.estimate.cutoff
                ));
            }
            Ok(out)
        }
    }
}

fn vacuum_series(ctx: &Context, args: &VacuumArgs) -> Result<String, CliError> {
    let k = &ctx.config.constants;
    let p = ctx.config.cosmology()?;
    let age = cosmic_time(1.0, &p)?;
    let t_end = args.t_end.unwrap_or(age);
    if !(t_end > args.t_start) {
        return Err(CliError::Usage(format!("--t-end {t_end:e} must exceed --t-start {:e}", args.t_start)));
    }
    let n = args.samples as usize;
    let ratio = (t_end / args.t_start).ln();
    let times: Vec<f64> = (0..n)
        .map(|i| args.t_start * (ratio * i as f64 / (n - 1) as f64).exp())
        .collect();
    let series: ConservationSeries = match args.model {
        SeriesModel::Holographic => {
            let a = times.iter().map(|&t| scale_factor_at_time(t, &p)).collect::<Result<Vec<_>, _>>()?;
            holographic_series(&times, &a, args.budget_bits, age, k)?
        }
        SeriesModel::Analytic => {
            let kappa = ctx.config.dark_energy_density * t_end * t_end;
            let rho = sample(&times, |t| kappa / (t * t));
            let a = sample(&times, |t| (t / t_end).powf(2.0 / 3.0));
            conservation_residual(&times, &rho, &a)?
        }
    };
    let rows = (0..n).map(|i| SeriesRow {
        t_s: series.times[i],
        a: series.scale_factor[i],
        rho_j_m3: series.rho[i],
        residual: series.residual[i],
    });
    let bytes = csv_bytes(rows)?;
    match &args.out {
        Some(path) => {
            write_file(path, &bytes)?;
            Ok(match ctx.format {
                Format::Json => json(&serde_json::json!({ "rows": n, "path": path.display().to_string() }))?,
                Format::Text => format!("wrote {n} rows to {}\n", path.display()),
            })
        }
        None => String::from_utf8(bytes).map_err(|e| CliError::Numeric(e.to_string())),
    }
}

// ---------------------------------------------------------------- qubit

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    PhaseJitter,
    SmallRotation,
    DepolarizingApprox,
}

#[derive(Debug, Args)]
pub struct QubitArgs {
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Initial state: basis:K, uniform, random (uses --seed), random:SEED, pi-digit.
    #[arg(long, default_value = "pi-digit")]
    pub spec: String,
    #[arg(long, default_value_t = 50)]
    pub depth: usize,
    /// Per-qubit error probability per step.
    #[arg(long, default_value = "0.1", value_parser = probability)]
    pub rate: f64,
    /// Error angle scale, radians.
    #[arg(long, default_value = "0.05", value_parser = positive)]
    pub sigma: f64,
    #[arg(long, value_enum, default_value = "small-rotation")]
    pub kind: Kind,
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(1..))]
    pub trials: u32,
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u32).range(MIN_PRECISION_BITS as i64..=MAX_PRECISION_BITS as i64))]
    pub precision_bits: u32,
    /// CSV destination for the per-step statistics.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct QubitSummary {
    experiment: ExperimentConfig,
    compressor_id: &'static str,
    raw_bits: u64,
    control_initial_bits: f64,
    control_final_bits: f64,
    noisy_final_mean_bits: f64,
    noisy_final_min_bits: f64,
    noisy_final_max_bits: f64,
    max_control_norm_error: f64,
    cosmic_check: SpecifiabilityCheck,
    limitation: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    rows: Option<Vec<ExperimentRow>>,
}

#[derive(Debug, Serialize)]
struct CsvRow<'a> {
    step: usize,
    trial_stat: &'a str,
    raw_bits: u64,
    compressed_bits: f64,
    norm_error: f64,
}

pub fn qubit(ctx: &Context, args: &QubitArgs) -> Result<String, CliError> {
    let cap = ctx.config.qubit_cap;
    if args.n == 0 || args.n > cap {
        return Err(CliError::Usage(format!("--n {} outside 1..={cap} (raise qubit_cap in the config)", args.n)));
    }
    if args.n > DEFAULT_QUBIT_CAP {
        eprintln!(
            "warning: {} qubits need {} MiB per register",
            args.n,
            (16usize << args.n) >> 20
        );
    }
    let init = if args.spec == "random" {
        InitSpec::SeededRandom(ctx.seed)
    } else {
        args.spec.parse::<InitSpec>().map_err(|e| CliError::Usage(e.to_string()))?
    };
    let kind = match args.kind {
        Kind::PhaseJitter => NoiseKind::PhaseJitter,
        Kind::SmallRotation => NoiseKind::SmallRotation,
        Kind::DepolarizingApprox => NoiseKind::DepolarizingApprox,
    };
    let noise = NoiseModel { kind, rate: args.rate, sigma: args.sigma, seed: ctx.seed };
    let mut cfg = ExperimentConfig::new(args.n, args.depth, init, noise, args.trials as usize, args.precision_bits);
    cfg.cap = cap;
    let rows = run_degradation_experiment(&cfg)?;

    if let Some(path) = &args.out {
        let bytes = csv_bytes(rows.iter().map(|r| CsvRow {
            step: r.step,
            trial_stat: r.stat.as_str(),
            raw_bits: r.raw_bits,
            compressed_bits: r.compressed_bits,
            norm_error: r.norm_error,
        }))?;
        write_file(path, &bytes)?;
    }

    let at = |step: usize, stat: TrialStat| {
        rows.iter()
            .find(|r| r.step == step && r.stat == stat)
            .expect("every step has every statistic")
    };
    let last = args.depth;
    let final_mean = at(last, TrialStat::Mean);
    let k = &ctx.config.constants;
    let r_ds = desitter_radius_from_density(ctx.config.dark_energy_density, k)?.value();
    let area = horizon_area(r_ds)?.value();
    let worst = infobound::quantum::ComplexityEstimate {
        raw_bits: final_mean.raw_bits,
        compressed_bits: at(last, TrialStat::Max).compressed_bits as u64,
        precision_bits: args.precision_bits,
        compressor_id: COMPRESSOR_ID.into(),
    };
    let summary = QubitSummary {
        experiment: cfg,
        compressor_id: COMPRESSOR_ID,
        raw_bits: final_mean.raw_bits,
        control_initial_bits: at(0, TrialStat::Control).compressed_bits,
        control_final_bits: at(last, TrialStat::Control).compressed_bits,
        noisy_final_mean_bits: final_mean.compressed_bits,
        noisy_final_min_bits: at(last, TrialStat::Min).compressed_bits,
        noisy_final_max_bits: at(last, TrialStat::Max).compressed_bits,
        max_control_norm_error: rows
            .iter()
            .filter(|r| r.stat == TrialStat::Control)
            .map(|r| r.norm_error)
            .fold(0.0, f64::max),
        cosmic_check: check_specifiability(&worst, area, k)?,
        limitation: LIMITATION_NOTE,
        rows: None,
    };
    match ctx.format {
        Format::Json => json(&QubitSummary { rows: args.out.is_none().then_some(rows), ..summary }),
        Format::Text => {
            let mut b = Block::default();
            b.put("qubits", args.n)
                .put("initial state", init)
                .put("depth", args.depth)
                .put("trials", args.trials)
                .put("noise", format!("{} rate {} sigma {} seed {}", kind.as_str(), args.rate, args.sigma, ctx.seed))
                .put("precision_bits", args.precision_bits)
                .put("compressor", COMPRESSOR_ID)
                .put("raw_bits", summary.raw_bits)
                .put("control compressed_bits, step 0", summary.control_initial_bits)
                .put(format!("control compressed_bits, step {last}"), summary.control_final_bits)
                .put(
                    format!("noisy compressed_bits, step {last}"),
                    format!(
                        "mean {:.2}  min {}  max {}",
                        summary.noisy_final_mean_bits, summary.noisy_final_min_bits, summary.noisy_final_max_bits
                    ),
                )
                .put("max control norm error", format!("{:e}", summary.max_control_norm_error))
                .put(
                    "vs cosmic horizon (A/L_P^2)",
                    format!(
                        "{}, margin {:.2} dex",
                        if summary.cosmic_check.exceeds() { "exceeds bound" } else { "within bound" },
                        summary.cosmic_check.log10_margin
                    ),
                );
            if let Some(path) = &args.out {
                b.put("csv", path.display());
            }
            Ok(b.render() + "note: " + LIMITATION_NOTE + "\n")
        }
    }
}

// ---------------------------------------------------------------- predict

#[derive(Debug, Subcommand)]
pub enum PredictCommand {
    /// Collisions until a gas molecule's direction is fully uncertain.
    Collisions(CollisionArgs),
    /// Longest recurrence time the information bound can resolve.
    Recurrence(RecurrenceArgs),
    /// Time for chaotic error growth to exhaust a bit budget.
    Lyapunov(LyapunovArgs),
    /// Time at which exponential redshift reaches the bound.
    Redshift(RedshiftArgs),
}

#[derive(Debug, Args)]
pub struct CollisionArgs {
    #[arg(long, default_value = "1e-7", value_parser = positive)]
    pub mean_free_path_m: f64,
    #[arg(long, default_value = "1.5e-10", value_parser = positive)]
    pub molecule_radius_m: f64,
    #[arg(long, default_value = "500", value_parser = positive)]
    pub mean_speed_m_s: f64,
    #[arg(long, default_value = "9.1e-31", value_parser = positive)]
    pub perturber_mass_kg: f64,
    #[arg(long, default_value = "4.4e26", value_parser = positive)]
    pub perturber_distance_m: f64,
    /// Skip the gas model and use this initial angle directly.
    #[arg(long, value_parser = positive, requires = "amplification")]
    pub initial_angle_rad: Option<f64>,
    /// Angle amplification per collision, with --initial-angle-rad.
    #[arg(long, value_parser = positive, requires = "initial_angle_rad")]
    pub amplification: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Interpretation {
    MaxRepresentableTime,
    MaxExponentArgument,
    Both,
}

#[derive(Debug, Args)]
pub struct RecurrenceArgs {
    #[arg(long, default_value = "1e122", value_parser = positive)]
    pub bits: f64,
    #[arg(long, value_enum, default_value = "both")]
    pub interpretation: Interpretation,
    /// N in a recurrence time exp(10^N) t_P.
    #[arg(long)]
    pub exponent_n: Option<f64>,
}

#[derive(Debug, Args)]
pub struct LyapunovArgs {
    /// Lyapunov exponent, 1/s.
    #[arg(long, default_value = "1", value_parser = positive)]
    pub lambda: f64,
    #[arg(long, default_value = "0", value_parser = non_negative)]
    pub initial_bits: f64,
    #[arg(long, default_value = "1e122", value_parser = positive)]
    pub budget_bits: f64,
}

#[derive(Debug, Args)]
pub struct RedshiftArgs {
    #[arg(long, default_value = "1e-6", value_parser = positive)]
    pub efold_seconds: f64,
    #[arg(long, default_value = "1e122", value_parser = positive)]
    pub bits: f64,
}

/// Figure the recurrence caps are compared against.
const RECURRENCE_TARGET_YEARS: f64 = 1e60;

pub fn predict(ctx: &Context, cmd: &PredictCommand) -> Result<String, CliError> {
    let k = &ctx.config.constants;
    match cmd {
        PredictCommand::Collisions(a) => {
            let (angle, f, n, params) = match (a.initial_angle_rad, a.amplification) {
                (Some(angle), Some(f)) => (angle, f, collisions_to_order_unity(angle, f)?, None),
                _ => {
                    let g = GasParams {
                        mean_free_path_m: a.mean_free_path_m,
                        molecule_radius_m: a.molecule_radius_m,
                        mean_speed_m_s: a.mean_speed_m_s,
                        perturber_mass_kg: a.perturber_mass_kg,
                        perturber_distance_m: a.perturber_distance_m,
                    };
                    let e = collision_predictability(&g, k)?;
                    (e.initial_angle_uncertainty_rad, e.amplification_per_collision, e.collisions_to_order_unity, Some(g))
                }
            };
            #[derive(Serialize)]
            struct Out {
                initial_angle_uncertainty_rad: f64,
                amplification_per_collision: f64,
                collisions_to_order_unity: u32,
                params: Option<GasParams>,
                order_target: u32,
            }
            let out = Out {
                initial_angle_uncertainty_rad: angle,
                amplification_per_collision: f,
                collisions_to_order_unity: n,
                params,
                order_target: 12,
            };
            match ctx.format {
                Format::Json => json(&out),
                Format::Text => {
                    let mut b = Block::default();
                    if let Some(g) = params {
                        b.put("mean_free_path_m", format!("{:e}", g.mean_free_path_m))
                            .put("molecule_radius_m", format!("{:e}", g.molecule_radius_m))
                            .put("mean_speed_m_s", g.mean_speed_m_s)
                            .put("perturber_mass_kg", format!("{:e}", g.perturber_mass_kg))
                            .put("perturber_distance_m", format!("{:e}", g.perturber_distance_m));
                    }
                    b.mag("initial_angle_uncertainty_rad", angle)
                        .mag("amplification_per_collision", f)
                        .put("collisions_to_order_unity", n)
                        .put("order target", "12");
                    Ok(b.render())
                }
            }
        }
        PredictCommand::Recurrence(a) => {
            let bound = InfoBound::from_bits(a.bits, BoundMethod::HolographicEvent, None);
            let interps: &[RecurrenceInterpretation] = match a.interpretation {
                Interpretation::MaxRepresentableTime => &[RecurrenceInterpretation::MaxRepresentableTime],
                Interpretation::MaxExponentArgument => &[RecurrenceInterpretation::MaxExponentArgument],
                Interpretation::Both => &[
                    RecurrenceInterpretation::MaxRepresentableTime,
                    RecurrenceInterpretation::MaxExponentArgument,
                ],
            };
            let caps = interps
                .iter()
                .map(|&i| recurrence_cap(&bound, i, a.exponent_n, k))
                .collect::<Result<Vec<_>, _>>()?;
            #[derive(Serialize)]
            struct Out<T> {
                bits: f64,
                caps: Vec<T>,
                reference_years: f64,
                reference_reproduced: bool,
            }
            let reproduced = caps.iter().any(|c| (c.log10_cap_years - RECURRENCE_TARGET_YEARS.log10()).abs() <= 1.0);
            match ctx.format {
                Format::Json => json(&Out {
                    bits: a.bits,
                    caps,
                    reference_years: RECURRENCE_TARGET_YEARS,
                    reference_reproduced: reproduced,
                }),
                Format::Text => {
                    let mut b = Block::default();
                    b.mag("bits", a.bits);
                    for c in &caps {
                        b.mag(format!("{} cap_seconds", c.interpretation.as_str()), c.cap_seconds)
                            .mag(format!("{} cap_years", c.interpretation.as_str()), c.cap_years);
                    }
                    b.put(
                        "reference 1e60 years",
                        if reproduced { "reproduced" } else { "not reproduced (flagged)" },
                    );
                    Ok(b.render())
                }
            }
        }
        PredictCommand::Lyapunov(a) => {
            let t = lyapunov_horizon(a.lambda, a.initial_bits, a.budget_bits)?;
            match ctx.format {
                Format::Json => json(&serde_json::json!({
                    "lambda_per_s": a.lambda,
                    "initial_bits": a.initial_bits,
                    "budget_bits": a.budget_bits,
                    "horizon_s": t,
                })),
                Format::Text => Ok(Block::default()
                    .put("lambda_per_s", a.lambda)
                    .put("initial_bits", a.initial_bits)
                    .mag("budget_bits", a.budget_bits)
                    .mag("horizon_s", t)
                    .render()),
            }
        }
        PredictCommand::Redshift(a) => {
            let bound = InfoBound::from_bits(a.bits, BoundMethod::HolographicEvent, None);
            let t = redshift_cutoff(a.efold_seconds, &bound)?;
            match ctx.format {
                Format::Json => json(&serde_json::json!({
                    "efold_s": a.efold_seconds,
                    "bits": a.bits,
                    "cutoff_s": t,
                })),
                Format::Text => Ok(Block::default()
                    .mag("efold_s", a.efold_seconds)
                    .mag("bits", a.bits)
                    .mag("cutoff_s", t)
                    .put("efolds", bound.ln_bits())
                    .render()),
            }
        }
    }
}
