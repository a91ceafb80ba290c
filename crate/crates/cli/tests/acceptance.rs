//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use infobound::bounds::{
    inflation_expansion_limit, specifiability_limit, BoundMethod, InfoBound, InflationVerdict,
    GUTH_REQUIRED_EXPANSION,
};
use infobound::cosmology::{event_horizon, particle_horizon, CosmologyParams};
use infobound::predictability::{
    collision_predictability, collisions_to_order_unity, redshift_cutoff, GasParams,
};
use infobound::quantum::{
    complexity_upper_bound, run_degradation_experiment, ExperimentConfig, InitSpec, NoiseKind,
    NoiseModel, QubitRegister, TrialStat,
};
use infobound::units::ConstantsSet;
use infobound::vacuum::{conservation_residual, continuum_cutoff_density, discrete_mode_sum};
use serde_json::Value;

type Check = Result<String, String>;

const BIN: &str = env!("CARGO_BIN_EXE_infobound");

fn tmp_dir() -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn config_file(body: &str) -> PathBuf {
    let path = tmp_dir().join("run.conf");
    std::fs::write(&path, body).unwrap();
    path
}

/// Runs the binary; returns stdout and exit code.
fn cli(args: &[&str]) -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(BIN)
        .args(args)
        .output()
        .map_err(|e| format!("spawn: {e}"))?;
    Ok((out.stdout, out.status.code().unwrap_or(-1)))
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let (stdout, code) = cli(args)?;
    if code != 0 {
        return Err(format!("`{}` exited {code}", args.join(" ")));
    }
    serde_json::from_slice(&stdout).map_err(|e| format!("json: {e}"))
}

fn field(v: &Value, key: &str) -> Result<f64, String> {
    v[key].as_f64().ok_or_else(|| format!("missing numeric field {key}"))
}

fn within_dex(name: &str, value: f64, center: f64, dex: f64) -> Result<(), String> {
    let l = value.log10();
    if (l - center).abs() <= dex {
        Ok(())
    } else {
        Err(format!("{name}: log10 = {l:.3}, want {center} ± {dex}"))
    }
}

fn rel_err(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

fn scheme_density(v: &Value, label: &str) -> Result<f64, String> {
    v["schemes"]
        .as_array()
        .and_then(|rows| rows.iter().find(|r| r["label"] == label))
        .and_then(|r| r["rho_j_m3"].as_f64())
        .ok_or_else(|| format!("no scheme row '{label}'"))
}

fn holographic_bound() -> Check {
    let conf = config_file("dark_energy_density = 6e-10\n");
    let v = cli_json(&["--config", conf.to_str().unwrap(), "--format", "json", "bound"])?;
    let log10 = field(&v, "log10_bits")?;
    within_dex("bits", field(&v, "bits")?, 122.0, 1.0)?;
    Ok(format!("log10 bits = {log10:.3}"))
}

fn planck_cutoff() -> Check {
    let mut parts = Vec::new();
    for conv in ["inverse", "angular"] {
        let v = cli_json(&["--format", "json", "vacuum", "--cutoff", conv])?;
        let rho = scheme_density(&v, "Planck cutoff")?;
        within_dex(conv, rho, 113.0, 2.0)?;
        parts.push(format!("{conv} {rho:.3e} J/m^3"));
    }
    Ok(parts.join(", "))
}

fn hubble_scale_densities() -> Check {
    let v = cli_json(&["--format", "json", "vacuum"])?;
    let mut logs = Vec::new();
    for label in ["holographic cutoff", "collapse bound", "geometric mean"] {
        let rho = scheme_density(&v, label)?;
        within_dex(label, rho, -9.0, 1.5)?;
        logs.push(rho.log10());
    }
    let max = logs.iter().cloned().fold(f64::MIN, f64::max);
    let min = logs.iter().cloned().fold(f64::MAX, f64::min);
    if max - min > 3.0 {
        return Err(format!("spread {:.3} dex exceeds 3", max - min));
    }
    Ok(format!(
        "log10 rho = {:.3}, {:.3}, {:.3}; spread {:.3} dex",
        logs[0],
        logs[1],
        logs[2],
        max - min
    ))
}

fn specifiability() -> Check {
    let bound = InfoBound::from_bits(1e122, BoundMethod::HolographicEvent, None);
    let n = specifiability_limit(&bound).map_err(|e| e.to_string())?;
    if n != 405 {
        return Err(format!("n = {n}, want 405"));
    }
    let off = (n as f64 / 400.0).log10().abs();
    if off > 0.05 {
        return Err(format!("n = {n} is {off:.3} dex from 400"));
    }
    Ok(format!("n = {n}"))
}

fn inflation_cap() -> Check {
    let k = ConstantsSet::default();
    let cap = inflation_expansion_limit(3e-26, GUTH_REQUIRED_EXPANSION, &k).map_err(|e| e.to_string())?;
    within_dex("cap", cap.max_expansion, 19.0, 1.0)?;
    if !(cap.max_expansion < GUTH_REQUIRED_EXPANSION)
        || cap.verdict != InflationVerdict::MarginalBelowRequirement
    {
        return Err(format!("verdict {:?} for cap {:e}", cap.verdict, cap.max_expansion));
    }
    Ok(format!("cap = {:.3e}, {}", cap.max_expansion, cap.verdict.describe()))
}

fn frw_closed_forms() -> Check {
    let k = ConstantsSet::default();
    let h0 = CosmologyParams::benchmark().h0();
    let hubble = k.c / h0;
    let err = |e: infobound::cosmology::CosmologyError| e.to_string();

    let matter = particle_horizon(1.0, &CosmologyParams::matter_only(h0).map_err(err)?, &k).map_err(err)?;
    let radiation =
        particle_horizon(1.0, &CosmologyParams::radiation_only(h0).map_err(err)?, &k).map_err(err)?;
    let de_sitter = event_horizon(1.0, &CosmologyParams::de_sitter(h0).map_err(err)?, &k)
        .map_err(err)?
        .finite()
        .ok_or("de Sitter event horizon is infinite")?;

    let errs = [
        ("matter", rel_err(matter, 2.0 * hubble)),
        ("radiation", rel_err(radiation, hubble)),
        ("de Sitter", rel_err(de_sitter, hubble)),
    ];
    for (name, e) in errs {
        if e > 1e-6 {
            return Err(format!("{name}: relative error {e:.2e}"));
        }
    }
    Ok(format!(
        "relative errors {:.1e}, {:.1e}, {:.1e}",
        errs[0].1, errs[1].1, errs[2].1
    ))
}

fn mode_sum_convergence() -> Check {
    let k = ConstantsSet::default();
    let l = 1.0;
    let n_max = 50;
    let discrete = discrete_mode_sum(l, n_max, &k).map_err(|e| e.to_string())?.rho_j_m3;
    // modes with |n| ≤ n_max reach ω = 2πc·n_max/L
    let omega = 2.0 * std::f64::consts::PI * k.c * n_max as f64 / l;
    let continuum = continuum_cutoff_density(omega, &k).map_err(|e| e.to_string())?.rho_j_m3;
    let gap = discrete / continuum - 1.0;
    if gap.abs() > 0.05 {
        return Err(format!("relative gap {gap:.4}"));
    }
    Ok(format!("relative gap {gap:.2e}"))
}

/// Max |residual − dρ/dt| for ρ = κ/t² and a = t^q on n stretched samples in [1, 2],
/// with the largest exact residual.
fn residual_error(n: usize, q: f64) -> Result<(f64, f64), String> {
    let kappa = 3.0;
    let times: Vec<f64> = (0..n)
        .map(|i| {
            let s = i as f64 / (n - 1) as f64;
            1.0 + s * s
        })
        .collect();
    let rho: Vec<f64> = times.iter().map(|t| kappa / (t * t)).collect();
    let a: Vec<f64> = times.iter().map(|t| t.powf(q)).collect();
    let series = conservation_residual(&times, &rho, &a).map_err(|e| e.to_string())?;
    let mut err: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for (t, r) in times.iter().zip(&series.residual) {
        let exact = -2.0 * kappa / (t * t * t);
        err = err.max((r - exact).abs());
        scale = scale.max(exact.abs());
    }
    Ok((err, scale))
}

fn conservation_order() -> Check {
    let grids = [41, 81, 161, 321];

    // a = t^(2/3): ρa³ is constant and a³ = t², which the three-point stencils
    // differentiate exactly, so the error must stay inside a Δt² envelope
    // down to round-off.
    let matter: Vec<(f64, f64)> = grids.iter().map(|&n| residual_error(n, 2.0 / 3.0)).collect::<Result<_, _>>()?;
    let floor = 1e-9 * matter[0].1;
    for (k, &(err, _)) in matter.iter().enumerate() {
        let envelope = (matter[0].0 / 4f64.powi(k as i32)).max(floor);
        if err > 1.25 * envelope {
            return Err(format!("a = t^(2/3): error {err:e} on grid {} above Δt² envelope {envelope:e}", grids[k]));
        }
    }

    // a = t^(1/2): same exact residual, stencils not exact, order is observable
    let generic: Vec<f64> = grids
        .iter()
        .map(|&n| residual_error(n, 0.5).map(|e| e.0))
        .collect::<Result<_, _>>()?;
    let orders: Vec<f64> = generic.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    if let Some(p) = orders.iter().find(|p| !(1.8..=2.3).contains(*p)) {
        return Err(format!("a = t^(1/2): observed order {p:.3} (errors {generic:?})"));
    }
    Ok(format!(
        "a = t^(2/3) max error {:.1e}; a = t^(1/2) observed orders {}",
        matter.iter().map(|e| e.0).fold(0.0, f64::max),
        orders.iter().map(|p| format!("{p:.3}")).collect::<Vec<_>>().join(", ")
    ))
}

fn quantum_properties() -> Check {
    let (n, depth, trials) = (10, 50, 30);
    let noise = |rate| NoiseModel { kind: NoiseKind::SmallRotation, rate, sigma: 0.05, seed: 7 };

    let quiet = ExperimentConfig::new(n, depth, InitSpec::PiDigit, noise(0.0), 2, 16);
    let rows = run_degradation_experiment(&quiet).map_err(|e| e.to_string())?;
    let drift = rows.iter().map(|r| r.norm_error).fold(0.0, f64::max);
    if !(drift < depth as f64 * 1e-12) {
        return Err(format!("noiseless norm drift {drift:e}"));
    }

    let noisy = ExperimentConfig::new(n, depth, InitSpec::PiDigit, noise(0.1), trials, 16);
    let rows = run_degradation_experiment(&noisy).map_err(|e| e.to_string())?;
    let last = |stat| {
        rows.iter()
            .rev()
            .find(|r| r.step == depth && r.stat == stat)
            .map(|r| r.compressed_bits)
            .ok_or("missing final-step row")
    };
    let (control, mean) = (last(TrialStat::Control)?, last(TrialStat::Mean)?);
    if !(mean > control) {
        return Err(format!("final mean {mean} not above control {control}"));
    }

    let ratio = |spec| -> Result<f64, String> {
        let reg = QubitRegister::new(n, spec).map_err(|e| e.to_string())?;
        Ok(complexity_upper_bound(&reg, 16).map_err(|e| e.to_string())?.ratio())
    };
    let basis = ratio(InitSpec::Basis(0))?;
    let random = ratio(InitSpec::SeededRandom(1))?;
    if !(basis < 0.1 && random > 0.9) {
        return Err(format!("basis ratio {basis:.4}, random ratio {random:.4}"));
    }
    Ok(format!(
        "drift {drift:.1e}; final control {control}, noisy mean {mean:.1}; ratios {basis:.4} / {random:.4}"
    ))
}

fn predictability() -> Check {
    let k = ConstantsSet::default();
    let n = collisions_to_order_unity(1e-12, 10.0).map_err(|e| e.to_string())?;
    if n != 12 {
        return Err(format!("f = 10 gives {n} collisions, want 12"));
    }
    let air = collision_predictability(&GasParams::default(), &k).map_err(|e| e.to_string())?;
    let m = air.collisions_to_order_unity;
    if !(10..=60).contains(&m) {
        return Err(format!("air gives {m} collisions"));
    }
    let tau = 1e-6;
    let bound = InfoBound::from_bits(1e122, BoundMethod::HolographicEvent, None);
    let cut = redshift_cutoff(tau, &bound).map_err(|e| e.to_string())?;
    let e = rel_err(cut, 1e122f64.ln() * tau);
    if e > 1e-9 {
        return Err(format!("redshift cutoff relative error {e:e}"));
    }
    let flag = if m == 12 { "" } else { " (order target 12 flagged)" };
    Ok(format!("f=10: {n}; air: {m}{flag}; redshift error {e:.1e}"))
}

fn determinism() -> Check {
    let dir = tmp_dir();
    let qubit_csv_name = "det-qubit.csv";
    let s = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let qubit_csv = dir.join(qubit_csv_name);
    let runs: Vec<(Vec<String>, Option<PathBuf>)> = vec![
        (s(&["cosmo", "--a", "0.5"]), None),
        (s(&["--format", "json", "bound"]), None),
        (s(&["bound", "--method", "lloyd", "--epoch-seconds", "1e-34"]), None),
        (s(&["--format", "json", "vacuum"]), None),
        (s(&["vacuum", "--series", "--samples", "17"]), None),
        (s(&["predict", "collisions"]), None),
        (s(&["--format", "json", "predict", "recurrence", "--interpretation", "both"]), None),
        (s(&["report"]), None),
        (s(&["--format", "json", "report"]), None),
        (s(&["config"]), None),
        (s(&["--seed", "11", "qubit", "--n", "8", "--depth", "20", "--trials", "8", "--spec", "random"]), None),
        (
            s(&["--seed", "5", "qubit", "--n", "8", "--depth", "20", "--trials", "8", "--out", qubit_csv.to_str().unwrap()]),
            Some(qubit_csv.clone()),
        ),
    ];
    for (args, out) in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = cli(&args)?;
        let first_file = out.as_ref().map(std::fs::read).transpose().map_err(|e| e.to_string())?;
        let second = cli(&args)?;
        let second_file = out.as_ref().map(std::fs::read).transpose().map_err(|e| e.to_string())?;
        if first != second || first_file != second_file {
            return Err(format!("`{}` differs between runs", args.join(" ")));
        }
        if first.1 != 0 {
            return Err(format!("`{}` exited {}", args.join(" "), first.1));
        }
    }
    Ok(format!("{} commands byte-identical across repeats", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check, Option<Duration>); 11] = [
        ("1  holographic bound 10^122 ± 1", holographic_bound, Some(Duration::from_secs(1))),
        ("2  Planck-cutoff density 10^113 ± 2", planck_cutoff, Some(Duration::from_secs(1))),
        ("3  Hubble-scale densities 10^-9 ± 1.5", hubble_scale_densities, Some(Duration::from_secs(1))),
        ("4  specifiability limit 405", specifiability, Some(Duration::from_secs(1))),
        ("5  inflation cap 10^19 ± 1, below 10^20", inflation_cap, Some(Duration::from_secs(1))),
        ("6  FRW closed forms to 1e-6", frw_closed_forms, Some(Duration::from_secs(1))),
        ("7  mode sum vs continuum within 5%", mode_sum_convergence, Some(Duration::from_secs(5))),
        ("8  conservation residual second order", conservation_order, Some(Duration::from_secs(1))),
        ("9  qubit experiment properties", quantum_properties, Some(Duration::from_secs(30))),
        ("10 predictability horizons", predictability, Some(Duration::from_secs(1))),
        ("11 byte-identical repeats", determinism, None),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS  {name}  [{elapsed:.2?}]  {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  [{elapsed:.2?}]  {why}");
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
