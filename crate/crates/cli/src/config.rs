//! Flat `key = value` run configuration.
//!
//! Grammar: one `key = value` pair per line, `#` starts a comment that runs
//! to end of line, blank lines are ignored, keys are unique. Values are
//! decimal numbers except `format` (`text` or `json`).

use std::fmt::Write as _;
use std::path::Path;

use infobound::cosmology::CosmologyParams;
use infobound::quantum::DEFAULT_QUBIT_CAP;
use infobound::units::ConstantsSet;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{line}:{column}: unknown key `{key}`")]
    UnknownKey { line: usize, column: usize, key: String },
    #[error("`{key}` = {value}: {reason}")]
    RangeViolation { key: &'static str, value: String, reason: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl Format {
    fn as_str(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
        }
    }
}

/// Qubit counts above this need more than ~16 GiB for the state vector.
pub const MAX_QUBIT_CAP: usize = 30;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub hubble0_km_s_mpc: f64,
    pub omega_m: f64,
    pub omega_r: f64,
    pub omega_lambda: f64,
    #[serde(flatten)]
    pub constants: ConstantsSet,
    pub dark_energy_density: f64,
    pub qubit_cap: usize,
    pub format: Format,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            hubble0_km_s_mpc: 67.7,
            omega_m: 0.31,
            omega_r: 9e-5,
            omega_lambda: 0.69,
            constants: ConstantsSet::CODATA_2018,
            dark_energy_density: 6e-10,
            qubit_cap: DEFAULT_QUBIT_CAP,
            format: Format::Text,
            seed: 0,
        }
    }
}

const KEYS: [&str; 12] = [
    "hubble0_km_s_mpc",
    "omega_m",
    "omega_r",
    "omega_lambda",
    "c",
    "G",
    "hbar",
    "k_B",
    "dark_energy_density",
    "qubit_cap",
    "format",
    "seed",
];

fn range(key: &'static str, value: impl ToString, reason: &str) -> ConfigError {
    ConfigError::RangeViolation { key, value: value.to_string(), reason: reason.to_string() }
}

fn positive(key: &'static str, v: f64) -> Result<(), ConfigError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(range(key, v, "must be positive and finite"))
    }
}

fn non_negative(key: &'static str, v: f64) -> Result<(), ConfigError> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(range(key, v, "must be non-negative and finite"))
    }
}

// Shortest round-trip representation; plain decimal for moderate magnitudes.
fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-4..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        let mut seen: Vec<&str> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let indent = content.len() - content.trim_start().len();
            let Some(eq) = content.find('=') else {
                return Err(ConfigError::Parse {
                    line,
                    column: indent + 1,
                    message: "expected `key = value`".into(),
                });
            };
            let key = content[..eq].trim();
            let value = content[eq + 1..].trim();
            let value_col = eq + 2 + (content[eq + 1..].len() - content[eq + 1..].trim_start().len());
            if key.is_empty() {
                return Err(ConfigError::Parse { line, column: indent + 1, message: "missing key".into() });
            }
            let Some(&key) = KEYS.iter().find(|k| **k == key) else {
                return Err(ConfigError::UnknownKey { line, column: indent + 1, key: key.to_string() });
            };
            if seen.contains(&key) {
                return Err(ConfigError::Parse {
                    line,
                    column: indent + 1,
                    message: format!("duplicate key `{key}`"),
                });
            }
            seen.push(key);
            if value.is_empty() {
                return Err(ConfigError::Parse { line, column: value_col, message: "missing value".into() });
            }
            let bad = |what: &str| ConfigError::Parse {
                line,
                column: value_col,
                message: format!("`{value}` is not {what}"),
            };
            let num = || value.parse::<f64>().map_err(|_| bad("a number"));
            match key {
                "hubble0_km_s_mpc" => cfg.hubble0_km_s_mpc = num()?,
                "omega_m" => cfg.omega_m = num()?,
                "omega_r" => cfg.omega_r = num()?,
                "omega_lambda" => cfg.omega_lambda = num()?,
                "c" => cfg.constants.c = num()?,
                "G" => cfg.constants.g = num()?,
                "hbar" => cfg.constants.hbar = num()?,
                "k_B" => cfg.constants.k_b = num()?,
                "dark_energy_density" => cfg.dark_energy_density = num()?,
                "qubit_cap" => cfg.qubit_cap = value.parse().map_err(|_| bad("a non-negative integer"))?,
                "seed" => cfg.seed = value.parse().map_err(|_| bad("a 64-bit unsigned integer"))?,
                "format" => {
                    cfg.format = match value {
                        "text" => Format::Text,
                        "json" => Format::Json,
                        _ => return Err(bad("`text` or `json`")),
                    }
                }
                _ => unreachable!("key list and match arms agree"),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        positive("hubble0_km_s_mpc", self.hubble0_km_s_mpc)?;
        non_negative("omega_m", self.omega_m)?;
        non_negative("omega_r", self.omega_r)?;
        non_negative("omega_lambda", self.omega_lambda)?;
        positive("c", self.constants.c)?;
        positive("G", self.constants.g)?;
        positive("hbar", self.constants.hbar)?;
        positive("k_B", self.constants.k_b)?;
        positive("dark_energy_density", self.dark_energy_density)?;
        if !(1..=MAX_QUBIT_CAP).contains(&self.qubit_cap) {
            return Err(range("qubit_cap", self.qubit_cap, &format!("must be in 1..={MAX_QUBIT_CAP}")));
        }
        Ok(())
    }

    pub fn cosmology(&self) -> Result<CosmologyParams, ConfigError> {
        CosmologyParams::from_km_s_mpc(self.hubble0_km_s_mpc, self.omega_r, self.omega_m, self.omega_lambda)
            .map_err(|e| range("omega_lambda", self.omega_lambda, &e.to_string()))
    }

    /// Renders the effective configuration in the input grammar; parsing
    /// the result reproduces every value bit-exactly.
    pub fn to_config_text(&self) -> String {
        let k = &self.constants;
        let mut out = String::new();
        for (key, value) in [
            ("hubble0_km_s_mpc", fmt_f64(self.hubble0_km_s_mpc)),
            ("omega_m", fmt_f64(self.omega_m)),
            ("omega_r", fmt_f64(self.omega_r)),
            ("omega_lambda", fmt_f64(self.omega_lambda)),
            ("c", fmt_f64(k.c)),
            ("G", fmt_f64(k.g)),
            ("hbar", fmt_f64(k.hbar)),
            ("k_B", fmt_f64(k.k_b)),
            ("dark_energy_density", fmt_f64(self.dark_energy_density)),
            ("qubit_cap", self.qubit_cap.to_string()),
            ("format", self.format.as_str().to_string()),
            ("seed", self.seed.to_string()),
        ] {
            let _ = writeln!(out, "{key} = {value}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_is_default() {
        assert_eq!(RunConfig::parse("").unwrap(), RunConfig::default());
        assert_eq!(RunConfig::parse("# only a comment\n\n   \n").unwrap(), RunConfig::default());
    }

    #[test]
    fn single_override() {
        let cfg = RunConfig::parse("omega_m = 0.31").unwrap();
        assert_eq!(cfg.omega_m, 0.31);
        let cfg = RunConfig::parse("  omega_m=0.25   # matter\n").unwrap();
        assert_eq!(cfg, RunConfig { omega_m: 0.25, ..RunConfig::default() });
    }

    #[test]
    fn range_violation_names_key() {
        match RunConfig::parse("omega_m = -1") {
            Err(ConfigError::RangeViolation { key, .. }) => assert_eq!(key, "omega_m"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(RunConfig::parse("G = 0"), Err(ConfigError::RangeViolation { key: "G", .. })));
        assert!(matches!(
            RunConfig::parse("qubit_cap = 40"),
            Err(ConfigError::RangeViolation { key: "qubit_cap", .. })
        ));
    }

    #[test]
    fn unknown_key_is_error() {
        assert_eq!(
            RunConfig::parse("omega_m = 0.3\n  omgea_l = 0.7"),
            Err(ConfigError::UnknownKey { line: 2, column: 3, key: "omgea_l".into() })
        );
    }

    #[test]
    fn parse_errors_locate() {
        assert_eq!(
            RunConfig::parse("seed = 1\nomega_m = abc"),
            Err(ConfigError::Parse { line: 2, column: 11, message: "`abc` is not a number".into() })
        );
        assert!(matches!(RunConfig::parse("omega_m 0.3"), Err(ConfigError::Parse { line: 1, column: 1, .. })));
        assert!(matches!(RunConfig::parse("seed = 1\nseed = 2"), Err(ConfigError::Parse { line: 2, .. })));
        assert!(matches!(RunConfig::parse("format = yaml"), Err(ConfigError::Parse { .. })));
    }

    #[test]
    fn echo_round_trips_bitwise() {
        let cfg = RunConfig {
            hubble0_km_s_mpc: 70.123456789012345,
            omega_m: 0.1 + 0.2,
            omega_r: 8.4e-5,
            omega_lambda: 2.0 / 3.0,
            constants: ConstantsSet { g: 6.6743e-11 * (1.0 + f64::EPSILON), ..ConstantsSet::CODATA_2018 },
            dark_energy_density: 5.3e-10,
            qubit_cap: 12,
            format: Format::Json,
            seed: u64::MAX,
        };
        let back = RunConfig::parse(&cfg.to_config_text()).unwrap();
        assert_eq!(back, cfg);
        for (a, b) in [
            (back.omega_m, cfg.omega_m),
            (back.constants.g, cfg.constants.g),
            (back.hubble0_km_s_mpc, cfg.hubble0_km_s_mpc),
        ] {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        let default = RunConfig::default();
        assert_eq!(RunConfig::parse(&default.to_config_text()).unwrap(), default);
    }
}
