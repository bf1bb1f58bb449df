//! Run configuration, assembled from defaults, an optional `key = value`
//! file and command-line flags (flags win).

use std::fs;
use std::path::{Path, PathBuf};

use gaussent_core::analytic::{ReservoirKind, DEFAULT_GRID_POINTS, DEFAULT_TAU_MAX};
use gaussent_core::numeric::DEFAULT_GAMMA_DT;

use crate::error::{CliError, Result};

pub const DEFAULT_PRECISION: usize = 12;
pub const DEFAULT_R_LIST: [f64; 5] = [0.0, 0.1, 0.5, 1.0, 2.0];
pub const DEFAULT_NBAR_LIST: [f64; 4] = [0.0, 0.5, 2.5, 4.0];
pub const DEFAULT_GAMMA_LIST: [f64; 2] = [0.5, 2.0];
pub const DEFAULT_OUTPUT: &str = "output";

/// Uniform grid in the rescaled time `τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub points: usize,
    pub tau_max: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            points: DEFAULT_GRID_POINTS,
            tau_max: DEFAULT_TAU_MAX,
        }
    }
}

/// One layer of partially specified settings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigLayer {
    pub model: Option<ReservoirKind>,
    pub r_list: Option<Vec<f64>>,
    pub nbar_list: Option<Vec<f64>>,
    pub points: Option<usize>,
    pub tau_max: Option<f64>,
    pub output_path: Option<PathBuf>,
    pub precision: Option<usize>,
    pub gamma_dt: Option<f64>,
    pub gamma_list: Option<Vec<f64>>,
}

fn parse_f64(key: &str, raw: &str) -> Result<f64> {
    raw.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{key}: '{raw}' is not a number")))
}

fn parse_list(key: &str, raw: &str) -> Result<Vec<f64>> {
    raw.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_f64(key, s))
        .collect()
}

fn parse_usize(key: &str, raw: &str) -> Result<usize> {
    raw.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{key}: '{raw}' is not a non-negative integer")))
}

pub fn parse_model(raw: &str) -> Result<ReservoirKind> {
    raw.parse()
        .map_err(|e: gaussent_core::Error| CliError::Usage(e.to_string()))
}

impl ConfigLayer {
    /// Parses a flat `key = value` listing. Blank lines and `#` comments are
    /// skipped; keys may use `-` or `_`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut layer = Self::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected key = value", lineno + 1))
            })?;
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            match key.as_str() {
                "model" => layer.model = Some(parse_model(value)?),
                "r" => layer.r_list = Some(parse_list("r", value)?),
                "nbar" => layer.nbar_list = Some(parse_list("nbar", value)?),
                "points" => layer.points = Some(parse_usize("points", value)?),
                "tau_max" => layer.tau_max = Some(parse_f64("tau_max", value)?),
                "out" => layer.output_path = Some(PathBuf::from(value)),
                "precision" => layer.precision = Some(parse_usize("precision", value)?),
                "dt" => layer.gamma_dt = Some(parse_f64("dt", value)?),
                "gamma" => layer.gamma_list = Some(parse_list("gamma", value)?),
                other => {
                    return Err(CliError::Usage(format!(
                        "config line {}: unknown key '{other}'",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(layer)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Fields set in `over` replace those in `self`.
    pub fn merge(self, over: ConfigLayer) -> ConfigLayer {
        ConfigLayer {
            model: over.model.or(self.model),
            r_list: over.r_list.or(self.r_list),
            nbar_list: over.nbar_list.or(self.nbar_list),
            points: over.points.or(self.points),
            tau_max: over.tau_max.or(self.tau_max),
            output_path: over.output_path.or(self.output_path),
            precision: over.precision.or(self.precision),
            gamma_dt: over.gamma_dt.or(self.gamma_dt),
            gamma_list: over.gamma_list.or(self.gamma_list),
        }
    }
}

/// Fully resolved and validated settings for a run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// `None` means the command's own default (see each command).
    pub model: Option<ReservoirKind>,
    pub r_list: Vec<f64>,
    pub nbar_list: Vec<f64>,
    pub grid: GridSpec,
    pub output_path: PathBuf,
    /// Significant digits in CSV output.
    pub precision: usize,
    /// Integration step in units of `1/γ`.
    pub gamma_dt: f64,
    /// Coupling rates exercised by `validate`.
    pub gamma_list: Vec<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            model: None,
            r_list: DEFAULT_R_LIST.to_vec(),
            nbar_list: DEFAULT_NBAR_LIST.to_vec(),
            grid: GridSpec::default(),
            output_path: PathBuf::from(DEFAULT_OUTPUT),
            precision: DEFAULT_PRECISION,
            gamma_dt: DEFAULT_GAMMA_DT,
            gamma_list: DEFAULT_GAMMA_LIST.to_vec(),
        }
    }
}

impl RunConfig {
    pub fn resolve(layer: ConfigLayer) -> Result<Self> {
        let defaults = Self::default();
        let config = Self {
            model: layer.model,
            r_list: layer.r_list.unwrap_or(defaults.r_list),
            nbar_list: layer.nbar_list.unwrap_or(defaults.nbar_list),
            grid: GridSpec {
                points: layer.points.unwrap_or(defaults.grid.points),
                tau_max: layer.tau_max.unwrap_or(defaults.grid.tau_max),
            },
            output_path: layer.output_path.unwrap_or(defaults.output_path),
            precision: layer.precision.unwrap_or(defaults.precision),
            gamma_dt: layer.gamma_dt.unwrap_or(defaults.gamma_dt),
            gamma_list: layer.gamma_list.unwrap_or(defaults.gamma_list),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let usage = |msg: String| Err(CliError::Usage(msg));
        if self.r_list.is_empty() {
            return usage("--r needs at least one value".into());
        }
        if let Some(r) = self.r_list.iter().find(|r| !r.is_finite()) {
            return usage(format!("squeezing must be finite, got {r}"));
        }
        if self.nbar_list.is_empty() {
            return usage("--nbar needs at least one value".into());
        }
        if let Some(n) = self
            .nbar_list
            .iter()
            .find(|n| !(**n >= 0.0) || !n.is_finite())
        {
            return usage(format!(
                "mean photon number must be finite and non-negative, got {n}"
            ));
        }
        if self.grid.points < 2 {
            return usage(format!(
                "--points must be at least 2, got {}",
                self.grid.points
            ));
        }
        if !(self.grid.tau_max > 0.0 && self.grid.tau_max < 1.0) {
            return usage(format!(
                "--tau-max must lie in (0, 1), got {}",
                self.grid.tau_max
            ));
        }
        if !(1..=17).contains(&self.precision) {
            return usage(format!(
                "--precision must lie in 1..=17, got {}",
                self.precision
            ));
        }
        if !(self.gamma_dt > 0.0 && self.gamma_dt <= 1.0) {
            return usage(format!("--dt must lie in (0, 1], got {}", self.gamma_dt));
        }
        if self.gamma_list.is_empty() {
            return usage("--gamma needs at least one value".into());
        }
        if let Some(g) = self
            .gamma_list
            .iter()
            .find(|g| !(**g > 0.0) || !g.is_finite())
        {
            return usage(format!("coupling rate must be positive, got {g}"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_key_value_file() {
        let layer = ConfigLayer::parse(
            "# sweep\nmodel = independent\nr = 0.5, 1\nnbar=0.5\ntau-max = 0.9\npoints = 10 # short\n",
        )
        .unwrap();
        assert_eq!(layer.model, Some(ReservoirKind::Independent));
        assert_eq!(layer.r_list, Some(vec![0.5, 1.0]));
        assert_eq!(layer.nbar_list, Some(vec![0.5]));
        assert_eq!(layer.tau_max, Some(0.9));
        assert_eq!(layer.points, Some(10));
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(matches!(
            ConfigLayer::parse("speed = 3"),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            ConfigLayer::parse("points"),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            ConfigLayer::parse("r = a,b"),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn flags_override_file() {
        let file = ConfigLayer::parse("points = 10\nprecision = 8").unwrap();
        let flags = ConfigLayer {
            points: Some(20),
            ..Default::default()
        };
        let config = RunConfig::resolve(file.merge(flags)).unwrap();
        assert_eq!(config.grid.points, 20);
        assert_eq!(config.precision, 8);
    }

    #[test]
    fn validation_errors_are_usage_errors() {
        for layer in [
            ConfigLayer {
                points: Some(1),
                ..Default::default()
            },
            ConfigLayer {
                tau_max: Some(1.0),
                ..Default::default()
            },
            ConfigLayer {
                nbar_list: Some(vec![-0.5]),
                ..Default::default()
            },
            ConfigLayer {
                r_list: Some(vec![]),
                ..Default::default()
            },
            ConfigLayer {
                precision: Some(0),
                ..Default::default()
            },
            ConfigLayer {
                gamma_list: Some(vec![0.0]),
                ..Default::default()
            },
        ] {
            let err = RunConfig::resolve(layer).unwrap_err();
            assert_eq!(err.exit_code(), 2);
        }
    }
}
