//! Experiment and sweep configuration documents (JSON).

use std::fmt;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;
use crate::geometry::{self, HelixSpec, TurnFactor};
use crate::media::GyroelectricTensor;
use crate::phase::{OrderingMode, PhotonOccupation};

/// Invalid configuration, located by its dotted key path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError { path: path.into(), message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() || self.path == "." {
            write!(f, "invalid config: {}", self.message)
        } else {
            write!(f, "invalid config at `{}`: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TurnFactorKey {
    #[default]
    #[serde(rename = "4pi")]
    FourPi,
    #[serde(rename = "2pi")]
    TwoPi,
}

impl From<TurnFactorKey> for TurnFactor {
    fn from(k: TurnFactorKey) -> Self {
        match k {
            TurnFactorKey::FourPi => TurnFactor::FourPi,
            TurnFactorKey::TwoPi => TurnFactor::TwoPi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HelixConfig {
    pub pitch_m: f64,
    pub radius_m: f64,
    #[serde(default)]
    pub turn_factor: TurnFactorKey,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumConfig {
    pub eps1: f64,
    pub eps2: f64,
    pub eps3: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OccupationConfig {
    #[serde(rename = "n_R")]
    pub n_r: u32,
    #[serde(rename = "n_L")]
    pub n_l: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TimeMode {
    #[serde(rename = "seconds")]
    Seconds,
    #[default]
    #[serde(rename = "cycles_of_R")]
    CyclesOfR,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeConfig {
    pub mode: TimeMode,
    pub value: f64,
}

impl Default for TimeConfig {
    fn default() -> Self {
        TimeConfig { mode: TimeMode::CyclesOfR, value: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OracleConfig {
    pub steps_per_cycle: u32,
    pub samples: u32,
    pub tolerance: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { steps_per_cycle: 200, samples: 10_000, tolerance: 1e-6 }
    }
}

/// One experiment. `helix` and `medium` are required; the rest default to
/// the vacuum state, symmetric ordering and one right-handed cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub helix: HelixConfig,
    pub medium: MediumConfig,
    #[serde(default)]
    pub occupation: OccupationConfig,
    #[serde(default)]
    pub ordering: OrderingMode,
    #[serde(default)]
    pub time: TimeConfig,
    #[serde(default)]
    pub oracle: OracleConfig,
}

impl Default for ExperimentConfig {
    /// The 3-4-5 gyroelectric example: `d = 3 m`, `a = 1/π m`,
    /// `ε = (2.5, -1.5, 2.0)`, vacuum, symmetric, one R cycle.
    fn default() -> Self {
        ExperimentConfig {
            helix: HelixConfig {
                pitch_m: 3.0,
                radius_m: 1.0 / std::f64::consts::PI,
                turn_factor: TurnFactorKey::FourPi,
            },
            medium: MediumConfig { eps1: 2.5, eps2: -1.5, eps3: 2.0 },
            occupation: OccupationConfig::default(),
            ordering: OrderingMode::Symmetric,
            time: TimeConfig::default(),
            oracle: OracleConfig::default(),
        }
    }
}

/// Domain objects built from a validated config.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Experiment {
    pub helix: HelixSpec,
    pub medium: GyroelectricTensor,
    pub occupation: PhotonOccupation,
    pub ordering: OrderingMode,
    pub time: TimeConfig,
    pub oracle: OracleConfig,
}

impl Experiment {
    /// Evolution time in seconds; `cycles_of_R` uses `T₊ = 2π/Ω₊`.
    pub fn t_final(&self) -> Result<f64, Error> {
        match self.time.mode {
            TimeMode::Seconds => Ok(self.time.value),
            TimeMode::CyclesOfR => {
                let (n_plus, _) = self.medium.refractive_indices()?;
                Ok(self.time.value * geometry::cycle_period(&self.helix, n_plus)?)
            }
        }
    }
}

fn finite(path: &str, v: f64) -> Result<f64, ConfigError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ConfigError::new(path, format!("must be finite, got {v}")))
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<Experiment, ConfigError> {
        let pitch = finite("helix.pitch_m", self.helix.pitch_m)?;
        if pitch <= 0.0 {
            return Err(ConfigError::new("helix.pitch_m", format!("must be > 0, got {pitch}")));
        }
        let radius = finite("helix.radius_m", self.helix.radius_m)?;
        if radius < 0.0 {
            return Err(ConfigError::new("helix.radius_m", format!("must be >= 0, got {radius}")));
        }
        let helix = HelixSpec::with_turn_factor(pitch, radius, self.helix.turn_factor.into())
            .map_err(|e| ConfigError::new("helix", e.to_string()))?;

        let eps1 = finite("medium.eps1", self.medium.eps1)?;
        let eps2 = finite("medium.eps2", self.medium.eps2)?;
        let eps3 = finite("medium.eps3", self.medium.eps3)?;
        if eps3 <= 0.0 {
            return Err(ConfigError::new("medium.eps3", format!("must be > 0, got {eps3}")));
        }
        let medium =
            GyroelectricTensor::new(eps1, eps2, eps3).map_err(|e| ConfigError::new("medium", e.to_string()))?;

        let value = finite("time.value", self.time.value)?;
        if value < 0.0 {
            return Err(ConfigError::new("time.value", format!("must be >= 0, got {value}")));
        }
        if self.oracle.steps_per_cycle < 8 {
            return Err(ConfigError::new(
                "oracle.steps_per_cycle",
                format!("must be >= 8, got {}", self.oracle.steps_per_cycle),
            ));
        }
        if self.oracle.samples < 16 {
            return Err(ConfigError::new("oracle.samples", format!("must be >= 16, got {}", self.oracle.samples)));
        }
        let tol = finite("oracle.tolerance", self.oracle.tolerance)?;
        if tol <= 0.0 {
            return Err(ConfigError::new("oracle.tolerance", format!("must be > 0, got {tol}")));
        }
        Ok(Experiment {
            helix,
            medium,
            occupation: PhotonOccupation::new(self.occupation.n_r, self.occupation.n_l),
            ordering: self.ordering,
            time: self.time,
            oracle: self.oracle,
        })
    }
}

fn parse_with_path<T: DeserializeOwned>(text: &str) -> Result<T, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        ConfigError::new(path, e.into_inner().to_string())
    })
}

pub fn parse_experiment(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let cfg: ExperimentConfig = parse_with_path(text)?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn read_text(path: &Path) -> Result<String, ConfigError> {
    std::fs::read_to_string(path).map_err(|e| ConfigError::new("", format!("cannot read {}: {e}", path.display())))
}

/// Grid along one axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AxisValues {
    List(Vec<f64>),
    Linear { start: f64, stop: f64, count: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    /// Dotted key into the experiment config, e.g. `medium.eps2`.
    pub path: String,
    pub values: AxisValues,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub base: ExperimentConfig,
    pub axes: Vec<SweepAxis>,
}

impl AxisValues {
    pub fn points(&self) -> Vec<f64> {
        match *self {
            AxisValues::List(ref v) => v.clone(),
            AxisValues::Linear { start, stop, count } => (0..count)
                .map(|i| {
                    if i + 1 == count {
                        stop
                    } else {
                        start + (stop - start) * i as f64 / (count - 1) as f64
                    }
                })
                .collect(),
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.base.validate()?;
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(ConfigError::new("axes", format!("expected 1 or 2 axes, got {}", self.axes.len())));
        }
        let base = serde_json::to_value(self.base).expect("config serializes");
        for (i, axis) in self.axes.iter().enumerate() {
            let here = format!("axes[{i}]");
            match lookup(&base, &axis.path) {
                Some(Value::Number(_)) => {}
                _ => {
                    return Err(ConfigError::new(
                        format!("{here}.path"),
                        format!("`{}` is not a numeric config leaf", axis.path),
                    ))
                }
            }
            match axis.values {
                AxisValues::List(ref v) if v.is_empty() => {
                    return Err(ConfigError::new(format!("{here}.values"), "empty value list"))
                }
                AxisValues::Linear { count, .. } if count < 2 => {
                    return Err(ConfigError::new(format!("{here}.values.count"), format!("must be >= 2, got {count}")))
                }
                AxisValues::Linear { start, stop, .. } if !(start.is_finite() && stop.is_finite()) => {
                    return Err(ConfigError::new(format!("{here}.values"), "start and stop must be finite"))
                }
                _ => {}
            }
            if self.axes[..i].iter().any(|a| a.path == axis.path) {
                return Err(ConfigError::new(format!("{here}.path"), format!("duplicate axis `{}`", axis.path)));
            }
        }
        Ok(())
    }

    /// Config at one grid point; axis values in axis order.
    pub fn config_at(&self, values: &[f64]) -> Result<ExperimentConfig, ConfigError> {
        let mut doc = serde_json::to_value(self.base).expect("config serializes");
        for (axis, &v) in self.axes.iter().zip(values) {
            let slot = lookup_mut(&mut doc, &axis.path)
                .ok_or_else(|| ConfigError::new(axis.path.clone(), "no such key"))?;
            *slot = if slot.is_u64() || slot.is_i64() {
                if v < 0.0 || v.fract() != 0.0 || v > f64::from(u32::MAX) {
                    return Err(ConfigError::new(axis.path.clone(), format!("needs a non-negative integer, got {v}")));
                }
                Value::from(v as u64)
            } else {
                serde_json::Number::from_f64(v)
                    .map(Value::Number)
                    .ok_or_else(|| ConfigError::new(axis.path.clone(), format!("non-finite value {v}")))?
            };
        }
        let cfg: ExperimentConfig = parse_with_path(&doc.to_string())?;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn lookup<'a>(v: &'a Value, path: &str) -> Option<&'a Value> {
    path.split('.').try_fold(v, |cur, key| cur.get(key))
}

fn lookup_mut<'a>(v: &'a mut Value, path: &str) -> Option<&'a mut Value> {
    path.split('.').try_fold(v, |cur, key| cur.get_mut(key))
}

pub fn parse_sweep(text: &str) -> Result<SweepSpec, ConfigError> {
    let spec: SweepSpec = parse_with_path(text)?;
    spec.validate()?;
    Ok(spec)
}
