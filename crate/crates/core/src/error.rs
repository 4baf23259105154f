use std::fmt;

use thiserror::Error;

/// Circular polarization sector, right-handed (`n_plus`) or left-handed
/// (`n_minus`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    Right,
    Left,
}

impl Sector {
    /// +1 for R, -1 for L.
    pub fn sign(self) -> f64 {
        match self {
            Sector::Right => 1.0,
            Sector::Left => -1.0,
        }
    }

    /// Name of the refractive index carried by this sector.
    pub fn index_name(self) -> &'static str {
        match self {
            Sector::Right => "n_plus",
            Sector::Left => "n_minus",
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sector::Right => f.write_str("R"),
            Sector::Left => f.write_str("L"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid helix: {0}")]
    InvalidHelix(String),

    #[error("invalid medium: {0}")]
    InvalidMedium(String),

    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(String),

    #[error("refractive index must be positive, got {0}")]
    NonPositiveIndex(f64),

    #[error("evanescent {name} mode: eps1 {op} eps2 = {value} <= 0", name = .sector.index_name(), op = if *.sector == Sector::Right { "+" } else { "-" })]
    EvanescentMode { sector: Sector, value: f64 },

    #[error("t_final = {t_final} lies outside the sampled range [0, {t_max}]")]
    QuadratureDomain { t_final: f64, t_max: f64 },

    #[error("time must be finite and >= 0, got {0}")]
    NegativeTime(f64),

    #[error("quadrature step must be positive and finite, got {0}")]
    InvalidStep(f64),

    #[error("closed-form quadrature requires a constant-precession trajectory")]
    ClosedFormUnavailable,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("endpoint overlap |<psi(0)|psi(T)>| = {0:e} is too small; noncyclic phase undefined")]
    OrthogonalEndpoints(f64),

    #[error("at least {min} samples required, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("at least 2 integration steps required, got {0}")]
    StepCount(usize),

    #[error("occupation ({n_r}, {n_l}) does not belong to the block with {n_total} photons")]
    OccupationOutsideBlock { n_r: usize, n_l: usize, n_total: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
