//! Closed-form noncyclic geometric phases of the two circular sectors.
//!
//! Each sector traverses the same cone (angle θ fixed by the helix) at its
//! own precession rate `Ω± = 2πc / (arc_per_turn · n±)`, so its phase unit
//! is `φ₀± = Ω±(1 - cos θ) t`. A sector holding `n` photons picks up
//! `±(n + ½) φ₀±` under symmetric ordering and `±n φ₀±` under normal
//! ordering; the `±½ φ₀±` difference is the vacuum contribution.
//!
//! Phases are radians, unbounded, with the state carrying `e^{-iφ}`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Sector};
use crate::geometry::{self, HelixSpec, SphericalTrajectory, SPEED_OF_LIGHT};
use crate::media::GyroelectricTensor;

/// Photon numbers in the right- and left-handed modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PhotonOccupation {
    #[serde(rename = "n_R")]
    pub n_r: u32,
    #[serde(rename = "n_L")]
    pub n_l: u32,
}

impl PhotonOccupation {
    pub fn new(n_r: u32, n_l: u32) -> Self {
        PhotonOccupation { n_r, n_l }
    }

    pub fn vacuum() -> Self {
        Self::default()
    }

    pub fn total(&self) -> u32 {
        self.n_r + self.n_l
    }
}

/// Operator ordering of the photon Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderingMode {
    /// Zero-point terms discarded: weight `n` per sector.
    Normal,
    /// Zero-point terms kept: weight `n + ½` per sector.
    #[default]
    Symmetric,
}

impl OrderingMode {
    fn vacuum_weight(self) -> f64 {
        match self {
            OrderingMode::Normal => 0.0,
            OrderingMode::Symmetric => 0.5,
        }
    }
}

impl fmt::Display for OrderingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderingMode::Normal => "normal",
            OrderingMode::Symmetric => "symmetric",
        })
    }
}

impl FromStr for OrderingMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "normal" => Ok(OrderingMode::Normal),
            "symmetric" => Ok(OrderingMode::Symmetric),
            other => Err(format!("unknown ordering `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrature {
    /// `Ω(1 - cos θ) t`; constant precession only.
    ClosedForm,
    Trapezoid,
    Simpson,
}

/// `φ₀(t) = ∫₀ᵗ φ'(s) (1 - cos θ(s)) ds`.
///
/// For the quadrature rules the interval is split into
/// `ceil(t_final / step)` equal panels (rounded up to even for Simpson).
pub fn phi0(
    trajectory: &SphericalTrajectory,
    t_final: f64,
    quadrature: Quadrature,
    step: f64,
) -> Result<f64> {
    if !(t_final.is_finite() && t_final >= 0.0) {
        return Err(Error::NegativeTime(t_final));
    }
    if let Some(t_max) = trajectory.t_max() {
        if t_final > t_max || trajectory.t_min() > 0.0 {
            return Err(Error::QuadratureDomain { t_final, t_max });
        }
    }
    if quadrature == Quadrature::ClosedForm {
        return match trajectory {
            SphericalTrajectory::ConstantPrecession { theta, omega, .. } => {
                Ok(omega * geometry::solid_angle(*theta) / (2.0 * PI) * t_final)
            }
            SphericalTrajectory::Sampled(_) => Err(Error::ClosedFormUnavailable),
        };
    }
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidStep(step));
    }
    if t_final == 0.0 {
        return Ok(0.0);
    }
    let integrand = |t: f64| {
        let half = 0.5 * trajectory.theta_at(t);
        trajectory.phi_rate_at(t) * 2.0 * half.sin().powi(2)
    };
    let mut panels = panel_count(t_final, step);
    if quadrature == Quadrature::Simpson && panels % 2 == 1 {
        panels += 1;
    }
    let h = t_final / panels as f64;
    let node = |i: usize| if i == panels { t_final } else { i as f64 * h };
    let sum = match quadrature {
        Quadrature::Trapezoid => {
            let interior: f64 = (1..panels).map(|i| integrand(node(i))).sum();
            h * (0.5 * (integrand(0.0) + integrand(t_final)) + interior)
        }
        Quadrature::Simpson => {
            let odd: f64 = (1..panels).step_by(2).map(|i| integrand(node(i))).sum();
            let even: f64 = (2..panels).step_by(2).map(|i| integrand(node(i))).sum();
            h / 3.0 * (integrand(0.0) + integrand(t_final) + 4.0 * odd + 2.0 * even)
        }
        Quadrature::ClosedForm => unreachable!(),
    };
    Ok(sum)
}

fn panel_count(t_final: f64, step: f64) -> usize {
    let ratio = t_final / step;
    let rounded = ratio.round();
    // Treat near-integer ratios as exact so halving the step doubles the panels.
    let n = if (ratio - rounded).abs() <= 1e-9 * rounded.max(1.0) { rounded } else { ratio.ceil() };
    (n as usize).max(1)
}

/// Phase of one circular sector holding `n` photons, `sign · (n + w) · φ₀`
/// where `w` is ½ for symmetric ordering and 0 for normal ordering.
pub fn sector_phase(n: u32, sector: Sector, phi0_sector: f64, ordering: OrderingMode) -> f64 {
    sector.sign() * (f64::from(n) + ordering.vacuum_weight()) * phi0_sector
}

/// Inputs the breakdown was computed from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseMetadata {
    pub ordering: OrderingMode,
    pub turn_factor: &'static str,
    pub n_plus: f64,
    pub n_minus: f64,
    pub theta_rad: f64,
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub t_final: f64,
}

/// Every phase component, radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseBreakdown {
    #[serde(rename = "phi0_R")]
    pub phi0_r: f64,
    #[serde(rename = "phi0_L")]
    pub phi0_l: f64,
    /// `n_R φ₀R - n_L φ₀L`; independent of ordering.
    pub phi_quantum: f64,
    #[serde(rename = "phi_vac_R")]
    pub phi_vac_r: f64,
    #[serde(rename = "phi_vac_L")]
    pub phi_vac_l: f64,
    pub phi_vac_total: f64,
    pub phi_total: f64,
    pub metadata: PhaseMetadata,
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::NegativeTime(t))
    }
}

pub fn total_phase(
    occupation: PhotonOccupation,
    helix: &HelixSpec,
    medium: &GyroelectricTensor,
    t_final: f64,
    ordering: OrderingMode,
) -> Result<PhaseBreakdown> {
    check_time(t_final)?;
    let (n_plus, n_minus) = medium.refractive_indices()?;
    let omega_plus = geometry::precession_frequency(helix, n_plus)?;
    let omega_minus = geometry::precession_frequency(helix, n_minus)?;
    let cone = helix.one_minus_cos_theta();
    let phi0_r = omega_plus * cone * t_final;
    let phi0_l = omega_minus * cone * t_final;

    let phi_quantum = f64::from(occupation.n_r) * phi0_r - f64::from(occupation.n_l) * phi0_l;
    let phi_vac_r = sector_phase(0, Sector::Right, phi0_r, ordering);
    let phi_vac_l = sector_phase(0, Sector::Left, phi0_l, ordering);
    let phi_vac_total = phi_vac_r + phi_vac_l;

    Ok(PhaseBreakdown {
        phi0_r,
        phi0_l,
        phi_quantum,
        phi_vac_r,
        phi_vac_l,
        phi_vac_total,
        phi_total: phi_quantum + phi_vac_total,
        metadata: PhaseMetadata {
            ordering,
            turn_factor: helix.turn_factor().label(),
            n_plus,
            n_minus,
            theta_rad: geometry::polar_angle(helix),
            omega_plus,
            omega_minus,
            t_final,
        },
    })
}

/// Total vacuum phase of both sectors from the closed form
/// `(n₋ - n₊)/(n₊ n₋) · πc/arc_per_turn · (1 - cos θ) · t`.
pub fn vacuum_total(helix: &HelixSpec, medium: &GyroelectricTensor, t_final: f64) -> Result<f64> {
    check_time(t_final)?;
    let (n_plus, n_minus) = medium.refractive_indices()?;
    let index_factor = (n_minus - n_plus) / (n_plus * n_minus);
    Ok(index_factor * PI * SPEED_OF_LIGHT / helix.arc_per_turn() * helix.one_minus_cos_theta() * t_final)
}

/// Vacuum phase accumulated over one right-handed period `T₊ = 2π/Ω₊`,
/// equal to `π(1 - cos θ)(1 - n₊/n₋)`.
pub fn cyclic_vacuum_phase(helix: &HelixSpec, medium: &GyroelectricTensor) -> Result<f64> {
    let (n_plus, _) = medium.refractive_indices()?;
    let period = geometry::cycle_period(helix, n_plus)?;
    vacuum_total(helix, medium, period)
}
