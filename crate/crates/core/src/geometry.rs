//! Helix geometry of the coiled fibre and the wave-vector path it induces on
//! the direction sphere.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s. The only place this constant is written.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;

/// Coefficient multiplying the coil radius inside the arc length per turn,
/// `sqrt(d² + (f·a)²)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TurnFactor {
    /// `f = 4π`, the coefficient used by the original fibre-phase formula.
    #[default]
    FourPi,
    /// `f = 2π`, the textbook helix arc length per turn.
    TwoPi,
}

impl TurnFactor {
    pub fn value(self) -> f64 {
        match self {
            TurnFactor::FourPi => 4.0 * PI,
            TurnFactor::TwoPi => 2.0 * PI,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            TurnFactor::FourPi => "4pi",
            TurnFactor::TwoPi => "2pi",
        }
    }
}

impl fmt::Display for TurnFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Pitch and radius of the fibre coil.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelixSpec {
    pitch: f64,
    radius: f64,
    turn_factor: TurnFactor,
}

impl HelixSpec {
    /// Helix with the default `4π` turn factor.
    pub fn new(pitch: f64, radius: f64) -> Result<Self> {
        Self::with_turn_factor(pitch, radius, TurnFactor::default())
    }

    pub fn with_turn_factor(pitch: f64, radius: f64, turn_factor: TurnFactor) -> Result<Self> {
        if !(pitch.is_finite() && pitch > 0.0) {
            return Err(Error::InvalidHelix(format!("pitch must be > 0, got {pitch}")));
        }
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(Error::InvalidHelix(format!("radius must be >= 0, got {radius}")));
        }
        Ok(HelixSpec { pitch, radius, turn_factor })
    }

    pub fn pitch(&self) -> f64 {
        self.pitch
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn turn_factor(&self) -> TurnFactor {
        self.turn_factor
    }

    /// `sqrt(d² + (f·a)²)`, never smaller than the pitch.
    pub fn arc_per_turn(&self) -> f64 {
        self.pitch.hypot(self.turn_factor.value() * self.radius)
    }

    /// `cos θ = d / arc_per_turn`.
    pub fn cos_theta(&self) -> f64 {
        self.pitch / self.arc_per_turn()
    }

    /// `1 - cos θ`, evaluated without cancellation for nearly straight coils.
    pub fn one_minus_cos_theta(&self) -> f64 {
        let l = self.arc_per_turn();
        let fa = self.turn_factor.value() * self.radius;
        // 1 - d/l = (l - d)/l = (fa)² / (l (l + d))
        fa * fa / (l * (l + self.pitch))
    }
}

/// Cone angle θ of the wave-vector path, in `[0, π/2)`.
pub fn polar_angle(helix: &HelixSpec) -> f64 {
    let fa = helix.turn_factor.value() * helix.radius;
    // atan2 keeps full precision at both ends of the range.
    fa.atan2(helix.pitch)
}

fn check_index(n: f64) -> Result<()> {
    if n.is_finite() && n > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveIndex(n))
    }
}

/// `Ω = 2πc / (arc_per_turn · n)`.
pub fn precession_frequency(helix: &HelixSpec, n: f64) -> Result<f64> {
    check_index(n)?;
    Ok(2.0 * PI * SPEED_OF_LIGHT / (helix.arc_per_turn() * n))
}

/// `T = 2π/Ω = n · arc_per_turn / c`.
pub fn cycle_period(helix: &HelixSpec, n: f64) -> Result<f64> {
    check_index(n)?;
    Ok(n * helix.arc_per_turn() / SPEED_OF_LIGHT)
}

/// `k (sin θ cos φ, sin θ sin φ, cos θ)`.
pub fn wave_vector(theta: f64, phi: f64, k: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [k * st * cp, k * st * sp, k * ct]
}

/// Solid angle `2π(1 - cos θ)` enclosed by a circle of polar angle θ.
pub fn solid_angle(theta: f64) -> f64 {
    // 1 - cos θ = 2 sin²(θ/2)
    let s = (0.5 * theta).sin();
    4.0 * PI * s * s
}

/// Direction history of the photon wave vector.
#[derive(Debug, Clone, PartialEq)]
pub enum SphericalTrajectory {
    /// θ fixed and `φ(t) = phi0 + omega·t`.
    ConstantPrecession { theta: f64, omega: f64, phi0: f64 },
    /// Tabulated θ(t), φ(t); see [`SphericalTrajectory::sampled`].
    Sampled(SampledPath),
}

/// Tabulated angles with precomputed node derivatives for cubic Hermite
/// interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPath {
    times: Vec<f64>,
    theta: Vec<f64>,
    phi: Vec<f64>,
    dtheta: Vec<f64>,
    dphi: Vec<f64>,
}

impl SphericalTrajectory {
    pub fn constant(theta: f64, omega: f64, phi0: f64) -> Self {
        SphericalTrajectory::ConstantPrecession { theta, omega, phi0 }
    }

    /// Builds a sampled trajectory. φ must be unwrapped (continuous) across
    /// samples; node derivatives come from five-point Lagrange stencils.
    pub fn sampled(times: Vec<f64>, theta: Vec<f64>, phi: Vec<f64>) -> Result<Self> {
        if times.len() < 2 {
            return Err(Error::InvalidTrajectory(format!(
                "need at least 2 samples, got {}",
                times.len()
            )));
        }
        if theta.len() != times.len() || phi.len() != times.len() {
            return Err(Error::InvalidTrajectory(format!(
                "length mismatch: {} times, {} theta, {} phi",
                times.len(),
                theta.len(),
                phi.len()
            )));
        }
        if times.iter().chain(&theta).chain(&phi).any(|v| !v.is_finite()) {
            return Err(Error::InvalidTrajectory("non-finite sample".into()));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidTrajectory("times must be strictly increasing".into()));
        }
        let dtheta = node_derivatives(&times, &theta);
        let dphi = node_derivatives(&times, &phi);
        Ok(SphericalTrajectory::Sampled(SampledPath { times, theta, phi, dtheta, dphi }))
    }

    /// Upper end of the time domain, `None` when unbounded.
    pub fn t_max(&self) -> Option<f64> {
        match self {
            SphericalTrajectory::ConstantPrecession { .. } => None,
            SphericalTrajectory::Sampled(p) => p.times.last().copied(),
        }
    }

    pub fn t_min(&self) -> f64 {
        match self {
            SphericalTrajectory::ConstantPrecession { .. } => 0.0,
            SphericalTrajectory::Sampled(p) => p.times[0],
        }
    }

    pub fn theta_at(&self, t: f64) -> f64 {
        match self {
            SphericalTrajectory::ConstantPrecession { theta, .. } => *theta,
            SphericalTrajectory::Sampled(p) => p.eval(t, &p.theta, &p.dtheta).0,
        }
    }

    pub fn phi_at(&self, t: f64) -> f64 {
        match self {
            SphericalTrajectory::ConstantPrecession { omega, phi0, .. } => phi0 + omega * t,
            SphericalTrajectory::Sampled(p) => p.eval(t, &p.phi, &p.dphi).0,
        }
    }

    /// dφ/dt.
    pub fn phi_rate_at(&self, t: f64) -> f64 {
        match self {
            SphericalTrajectory::ConstantPrecession { omega, .. } => *omega,
            SphericalTrajectory::Sampled(p) => p.eval(t, &p.phi, &p.dphi).1,
        }
    }
}

impl SampledPath {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Hermite value and derivative at `t`; clamps to the end segments.
    fn eval(&self, t: f64, y: &[f64], dy: &[f64]) -> (f64, f64) {
        let n = self.times.len();
        let k = match self.times.partition_point(|&x| x <= t) {
            0 => 0,
            i if i >= n => n - 2,
            i => i - 1,
        };
        let (t0, t1) = (self.times[k], self.times[k + 1]);
        let h = t1 - t0;
        let s = (t - t0) / h;
        let (s2, s3) = (s * s, s * s * s);
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        let value = h00 * y[k] + h10 * h * dy[k] + h01 * y[k + 1] + h11 * h * dy[k + 1];
        let d00 = (6.0 * s2 - 6.0 * s) / h;
        let d10 = 3.0 * s2 - 4.0 * s + 1.0;
        let d01 = (-6.0 * s2 + 6.0 * s) / h;
        let d11 = 3.0 * s2 - 2.0 * s;
        let slope = d00 * y[k] + d10 * dy[k] + d01 * y[k + 1] + d11 * dy[k + 1];
        (value, slope)
    }
}

/// Derivative at every node from the Lagrange polynomial through the (up to)
/// five nearest nodes.
fn node_derivatives(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let width = n.min(5);
    (0..n)
        .map(|i| {
            let start = i.saturating_sub(width / 2).min(n - width);
            let xs = &x[start..start + width];
            let ys = &y[start..start + width];
            let x0 = x[i];
            let mut d = 0.0;
            for k in 0..width {
                let mut wk = 0.0;
                for m in (0..width).filter(|&m| m != k) {
                    let mut term = 1.0 / (xs[k] - xs[m]);
                    for l in (0..width).filter(|&l| l != k && l != m) {
                        term *= (x0 - xs[l]) / (xs[k] - xs[l]);
                    }
                    wk += term;
                }
                d += wk * ys[k];
            }
            d
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn worked() -> HelixSpec {
        HelixSpec::new(3.0, 1.0 / PI).unwrap()
    }

    #[test]
    fn straight_fibre_has_zero_cone_angle() {
        let h = HelixSpec::new(3.0, 0.0).unwrap();
        assert_eq!(polar_angle(&h), 0.0);
        assert_eq!(h.cos_theta(), 1.0);
        assert_eq!(h.arc_per_turn(), 3.0);
    }

    #[test]
    fn worked_helix_is_a_3_4_5_triangle() {
        let h = worked();
        assert!((h.arc_per_turn() - 5.0).abs() < 1e-15);
        assert!((h.cos_theta() - 0.6).abs() < 1e-15);
        assert!((polar_angle(&h) - 0.6_f64.acos()).abs() < 1e-15);
        assert!((h.one_minus_cos_theta() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn flat_coil_approaches_right_angle() {
        let h = HelixSpec::new(1e-6, 1.0).unwrap();
        assert!((polar_angle(&h) - FRAC_PI_2).abs() < 1e-7);
        assert!(polar_angle(&h) < FRAC_PI_2);
        let h = HelixSpec::new(1e-300, 1.0).unwrap();
        assert!((polar_angle(&h) - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_helix() {
        assert!(HelixSpec::new(0.0, 1.0).is_err());
        assert!(HelixSpec::new(-1.0, 1.0).is_err());
        assert!(HelixSpec::new(1.0, -0.1).is_err());
        assert!(HelixSpec::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn precession_frequency_worked_values() {
        let h = worked();
        let w1 = precession_frequency(&h, 1.0).unwrap();
        assert!((w1 - 2.0 * PI * SPEED_OF_LIGHT / 5.0).abs() / w1 < 1e-15);
        assert!((w1 - 3.767_303_e8).abs() < 1e3);
        let w2 = precession_frequency(&h, 2.0).unwrap();
        assert_eq!(w2, w1 / 2.0);
        let (np, nm) = (1.3, 1.7);
        let ratio = precession_frequency(&h, np).unwrap() / precession_frequency(&h, nm).unwrap();
        assert!((ratio - nm / np).abs() < 1e-15);
    }

    #[test]
    fn cycle_period_worked_values() {
        let h = worked();
        let t1 = cycle_period(&h, 1.0).unwrap();
        assert!((t1 - 5.0 / SPEED_OF_LIGHT).abs() / t1 < 1e-15);
        assert!((t1 - 1.667_82e-8).abs() < 1e-13);
        assert!((cycle_period(&h, 2.0).unwrap() - 2.0 * t1).abs() < 1e-24);
        let product = precession_frequency(&h, 1.37).unwrap() * cycle_period(&h, 1.37).unwrap();
        assert!((product - 2.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn non_positive_index_is_rejected() {
        let h = worked();
        assert_eq!(precession_frequency(&h, 0.0), Err(Error::NonPositiveIndex(0.0)));
        assert_eq!(cycle_period(&h, -1.0), Err(Error::NonPositiveIndex(-1.0)));
    }

    #[test]
    fn wave_vector_examples() {
        assert_eq!(wave_vector(0.0, 1.234, 1.0), [0.0, 0.0, 1.0]);
        let v = wave_vector(FRAC_PI_2, 0.0, 2.0);
        assert!((v[0] - 2.0).abs() < 1e-15 && v[1].abs() < 1e-15 && v[2].abs() < 1e-15);
    }

    #[test]
    fn solid_angle_examples() {
        assert_eq!(solid_angle(0.0), 0.0);
        assert!((solid_angle(FRAC_PI_2) - 2.0 * PI).abs() < 1e-14);
        assert!((solid_angle(0.6_f64.acos()) - 0.8 * PI).abs() < 1e-14);
        assert!((solid_angle(0.6_f64.acos()) - 2.5133).abs() < 1e-4);
    }

    #[test]
    fn two_pi_turn_factor_opens_a_narrower_cone() {
        let four = HelixSpec::with_turn_factor(3.0, 0.5, TurnFactor::FourPi).unwrap();
        let two = HelixSpec::with_turn_factor(3.0, 0.5, TurnFactor::TwoPi).unwrap();
        assert!(two.cos_theta() > four.cos_theta());
        assert!(precession_frequency(&two, 1.5).unwrap() > precession_frequency(&four, 1.5).unwrap());
    }

    #[test]
    fn sampled_trajectory_validation() {
        assert!(SphericalTrajectory::sampled(vec![0.0], vec![0.0], vec![0.0]).is_err());
        assert!(SphericalTrajectory::sampled(vec![0.0, 1.0], vec![0.0], vec![0.0, 1.0]).is_err());
        assert!(SphericalTrajectory::sampled(vec![0.0, 0.0], vec![0.0; 2], vec![0.0; 2]).is_err());
        assert!(SphericalTrajectory::sampled(vec![0.0, 1.0], vec![0.0; 2], vec![0.0; 2]).is_ok());
    }

    #[test]
    fn sampled_interpolant_reproduces_cubics() {
        let times: Vec<f64> = (0..12).map(|i| (i as f64) * 0.3 + 0.01 * (i * i) as f64).collect();
        let f = |t: f64| 0.2 + 0.5 * t - 0.1 * t * t + 0.03 * t * t * t;
        let df = |t: f64| 0.5 - 0.2 * t + 0.09 * t * t;
        let phi: Vec<f64> = times.iter().map(|&t| f(t)).collect();
        let traj = SphericalTrajectory::sampled(times.clone(), vec![0.3; 12], phi).unwrap();
        for t in [0.0, 0.17, 1.0, 2.5, times[11]] {
            assert!((traj.phi_at(t) - f(t)).abs() < 1e-12, "t={t}");
            assert!((traj.phi_rate_at(t) - df(t)).abs() < 1e-11, "t={t}");
            assert!((traj.theta_at(t) - 0.3).abs() < 1e-14);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn polar_angle_in_range_and_monotone(d in 1e-3..100.0f64, a in 0.0..10.0f64, da in 1e-3..1.0f64) {
                let h = HelixSpec::new(d, a).unwrap();
                let th = polar_angle(&h);
                prop_assert!((0.0..FRAC_PI_2).contains(&th));
                prop_assert!(h.arc_per_turn() >= d);
                let wider = HelixSpec::new(d, a + da).unwrap();
                prop_assert!(polar_angle(&wider) > th);
                let longer = HelixSpec::new(d + da, a).unwrap();
                if a > 0.0 {
                    prop_assert!(polar_angle(&longer) < th);
                }
            }

            #[test]
            fn frequency_times_period_is_two_pi(d in 1e-3..100.0f64, a in 0.0..10.0f64, n in 0.05..20.0f64) {
                let h = HelixSpec::new(d, a).unwrap();
                let p = precession_frequency(&h, n).unwrap() * cycle_period(&h, n).unwrap();
                prop_assert!((p - 2.0 * PI).abs() < 1e-13);
            }

            #[test]
            fn wave_vector_has_magnitude_k(th in 0.0..PI, ph in -10.0..10.0f64, k in 1e-3..1e3f64) {
                let v = wave_vector(th, ph, k);
                let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                prop_assert!((norm / k - 1.0).abs() < 1e-14);
            }

            #[test]
            fn one_minus_cos_matches_naive(d in 1e-2..10.0f64, a in 1e-2..10.0f64) {
                let h = HelixSpec::new(d, a).unwrap();
                prop_assert!((h.one_minus_cos_theta() - (1.0 - h.cos_theta())).abs() < 1e-14);
            }
        }
    }
}
