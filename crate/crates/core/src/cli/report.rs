//! `vacphase phase`: single-point report.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use super::config::{Experiment, ExperimentConfig};
use crate::error::Error;
use crate::geometry;
use crate::phase::{self, PhaseBreakdown};

/// Wraps an accumulated phase into (-π, π].
pub fn wrap_phase(phi: f64) -> f64 {
    let r = phi.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseRecord {
    pub config: ExperimentConfig,
    pub t_final_s: f64,
    pub theta_rad: f64,
    pub cos_theta: f64,
    pub solid_angle_sr: f64,
    pub arc_per_turn_m: f64,
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub period_plus_s: f64,
    pub period_minus_s: f64,
    pub breakdown: PhaseBreakdown,
}

pub fn compute(cfg: &ExperimentConfig, exp: &Experiment) -> Result<PhaseRecord, Error> {
    let t = exp.t_final()?;
    let breakdown = phase::total_phase(exp.occupation, &exp.helix, &exp.medium, t, exp.ordering)?;
    let m = breakdown.metadata;
    let theta = geometry::polar_angle(&exp.helix);
    Ok(PhaseRecord {
        config: *cfg,
        t_final_s: t,
        theta_rad: theta,
        cos_theta: exp.helix.cos_theta(),
        solid_angle_sr: geometry::solid_angle(theta),
        arc_per_turn_m: exp.helix.arc_per_turn(),
        omega_plus: m.omega_plus,
        omega_minus: m.omega_minus,
        period_plus_s: geometry::cycle_period(&exp.helix, m.n_plus)?,
        period_minus_s: geometry::cycle_period(&exp.helix, m.n_minus)?,
        breakdown,
    })
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DisplayOptions {
    pub degrees: bool,
    pub wrapped: bool,
}

pub fn render(record: &PhaseRecord, opts: DisplayOptions) -> String {
    let (scale, unit) = if opts.degrees { (180.0 / PI, "deg") } else { (1.0, "rad") };
    let b = &record.breakdown;
    let mut s = String::new();
    let cfg = serde_json::to_string(&record.config).expect("config serializes");
    let _ = writeln!(s, "config          {cfg}");
    let _ = writeln!(s, "ordering        {}", b.metadata.ordering);
    let _ = writeln!(s, "turn_factor     {}", b.metadata.turn_factor);
    let _ = writeln!(s, "n_plus          {:.12}", b.metadata.n_plus);
    let _ = writeln!(s, "n_minus         {:.12}", b.metadata.n_minus);
    let _ = writeln!(s, "arc_per_turn    {:.12e} m", record.arc_per_turn_m);
    let _ = writeln!(s, "theta           {:.12} {unit}", record.theta_rad * scale);
    let _ = writeln!(s, "cos_theta       {:.12}", record.cos_theta);
    let _ = writeln!(s, "solid_angle     {:.12} sr", record.solid_angle_sr);
    let _ = writeln!(s, "omega_plus      {:.12e} rad/s", record.omega_plus);
    let _ = writeln!(s, "omega_minus     {:.12e} rad/s", record.omega_minus);
    let _ = writeln!(s, "T_plus          {:.12e} s", record.period_plus_s);
    let _ = writeln!(s, "T_minus         {:.12e} s", record.period_minus_s);
    let _ = writeln!(s, "t_final         {:.12e} s", record.t_final_s);
    let rows = [
        ("phi0_R", b.phi0_r),
        ("phi0_L", b.phi0_l),
        ("phi_quantum", b.phi_quantum),
        ("phi_vac_R", b.phi_vac_r),
        ("phi_vac_L", b.phi_vac_l),
        ("phi_vac_total", b.phi_vac_total),
        ("phi_total", b.phi_total),
    ];
    for (name, v) in rows {
        if opts.wrapped {
            let _ = writeln!(s, "{name:<15} {:.12} {unit}  (wrapped {:.12})", v * scale, wrap_phase(v) * scale);
        } else {
            let _ = writeln!(s, "{name:<15} {:.12} {unit}", v * scale);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_report() {
        let cfg = ExperimentConfig::default();
        let rec = compute(&cfg, &cfg.validate().unwrap()).unwrap();
        assert!((rec.breakdown.phi_vac_total - 0.2 * PI).abs() < 1e-12);
        assert!((rec.solid_angle_sr - 0.8 * PI).abs() < 1e-12);
        let text = render(&rec, DisplayOptions::default());
        assert!(text.contains("phi_vac_total   0.628318530718 rad"), "{text}");
        let deg = render(&rec, DisplayOptions { degrees: true, wrapped: false });
        assert!(deg.contains("phi_vac_total   36.000000000000 deg"), "{deg}");
    }

    #[test]
    fn wrapping() {
        assert!((wrap_phase(2.5 * PI) - 0.5 * PI).abs() < 1e-15);
        assert!((wrap_phase(-PI) - PI).abs() < 1e-15);
        assert_eq!(wrap_phase(0.25), 0.25);
    }
}
