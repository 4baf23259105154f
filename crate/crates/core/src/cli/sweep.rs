//! Parameter sweeps to CSV.

use std::io::Write;

use rayon::prelude::*;

use super::config::{ConfigError, SweepSpec};
use super::CliError;
use crate::phase::{self, PhaseBreakdown};

/// Physics columns following the axis columns; `error` closes every row.
pub const RESULT_COLUMNS: [&str; 12] = [
    "n_plus",
    "n_minus",
    "theta_rad",
    "omega_plus",
    "omega_minus",
    "phi0_R",
    "phi0_L",
    "phi_quantum",
    "phi_vac_R",
    "phi_vac_L",
    "phi_vac_total",
    "phi_total",
];

/// 17 significant digits.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

/// Grid points in row-major order (first axis slowest).
pub fn grid(spec: &SweepSpec) -> Vec<Vec<f64>> {
    spec.axes.iter().fold(vec![Vec::new()], |acc, axis| {
        let pts = axis.values.points();
        acc.into_iter()
            .flat_map(|prefix| {
                pts.iter().map(move |&v| {
                    let mut row = prefix.clone();
                    row.push(v);
                    row
                })
            })
            .collect()
    })
}

fn evaluate(spec: &SweepSpec, point: &[f64]) -> Result<Result<PhaseBreakdown, String>, ConfigError> {
    let cfg = spec.config_at(point)?;
    let exp = cfg.validate()?;
    let result = exp.t_final().and_then(|t| {
        phase::total_phase(exp.occupation, &exp.helix, &exp.medium, t, exp.ordering)
    });
    Ok(result.map_err(|e| e.to_string()))
}

/// Thread cap from `VACPHASE_THREADS`; `None` means the rayon default.
pub fn thread_cap() -> Result<Option<usize>, CliError> {
    match std::env::var("VACPHASE_THREADS") {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("VACPHASE_THREADS must be a positive integer, got `{s}`"))),
        },
    }
}

/// Evaluates every grid point (concurrently) and writes the CSV in grid order.
pub fn run_sweep<W: Write>(spec: &SweepSpec, threads: Option<usize>, out: W) -> Result<usize, CliError> {
    spec.validate()?;
    let points = grid(spec);
    let compute = || points.par_iter().map(|p| evaluate(spec, p)).collect::<Vec<_>>();
    let results = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot build thread pool: {e}")))?
            .install(compute),
        None => compute(),
    };

    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    let header = spec
        .axes
        .iter()
        .map(|a| a.path.as_str())
        .chain(RESULT_COLUMNS)
        .chain(["error"]);
    writer.write_record(header)?;
    for (point, result) in points.iter().zip(results) {
        let mut record: Vec<String> = point.iter().map(|&v| format_number(v)).collect();
        match result? {
            Ok(b) => {
                let m = b.metadata;
                record.extend(
                    [
                        m.n_plus,
                        m.n_minus,
                        m.theta_rad,
                        m.omega_plus,
                        m.omega_minus,
                        b.phi0_r,
                        b.phi0_l,
                        b.phi_quantum,
                        b.phi_vac_r,
                        b.phi_vac_l,
                        b.phi_vac_total,
                        b.phi_total,
                    ]
                    .map(format_number),
                );
                record.push(String::new());
            }
            Err(msg) => {
                record.extend(std::iter::repeat_n(String::new(), RESULT_COLUMNS.len()));
                record.push(msg);
            }
        }
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(points.len())
}
