//! Noncyclic geometric phase of a sampled state trajectory.
//!
//! `φ_g = arg⟨ψ(0)|ψ(t_f)⟩ - Im ∫ ⟨ψ|ψ'⟩ dt`, with ψ' from three-point
//! finite differences and the integral by the trapezoid rule. The overlap
//! argument is unwrapped continuously along the samples, so a smooth gauge
//! factor `e^{iα(t)}` cancels against the dynamical integral for any size
//! of `α(t_f) - α(0)`. Its value is the phase acquired by the state; the
//! closed-form phases in [`crate::phase`] use the opposite sign.

use std::f64::consts::PI;

use ndarray::Array1;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Allowed deviation of each state norm from 1.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Endpoint overlaps below this modulus leave the phase undefined.
const MIN_OVERLAP: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct StateTrajectory {
    times: Vec<f64>,
    states: Vec<Array1<Complex64>>,
}

impl StateTrajectory {
    pub fn new(times: Vec<f64>, states: Vec<Array1<Complex64>>) -> Result<Self> {
        if times.len() != states.len() {
            return Err(Error::InvalidTrajectory(format!(
                "{} times but {} states",
                times.len(),
                states.len()
            )));
        }
        if times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidTrajectory("times must be strictly increasing".into()));
        }
        if let Some(first) = states.first() {
            let dim = first.len();
            for (k, s) in states.iter().enumerate() {
                if s.len() != dim {
                    return Err(Error::InvalidTrajectory(format!(
                        "state {k} has dimension {} instead of {dim}",
                        s.len()
                    )));
                }
                let norm = s.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOLERANCE {
                    return Err(Error::InvalidTrajectory(format!("state {k} has norm {norm}")));
                }
            }
        }
        Ok(StateTrajectory { times, states })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[Array1<Complex64>] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

fn inner(a: &Array1<Complex64>, b: &Array1<Complex64>) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Wraps into (-π, π].
pub(crate) fn wrap(angle: f64) -> f64 {
    let r = angle.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Derivative weights at `x0` of the quadratic through `xs`.
fn three_point_weights(x0: f64, xs: [f64; 3]) -> [f64; 3] {
    let mut w = [0.0; 3];
    for k in 0..3 {
        let others: Vec<usize> = (0..3).filter(|&m| m != k).collect();
        let (p, q) = (xs[others[0]], xs[others[1]]);
        let denom = (xs[k] - p) * (xs[k] - q);
        w[k] = ((x0 - p) + (x0 - q)) / denom;
    }
    w
}

pub fn ms_geometric_phase(traj: &StateTrajectory) -> Result<f64> {
    let n = traj.len();
    if n < 3 {
        return Err(Error::TooFewSamples { min: 3, got: n });
    }
    let t = &traj.times;
    let psi = &traj.states;

    let endpoint = inner(&psi[0], &psi[n - 1]);
    if endpoint.norm() < MIN_OVERLAP {
        return Err(Error::OrthogonalEndpoints(endpoint.norm()));
    }

    // Im⟨ψ_k|ψ'_k⟩ at every sample.
    let local: Vec<f64> = (0..n)
        .map(|k| {
            let start = k.saturating_sub(1).min(n - 3);
            let idx = [start, start + 1, start + 2];
            let w = three_point_weights(t[k], idx.map(|i| t[i]));
            let deriv = idx
                .iter()
                .zip(w)
                .fold(Array1::<Complex64>::zeros(psi[k].len()), |acc, (&i, wi)| acc + psi[i].mapv(|z| z * wi));
            inner(&psi[k], &deriv).im
        })
        .collect();
    let dynamical: f64 = (1..n).map(|k| 0.5 * (t[k] - t[k - 1]) * (local[k] + local[k - 1])).sum();

    let mut total = 0.0;
    let mut prev = 0.0;
    for state in psi.iter().skip(1) {
        let z = inner(&psi[0], state);
        let arg = if z.norm() > 0.0 { z.arg() } else { prev };
        total += wrap(arg - prev);
        prev = arg;
    }

    Ok(total - dynamical)
}
