//! Fixed-step RK4 propagation in the dressed frame.
//!
//! In the frame rotated by the dressing unitary each circular sector is
//! diagonal: `H = sign · Ω(1 - cos θ) · (N + w)` with `w = ½` for symmetric
//! and `w = 0` for normal ordering. The phase returned by
//! [`sector_propagate`] comes purely from integrating `i ψ' = H ψ`, so the
//! vacuum term `w` is produced by the dynamics rather than by formula.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result, Sector};
use crate::phase::OrderingMode;

use super::geometric::wrap;

/// Dressed-frame Hamiltonian on the single-mode space `|0⟩..|n_max⟩`.
pub fn sector_hamiltonian(
    n_max: usize,
    sector: Sector,
    omega: f64,
    theta: f64,
    ordering: OrderingMode,
) -> Array2<Complex64> {
    let half = 0.5 * theta;
    let rate = sector.sign() * omega * 2.0 * half.sin().powi(2);
    let w = match ordering {
        OrderingMode::Normal => 0.0,
        OrderingMode::Symmetric => 0.5,
    };
    Array2::from_diag(&Array1::from_iter(
        (0..=n_max).map(|k| Complex64::new(rate * (k as f64 + w), 0.0)),
    ))
}

/// Integrates `i ψ' = H ψ` with `steps` equal RK4 steps over `[0, t_final]`,
/// calling `observe(step_index, &ψ)` after every step.
pub fn rk4_propagate<F>(
    hamiltonian: &Array2<Complex64>,
    psi0: &Array1<Complex64>,
    t_final: f64,
    steps: usize,
    mut observe: F,
) -> Result<Array1<Complex64>>
where
    F: FnMut(usize, &Array1<Complex64>),
{
    if steps < 2 {
        return Err(Error::StepCount(steps));
    }
    if !(t_final.is_finite() && t_final >= 0.0) {
        return Err(Error::NegativeTime(t_final));
    }
    if hamiltonian.nrows() != psi0.len() || hamiltonian.ncols() != psi0.len() {
        return Err(Error::DimensionMismatch(format!(
            "hamiltonian {:?} vs state {}",
            hamiltonian.dim(),
            psi0.len()
        )));
    }
    let h = t_final / steps as f64;
    let minus_i = Complex64::new(0.0, -1.0);
    let rhs = |psi: &Array1<Complex64>| hamiltonian.dot(psi).mapv(|z| z * minus_i);
    let mut psi = psi0.clone();
    for step in 0..steps {
        let k1 = rhs(&psi);
        let k2 = rhs(&(&psi + &k1.mapv(|z| z * (0.5 * h))));
        let k3 = rhs(&(&psi + &k2.mapv(|z| z * (0.5 * h))));
        let k4 = rhs(&(&psi + &k3.mapv(|z| z * h)));
        psi = psi + (k1 + k2.mapv(|z| z * 2.0) + k3.mapv(|z| z * 2.0) + k4).mapv(|z| z * (h / 6.0));
        observe(step, &psi);
    }
    Ok(psi)
}

/// Phase of a sector prepared in `|n⟩`, as `-arg⟨n|ψ(t_final)⟩` accumulated
/// continuously over the steps.
pub fn sector_propagate(
    n: u32,
    sector: Sector,
    omega: f64,
    theta: f64,
    ordering: OrderingMode,
    t_final: f64,
    steps: usize,
) -> Result<f64> {
    let n = n as usize;
    let hamiltonian = sector_hamiltonian(n, sector, omega, theta, ordering);
    let mut psi0 = Array1::zeros(n + 1);
    psi0[n] = Complex64::new(1.0, 0.0);
    let mut accumulated = 0.0;
    let mut prev = 0.0;
    rk4_propagate(&hamiltonian, &psi0, t_final, steps, |_, psi| {
        let arg = psi[n].arg();
        accumulated += wrap(arg - prev);
        prev = arg;
    })?;
    Ok(-accumulated)
}
