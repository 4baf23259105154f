//! Two-mode Fock-space oracle.
//!
//! The photon spin operators are realized with Schwinger bosons,
//! `S₊ = a_R† a_L`, `S₋ = a_L† a_R`, `S₃ = ½(N_R - N_L)` (ħ = 1). They all
//! conserve the total photon number, so every computation lives exactly on
//! one [`FockBlock`] and no truncation error exists.

mod expm;
mod geometric;
mod propagate;
mod verify;

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub use expm::{matrix_exponential, MAX_DIMENSION};
pub use geometric::{ms_geometric_phase, StateTrajectory, NORM_TOLERANCE};
pub use propagate::{rk4_propagate, sector_hamiltonian, sector_propagate};
pub use verify::{dressed_trajectory, verify_dressed_phase, DressedPhaseReport, WEIGHT_RATIO_TOLERANCE};

/// Subspace of fixed total photon number.
///
/// Basis index `j` is `|n_R = n_total - j, n_L = j⟩`, `j = 0..=n_total`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FockBlock {
    n_total: usize,
}

impl FockBlock {
    pub fn new(n_total: usize) -> Self {
        FockBlock { n_total }
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn dimension(&self) -> usize {
        self.n_total + 1
    }

    /// `(n_R, n_L)` of basis index `j`.
    pub fn occupation(&self, j: usize) -> (usize, usize) {
        (self.n_total - j, j)
    }

    pub fn index_of(&self, n_r: usize, n_l: usize) -> Result<usize> {
        if n_r + n_l == self.n_total {
            Ok(n_l)
        } else {
            Err(Error::OccupationOutsideBlock { n_r, n_l, n_total: self.n_total })
        }
    }

    pub fn basis_state(&self, n_r: usize, n_l: usize) -> Result<Array1<Complex64>> {
        let j = self.index_of(n_r, n_l)?;
        let mut v = Array1::zeros(self.dimension());
        v[j] = Complex64::new(1.0, 0.0);
        Ok(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorLabel {
    SPlus,
    SMinus,
    S3,
    NR,
    NL,
    Custom,
}

/// Dense operator on one block.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub label: OperatorLabel,
    pub block: FockBlock,
    pub matrix: Array2<Complex64>,
}

impl OperatorMatrix {
    pub fn adjoint(&self) -> Array2<Complex64> {
        adjoint(&self.matrix)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinOperators {
    pub plus: OperatorMatrix,
    pub minus: OperatorMatrix,
    pub s3: OperatorMatrix,
}

pub fn adjoint(m: &Array2<Complex64>) -> Array2<Complex64> {
    m.t().mapv(|z| z.conj())
}

/// `S₊`, `S₋`, `S₃` on `block`.
///
/// `S₊|n_R, n_L⟩ = sqrt((n_R + 1) n_L) |n_R + 1, n_L - 1⟩`.
pub fn spin_ops(block: FockBlock) -> SpinOperators {
    let dim = block.dimension();
    let mut plus = Array2::zeros((dim, dim));
    let mut s3 = Array2::zeros((dim, dim));
    for j in 0..dim {
        let (n_r, n_l) = block.occupation(j);
        if n_l > 0 {
            plus[[j - 1, j]] = Complex64::new((((n_r + 1) * n_l) as f64).sqrt(), 0.0);
        }
        s3[[j, j]] = Complex64::new(0.5 * (n_r as f64 - n_l as f64), 0.0);
    }
    let minus = adjoint(&plus);
    SpinOperators {
        plus: OperatorMatrix { label: OperatorLabel::SPlus, block, matrix: plus },
        minus: OperatorMatrix { label: OperatorLabel::SMinus, block, matrix: minus },
        s3: OperatorMatrix { label: OperatorLabel::S3, block, matrix: s3 },
    }
}

/// Mode number operators `(N_R, N_L)` on `block`.
pub fn number_ops(block: FockBlock) -> (OperatorMatrix, OperatorMatrix) {
    let dim = block.dimension();
    let mut nr = Array2::zeros((dim, dim));
    let mut nl = Array2::zeros((dim, dim));
    for j in 0..dim {
        let (a, b) = block.occupation(j);
        nr[[j, j]] = Complex64::new(a as f64, 0.0);
        nl[[j, j]] = Complex64::new(b as f64, 0.0);
    }
    (
        OperatorMatrix { label: OperatorLabel::NR, block, matrix: nr },
        OperatorMatrix { label: OperatorLabel::NL, block, matrix: nl },
    )
}

/// `max |([S₊, S₋] - 2 S₃)_ij|` together with the largest entry of `S₊S₋`,
/// which sets the rounding scale of the commutator.
pub fn su2_defect(block: FockBlock) -> (f64, f64) {
    let ops = spin_ops(block);
    let up_down = ops.plus.matrix.dot(&ops.minus.matrix);
    let comm = &up_down - &ops.minus.matrix.dot(&ops.plus.matrix);
    let defect = max_abs(&(comm - ops.s3.matrix.mapv(|z| z * 2.0)));
    (defect, max_abs(&up_down))
}

/// `β = -(θ/2) e^{-iφ}`.
pub fn beta(theta: f64, phi: f64) -> Complex64 {
    Complex64::from_polar(-0.5 * theta, -phi)
}

/// Dressing unitary `V = exp(β S₊ - β* S₋)`.
pub fn dressing(block: FockBlock, theta: f64, phi: f64) -> Result<Array2<Complex64>> {
    let ops = spin_ops(block);
    let b = beta(theta, phi);
    let generator = ops.plus.matrix.mapv(|z| z * b) - ops.minus.matrix.mapv(|z| z * b.conj());
    matrix_exponential(&generator)
}

/// Largest entry modulus of `a`.
pub fn max_abs(a: &Array2<Complex64>) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |(V†V - I)_ij|`.
pub fn unitarity_defect(v: &Array2<Complex64>) -> f64 {
    let eye: Array2<Complex64> = Array2::eye(v.nrows());
    max_abs(&(adjoint(v).dot(v) - eye))
}
