//! Gyroelectric permittivity tensor and its circular eigenmodes for
//! propagation along the gyration axis.
//!
//! Handedness convention: fields vary as `e^{-iωt}`, and the transverse
//! Jones vector `(1, -i)/√2` is called right-handed. With the tensor below it
//! is the eigenvector of eigenvalue `ε₁ + ε₂`, so it carries `n₊`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result, Sector};

/// `[[ε₁, iε₂, 0], [-iε₂, ε₁, 0], [0, 0, ε₃]]` with μ = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GyroelectricTensor {
    eps1: f64,
    eps2: f64,
    eps3: f64,
}

/// Relative permeability; the medium is non-magnetic.
pub const MU: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Handedness {
    Right,
    Left,
}

impl From<Handedness> for Sector {
    fn from(h: Handedness) -> Sector {
        match h {
            Handedness::Right => Sector::Right,
            Handedness::Left => Sector::Left,
        }
    }
}

impl fmt::Display for Handedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Handedness::Right => "R",
            Handedness::Left => "L",
        })
    }
}

/// One transverse eigenpair of the permittivity tensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenmode {
    pub handedness: Handedness,
    /// Squared refractive index of the mode.
    pub eigenvalue: f64,
    /// Unit Jones vector, first nonzero component real and positive.
    pub jones: [Complex64; 2],
}

impl GyroelectricTensor {
    pub fn new(eps1: f64, eps2: f64, eps3: f64) -> Result<Self> {
        if !(eps1.is_finite() && eps2.is_finite() && eps3.is_finite()) {
            return Err(Error::InvalidMedium("permittivities must be finite".into()));
        }
        if eps3 <= 0.0 {
            return Err(Error::InvalidMedium(format!("eps3 must be > 0, got {eps3}")));
        }
        Ok(GyroelectricTensor { eps1, eps2, eps3 })
    }

    pub fn eps1(&self) -> f64 {
        self.eps1
    }

    pub fn eps2(&self) -> f64 {
        self.eps2
    }

    pub fn eps3(&self) -> f64 {
        self.eps3
    }

    pub fn permittivity_matrix(&self) -> [[Complex64; 3]; 3] {
        let z = Complex64::new(0.0, 0.0);
        let re = |x: f64| Complex64::new(x, 0.0);
        [
            [re(self.eps1), Complex64::new(0.0, self.eps2), z],
            [Complex64::new(0.0, -self.eps2), re(self.eps1), z],
            [z, z, re(self.eps3)],
        ]
    }

    /// `(n₊, n₋) = (sqrt(ε₁ + ε₂), sqrt(ε₁ - ε₂))`.
    pub fn refractive_indices(&self) -> Result<(f64, f64)> {
        let plus = self.eps1 + self.eps2;
        let minus = self.eps1 - self.eps2;
        if plus <= 0.0 {
            return Err(Error::EvanescentMode { sector: Sector::Right, value: plus });
        }
        if minus <= 0.0 {
            return Err(Error::EvanescentMode { sector: Sector::Left, value: minus });
        }
        Ok((plus.sqrt(), minus.sqrt()))
    }

    /// Eigenpairs of the transverse block `[[ε₁, iε₂], [-iε₂, ε₁]]`, R first.
    pub fn transverse_eigenmodes(&self) -> [Eigenmode; 2] {
        let a = self.eps1;
        let b = Complex64::new(0.0, self.eps2);
        let pairs = hermitian_2x2_eigen(a, b, self.eps1);
        let right_ref = circular(Handedness::Right);
        let left_ref = circular(Handedness::Left);
        let modes = match pairs {
            // Degenerate: any basis diagonalizes, return the canonical pair.
            None => [(a, right_ref), (a, left_ref)],
            Some([(l0, v0), (l1, v1)]) => {
                if overlap(&v0, &right_ref) >= overlap(&v1, &right_ref) {
                    [(l0, v0), (l1, v1)]
                } else {
                    [(l1, v1), (l0, v0)]
                }
            }
        };
        [
            Eigenmode { handedness: Handedness::Right, eigenvalue: modes[0].0, jones: modes[0].1 },
            Eigenmode { handedness: Handedness::Left, eigenvalue: modes[1].0, jones: modes[1].1 },
        ]
    }
}

/// `(1, ∓i)/√2` for R/L.
pub fn circular(h: Handedness) -> [Complex64; 2] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match h {
        Handedness::Right => [Complex64::new(s, 0.0), Complex64::new(0.0, -s)],
        Handedness::Left => [Complex64::new(s, 0.0), Complex64::new(0.0, s)],
    }
}

fn overlap(u: &[Complex64; 2], v: &[Complex64; 2]) -> f64 {
    (u[0].conj() * v[0] + u[1].conj() * v[1]).norm()
}

/// Closed-form eigensystem of `[[a, b], [b*, d]]`; `None` when degenerate.
fn hermitian_2x2_eigen(a: f64, b: Complex64, d: f64) -> Option<[(f64, [Complex64; 2]); 2]> {
    let mean = 0.5 * (a + d);
    let half_gap = (0.5 * (a - d)).hypot(b.norm());
    if half_gap == 0.0 {
        return None;
    }
    let vector = |lambda: f64| {
        // Either row of (M - λ) gives a null vector; keep the larger one.
        let from_first = [b, Complex64::new(lambda - a, 0.0)];
        let from_second = [Complex64::new(lambda - d, 0.0), b.conj()];
        let size = |v: &[Complex64; 2]| v[0].norm_sqr() + v[1].norm_sqr();
        if size(&from_first) >= size(&from_second) {
            normalize_phase(from_first)
        } else {
            normalize_phase(from_second)
        }
    };
    let hi = mean + half_gap;
    let lo = mean - half_gap;
    Some([(hi, vector(hi)), (lo, vector(lo))])
}

fn normalize_phase(v: [Complex64; 2]) -> [Complex64; 2] {
    let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let pivot = if v[0].norm() > 1e-300 { v[0] } else { v[1] };
    let phase = pivot.conj() / pivot.norm();
    [v[0] * phase / norm, v[1] * phase / norm]
}
