//! Matrix exponential by scaling and squaring with diagonal Padé
//! approximants of degree 3, 5, 7, 9 or 13 (Higham 2005).

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest accepted dimension.
pub const MAX_DIMENSION: usize = 1024;

const THETA: [(usize, f64); 4] = [
    (3, 1.495_585_217_958_292e-2),
    (5, 2.539_398_330_063_23e-1),
    (7, 9.504_178_996_162_932e-1),
    (9, 2.097_847_961_257_068),
];
const THETA_13: f64 = 5.371_920_351_148_152;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [17_297_280.0, 8_648_640.0, 1_995_840.0, 277_200.0, 25_200.0, 1512.0, 56.0, 1.0];
const B9: [f64; 10] = [
    17_643_225_600.0,
    8_821_612_800.0,
    2_075_673_600.0,
    302_702_400.0,
    30_270_240.0,
    2_162_160.0,
    110_880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// `exp(a)` for a square complex matrix.
pub fn matrix_exponential(a: &Array2<Complex64>) -> Result<Array2<Complex64>> {
    let (rows, cols) = a.dim();
    if rows != cols {
        return Err(Error::DimensionMismatch(format!("expected a square matrix, got {rows}x{cols}")));
    }
    if rows > MAX_DIMENSION {
        return Err(Error::DimensionMismatch(format!(
            "dimension {rows} exceeds the supported maximum {MAX_DIMENSION}"
        )));
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    let n = rows;
    if n == 0 {
        return Ok(Array2::zeros((0, 0)));
    }
    if a.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
        return Ok(Array2::eye(n));
    }

    let norm = one_norm(a);
    for &(m, theta) in &THETA {
        if norm <= theta {
            let (u, v) = pade_low(a, m);
            return solve_pade(&u, &v);
        }
    }

    let s = if norm > THETA_13 { (norm / THETA_13).log2().ceil() as i32 } else { 0 };
    let scaled = a.mapv(|z| z * 2f64.powi(-s));
    let (u, v) = pade13(&scaled);
    let mut result = solve_pade(&u, &v)?;
    for _ in 0..s {
        result = result.dot(&result);
    }
    Ok(result)
}

fn one_norm(a: &Array2<Complex64>) -> f64 {
    a.columns().into_iter().map(|c| c.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

fn identity_scaled(n: usize, c: f64) -> Array2<Complex64> {
    Array2::from_diag_elem(n, Complex64::new(c, 0.0))
}

/// Odd and even parts `(U, V)` of the degree-`m` approximant, m ∈ {3,5,7,9}.
fn pade_low(a: &Array2<Complex64>, m: usize) -> (Array2<Complex64>, Array2<Complex64>) {
    let b: &[f64] = match m {
        3 => &B3,
        5 => &B5,
        7 => &B7,
        9 => &B9,
        _ => unreachable!("unsupported Padé degree {m}"),
    };
    let n = a.nrows();
    let a2 = a.dot(a);
    // Even powers A^0, A^2, ..., A^(m-1).
    let mut powers = vec![Array2::eye(n), a2.clone()];
    while powers.len() < m.div_ceil(2) {
        let next = powers.last().unwrap().dot(&a2);
        powers.push(next);
    }
    let mut odd = Array2::zeros((n, n));
    let mut even = Array2::zeros((n, n));
    for (k, p) in powers.iter().enumerate() {
        odd = odd + p.mapv(|z| z * b[2 * k + 1]);
        even = even + p.mapv(|z| z * b[2 * k]);
    }
    (a.dot(&odd), even)
}

fn pade13(a: &Array2<Complex64>) -> (Array2<Complex64>, Array2<Complex64>) {
    let n = a.nrows();
    let b = &B13;
    let a2 = a.dot(a);
    let a4 = a2.dot(&a2);
    let a6 = a4.dot(&a2);
    let sc = |m: &Array2<Complex64>, c: f64| m.mapv(|z| z * c);

    let inner_u = sc(&a6, b[13]) + sc(&a4, b[11]) + sc(&a2, b[9]);
    let u = a.dot(
        &(a6.dot(&inner_u) + sc(&a6, b[7]) + sc(&a4, b[5]) + sc(&a2, b[3]) + identity_scaled(n, b[1])),
    );
    let inner_v = sc(&a6, b[12]) + sc(&a4, b[10]) + sc(&a2, b[8]);
    let v = a6.dot(&inner_v) + sc(&a6, b[6]) + sc(&a4, b[4]) + sc(&a2, b[2]) + identity_scaled(n, b[0]);
    (u, v)
}

/// Solves `(V - U) X = V + U`.
fn solve_pade(u: &Array2<Complex64>, v: &Array2<Complex64>) -> Result<Array2<Complex64>> {
    let q = v - u;
    let p = v + u;
    lu_solve(q, p)
}

/// Gaussian elimination with partial pivoting, solving for all columns of `rhs`.
fn lu_solve(mut a: Array2<Complex64>, mut rhs: Array2<Complex64>) -> Result<Array2<Complex64>> {
    let n = a.nrows();
    let m = rhs.ncols();
    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&i, &j| a[[i, k]].norm().total_cmp(&a[[j, k]].norm()))
            .expect("non-empty pivot range");
        if a[[pivot_row, k]].norm() == 0.0 {
            return Err(Error::NonFinite);
        }
        if pivot_row != k {
            for c in 0..n {
                a.swap([k, c], [pivot_row, c]);
            }
            for c in 0..m {
                rhs.swap([k, c], [pivot_row, c]);
            }
        }
        let pivot = a[[k, k]];
        for i in (k + 1)..n {
            let factor = a[[i, k]] / pivot;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for c in k..n {
                let t = a[[k, c]];
                a[[i, c]] -= factor * t;
            }
            for c in 0..m {
                let t = rhs[[k, c]];
                rhs[[i, c]] -= factor * t;
            }
        }
    }
    for k in (0..n).rev() {
        let pivot = a[[k, k]];
        for c in 0..m {
            let mut acc = rhs[[k, c]];
            for j in (k + 1)..n {
                acc -= a[[k, j]] * rhs[[j, c]];
            }
            rhs[[k, c]] = acc / pivot;
        }
    }
    if rhs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(rhs)
}
