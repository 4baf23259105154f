//! The fixed-total block operators against the full two-mode space.
//!
//! The oracle builds truncated ladder operators, forms S₊ = a_R† a_L by
//! Kronecker products and exponentiates with nalgebra, then checks that the
//! result never couples different photon totals and that each block equals
//! the library's dressing operator.

use nalgebra::DMatrix;
use num_complex::Complex64;

use vacphase::fock::{self, FockBlock};

const CUTOFF: usize = 6;

fn annihilation(cutoff: usize) -> DMatrix<Complex64> {
    let d = cutoff + 1;
    let mut a = DMatrix::zeros(d, d);
    for n in 1..d {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    a
}

fn full_index(n_r: usize, n_l: usize) -> usize {
    n_r * (CUTOFF + 1) + n_l
}

fn full_dressing(theta: f64, phi: f64) -> DMatrix<Complex64> {
    let a = annihilation(CUTOFF);
    let id = DMatrix::<Complex64>::identity(CUTOFF + 1, CUTOFF + 1);
    let a_r = a.kronecker(&id);
    let a_l = id.kronecker(&a);
    let s_plus = a_r.adjoint() * &a_l;
    let s_minus = s_plus.adjoint();
    let beta = Complex64::from_polar(-theta / 2.0, -phi);
    (s_plus * beta - s_minus * beta.conj()).exp()
}

#[test]
fn block_dressing_matches_full_space() {
    for &(theta, phi) in &[(0.3, 0.0), (0.927_295_218_001_612_2, 1.1), (2.5, -2.0), (3.1, 3.0)] {
        let full = full_dressing(theta, phi);
        for n in 0..=CUTOFF {
            let block = FockBlock::new(n);
            let v = fock::dressing(block, theta, phi).unwrap();
            for j in 0..block.dimension() {
                let (r_j, l_j) = block.occupation(j);
                for k in 0..block.dimension() {
                    let (r_k, l_k) = block.occupation(k);
                    let want = full[(full_index(r_j, l_j), full_index(r_k, l_k))];
                    let got = v[[j, k]];
                    assert!((got - want).norm() < 1e-12, "n={n} ({j},{k}): {got} vs {want}");
                }
            }
        }
    }
}

#[test]
fn dressing_preserves_photon_total() {
    let full = full_dressing(1.2, 0.7);
    for r1 in 0..=CUTOFF {
        for l1 in 0..=CUTOFF - r1 {
            for r2 in 0..=CUTOFF {
                for l2 in 0..=CUTOFF - r2 {
                    if r1 + l1 != r2 + l2 {
                        let z = full[(full_index(r1, l1), full_index(r2, l2))];
                        assert!(z.norm() < 1e-13, "|{r1},{l1}> <-> |{r2},{l2}>: {z}");
                    }
                }
            }
        }
    }
}

#[test]
fn block_spin_operators_match_full_space() {
    let a = annihilation(CUTOFF);
    let id = DMatrix::<Complex64>::identity(CUTOFF + 1, CUTOFF + 1);
    let a_r = a.kronecker(&id);
    let a_l = id.kronecker(&a);
    let s_plus = a_r.adjoint() * &a_l;
    let s3 = (a_r.adjoint() * &a_r - a_l.adjoint() * &a_l) * Complex64::new(0.5, 0.0);
    for n in 0..=CUTOFF {
        let block = FockBlock::new(n);
        let ops = fock::spin_ops(block);
        for j in 0..block.dimension() {
            let (r_j, l_j) = block.occupation(j);
            for k in 0..block.dimension() {
                let (r_k, l_k) = block.occupation(k);
                let (fj, fk) = (full_index(r_j, l_j), full_index(r_k, l_k));
                assert!((ops.plus.matrix[[j, k]] - s_plus[(fj, fk)]).norm() < 1e-14);
                assert!((ops.s3.matrix[[j, k]] - s3[(fj, fk)]).norm() < 1e-14);
            }
        }
    }
}
