//! `vacphase modes`: eigenmode table for a medium.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::Error;
use crate::media::GyroelectricTensor;

fn cplx(z: Complex64) -> String {
    format!("{:+.6}{:+.6}i", z.re, z.im)
}

pub fn render(medium: &GyroelectricTensor) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "permittivity tensor (mu = 1):");
    for row in medium.permittivity_matrix() {
        let cells: Vec<String> = row.iter().map(|&z| cplx(z)).collect();
        let _ = writeln!(s, "  [ {} ]", cells.join("  "));
    }
    let _ = writeln!(s, "transverse eigenmodes (axial propagation, e^(-i w t) convention):");
    for mode in medium.transverse_eigenmodes() {
        let _ = writeln!(
            s,
            "  {}  eigenvalue {:.12}  jones ({}, {})",
            mode.handedness,
            mode.eigenvalue,
            cplx(mode.jones[0]),
            cplx(mode.jones[1])
        );
    }
    if medium.eps2() == 0.0 {
        let _ = writeln!(s, "notice: eps2 = 0, degenerate medium; circular basis chosen by convention");
    }
    match medium.refractive_indices() {
        Ok((p, m)) => {
            let _ = writeln!(s, "n_plus  (R) {p:.12}");
            let _ = writeln!(s, "n_minus (L) {m:.12}");
        }
        Err(Error::EvanescentMode { sector, value }) => {
            let sign = if sector == crate::Sector::Right { "+" } else { "-" };
            let _ = writeln!(
                s,
                "advisory: {} evanescent (eps1 {sign} eps2 = {value}); no propagating {sector} mode",
                sector.index_name()
            );
        }
        Err(e) => {
            let _ = writeln!(s, "advisory: {e}");
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gyroelectric_table() {
        let t = render(&GyroelectricTensor::new(2.5, 1.5, 2.0).unwrap());
        assert!(t.contains("n_plus  (R) 2.000000000000"), "{t}");
        assert!(t.contains("n_minus (L) 1.000000000000"), "{t}");
        assert!(!t.contains("degenerate"));
    }

    #[test]
    fn degenerate_notice() {
        let t = render(&GyroelectricTensor::new(2.5, 0.0, 2.0).unwrap());
        assert!(t.contains("degenerate"));
    }

    #[test]
    fn evanescent_advisory() {
        let t = render(&GyroelectricTensor::new(1.0, 2.0, 1.0).unwrap());
        assert!(t.contains("advisory: n_minus evanescent (eps1 - eps2 = -1)"), "{t}");
    }
}
