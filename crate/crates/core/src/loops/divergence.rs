//! Obstruction to a global section for the slope-one stabilizer on
//! PSL2(R) x R: the coset family forces section elements whose norm blows
//! up along a path of cosets, so no continuous global section can contain
//! the exponential image. The same first components rule out the
//! triangular stabilizer on PSL2(R) ⋉ R^3.

use crate::groups::mat2::Mat2;
use crate::report::VerificationReport;

/// Forced section element of the coset of ((1+c, 1), (c, 1)) for c != -1:
/// the unique symmetric representative ((1+c, c), (c, (c^2+1)/(1+c)))
/// together with the slope coordinate b = (c-1)/(1+c).
pub fn forced_section_element(c: f64) -> (Mat2<f64>, f64) {
    let m = Mat2::new(1.0 + c, c, c, (c * c + 1.0) / (1.0 + c));
    let b = (c - 1.0) / (1.0 + c);
    (m, b)
}

/// Norm of the forced element at c = -1 + 10^{-k} for k = 1..7. The norm
/// grows like 2 * 10^k, so no continuous section through the exponential
/// image exists.
pub fn divergence_report() -> VerificationReport {
    let mut rep = VerificationReport::exact("divergence_demo", "forced_section_norm", "5", true);
    rep.tolerance = 0.0;
    let mut pass = true;
    for k in 1..=7u32 {
        let c = -1.0 + 10f64.powi(-(k as i32));
        let (m, b) = forced_section_element(c);
        let norm = m.norm_inf().max(b.abs());
        // the coset family demonstrates divergence once norms reach 10^k
        let needed = 10f64.powi(k as i32);
        if k >= 3 && norm < needed {
            pass = false;
        }
        rep.details
            .push(format!("c = -1+1e-{k}: |element| = {norm:.6e}"));
    }
    // consistency at c = 0: the forced element is the identity
    let (m0, b0) = forced_section_element(0.0);
    if m0.dist(&Mat2::identity()) > 1e-14 || (b0 + 1.0).abs() > 1e-14 {
        pass = false;
    }
    rep.pass = pass;
    rep.max_residual = if pass { 0.0 } else { 1.0 };
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_element_is_in_the_coset_and_symmetric() {
        // ((1+c, 1), (c, 1)) * (1, b; 0, 1) must be the forced symmetric
        // matrix: membership in the coset of the triangular stabilizer
        for c in [0.0, 0.5, -0.5, 2.0, -0.9] {
            let base = Mat2::new(1.0 + c, 1.0, c, 1.0);
            let (m, b) = forced_section_element(c);
            let shear = Mat2::new(1.0, b, 0.0, 1.0);
            assert!(base.mul(&shear).dist(&m) < 1e-12, "c = {c}");
            assert!(m.is_symmetric(1e-12));
            assert!((m.det() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn norms_blow_up() {
        let rep = divergence_report();
        assert!(rep.pass, "{:?}", rep.details);
        for (k, line) in rep.details.iter().enumerate().take(7) {
            let k = k + 1;
            if k >= 3 {
                // parse back the norm and compare against 10^k
                let v: f64 = line.split("= ").nth(2).unwrap().parse().unwrap();
                assert!(v >= 10f64.powi(k as i32), "k = {k}: {v}");
            }
        }
    }

    #[test]
    fn finite_at_c_zero() {
        let (m, _) = forced_section_element(0.0);
        assert!(m.dist(&Mat2::identity()) < 1e-14);
    }
}
