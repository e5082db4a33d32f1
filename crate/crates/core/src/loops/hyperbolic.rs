//! The hyperbolic space loop over SL2(C)/SU2 (section: positive Hermitian
//! polar factor) and the local one-parameter deformations whose section
//! image is the exponential of the tilted complements.

use num_complex::Complex;

use super::{LoopContext, Scope};
use crate::groups::cmat2::{
    exp_sl2c, hermitian_exp, hermitian_log, mobius_j, polar_decompose_sl2c, CMat2, JQuaternion,
};
use crate::rng::SplitRng;
use crate::{Error, Result};

/// Global loop on the upper half space: x . y = tau_{e,x}(y) with the
/// translation realized as the positive Hermitian factor.
pub struct HyperbolicLoop;

impl LoopContext for HyperbolicLoop {
    type G = CMat2<f64>;

    fn label(&self) -> &str {
        "hyperbolic_space_loop"
    }

    fn section_tag(&self) -> &str {
        "4"
    }

    fn group_mul(&self, a: &Self::G, b: &Self::G) -> Self::G {
        a.mul(b).psl2_canonical()
    }

    fn group_inv(&self, a: &Self::G) -> Self::G {
        a.inv().psl2_canonical()
    }

    fn identity(&self) -> Self::G {
        CMat2::identity()
    }

    fn stabilizer_residual(&self, g: &Self::G) -> f64 {
        let (p, _) = polar_decompose_sl2c(g);
        p.dist(&CMat2::identity())
    }

    fn normal_form(&self, g: &Self::G) -> Self::G {
        polar_decompose_sl2c(g).0
    }

    fn section(&self, rep: &Self::G) -> Self::G {
        *rep
    }

    fn distance(&self, a: &Self::G, b: &Self::G) -> f64 {
        a.psl2_dist(b)
    }

    fn sample_coset(&self, rng: &mut SplitRng) -> Self::G {
        let x = [
            rng.uniform(-1.2, 1.2),
            rng.uniform(-1.2, 1.2),
            rng.uniform(-1.2, 1.2),
        ];
        hermitian_exp(&x)
    }

    fn sample_group(&self, rng: &mut SplitRng) -> Self::G {
        let p = self.sample_coset(rng);
        let u = random_su2(rng);
        p.mul(&u).psl2_canonical()
    }

    fn chart(&self, rep: &Self::G) -> [f64; 3] {
        hermitian_log(rep)
    }

    fn unchart(&self, c: &[f64; 3]) -> Self::G {
        hermitian_exp(c)
    }

    fn is_bol(&self) -> bool {
        true
    }

    fn scope(&self) -> Scope {
        Scope::Global
    }
}

pub fn random_su2(rng: &mut SplitRng) -> CMat2<f64> {
    // su2 = span{iH, iT, U}
    let coords = [
        0.0,
        0.0,
        rng.uniform(-1.5, 1.5),
        rng.uniform(-1.5, 1.5),
        rng.uniform(-1.5, 1.5),
        0.0,
    ];
    exp_sl2c(&CMat2::from_real_coords(&coords))
}

impl HyperbolicLoop {
    /// Upper-half-space point of a loop element.
    pub fn point_of(&self, elem: &CMat2<f64>) -> JQuaternion<f64> {
        mobius_j(elem, &JQuaternion::j())
    }

    /// Loop element moving j to the given point, computed from the point
    /// alone (independent of any existing loop element).
    pub fn elem_of_point(&self, w: &JQuaternion<f64>) -> CMat2<f64> {
        let sy = w.y.sqrt();
        let zero = Complex::new(0.0, 0.0);
        let g = CMat2::new(
            Complex::new(sy, 0.0),
            w.x / sy,
            zero,
            Complex::new(1.0 / sy, 0.0),
        );
        polar_decompose_sl2c(&g).0
    }

    /// Point-level multiplication through the Moebius action; the second,
    /// independent realization of the loop.
    pub fn mobius_route_mul(
        &self,
        wx: &JQuaternion<f64>,
        wy: &JQuaternion<f64>,
    ) -> JQuaternion<f64> {
        let p = self.elem_of_point(wx);
        mobius_j(&p, wy)
    }
}

/// Local loop whose section image is the exponential of the complement
/// spanned by T + aU, iU + a iT, H; sampling stays in a small box because
/// only the local loop exists for a != 0.
pub struct LaLoop {
    pub a: f64,
    /// Coordinate box for local sampling.
    pub box_bound: f64,
    label: String,
}

impl LaLoop {
    pub fn new(a: f64) -> Result<Self> {
        if a.abs() >= 1.0 {
            return Err(Error::Domain(format!(
                "local deformation requires |a| < 1, got {a}"
            )));
        }
        Ok(LaLoop {
            a,
            box_bound: 0.5,
            label: format!("L_a(a={a})"),
        })
    }

    pub fn with_box(mut self, bound: f64) -> Self {
        self.box_bound = bound;
        self
    }

    fn tangent(&self, mu: &[f64; 3]) -> CMat2<f64> {
        // mu1 (T + a U) + mu2 (iU + a iT) + mu3 H over (H,T,U,iH,iT,iU)
        CMat2::from_real_coords(&[
            mu[2],
            mu[0],
            self.a * mu[0],
            0.0,
            self.a * mu[1],
            mu[1],
        ])
    }

    fn exp_section(&self, mu: &[f64; 3]) -> CMat2<f64> {
        exp_sl2c(&self.tangent(mu)).psl2_canonical()
    }

    /// Solves for the section element in the coset of `rep` (a positive
    /// Hermitian canonical representative).
    fn solve_mu(&self, rep: &CMat2<f64>) -> Result<[f64; 3]> {
        let target = hermitian_log(rep);
        let resid = |mu: &[f64; 3]| -> [f64; 3] {
            let p = polar_decompose_sl2c(&self.exp_section(mu)).0;
            let got = hermitian_log(&p);
            [got[0] - target[0], got[1] - target[1], got[2] - target[2]]
        };
        // exact at a = 0: (x1, x2, x3) -> mu = (x2, x3, x1)
        let mut mu = [target[1], target[2], target[0]];
        for _ in 0..60 {
            let f = resid(&mu);
            let err = f.iter().map(|v| v.abs()).fold(0.0, f64::max);
            if err < 1e-13 {
                return Ok(mu);
            }
            let h = 1e-7;
            let mut jac = [[0.0; 3]; 3];
            for j in 0..3 {
                let mut mp = mu;
                mp[j] += h;
                let fp = resid(&mp);
                for i in 0..3 {
                    jac[i][j] = (fp[i] - f[i]) / h;
                }
            }
            let step = super::solve3(&jac, &[-f[0], -f[1], -f[2]])
                .ok_or_else(|| Error::Numerical("section solve: singular Jacobian".into()))?;
            for i in 0..3 {
                mu[i] += step[i];
            }
        }
        let f = resid(&mu);
        let err = f.iter().map(|v| v.abs()).fold(0.0, f64::max);
        if err < 1e-10 {
            Ok(mu)
        } else {
            Err(Error::Numerical(format!(
                "section solve stalled at residual {err:.3e}"
            )))
        }
    }
}

impl LoopContext for LaLoop {
    type G = CMat2<f64>;

    fn label(&self) -> &str {
        &self.label
    }

    fn section_tag(&self) -> &str {
        "4"
    }

    fn group_mul(&self, a: &Self::G, b: &Self::G) -> Self::G {
        a.mul(b).psl2_canonical()
    }

    fn group_inv(&self, a: &Self::G) -> Self::G {
        a.inv().psl2_canonical()
    }

    fn identity(&self) -> Self::G {
        CMat2::identity()
    }

    fn stabilizer_residual(&self, g: &Self::G) -> f64 {
        let (p, _) = polar_decompose_sl2c(g);
        p.dist(&CMat2::identity())
    }

    fn normal_form(&self, g: &Self::G) -> Self::G {
        polar_decompose_sl2c(g).0
    }

    fn section(&self, rep: &Self::G) -> Self::G {
        match self.solve_mu(rep) {
            Ok(mu) => self.exp_section(&mu),
            // out-of-range cosets keep the Hermitian representative; the
            // local checks sample inside the convergence region
            Err(_) => *rep,
        }
    }

    fn distance(&self, a: &Self::G, b: &Self::G) -> f64 {
        a.psl2_dist(b)
    }

    fn sample_coset(&self, rng: &mut SplitRng) -> Self::G {
        let b = self.box_bound;
        let x = [
            rng.uniform(-b, b),
            rng.uniform(-b, b),
            rng.uniform(-b, b),
        ];
        polar_decompose_sl2c(&self.exp_section(&x)).0
    }

    fn sample_group(&self, rng: &mut SplitRng) -> Self::G {
        let p = self.sample_coset(rng);
        p.mul(&random_su2(rng)).psl2_canonical()
    }

    fn chart(&self, rep: &Self::G) -> [f64; 3] {
        self.solve_mu(rep).unwrap_or_else(|_| hermitian_log(rep))
    }

    fn unchart(&self, c: &[f64; 3]) -> Self::G {
        polar_decompose_sl2c(&self.exp_section(c)).0
    }

    fn is_bol(&self) -> bool {
        true
    }

    fn scope(&self) -> Scope {
        Scope::Local
    }
}

#[cfg(test)]
mod tests {
    use super::super::{
        check_bol, check_divisions, check_identity_axioms, loop_mul,
    };
    use super::*;

    #[test]
    fn identity_behaviour_at_points() {
        let ctx = HyperbolicLoop;
        let mut rng = SplitRng::new(3).split("hyp");
        let x = ctx.sample_coset(&mut rng);
        let e = ctx.identity();
        // j . w = w and x . j = x
        assert!(ctx.distance(&loop_mul(&ctx, &e, &x), &x) < 1e-12);
        assert!(ctx.distance(&loop_mul(&ctx, &x, &e), &x) < 1e-12);
        assert!(ctx.point_of(&e).dist(&JQuaternion::j()) < 1e-12);
    }

    #[test]
    fn two_realizations_agree() {
        let ctx = HyperbolicLoop;
        let mut rng = SplitRng::new(4).split("dual");
        for _ in 0..100 {
            let x = ctx.sample_coset(&mut rng);
            let y = ctx.sample_coset(&mut rng);
            let z = loop_mul(&ctx, &x, &y);
            let via_matrices = ctx.point_of(&z);
            let via_points = ctx.mobius_route_mul(&ctx.point_of(&x), &ctx.point_of(&y));
            assert!(via_matrices.dist(&via_points) < 1e-9);
        }
    }

    #[test]
    fn hyperbolic_loop_is_bol() {
        let ctx = HyperbolicLoop;
        let rep = check_bol(&ctx, 60, 7, 1e-8);
        assert!(rep.pass, "max residual {}", rep.max_residual);
    }

    #[test]
    fn la_zero_matches_hyperbolic() {
        let la = LaLoop::new(0.0).unwrap();
        let l0 = HyperbolicLoop;
        let mut rng = SplitRng::new(5).split("la0");
        for _ in 0..20 {
            let x = la.sample_coset(&mut rng);
            let y = la.sample_coset(&mut rng);
            let a = loop_mul(&la, &x, &y);
            let b = loop_mul(&l0, &x, &y);
            assert!(la.distance(&a, &b) < 1e-10);
        }
    }

    #[test]
    fn la_half_is_locally_bol() {
        let la = LaLoop::new(0.5).unwrap();
        let rep = check_identity_axioms(&la, 40, 9, 1e-10);
        assert!(rep.pass, "identity residual {}", rep.max_residual);
        let rep = check_bol(&la, 40, 9, 1e-8);
        assert!(rep.pass, "bol residual {}", rep.max_residual);
        let rep = check_divisions(&la, 30, 9, 1e-9);
        assert!(rep.pass, "division residual {}", rep.max_residual);
    }

    #[test]
    fn la_domain_error() {
        assert!(LaLoop::new(1.0).is_err());
        assert!(LaLoop::new(-1.3).is_err());
    }
}
