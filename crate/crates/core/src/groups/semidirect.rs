//! The group PSL2(R) ⋉ R^3: pairs (A, X) with X traceless, multiplication
//! (A1, X1)(A2, X2) = (A1 A2, A2^{-1} X1 A2 + X2). Contains the closed-form
//! exponential (translation component solved in the g1/g2 kernel basis),
//! a Runge-Kutta oracle for it, and the unique m-h factorization that
//! powers the pseudo-euclidean loop.

use num_traits::Float;

use super::mat2::{
    exp_sl2, polar_decompose, sinhc_like, spd_log, Mat2,
};
use crate::tol;

/// Element (A, X) of PSL2(R) ⋉ R^3; A carries det 1 and X is traceless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Semidirect<F> {
    pub a: Mat2<F>,
    pub x: Mat2<F>,
}

impl<F: Float> Semidirect<F> {
    pub fn new(a: Mat2<F>, x: Mat2<F>) -> Self {
        Semidirect {
            a: a.psl2_canonical(),
            x,
        }
    }

    pub fn identity() -> Self {
        Semidirect {
            a: Mat2::identity(),
            x: Mat2::zero(),
        }
    }

    /// Translation part from (x, y, z) coordinates: [[x, y+z], [y-z, -x]].
    pub fn translation_from_xyz(v: [F; 3]) -> Mat2<F> {
        Mat2::new(v[0], v[1] + v[2], v[1] - v[2], -v[0])
    }

    /// (x, y, z) coordinates of a traceless translation part.
    pub fn translation_xyz(x: &Mat2<F>) -> [F; 3] {
        let two = F::one() + F::one();
        [
            x.m[0],
            (x.m[1] + x.m[2]) / two,
            (x.m[1] - x.m[2]) / two,
        ]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = self.a.mul(&o.a);
        let conj = o.a.inv().mul(&self.x).mul(&o.a);
        Semidirect::new(a, conj.add(&o.x))
    }

    pub fn inv(&self) -> Self {
        let ainv = self.a.inv();
        let x = self.a.mul(&self.x).mul(&ainv).scale(-F::one());
        Semidirect::new(ainv, x)
    }

    pub fn dist(&self, o: &Self) -> F {
        self.a.psl2_dist(&o.a).max(self.x.dist(&o.x))
    }

    pub fn norm_inf(&self) -> F {
        self.a.norm_inf().max(self.x.norm_inf())
    }

    /// Deviation from the stabilizer H = {(rotation, symmetric translation)}:
    /// the polar symmetric part of A must be the identity and the
    /// antisymmetric part of X must vanish.
    pub fn stabilizer_residual(&self) -> F {
        let (p, _) = polar_decompose(&self.a);
        let two = F::one() + F::one();
        let asym = (self.x.m[1] - self.x.m[2]) / two;
        p.dist(&Mat2::identity()).max(asym.abs())
    }
}

/// (sinh(sqrt w) - sqrt w) / w^{3/2}, analytic in w; the sin branch is
/// taken for w < 0. Series below |w| = 1/4 keeps the subtraction stable.
fn sinh_rem<F: Float>(w: F) -> F {
    if w.abs() < F::from(0.25).unwrap() {
        // sum_j w^j / (2j+3)!
        let mut acc = F::one() / F::from(6).unwrap();
        let mut term = acc;
        for j in 1..=10u32 {
            let f1 = F::from(2 * j + 2).unwrap();
            let f2 = F::from(2 * j + 3).unwrap();
            term = term * w / (f1 * f2);
            acc = acc + term;
        }
        acc
    } else if w > F::zero() {
        let s = w.sqrt();
        (s.sinh() - s) / (w * s)
    } else {
        let s = (-w).sqrt();
        (s - s.sin()) / ((-w) * s)
    }
}

/// (cosh(sqrt w) - 1) / w, analytic in w.
fn cosh_rem<F: Float>(w: F) -> F {
    if w.abs() < F::from(0.25).unwrap() {
        // sum_j w^j / (2j+2)!
        let mut acc = F::one() / F::from(2).unwrap();
        let mut term = acc;
        for j in 1..=10u32 {
            let f1 = F::from(2 * j + 1).unwrap();
            let f2 = F::from(2 * j + 2).unwrap();
            term = term * w / (f1 * f2);
            acc = acc + term;
        }
        acc
    } else if w > F::zero() {
        (w.sqrt().cosh() - F::one()) / w
    } else {
        (F::one() - (-w).sqrt().cos()) / (-w)
    }
}

/// Degree-6 Taylor branch of g1 in delta.
pub(crate) fn g1_series<F: Float>(delta: F, t: F) -> F {
    // sum_k 2^{2k+1} delta^k t^{2k+3} / (2k+3)!
    let mut acc = F::zero();
    let mut term = t * t * t / F::from(3).unwrap();
    acc = acc + term;
    for k in 1..=6u32 {
        let f1 = F::from(2 * k + 2).unwrap();
        let f2 = F::from(2 * k + 3).unwrap();
        term = term * F::from(4).unwrap() * delta * t * t / (f1 * f2);
        acc = acc + term;
    }
    acc
}

pub(crate) fn g1_closed<F: Float>(delta: F, t: F) -> F {
    // (sinh(2 sqrt(d) t) - 2 sqrt(d) t) / (4 d^{3/2}) = 2 t^3 sinh_rem(4 d t^2)
    let two = F::one() + F::one();
    two * t * t * t * sinh_rem(F::from(4).unwrap() * delta * t * t)
}

/// Degree-6 Taylor branch of g2 in delta.
pub(crate) fn g2_series<F: Float>(delta: F, t: F) -> F {
    // sum_k 4^k delta^k t^{2k+2} / (2k+2)!
    let mut acc = F::zero();
    let mut term = t * t / F::from(2).unwrap();
    acc = acc + term;
    for k in 1..=6u32 {
        let f1 = F::from(2 * k + 1).unwrap();
        let f2 = F::from(2 * k + 2).unwrap();
        term = term * F::from(4).unwrap() * delta * t * t / (f1 * f2);
        acc = acc + term;
    }
    acc
}

pub(crate) fn g2_closed<F: Float>(delta: F, t: F) -> F {
    // sinh^2(sqrt(d) t) / (2 d) = (cosh(2 sqrt(d) t) - 1) / (4 d) = t^2 cosh_rem(4 d t^2)
    t * t * cosh_rem(F::from(4).unwrap() * delta * t * t)
}

/// g1(delta, t) = (sinh(2 sqrt(d) t) - 2 sqrt(d) t) / (4 d^{3/2}) and
/// g2(delta, t) = sinh^2(sqrt(d) t) / (2 d), both analytic in delta.
/// They satisfy g1' = 2 g2 and g2' = 2 delta g1 + t, which is what makes
/// the translation component of the exponential close in this basis.
pub fn g1_kernel<F: Float>(delta: F, t: F) -> F {
    if delta.abs() < F::from(tol::SERIES_SEAM).unwrap() {
        g1_series(delta, t)
    } else {
        g1_closed(delta, t)
    }
}

pub fn g2_kernel<F: Float>(delta: F, t: F) -> F {
    if delta.abs() < F::from(tol::SERIES_SEAM).unwrap() {
        g2_series(delta, t)
    } else {
        g2_closed(delta, t)
    }
}

/// Exponential at time `t` of (X1, X2). The translation component is
/// Y(t) = t X2 + C1 g1 + C2 g2 with the coefficient vectors fixed by
/// Y'(0) = X2 and the system Y' = Y X1 - X1 Y + X2.
pub fn exp_semidirect_general_t<F: Float>(x1: &Mat2<F>, x2: &Mat2<F>, t: F) -> Semidirect<F> {
    let (a, b, c) = (x1.m[0], x1.m[1], x1.m[2]);
    let (k, u, y) = (x2.m[0], x2.m[1], x2.m[2]);
    let two = F::one() + F::one();
    let delta = a * a + b * c;
    let g1 = g1_kernel(delta, t);
    let g2 = g2_kernel(delta, t);

    let c2r = c * u - b * y;
    let c2s = two * (b * k - a * u);
    let c2v = two * (a * y - c * k);
    let c1r = (c * c2s - b * c2v) / two;
    let c1s = b * c2r - a * c2s;
    let c1v = a * c2v - c * c2r;

    let r = k * t + c1r * g1 + c2r * g2;
    let s = u * t + c1s * g1 + c2s * g2;
    let v = y * t + c1v * g1 + c2v * g2;

    let beta = exp_sl2(&x1.scale(t));
    Semidirect::new(beta, Mat2::new(r, s, v, -r))
}

pub fn exp_semidirect_general<F: Float>(x1: &Mat2<F>, x2: &Mat2<F>) -> Semidirect<F> {
    exp_semidirect_general_t(x1, x2, F::one())
}

/// Exponential of the tangent complement coordinates (l1, l2, l3):
/// X1 = l2 H + l3 T (symmetric part), X2 = l1 [[0,-1],[1,0]].
pub fn exp_semidirect<F: Float>(l1: F, l2: F, l3: F) -> Semidirect<F> {
    let x1 = Mat2::from_htu(l2, l3, F::zero());
    let x2 = Mat2::new(F::zero(), -l1, l1, F::zero());
    exp_semidirect_general(&x1, &x2)
}

/// Classical RK4 integration of the translation system
///   r' = -b v + c s + k,  s' = 2(b r - a s) + u,  v' = 2(a v - c r) + y
/// together with the first component; test oracle for the closed form.
pub fn ode_exp_oracle<F: Float>(x1: &Mat2<F>, x2: &Mat2<F>, steps: usize) -> Semidirect<F> {
    assert!(steps >= 1000, "oracle needs at least 1000 steps");
    let (a, b, c) = (x1.m[0], x1.m[1], x1.m[2]);
    let (k, u, yy) = (x2.m[0], x2.m[1], x2.m[2]);
    let two = F::one() + F::one();
    let deriv = |st: [F; 3]| -> [F; 3] {
        let (r, s, v) = (st[0], st[1], st[2]);
        [
            -b * v + c * s + k,
            two * (b * r - a * s) + u,
            two * (a * v - c * r) + yy,
        ]
    };
    let h = F::one() / F::from(steps).unwrap();
    let six = F::from(6).unwrap();
    let mut st = [F::zero(); 3];
    for _ in 0..steps {
        let k1 = deriv(st);
        let k2 = deriv(add3(st, scale3(k1, h / two)));
        let k3 = deriv(add3(st, scale3(k2, h / two)));
        let k4 = deriv(add3(st, scale3(k3, h)));
        for i in 0..3 {
            st[i] = st[i] + h / six * (k1[i] + two * k2[i] + two * k3[i] + k4[i]);
        }
    }
    let beta = super::mat2::exp_rk4_oracle(x1, steps);
    Semidirect::new(beta, Mat2::new(st[0], st[1], st[2], -st[0]))
}

fn add3<F: Float>(a: [F; 3], b: [F; 3]) -> [F; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale3<F: Float>(a: [F; 3], s: F) -> [F; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// Unique factorization g = exp(l1, l2, l3) h with h in the stabilizer
/// (rotation part, symmetric translation part). Returns the tangent
/// coordinates and the stabilizer factor.
pub fn factor_pseudo_euclidean<F: Float>(g: &Semidirect<F>) -> ([F; 3], Semidirect<F>) {
    // symmetric positive polar factor of the PSL2 part fixes (l2, l3)
    let (p, _) = polar_decompose(&g.a.psl2_canonical());
    let (l2, l3) = spd_log(&p);
    // the antisymmetric translation component fixes l1
    let two = F::one() + F::one();
    let u = (g.x.m[1] - g.x.m[2]) / two;
    let asq = l2 * l2 + l3 * l3;
    // l1 = -4 u sqrt(A) / (e^{2 sqrt A} - e^{-2 sqrt A}) = -u / sinhc(4A)
    let l1 = -u / sinhc_like(F::from(4).unwrap() * asq);
    let m = exp_semidirect(l1, l2, l3);
    let h = m.inv().mul(g);
    ([l1, l2, l3], h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitRng;

    type S = Semidirect<f64>;

    fn random_x(rng: &mut SplitRng, bound: f64) -> (Mat2<f64>, Mat2<f64>) {
        let x1 = Mat2::from_htu(
            rng.uniform(-bound, bound),
            rng.uniform(-bound, bound),
            rng.uniform(-bound, bound),
        );
        let x2 = Semidirect::<f64>::translation_from_xyz([
            rng.uniform(-bound, bound),
            rng.uniform(-bound, bound),
            rng.uniform(-bound, bound),
        ]);
        (x1, x2)
    }

    #[test]
    fn identity_and_inverse() {
        let mut rng = SplitRng::new(11).split("semi");
        for _ in 0..20 {
            let (x1, x2) = random_x(&mut rng, 1.5);
            let g = exp_semidirect_general(&x1, &x2);
            assert!(g.mul(&S::identity()).dist(&g) < 1e-14);
            assert!(S::identity().mul(&g).dist(&g) < 1e-14);
            assert!(g.mul(&g.inv()).dist(&S::identity()) < 1e-10);
            assert!(g.inv().mul(&g).dist(&S::identity()) < 1e-10);
        }
    }

    #[test]
    fn associativity() {
        let mut rng = SplitRng::new(12).split("assoc");
        for _ in 0..20 {
            let (x1, x2) = random_x(&mut rng, 1.0);
            let (y1, y2) = random_x(&mut rng, 1.0);
            let (z1, z2) = random_x(&mut rng, 1.0);
            let g = exp_semidirect_general(&x1, &x2);
            let h = exp_semidirect_general(&y1, &y2);
            let k = exp_semidirect_general(&z1, &z2);
            let lhs = g.mul(&h).mul(&k);
            let rhs = g.mul(&h.mul(&k));
            assert!(lhs.dist(&rhs) < 1e-10);
        }
    }

    #[test]
    fn rotation_commutes_with_antisymmetric_translation() {
        // (A1, X1)(A2, X2) with A2 a rotation and X1 antisymmetric leaves
        // the conjugated part unchanged: translation is X1 + X2.
        let u = 0.8;
        let x1 = Mat2::new(0.0, u, -u, 0.0);
        let g1 = S::new(Mat2::identity(), x1);
        let (k, l) = (0.3, -0.9);
        let g2 = S::new(Mat2::rotation(1.2), Mat2::new(k, l, l, -k));
        let prod = g1.mul(&g2);
        let want = Mat2::new(k, u + l, l - u, -k);
        assert!(prod.x.dist(&want) < 1e-14);
    }

    #[test]
    fn exp_zero_x1_is_pure_translation() {
        let x2 = S::translation_from_xyz([0.4, -0.7, 0.2]);
        let g = exp_semidirect_general(&Mat2::zero(), &x2);
        assert!(g.a.dist(&Mat2::identity()) < 1e-14);
        assert!(g.x.dist(&x2) < 1e-14);
    }

    #[test]
    fn exp_one_parameter_property() {
        let mut rng = SplitRng::new(13).split("onep");
        for _ in 0..30 {
            let (x1, x2) = random_x(&mut rng, 1.5);
            let g = exp_semidirect_general(&x1, &x2);
            let gm = exp_semidirect_general(&x1.scale(-1.0), &x2.scale(-1.0));
            assert!(g.mul(&gm).dist(&S::identity()) < 1e-10);
            // subgroup property at half parameter
            let gh = exp_semidirect_general_t(&x1, &x2, 0.5);
            assert!(gh.mul(&gh).dist(&g) < 1e-10);
        }
    }

    #[test]
    fn exp_matches_oracle() {
        let mut rng = SplitRng::new(14).split("oracle");
        for _ in 0..25 {
            let (x1, x2) = random_x(&mut rng, 2.0);
            let e = exp_semidirect_general(&x1, &x2);
            let o = ode_exp_oracle(&x1, &x2, 4000);
            let rel = e.dist(&o) / (1.0 + o.norm_inf());
            assert!(rel < 1e-9, "relative deviation {rel}");
        }
    }

    #[test]
    fn oracle_convergence_is_fourth_order() {
        let x1 = Mat2::from_htu(0.9, -0.4, 0.3);
        let x2 = S::translation_from_xyz([0.5, 0.2, -0.8]);
        let fine = ode_exp_oracle(&x1, &x2, 64000);
        let e1 = ode_exp_oracle(&x1, &x2, 1000).dist(&fine);
        let e2 = ode_exp_oracle(&x1, &x2, 2000).dist(&fine);
        let ratio = e1 / e2;
        assert!(ratio > 8.0, "ratio {ratio}"); // ~16 for clean RK4
    }

    #[test]
    fn exp_derivative_at_zero() {
        let x1 = Mat2::from_htu(0.7, -0.2, 0.4);
        let x2 = S::translation_from_xyz([-0.3, 0.6, 0.1]);
        let h = 1e-5;
        let gp = exp_semidirect_general_t(&x1, &x2, h);
        let gm = exp_semidirect_general_t(&x1, &x2, -h);
        let da = gp.a.sub(&gm.a).scale(1.0 / (2.0 * h));
        let dx = gp.x.sub(&gm.x).scale(1.0 / (2.0 * h));
        assert!(da.dist(&x1) < 1e-7);
        assert!(dx.dist(&x2) < 1e-7);
    }

    #[test]
    fn near_parabolic_seam() {
        // delta = a^2 + bc straddling the series window
        for eps in [0.9e-6, -0.9e-6, 1.1e-6, -1.1e-6] {
            let a = 0.5_f64;
            let b = 1.0;
            let c = (eps - a * a) / b;
            let x1 = Mat2::new(a, b, c, -a);
            let x2 = S::translation_from_xyz([0.3, -0.5, 0.7]);
            let e = exp_semidirect_general(&x1, &x2);
            let o = ode_exp_oracle(&x1, &x2, 4000);
            assert!(e.dist(&o) / (1.0 + o.norm_inf()) < 1e-9, "eps = {eps}");
        }
        // the two branches agree at the seam itself
        for d in [1.0e-6, -1.0e-6, 0.5e-6, -2.0e-6] {
            for t in [0.3, 1.0, 1.7] {
                assert!((g1_series(d, t) - g1_closed(d, t)).abs() < 1e-11);
                assert!((g2_series(d, t) - g2_closed(d, t)).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn tangent_exp_fixed_values() {
        // (l1, l2, l3) = (1, 1, 0): A = 1, the translation part follows the
        // closed form with Phi = e^2 - e^{-2}, Psi = (e - e^{-1})^2.
        let g = exp_semidirect(1.0, 1.0, 0.0);
        let phi = (2.0_f64).exp() - (-2.0_f64).exp();
        let psi = {
            let w = 1.0_f64.exp() - (-1.0_f64).exp();
            w * w
        };
        let r = 0.0;
        let s = -phi / 4.0 + psi / 4.0;
        let v = phi / 4.0 + psi / 4.0;
        assert!((g.x.m[0] - r).abs() < 1e-12);
        assert!((g.x.m[1] - s).abs() < 1e-12, "s = {} want {}", g.x.m[1], s);
        assert!((g.x.m[2] - v).abs() < 1e-12);
        // and the oracle agrees: the tangent coordinates have
        // X2 = l1 [[0,-1],[1,0]], i.e. (x, y, z) = (0, 0, -l1)
        let x1 = Mat2::from_htu(1.0, 0.0, 0.0);
        let x2 = Semidirect::<f64>::translation_from_xyz([0.0, 0.0, -1.0]);
        let o = ode_exp_oracle(&x1, &x2, 8000);
        assert!(g.dist(&o) < 1e-9);
    }

    #[test]
    fn factorization_roundtrip_and_uniqueness_equation() {
        let mut rng = SplitRng::new(15).split("factor");
        for _ in 0..40 {
            let (x1, x2) = random_x(&mut rng, 1.2);
            let g = exp_semidirect_general(&x1, &x2);
            let (lam, h) = factor_pseudo_euclidean(&g);
            // h is in the stabilizer and m h reconstructs g
            assert!(h.stabilizer_residual() < 1e-10);
            let m = exp_semidirect(lam[0], lam[1], lam[2]);
            assert!(m.mul(&h).dist(&g) < 1e-10);
            // the antisymmetric translation equation ties u to l1
            let u = (g.x.m[1] - g.x.m[2]) / 2.0;
            let asq: f64 = lam[1] * lam[1] + lam[2] * lam[2];
            let sa = asq.sqrt();
            let rhs = if sa > 1e-8 {
                -lam[0] / (4.0 * sa) * ((2.0 * sa).exp() - (-2.0 * sa).exp())
            } else {
                -lam[0]
            };
            assert!((2.0 * u - 2.0 * rhs).abs() < 1e-9);
        }
    }

    #[test]
    fn factorization_of_identity_and_section_image() {
        let (lam, h) = factor_pseudo_euclidean(&S::identity());
        assert!(lam.iter().all(|v| v.abs() < 1e-12));
        assert!(h.dist(&S::identity()) < 1e-12);
        let m = exp_semidirect(0.7, -0.4, 0.9);
        let (lam2, h2) = factor_pseudo_euclidean(&m);
        assert!((lam2[0] - 0.7).abs() < 1e-10);
        assert!((lam2[1] + 0.4).abs() < 1e-10);
        assert!((lam2[2] - 0.9).abs() < 1e-10);
        assert!(h2.dist(&S::identity()) < 1e-10);
    }
}
