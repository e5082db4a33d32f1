//! Complex 2x2 kernels: SL2(C)/PSL2(C) representatives, the closed-form
//! exponential, Hermitian polar decomposition, and the linear fractional
//! action on the upper half space in quaternion form.

use num_complex::Complex;
use num_traits::Float;

use crate::tol;

pub type C<F> = Complex<F>;

/// Row-major complex 2x2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat2<F> {
    pub m: [C<F>; 4],
}

impl<F: Float> CMat2<F> {
    pub fn new(a: C<F>, b: C<F>, c: C<F>, d: C<F>) -> Self {
        CMat2 { m: [a, b, c, d] }
    }

    pub fn identity() -> Self {
        CMat2::new(
            C::new(F::one(), F::zero()),
            C::new(F::zero(), F::zero()),
            C::new(F::zero(), F::zero()),
            C::new(F::one(), F::zero()),
        )
    }

    pub fn zero() -> Self {
        let z = C::new(F::zero(), F::zero());
        CMat2::new(z, z, z, z)
    }

    /// Traceless matrix from real coordinates over (H, T, U, iH, iT, iU).
    pub fn from_real_coords(c6: &[F; 6]) -> Self {
        let a = C::new(c6[0], c6[3]);
        let t = C::new(c6[1], c6[4]);
        let u = C::new(c6[2], c6[5]);
        CMat2::new(a, t + u, t - u, -a)
    }

    /// Real coordinates over (H, T, U, iH, iT, iU) of a traceless matrix.
    pub fn real_coords(&self) -> [F; 6] {
        let two = F::one() + F::one();
        let h = (self.m[0] - self.m[3]) / C::new(two, F::zero());
        let t = (self.m[1] + self.m[2]) / C::new(two, F::zero());
        let u = (self.m[1] - self.m[2]) / C::new(two, F::zero());
        [h.re, t.re, u.re, h.im, t.im, u.im]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let [a, b, c, d] = self.m;
        let [p, q, r, s] = o.m;
        CMat2::new(a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)
    }

    pub fn add(&self, o: &Self) -> Self {
        CMat2::new(
            self.m[0] + o.m[0],
            self.m[1] + o.m[1],
            self.m[2] + o.m[2],
            self.m[3] + o.m[3],
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        CMat2::new(
            self.m[0] - o.m[0],
            self.m[1] - o.m[1],
            self.m[2] - o.m[2],
            self.m[3] - o.m[3],
        )
    }

    pub fn scale_re(&self, s: F) -> Self {
        let sc = C::new(s, F::zero());
        CMat2::new(self.m[0] * sc, self.m[1] * sc, self.m[2] * sc, self.m[3] * sc)
    }

    pub fn det(&self) -> C<F> {
        self.m[0] * self.m[3] - self.m[1] * self.m[2]
    }

    pub fn trace(&self) -> C<F> {
        self.m[0] + self.m[3]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        CMat2::new(
            self.m[0].conj(),
            self.m[2].conj(),
            self.m[1].conj(),
            self.m[3].conj(),
        )
    }

    pub fn inv(&self) -> Self {
        let d = self.det();
        CMat2::new(
            self.m[3] / d,
            -self.m[1] / d,
            -self.m[2] / d,
            self.m[0] / d,
        )
    }

    pub fn norm_inf(&self) -> F {
        self.m
            .iter()
            .fold(F::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn dist(&self, o: &Self) -> F {
        self.sub(o).norm_inf()
    }

    /// PSL2(C) representative: the first entry above the scale threshold
    /// gets positive real part (positive imaginary part when its real part
    /// vanishes).
    pub fn psl2_canonical(&self) -> Self {
        let scale = self.norm_inf();
        if scale.is_zero() {
            return *self;
        }
        let eps = F::from(1e-12).unwrap() * scale;
        for z in self.m.iter() {
            if z.norm() > eps {
                let flip = if z.re.abs() > eps {
                    z.re < F::zero()
                } else {
                    z.im < F::zero()
                };
                return if flip { self.scale_re(-F::one()) } else { *self };
            }
        }
        *self
    }

    pub fn psl2_dist(&self, o: &Self) -> F {
        self.sub(o).norm_inf().min(self.add(o).norm_inf())
    }

    pub fn is_hermitian(&self, tol: F) -> bool {
        self.m[0].im.abs() <= tol
            && self.m[3].im.abs() <= tol
            && (self.m[1] - self.m[2].conj()).norm() <= tol
    }

    pub fn is_unitary(&self, tol: F) -> bool {
        self.mul(&self.adjoint()).dist(&Self::identity()) <= tol
    }
}

/// Closed-form exponential of a traceless complex 2x2 matrix; same formula
/// as the real case, evaluated with the complex square root.
pub fn exp_sl2c<F: Float>(x: &CMat2<F>) -> CMat2<F> {
    let delta = -x.det();
    let (c, s) = cosh_sinhc_complex(delta);
    let id = CMat2::identity();
    CMat2::new(
        c * id.m[0] + s * x.m[0],
        s * x.m[1],
        s * x.m[2],
        c * id.m[3] + s * x.m[3],
    )
}

fn cosh_sinhc_complex<F: Float>(delta: C<F>) -> (C<F>, C<F>) {
    let seam = F::from(tol::SERIES_SEAM).unwrap();
    if delta.norm() < seam {
        let one = C::new(F::one(), F::zero());
        let mut ch = one;
        let mut sh = one;
        let mut term_c = one;
        let mut term_s = one;
        for k in 1..=6u32 {
            let c1 = F::from(2 * k - 1).unwrap();
            let c2 = F::from(2 * k).unwrap();
            let c3 = F::from(2 * k + 1).unwrap();
            term_c = term_c * delta / C::new(c1 * c2, F::zero());
            term_s = term_s * delta / C::new(c2 * c3, F::zero());
            ch = ch + term_c;
            sh = sh + term_s;
        }
        (ch, sh)
    } else {
        let sq = delta.sqrt();
        (sq.cosh(), sq.sinh() / sq)
    }
}

/// Polar decomposition g = p u with p Hermitian positive definite (det 1)
/// and u special unitary. Realizes the coset normal form for SL2(C)/SU2.
pub fn polar_decompose_sl2c<F: Float>(g: &CMat2<F>) -> (CMat2<F>, CMat2<F>) {
    // p = sqrt(g g*); for det-1 positive Hermitian M: sqrt(M) = (M + I)/sqrt(tr + 2)
    let m = g.mul(&g.adjoint());
    let tr = m.trace().re;
    let denom = (tr + F::one() + F::one()).sqrt();
    let one = C::new(F::one(), F::zero());
    let p = CMat2::new(
        (m.m[0] + one) / C::new(denom, F::zero()),
        m.m[1] / C::new(denom, F::zero()),
        m.m[2] / C::new(denom, F::zero()),
        (m.m[3] + one) / C::new(denom, F::zero()),
    );
    let u = p.inv().mul(g);
    (p, u)
}

/// Log coordinates over (H, T, iU) of a Hermitian positive definite det-1
/// matrix (the tangent coordinates of the hyperbolic-space section image).
pub fn hermitian_log<F: Float>(p: &CMat2<F>) -> [F; 3] {
    let two = F::one() + F::one();
    let half_tr = p.trace().re / two;
    let s = if half_tr <= F::one() {
        F::zero()
    } else {
        (half_tr + (half_tr * half_tr - F::one()).sqrt()).ln()
    };
    let sc = super::mat2::sinhc_like(s * s);
    // X = (P - cosh I)/sinhc = x1 H + x2 T + x3 iU
    let x1 = (p.m[0].re - p.m[3].re) / (two * sc);
    let x2 = (p.m[1].re + p.m[2].re) / (two * sc);
    let x3 = (p.m[1].im - p.m[2].im) / (two * sc);
    [x1, x2, x3]
}

/// Hermitian positive definite exp over (H, T, iU) coordinates.
pub fn hermitian_exp<F: Float>(x: &[F; 3]) -> CMat2<F> {
    exp_sl2c(&CMat2::from_real_coords(&[
        x[0],
        x[1],
        F::zero(),
        F::zero(),
        F::zero(),
        x[2],
    ]))
}

/// Point x + j y of the upper half space, x complex, y > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JQuaternion<F> {
    pub x: C<F>,
    pub y: F,
}

impl<F: Float> JQuaternion<F> {
    pub fn new(x: C<F>, y: F) -> Self {
        assert!(y > F::zero(), "upper half space requires y > 0");
        JQuaternion { x, y }
    }

    /// The base point j (x = 0, y = 1).
    pub fn j() -> Self {
        JQuaternion {
            x: C::new(F::zero(), F::zero()),
            y: F::one(),
        }
    }

    pub fn dist(&self, o: &Self) -> F {
        (self.x - o.x).norm().max((self.y - o.y).abs())
    }
}

/// Linear fractional action gamma(w) = (a w + b)(c w + d)^{-1} on the
/// upper half space, evaluated in quaternion arithmetic.
pub fn mobius_j<F: Float>(g: &CMat2<F>, w: &JQuaternion<F>) -> JQuaternion<F> {
    let [a, b, c, d] = g.m;
    let n = (c * w.x + d).norm_sqr() + (c.norm_sqr()) * w.y * w.y;
    let num = (a * w.x + b) * (c * w.x + d).conj() + a * c.conj() * w.y * w.y;
    JQuaternion {
        x: num / C::new(n, F::zero()),
        y: w.y / n,
    }
}
