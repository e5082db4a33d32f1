//! Real 2x2 kernels: PSL2(R) representatives, the closed-form exponential
//! of traceless matrices, Iwasawa decomposition, the hyperbolic-plane
//! section, and a Runge-Kutta exponential oracle.

use num_traits::Float;

use crate::tol;

/// Row-major real 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<F> {
    pub m: [F; 4],
}

impl<F: Float> Mat2<F> {
    pub fn new(a: F, b: F, c: F, d: F) -> Self {
        Mat2 { m: [a, b, c, d] }
    }

    pub fn identity() -> Self {
        Mat2::new(F::one(), F::zero(), F::zero(), F::one())
    }

    pub fn zero() -> Self {
        Mat2::new(F::zero(), F::zero(), F::zero(), F::zero())
    }

    /// Rotation R(t) = [[cos t, sin t], [-sin t, cos t]].
    pub fn rotation(t: F) -> Self {
        let (s, c) = t.sin_cos();
        Mat2::new(c, s, -s, c)
    }

    /// Traceless matrix from (H, T, U) coordinates.
    pub fn from_htu(h: F, t: F, u: F) -> Self {
        Mat2::new(h, t + u, t - u, -h)
    }

    /// (H, T, U) coordinates of a traceless matrix.
    pub fn htu(&self) -> (F, F, F) {
        let two = F::one() + F::one();
        (
            (self.m[0] - self.m[3]) / two,
            (self.m[1] + self.m[2]) / two,
            (self.m[1] - self.m[2]) / two,
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let [a, b, c, d] = self.m;
        let [p, q, r, s] = o.m;
        Mat2::new(a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)
    }

    pub fn add(&self, o: &Self) -> Self {
        Mat2::new(
            self.m[0] + o.m[0],
            self.m[1] + o.m[1],
            self.m[2] + o.m[2],
            self.m[3] + o.m[3],
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        Mat2::new(
            self.m[0] - o.m[0],
            self.m[1] - o.m[1],
            self.m[2] - o.m[2],
            self.m[3] - o.m[3],
        )
    }

    pub fn scale(&self, s: F) -> Self {
        Mat2::new(self.m[0] * s, self.m[1] * s, self.m[2] * s, self.m[3] * s)
    }

    pub fn det(&self) -> F {
        self.m[0] * self.m[3] - self.m[1] * self.m[2]
    }

    pub fn trace(&self) -> F {
        self.m[0] + self.m[3]
    }

    pub fn transpose(&self) -> Self {
        Mat2::new(self.m[0], self.m[2], self.m[1], self.m[3])
    }

    pub fn inv(&self) -> Self {
        let d = self.det();
        Mat2::new(
            self.m[3] / d,
            -self.m[1] / d,
            -self.m[2] / d,
            self.m[0] / d,
        )
    }

    pub fn norm_inf(&self) -> F {
        self.m
            .iter()
            .fold(F::zero(), |acc, x| acc.max(x.abs()))
    }

    pub fn dist(&self, o: &Self) -> F {
        self.sub(o).norm_inf()
    }

    /// PSL2 representative: the first entry exceeding the scale threshold
    /// (row-major) is made positive.
    pub fn psl2_canonical(&self) -> Self {
        let scale = self.norm_inf();
        if scale.is_zero() {
            return *self;
        }
        let eps = F::from(1e-12).unwrap() * scale;
        for x in self.m.iter() {
            if x.abs() > eps {
                return if *x < F::zero() { self.scale(-F::one()) } else { *self };
            }
        }
        *self
    }

    /// Distance between PSL2 classes (minimum over the sign choice).
    pub fn psl2_dist(&self, o: &Self) -> F {
        self.sub(o).norm_inf().min(self.add(o).norm_inf())
    }

    pub fn is_symmetric(&self, tol: F) -> bool {
        (self.m[1] - self.m[2]).abs() <= tol
    }
}

fn seam<F: Float>() -> F {
    F::from(tol::SERIES_SEAM).unwrap()
}

/// Degree-6 Taylor branch of cosh(sqrt(delta)): sum_k delta^k / (2k)!.
pub(crate) fn cosh_like_series<F: Float>(delta: F) -> F {
    let mut acc = F::one();
    let mut term = F::one();
    for k in 1..=6 {
        let d1 = F::from(2 * k - 1).unwrap();
        let d2 = F::from(2 * k).unwrap();
        term = term * delta / (d1 * d2);
        acc = acc + term;
    }
    acc
}

pub(crate) fn cosh_like_closed<F: Float>(delta: F) -> F {
    if delta > F::zero() {
        delta.sqrt().cosh()
    } else {
        (-delta).sqrt().cos()
    }
}

/// cosh(sqrt(delta)), analytic in delta (cos branch for delta < 0).
pub fn cosh_like<F: Float>(delta: F) -> F {
    if delta.abs() < seam() {
        cosh_like_series(delta)
    } else {
        cosh_like_closed(delta)
    }
}

/// Degree-6 Taylor branch of sinh(sqrt(delta))/sqrt(delta).
pub(crate) fn sinhc_like_series<F: Float>(delta: F) -> F {
    let mut acc = F::one();
    let mut term = F::one();
    for k in 1..=6 {
        let d1 = F::from(2 * k).unwrap();
        let d2 = F::from(2 * k + 1).unwrap();
        term = term * delta / (d1 * d2);
        acc = acc + term;
    }
    acc
}

pub(crate) fn sinhc_like_closed<F: Float>(delta: F) -> F {
    if delta > F::zero() {
        let s = delta.sqrt();
        s.sinh() / s
    } else {
        let s = (-delta).sqrt();
        s.sin() / s
    }
}

/// sinh(sqrt(delta))/sqrt(delta), analytic in delta.
pub fn sinhc_like<F: Float>(delta: F) -> F {
    if delta.abs() < seam() {
        sinhc_like_series(delta)
    } else {
        sinhc_like_closed(delta)
    }
}

/// Closed-form exponential of a traceless 2x2 matrix:
/// exp X = cosh(sqrt(D)) I + sinh(sqrt(D))/sqrt(D) X with D = -det X.
pub fn exp_sl2<F: Float>(x: &Mat2<F>) -> Mat2<F> {
    let delta = -x.det();
    let c = cosh_like(delta);
    let s = sinhc_like(delta);
    Mat2::new(
        c + s * x.m[0],
        s * x.m[1],
        s * x.m[2],
        c + s * x.m[3],
    )
}

/// Reference integrator for dM/dt = M X, M(0) = I, evaluated at t = 1.
/// Classical fourth order; used as a test oracle only.
pub fn exp_rk4_oracle<F: Float>(x: &Mat2<F>, steps: usize) -> Mat2<F> {
    assert!(steps >= 1000, "oracle needs at least 1000 steps");
    let h = F::one() / F::from(steps).unwrap();
    let two = F::one() + F::one();
    let six = F::from(6).unwrap();
    let mut m = Mat2::identity();
    for _ in 0..steps {
        let k1 = m.mul(x);
        let k2 = m.add(&k1.scale(h / two)).mul(x);
        let k3 = m.add(&k2.scale(h / two)).mul(x);
        let k4 = m.add(&k3.scale(h)).mul(x);
        let incr = k1.add(&k2.scale(two)).add(&k3.scale(two)).add(&k4);
        m = m.add(&incr.scale(h / six));
    }
    m
}

/// Iwasawa decomposition g = [[a, 0], [b, 1/a]] R(t) with a > 0,
/// t in [0, 2pi). Requires det g = 1.
pub fn iwasawa_decompose<F: Float>(g: &Mat2<F>) -> (F, F, F) {
    let [ga, gb, gc, gd] = g.m;
    let a = (ga * ga + gb * gb).sqrt();
    let cos_t = ga / a;
    let sin_t = gb / a;
    let mut t = sin_t.atan2(cos_t);
    if t < F::zero() {
        t = t + F::from(2.0 * std::f64::consts::PI).unwrap();
    }
    let b = gc * cos_t + gd * sin_t;
    (a, b, t)
}

pub fn lower_triangular<F: Float>(a: F, b: F) -> Mat2<F> {
    Mat2::new(a, F::zero(), b, F::one() / a)
}

/// Section of the hyperbolic plane loop: the lower-triangular coset
/// representative times the rotation whose angle is fixed by the stated
/// sign rule; the image is the symmetric positive definite representative.
pub fn sigma1<F: Float>(a: F, b: F) -> Mat2<F> {
    assert!(a > F::zero(), "sigma1 requires a > 0");
    let w = F::one() / a + a;
    let mut den = (b * b + w * w).sqrt();
    if b < F::zero() {
        den = -den;
    }
    let rot = Mat2::new(w / den, b / den, -b / den, w / den);
    lower_triangular(a, b).mul(&rot).psl2_canonical()
}

/// Polar decomposition of det-1 real g: g = P R with P symmetric positive
/// definite and R in SO2.
pub fn polar_decompose<F: Float>(g: &Mat2<F>) -> (Mat2<F>, Mat2<F>) {
    // P = sqrt(g g^T); for det-1 spd M: sqrt(M) = (M + I)/sqrt(tr + 2)
    let m = g.mul(&g.transpose());
    let tr = m.trace();
    let denom = (tr + F::one() + F::one()).sqrt();
    let p = Mat2::new(
        (m.m[0] + F::one()) / denom,
        m.m[1] / denom,
        m.m[2] / denom,
        (m.m[3] + F::one()) / denom,
    );
    let r = p.inv().mul(g);
    (p, r)
}

/// Log coordinates (h, t) of a symmetric positive definite det-1 matrix
/// P = exp(h H + t T).
pub fn spd_log<F: Float>(p: &Mat2<F>) -> (F, F) {
    let two = F::one() + F::one();
    let half_tr = p.trace() / two;
    // acosh(half_tr); guard the domain edge
    let s = if half_tr <= F::one() {
        F::zero()
    } else {
        (half_tr + (half_tr * half_tr - F::one()).sqrt()).ln()
    };
    let sc = sinhc_like(s * s);
    let h = (p.m[0] - p.m[3]) / (two * sc);
    let t = (p.m[1] + p.m[2]) / (two * sc);
    (h, t)
}
