//! Loops on the euclidean planes of the affine pseudo-euclidean model that
//! are sharply transitive but not Bol: the section set is a product of a
//! one-parameter translation group along a line S with the lift of the
//! hyperbolic-plane section to the stabilizer of the origin.
//!
//! Planes are tracked by their polar point at infinity (a point on the
//! upper hyperboloid sheet w1^2 + w2^2 - w3^2 = -1) and the parameter of
//! their intersection with S.

use super::pseudo_euclidean::{big_omega, Affine3};
use super::{LoopContext, Scope};
use crate::groups::mat2::Mat2;
use crate::groups::semidirect::Semidirect;
use crate::rng::SplitRng;
use crate::{Error, Result};

/// Euclidean plane of the affine model: hyperboloid-normalized polar point
/// of its line at infinity, plus the parameter of the intersection with
/// the reference line S.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseudoPlane {
    pub pole: [f64; 3],
    pub anchor: f64,
}

/// Normalizes a timelike direction (x^2 + y^2 < z^2) onto the upper sheet.
pub fn hyperboloid_normalize(v: &[f64; 3]) -> Result<[f64; 3]> {
    let q = v[2] * v[2] - v[0] * v[0] - v[1] * v[1];
    if q <= 0.0 {
        return Err(Error::Domain(
            "direction must satisfy x^2 + y^2 < z^2".into(),
        ));
    }
    let s = q.sqrt() * v[2].signum();
    Ok([v[0] / s, v[1] / s, v[2] / s])
}

/// Plane from an affine normal vector and a point on the plane; the normal
/// must be euclidean (n1^2 + n2^2 > n3^2 fails <=> its polar point is
/// timelike, which is what the construction requires).
pub fn plane_from_normal_point(
    n: &[f64; 3],
    point: &[f64; 3],
    s_dir: &[f64; 3],
) -> Result<PseudoPlane> {
    // polar point of the plane's line at infinity
    let pole = hyperboloid_normalize(&[n[0], n[1], -n[2]])?;
    let nn = [pole[0], pole[1], -pole[2]];
    let c = dot(&nn, point);
    let denom = dot(&nn, s_dir);
    Ok(PseudoPlane {
        pole,
        anchor: c / denom,
    })
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// The unique symmetric-representative Lorentz block mapping the base pole
/// (0,0,1) to the given pole: the lift of the hyperbolic-plane section to
/// the stabilizer of the origin.
pub fn tau_for_pole(w: &[f64; 3]) -> Affine3 {
    let sum = (2.0 * (w[2] + 1.0)).sqrt();
    let q = w[0] / sum;
    let diff = 2.0 * w[1] / sum;
    let p = (sum - diff) / 2.0;
    let s = (sum + diff) / 2.0;
    let sym = Mat2::new(p, q, q, s);
    big_omega(&Semidirect::new(sym, Mat2::zero()))
}

/// Loop on the euclidean planes with section set Lambda Sigma, where
/// Lambda translates along the line through the origin with the given
/// timelike direction at infinity.
pub struct NonBolLoop {
    pub s_dir: [f64; 3],
    label: String,
    axial: bool,
}

impl NonBolLoop {
    /// `direction` is the point at infinity of the invariant line S; it
    /// must be timelike so that S meets every euclidean plane.
    pub fn new(direction: [f64; 3]) -> Result<Self> {
        let s = hyperboloid_normalize(&direction)?;
        let axial = s[0].abs() < 1e-12 && s[1].abs() < 1e-12;
        Ok(NonBolLoop {
            s_dir: s,
            label: if axial {
                "nonbol_loop(axis)".to_string()
            } else {
                format!("nonbol_loop({:.3},{:.3},{:.3})", s[0], s[1], s[2])
            },
            axial,
        })
    }

    /// Whether the translation axis is the polar of the identity plane's
    /// line at infinity (the case with a compact automorphism group).
    pub fn is_axial(&self) -> bool {
        self.axial
    }

    /// The identity plane P (anchor 0, pole (0,0,1)).
    pub fn base_plane(&self) -> PseudoPlane {
        PseudoPlane {
            pole: [0.0, 0.0, 1.0],
            anchor: 0.0,
        }
    }

    /// Image plane of the base plane under an affine map.
    pub fn act_on_base(&self, g: &Affine3) -> PseudoPlane {
        self.act(g, &self.base_plane())
    }

    pub fn act(&self, g: &Affine3, plane: &PseudoPlane) -> PseudoPlane {
        let pole = g.linear(&plane.pole);
        // the image plane has normal J pole' and offset c + n'.t
        let nn = [pole[0], pole[1], -pole[2]];
        let old_n = [plane.pole[0], plane.pole[1], -plane.pole[2]];
        let c_old = plane.anchor * dot(&old_n, &self.s_dir);
        let c_new = c_old + dot(&nn, &g.t);
        PseudoPlane {
            pole,
            anchor: c_new / dot(&nn, &self.s_dir),
        }
    }

    /// Theta-element carrying the base plane onto the given plane:
    /// translation along S composed with the Sigma-lift.
    pub fn theta_for_plane(&self, plane: &PseudoPlane) -> Affine3 {
        let tau = tau_for_pole(&plane.pole);
        let d = self.act_on_base(&tau);
        let shift = plane.anchor - d.anchor;
        Affine3 {
            b: tau.b,
            t: [
                tau.t[0] + shift * self.s_dir[0],
                tau.t[1] + shift * self.s_dir[1],
                tau.t[2] + shift * self.s_dir[2],
            ],
        }
    }

    pub fn plane_dist(&self, a: &PseudoPlane, b: &PseudoPlane) -> f64 {
        let mut d = (a.anchor - b.anchor).abs();
        for i in 0..3 {
            d = d.max((a.pole[i] - b.pole[i]).abs());
        }
        d
    }

    /// Distance of an affine map from the section set Lambda Sigma:
    /// linear part away from the Sigma block, translation part away from
    /// the S line.
    pub fn theta_set_residual(&self, g: &Affine3) -> f64 {
        let pole = g.linear(&[0.0, 0.0, 1.0]);
        let mut resid = 0.0_f64;
        match hyperboloid_normalize(&pole) {
            Ok(w) => {
                let tau = tau_for_pole(&w);
                let mut d = 0.0_f64;
                for i in 0..3 {
                    for j in 0..3 {
                        d = d.max((g.b[i][j] - tau.b[i][j]).abs());
                    }
                }
                resid = resid.max(d);
            }
            Err(_) => return f64::INFINITY,
        }
        // translation component orthogonal to S (euclidean projection)
        let s = self.s_dir;
        let s2 = dot(&s, &s);
        let along = dot(&g.t, &s) / s2;
        let mut orth = 0.0_f64;
        for i in 0..3 {
            orth = orth.max((g.t[i] - along * s[i]).abs());
        }
        resid.max(orth)
    }

    /// The compact subgroup K of the origin stabilizer fixing the polar of
    /// the base plane: rotations about the third axis.
    pub fn k_rotation(phi: f64) -> Affine3 {
        let (s, c) = phi.sin_cos();
        Affine3 {
            b: [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]],
            t: [0.0; 3],
        }
    }

    /// Max distance of K theta K^{-1} from the section set over samples;
    /// near zero exactly when S is the polar axis of the base plane.
    pub fn k_normalization_residual(&self, samples: u64, seed: u64) -> f64 {
        let mut rng = SplitRng::new(seed).split(&format!("{}-knorm", self.label));
        let mut worst = 0.0_f64;
        for _ in 0..samples {
            let theta = self.theta_for_plane(&self.random_plane(&mut rng));
            let g = Self::k_rotation(rng.uniform(0.3, std::f64::consts::TAU));
            let conj = g.compose(&theta).compose(&g.inv());
            worst = worst.max(self.theta_set_residual(&conj));
        }
        worst
    }

    fn random_plane(&self, rng: &mut SplitRng) -> PseudoPlane {
        let r = rng.uniform(0.0, 1.2);
        let phi = rng.uniform(0.0, std::f64::consts::TAU);
        PseudoPlane {
            pole: [r.sinh() * phi.cos(), r.sinh() * phi.sin(), r.cosh()],
            anchor: rng.uniform(-1.5, 1.5),
        }
    }

    /// Bol-failure witness: for a nontrivial translation lambda and a
    /// nontrivial Sigma element rho, the residual of (lambda rho) lambda
    /// (rho lambda ...) — concretely of r s r against the section image.
    pub fn bol_witness_residual(&self) -> f64 {
        let lambda = Affine3 {
            b: Affine3::identity().b,
            t: [self.s_dir[0], self.s_dir[1], self.s_dir[2]],
        };
        let rho = tau_for_pole(&[0.9_f64.sinh(), 0.0, 0.9_f64.cosh()]);
        let rsr = lambda.compose(&rho).compose(&lambda);
        let plane = self.act_on_base(&rsr);
        let expected = self.theta_for_plane(&plane);
        rsr.dist(&expected)
    }
}

impl LoopContext for NonBolLoop {
    type G = Affine3;

    fn label(&self) -> &str {
        &self.label
    }

    fn section_tag(&self) -> &str {
        "8"
    }

    fn group_mul(&self, a: &Self::G, b: &Self::G) -> Self::G {
        a.compose(b)
    }

    fn group_inv(&self, a: &Self::G) -> Self::G {
        a.inv()
    }

    fn identity(&self) -> Self::G {
        Affine3::identity()
    }

    fn stabilizer_residual(&self, g: &Self::G) -> f64 {
        let p = self.act_on_base(g);
        self.plane_dist(&p, &self.base_plane())
    }

    fn normal_form(&self, g: &Self::G) -> Self::G {
        self.theta_for_plane(&self.act_on_base(g))
    }

    fn section(&self, rep: &Self::G) -> Self::G {
        *rep
    }

    fn distance(&self, a: &Self::G, b: &Self::G) -> f64 {
        a.dist(b)
    }

    fn sample_coset(&self, rng: &mut SplitRng) -> Self::G {
        let plane = self.random_plane(rng);
        self.theta_for_plane(&plane)
    }

    fn sample_group(&self, rng: &mut SplitRng) -> Self::G {
        // random Lorentz-block element with translation: Theta element
        // composed with a random stabilizer element of the base plane
        let theta = self.sample_coset(rng);
        let rot = Self::k_rotation(rng.uniform(0.0, std::f64::consts::TAU));
        let h = Affine3 {
            b: rot.b,
            t: [rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), 0.0],
        };
        theta.compose(&h)
    }

    fn chart(&self, rep: &Self::G) -> [f64; 3] {
        let p = self.act_on_base(rep);
        [
            p.pole[0] / (1.0 + p.pole[2]),
            p.pole[1] / (1.0 + p.pole[2]),
            p.anchor,
        ]
    }

    fn unchart(&self, c: &[f64; 3]) -> Self::G {
        let denom = 1.0 - c[0] * c[0] - c[1] * c[1];
        let pole = [
            2.0 * c[0] / denom,
            2.0 * c[1] / denom,
            (1.0 + c[0] * c[0] + c[1] * c[1]) / denom,
        ];
        self.theta_for_plane(&PseudoPlane {
            pole,
            anchor: c[2],
        })
    }

    fn is_bol(&self) -> bool {
        false
    }

    fn scope(&self) -> Scope {
        Scope::Global
    }

    /// Seeds the numerical division with the Sigma element solving the
    /// pole equation: B_S acts on the spd chart as M -> S M S, so S is the
    /// geometric mean of the two pole matrices.
    fn right_division_start(&self, b: &Self::G, a: &Self::G) -> [f64; 3] {
        let pa = self.act_on_base(a);
        let pb = self.act_on_base(b);
        let ma = pole_to_spd(&pa.pole);
        let mb = pole_to_spd(&pb.pole);
        let s = spd_geometric_mean(&ma, &mb);
        let pole_x = spd_to_pole(&s.mul(&s));
        let c = self.chart(&self.theta_for_plane(&PseudoPlane {
            pole: pole_x,
            anchor: 0.0,
        }));
        // anchor follows once the linear part is fixed; start from b's
        [c[0], c[1], self.chart(b)[2]]
    }
}

/// Hyperboloid chart of spd det-1 matrices: w = (m12, (m22-m11)/2, (m11+m22)/2).
fn pole_to_spd(w: &[f64; 3]) -> Mat2<f64> {
    Mat2::new(w[2] - w[1], w[0], w[0], w[2] + w[1])
}

fn spd_to_pole(m: &Mat2<f64>) -> [f64; 3] {
    [m.m[1], (m.m[3] - m.m[0]) / 2.0, (m.m[0] + m.m[3]) / 2.0]
}

fn spd_sqrt(m: &Mat2<f64>) -> Mat2<f64> {
    let det_sqrt = m.det().sqrt();
    let denom = (m.trace() + 2.0 * det_sqrt).sqrt();
    Mat2::new(
        (m.m[0] + det_sqrt) / denom,
        m.m[1] / denom,
        m.m[2] / denom,
        (m.m[3] + det_sqrt) / denom,
    )
}

/// Geometric mean a^{1/2} (a^{-1/2} b a^{-1/2})^{1/2} a^{1/2}: the unique
/// spd solution S of S a^{-1} S = b ... used here for S M_a S = M_b with
/// the roles inverted accordingly.
fn spd_geometric_mean(a: &Mat2<f64>, b: &Mat2<f64>) -> Mat2<f64> {
    // solve S a S = b: S = a^{-1/2} (a^{1/2} b a^{1/2})^{1/2} a^{-1/2}
    let a_half = spd_sqrt(a);
    let a_half_inv = a_half.inv();
    let inner = spd_sqrt(&a_half.mul(b).mul(&a_half));
    a_half_inv.mul(&inner).mul(&a_half_inv)
}
