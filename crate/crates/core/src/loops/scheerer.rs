//! The Scheerer extension of SO2(R) by the hyperbolic plane loop:
//! G = PSL2(R) x SO2(R) with the winding-two diagonal stabilizer, section
//! image M x SO2(R) where M is the hyperbolic-plane section image.

use std::f64::consts::PI;

use super::{LoopContext, Scope};
use crate::groups::mat2::{exp_sl2, iwasawa_decompose, sigma1, Mat2};
use crate::rng::SplitRng;

const TAU: f64 = 2.0 * PI;

fn wrap(t: f64) -> f64 {
    let mut v = t % TAU;
    if v < 0.0 {
        v += TAU;
    }
    v
}

fn angle_dist(a: f64, b: f64) -> f64 {
    let d = (wrap(a) - wrap(b)).abs();
    d.min(TAU - d)
}

/// Element (A, theta) of PSL2(R) x SO2(R).
#[derive(Debug, Clone, Copy)]
pub struct ScheererElem {
    pub g: Mat2<f64>,
    pub theta: f64,
}

pub struct ScheererLoop;

impl ScheererLoop {
    /// Rotation angle (mod pi) of a PSL2 rotation representative.
    fn rotation_angle(r: &Mat2<f64>) -> f64 {
        let c = r.psl2_canonical();
        c.m[1].atan2(c.m[0])
    }
}

impl LoopContext for ScheererLoop {
    type G = ScheererElem;

    fn label(&self) -> &str {
        "scheerer_loop"
    }

    fn section_tag(&self) -> &str {
        "5"
    }

    fn group_mul(&self, a: &Self::G, b: &Self::G) -> Self::G {
        ScheererElem {
            g: a.g.mul(&b.g).psl2_canonical(),
            theta: wrap(a.theta + b.theta),
        }
    }

    fn group_inv(&self, a: &Self::G) -> Self::G {
        ScheererElem {
            g: a.g.inv().psl2_canonical(),
            theta: wrap(-a.theta),
        }
    }

    fn identity(&self) -> Self::G {
        ScheererElem {
            g: Mat2::identity(),
            theta: 0.0,
        }
    }

    /// H = {(R(t) mod sign, 2t mod 2pi)}: the PSL2 part must be the
    /// rotation by half the circle coordinate.
    fn stabilizer_residual(&self, g: &Self::G) -> f64 {
        g.g.psl2_dist(&Mat2::rotation(g.theta / 2.0))
    }

    fn normal_form(&self, g: &Self::G) -> Self::G {
        ScheererElem {
            g: g.g.mul(&Mat2::rotation(-g.theta / 2.0)).psl2_canonical(),
            theta: 0.0,
        }
    }

    fn section(&self, rep: &Self::G) -> Self::G {
        let q = rep.g.psl2_canonical();
        let (a, b, _) = iwasawa_decompose(&q);
        let m = sigma1(a, b);
        // rotation carrying the coset representative onto the section image
        let t = Self::rotation_angle(&q.inv().mul(&m));
        ScheererElem {
            g: m,
            theta: wrap(2.0 * t),
        }
    }

    fn distance(&self, a: &Self::G, b: &Self::G) -> f64 {
        a.g.psl2_dist(&b.g).max(angle_dist(a.theta, b.theta))
    }

    fn sample_coset(&self, rng: &mut SplitRng) -> Self::G {
        let x = Mat2::from_htu(
            rng.uniform(-1.2, 1.2),
            rng.uniform(-1.2, 1.2),
            rng.uniform(-1.2, 1.2),
        );
        self.normal_form(&ScheererElem {
            g: exp_sl2(&x).psl2_canonical(),
            theta: rng.uniform(0.0, TAU),
        })
    }

    fn sample_group(&self, rng: &mut SplitRng) -> Self::G {
        let x = Mat2::from_htu(
            rng.uniform(-1.2, 1.2),
            rng.uniform(-1.2, 1.2),
            rng.uniform(-1.2, 1.2),
        );
        ScheererElem {
            g: exp_sl2(&x).psl2_canonical(),
            theta: rng.uniform(0.0, TAU),
        }
    }

    fn chart(&self, rep: &Self::G) -> [f64; 3] {
        let (a, b, t) = iwasawa_decompose(&rep.g.psl2_canonical());
        [a.ln(), b, t % PI]
    }

    fn unchart(&self, c: &[f64; 3]) -> Self::G {
        let g = crate::groups::mat2::lower_triangular(c[0].exp(), c[1])
            .mul(&Mat2::rotation(c[2]))
            .psl2_canonical();
        ScheererElem { g, theta: 0.0 }
    }

    fn chart_wrap(&self, mut diff: [f64; 3]) -> [f64; 3] {
        // third coordinate is an angle mod pi
        let mut d = diff[2] % PI;
        if d > PI / 2.0 {
            d -= PI;
        }
        if d < -PI / 2.0 {
            d += PI;
        }
        diff[2] = d;
        diff
    }

    fn is_bol(&self) -> bool {
        true
    }

    fn scope(&self) -> Scope {
        Scope::Global
    }
}

impl ScheererLoop {
    /// Loop elements with rotation coset part form a subgroup isomorphic
    /// to SO2: multiplication must close on them exactly.
    pub fn circle_subloop_residual(&self, angles: &[f64]) -> f64 {
        let mut worst = 0.0_f64;
        for &s1 in angles {
            for &s2 in angles {
                let x = self.normal_form(&ScheererElem {
                    g: Mat2::rotation(s1),
                    theta: 0.0,
                });
                let y = self.normal_form(&ScheererElem {
                    g: Mat2::rotation(s2),
                    theta: 0.0,
                });
                let prod = super::loop_mul(self, &x, &y);
                let expect = self.normal_form(&ScheererElem {
                    g: Mat2::rotation(s1 + s2),
                    theta: 0.0,
                });
                worst = worst.max(self.distance(&prod, &expect));
            }
        }
        worst
    }
}
