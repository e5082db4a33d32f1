//! Isomorphism and obstruction machinery: Bruck gradings, reductivity,
//! compactness of derived subalgebras, Killing-angle invariants, the two
//! explicit isomorphism equation systems, the Bol-complement ansatz scans,
//! and the conjugacy-type obstruction behind the nonexistence arguments.

use std::collections::BTreeSet;

use num_integer::Roots;

use crate::catalog::{Catalog, FamilyParams};
use crate::lie::{
    direct_sum_check, is_subalgebra, LieAlgebraDef, Subspace,
    Vector,
};
use crate::linalg::Mat;
use crate::rng::SplitRng;
use crate::{rat, Error, Rat, Result};

// ---------------------------------------------------------------------------
// Gradings and reductivity
// ---------------------------------------------------------------------------

/// Outcome of the Z2-grading test: all three containments hold exactly iff
/// the involution (-1 on m, +1 on h) is an algebra automorphism.
#[derive(Debug, Clone)]
pub struct GradingVerdict {
    pub hh_in_h: bool,
    pub hm_in_m: bool,
    pub mm_in_h: bool,
    pub witness: Option<String>,
}

impl GradingVerdict {
    pub fn is_graded(&self) -> bool {
        self.hh_in_h && self.hm_in_m && self.mm_in_h
    }
}

pub fn bruck_grading(
    alg: &LieAlgebraDef<Rat>,
    m: &Subspace<Rat>,
    h: &Subspace<Rat>,
) -> Result<GradingVerdict> {
    if !direct_sum_check(alg, m, h)? {
        return Err(Error::Precondition("grading needs g = m ⊕ h".into()));
    }
    let mut v = GradingVerdict {
        hh_in_h: true,
        hm_in_m: true,
        mm_in_h: true,
        witness: None,
    };
    let hb = h.basis();
    let mb = m.basis();
    for (i, x) in hb.iter().enumerate() {
        for y in hb.iter().skip(i + 1) {
            if !h.contains(&alg.bracket(x, y)?) {
                v.hh_in_h = false;
                v.witness.get_or_insert_with(|| "[h,h] escapes h".into());
            }
        }
    }
    for x in &hb {
        for y in &mb {
            if !m.contains(&alg.bracket(x, y)?) {
                v.hm_in_m = false;
                v.witness.get_or_insert_with(|| "[h,m] escapes m".into());
            }
        }
    }
    for (i, x) in mb.iter().enumerate() {
        for y in mb.iter().skip(i + 1) {
            if !h.contains(&alg.bracket(x, y)?) {
                v.mm_in_h = false;
                v.witness.get_or_insert_with(|| "[m,m] escapes h".into());
            }
        }
    }
    Ok(v)
}

/// Reductivity [h, m] ⊆ m; returns the first failing bracket as witness.
pub fn left_a_check(
    alg: &LieAlgebraDef<Rat>,
    m: &Subspace<Rat>,
    h: &Subspace<Rat>,
) -> Result<(bool, Option<(Vector<Rat>, Vector<Rat>, Vector<Rat>)>)> {
    for x in h.basis() {
        for y in m.basis() {
            let b = alg.bracket(&x, &y)?;
            if !m.contains(&b) {
                return Ok((false, Some((x, y, b))));
            }
        }
    }
    Ok((true, None))
}

// ---------------------------------------------------------------------------
// Compactness of subalgebras
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct CompactnessVerdict {
    pub compact: bool,
    /// A nonzero vector of the subalgebra with nonnegative Killing value.
    pub witness: Option<(Vector<Rat>, Rat)>,
}

/// The subalgebra is compact iff the Killing form restricted to it is
/// negative definite (leading principal minors of -Gram all positive).
pub fn compactness_check(
    alg: &LieAlgebraDef<Rat>,
    s: &Subspace<Rat>,
) -> Result<CompactnessVerdict> {
    if !is_subalgebra(alg, s)? {
        return Err(Error::Precondition(
            "compactness check needs a subalgebra".into(),
        ));
    }
    let basis = s.basis();
    let k = basis.len();
    let gram = alg.killing_gram()?;
    let mut g = Mat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            *g.at_mut(i, j) = LieAlgebraDef::killing_via_gram(&gram, &basis[i], &basis[j]);
        }
    }
    let mut neg_definite = true;
    for lead in 1..=k {
        let mut minor = Mat::zeros(lead, lead);
        for i in 0..lead {
            for j in 0..lead {
                *minor.at_mut(i, j) = rat(0, 1) - g.at(i, j).clone();
            }
        }
        if minor.det() <= rat(0, 1) {
            neg_definite = false;
            break;
        }
    }
    if neg_definite {
        return Ok(CompactnessVerdict {
            compact: true,
            witness: None,
        });
    }
    // witness with nonnegative Killing value: prefer an isotropic one
    let kval = |v: &Vector<Rat>| LieAlgebraDef::killing_via_gram(&gram, v, v);
    let mut candidates: Vec<Vector<Rat>> = basis.clone();
    for i in 0..k {
        for j in i + 1..k {
            let mut plus = basis[i].clone();
            let mut minus = basis[i].clone();
            for d in 0..alg.dim {
                plus[d] = plus[d].clone() + basis[j][d].clone();
                minus[d] = minus[d].clone() - basis[j][d].clone();
            }
            candidates.push(plus);
            candidates.push(minus);
        }
    }
    let witness = candidates
        .iter()
        .find(|v| kval(v) == rat(0, 1))
        .or_else(|| candidates.iter().find(|v| kval(v) > rat(0, 1)))
        .cloned()
        .map(|v| {
            let kv = kval(&v);
            (v, kv)
        });
    Ok(CompactnessVerdict {
        compact: false,
        witness,
    })
}

// ---------------------------------------------------------------------------
// Killing-angle invariant
// ---------------------------------------------------------------------------

/// Stationary values of the Killing pairing between two subspaces: the
/// spectrum of A^{-1} C B^{-1} C^T on the quotients by the form radicals,
/// stored as sorted (real, |imag|) pairs together with the radical sizes.
#[derive(Debug, Clone)]
pub struct AngleInvariant {
    pub kernel_dims: (usize, usize),
    pub spectrum: Vec<(f64, f64)>,
    pub degenerate: bool,
}

impl AngleInvariant {
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.kernel_dims == other.kernel_dims
            && self.spectrum.len() == other.spectrum.len()
            && self
                .spectrum
                .iter()
                .zip(&other.spectrum)
                .all(|(a, b)| (a.0 - b.0).abs() <= tol && (a.1 - b.1).abs() <= tol)
    }

    pub fn render(&self) -> String {
        let vals: Vec<String> = self
            .spectrum
            .iter()
            .map(|(re, im)| {
                if *im == 0.0 {
                    format!("{re:.12}")
                } else {
                    format!("{re:.12}±{im:.12}i")
                }
            })
            .collect();
        if self.degenerate {
            format!(
                "degenerate(kernels {}x{}) [{}]",
                self.kernel_dims.0,
                self.kernel_dims.1,
                vals.join(", ")
            )
        } else {
            format!("[{}]", vals.join(", "))
        }
    }
}

/// Greedy maximal index subset on which the symmetric form is nonsingular.
fn nondegenerate_subset(g: &Mat<Rat>) -> Vec<usize> {
    let n = g.rows;
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..n {
        let mut trial = chosen.clone();
        trial.push(i);
        let mut sub = Mat::zeros(trial.len(), trial.len());
        for (r, &a) in trial.iter().enumerate() {
            for (c, &b) in trial.iter().enumerate() {
                *sub.at_mut(r, c) = g.at(a, b).clone();
            }
        }
        if sub.det() != rat(0, 1) {
            chosen = trial;
        }
    }
    chosen
}

pub fn angle_invariant(
    alg: &LieAlgebraDef<Rat>,
    m1: &Subspace<Rat>,
    m2: &Subspace<Rat>,
) -> Result<AngleInvariant> {
    let gram = alg.killing_gram()?;
    let b1 = m1.basis();
    let b2 = m2.basis();
    let pair = |x: &Vector<Rat>, y: &Vector<Rat>| LieAlgebraDef::killing_via_gram(&gram, x, y);

    let mut a = Mat::zeros(b1.len(), b1.len());
    for i in 0..b1.len() {
        for j in 0..b1.len() {
            *a.at_mut(i, j) = pair(&b1[i], &b1[j]);
        }
    }
    let mut b = Mat::zeros(b2.len(), b2.len());
    for i in 0..b2.len() {
        for j in 0..b2.len() {
            *b.at_mut(i, j) = pair(&b2[i], &b2[j]);
        }
    }

    let s1 = nondegenerate_subset(&a);
    let s2 = nondegenerate_subset(&b);
    let k1 = b1.len() - s1.len();
    let k2 = b2.len() - s2.len();

    let restrict = |g: &Mat<Rat>, idx: &[usize]| {
        let mut out = Mat::zeros(idx.len(), idx.len());
        for (r, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                *out.at_mut(r, c) = g.at(i, j).clone();
            }
        }
        out
    };
    let ar = restrict(&a, &s1);
    let br = restrict(&b, &s2);
    let mut cr = Mat::zeros(s1.len(), s2.len());
    for (r, &i) in s1.iter().enumerate() {
        for (c, &j) in s2.iter().enumerate() {
            *cr.at_mut(r, c) = pair(&b1[i], &b2[j]);
        }
    }

    let ai = ar
        .inverse()
        .ok_or_else(|| Error::Precondition("restricted Gram must be invertible".into()))?;
    let bi = br
        .inverse()
        .ok_or_else(|| Error::Precondition("restricted Gram must be invertible".into()))?;
    let pencil = ai.mul(&cr).mul(&bi).mul(&cr.transpose());
    let coeffs: Vec<f64> = pencil
        .charpoly()
        .iter()
        .map(crate::scalar::rat_to_f64)
        .collect();
    let mut spectrum = poly_roots(&coeffs);
    spectrum.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(AngleInvariant {
        kernel_dims: (k1, k2),
        spectrum,
        degenerate: k1 > 0 || k2 > 0,
    })
}

/// Roots of a monic polynomial of degree <= 3 (coefficients low to high),
/// as (real part, |imaginary part|) pairs.
fn poly_roots(coeffs: &[f64]) -> Vec<(f64, f64)> {
    match coeffs.len() {
        0 | 1 => vec![],
        2 => vec![(-coeffs[0], 0.0)],
        3 => {
            let (c, b) = (coeffs[0], coeffs[1]);
            let disc = b * b - 4.0 * c;
            if disc >= 0.0 {
                let r = disc.sqrt();
                vec![((-b - r) / 2.0, 0.0), ((-b + r) / 2.0, 0.0)]
            } else {
                let r = (-disc).sqrt() / 2.0;
                vec![(-b / 2.0, r), (-b / 2.0, r)]
            }
        }
        4 => cubic_roots(coeffs[2], coeffs[1], coeffs[0]),
        _ => unreachable!("pencil dimension is at most 3"),
    }
}

/// Roots of x^3 + p x^2 + q x + r.
fn cubic_roots(p: f64, q: f64, r: f64) -> Vec<(f64, f64)> {
    // depressed cubic t^3 + at + b with x = t - p/3
    let a = q - p * p / 3.0;
    let b = 2.0 * p * p * p / 27.0 - p * q / 3.0 + r;
    let shift = -p / 3.0;
    let disc = b * b / 4.0 + a * a * a / 27.0;
    let mut out = if disc > 1e-14 {
        // one real root, one conjugate pair
        let sq = disc.sqrt();
        let u = cbrt(-b / 2.0 + sq);
        let v = cbrt(-b / 2.0 - sq);
        let re = -(u + v) / 2.0 + shift;
        let im = (u - v) * 3f64.sqrt() / 2.0;
        vec![(u + v + shift, 0.0), (re, im.abs()), (re, im.abs())]
    } else if disc < -1e-14 {
        // three distinct real roots
        let m = 2.0 * (-a / 3.0).sqrt();
        let theta = (3.0 * b / (a * m)).acos() / 3.0;
        (0..3)
            .map(|k| {
                (
                    m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() + shift,
                    0.0,
                )
            })
            .collect()
    } else {
        let u = cbrt(-b / 2.0);
        vec![(2.0 * u + shift, 0.0), (-u + shift, 0.0), (-u + shift, 0.0)]
    };
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    out
}

fn cbrt(x: f64) -> f64 {
    x.signum() * x.abs().powf(1.0 / 3.0)
}

// ---------------------------------------------------------------------------
// Complex-rational arithmetic and the conjugation automorphisms
// ---------------------------------------------------------------------------

/// Complex number with exact rational parts.
#[derive(Debug, Clone, PartialEq)]
pub struct CRat {
    pub re: Rat,
    pub im: Rat,
}

impl CRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        CRat { re, im }
    }

    pub fn zero() -> Self {
        CRat::new(rat(0, 1), rat(0, 1))
    }

    pub fn one() -> Self {
        CRat::new(rat(1, 1), rat(0, 1))
    }

    pub fn add(&self, o: &Self) -> Self {
        CRat::new(
            self.re.clone() + o.re.clone(),
            self.im.clone() + o.im.clone(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        CRat::new(
            self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            self.re.clone() * o.im.clone() + self.im.clone() * o.re.clone(),
        )
    }

    pub fn neg(&self) -> Self {
        CRat::new(rat(0, 1) - self.re.clone(), rat(0, 1) - self.im.clone())
    }

    pub fn conj(&self) -> Self {
        CRat::new(self.re.clone(), rat(0, 1) - self.im.clone())
    }
}

type CMat2Rat = [CRat; 4];

fn cmul(a: &CMat2Rat, b: &CMat2Rat) -> CMat2Rat {
    [
        a[0].mul(&b[0]).add(&a[1].mul(&b[2])),
        a[0].mul(&b[1]).add(&a[1].mul(&b[3])),
        a[2].mul(&b[0]).add(&a[3].mul(&b[2])),
        a[2].mul(&b[1]).add(&a[3].mul(&b[3])),
    ]
}

/// The exact 6x6 matrix (columns = images of H, T, U, iH, iT, iU) of the
/// map X -> phi(B^{-1} X B), where B is the special unitary matrix built
/// from (c1, c2, d1, d2) with norm 1 and phi is entrywise conjugation
/// (omitted when `with_phi` is false).
pub fn su2_conjugation_matrix(w: &[Rat; 4], with_phi: bool) -> Result<Mat<Rat>> {
    let norm = w
        .iter()
        .fold(rat(0, 1), |acc, x| acc + x.clone() * x.clone());
    if norm != rat(1, 1) {
        return Err(Error::Domain(
            "unitary parameters must have norm exactly 1".into(),
        ));
    }
    let (c1, c2, d1, d2) = (w[0].clone(), w[1].clone(), w[2].clone(), w[3].clone());
    let b: CMat2Rat = [
        CRat::new(c1.clone(), c2.clone()),
        CRat::new(d1.clone(), d2.clone()),
        CRat::new(rat(0, 1) - d1.clone(), d2.clone()),
        CRat::new(c1, rat(0, 1) - c2),
    ];
    // det B = 1, so the inverse is the adjugate
    let binv: CMat2Rat = [b[3].clone(), b[1].neg(), b[2].neg(), b[0].clone()];
    let h: CMat2Rat = [CRat::one(), CRat::zero(), CRat::zero(), CRat::one().neg()];
    let t: CMat2Rat = [CRat::zero(), CRat::one(), CRat::one(), CRat::zero()];
    let u: CMat2Rat = [CRat::zero(), CRat::one(), CRat::one().neg(), CRat::zero()];
    let i = CRat::new(rat(0, 1), rat(1, 1));
    let scale = |m: &CMat2Rat, s: &CRat| -> CMat2Rat {
        [m[0].mul(s), m[1].mul(s), m[2].mul(s), m[3].mul(s)]
    };
    let basis: Vec<CMat2Rat> = vec![
        h.clone(),
        t.clone(),
        u.clone(),
        scale(&h, &i),
        scale(&t, &i),
        scale(&u, &i),
    ];
    let mut out = Mat::zeros(6, 6);
    for (col, x) in basis.iter().enumerate() {
        let mut y = cmul(&cmul(&binv, x), &b);
        if with_phi {
            for e in y.iter_mut() {
                *e = e.conj();
            }
        }
        // decompose the traceless result over H, T, U
        let two = rat(2, 1);
        let ch = y[0].clone();
        let ct = CRat::new(
            (y[1].re.clone() + y[2].re.clone()) / two.clone(),
            (y[1].im.clone() + y[2].im.clone()) / two.clone(),
        );
        let cu = CRat::new(
            (y[1].re.clone() - y[2].re.clone()) / two.clone(),
            (y[1].im.clone() - y[2].im.clone()) / two,
        );
        for (row, val) in [ch.re, ct.re, cu.re, ch.im, ct.im, cu.im]
            .into_iter()
            .enumerate()
        {
            *out.at_mut(row, col) = val;
        }
    }
    Ok(out)
}

/// Checks exactly that a 6x6 coordinate map is an algebra automorphism.
pub fn is_automorphism(alg: &LieAlgebraDef<Rat>, m: &Mat<Rat>) -> Result<bool> {
    if m.rank() != alg.dim {
        return Ok(false);
    }
    let apply = |v: &Vector<Rat>| -> Vector<Rat> {
        let mut out = vec![rat(0, 1); alg.dim];
        for (j, c) in v.iter().enumerate() {
            if c == &rat(0, 1) {
                continue;
            }
            for i in 0..alg.dim {
                out[i] = out[i].clone() + c.clone() * m.at(i, j).clone();
            }
        }
        out
    };
    for i in 0..alg.dim {
        for j in i + 1..alg.dim {
            let lhs = apply(&alg.bracket(&alg.basis_vector(i), &alg.basis_vector(j))?);
            let rhs = alg.bracket(&apply(&alg.basis_vector(i)), &apply(&alg.basis_vector(j)))?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Image of a subspace under a coordinate map.
pub fn transform_subspace(
    alg: &LieAlgebraDef<Rat>,
    m: &Mat<Rat>,
    s: &Subspace<Rat>,
) -> Result<Subspace<Rat>> {
    let rows: Vec<Vector<Rat>> = s
        .basis()
        .iter()
        .map(|v| {
            let mut out = vec![rat(0, 1); alg.dim];
            for (j, c) in v.iter().enumerate() {
                for i in 0..alg.dim {
                    out[i] = out[i].clone() + c.clone() * m.at(i, j).clone();
                }
            }
            out
        })
        .collect();
    Subspace::span(alg, &rows)
}

// ---------------------------------------------------------------------------
// PSL2(C) isomorphism system
// ---------------------------------------------------------------------------

/// The nine equations tying (c1, c2, d1, d2) and b to the parameter a;
/// all must vanish.
pub fn iso_psl2c_equations(a: &Rat, b: &Rat, w: &[Rat; 4]) -> Vec<Rat> {
    let (c1, c2, d1, d2) = (w[0].clone(), w[1].clone(), w[2].clone(), w[3].clone());
    let sq = |x: &Rat| x.clone() * x.clone();
    let one = rat(1, 1);
    vec![
        sq(&c1) + sq(&c2) + sq(&d1) + sq(&d2) - one,
        d1.clone() * c2.clone() - c1.clone() * d2.clone(),
        d1.clone() * c1.clone() + c2.clone() * d2.clone(),
        c1.clone() * d2.clone() + c2.clone() * d1.clone(),
        c2.clone() * d2.clone() - c1.clone() * d1.clone(),
        (sq(&d2) - sq(&d1) - a.clone() * (sq(&c2) - sq(&c1))) * b.clone()
            - (sq(&c1) - sq(&c2) - a.clone() * (sq(&d2) - sq(&d1))),
        (d1.clone() * d2.clone() + c1.clone() * c2.clone() * a.clone()) * b.clone()
            - (c1.clone() * c2.clone() - a.clone() * d1.clone() * d2.clone()),
        b.clone() * (rat(0, 1) - a.clone() * (sq(&c1) - sq(&c2)) + (sq(&d2) - sq(&d1)))
            - (rat(0, 1) - a.clone() * (sq(&d2) - sq(&d1)) - (sq(&c1) - sq(&c2))),
        b.clone() * (c1.clone() * c2.clone() * a.clone() - d1.clone() * d2.clone())
            - (d1 * d2 * a.clone() + c1 * c2),
    ]
}

#[derive(Debug, Clone)]
pub struct IsoPsl2cSolution {
    /// Solutions of the equation system with an exact witness
    /// (c1, c2, d1, d2) each.
    pub solutions: Vec<(Rat, [Rat; 4])>,
    /// Solutions inside the open parameter interval (-1, 1).
    pub admissible: Vec<Rat>,
}

/// Structured elimination: the five constraint equations force all cross
/// products of the c- and d-pairs to vanish, so one of the two pairs is
/// zero, and each branch determines b.
pub fn solve_iso_psl2c(a: &Rat) -> IsoPsl2cSolution {
    let mut solutions = Vec::new();
    let zero = rat(0, 1);
    if a != &zero {
        // c-branch: c on the unit circle, d = 0 forces a b = 1
        solutions.push((
            rat(1, 1) / a.clone(),
            [rat(1, 1), zero.clone(), zero.clone(), zero.clone()],
        ));
    }
    // d-branch: d on the unit circle, c = 0 forces b = -a
    solutions.push((
        zero.clone() - a.clone(),
        [zero.clone(), zero.clone(), rat(1, 1), zero],
    ));
    let admissible = solutions
        .iter()
        .map(|(b, _)| b.clone())
        .filter(|b| b > &rat(-1, 1) && b < &rat(1, 1))
        .collect();
    IsoPsl2cSolution {
        solutions,
        admissible,
    }
}

/// Brute-force oracle on the 1/20-step lattice of the four unknowns:
/// every lattice point satisfying the five constraint equations exactly
/// forces b through the remaining four; returns the set of forced values.
pub fn iso_psl2c_lattice_oracle(a: &Rat) -> BTreeSet<Rat> {
    let mut out = BTreeSet::new();
    let pi: i64 = a.numer().to_string().parse().unwrap();
    let qi: i64 = a.denom().to_string().parse().unwrap();
    let n = 20i64;
    for c1 in -n..=n {
        for c2 in -n..=n {
            for d1 in -n..=n {
                let rem = n * n - c1 * c1 - c2 * c2 - d1 * d1;
                if rem < 0 {
                    continue;
                }
                let d2r = rem.sqrt();
                for d2 in if d2r == 0 { vec![0] } else { vec![-d2r, d2r] } {
                    if d2 * d2 != rem {
                        continue;
                    }
                    if d1 * c2 - c1 * d2 != 0
                        || d1 * c1 + c2 * d2 != 0
                        || c1 * d2 + c2 * d1 != 0
                        || c2 * d2 - c1 * d1 != 0
                    {
                        continue;
                    }
                    let sq = |x: i64| x * x;
                    // remaining equations as alpha b = beta, scaled exactly
                    let pairs = [
                        (
                            qi * (sq(d2) - sq(d1)) - pi * (sq(c2) - sq(c1)),
                            qi * (sq(c1) - sq(c2)) - pi * (sq(d2) - sq(d1)),
                        ),
                        (qi * d1 * d2 + pi * c1 * c2, qi * c1 * c2 - pi * d1 * d2),
                        (
                            -pi * (sq(c1) - sq(c2)) + qi * (sq(d2) - sq(d1)),
                            -pi * (sq(d2) - sq(d1)) - qi * (sq(c1) - sq(c2)),
                        ),
                        (pi * c1 * c2 - qi * d1 * d2, pi * d1 * d2 + qi * c1 * c2),
                    ];
                    let mut b: Option<Rat> = None;
                    let mut consistent = true;
                    for (alpha, beta) in pairs {
                        if alpha == 0 {
                            if beta != 0 {
                                consistent = false;
                                break;
                            }
                            continue;
                        }
                        let candidate = rat(beta, alpha);
                        match &b {
                            None => b = Some(candidate),
                            Some(prev) if prev != &candidate => {
                                consistent = false;
                                break;
                            }
                            _ => {}
                        }
                    }
                    if consistent {
                        if let Some(bv) = b {
                            out.insert(bv);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Exact subspace-level verification of the admissible branch: the
/// conjugation-with-phi map built from the witness is an automorphism
/// fixing the stabilizer and carrying the complement with parameter a
/// onto the one with parameter b.
pub fn iso_psl2c_verify_subspace(
    cat: &Catalog,
    a: &Rat,
    b: &Rat,
    witness: &[Rat; 4],
) -> Result<bool> {
    let alg = cat.get_algebra("B1")?;
    let m = su2_conjugation_matrix(witness, true)?;
    if !is_automorphism(alg, &m)? {
        return Ok(false);
    }
    let ma = cat.bol_family("m_a", &FamilyParams(vec![("a".into(), a.clone())]))?;
    let mb = cat.bol_family("m_a", &FamilyParams(vec![("a".into(), b.clone())]))?;
    let image = transform_subspace(alg, &m, &ma)?;
    let h = cat.get_subspace("h_4.1")?;
    let h_image = transform_subspace(alg, &m, h)?;
    Ok(image.equals(&mb) && h_image.equals(h))
}

// ---------------------------------------------------------------------------
// Semidirect isomorphism solver
// ---------------------------------------------------------------------------

/// Coordinate matrix of the parameter-elimination automorphism:
/// e1 -> -e1, e2 -> -e2 - c2 e6, e3 -> -e3 - c2 e5, rest fixed.
pub fn gamma_matrix(c2: &Rat) -> Mat<Rat> {
    let mut m = Mat::identity(6);
    *m.at_mut(0, 0) = rat(-1, 1);
    *m.at_mut(1, 1) = rat(-1, 1);
    *m.at_mut(5, 1) = rat(0, 1) - c2.clone();
    *m.at_mut(2, 2) = rat(-1, 1);
    *m.at_mut(4, 2) = rat(0, 1) - c2.clone();
    m
}

/// Coordinate matrix of a member of the automorphism family fixing the
/// stabilizer; parameters satisfy a^2 = b2^2 + b4^2 != 0 and b2 f6 = b4 f5.
#[allow(clippy::too_many_arguments)]
pub fn family_a_matrix(
    a: &Rat,
    b2: &Rat,
    b4: &Rat,
    eps: i64,
    d5: &Rat,
    d6: &Rat,
    f5: &Rat,
    f6: &Rat,
) -> Result<Mat<Rat>> {
    if a.clone() * a.clone() != b2.clone() * b2.clone() + b4.clone() * b4.clone() || a == &rat(0, 1)
    {
        return Err(Error::Domain("family needs a^2 = b2^2 + b4^2 != 0".into()));
    }
    if b2.clone() * f6.clone() != b4.clone() * f5.clone() {
        return Err(Error::Domain("family needs b2 f6 = b4 f5".into()));
    }
    let e = rat(eps, 1);
    let mut m = Mat::zeros(6, 6);
    *m.at_mut(0, 0) = a.clone();
    *m.at_mut(1, 1) = b2.clone() / a.clone();
    *m.at_mut(2, 1) = b4.clone() / a.clone();
    *m.at_mut(0, 1) =
        (e.clone() * d6.clone() * b2.clone() - e.clone() * d5.clone() * b4.clone()) / a.clone();
    *m.at_mut(5, 1) = f5.clone();
    *m.at_mut(4, 1) = f6.clone();
    *m.at_mut(2, 2) = e.clone() * b2.clone() / a.clone();
    *m.at_mut(1, 2) = rat(0, 1) - e.clone() * b4.clone() / a.clone();
    *m.at_mut(0, 2) = (rat(0, 1) - d5.clone() * b2.clone() - d6.clone() * b4.clone()) / a.clone();
    *m.at_mut(5, 2) = rat(0, 1) - e.clone() * f6.clone();
    *m.at_mut(4, 2) = e.clone() * f5.clone();
    *m.at_mut(3, 3) = e.clone();
    *m.at_mut(5, 3) = d5.clone();
    *m.at_mut(4, 3) = d6.clone();
    *m.at_mut(5, 4) = rat(0, 1) - e.clone() * b4.clone();
    *m.at_mut(4, 4) = e * b2.clone();
    *m.at_mut(5, 5) = b2.clone();
    *m.at_mut(4, 5) = b4.clone();
    Ok(m)
}

#[derive(Debug, Clone)]
pub struct IsoSemidirectSolution {
    /// Representative parameter d with d^2 = b3^2 + c3^2.
    pub d: f64,
    pub d_squared: Rat,
    /// Whether the automorphism chain was verified exactly (possible when
    /// d is rational).
    pub exact_chain_verified: Option<bool>,
}

fn rational_sqrt(x: &Rat) -> Option<Rat> {
    if x < &rat(0, 1) {
        return None;
    }
    let n = x.numer().clone();
    let d = x.denom().clone();
    let ns = n.sqrt();
    let ds = d.sqrt();
    if ns.clone() * ns.clone() == n && ds.clone() * ds.clone() == d {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

/// Representative of the isomorphism class of the loop with parameters
/// (b3, c3, c2): the member (d, 0, 0) with d = sqrt(b3^2 + c3^2). When d
/// is rational, the automorphism chain (parameter elimination, sign fix,
/// rotation member of the family) is constructed and verified by exact
/// subspace images.
pub fn solve_iso_semidirect(
    cat: &Catalog,
    b3: &Rat,
    c3: &Rat,
    c2: &Rat,
) -> Result<IsoSemidirectSolution> {
    let d2 = b3.clone() * b3.clone() + c3.clone() * c3.clone();
    if d2 >= rat(1, 1) {
        return Err(Error::Domain(
            "representative exists for b3^2 + c3^2 < 1 only".into(),
        ));
    }
    let d = crate::scalar::rat_to_f64(&d2).sqrt();
    let exact = match rational_sqrt(&d2) {
        Some(dr) => Some(verify_semidirect_chain(cat, b3, c3, c2, &dr)?),
        None => None,
    };
    Ok(IsoSemidirectSolution {
        d,
        d_squared: d2,
        exact_chain_verified: exact,
    })
}

fn verify_semidirect_chain(
    cat: &Catalog,
    b3: &Rat,
    c3: &Rat,
    c2: &Rat,
    d: &Rat,
) -> Result<bool> {
    let alg = cat.get_algebra("B4")?;
    let h = cat.get_subspace("h_sec7_f")?;
    let m_input = cat.bcc_subspace(b3, c3, c2)?;
    let m_nox = cat.bcc_subspace(b3, c3, &rat(0, 1))?;

    // parameter elimination composed with the sign fix
    let gamma = gamma_matrix(c2);
    let zero = rat(0, 1);
    let sign_fix = family_a_matrix(
        &rat(1, 1),
        &rat(-1, 1),
        &zero,
        1,
        &zero,
        &zero,
        &zero,
        &zero,
    )?;
    let chain1 = sign_fix.mul(&gamma);
    let mut ok = is_automorphism(alg, &gamma)? && is_automorphism(alg, &sign_fix)?;
    ok &= transform_subspace(alg, &chain1, &m_input)?.equals(&m_nox);
    ok &= transform_subspace(alg, &chain1, h)?.equals(h);

    // rotation member carrying the representative onto (b3, c3, 0)
    if d != &zero {
        let m_rep = cat.bcc_subspace(d, &zero, &zero)?;
        let alpha = family_a_matrix(
            &rat(1, 1),
            &(b3.clone() / d.clone()),
            &(c3.clone() / d.clone()),
            1,
            &zero,
            &zero,
            &zero,
            &zero,
        )?;
        ok &= is_automorphism(alg, &alpha)?;
        ok &= transform_subspace(alg, &alpha, &m_rep)?.equals(&m_nox);
        ok &= transform_subspace(alg, &alpha, h)?.equals(h);
    } else {
        ok &= m_nox.equals(&cat.bcc_subspace(&zero, &zero, &zero)?);
    }
    Ok(ok)
}

// ---------------------------------------------------------------------------
// Bol complement ansatz scans
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnsatzFamily {
    /// Nine-parameter complements to the compact stabilizer in the complex
    /// simple algebra.
    Sl2C,
    /// Nine-parameter complements to the rotation-translation stabilizer
    /// of the pseudo-euclidean motion algebra.
    Semidirect,
}

#[derive(Debug, Clone)]
pub struct ScanReport {
    pub family: String,
    pub seed: u64,
    pub off_family_samples: u64,
    pub off_family_all_fail: bool,
    pub on_family_samples: u64,
    pub on_family_all_pass: bool,
    pub violations: Vec<String>,
}

impl ScanReport {
    pub fn pass(&self) -> bool {
        self.off_family_all_fail && self.on_family_all_pass
    }
}

pub fn ansatz_subspace(
    cat: &Catalog,
    family: AnsatzFamily,
    p: &[Rat; 9],
) -> Result<Subspace<Rat>> {
    match family {
        AnsatzFamily::Sl2C => {
            let alg = cat.get_algebra("B1")?;
            Subspace::span(
                alg,
                &[
                    alg.combo(&[
                        ("T", rat(1, 1)),
                        ("U", p[0].clone()),
                        ("iT", p[1].clone()),
                        ("iH", p[2].clone()),
                    ])?,
                    alg.combo(&[
                        ("iU", rat(1, 1)),
                        ("U", p[3].clone()),
                        ("iT", p[4].clone()),
                        ("iH", p[5].clone()),
                    ])?,
                    alg.combo(&[
                        ("H", rat(1, 1)),
                        ("U", p[6].clone()),
                        ("iT", p[7].clone()),
                        ("iH", p[8].clone()),
                    ])?,
                ],
            )
        }
        AnsatzFamily::Semidirect => {
            let alg = cat.get_algebra("B4")?;
            Subspace::span(
                alg,
                &[
                    alg.combo(&[
                        ("e1", rat(1, 1)),
                        ("e4", p[0].clone()),
                        ("e5", p[1].clone()),
                        ("e6", p[2].clone()),
                    ])?,
                    alg.combo(&[
                        ("e2", rat(1, 1)),
                        ("e4", p[3].clone()),
                        ("e5", p[4].clone()),
                        ("e6", p[5].clone()),
                    ])?,
                    alg.combo(&[
                        ("e3", rat(1, 1)),
                        ("e4", p[6].clone()),
                        ("e5", p[7].clone()),
                        ("e6", p[8].clone()),
                    ])?,
                ],
            )
        }
    }
}

/// Whether an ansatz point lies on one of the known Bol-complement
/// families (exact pattern match on the parameters).
pub fn is_on_family(family: AnsatzFamily, p: &[Rat; 9]) -> bool {
    let z = rat(0, 1);
    match family {
        AnsatzFamily::Sl2C => {
            let ma = p[1] == z
                && p[2] == z
                && p[3] == z
                && p[4] == p[0]
                && p[5] == z
                && p[6] == z
                && p[7] == z
                && p[8] == z
                && p[0] != rat(1, 1)
                && p[0] != rat(-1, 1);
            let md = p[0] == rat(1, 1)
                && p[1] == z
                && p[2] == z
                && p[3] == z
                && p[4] == rat(1, 1)
                && p[5] == p[6]
                && p[5] != z
                && p[7] == z
                && p[8] == z;
            ma || md
        }
        AnsatzFamily::Semidirect => {
            let on = p[0] == z
                && p[1] == p[3]
                && p[2] == (z.clone() - p[6].clone())
                && p[4] == z
                && p[5] == p[7]
                && p[8] == z;
            if !on {
                return false;
            }
            let d2 = p[3].clone() * p[3].clone() + p[6].clone() * p[6].clone();
            d2 != rat(1, 1)
        }
    }
}

/// Samples off-family points (all must fail the complement test) and
/// checks fixed on-family points (all must pass). Deterministic per seed.
pub fn bol_complement_scan(
    cat: &Catalog,
    family: AnsatzFamily,
    n_samples: u64,
    seed: u64,
) -> Result<ScanReport> {
    let (alg, h) = match family {
        AnsatzFamily::Sl2C => (cat.get_algebra("B1")?, cat.get_subspace("h_4.1")?),
        AnsatzFamily::Semidirect => (cat.get_algebra("B4")?, cat.get_subspace("h_sec7_f")?),
    };
    let name = match family {
        AnsatzFamily::Sl2C => "sl2c_ansatz",
        AnsatzFamily::Semidirect => "semidirect_ansatz",
    };
    let mut rng = SplitRng::new(seed).split(&format!("scan-{name}"));
    let mut violations = Vec::new();

    let mut off_count = 0;
    while off_count < n_samples {
        let mut p: [Rat; 9] = Default::default();
        for slot in p.iter_mut() {
            *slot = rng.rational(3, 2);
        }
        if is_on_family(family, &p) {
            continue;
        }
        off_count += 1;
        let m = ansatz_subspace(cat, family, &p)?;
        if crate::lie::is_bol_complement(alg, &m, h)? {
            violations.push(format!("off-family point passes: {p:?}"));
        }
    }

    let on_points: Vec<[Rat; 9]> = on_family_points(family);
    let mut on_ok = true;
    for p in &on_points {
        debug_assert!(is_on_family(family, p));
        let m = ansatz_subspace(cat, family, p)?;
        if !crate::lie::is_bol_complement(alg, &m, h)? {
            on_ok = false;
            violations.push(format!("on-family point fails: {p:?}"));
        }
    }

    Ok(ScanReport {
        family: name.into(),
        seed,
        off_family_samples: n_samples,
        off_family_all_fail: violations.iter().all(|v| !v.starts_with("off-family")),
        on_family_samples: on_points.len() as u64,
        on_family_all_pass: on_ok,
        violations,
    })
}

fn on_family_points(family: AnsatzFamily) -> Vec<[Rat; 9]> {
    let z = rat(0, 1);
    match family {
        AnsatzFamily::Sl2C => {
            let mut pts = Vec::new();
            for a in [rat(0, 1), rat(1, 3), rat(-1, 2), rat(3, 4), rat(2, 1)] {
                pts.push([
                    a.clone(),
                    z.clone(),
                    z.clone(),
                    z.clone(),
                    a,
                    z.clone(),
                    z.clone(),
                    z.clone(),
                    z.clone(),
                ]);
            }
            for d in [rat(1, 2), rat(-1, 1), rat(2, 1)] {
                pts.push([
                    rat(1, 1),
                    z.clone(),
                    z.clone(),
                    z.clone(),
                    rat(1, 1),
                    d.clone(),
                    d,
                    z.clone(),
                    z.clone(),
                ]);
            }
            pts
        }
        AnsatzFamily::Semidirect => {
            let mut pts = Vec::new();
            for (b3, c3, c2) in [
                (rat(0, 1), rat(0, 1), rat(0, 1)),
                (rat(1, 2), rat(0, 1), rat(3, 2)),
                (rat(1, 3), rat(-1, 4), rat(-1, 1)),
                (rat(2, 1), rat(1, 2), rat(1, 1)),
                (rat(-3, 4), rat(1, 5), rat(0, 1)),
            ] {
                pts.push([
                    z.clone(),
                    b3.clone(),
                    z.clone() - c3.clone(),
                    b3.clone(),
                    z.clone(),
                    c2.clone(),
                    c3.clone(),
                    c2,
                    z.clone(),
                ]);
            }
            pts
        }
    }
}

// ---------------------------------------------------------------------------
// Conjugacy-type obstructions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ElementType {
    Zero,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// One conjugation-invariant component of an algebra: coordinate indices
/// plus the invariant quadratic form on them (zero Gram = component on
/// which the group acts transitively, so only vanishing matters).
#[derive(Debug, Clone)]
pub struct Component {
    pub name: String,
    pub indices: Vec<usize>,
    pub gram: Mat<Rat>,
}

#[derive(Debug, Clone)]
pub struct ConjugacyProfile {
    pub algebra: String,
    pub components: Vec<Component>,
}

/// What must match for two elements to lie on the same orbit up to scale:
/// per component the vanishing flag and form sign, plus the full vector
/// of quadratic values up to one positive factor.
#[derive(Debug, Clone, PartialEq)]
pub struct Signature {
    pub types: Vec<(bool, ElementType)>,
    pub values: Vec<Rat>,
}

impl ConjugacyProfile {
    pub fn signature(&self, x: &Vector<Rat>) -> Signature {
        let mut types = Vec::new();
        let mut values = Vec::new();
        for comp in &self.components {
            let coords: Vec<Rat> = comp.indices.iter().map(|&i| x[i].clone()).collect();
            let nonzero = coords.iter().any(|c| c != &rat(0, 1));
            let mut val = rat(0, 1);
            for i in 0..coords.len() {
                for j in 0..coords.len() {
                    val += coords[i].clone() * comp.gram.at(i, j).clone() * coords[j].clone();
                }
            }
            let ty = if !nonzero {
                ElementType::Zero
            } else if val > rat(0, 1) {
                ElementType::Hyperbolic
            } else if val < rat(0, 1) {
                ElementType::Elliptic
            } else {
                ElementType::Parabolic
            };
            types.push((nonzero, ty));
            values.push(val);
        }
        Signature { types, values }
    }
}

/// Signatures are compatible when the type flags agree and the quadratic
/// value vectors are positively proportional.
pub fn signatures_match(a: &Signature, b: &Signature) -> bool {
    if a.types != b.types {
        return false;
    }
    let mut t: Option<Rat> = None;
    for (va, vb) in a.values.iter().zip(&b.values) {
        match (va == &rat(0, 1), vb == &rat(0, 1)) {
            (true, true) => continue,
            (false, false) => {
                let ratio = va.clone() / vb.clone();
                if ratio <= rat(0, 1) {
                    return false;
                }
                match &t {
                    None => t = Some(ratio),
                    Some(prev) => {
                        if prev != &ratio {
                            return false;
                        }
                    }
                }
            }
            _ => return false,
        }
    }
    true
}

/// Conjugation-invariant component data for the catalog algebras. The
/// distinguished first component carries the element-type classification;
/// translation components carry their own orbit form.
pub fn conjugacy_profile(algebra: &str) -> Option<ConjugacyProfile> {
    let diag = |d: &[i64]| {
        let mut m = Mat::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            *m.at_mut(i, i) = rat(v, 1);
        }
        m
    };
    let comp = |name: &str, idx: &[usize], gram: Mat<Rat>| Component {
        name: name.into(),
        indices: idx.to_vec(),
        gram,
    };
    let profile = match algebra {
        "B1" => vec![comp(
            "simple",
            &[0, 1, 2, 3, 4, 5],
            diag(&[1, 1, -1, -1, -1, 1]),
        )],
        "B2" => vec![
            comp("sl2", &[1, 2, 3], diag(&[1, 1, -1])),
            comp("centre", &[0], diag(&[1])),
        ],
        "case5.1" => vec![
            comp("so3", &[1, 2, 3], diag(&[-1, -1, -1])),
            comp("centre", &[0], diag(&[1])),
        ],
        "B3" => vec![
            comp("so3", &[1, 2, 3], diag(&[-1, -1, -1])),
            comp("translations", &[0, 4, 5], diag(&[1, 1, 1])),
        ],
        "B4" => vec![
            comp("sl2", &[1, 2, 3], diag(&[1, 1, -1])),
            comp("translations", &[0, 4, 5], diag(&[-1, 1, 1])),
        ],
        "case7" => vec![
            comp("sl2", &[1, 2, 3], diag(&[1, -1, 1])),
            comp("translations", &[0, 4], Mat::zeros(2, 2)),
        ],
        "prod_sl2" => vec![
            comp("left", &[0, 1, 2], diag(&[1, 1, -1])),
            comp("right", &[3, 4, 5], diag(&[1, 1, -1])),
        ],
        _ => return None,
    };
    Some(ConjugacyProfile {
        algebra: algebra.into(),
        components: profile,
    })
}

/// Type and form value of the distinguished (first) component.
pub fn element_type(profile: &ConjugacyProfile, x: &Vector<Rat>) -> (ElementType, Rat) {
    let sig = profile.signature(x);
    (sig.types[0].1, sig.values[0].clone())
}

/// Nonzero coefficient grid over a subspace basis, first nonzero
/// coefficient positive (signatures are scale-invariant).
fn grid_elements(s: &Subspace<Rat>) -> Vec<Vector<Rat>> {
    let basis = s.basis();
    let k = basis.len();
    let dim = s.ambient_dim;
    let range = [-2i64, -1, 0, 1, 2];
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    'outer: loop {
        let coeffs: Vec<i64> = idx.iter().map(|&i| range[i]).collect();
        if let Some(first) = coeffs.iter().find(|&&c| c != 0) {
            if *first > 0 {
                let mut v = vec![rat(0, 1); dim];
                for (ci, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        for d in 0..dim {
                            v[d] = v[d].clone() + rat(c, 1) * basis[ci][d].clone();
                        }
                    }
                }
                out.push(v);
            }
        }
        let mut pos = 0;
        loop {
            if pos == k {
                break 'outer;
            }
            idx[pos] += 1;
            if idx[pos] < range.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
    out
}

/// Searches for nonzero elements of m and h with matching conjugacy
/// signatures; such a pair rules out m as the tangent space of a loop
/// with stabilizer algebra h.
pub fn lemma3_obstruction(
    profile: &ConjugacyProfile,
    m: &Subspace<Rat>,
    h: &Subspace<Rat>,
) -> Option<(Vector<Rat>, Vector<Rat>)> {
    let m_elems = grid_elements(m);
    let h_elems = grid_elements(h);
    let h_sigs: Vec<Signature> = h_elems.iter().map(|v| profile.signature(v)).collect();
    for xm in &m_elems {
        let sm = profile.signature(xm);
        for (xh, sh) in h_elems.iter().zip(&h_sigs) {
            if signatures_match(&sm, sh) {
                return Some((xm.clone(), xh.clone()));
            }
        }
    }
    None
}

/// Element types present in the distinguished component over a subspace.
pub fn sl2_type_spectrum(profile: &ConjugacyProfile, m: &Subspace<Rat>) -> BTreeSet<ElementType> {
    grid_elements(m)
        .iter()
        .map(|v| profile.signature(v).types[0].1)
        .collect()
}

/// Whether the subspace contains a nonzero element with vanishing
/// distinguished component (a pure translation).
pub fn has_pure_translation(profile: &ConjugacyProfile, m: &Subspace<Rat>) -> bool {
    grid_elements(m).iter().any(|v| {
        let sig = profile.signature(v);
        !sig.types[0].0 && sig.types.iter().skip(1).any(|(nz, _)| *nz)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::lie::{derived_space, generated_subalgebra};

    fn cat() -> Catalog {
        Catalog::builtin()
    }

    #[test]
    fn grading_ledger() {
        let cat = cat();
        let alg = cat.get_algebra("B1").unwrap();
        let v = bruck_grading(
            alg,
            cat.get_subspace("m_4.1").unwrap(),
            cat.get_subspace("h_4.1").unwrap(),
        )
        .unwrap();
        assert!(v.is_graded());
        let b4 = cat.get_algebra("B4").unwrap();
        let h_f = cat.get_subspace("h_sec7_f").unwrap();
        for c2 in [rat(0, 1), rat(5, 1), rat(-2, 3)] {
            let m = cat.bcc_subspace(&rat(0, 1), &rat(0, 1), &c2).unwrap();
            let v = bruck_grading(b4, &m, h_f).unwrap();
            assert!(v.is_graded(), "c2 = {c2}");
        }
        // tilted representative not reductive: [e4, e1 + d e5] is a pure
        // e6 multiple outside the complement
        let m_d = cat.bcc_subspace(&rat(1, 2), &rat(0, 1), &rat(0, 1)).unwrap();
        let (ok, witness) = left_a_check(b4, &m_d, h_f).unwrap();
        assert!(!ok);
        let (_, _, b) = witness.unwrap();
        assert!(b
            .iter()
            .enumerate()
            .all(|(i, c)| (i == 5) == (c != &rat(0, 1))));
        let m0 = cat.get_subspace("m_4.1").unwrap();
        assert!(
            left_a_check(alg, m0, cat.get_subspace("h_4.1").unwrap())
                .unwrap()
                .0
        );
    }

    #[test]
    fn scheerer_data_left_a_but_not_bruck() {
        let cat = cat();
        let b2 = cat.get_algebra("B2").unwrap();
        let m = cat.get_subspace("m_5.3").unwrap();
        let h = cat.get_subspace("h3_sec5_k1").unwrap();
        assert!(left_a_check(b2, m, h).unwrap().0);
        let v = bruck_grading(b2, m, h).unwrap();
        assert!(!v.mm_in_h);
        assert!(v.hm_in_m && v.hh_in_h);
    }

    #[test]
    fn left_a_fails_for_tilted_complex_complement() {
        let cat = cat();
        let alg = cat.get_algebra("B1").unwrap();
        let h = cat.get_subspace("h_4.1").unwrap();
        let m = cat
            .bol_family("m_a", &FamilyParams(vec![("a".into(), rat(1, 2))]))
            .unwrap();
        assert!(!left_a_check(alg, &m, h).unwrap().0);
    }

    #[test]
    fn compactness_criterion() {
        let cat = cat();
        let alg = cat.get_algebra("B1").unwrap();
        for (a, expect) in [
            (rat(0, 1), true),
            (rat(1, 2), true),
            (rat(-3, 4), true),
            (rat(3, 2), false),
            (rat(2, 1), false),
        ] {
            let m = cat
                .bol_family("m_a", &FamilyParams(vec![("a".into(), a.clone())]))
                .unwrap();
            let der = derived_space(alg, &m).unwrap();
            let v = compactness_check(alg, &der).unwrap();
            assert_eq!(v.compact, expect, "a = {a}");
        }
        for d in [rat(1, 2), rat(1, 1), rat(2, 1)] {
            let m = cat
                .bol_family("m_d", &FamilyParams(vec![("d".into(), d.clone())]))
                .unwrap();
            let der = derived_space(alg, &m).unwrap();
            let v = compactness_check(alg, &der).unwrap();
            assert!(!v.compact, "d = {d}");
            let (w, kv) = v.witness.expect("needs witness");
            assert_eq!(kv, rat(0, 1), "isotropic witness expected for d = {d}");
            assert!(w.iter().any(|c| c != &rat(0, 1)));
        }
        let m0 = cat.get_subspace("m_4.1").unwrap();
        assert!(compactness_check(alg, m0).is_err());
    }

    #[test]
    fn compactness_is_conjugation_invariant() {
        let cat = cat();
        let alg = cat.get_algebra("B1").unwrap();
        let aut = su2_conjugation_matrix(&[rat(1, 3), rat(2, 3), rat(2, 3), rat(0, 1)], false)
            .unwrap();
        for a in [rat(1, 2), rat(2, 1)] {
            let m = cat
                .bol_family("m_a", &FamilyParams(vec![("a".into(), a.clone())]))
                .unwrap();
            let der = derived_space(alg, &m).unwrap();
            let moved = transform_subspace(alg, &aut, &der).unwrap();
            let v1 = compactness_check(alg, &der).unwrap();
            let v2 = compactness_check(alg, &moved).unwrap();
            assert_eq!(v1.compact, v2.compact, "a = {a}");
        }
    }

    #[test]
    fn angle_invariant_separates_families() {
        let cat = cat();
        let alg = cat.get_algebra("B1").unwrap();
        let m0 = cat.get_subspace("m_4.1").unwrap();
        let ma = |a: Rat| {
            cat.bol_family("m_a", &FamilyParams(vec![("a".into(), a)]))
                .unwrap()
        };
        let self_pair = angle_invariant(alg, m0, m0).unwrap();
        assert!(!self_pair.degenerate);
        for (re, im) in &self_pair.spectrum {
            assert!((re - 1.0).abs() < 1e-12 && *im == 0.0);
        }
        let plus = angle_invariant(alg, &ma(rat(1, 2)), m0).unwrap();
        let minus = angle_invariant(alg, &ma(rat(-1, 2)), m0).unwrap();
        assert!(plus.approx_eq(&minus, 1e-10));
        let quarter = angle_invariant(alg, &ma(rat(1, 4)), m0).unwrap();
        assert!(!plus.approx_eq(&quarter, 1e-10));
    }

    #[test]
    fn angle_invariant_semidirect_reproduces_radius() {
        let cat = cat();
        let alg = cat.get_algebra("B4").unwrap();
        let mhat = cat.get_subspace("m_6.3").unwrap();
        let m1 = cat.bcc_subspace(&rat(3, 10), &rat(4, 10), &rat(0, 1)).unwrap();
        let m2 = cat.bcc_subspace(&rat(1, 2), &rat(0, 1), &rat(7, 1)).unwrap();
        let m3 = cat.bcc_subspace(&rat(1, 4), &rat(0, 1), &rat(0, 1)).unwrap();
        let i1 = angle_invariant(alg, &m1, mhat).unwrap();
        let i2 = angle_invariant(alg, &m2, mhat).unwrap();
        let i3 = angle_invariant(alg, &m3, mhat).unwrap();
        assert!(i1.degenerate && i1.kernel_dims == (1, 1));
        assert!(i1.approx_eq(&i2, 1e-10));
        assert!(!i1.approx_eq(&i3, 1e-10));
    }

    #[test]
    fn iso_psl2c_solutions_and_backsubstitution() {
        let a = rat(1, 2);
        let sol = solve_iso_psl2c(&a);
        let values: Vec<Rat> = sol.solutions.iter().map(|(b, _)| b.clone()).collect();
        assert!(values.contains(&rat(2, 1)) && values.contains(&rat(-1, 2)));
        assert_eq!(sol.admissible, vec![rat(-1, 2)]);
        for (b, w) in &sol.solutions {
            let eqs = iso_psl2c_equations(&a, b, w);
            assert!(eqs.iter().all(|e| e == &rat(0, 1)), "b = {b}");
        }
        let sol0 = solve_iso_psl2c(&rat(0, 1));
        assert_eq!(sol0.admissible, vec![rat(0, 1)]);
    }

    #[test]
    fn iso_psl2c_subspace_witness() {
        let cat = cat();
        let a = rat(1, 2);
        let sol = solve_iso_psl2c(&a);
        let (b, w) = sol
            .solutions
            .iter()
            .find(|(b, _)| b == &rat(-1, 2))
            .unwrap();
        assert!(iso_psl2c_verify_subspace(&cat, &a, b, w).unwrap());
    }

    #[test]
    fn su2_conjugation_matrices_are_automorphisms() {
        let cat = cat();
        let alg = cat.get_algebra("B1").unwrap();
        for w in [
            [rat(3, 5), rat(4, 5), rat(0, 1), rat(0, 1)],
            [rat(1, 3), rat(2, 3), rat(2, 3), rat(0, 1)],
            [rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)],
        ] {
            for phi in [false, true] {
                let m = su2_conjugation_matrix(&w, phi).unwrap();
                assert!(is_automorphism(alg, &m).unwrap(), "{w:?} phi={phi}");
            }
        }
        assert!(
            su2_conjugation_matrix(&[rat(1, 1), rat(1, 1), rat(0, 1), rat(0, 1)], false).is_err()
        );
    }

    #[test]
    fn angle_invariant_is_automorphism_invariant() {
        let cat = cat();
        let alg = cat.get_algebra("B1").unwrap();
        let m0 = cat.get_subspace("m_4.1").unwrap();
        let ma = cat
            .bol_family("m_a", &FamilyParams(vec![("a".into(), rat(1, 3))]))
            .unwrap();
        let base = angle_invariant(alg, &ma, m0).unwrap();
        let aut =
            su2_conjugation_matrix(&[rat(3, 5), rat(0, 1), rat(4, 5), rat(0, 1)], true).unwrap();
        let ma2 = transform_subspace(alg, &aut, &ma).unwrap();
        let m02 = transform_subspace(alg, &aut, m0).unwrap();
        let moved = angle_invariant(alg, &ma2, &m02).unwrap();
        assert!(base.approx_eq(&moved, 1e-10));
    }

    #[test]
    fn angle_invariant_stable_under_family_a() {
        let cat = cat();
        let alg = cat.get_algebra("B4").unwrap();
        let mhat = cat.get_subspace("m_6.3").unwrap();
        let m = cat.bcc_subspace(&rat(1, 3), &rat(1, 4), &rat(2, 1)).unwrap();
        let base = angle_invariant(alg, &m, mhat).unwrap();
        let z = rat(0, 1);
        for aut in [
            family_a_matrix(&rat(1, 1), &rat(3, 5), &rat(4, 5), 1, &z, &z, &z, &z).unwrap(),
            family_a_matrix(
                &rat(5, 1),
                &rat(3, 1),
                &rat(-4, 1),
                -1,
                &rat(1, 2),
                &z,
                &z,
                &z,
            )
            .unwrap(),
        ] {
            let m2 = transform_subspace(alg, &aut, &m).unwrap();
            let mhat2 = transform_subspace(alg, &aut, mhat).unwrap();
            let moved = angle_invariant(alg, &m2, &mhat2).unwrap();
            assert!(base.approx_eq(&moved, 1e-10), "{}", moved.render());
        }
    }

    #[test]
    fn family_a_members_are_automorphisms() {
        let cat = cat();
        let alg = cat.get_algebra("B4").unwrap();
        let z = rat(0, 1);
        let cases: Vec<Mat<Rat>> = vec![
            family_a_matrix(&rat(1, 1), &rat(3, 5), &rat(4, 5), 1, &z, &z, &z, &z).unwrap(),
            family_a_matrix(
                &rat(5, 1),
                &rat(3, 1),
                &rat(4, 1),
                -1,
                &rat(1, 2),
                &rat(-1, 3),
                &rat(3, 1),
                &rat(4, 1),
            )
            .unwrap(),
            family_a_matrix(
                &rat(-5, 1),
                &rat(3, 1),
                &rat(4, 1),
                1,
                &z,
                &rat(2, 1),
                &rat(3, 2),
                &rat(2, 1),
            )
            .unwrap(),
        ];
        let h = cat.get_subspace("h_sec7_f").unwrap();
        for m in cases {
            assert!(is_automorphism(alg, &m).unwrap());
            assert!(transform_subspace(alg, &m, h).unwrap().equals(h));
        }
        assert!(family_a_matrix(&rat(2, 1), &rat(1, 1), &z, 1, &z, &z, &z, &z).is_err());
        assert!(family_a_matrix(&rat(1, 1), &rat(1, 1), &z, 1, &z, &z, &z, &rat(1, 1)).is_err());
    }

    #[test]
    fn iso_semidirect_representative() {
        let cat = cat();
        let sol = solve_iso_semidirect(&cat, &rat(0, 1), &rat(0, 1), &rat(5, 1)).unwrap();
        assert!(sol.d.abs() < 1e-15);
        assert_eq!(sol.exact_chain_verified, Some(true));
        let sol = solve_iso_semidirect(&cat, &rat(3, 10), &rat(4, 10), &rat(7, 10)).unwrap();
        assert!((sol.d - 0.5).abs() < 1e-15);
        assert_eq!(sol.d_squared, rat(1, 4));
        assert_eq!(sol.exact_chain_verified, Some(true));
        let sol = solve_iso_semidirect(&cat, &rat(1, 3), &rat(1, 3), &rat(0, 1)).unwrap();
        assert!(sol.exact_chain_verified.is_none());
        assert!((sol.d - (2f64 / 9.0).sqrt()).abs() < 1e-15);
        assert!(solve_iso_semidirect(&cat, &rat(1, 1), &rat(1, 1), &rat(0, 1)).is_err());
    }

    #[test]
    fn gamma_is_automorphism_and_kills_c2() {
        let cat = cat();
        let alg = cat.get_algebra("B4").unwrap();
        for c2 in [rat(5, 1), rat(-1, 2), rat(0, 1)] {
            let g = gamma_matrix(&c2);
            assert!(is_automorphism(alg, &g).unwrap());
            let m = cat.bcc_subspace(&rat(1, 3), &rat(1, 4), &c2).unwrap();
            let img = transform_subspace(alg, &g, &m).unwrap();
            let expect = cat
                .bcc_subspace(&rat(-1, 3), &rat(-1, 4), &rat(0, 1))
                .unwrap();
            assert!(img.equals(&expect), "c2 = {c2}");
        }
    }

    #[test]
    fn lattice_oracle_confirms_solver() {
        let a = rat(1, 2);
        let found = iso_psl2c_lattice_oracle(&a);
        let expect: BTreeSet<Rat> = [rat(2, 1), rat(-1, 2)].into_iter().collect();
        assert_eq!(found, expect);
    }

    #[test]
    fn lemma3_instances() {
        let cat = cat();
        let prof = conjugacy_profile("prod_sl2").unwrap();
        let m = cat.get_subspace("m_prod").unwrap();
        let h1 = cat.get_subspace("h1_prod").unwrap();
        assert!(lemma3_obstruction(&prof, m, h1).is_some());

        let prof2 = conjugacy_profile("B2").unwrap();
        let m1 = cat.get_subspace("m_5.2").unwrap();
        let m2 = cat.get_subspace("m_5.3").unwrap();
        for h in ["h2_sec5_k0", "h2_sec5_k1"] {
            let (xm, xh) = lemma3_obstruction(&prof2, m1, cat.get_subspace(h).unwrap())
                .unwrap_or_else(|| panic!("expected conflict for {h}"));
            assert_eq!(element_type(&prof2, &xm).0, ElementType::Parabolic);
            assert_eq!(element_type(&prof2, &xh).0, ElementType::Parabolic);
        }
        for h in ["h2_sec5_k0", "h2_sec5_k1", "h3_sec5_k0", "h3_sec5_k1"] {
            assert!(
                lemma3_obstruction(&prof2, m2, cat.get_subspace(h).unwrap()).is_none(),
                "no conflict expected for {h}"
            );
        }

        let prof1 = conjugacy_profile("B1").unwrap();
        assert!(lemma3_obstruction(
            &prof1,
            cat.get_subspace("m_4.1").unwrap(),
            cat.get_subspace("h_4.1").unwrap()
        )
        .is_none());

        let prof7 = conjugacy_profile("case7").unwrap();
        let m7 = cat.get_subspace("m_7").unwrap();
        let spectrum = sl2_type_spectrum(&prof7, m7);
        assert!(spectrum.contains(&ElementType::Hyperbolic));
        assert!(spectrum.contains(&ElementType::Elliptic));
        assert!(spectrum.contains(&ElementType::Parabolic));
        assert!(has_pure_translation(&prof7, m7));

        let prof4 = conjugacy_profile("B4").unwrap();
        let m62 = cat.get_subspace("m_6.2").unwrap();
        let hc = cat.get_subspace("h_sec7_c").unwrap();
        let (xm, xh) = lemma3_obstruction(&prof4, m62, hc).expect("conflict expected");
        assert_eq!(element_type(&prof4, &xm).0, ElementType::Parabolic);
        assert_eq!(element_type(&prof4, &xh).0, ElementType::Parabolic);
        let m63 = cat.get_subspace("m_6.3").unwrap();
        assert!(lemma3_obstruction(&prof4, m63, hc).is_none());
    }

    #[test]
    fn scan_families() {
        let cat = cat();
        for fam in [AnsatzFamily::Sl2C, AnsatzFamily::Semidirect] {
            let rep = bol_complement_scan(&cat, fam, 60, 2024).unwrap();
            assert!(rep.pass(), "{:?}", rep.violations);
        }
    }

    #[test]
    fn scan_is_deterministic() {
        let cat = cat();
        let a = bol_complement_scan(&cat, AnsatzFamily::Sl2C, 30, 7).unwrap();
        let b = bol_complement_scan(&cat, AnsatzFamily::Sl2C, 30, 7).unwrap();
        assert_eq!(a.violations, b.violations);
        assert_eq!(a.off_family_all_fail, b.off_family_all_fail);
    }

    #[test]
    fn graded_pairs_satisfy_bol_algebra_identity() {
        let cat = cat();
        let alg = cat.get_algebra("B1").unwrap();
        let m = cat.get_subspace("m_4.1").unwrap();
        let h = cat.get_subspace("h_4.1").unwrap();
        assert!(crate::lie::is_bol_algebra(alg, m, h).unwrap().pass);
        let ma = cat
            .bol_family("m_a", &FamilyParams(vec![("a".into(), rat(1, 2))]))
            .unwrap();
        assert!(crate::lie::is_bol_algebra(alg, &ma, h).unwrap().pass);
        // a generic ansatz point fails the five-term identity
        let p = [
            rat(1, 2),
            rat(1, 3),
            rat(0, 1),
            rat(1, 1),
            rat(0, 1),
            rat(1, 5),
            rat(0, 1),
            rat(2, 1),
            rat(0, 1),
        ];
        assert!(!is_on_family(AnsatzFamily::Sl2C, &p));
        let m_bad = ansatz_subspace(&cat, AnsatzFamily::Sl2C, &p).unwrap();
        assert!(!crate::lie::is_bol_algebra(alg, &m_bad, h).unwrap().pass);
    }

    #[test]
    fn lts_conjugation_invariance() {
        let cat = cat();
        let alg = cat.get_algebra("B4").unwrap();
        let m = cat.get_subspace("m_6.3").unwrap();
        let aut = family_a_matrix(
            &rat(5, 1),
            &rat(3, 1),
            &rat(4, 1),
            1,
            &rat(1, 1),
            &rat(0, 1),
            &rat(0, 1),
            &rat(0, 1),
        )
        .unwrap();
        let img = transform_subspace(alg, &aut, m).unwrap();
        assert!(crate::lie::is_lie_triple_system(alg, &img).unwrap().pass);
    }

    #[test]
    fn generated_subalgebra_of_families_is_everything() {
        let cat = cat();
        let alg = cat.get_algebra("B1").unwrap();
        for d in [rat(1, 2), rat(2, 1)] {
            let m = cat
                .bol_family("m_d", &FamilyParams(vec![("d".into(), d)]))
                .unwrap();
            assert_eq!(generated_subalgebra(alg, &m).unwrap().rank(), 6);
        }
    }
}
