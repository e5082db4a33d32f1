//! Loop contexts: a loop is presented by a group, a stabilizer membership
//! test, a coset normal form, and a section evaluator whose image acts
//! sharply transitively on the coset space. Multiplication is
//! xH * yH = sigma(xH) yH. All checks run against a context through the
//! [`LoopContext`] trait and report seeded, reproducible residuals.

pub mod divergence;
pub mod hyperbolic;
pub mod nonbol;
pub mod pseudo_euclidean;
pub mod scheerer;

use crate::report::VerificationReport;
use crate::rng::SplitRng;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Section known to be global; samples range over a wide box.
    Global,
    /// Section only known locally; samples stay in a small box.
    Local,
}

pub trait LoopContext {
    type G: Clone;

    fn label(&self) -> &str;
    /// Catalog section tag used in reports.
    fn section_tag(&self) -> &str;

    fn group_mul(&self, a: &Self::G, b: &Self::G) -> Self::G;
    fn group_inv(&self, a: &Self::G) -> Self::G;
    fn identity(&self) -> Self::G;

    /// Distance of `g` from the stabilizer subgroup.
    fn stabilizer_residual(&self, g: &Self::G) -> f64;
    /// Canonical representative of the coset gH.
    fn normal_form(&self, g: &Self::G) -> Self::G;
    /// Section element of the coset represented by `rep` (canonical form).
    fn section(&self, rep: &Self::G) -> Self::G;

    fn distance(&self, a: &Self::G, b: &Self::G) -> f64;
    /// Random canonical coset representative.
    fn sample_coset(&self, rng: &mut SplitRng) -> Self::G;
    /// Random group element (not restricted to the section image).
    fn sample_group(&self, rng: &mut SplitRng) -> Self::G;

    /// Smooth 3-coordinate chart of canonical representatives, used by the
    /// numerical division fallback.
    fn chart(&self, rep: &Self::G) -> [f64; 3];
    fn unchart(&self, c: &[f64; 3]) -> Self::G;
    /// Wraps a chart difference (angle-like coordinates).
    fn chart_wrap(&self, diff: [f64; 3]) -> [f64; 3] {
        diff
    }

    /// Starting chart point for the numerical right-division solve.
    fn right_division_start(&self, b: &Self::G, _a: &Self::G) -> [f64; 3] {
        self.chart(b)
    }

    fn is_bol(&self) -> bool;
    fn scope(&self) -> Scope;
}

/// x * y = normal form of sigma(x) y.
pub fn loop_mul<C: LoopContext>(ctx: &C, x: &C::G, y: &C::G) -> C::G {
    ctx.normal_form(&ctx.group_mul(&ctx.section(x), y))
}

/// Solution of a * x = b: x = sigma(a)^{-1} b.
pub fn left_divide<C: LoopContext>(ctx: &C, a: &C::G, b: &C::G) -> C::G {
    ctx.normal_form(&ctx.group_mul(&ctx.group_inv(&ctx.section(a)), b))
}

/// lambda_a^{-1}(e): the left inverse used by the Bol division formula.
pub fn left_inverse<C: LoopContext>(ctx: &C, a: &C::G) -> C::G {
    left_divide(ctx, a, &ctx.identity())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisionMethod {
    BolFormula,
    NumericFallback,
}

/// Solution of x * a = b. Bol contexts use x = a^{-1} * [(a * b) * a^{-1}];
/// other contexts fall back to a damped Newton iteration on the chart and
/// flag it in the result.
pub fn right_divide<C: LoopContext>(ctx: &C, b: &C::G, a: &C::G) -> Result<(C::G, DivisionMethod)> {
    if ctx.is_bol() {
        let ainv = left_inverse(ctx, a);
        let ab = loop_mul(ctx, a, b);
        let x = loop_mul(ctx, &ainv, &loop_mul(ctx, &ab, &ainv));
        Ok((x, DivisionMethod::BolFormula))
    } else {
        let x = numeric_right_divide(ctx, b, a, &ctx.right_division_start(b, a))?;
        Ok((x, DivisionMethod::NumericFallback))
    }
}

/// Damped Newton iteration for x * a = b on the context chart.
pub fn numeric_right_divide<C: LoopContext>(
    ctx: &C,
    b: &C::G,
    a: &C::G,
    start: &[f64; 3],
) -> Result<C::G> {
    let target = ctx.chart(b);
    let resid = |c: &[f64; 3]| -> [f64; 3] {
        let x = ctx.unchart(c);
        let got = ctx.chart(&loop_mul(ctx, &x, a));
        ctx.chart_wrap([
            got[0] - target[0],
            got[1] - target[1],
            got[2] - target[2],
        ])
    };
    let mut c = *start;
    let mut damping = 0.8;
    for iter in 0..200 {
        let f = resid(&c);
        let err = f.iter().map(|v| v.abs()).fold(0.0, f64::max);
        if err < 1e-12 {
            break;
        }
        // finite-difference Jacobian
        let h = 1e-6;
        let mut jac = [[0.0; 3]; 3];
        for j in 0..3 {
            let mut cp = c;
            cp[j] += h;
            let fp = resid(&cp);
            for i in 0..3 {
                jac[i][j] = (fp[i] - f[i]) / h;
            }
        }
        let Some(step) = solve3(&jac, &[-f[0], -f[1], -f[2]]) else {
            return Err(Error::Numerical("singular Jacobian in right division".into()));
        };
        let step_norm = step.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let scale = if step_norm > 1.0 { 1.0 / step_norm } else { 1.0 };
        for i in 0..3 {
            c[i] += damping * scale * step[i];
        }
        if iter > 50 {
            damping = 0.5;
        }
        if !c.iter().all(|v| v.is_finite()) {
            return Err(Error::Numerical("right division diverged".into()));
        }
    }
    let f = resid(&c);
    let err = f.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if err > 1e-8 {
        return Err(Error::Numerical(format!(
            "right division did not converge (residual {err:.3e})"
        )));
    }
    Ok(ctx.unchart(&c))
}

pub(crate) fn solve3(a: &[[f64; 3]; 3], b: &[f64; 3]) -> Option<[f64; 3]> {
    let mut m = [[0.0; 4]; 3];
    for i in 0..3 {
        m[i][..3].copy_from_slice(&a[i]);
        m[i][3] = b[i];
    }
    for col in 0..3 {
        let piv = (col..3).max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs()))?;
        if m[piv][col].abs() < 1e-14 {
            return None;
        }
        m.swap(col, piv);
        for r in 0..3 {
            if r != col {
                let f = m[r][col] / m[col][col];
                for k in col..4 {
                    m[r][k] -= f * m[col][k];
                }
            }
        }
    }
    Some([m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]])
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

/// sigma(H) = e, sigma image lies in the coset it was asked for, and the
/// identity acts trivially on both sides.
pub fn check_identity_axioms<C: LoopContext>(
    ctx: &C,
    samples: u64,
    seed: u64,
    tol: f64,
) -> VerificationReport {
    let mut rng = SplitRng::new(seed).split(&format!("{}-identity", ctx.label()));
    let e = ctx.identity();
    let mut max_resid = ctx.distance(&ctx.section(&ctx.normal_form(&e)), &e);
    for _ in 0..samples {
        let x = ctx.sample_coset(&mut rng);
        let sx = ctx.section(&x);
        // section lands in the requested coset
        max_resid = max_resid.max(ctx.distance(&ctx.normal_form(&sx), &x));
        // two-sided identity
        max_resid = max_resid.max(ctx.distance(&loop_mul(ctx, &e, &x), &x));
        max_resid = max_resid.max(ctx.distance(&loop_mul(ctx, &x, &e), &x));
        // normal form idempotent
        max_resid = max_resid.max(ctx.distance(&ctx.normal_form(&x), &x));
    }
    VerificationReport::sampled(
        ctx.label(),
        "identity_axioms",
        ctx.section_tag(),
        samples,
        seed,
        max_resid,
        tol,
    )
}

/// For random section elements r, s: rsr must again be a section element.
pub fn check_bol<C: LoopContext>(ctx: &C, samples: u64, seed: u64, tol: f64) -> VerificationReport {
    let mut rng = SplitRng::new(seed).split(&format!("{}-bol", ctx.label()));
    let mut max_resid = 0.0_f64;
    for _ in 0..samples {
        let r = ctx.section(&ctx.sample_coset(&mut rng));
        let s = ctx.section(&ctx.sample_coset(&mut rng));
        let rsr = ctx.group_mul(&ctx.group_mul(&r, &s), &r);
        let expected = ctx.section(&ctx.normal_form(&rsr));
        max_resid = max_resid.max(ctx.distance(&rsr, &expected));
    }
    VerificationReport::sampled(
        ctx.label(),
        "bol_closure",
        ctx.section_tag(),
        samples,
        seed,
        max_resid,
        tol,
    )
}

/// Element-level Bol identity a*(b*(a*x)) = (a*(b*a))*x.
pub fn check_bol_identity_elementwise<C: LoopContext>(
    ctx: &C,
    samples: u64,
    seed: u64,
    tol: f64,
) -> VerificationReport {
    let mut rng = SplitRng::new(seed).split(&format!("{}-bol-elem", ctx.label()));
    let mut max_resid = 0.0_f64;
    for _ in 0..samples {
        let a = ctx.sample_coset(&mut rng);
        let b = ctx.sample_coset(&mut rng);
        let x = ctx.sample_coset(&mut rng);
        let lhs = loop_mul(ctx, &a, &loop_mul(ctx, &b, &loop_mul(ctx, &a, &x)));
        let rhs = loop_mul(ctx, &loop_mul(ctx, &a, &loop_mul(ctx, &b, &a)), &x);
        max_resid = max_resid.max(ctx.distance(&lhs, &rhs));
    }
    VerificationReport::sampled(
        ctx.label(),
        "bol_identity_elementwise",
        ctx.section_tag(),
        samples,
        seed,
        max_resid,
        tol,
    )
}

/// Existence and uniqueness of z with sigma(z) aH = bH.
pub fn check_sharp_transitivity<C: LoopContext>(
    ctx: &C,
    samples: u64,
    seed: u64,
    tol: f64,
    uniq_tol: f64,
) -> VerificationReport {
    let mut rng = SplitRng::new(seed).split(&format!("{}-transitivity", ctx.label()));
    let mut max_resid = 0.0_f64;
    let mut max_uniq = 0.0_f64;
    let mut failures = Vec::new();
    for i in 0..samples {
        let a = ctx.sample_coset(&mut rng);
        let b = ctx.sample_coset(&mut rng);
        match right_divide(ctx, &b, &a) {
            Ok((z, _)) => {
                max_resid = max_resid.max(ctx.distance(&loop_mul(ctx, &z, &a), &b));
                // perturbed restart must land on the same solution
                let mut start = ctx.chart(&z);
                for s in start.iter_mut() {
                    *s += rng.uniform(-0.05, 0.05);
                }
                match numeric_right_divide(ctx, &b, &a, &start) {
                    Ok(z2) => max_uniq = max_uniq.max(ctx.distance(&z, &z2)),
                    Err(e) => failures.push(format!("restart {i}: {e}")),
                }
            }
            Err(e) => failures.push(format!("solve {i}: {e}")),
        }
    }
    let mut rep = VerificationReport::sampled(
        ctx.label(),
        "sharp_transitivity",
        ctx.section_tag(),
        samples,
        seed,
        max_resid,
        tol,
    );
    if max_uniq > uniq_tol {
        rep.pass = false;
        rep = rep.with_detail(format!("uniqueness spread {max_uniq:.3e} > {uniq_tol:.1e}"));
    }
    if !failures.is_empty() {
        rep.pass = false;
        for f in failures.into_iter().take(3) {
            rep = rep.with_detail(f);
        }
    }
    rep
}

/// Division round trips: a*(a\b) = b and (b/a)*a = b.
pub fn check_divisions<C: LoopContext>(
    ctx: &C,
    samples: u64,
    seed: u64,
    tol: f64,
) -> VerificationReport {
    let mut rng = SplitRng::new(seed).split(&format!("{}-divisions", ctx.label()));
    let mut max_resid = 0.0_f64;
    let mut fallback = false;
    let mut failures = Vec::new();
    for i in 0..samples {
        let a = ctx.sample_coset(&mut rng);
        let b = ctx.sample_coset(&mut rng);
        let l = left_divide(ctx, &a, &b);
        max_resid = max_resid.max(ctx.distance(&loop_mul(ctx, &a, &l), &b));
        // left_divide(a, a) = e
        max_resid = max_resid.max(ctx.distance(&left_divide(ctx, &a, &a), &ctx.identity()));
        match right_divide(ctx, &b, &a) {
            Ok((r, method)) => {
                fallback |= method == DivisionMethod::NumericFallback;
                max_resid = max_resid.max(ctx.distance(&loop_mul(ctx, &r, &a), &b));
            }
            Err(e) => failures.push(format!("right division {i}: {e}")),
        }
    }
    let mut rep = VerificationReport::sampled(
        ctx.label(),
        "division_roundtrips",
        ctx.section_tag(),
        samples,
        seed,
        max_resid,
        tol,
    );
    if fallback {
        rep = rep.with_detail("right division used the numerical fallback".to_string());
    }
    if !failures.is_empty() {
        rep.pass = false;
        for f in failures.into_iter().take(3) {
            rep = rep.with_detail(f);
        }
    }
    rep
}

/// A conjugated section g^{-1} sigma(.) g acts sharply transitively
/// again. Residuals are measured relative to the size of the conjugated
/// section element, since conjugation inflates intermediate magnitudes.
pub fn check_conjugated_section<C: LoopContext>(
    ctx: &C,
    samples: u64,
    seed: u64,
    tol: f64,
) -> VerificationReport {
    let mut rng = SplitRng::new(seed).split(&format!("{}-conj-section", ctx.label()));
    let mut max_resid = 0.0_f64;
    let mut failures = Vec::new();
    for i in 0..samples {
        let g = ctx.sample_group(&mut rng);
        let a = ctx.sample_coset(&mut rng);
        let b = ctx.sample_coset(&mut rng);
        // want theta = g^{-1} sigma(z) g with theta a H = b H:
        // sigma(z) (g a) H = (g b) H fixes z by sharp transitivity upstairs.
        let ga = ctx.normal_form(&ctx.group_mul(&g, &a));
        let gb = ctx.normal_form(&ctx.group_mul(&g, &b));
        match right_divide(ctx, &gb, &ga) {
            Ok((z, _)) => {
                let theta = ctx.group_mul(
                    &ctx.group_mul(&ctx.group_inv(&g), &ctx.section(&z)),
                    &g,
                );
                let scale = 1.0 + ctx.distance(&theta, &ctx.identity());
                let resid = ctx.distance(&ctx.normal_form(&ctx.group_mul(&theta, &a)), &b);
                max_resid = max_resid.max(resid / scale);
            }
            Err(e) => failures.push(format!("conjugated solve {i}: {e}")),
        }
    }
    let mut rep = VerificationReport::sampled(
        ctx.label(),
        "conjugated_section_transitivity",
        ctx.section_tag(),
        samples,
        seed,
        max_resid,
        tol,
    );
    if !failures.is_empty() {
        rep.pass = false;
        for f in failures.into_iter().take(3) {
            rep = rep.with_detail(f);
        }
    }
    rep
}
