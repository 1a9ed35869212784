use serde::Serialize;

use super::{apply_sylvester, kernel_by_elimination, require_branch, Branch};
use crate::algebra::{DecompSide, QuatConst, SliceFn};
use crate::equivalence::conjugator;
use crate::error::{AlgebraError, Result};
use crate::scalar::ScalarElem;

/// Which rank-3 regime applies after normalizing `f₀+g₀ = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Rank3Subcase {
    /// `f_v^s g_v^s ≠ 0`: zero is a simple eigenvalue.
    AlgMult1,
    /// `g_v^s = 0`: kernel `(1−f_v)*X*g_v`.
    GvNull,
    /// `f_v^s = 0`: kernel `f_v*X*(1−g_v)`.
    FvNull,
}

/// Structure of a rank-3 Sylvester operator.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Rank3Structure {
    /// `c = f₀+g₀`; every quantity below refers to `f/c`, `g/c`.
    pub scale: ScalarElem,
    /// `f_v^s = (𝒥(τ−½))²` and `g_v^s = (𝒥(τ+½))²`.
    pub tau: ScalarElem,
    pub subcase: Rank3Subcase,
    /// Kernel generator from elimination.
    pub kernel: SliceFn,
    /// Generator from the closed form, proportional to `kernel`.
    pub closed_kernel: Option<SliceFn>,
    /// `(h, h̃)` with `h^{-*}*f_v*h = a·i` and `h̃*g_v*h̃^{-*} = b·i`, `a − b = 𝒥`.
    pub conjugators: Option<(SliceFn, SliceFn)>,
}

struct Normalized {
    c: ScalarElem,
    fv: SliceFn,
    gv: SliceFn,
    fvs: ScalarElem,
    gvs: ScalarElem,
    tau: ScalarElem,
}

fn normalize(f: &SliceFn, g: &SliceFn) -> Result<Normalized> {
    require_branch(f, g, Branch::Rank3)?;
    let mode = f.mode();
    let c = f.real_part() + g.real_part();
    let ci = c.invert()?;
    let (fv, gv) = (f.vector_part().scale(&ci), g.vector_part().scale(&ci));
    let (fvs, gvs) = (fv.symmetrized(), gv.symmetrized());
    let half = ScalarElem::from_ratio(1, 2, mode);
    let tau = (&fvs - &gvs) * &half;
    let minus_sq = |t: ScalarElem| -(&t * &t);
    if fvs != minus_sq(&tau - &half) || gvs != minus_sq(&tau + &half) {
        return Err(AlgebraError::Verification("τ does not reproduce f_v^s and g_v^s".into()));
    }
    Ok(Normalized { c, fv, gv, fvs, gvs, tau })
}

fn first_nonzero(make: impl Fn(&SliceFn) -> SliceFn, mode: crate::DomainMode) -> SliceFn {
    (0..4).map(|n| make(&SliceFn::basis(n, mode))).find(|s| !s.is_zero()).unwrap_or_else(|| SliceFn::zero(mode))
}

fn canonical_conjugators(n: &Normalized) -> Result<(SliceFn, SliceFn)> {
    let mode = n.c.mode();
    let jay = ScalarElem::j(mode)?;
    let half = ScalarElem::from_ratio(1, 2, mode);
    let a = -(&jay * &(&n.tau - &half));
    let b = -(&jay * &(&n.tau + &half));
    let i = SliceFn::i(mode);
    let h = conjugator(&n.fv, &i.scale(&a))?.h;
    let k = conjugator(&n.gv, &i.scale(&b))?.h;
    Ok((h, k.star_inverse()?))
}

/// Normalization, `τ`, subcase and kernel of a rank-3 operator, with the
/// closed-form kernel checked against elimination.
pub fn rank3_structure(f: &SliceFn, g: &SliceFn) -> Result<Rank3Structure> {
    let n = normalize(f, g)?;
    let mode = f.mode();
    let kernel = kernel_by_elimination(f, g)?;
    if kernel.len() != 1 {
        return Err(AlgebraError::Verification(format!("rank-3 kernel has dimension {}", kernel.len())));
    }
    let kernel = kernel.into_iter().next().expect("one generator");
    let one = SliceFn::one(mode);
    let (subcase, closed, conjugators) = if n.fvs.is_zero() {
        let left = n.fv.clone();
        let right = &one - &n.gv;
        (Rank3Subcase::FvNull, first_nonzero(|x| &(&left * x) * &right, mode), None)
    } else if n.gvs.is_zero() {
        let left = &one - &n.fv;
        let right = n.gv.clone();
        (Rank3Subcase::GvNull, first_nonzero(|x| &(&left * x) * &right, mode), None)
    } else {
        let (h, ht) = canonical_conjugators(&n)?;
        let jay = ScalarElem::j(mode)?;
        let gen = &SliceFn::j(mode).scale(&jay) + &SliceFn::k(mode);
        let closed = &(&h * &gen) * &ht;
        (Rank3Subcase::AlgMult1, closed, Some((h, ht)))
    };
    if closed.is_zero() || !apply_sylvester(f, g, &closed)?.is_zero() {
        return Err(AlgebraError::Verification("closed-form rank-3 kernel".into()));
    }
    Ok(Rank3Structure {
        scale: n.c,
        tau: n.tau,
        subcase,
        kernel,
        closed_kernel: Some(closed),
        conjugators,
    })
}

/// Closed-form image predicate of a rank-3 operator.
pub fn rank3_image_condition(f: &SliceFn, g: &SliceFn, b: &SliceFn) -> Result<bool> {
    let n = normalize(f, g)?;
    let mode = f.mode();
    let one = SliceFn::one(mode);
    if n.fvs.is_zero() {
        return Ok((&(&n.fv * b) * &(&one - &n.gv)).is_zero());
    }
    if n.gvs.is_zero() {
        return Ok((&(&(&one - &n.fv) * b) * &n.gv).is_zero());
    }
    let (h, ht) = canonical_conjugators(&n)?;
    let moved = &(&h.star_inverse()? * b) * &ht.star_inverse()?;
    let jay = ScalarElem::j(mode)?;
    let dual = &SliceFn::j(mode).scale(&jay) - &SliceFn::k(mode);
    Ok(moved.star_scalar(&dual)?.is_zero())
}

/// The unique idempotent of the kernel when the generator has nonzero real
/// part, else `None`.
pub fn rank3_idempotent_in_kernel(f: &SliceFn, g: &SliceFn) -> Result<Option<SliceFn>> {
    let st = rank3_structure(f, g)?;
    let kappa = st.kernel;
    if kappa.real_part().is_zero() {
        return Ok(None);
    }
    // the probe direction of κ is 1, so the right-idempotent factor is κ/(2κ₀)
    let d = kappa.zero_divisor_decompose(DecompSide::RightIdem)?;
    debug_assert_eq!(d.unit, QuatConst::one());
    let sigma = d.idem;
    if !sigma.is_idempotent() || !apply_sylvester(f, g, &sigma)?.is_zero() {
        return Err(AlgebraError::Verification("kernel idempotent".into()));
    }
    Ok(Some(sigma))
}
