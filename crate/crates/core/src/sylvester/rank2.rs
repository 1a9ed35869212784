use serde::Serialize;

use super::{apply_sylvester, require_branch, sylvester_matrix, Branch};
use crate::algebra::SliceFn;
use crate::error::{AlgebraError, Result};
use crate::linalg::{rank_of_vectors, FieldMat4, FieldVec4};
use crate::scalar::{DomainMode, ScalarElem};

/// Kernel of a rank-2 Sylvester operator.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Rank2Kernel {
    /// Two invertible kernel elements spanning the kernel.
    pub basis: [SliceFn; 2],
    /// `(f_v−g_v, f_v^s+g_v^s+2f_v*g_v)` when `(f_v−g_v)^s ≠ 0`.
    pub special: Option<[SliceFn; 2]>,
}

fn in_kernel(f: &SliceFn, g: &SliceFn, chi: &SliceFn) -> Result<bool> {
    Ok(apply_sylvester(f, g, chi)?.is_zero())
}

/// Invertible basis of `ker S_{f,g} = {f*h + h*g^c}`.
pub fn rank2_kernel(f: &SliceFn, g: &SliceFn) -> Result<Rank2Kernel> {
    require_branch(f, g, Branch::Rank2)?;
    let mode = f.mode();
    let (fv, gv) = (f.vector_part(), g.vector_part());
    let tau1 = (0..4)
        .map(|n| {
            let d = SliceFn::basis(n, mode);
            &(&fv * &d) - &(&d * &gv)
        })
        .find(SliceFn::is_invertible)
        .ok_or_else(|| AlgebraError::Verification("no invertible f_v*δ − δ*g_v".into()))?;
    let v1 = FieldVec4::from(&tau1);
    let tau2 = sylvester_matrix(f, g)?
        .kernel_basis()
        .into_iter()
        .find(|v| rank_of_vectors(&[v1.clone(), v.clone()]) == 2)
        .map(|v| SliceFn::from(&v))
        .ok_or_else(|| AlgebraError::Verification("rank-2 kernel is not two-dimensional".into()))?;
    // (ατ₁+τ₂)^s = α(ατ₁^s + 2⟨τ₁,τ₂⟩) when τ₂^s = 0, which has one nonzero root.
    let tau2 = if tau2.is_invertible() {
        tau2
    } else {
        (1..=2)
            .map(|a| &tau1.scale(&ScalarElem::from_i64(a, mode)) + &tau2)
            .find(SliceFn::is_invertible)
            .ok_or_else(|| AlgebraError::Verification("could not complete invertible basis".into()))?
    };
    for t in [&tau1, &tau2] {
        if !in_kernel(f, g, t)? {
            return Err(AlgebraError::Verification("rank-2 basis element not in kernel".into()));
        }
    }
    let diff = &fv - &gv;
    let special = if diff.symmetrized().is_zero() {
        None
    } else {
        let two = ScalarElem::from_i64(2, mode);
        let second = &SliceFn::from_scalar(fv.symmetrized() + gv.symmetrized())
            + &(&fv * &gv).scale(&two);
        let pair = [diff, second];
        let vs: Vec<FieldVec4> = [&tau1, &tau2, &pair[0], &pair[1]].iter().map(|s| FieldVec4::from(*s)).collect();
        if !in_kernel(f, g, &pair[0])?
            || !in_kernel(f, g, &pair[1])?
            || rank_of_vectors(&vs[2..]) != 2
            || rank_of_vectors(&vs) != 2
        {
            return Err(AlgebraError::Verification("special basis does not span the kernel".into()));
        }
        Some(pair)
    };
    Ok(Rank2Kernel { basis: [tau1, tau2], special })
}

/// Which of the three conditions for a kernel zero divisor is in force.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum ZeroDivisorCase {
    /// `f_v = g_v`; needs a root of `f_v^s`.
    EqualVectorParts,
    /// `f_v ≠ g_v` and `(f_v−g_v)^s = 0`; always present.
    NullDifference,
    /// `(f_v−g_v)^s ≠ 0`; needs a root of `f_v^s`.
    GenericDifference,
}

impl ZeroDivisorCase {
    /// Number of the condition in the classification, 1 to 3.
    pub fn number(&self) -> u8 {
        match self {
            ZeroDivisorCase::EqualVectorParts => 1,
            ZeroDivisorCase::NullDifference => 2,
            ZeroDivisorCase::GenericDifference => 3,
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ZeroDivisorInKernel {
    pub present: bool,
    pub witness: Option<SliceFn>,
    /// `None` in slice mode, where no zero divisors exist.
    pub case: Option<ZeroDivisorCase>,
}

fn accept(f: &SliceFn, g: &SliceFn, w: &SliceFn) -> Result<bool> {
    Ok(w.is_zero_divisor() && in_kernel(f, g, w)?)
}

/// Decides whether `ker S_{f,g}` contains a zero divisor and builds one.
pub fn rank2_zero_divisor_in_kernel(f: &SliceFn, g: &SliceFn) -> Result<ZeroDivisorInKernel> {
    require_branch(f, g, Branch::Rank2)?;
    let mode = f.mode();
    if mode == DomainMode::Slice {
        return Ok(ZeroDivisorInKernel { present: false, witness: None, case: None });
    }
    let jay = ScalarElem::j(mode)?;
    let (fv, gv) = (f.vector_part(), g.vector_part());
    let fvs = fv.symmetrized();
    let diff = &fv - &gv;
    let (case, candidates): (ZeroDivisorCase, Vec<SliceFn>) = if diff.is_zero() {
        let cands = match fvs.sqrt() {
            None => vec![],
            Some(rho) => {
                // cyclic frame (I, J, K) with f_I ≠ 0
                let n = (1..4).find(|&n| !fv.coord(n).is_zero()).expect("f_v ≠ 0");
                let (ni, nj, nk) = (n, n % 3 + 1, (n + 1) % 3 + 1);
                let (fi, fj, fk) = (fv.coord(ni), fv.coord(nj), fv.coord(nk));
                let wj = fv.star_wedge(&SliceFn::basis(nj, mode))?;
                let wk = fv.star_wedge(&SliceFn::basis(nk, mode))?;
                let c2 = fi * fi + fk * fk;
                if c2.is_zero() {
                    vec![wj]
                } else {
                    [rho.clone(), -&rho]
                        .iter()
                        .map(|r| &wj.scale(&(fj * fk + &jay * fi * r)) + &wk.scale(&c2))
                        .collect()
                }
            }
        };
        (ZeroDivisorCase::EqualVectorParts, cands)
    } else if diff.symmetrized().is_zero() {
        (ZeroDivisorCase::NullDifference, vec![diff])
    } else {
        let cands = match fvs.sqrt() {
            None => vec![],
            Some(rho) => {
                let base = &SliceFn::from_scalar(fvs.clone()) + &(&fv * &gv);
                [&jay * &rho, -(&jay * &rho)].iter().map(|a| &diff.scale(a) + &base).collect()
            }
        };
        (ZeroDivisorCase::GenericDifference, cands)
    };
    for w in candidates {
        if accept(f, g, &w)? {
            return Ok(ZeroDivisorInKernel { present: true, witness: Some(w), case: Some(case) });
        }
    }
    if case == ZeroDivisorCase::NullDifference {
        return Err(AlgebraError::Verification("f_v − g_v is not a kernel zero divisor".into()));
    }
    Ok(ZeroDivisorInKernel { present: false, witness: None, case: Some(case) })
}

/// `f^c*b + b*g = 0`, the image condition of a rank-2 operator.
pub fn rank2_image_condition(f: &SliceFn, g: &SliceFn, b: &SliceFn) -> Result<bool> {
    Ok(f.conjugate().try_star(b)?.try_add(&b.try_star(g)?)?.is_zero())
}

/// The matrix `M` with `M·S_{f,g} = 0` when `f₀ = −g₀` and `f_v^s = g_v^s`.
pub fn image_matrix(f: &SliceFn, g: &SliceFn) -> FieldMat4 {
    let mode = f.mode();
    let d = |n: usize| f.coord(n) - g.coord(n);
    let s = |n: usize| f.coord(n) + g.coord(n);
    let z = || ScalarElem::zero(mode);
    FieldMat4 {
        rows: [
            [d(3), -s(2), s(1), z()],
            [d(1), z(), -s(3), s(2)],
            [d(2), s(3), z(), -s(1)],
            [z(), d(1), d(2), d(3)],
        ],
    }
}

/// `χ = −(2⟨f_v,h_v⟩ + 2⟨g_v,k_v⟩)^{-1}(h*b + b*k)`.
pub fn partsol(f: &SliceFn, g: &SliceFn, h: &SliceFn, k: &SliceFn, b: &SliceFn) -> Result<SliceFn> {
    let mode = f.mode();
    let two = ScalarElem::from_i64(2, mode);
    let denom = &two * &f.vector_part().star_scalar(&h.vector_part())?
        + &two * &g.vector_part().star_scalar(&k.vector_part())?;
    if denom.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    let num = h.try_star(b)?.try_add(&b.try_star(k)?)?;
    Ok(num.scale(&-denom.invert()?))
}

/// Particular solution, or `None` when `b` is outside the image.
pub fn rank2_solve(f: &SliceFn, g: &SliceFn, b: &SliceFn) -> Result<Option<SliceFn>> {
    require_branch(f, g, Branch::Rank2)?;
    if !rank2_image_condition(f, g, b)? {
        return Ok(None);
    }
    let mode = f.mode();
    let fv = f.vector_part();
    let delta = (1..4)
        .map(|n| SliceFn::basis(n, mode))
        .find(|d| !fv.star_scalar(d).map(|s| s.is_zero()).unwrap_or(true))
        .expect("f_v ≠ 0");
    let chi = partsol(f, g, &delta, &SliceFn::zero(mode), b)?;
    if &apply_sylvester(f, g, &chi)? != b {
        return Err(AlgebraError::Verification("particular solution fails substitution".into()));
    }
    Ok(Some(chi))
}
