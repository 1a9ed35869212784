//! The Sylvester operator `S_{f,g}(χ) = f*χ + χ*g`: its matrix, characteristic
//! polynomial, rank classification and the closed-form solvers of each branch.

mod rank2;
mod rank3;
mod rank4;

use std::collections::BTreeMap;

use serde::Serialize;

pub use rank2::{
    image_matrix, partsol, rank2_image_condition, rank2_kernel, rank2_solve,
    rank2_zero_divisor_in_kernel, Rank2Kernel, ZeroDivisorCase, ZeroDivisorInKernel,
};
pub use rank3::{
    rank3_idempotent_in_kernel, rank3_image_condition, rank3_structure, Rank3Structure,
    Rank3Subcase,
};
pub use rank4::{lambda_lr, shift_regularize, solve_rank4, Rank4Solution, ShiftChoice};

use crate::algebra::SliceFn;
use crate::error::{AlgebraError, Result};
use crate::linalg::{iota_l, iota_r, FieldMat4, FieldPoly, FieldVec4};
use crate::scalar::ScalarElem;

/// `f*χ + χ*g`.
pub fn apply_sylvester(f: &SliceFn, g: &SliceFn, chi: &SliceFn) -> Result<SliceFn> {
    f.try_star(chi)?.try_add(&chi.try_star(g)?)
}

/// `S_{f,g} = ι_L(f) + ι_R(g)`.
pub fn sylvester_matrix(f: &SliceFn, g: &SliceFn) -> Result<FieldMat4> {
    if f.mode() != g.mode() {
        return Err(AlgebraError::ModeMismatch);
    }
    Ok(&iota_l(f) + &iota_r(g))
}

/// The scalars `(f₀+g₀, f_v^s, g_v^s)` every closed form is written in.
pub(crate) fn invariants(f: &SliceFn, g: &SliceFn) -> (ScalarElem, ScalarElem, ScalarElem) {
    (
        f.real_part() + g.real_part(),
        f.vector_part().symmetrized(),
        g.vector_part().symmetrized(),
    )
}

/// `(s−λ)²[(s−λ)² + 2(f_v^s+g_v^s)] + (f_v^s−g_v^s)²` with `s = f₀+g₀`.
pub fn char_poly_closed(f: &SliceFn, g: &SliceFn) -> Result<FieldPoly> {
    if f.mode() != g.mode() {
        return Err(AlgebraError::ModeMismatch);
    }
    let mode = f.mode();
    let (s, fs, gs) = invariants(f, g);
    let t = &FieldPoly::constant(s) - &FieldPoly::lambda(mode);
    let t2 = &t * &t;
    let two_sum = FieldPoly::constant(ScalarElem::from_i64(2, mode) * (&fs + &gs));
    let diff = &fs - &gs;
    Ok(&(&t2 * &(&t2 + &two_sum)) + &FieldPoly::constant(&diff * &diff))
}

/// `det S_{f,g}` from the closed formula.
pub fn det_closed(f: &SliceFn, g: &SliceFn) -> ScalarElem {
    let (s, fs, gs) = invariants(f, g);
    let two = ScalarElem::from_i64(2, s.mode());
    let s2 = &s * &s;
    let diff = &fs - &gs;
    &s2 * &(&s2 + &(two * (&fs + &gs))) + &diff * &diff
}

/// Branch of the rank classification.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Branch {
    Rank4,
    Rank3,
    Rank2,
    /// `f` or `g` is central; the operator is `𝓛_{f+g₀,1}` or `𝓛_{1,f₀+g}`.
    Reduced,
}

/// Which one-sided operator a `Reduced` branch collapses to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReducedForm {
    /// `g` central: `χ ↦ (f+g₀)*χ`.
    LeftMultiplication,
    /// `f` central: `χ ↦ χ*(f₀+g)`.
    RightMultiplication,
}

/// Per-branch payload of a [`SylvesterReport`].
#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Rank4 { shift: i64, lambda_l: SliceFn, lambda_r: SliceFn },
    Rank2 { kernel: Vec<SliceFn>, special_basis: Option<Vec<SliceFn>> },
    Rank3 { kernel: Vec<SliceFn>, subcase: Rank3Subcase, tau: ScalarElem },
    Reduced { form: ReducedForm, multiplier: SliceFn, kernel: Vec<SliceFn> },
}

/// Zero-divisor content of the kernel.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct KernelZeroDivisors {
    pub present: bool,
    pub case: Option<ZeroDivisorCase>,
    pub witness: Option<SliceFn>,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct SylvesterReport {
    pub mode: crate::scalar::DomainMode,
    pub rank: usize,
    pub branch: Branch,
    /// Coefficients low to high.
    pub char_poly: FieldPoly,
    pub determinant: ScalarElem,
    pub witness: Witness,
    pub zero_divisor_kernel: KernelZeroDivisors,
    /// Item name to `closed-form` or `matrix-elimination`.
    pub provenance: BTreeMap<&'static str, &'static str>,
}

pub(crate) const CLOSED: &str = "closed-form";
pub(crate) const MATRIX: &str = "matrix-elimination";

/// Branch from the closed-form conditions alone.
pub fn branch_of(f: &SliceFn, g: &SliceFn) -> Branch {
    if f.is_central() || g.is_central() {
        return Branch::Reduced;
    }
    if !det_closed(f, g).is_zero() {
        Branch::Rank4
    } else if (f.real_part() + g.real_part()).is_zero() {
        Branch::Rank2
    } else {
        Branch::Rank3
    }
}

pub(crate) fn require_branch(f: &SliceFn, g: &SliceFn, expected: Branch) -> Result<()> {
    if f.mode() != g.mode() {
        return Err(AlgebraError::ModeMismatch);
    }
    let found = branch_of(f, g);
    if found != expected {
        return Err(AlgebraError::WrongBranch {
            expected: format!("{expected:?}"),
            found: format!("{found:?}"),
        });
    }
    Ok(())
}

/// Kernel of `S_{f,g}` by elimination, as functions.
pub fn kernel_by_elimination(f: &SliceFn, g: &SliceFn) -> Result<Vec<SliceFn>> {
    Ok(sylvester_matrix(f, g)?.kernel_basis().iter().map(SliceFn::from).collect())
}

/// Full classification of `S_{f,g}`, with every closed form cross-checked
/// against elimination on the matrix.
pub fn classify(f: &SliceFn, g: &SliceFn) -> Result<SylvesterReport> {
    let m = sylvester_matrix(f, g)?;
    let mode = f.mode();
    let char_poly = char_poly_closed(f, g)?;
    if char_poly != m.char_poly() {
        return Err(AlgebraError::Verification("closed characteristic polynomial".into()));
    }
    let determinant = det_closed(f, g);
    let rank = m.rank();
    let branch = branch_of(f, g);
    let mut provenance = BTreeMap::new();
    provenance.insert("char_poly", CLOSED);
    provenance.insert("rank", CLOSED);
    let none = KernelZeroDivisors { present: false, case: None, witness: None };
    let (expected_rank, witness, zd) = match branch {
        Branch::Rank4 => {
            let shift = shift_regularize(f, g)?;
            let (fa, ga) = shift.apply(f, g);
            let (lambda_l, lambda_r) = lambda_lr(&fa, &ga)?;
            provenance.insert("lambda", CLOSED);
            (4, Witness::Rank4 { shift: shift.alpha, lambda_l, lambda_r }, none)
        }
        Branch::Rank2 => {
            let k = rank2_kernel(f, g)?;
            let z = rank2_zero_divisor_in_kernel(f, g)?;
            provenance.insert("kernel", CLOSED);
            if k.special.is_some() {
                provenance.insert("special_basis", CLOSED);
            }
            provenance.insert("zero_divisor_witness", CLOSED);
            (
                2,
                Witness::Rank2 {
                    kernel: k.basis.to_vec(),
                    special_basis: k.special.map(|s| s.to_vec()),
                },
                KernelZeroDivisors { present: z.present, case: z.case, witness: z.witness },
            )
        }
        Branch::Rank3 => {
            let st = rank3_structure(f, g)?;
            provenance.insert("kernel", MATRIX);
            if st.closed_kernel.is_some() {
                provenance.insert("kernel_closed_form_check", CLOSED);
            }
            let zd = KernelZeroDivisors { present: true, case: None, witness: Some(st.kernel.clone()) };
            (3, Witness::Rank3 { kernel: vec![st.kernel], subcase: st.subcase, tau: st.tau }, zd)
        }
        Branch::Reduced => {
            let (form, multiplier) = if g.is_central() {
                (ReducedForm::LeftMultiplication, f.try_add(&SliceFn::from_scalar(g.real_part().clone()))?)
            } else {
                (ReducedForm::RightMultiplication, g.try_add(&SliceFn::from_scalar(f.real_part().clone()))?)
            };
            let kernel: Vec<SliceFn> = m.kernel_basis().iter().map(SliceFn::from).collect();
            provenance.insert("kernel", MATRIX);
            provenance.insert("rank", MATRIX);
            let expected = if multiplier.is_zero() {
                0
            } else if multiplier.is_zero_divisor() {
                2
            } else {
                4
            };
            let zd = if kernel.is_empty() || mode == crate::scalar::DomainMode::Slice {
                none
            } else {
                // every nonzero element annihilated by a zero divisor (or by 0)
                // is itself a zero divisor or the kernel is everything
                let w = if multiplier.is_zero() {
                    SliceFn::basic_idempotent(crate::IdemSign::Plus, &crate::QuatConst::i(), mode)?
                } else {
                    kernel[0].clone()
                };
                KernelZeroDivisors { present: true, case: None, witness: Some(w) }
            };
            (expected, Witness::Reduced { form, multiplier, kernel }, zd)
        }
    };
    if rank != expected_rank {
        return Err(AlgebraError::Verification(format!(
            "closed-form rank {expected_rank} disagrees with elimination rank {rank}"
        )));
    }
    if let Some(w) = &zd.witness {
        if !w.is_zero_divisor() || !apply_sylvester(f, g, w)?.is_zero() {
            return Err(AlgebraError::Verification("kernel zero divisor witness".into()));
        }
    }
    Ok(SylvesterReport { mode, rank, branch, char_poly, determinant, witness, zero_divisor_kernel: zd, provenance })
}

/// Membership of `b` in the image of `S_{f,g}` by elimination.
pub fn image_contains_by_elimination(f: &SliceFn, g: &SliceFn, b: &SliceFn) -> Result<Option<SliceFn>> {
    let m = sylvester_matrix(f, g)?;
    Ok(m.solve(&FieldVec4::from(b)).map(|x| SliceFn::from(&x)))
}
