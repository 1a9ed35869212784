use serde::Serialize;

use super::{apply_sylvester, det_closed, Branch};
use crate::algebra::SliceFn;
use crate::error::{AlgebraError, Result};
use crate::scalar::ScalarElem;

/// A constant `α` such that neither `f+α` nor `g−α` is a zero divisor.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct ShiftChoice {
    pub alpha: i64,
}

impl ShiftChoice {
    /// `(f+α, g−α)`, which defines the same Sylvester operator.
    pub fn apply(&self, f: &SliceFn, g: &SliceFn) -> (SliceFn, SliceFn) {
        let a = SliceFn::from_scalar(ScalarElem::from_i64(self.alpha, f.mode()));
        (f + &a, g - &a)
    }
}

/// Smallest nonnegative integer shift, then negative ones.
pub fn shift_regularize(f: &SliceFn, g: &SliceFn) -> Result<ShiftChoice> {
    if f.mode() != g.mode() {
        return Err(AlgebraError::ModeMismatch);
    }
    // (f+α)^s is monic quadratic in α, so each side forbids at most two values.
    let candidates = (0..=4).chain((1..=4).map(|n| -n));
    for alpha in candidates {
        let shift = ShiftChoice { alpha };
        let (fa, ga) = shift.apply(f, g);
        if fa.is_invertible() && ga.is_invertible() {
            return Ok(shift);
        }
    }
    Err(AlgebraError::Verification("no admissible shift among nine integers".into()))
}

/// `λ_L = 2g₀ + f + g^s f^{-*}` and `λ_R = 2f₀ + g + f^s g^{-*}`.
pub fn lambda_lr(f: &SliceFn, g: &SliceFn) -> Result<(SliceFn, SliceFn)> {
    if f.mode() != g.mode() {
        return Err(AlgebraError::ModeMismatch);
    }
    let two = ScalarElem::from_i64(2, f.mode());
    let fi = f.star_inverse()?;
    let gi = g.star_inverse()?;
    let lambda_l = &(&SliceFn::from_scalar(&two * g.real_part()) + f) + &fi.scale(&g.symmetrized());
    let lambda_r = &(&SliceFn::from_scalar(&two * f.real_part()) + g) + &gi.scale(&f.symmetrized());
    Ok((lambda_l, lambda_r))
}

/// Solution of an invertible Sylvester equation by both closed forms.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Rank4Solution {
    pub chi: SliceFn,
    pub shift: ShiftChoice,
    pub lambda_l: SliceFn,
    pub lambda_r: SliceFn,
}

/// `χ = λ_L^{-*}*(b + f^{-*}*b*g^c) = (b + f^c*b*g^{-*})*λ_R^{-*}` after shifting.
pub fn solve_rank4(f: &SliceFn, g: &SliceFn, b: &SliceFn) -> Result<Rank4Solution> {
    if f.mode() != g.mode() || f.mode() != b.mode() {
        return Err(AlgebraError::ModeMismatch);
    }
    if det_closed(f, g).is_zero() {
        return Err(AlgebraError::WrongBranch {
            expected: format!("{:?}", Branch::Rank4),
            found: format!("{:?}", super::branch_of(f, g)),
        });
    }
    let shift = shift_regularize(f, g)?;
    let (fa, ga) = shift.apply(f, g);
    let (lambda_l, lambda_r) = lambda_lr(&fa, &ga)?;
    let left = &fa.star_inverse()? * &(b * &ga.conjugate());
    let chi_l = &lambda_l.star_inverse()? * &(b + &left);
    let right = &(&fa.conjugate() * b) * &ga.star_inverse()?;
    let chi_r = &(b + &right) * &lambda_r.star_inverse()?;
    if chi_l != chi_r {
        return Err(AlgebraError::Verification("λ_L and λ_R routes differ".into()));
    }
    if &apply_sylvester(f, g, &chi_l)? != b {
        return Err(AlgebraError::Verification("rank-4 solution fails substitution".into()));
    }
    Ok(Rank4Solution { chi: chi_l, shift, lambda_l, lambda_r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::DomainMode::{Product, Slice};
    use crate::{IdemSign, QuatConst};

    #[test]
    fn shift_examples() {
        let l = SliceFn::basic_idempotent(IdemSign::Plus, &QuatConst::i(), Product).unwrap();
        let i = SliceFn::i(Product);
        assert_eq!(shift_regularize(&i, &i).unwrap().alpha, 0);
        assert_eq!(shift_regularize(&l, &i).unwrap().alpha, 1);
        let lj = SliceFn::basic_idempotent(IdemSign::Plus, &QuatConst::j(), Product).unwrap();
        let g = &SliceFn::one(Product) + &lj;
        assert_eq!(shift_regularize(&l, &g).unwrap().alpha, 3);
    }

    #[test]
    fn lambda_examples() {
        let i = SliceFn::i(Slice);
        let (ll, lr) = lambda_lr(&i, &i).unwrap();
        assert!(ll.is_zero() && lr.is_zero());
        let two_j = SliceFn::from_ints([0, 0, 2, 0], Slice);
        let (ll, _) = lambda_lr(&i, &two_j).unwrap();
        assert_eq!(ll, SliceFn::from_ints([0, -3, 0, 0], Slice));
    }

    #[test]
    fn solve_i_2j() {
        let i = SliceFn::i(Slice);
        let two_j = SliceFn::from_ints([0, 0, 2, 0], Slice);
        let sol = solve_rank4(&i, &two_j, &SliceFn::one(Slice)).unwrap();
        let third = ScalarElem::from_ratio(1, 3, Slice);
        assert_eq!(sol.chi, SliceFn::from_ints([0, 1, -2, 0], Slice).scale(&third));
        let zero = solve_rank4(&i, &two_j, &SliceFn::zero(Slice)).unwrap();
        assert!(zero.chi.is_zero());
    }
}
