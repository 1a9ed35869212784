//! The relation `f ≃ g` (conjugacy by an invertible element), constructive
//! conjugators and intertwining zero divisors.

use serde::Serialize;

use crate::algebra::{IdemSign, QuatConst, SliceFn};
use crate::error::{AlgebraError, Result};
use crate::scalar::DomainMode;
use crate::sylvester::{
    branch_of, rank2_kernel, rank2_zero_divisor_in_kernel, rank3_structure, sylvester_matrix, Branch,
};

/// An invertible `h` with `h^{-*}*f*h = g`; `f = h*g*h^{-*}` in the other
/// direction.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct EquivalenceWitness {
    pub h: SliceFn,
}

impl EquivalenceWitness {
    /// Checks `h^{-*}*f*h = g` exactly.
    pub fn verifies(&self, f: &SliceFn, g: &SliceFn) -> bool {
        match self.h.star_inverse() {
            Ok(hi) => &(&hi * f) * &self.h == *g,
            Err(_) => false,
        }
    }
}

/// `f ≃ g`: equal real parts and `f_v^s = g_v^s` for non-central functions;
/// equality for central ones.
pub fn are_equivalent(f: &SliceFn, g: &SliceFn) -> Result<bool> {
    if f.mode() != g.mode() {
        return Err(AlgebraError::ModeMismatch);
    }
    Ok(match (f.is_central(), g.is_central()) {
        (true, true) => f == g,
        (false, false) => {
            f.real_part() == g.real_part() && f.vector_part().symmetrized() == g.vector_part().symmetrized()
        }
        _ => false,
    })
}

/// An invertible element of `ker S_{f,−g}`, verified.
pub fn conjugator(f: &SliceFn, g: &SliceFn) -> Result<EquivalenceWitness> {
    if !are_equivalent(f, g)? {
        return Err(AlgebraError::NotEquivalent);
    }
    let w = if f == g {
        EquivalenceWitness { h: SliceFn::one(f.mode()) }
    } else {
        let k = rank2_kernel(f, &-g)?;
        EquivalenceWitness { h: k.basis[0].clone() }
    };
    if !w.verifies(f, g) {
        return Err(AlgebraError::Verification("conjugator".into()));
    }
    Ok(w)
}

/// Whether `f` is equivalent to `f₀ + γ·i` with `γ` in the scalar field, and
/// that canonical form. A negative answer means no root of `f_v^s` exists in
/// the modeled field.
pub fn equivalent_to_one_slice_preserving(f: &SliceFn) -> Result<(bool, Option<SliceFn>)> {
    if f.is_central() {
        return Err(AlgebraError::WrongBranch { expected: "non-central".into(), found: "central".into() });
    }
    let fvs = f.vector_part().symmetrized();
    if fvs.is_zero() {
        return Ok((false, None));
    }
    match fvs.sqrt() {
        None => Ok((false, None)),
        Some(gamma) => {
            let canonical = &SliceFn::from_scalar(f.real_part().clone()) + &SliceFn::i(f.mode()).scale(&gamma);
            if !are_equivalent(f, &canonical)? {
                return Err(AlgebraError::Verification("canonical form".into()));
            }
            Ok((true, Some(canonical)))
        }
    }
}

/// A zero divisor `σ` with `f*σ = σ*g`, if one exists.
pub fn intertwines_with_zero_divisor(f: &SliceFn, g: &SliceFn) -> Result<Option<SliceFn>> {
    if f.mode() != g.mode() {
        return Err(AlgebraError::ModeMismatch);
    }
    let mode = f.mode();
    if mode == DomainMode::Slice {
        return Ok(None);
    }
    let mg = -g;
    let m = sylvester_matrix(f, &mg)?;
    let kernel = m.kernel_basis();
    if kernel.is_empty() {
        return Ok(None);
    }
    let witness = match branch_of(f, &mg) {
        Branch::Rank4 => None,
        Branch::Rank2 => rank2_zero_divisor_in_kernel(f, &mg)?.witness,
        Branch::Rank3 => Some(rank3_structure(f, &mg)?.kernel),
        Branch::Reduced => {
            if kernel.len() == 4 {
                Some(SliceFn::basic_idempotent(IdemSign::Plus, &QuatConst::i(), mode)?)
            } else {
                // kernel of one-sided multiplication by a zero divisor
                Some(SliceFn::from(&kernel[0]))
            }
        }
    };
    if let Some(s) = &witness {
        if !s.is_zero_divisor() || &(f * s) != &(s * g) {
            return Err(AlgebraError::Verification("intertwining zero divisor".into()));
        }
    }
    Ok(witness)
}
