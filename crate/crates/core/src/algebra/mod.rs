//! The 4-dimensional algebra of slice functions over the scalar field, with
//! the *-product, conjugation, symmetrization and idempotent structure.

mod quat;
mod slicefn;

pub use quat::QuatConst;
pub use slicefn::{DecompSide, IdemSign, SliceFn, ZeroDivisorDecomposition};
