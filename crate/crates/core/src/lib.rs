//! Exact algebra of slice semi-regular quaternionic functions over a
//! computable scalar field, and the theory of their Sylvester operators
//! `χ ↦ f*χ + χ*g`.

pub mod algebra;
pub mod equivalence;
pub mod error;
pub mod linalg;
pub mod operator;
pub mod oracle;
pub mod sampling;
pub mod scalar;
pub mod sylvester;

pub use algebra::{IdemSign, QuatConst, SliceFn};
pub use error::{AlgebraError, Result};
pub use linalg::{FieldMat4, FieldPoly, FieldVec4};
pub use scalar::{DomainMode, Poly, RatFn, RatFun, ScalarElem};
