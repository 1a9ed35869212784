//! The scalar field: rational functions of one variable, with 𝒥 adjoined
//! in product mode.

mod coeff;
mod elem;
mod modular;
mod poly;
mod ratfn;

pub use coeff::{gauss_sqrt, rational_sqrt, Coeff, GaussRat};
pub use modular::Prime;
pub use elem::{squarefree_decomposition, DomainMode, ScalarElem};
pub use poly::Poly;
pub use ratfn::{RatFn, RatFun};
