//! Elements `a + b𝒥` of the scalar field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::coeff::{gauss_sqrt, rational_sqrt, GaussRat};
use super::poly::Poly;
use super::ratfn::{RatFn, RatFun};
use crate::error::{AlgebraError, Result};

/// Whether the circular domain meets the real axis (slice domain) or not
/// (product domain). Only product domains have the scalar 𝒥.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainMode {
    Slice,
    Product,
}

impl fmt::Display for DomainMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DomainMode::Slice => "slice",
            DomainMode::Product => "product",
        })
    }
}

/// A scalar `a + b𝒥` with `a, b ∈ ℚ(x)`.
///
/// Stored as one rational function over the Gaussian rationals, where the
/// imaginary unit plays the role of 𝒥. Canonical, so `==` is field equality.
/// In slice mode the 𝒥-part is always zero.
///
/// Arithmetic operators panic on mixed modes and on division by zero; the
/// `try_*` methods report those as errors instead.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ScalarElem {
    val: RatFn<GaussRat>,
    mode: DomainMode,
}

impl ScalarElem {
    pub fn zero(mode: DomainMode) -> Self {
        ScalarElem { val: RatFn::zero(), mode }
    }

    pub fn one(mode: DomainMode) -> Self {
        ScalarElem { val: RatFn::one(), mode }
    }

    pub fn from_i64(n: i64, mode: DomainMode) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)), mode)
    }

    pub fn from_ratio(n: i64, d: i64, mode: DomainMode) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()), mode)
    }

    pub fn from_rational(q: BigRational, mode: DomainMode) -> Self {
        ScalarElem { val: RatFn::constant(GaussRat::real(q)), mode }
    }

    /// The indeterminate `x`.
    pub fn x(mode: DomainMode) -> Self {
        ScalarElem { val: RatFn::x(), mode }
    }

    /// The function 𝒥; an error in slice mode.
    pub fn j(mode: DomainMode) -> Result<Self> {
        match mode {
            DomainMode::Slice => Err(AlgebraError::JInSliceMode),
            DomainMode::Product => {
                Ok(ScalarElem { val: RatFn::constant(GaussRat::unit_i()), mode })
            }
        }
    }

    pub fn from_ratfun(a: &RatFun, mode: DomainMode) -> Self {
        ScalarElem { val: a.map(|c| GaussRat::real(c.clone())), mode }
    }

    /// `a + b𝒥`; rejects a nonzero `b` in slice mode.
    pub fn from_parts(a: &RatFun, b: &RatFun, mode: DomainMode) -> Result<Self> {
        let re = Self::from_ratfun(a, mode);
        if b.is_zero() {
            return Ok(re);
        }
        let im = Self::from_ratfun(b, mode).try_mul(&Self::j(mode)?)?;
        re.try_add(&im)
    }

    /// Wraps a Gaussian-coefficient rational function; rejects non-real
    /// coefficients in slice mode.
    pub fn from_gauss(val: RatFn<GaussRat>, mode: DomainMode) -> Result<Self> {
        if mode == DomainMode::Slice
            && !(val.num().coeffs().iter().all(GaussRat::is_real)
                && val.den().coeffs().iter().all(GaussRat::is_real))
        {
            return Err(AlgebraError::JInSliceMode);
        }
        Ok(ScalarElem { val, mode })
    }

    pub fn gauss(&self) -> &RatFn<GaussRat> {
        &self.val
    }

    pub fn mode(&self) -> DomainMode {
        self.mode
    }

    /// Same value reinterpreted in another mode; fails when moving a
    /// 𝒥-carrying value into slice mode.
    pub fn with_mode(&self, mode: DomainMode) -> Result<Self> {
        Self::from_gauss(self.val.clone(), mode)
    }

    pub fn is_zero(&self) -> bool {
        self.val.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.val.is_one()
    }

    /// The value as a rational constant, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.val.as_constant().filter(GaussRat::is_real).map(|c| c.re)
    }

    /// `(a, b)` with `self = a + b𝒥`.
    pub fn parts(&self) -> (RatFun, RatFun) {
        if self.is_real() {
            let m = |c: &GaussRat| c.re.clone();
            let a = RatFn::new(self.val.num().map(m), self.val.den().map(m)).expect("nonzero denominator");
            return (a, RatFn::zero());
        }
        // N/D = N·D̄ / (D·D̄) with D·D̄ real
        let conj = |p: &Poly<GaussRat>| p.map(GaussRat::conj);
        let dbar = conj(self.val.den());
        let top = self.val.num().mul(&dbar);
        let bottom = self.val.den().mul(&dbar).map(|c| c.re.clone());
        let a = RatFn::new(top.map(|c| c.re.clone()), bottom.clone()).expect("nonzero denominator");
        let b = RatFn::new(top.map(|c| c.im.clone()), bottom).expect("nonzero denominator");
        (a, b)
    }

    pub fn a(&self) -> RatFun {
        self.parts().0
    }

    pub fn b(&self) -> RatFun {
        self.parts().1
    }

    /// True when the 𝒥-part vanishes.
    pub fn is_real(&self) -> bool {
        self.val.num().coeffs().iter().all(GaussRat::is_real)
            && self.val.den().coeffs().iter().all(GaussRat::is_real)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.mode == other.mode {
            Ok(())
        } else {
            Err(AlgebraError::ModeMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(ScalarElem { val: self.val.add(&other.val), mode: self.mode })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(ScalarElem { val: self.val.sub(&other.val), mode: self.mode })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(ScalarElem { val: self.val.mul(&other.val), mode: self.mode })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.try_mul(&other.invert()?)?)
    }

    /// `(a + b𝒥)^{-1} = (a − b𝒥)/(a² + b²)`.
    pub fn invert(&self) -> Result<Self> {
        let val = self.val.recip().ok_or(AlgebraError::DivisionByZero)?;
        Ok(ScalarElem { val, mode: self.mode })
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        ScalarElem { val: self.val.scale(&GaussRat::real(q.clone())), mode: self.mode }
    }

    /// Integer power; negative exponents invert (panics on zero).
    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.invert().expect("negative power of zero") } else { self.clone() };
        let mut acc = ScalarElem::one(self.mode);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// An exact square root inside the model field, or `None`.
    ///
    /// The model is `ℚ(x)` in slice mode and `ℚ(x)[𝒥]` in product mode, so a
    /// `None` only means no root exists there (e.g. `2` has no rational root).
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let (lc, num_parts) = self.val.num().squarefree_decomposition()?;
        let (_, den_parts) = self.val.den().squarefree_decomposition()?;
        let half_power = |parts: &[(Poly<GaussRat>, u32)]| -> Option<Poly<GaussRat>> {
            let mut acc = Poly::one();
            for (s, e) in parts {
                if e % 2 == 1 {
                    return None;
                }
                acc = acc.mul(&s.pow(e / 2));
            }
            Some(acc)
        };
        let num_root = half_power(&num_parts)?;
        let den_root = half_power(&den_parts)?;
        let c = match self.mode {
            DomainMode::Slice => GaussRat::real(rational_sqrt(&lc.re)?),
            DomainMode::Product => gauss_sqrt(&lc)?,
        };
        let val = RatFn::new(num_root.scale(&c), den_root)?;
        let root = ScalarElem { val, mode: self.mode };
        debug_assert_eq!(&(&root * &root), self);
        Some(root)
    }

    pub fn has_square_root(&self) -> bool {
        self.sqrt().is_some()
    }
}

/// Squarefree decomposition of a rational polynomial: `p = c·∏ sᵢ^{eᵢ}`.
pub fn squarefree_decomposition(
    p: &Poly<BigRational>,
) -> Result<(BigRational, Vec<(Poly<BigRational>, u32)>)> {
    p.squarefree_decomposition().ok_or(AlgebraError::ZeroPolynomial)
}

impl fmt::Display for ScalarElem {
    /// `(<num>)/(<den>)`, followed by ` + J*(<num>)/(<den>)` when the
    /// 𝒥-part is nonzero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.parts();
        write!(f, "{a}")?;
        if !b.is_zero() {
            write!(f, " + J*{b}")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&ScalarElem> for &ScalarElem {
            type Output = ScalarElem;
            fn $method(self, rhs: &ScalarElem) -> ScalarElem {
                self.$try(rhs).unwrap_or_else(|e| panic!("scalar {}: {e}", stringify!($method)))
            }
        }
        impl $trait<ScalarElem> for ScalarElem {
            type Output = ScalarElem;
            fn $method(self, rhs: ScalarElem) -> ScalarElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ScalarElem> for ScalarElem {
            type Output = ScalarElem;
            fn $method(self, rhs: &ScalarElem) -> ScalarElem {
                (&self).$method(rhs)
            }
        }
        impl $trait<ScalarElem> for &ScalarElem {
            type Output = ScalarElem;
            fn $method(self, rhs: ScalarElem) -> ScalarElem {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &ScalarElem {
    type Output = ScalarElem;
    fn neg(self) -> ScalarElem {
        ScalarElem { val: self.val.neg(), mode: self.mode }
    }
}

impl Neg for ScalarElem {
    type Output = ScalarElem;
    fn neg(self) -> ScalarElem {
        -&self
    }
}

impl Zero for ScalarElem {
    /// Product-mode zero; use [`ScalarElem::zero`] to pick a mode.
    fn zero() -> Self {
        ScalarElem::zero(DomainMode::Product)
    }
    fn is_zero(&self) -> bool {
        self.val.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use DomainMode::*;

    fn poly(cs: &[i64]) -> Poly<BigRational> {
        Poly::new(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFun {
        RatFn::new(poly(n), poly(d)).unwrap()
    }

    fn c(n: i64) -> ScalarElem {
        ScalarElem::from_i64(n, Product)
    }

    #[test]
    fn j_squared_is_minus_one() {
        let j = ScalarElem::j(Product).unwrap();
        assert_eq!(&j * &j, c(-1));
        assert_eq!(ScalarElem::j(Slice), Err(AlgebraError::JInSliceMode));
    }

    #[test]
    fn basic_arithmetic() {
        let x = ScalarElem::x(Product);
        assert_eq!(&x + &c(1), ScalarElem::from_ratfun(&rf(&[1, 1], &[1]), Product));
        let a = ScalarElem::from_ratfun(&rf(&[0, 1], &[-1, 1]), Product);
        let b = ScalarElem::from_ratfun(&rf(&[-1, 1], &[0, 1]), Product);
        assert!((&a * &b).is_one());
        assert_eq!(
            ScalarElem::one(Slice).try_add(&ScalarElem::one(Product)),
            Err(AlgebraError::ModeMismatch)
        );
    }

    #[test]
    fn inversion() {
        let j = ScalarElem::j(Product).unwrap();
        assert_eq!(j.invert().unwrap(), -&j);
        let one_plus_j = &c(1) + &j;
        let expected = (&c(1) - &j) * ScalarElem::from_ratio(1, 2, Product);
        assert_eq!(one_plus_j.invert().unwrap(), expected);
        let x2 = ScalarElem::x(Slice).pow(2);
        assert_eq!(x2.invert().unwrap(), ScalarElem::from_ratfun(&rf(&[1], &[0, 0, 1]), Slice));
        assert_eq!(ScalarElem::zero(Slice).invert(), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn parts_round_trip() {
        let a = rf(&[1, 0, 1], &[-2, 1]);
        let b = rf(&[3], &[1]);
        let s = ScalarElem::from_parts(&a, &b, Product).unwrap();
        assert_eq!(s.parts(), (a.clone(), b.clone()));
        assert_eq!(s.to_string(), "(x^2+1)/(x-2) + J*(3)/(1)");
        assert!(ScalarElem::from_parts(&a, &b, Slice).is_err());
        // 1/(x + 𝒥) = (x − 𝒥)/(x² + 1)
        let inv = (ScalarElem::x(Product) + ScalarElem::j(Product).unwrap()).invert().unwrap();
        assert_eq!(inv.parts(), (rf(&[0, 1], &[1, 0, 1]), rf(&[-1], &[1, 0, 1])));
    }

    #[test]
    fn square_roots() {
        let p = ScalarElem::from_ratfun(&rf(&[1, -2, 1], &[1]), Slice);
        let r = p.sqrt().unwrap();
        assert!(r == ScalarElem::from_ratfun(&rf(&[-1, 1], &[1]), Slice) || r == -ScalarElem::from_ratfun(&rf(&[-1, 1], &[1]), Slice));
        let j = ScalarElem::j(Product).unwrap();
        let r = c(-1).sqrt().unwrap();
        assert!(r == j || r == -&j);
        assert!(ScalarElem::from_i64(-1, Slice).sqrt().is_none());
        assert!(c(2).sqrt().is_none());
        let q = ScalarElem::from_ratfun(&rf(&[4, 0, 9], &[1, 2, 1]), Product);
        assert!(q.sqrt().is_none());
        let q = ScalarElem::from_ratfun(&rf(&[9, 0, 0, 0, 9], &[1, 2, 1]), Product);
        assert!(q.sqrt().is_none());
        let sq = ScalarElem::from_ratfun(&rf(&[3, 0, 3], &[-1, 1]), Product).pow(2);
        let r = sq.sqrt().unwrap();
        assert_eq!(&r * &r, sq);
        // (x + 𝒥)² has a root in product mode
        let t = (ScalarElem::x(Product) + j.clone()).pow(2);
        assert_eq!(t.sqrt().unwrap().pow(2), t);
    }

    #[test]
    fn squarefree_public() {
        let (c, parts) = squarefree_decomposition(&poly(&[0, 0, 1, 1])).unwrap();
        assert_eq!(c, BigRational::from_integer(1.into()));
        assert_eq!(parts, vec![(poly(&[1, 1]), 1), (poly(&[0, 1]), 2)]);
        assert!(squarefree_decomposition(&Poly::zero()).is_err());
    }
}
