//! Rational functions in canonical form.

use std::fmt;

use num_rational::BigRational;

use super::coeff::Coeff;
use super::poly::Poly;

/// `num / den` with `gcd(num, den) = 1` and `den` monic; zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn<C: Coeff> {
    num: Poly<C>,
    den: Poly<C>,
}

/// Rational function with rational coefficients.
pub type RatFun = RatFn<BigRational>;

impl<C: Coeff> RatFn<C> {
    /// Builds and canonicalizes `num / den`. Returns `None` when `den` is zero.
    pub fn new(num: Poly<C>, den: Poly<C>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::canon(num, den))
    }

    fn canon(num: Poly<C>, den: Poly<C>) -> Self {
        if num.is_zero() {
            return RatFn::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        Self::normalize_lead(num, den)
    }

    fn normalize_lead(num: Poly<C>, den: Poly<C>) -> Self {
        let lc = den.leading();
        if lc.is_one() {
            return RatFn { num, den };
        }
        let inv = lc.recip();
        RatFn { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        RatFn { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<C> {
        &self.num
    }

    pub fn den(&self) -> &Poly<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value as a constant, if it is one.
    pub fn as_constant(&self) -> Option<C> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::canon(self.num.add(&other.num), self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        if g.is_one() {
            // coprime denominators: the sum is already reduced
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            if num.is_zero() {
                return RatFn::zero();
            }
            return Self::normalize_lead(num, self.den.mul(&other.den));
        }
        let sd = self.den.div_exact(&g);
        let od = other.den.div_exact(&g);
        let num = self.num.mul(&od).add(&other.num.mul(&sd));
        Self::canon(num, sd.mul(&other.den))
    }

    pub fn neg(&self) -> Self {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RatFn::zero();
        }
        // cross-cancel so the product needs no further gcd
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), other.den.clone())
        } else {
            (self.num.div_exact(&g1), other.den.div_exact(&g1))
        };
        let (c, b) = if g2.is_one() {
            (other.num.clone(), self.den.clone())
        } else {
            (other.num.div_exact(&g2), self.den.div_exact(&g2))
        };
        Self::normalize_lead(a.mul(&c), b.mul(&d))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return RatFn::zero();
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalize_lead(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.recip()?))
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> RatFn<D> {
        RatFn::canon(self.num.map(&f), self.den.map(&f))
    }
}

impl fmt::Display for RatFn<BigRational> {
    /// `(<num>)/(<den>)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly<BigRational> {
        Poly::new(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    fn r(n: &[i64], d: &[i64]) -> RatFun {
        RatFn::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn canonical_form() {
        // (2x^2 - 2) / (2x - 2) = x + 1
        let f = r(&[-2, 0, 2], &[-2, 2]);
        assert_eq!(f.num(), &p(&[1, 1]));
        assert_eq!(f.den(), &p(&[1]));
        let z = r(&[0], &[3, 1]);
        assert_eq!(z, RatFn::zero());
        // denominator monic, sign on the numerator
        let g = r(&[1], &[0, -2]);
        assert_eq!(g.num(), &p(&[-1]).scale(&BigRational::new(1.into(), 2.into())));
        assert_eq!(g.den(), &p(&[0, 1]));
        assert!(RatFn::new(p(&[1]), p(&[])).is_none());
    }

    #[test]
    fn inverse_pair() {
        let a = r(&[0, 1], &[-1, 1]);
        let b = r(&[-1, 1], &[0, 1]);
        assert!(a.mul(&b).is_one());
        assert!(a.mul(&a.recip().unwrap()).is_one());
    }

    #[test]
    fn addition_cancels() {
        let a = r(&[1], &[-1, 1]);
        let b = r(&[1], &[1, 1]);
        // 1/(x-1) + 1/(x+1) = 2x/(x^2-1)
        assert_eq!(a.add(&b), r(&[0, 2], &[-1, 0, 1]));
        assert_eq!(a.sub(&a), RatFn::zero());
        // 1/(x(x-1)) - 1/(x(x+1)) = 2/(x(x^2-1))
        let c = r(&[1], &[0, -1, 1]);
        let d = r(&[1], &[0, 1, 1]);
        assert_eq!(c.sub(&d), r(&[2], &[0, -1, 0, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(r(&[1, 0, 1], &[-2, 1]).to_string(), "(x^2+1)/(x-2)");
        assert_eq!(r(&[3], &[1]).to_string(), "(3)/(1)");
    }
}
