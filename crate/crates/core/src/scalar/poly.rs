//! Dense univariate polynomials over a [`Coeff`] field.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::coeff::{fmt_rational, Coeff};
use super::modular::modular_gcd;

/// Coefficients are stored lowest degree first with no trailing zeros, so
/// the zero polynomial has an empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<C: Coeff> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Coeff::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Poly::new(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Poly::new(vec![C::zero(), C::one()])
    }

    pub fn monomial(c: C, deg: usize) -> Self {
        let mut v = vec![C::zero(); deg + 1];
        v[deg] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).plus(&other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).minus(&other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(Coeff::negated).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        Poly::new(C::convolve(&self.coeffs, &other.coeffs))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a.times(c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division. Panics when `d` is zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dn = d.coeffs.len();
        if self.coeffs.len() < dn {
            return (Poly::zero(), self.clone());
        }
        let (q, r) = C::divrem_coeffs(&self.coeffs, &d.coeffs);
        (Poly::new(q), Poly::new(r))
    }

    /// Exact quotient; panics in debug builds if the remainder is nonzero.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        if let Some(g) = modular_gcd(self, other) {
            return g;
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.times(&C::from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Yun's algorithm: returns `(c, [(s_i, e_i)])` with `self = c * prod s_i^e_i`,
    /// every `s_i` monic, squarefree, nonconstant and pairwise coprime.
    /// Returns `None` for the zero polynomial.
    pub fn squarefree_decomposition(&self) -> Option<(C, Vec<(Poly<C>, u32)>)> {
        if self.is_zero() {
            return None;
        }
        let lc = self.leading();
        let f = self.monic();
        let mut parts = Vec::new();
        if f.is_constant() {
            return Some((lc, parts));
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0);
        let mut c = fp.div_exact(&a0);
        let mut d = c.sub(&b.derivative());
        let mut e = 1u32;
        loop {
            let a = b.gcd(&d);
            if !a.is_constant() {
                parts.push((a.clone(), e));
            }
            b = b.div_exact(&a);
            if b.is_constant() {
                break;
            }
            c = d.div_exact(&a);
            d = c.sub(&b.derivative());
            e += 1;
        }
        Some((lc, parts))
    }
}

impl fmt::Display for Poly<BigRational> {
    /// Expanded monomial form without spaces, e.g. `3/2*x^2-x+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let mag = c.abs();
            if i == 0 || !One::is_one(&mag) {
                fmt_rational(&mag, f)?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Poly<BigRational>;

    fn p(cs: &[i64]) -> P {
        Poly::new(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[1, 0, 3, 2]);
        let b = p(&[-1, 2]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let common = p(&[1, 1]);
        let a = common.mul(&p(&[2, 0, 1]));
        let b = common.mul(&p(&[-3, 5]));
        assert_eq!(a.gcd(&b), common);
        assert_eq!(P::zero().gcd(&P::zero()), P::zero());
    }

    #[test]
    fn squarefree_examples() {
        // x^3 + x^2 = x^2 (x + 1)
        let (c, parts) = p(&[0, 0, 1, 1]).squarefree_decomposition().unwrap();
        assert!(Coeff::is_one(&c));
        assert_eq!(parts, vec![(p(&[1, 1]), 1), (p(&[0, 1]), 2)]);
        let (_, parts) = p(&[0, 1]).squarefree_decomposition().unwrap();
        assert_eq!(parts, vec![(p(&[0, 1]), 1)]);
        let (_, parts) = p(&[1, 0, 1]).pow(2).squarefree_decomposition().unwrap();
        assert_eq!(parts, vec![(p(&[1, 0, 1]), 2)]);
        assert!(P::zero().squarefree_decomposition().is_none());
    }

    #[test]
    fn squarefree_reassembles() {
        let f = p(&[3]).mul(&p(&[1, 1]).pow(3)).mul(&p(&[-2, 0, 1]).pow(2)).mul(&p(&[0, 1]));
        let (c, parts) = f.squarefree_decomposition().unwrap();
        let mut g = P::constant(c);
        for (s, e) in &parts {
            g = g.mul(&s.pow(*e));
        }
        assert_eq!(g, f);
        let exps: Vec<u32> = parts.iter().map(|(_, e)| *e).collect();
        assert_eq!(exps, vec![1, 2, 3]);
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[1, 0, 1]).to_string(), "x^2+1");
        assert_eq!(p(&[-2, 1]).to_string(), "x-2");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(P::zero().to_string(), "0");
        let half = P::new(vec![BigRational::new(1.into(), 2.into()), BigRational::from_integer((-3).into())]);
        assert_eq!(half.to_string(), "-3*x+1/2");
    }
}
