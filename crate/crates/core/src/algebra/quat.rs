use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SliceFn;
use crate::scalar::{DomainMode, ScalarElem};

/// A quaternion with exact rational components `q0 + q1 i + q2 j + q3 k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuatConst {
    pub q: [BigRational; 4],
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QuatConst {
    pub fn new(q: [BigRational; 4]) -> Self {
        QuatConst { q }
    }

    pub fn from_ints(q: [i64; 4]) -> Self {
        QuatConst { q: q.map(rat) }
    }

    pub fn one() -> Self {
        Self::from_ints([1, 0, 0, 0])
    }

    pub fn i() -> Self {
        Self::from_ints([0, 1, 0, 0])
    }

    pub fn j() -> Self {
        Self::from_ints([0, 0, 1, 0])
    }

    pub fn k() -> Self {
        Self::from_ints([0, 0, 0, 1])
    }

    /// `1, i, j, k` for `n = 0..4`.
    pub fn basis(n: usize) -> Self {
        let mut q = [0; 4];
        q[n] = 1;
        Self::from_ints(q)
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.q;
        QuatConst { q: [a.clone(), -b, -c, -d] }
    }

    pub fn norm_sq(&self) -> BigRational {
        self.q.iter().map(|c| c * c).fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn is_zero(&self) -> bool {
        self.q.iter().all(Zero::is_zero)
    }

    /// `q0 = 0` and `|q| = 1`, i.e. `q² = −1`.
    pub fn is_unit_imaginary(&self) -> bool {
        self.q[0].is_zero() && self.norm_sq().is_one()
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        QuatConst { q: self.q.clone().map(|c| c * s) }
    }

    /// Inverse `q^c / |q|²`; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(self.conj().scale(&self.norm_sq().recip()))
    }

    pub fn to_slicefn(&self, mode: DomainMode) -> SliceFn {
        SliceFn::from_coords(self.q.clone().map(|c| ScalarElem::from_rational(c, mode)))
    }
}

impl Mul for &QuatConst {
    type Output = QuatConst;
    fn mul(self, o: &QuatConst) -> QuatConst {
        let [a0, a1, a2, a3] = &self.q;
        let [b0, b1, b2, b3] = &o.q;
        QuatConst {
            q: [
                a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
                a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
                a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
            ],
        }
    }
}

impl Add for &QuatConst {
    type Output = QuatConst;
    fn add(self, o: &QuatConst) -> QuatConst {
        QuatConst { q: std::array::from_fn(|n| &self.q[n] + &o.q[n]) }
    }
}

impl Sub for &QuatConst {
    type Output = QuatConst;
    fn sub(self, o: &QuatConst) -> QuatConst {
        QuatConst { q: std::array::from_fn(|n| &self.q[n] - &o.q[n]) }
    }
}

impl Neg for &QuatConst {
    type Output = QuatConst;
    fn neg(self) -> QuatConst {
        QuatConst { q: self.q.clone().map(|c| -c) }
    }
}

impl fmt::Display for QuatConst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})*i + ({})*j + ({})*k", self.q[0], self.q[1], self.q[2], self.q[3])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamilton_rules() {
        let (i, j, k) = (QuatConst::i(), QuatConst::j(), QuatConst::k());
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &i, -&k);
        assert_eq!(&(&i * &j) * &k, QuatConst::from_ints([-1, 0, 0, 0]));
        assert!(i.is_unit_imaginary());
        assert!(!QuatConst::from_ints([0, 1, 1, 0]).is_unit_imaginary());
    }

    #[test]
    fn inverse_and_norm() {
        let q = QuatConst::from_ints([1, 2, -1, 3]);
        assert_eq!(&q * &q.inverse().unwrap(), QuatConst::one());
        assert_eq!(&q * &q.conj(), QuatConst::new([q.norm_sq(), rat(0), rat(0), rat(0)]));
    }
}
