//! Floating-point evaluation of slice functions at quaternions, used as an
//! independent check on the exact algebra.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::algebra::SliceFn;
use crate::error::{AlgebraError, Result};
use crate::scalar::{RatFun, ScalarElem};

/// Relative tolerance for identity checks.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Tolerance for structural residues.
pub const STRUCTURAL_TOL: f64 = 1e-12;
/// Denominators below this magnitude count as poles.
pub const POLE_FLOOR: f64 = 1e-6;

/// A quaternion `w + x i + y j + z k` in double precision.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct QuatF {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl QuatF {
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        QuatF { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        QuatF::new(w, 0.0, 0.0, 0.0)
    }

    /// `1, i, j, k` for `n = 0..4`.
    pub fn basis(n: usize) -> Self {
        let mut c = [0.0; 4];
        c[n] = 1.0;
        QuatF::new(c[0], c[1], c[2], c[3])
    }

    pub fn conj(&self) -> Self {
        QuatF::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sq(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn vector(&self) -> QuatF {
        QuatF::new(0.0, self.x, self.y, self.z)
    }

    pub fn scale(&self, s: f64) -> Self {
        QuatF::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn inverse(&self) -> Self {
        self.conj().scale(1.0 / self.norm_sq())
    }

    /// `a + b·u` for a complex `a + b·i` and a unit imaginary `u`.
    fn from_complex(c: Complex64, u: &QuatF) -> Self {
        QuatF::real(c.re) + u.scale(c.im)
    }
}

impl Add for QuatF {
    type Output = QuatF;
    fn add(self, o: QuatF) -> QuatF {
        QuatF::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for QuatF {
    type Output = QuatF;
    fn sub(self, o: QuatF) -> QuatF {
        QuatF::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for QuatF {
    type Output = QuatF;
    fn neg(self) -> QuatF {
        self.scale(-1.0)
    }
}

impl Mul for QuatF {
    type Output = QuatF;
    fn mul(self, o: QuatF) -> QuatF {
        let (a, b) = (self, o);
        QuatF::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

/// A point off the real axis, where `𝒥(q) = q_v/|q_v|` is defined.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct EvalPoint {
    q: QuatF,
}

impl EvalPoint {
    /// Rejects points with `|q_v|` below the structural tolerance.
    pub fn new(q: QuatF) -> Result<Self> {
        let v = q.vector().norm();
        if v < STRUCTURAL_TOL {
            return Err(AlgebraError::NearRealAxis(v));
        }
        Ok(EvalPoint { q })
    }

    pub fn q(&self) -> QuatF {
        self.q
    }

    /// `𝒥(q)`.
    pub fn unit(&self) -> QuatF {
        let v = self.q.vector();
        v.scale(1.0 / v.norm())
    }

    /// `q` as `u + v·i` in the slice `ℂ_{I_q}`.
    fn as_complex(&self) -> Complex64 {
        Complex64::new(self.q.w, self.q.vector().norm())
    }
}

fn rat_to_f64(r: &num_rational::BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn eval_ratfun(r: &RatFun, z: Complex64) -> Result<Complex64> {
    let horner = |cs: &[num_rational::BigRational]| {
        cs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + rat_to_f64(c))
    };
    let den = horner(r.den().coeffs());
    if den.norm() < POLE_FLOOR {
        return Err(AlgebraError::NearPole(den.norm()));
    }
    Ok(horner(r.num().coeffs()) / den)
}

/// `a(q) + b(q)·𝒥(q)`, a value in `ℂ_{I_q}`.
pub fn eval_scalar(s: &ScalarElem, p: &EvalPoint) -> Result<QuatF> {
    let z = p.as_complex();
    let (a, b) = s.parts();
    let value = eval_ratfun(&a, z)? + Complex64::i() * eval_ratfun(&b, z)?;
    Ok(QuatF::from_complex(value, &p.unit()))
}

/// `f₀(q) + f₁(q)·i + f₂(q)·j + f₃(q)·k`.
pub fn eval_slicefn(f: &SliceFn, p: &EvalPoint) -> Result<QuatF> {
    let mut acc = QuatF::default();
    for (n, c) in f.coords().iter().enumerate() {
        acc = acc + eval_scalar(c, p)? * QuatF::basis(n);
    }
    Ok(acc)
}

/// Compares `(f*g)(q)` with `f(q)·g(f(q)^{-1} q f(q))`, or with 0 when
/// `f(q)` vanishes.
pub fn check_star_pointwise(f: &SliceFn, g: &SliceFn, p: &EvalPoint, tol: f64) -> Result<bool> {
    let lhs = eval_slicefn(&f.try_star(g)?, p)?;
    let fq = eval_slicefn(f, p)?;
    let rhs = if fq.norm() < STRUCTURAL_TOL {
        QuatF::default()
    } else {
        let moved = EvalPoint::new(fq.inverse() * p.q() * fq)?;
        fq * eval_slicefn(g, &moved)?
    };
    Ok((lhs - rhs).norm() <= tol * (1.0 + lhs.norm() + rhs.norm()))
}

/// `|a − b| ≤ tol·(1 + |a| + |b|)`.
pub fn close(a: QuatF, b: QuatF, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm() + b.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::DomainMode::{Product, Slice};
    use crate::{IdemSign, QuatConst};

    fn pt(w: f64, x: f64, y: f64, z: f64) -> EvalPoint {
        EvalPoint::new(QuatF::new(w, x, y, z)).unwrap()
    }

    #[test]
    fn scalar_examples() {
        let x = ScalarElem::x(Slice);
        assert_eq!(eval_scalar(&x, &pt(1.0, 2.0, 0.0, 0.0)).unwrap(), QuatF::new(1.0, 2.0, 0.0, 0.0));
        let j = ScalarElem::j(Product).unwrap();
        assert!(close(eval_scalar(&j, &pt(3.0, 0.0, 4.0, 0.0)).unwrap(), QuatF::basis(2), STRUCTURAL_TOL));
        assert!(close(eval_scalar(&j, &pt(3.0, 0.0, -4.0, 0.0)).unwrap(), -QuatF::basis(2), STRUCTURAL_TOL));
    }

    #[test]
    fn idempotent_value() {
        let l = SliceFn::basic_idempotent(IdemSign::Plus, &QuatConst::i(), Product).unwrap();
        let v = eval_slicefn(&l, &pt(2.0, 0.0, 3.0, 0.0)).unwrap();
        assert!(close(v, QuatF::new(0.5, 0.0, 0.0, 0.5), STRUCTURAL_TOL));
    }

    #[test]
    fn star_pointwise_examples() {
        let (i, j) = (SliceFn::i(Slice), SliceFn::j(Slice));
        assert!(check_star_pointwise(&i, &j, &pt(1.0, 0.0, 0.0, 2.0), IDENTITY_TOL).unwrap());
        let x = SliceFn::from_scalar(ScalarElem::x(Slice));
        assert!(check_star_pointwise(&x, &i, &pt(1.0, 0.0, 2.0, 0.0), IDENTITY_TOL).unwrap());
    }

    #[test]
    fn pole_is_reported() {
        let x = ScalarElem::x(Slice);
        let r = (&x - &ScalarElem::one(Slice)).invert().unwrap();
        // x − 1 vanishes only at 1, which is real; approach it off the axis
        let near = pt(1.0, 1e-9, 0.0, 0.0);
        assert!(matches!(eval_scalar(&r, &near), Err(AlgebraError::NearPole(_))));
    }
}
