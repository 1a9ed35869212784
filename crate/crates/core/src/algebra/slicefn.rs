use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use super::QuatConst;
use crate::error::{AlgebraError, Result};
use crate::scalar::{DomainMode, ScalarElem};

/// A slice semi-regular function `f0 + f1 i + f2 j + f3 k` with scalar
/// coordinates in the fixed basis `(1, i, j, k)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SliceFn {
    c: [ScalarElem; 4],
}

/// Sign in `ℓ^{±,I} = (1 ∓ 𝒥I)/2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IdemSign {
    Plus,
    Minus,
}

/// Which side the idempotent sits on in a zero-divisor decomposition.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum DecompSide {
    /// `f = 2(fδ)₀ · σ * δ^c`
    RightIdem,
    /// `f = 2(fη)₀ · η^c * ρ`
    LeftIdem,
}

/// Output of [`SliceFn::zero_divisor_decompose`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZeroDivisorDecomposition {
    pub scale: ScalarElem,
    pub unit: QuatConst,
    pub idem: SliceFn,
    pub side: DecompSide,
}

impl ZeroDivisorDecomposition {
    /// Reassembles the decomposed function.
    pub fn reassemble(&self) -> SliceFn {
        let mode = self.scale.mode();
        let u = self.unit.conj().to_slicefn(mode);
        let prod = match self.side {
            DecompSide::RightIdem => &self.idem * &u,
            DecompSide::LeftIdem => &u * &self.idem,
        };
        prod.scale(&self.scale)
    }
}

impl SliceFn {
    /// Builds a function from coordinates that must share one mode.
    pub fn new(c: [ScalarElem; 4]) -> Result<Self> {
        let mode = c[0].mode();
        if c.iter().any(|s| s.mode() != mode) {
            return Err(AlgebraError::ModeMismatch);
        }
        Ok(SliceFn { c })
    }

    /// Like [`SliceFn::new`] but panics on mixed modes.
    pub fn from_coords(c: [ScalarElem; 4]) -> Self {
        Self::new(c).expect("coordinates in one mode")
    }

    pub fn zero(mode: DomainMode) -> Self {
        SliceFn { c: std::array::from_fn(|_| ScalarElem::zero(mode)) }
    }

    pub fn one(mode: DomainMode) -> Self {
        Self::from_scalar(ScalarElem::one(mode))
    }

    /// Embeds a central element.
    pub fn from_scalar(s: ScalarElem) -> Self {
        let mode = s.mode();
        SliceFn { c: [s, ScalarElem::zero(mode), ScalarElem::zero(mode), ScalarElem::zero(mode)] }
    }

    /// `1, i, j, k` for `n = 0..4`.
    pub fn basis(n: usize, mode: DomainMode) -> Self {
        let mut f = Self::zero(mode);
        f.c[n] = ScalarElem::one(mode);
        f
    }

    pub fn i(mode: DomainMode) -> Self {
        Self::basis(1, mode)
    }

    pub fn j(mode: DomainMode) -> Self {
        Self::basis(2, mode)
    }

    pub fn k(mode: DomainMode) -> Self {
        Self::basis(3, mode)
    }

    pub fn from_ints(q: [i64; 4], mode: DomainMode) -> Self {
        QuatConst::from_ints(q).to_slicefn(mode)
    }

    pub fn mode(&self) -> DomainMode {
        self.c[0].mode()
    }

    pub fn coord(&self, n: usize) -> &ScalarElem {
        &self.c[n]
    }

    pub fn coords(&self) -> &[ScalarElem; 4] {
        &self.c
    }

    pub fn into_coords(self) -> [ScalarElem; 4] {
        self.c
    }

    /// `f0`.
    pub fn real_part(&self) -> &ScalarElem {
        &self.c[0]
    }

    /// `f_v = f1 i + f2 j + f3 k`.
    pub fn vector_part(&self) -> SliceFn {
        let mut v = self.clone();
        v.c[0] = ScalarElem::zero(self.mode());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(ScalarElem::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.is_central()
    }

    /// True when the vector part vanishes, i.e. `f` lies in the center.
    pub fn is_central(&self) -> bool {
        self.c[1..].iter().all(ScalarElem::is_zero)
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        Ok(SliceFn { c: try_zip(&self.c, &o.c, ScalarElem::try_add)? })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        Ok(SliceFn { c: try_zip(&self.c, &o.c, ScalarElem::try_sub)? })
    }

    /// Multiplication by a central scalar.
    pub fn scale(&self, s: &ScalarElem) -> Self {
        SliceFn { c: std::array::from_fn(|n| s * &self.c[n]) }
    }

    /// The *-product, in scalar–vector form
    /// `f0 g0 − ⟨f_v,g_v⟩ + f0 g_v + g0 f_v + f_v ∧ g_v`.
    pub fn try_star(&self, o: &Self) -> Result<Self> {
        if self.mode() != o.mode() {
            return Err(AlgebraError::ModeMismatch);
        }
        let [a0, a1, a2, a3] = &self.c;
        let [b0, b1, b2, b3] = &o.c;
        Ok(SliceFn {
            c: [
                a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
                a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
                a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
            ],
        })
    }

    pub fn star(&self, o: &Self) -> Self {
        self.try_star(o).unwrap_or_else(|e| panic!("star product: {e}"))
    }

    /// `⟨f, g⟩_* = (f * g^c)₀ = Σ fₙ gₙ`.
    pub fn star_scalar(&self, o: &Self) -> Result<ScalarElem> {
        if self.mode() != o.mode() {
            return Err(AlgebraError::ModeMismatch);
        }
        Ok(self.c.iter().zip(&o.c).fold(ScalarElem::zero(self.mode()), |acc, (a, b)| acc + a * b))
    }

    /// `f ∧_* g = (f*g − g*f)/2`, which only sees the vector parts.
    pub fn star_wedge(&self, o: &Self) -> Result<Self> {
        if self.mode() != o.mode() {
            return Err(AlgebraError::ModeMismatch);
        }
        let [_, a1, a2, a3] = &self.c;
        let [_, b1, b2, b3] = &o.c;
        Ok(SliceFn {
            c: [ScalarElem::zero(self.mode()), a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1],
        })
    }

    /// Regular conjugate `f^c = f0 − f_v`.
    pub fn conjugate(&self) -> Self {
        let [a, b, c, d] = &self.c;
        SliceFn { c: [a.clone(), -b, -c, -d] }
    }

    /// Symmetrization `f^s = f * f^c = Σ fₙ²`.
    pub fn symmetrized(&self) -> ScalarElem {
        self.c.iter().fold(ScalarElem::zero(self.mode()), |acc, a| acc + a * a)
    }

    /// `f^{-*} = (f^s)^{-1} f^c`.
    pub fn star_inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroFunction);
        }
        let s = self.symmetrized();
        if s.is_zero() {
            return Err(AlgebraError::ZeroDivisor(self.to_string()));
        }
        Ok(self.conjugate().scale(&s.invert()?))
    }

    /// `f ≠ 0` and `f^s = 0`. Never true in slice mode.
    pub fn is_zero_divisor(&self) -> bool {
        !self.is_zero() && self.symmetrized().is_zero()
    }

    pub fn is_invertible(&self) -> bool {
        !self.symmetrized().is_zero()
    }

    /// `f * f = f`.
    pub fn is_idempotent(&self) -> bool {
        &self.star(self) == self
    }

    /// `ℓ^{±,I} = (1 ∓ 𝒥I)/2`; product mode only, `I` a unit imaginary.
    pub fn basic_idempotent(sign: IdemSign, unit: &QuatConst, mode: DomainMode) -> Result<Self> {
        let jay = ScalarElem::j(mode).map_err(|_| AlgebraError::SliceModeZeroDivisor)?;
        if !unit.is_unit_imaginary() {
            return Err(AlgebraError::NotUnitImaginary);
        }
        let half = ScalarElem::from_ratio(1, 2, mode);
        let coeff = match sign {
            IdemSign::Plus => -(&half * &jay),
            IdemSign::Minus => &half * &jay,
        };
        let v = unit.to_slicefn(mode).scale(&coeff);
        Ok(&SliceFn::from_scalar(half) + &v)
    }

    /// First `δ` in the order `1, i, j, k` with `(f δ)₀ ≠ 0`.
    pub fn find_probe_direction(&self) -> Result<QuatConst> {
        // (f·1)₀ = f0, (f·i)₀ = −f1, (f·j)₀ = −f2, (f·k)₀ = −f3
        (0..4)
            .find(|&n| !self.c[n].is_zero())
            .map(QuatConst::basis)
            .ok_or(AlgebraError::ZeroFunction)
    }

    /// Splits a zero divisor into a scale, a unit constant and an idempotent.
    pub fn zero_divisor_decompose(&self, side: DecompSide) -> Result<ZeroDivisorDecomposition> {
        if !self.is_zero_divisor() {
            return Err(AlgebraError::NotAZeroDivisor(self.to_string()));
        }
        let mode = self.mode();
        let delta = self.find_probe_direction()?;
        let d = delta.to_slicefn(mode);
        let scale = self.star(&d).real_part() * &ScalarElem::from_i64(2, mode);
        let inv = scale.invert()?;
        let idem = match side {
            DecompSide::RightIdem => self.star(&d).scale(&inv),
            DecompSide::LeftIdem => d.star(self).scale(&inv),
        };
        let out = ZeroDivisorDecomposition { scale, unit: delta, idem, side };
        if !out.idem.is_idempotent() || &out.reassemble() != self {
            return Err(AlgebraError::Verification("zero divisor decomposition".into()));
        }
        Ok(out)
    }
}

fn try_zip(
    a: &[ScalarElem; 4],
    b: &[ScalarElem; 4],
    op: impl Fn(&ScalarElem, &ScalarElem) -> Result<ScalarElem>,
) -> Result<[ScalarElem; 4]> {
    Ok([op(&a[0], &b[0])?, op(&a[1], &b[1])?, op(&a[2], &b[2])?, op(&a[3], &b[3])?])
}

impl fmt::Display for SliceFn {
    /// `<s0> + (<s1>)*i + (<s2>)*j + (<s3>)*k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})*i + ({})*j + ({})*k", self.c[0], self.c[1], self.c[2], self.c[3])
    }
}

impl Serialize for SliceFn {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for ScalarElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&SliceFn> for &SliceFn {
            type Output = SliceFn;
            fn $method(self, rhs: &SliceFn) -> SliceFn {
                self.$try(rhs).unwrap_or_else(|e| panic!("slice function {}: {e}", stringify!($method)))
            }
        }
        impl $trait<SliceFn> for SliceFn {
            type Output = SliceFn;
            fn $method(self, rhs: SliceFn) -> SliceFn {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&SliceFn> for SliceFn {
            type Output = SliceFn;
            fn $method(self, rhs: &SliceFn) -> SliceFn {
                (&self).$method(rhs)
            }
        }
        impl $trait<SliceFn> for &SliceFn {
            type Output = SliceFn;
            fn $method(self, rhs: SliceFn) -> SliceFn {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
// `*` on slice functions is the *-product.
forward_binop!(Mul, mul, try_star);

impl Neg for &SliceFn {
    type Output = SliceFn;
    fn neg(self) -> SliceFn {
        SliceFn { c: std::array::from_fn(|n| -&self.c[n]) }
    }
}

impl Neg for SliceFn {
    type Output = SliceFn;
    fn neg(self) -> SliceFn {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use DomainMode::*;

    fn jay() -> ScalarElem {
        ScalarElem::j(Product).unwrap()
    }

    fn sc(n: i64) -> ScalarElem {
        ScalarElem::from_i64(n, Product)
    }

    fn ell(sign: IdemSign, u: QuatConst) -> SliceFn {
        SliceFn::basic_idempotent(sign, &u, Product).unwrap()
    }

    #[test]
    fn basis_products() {
        let (i, j, k) = (SliceFn::i(Product), SliceFn::j(Product), SliceFn::k(Product));
        assert_eq!(&i * &j, k);
        let g = SliceFn::from_ints([3, -1, 2, 5], Product);
        assert_eq!(&SliceFn::one(Product) * &g, g);
        assert_eq!(i.star_wedge(&j).unwrap(), k);
        assert!(g.star_wedge(&g).unwrap().is_zero());
        let ji = i.scale(&jay());
        assert_eq!(ji.star_wedge(&j).unwrap(), k.scale(&jay()));
    }

    #[test]
    fn scalar_products() {
        let (i, j) = (SliceFn::i(Product), SliceFn::j(Product));
        assert_eq!(i.star_scalar(&i).unwrap(), sc(1));
        assert_eq!(i.star_scalar(&j).unwrap(), sc(0));
        let ji = i.scale(&jay());
        assert_eq!(ji.star_scalar(&ji).unwrap(), sc(-1));
    }

    #[test]
    fn basic_idempotents() {
        let lp = ell(IdemSign::Plus, QuatConst::i());
        let lm = ell(IdemSign::Minus, QuatConst::i());
        assert!((&lp * &lm).is_zero());
        assert_eq!(lp.conjugate(), lm);
        assert!(lp.symmetrized().is_zero());
        assert!(lp.is_zero_divisor());
        assert!(lp.is_idempotent());
        assert!(ell(IdemSign::Minus, QuatConst::j()).is_idempotent());
        let half = ScalarElem::from_ratio(1, 2, Product);
        assert_eq!(lp.coords()[0], half);
        assert_eq!(lp.coords()[1], -(&half * &jay()));
        let lk = ell(IdemSign::Plus, QuatConst::k());
        assert_eq!(lk.coords()[3], -(&half * &jay()));
        assert_eq!(
            SliceFn::basic_idempotent(IdemSign::Plus, &QuatConst::i(), Slice),
            Err(AlgebraError::SliceModeZeroDivisor)
        );
        assert_eq!(
            SliceFn::basic_idempotent(IdemSign::Plus, &QuatConst::from_ints([0, 1, 1, 0]), Product),
            Err(AlgebraError::NotUnitImaginary)
        );
    }

    #[test]
    fn conjugate_symmetrize_inverse() {
        assert_eq!(SliceFn::i(Product).conjugate(), -SliceFn::i(Product));
        let f = &(&SliceFn::one(Product) + &SliceFn::i(Product).scale(&jay())) + &SliceFn::j(Product);
        let fc = &(&SliceFn::one(Product) - &SliceFn::i(Product).scale(&jay())) - &SliceFn::j(Product);
        assert_eq!(f.conjugate(), fc);
        let g = SliceFn::from_ints([1, 2, 0, 0], Product);
        assert_eq!(g.symmetrized(), sc(5));
        assert_eq!(SliceFn::i(Product).scale(&jay()).symmetrized(), sc(-1));
        assert_eq!(SliceFn::i(Product).star_inverse().unwrap(), -SliceFn::i(Product));
        let inv = SliceFn::from_ints([1, -2, 0, 0], Product).scale(&ScalarElem::from_ratio(1, 5, Product));
        assert_eq!(g.star_inverse().unwrap(), inv);
        assert!(matches!(
            ell(IdemSign::Plus, QuatConst::i()).star_inverse(),
            Err(AlgebraError::ZeroDivisor(_))
        ));
        assert!(!g.is_zero_divisor());
    }

    #[test]
    fn idempotent_examples() {
        assert!(SliceFn::one(Slice).is_idempotent());
        assert!(SliceFn::zero(Slice).is_idempotent());
        assert!(!SliceFn::i(Slice).is_idempotent());
    }

    #[test]
    fn probe_directions() {
        let f = &SliceFn::j(Product) - &SliceFn::k(Product).scale(&jay());
        assert_eq!(f.find_probe_direction().unwrap(), QuatConst::j());
        assert_eq!(SliceFn::from_ints([1, 1, 0, 0], Product).find_probe_direction().unwrap(), QuatConst::one());
        assert_eq!(SliceFn::k(Product).scale(&jay()).find_probe_direction().unwrap(), QuatConst::k());
        assert_eq!(SliceFn::zero(Product).find_probe_direction(), Err(AlgebraError::ZeroFunction));
    }

    #[test]
    fn decompositions() {
        let lp = ell(IdemSign::Plus, QuatConst::i());
        let d = lp.zero_divisor_decompose(DecompSide::RightIdem).unwrap();
        assert!(d.scale.is_one());
        assert_eq!(d.unit, QuatConst::one());
        assert_eq!(d.idem, lp);

        // j − 𝒥k: δ = j, (f j)₀ = −1, scale −2, σ = ℓ^{+,i}
        let f = &SliceFn::j(Product) - &SliceFn::k(Product).scale(&jay());
        let d = f.zero_divisor_decompose(DecompSide::RightIdem).unwrap();
        assert_eq!(d.unit, QuatConst::j());
        assert_eq!(d.scale, sc(-2));
        assert_eq!(d.idem, lp);
        assert_eq!(d.reassemble(), f);
        let d = f.zero_divisor_decompose(DecompSide::LeftIdem).unwrap();
        assert_eq!(d.reassemble(), f);
        assert!(d.idem.is_idempotent());

        let f = ell(IdemSign::Minus, QuatConst::k()).scale(&sc(3));
        let d = f.zero_divisor_decompose(DecompSide::RightIdem).unwrap();
        assert_eq!(d.scale, sc(3));
        assert_eq!(d.idem, ell(IdemSign::Minus, QuatConst::k()));

        assert!(matches!(
            SliceFn::from_ints([1, 2, 0, 0], Product).zero_divisor_decompose(DecompSide::RightIdem),
            Err(AlgebraError::NotAZeroDivisor(_))
        ));
    }

    #[test]
    fn mode_mismatch() {
        assert_eq!(
            SliceFn::i(Slice).try_star(&SliceFn::i(Product)),
            Err(AlgebraError::ModeMismatch)
        );
        assert!(SliceFn::new([sc(1), ScalarElem::one(Slice), sc(0), sc(0)]).is_err());
    }
}
