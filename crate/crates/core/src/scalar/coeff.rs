//! Coefficient fields for the polynomial layer: the rationals and the
//! Gaussian rationals `ℚ(i)`.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::modular::Prime;

/// Exact field operations needed by [`Poly`](super::poly::Poly).
pub trait Coeff: Clone + Eq + Hash + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn recip(&self) -> Self;
    fn from_rational(q: BigRational) -> Self;
    /// Whether the field contains `i`.
    const GAUSSIAN: bool;
    /// Image in `𝔽_p` with `i` sent to the prime's square root of `−1`;
    /// `None` when a denominator vanishes there.
    fn reduce_mod(&self, p: &Prime) -> Option<u64>;
    /// `re + im·i`, if it lies in the field.
    fn from_gauss_parts(re: BigRational, im: BigRational) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Coefficients of the product of two nonempty coefficient vectors.
    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        let mut out = vec![Self::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].plus(&x.times(y));
            }
        }
        out
    }

    /// Quotient and remainder of `a` by `d`, where `d` has a nonzero leading
    /// coefficient and `a` is at least as long as `d`.
    fn divrem_coeffs(a: &[Self], d: &[Self]) -> (Vec<Self>, Vec<Self>) {
        schoolbook_divrem(a, d)
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Self {
        assert!(!Zero::is_zero(self), "reciprocal of zero rational");
        BigRational::recip(self)
    }
    fn from_rational(q: BigRational) -> Self {
        q
    }
    const GAUSSIAN: bool = false;
    fn reduce_mod(&self, p: &Prime) -> Option<u64> {
        p.reduce_rational(self)
    }
    fn from_gauss_parts(re: BigRational, im: BigRational) -> Option<Self> {
        Zero::is_zero(&im).then_some(re)
    }
    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        let (na, da) = clear_denominators(a.iter());
        let (nb, db) = clear_denominators(b.iter());
        let d = da * db;
        int_convolve(&na, &nb).into_iter().map(|n| BigRational::new(n, d.clone())).collect()
    }
    fn divrem_coeffs(a: &[Self], d: &[Self]) -> (Vec<Self>, Vec<Self>) {
        let (q, r) = gauss_divrem(GaussInts::real(a.iter()), GaussInts::real(d.iter()));
        (q.into_iter().map(|(re, _)| re).collect(), r.into_iter().map(|(re, _)| re).collect())
    }
}

/// A Gaussian rational `re + im·i`. Inside a scalar the unit `i` stands for
/// the slice-constant function 𝒥.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat { re, im: Zero::zero() }
    }

    pub fn unit_i() -> Self {
        GaussRat { re: Zero::zero(), im: One::one() }
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -&self.im }
    }

    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }

    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Coeff for GaussRat {
    fn zero() -> Self {
        GaussRat { re: Zero::zero(), im: Zero::zero() }
    }
    fn one() -> Self {
        GaussRat { re: One::one(), im: Zero::zero() }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn plus(&self, other: &Self) -> Self {
        GaussRat { re: &self.re + &other.re, im: &self.im + &other.im }
    }
    fn minus(&self, other: &Self) -> Self {
        GaussRat { re: &self.re - &other.re, im: &self.im - &other.im }
    }
    fn times(&self, other: &Self) -> Self {
        if Zero::is_zero(&self.im) && Zero::is_zero(&other.im) {
            return GaussRat::real(&self.re * &other.re);
        }
        GaussRat {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }
    fn negated(&self) -> Self {
        GaussRat { re: -&self.re, im: -&self.im }
    }
    fn recip(&self) -> Self {
        assert!(!Coeff::is_zero(self), "reciprocal of zero Gaussian rational");
        if Zero::is_zero(&self.im) {
            return GaussRat::real(self.re.recip());
        }
        let n = self.norm_sq();
        GaussRat { re: &self.re / &n, im: -(&self.im / &n) }
    }
    fn from_rational(q: BigRational) -> Self {
        GaussRat::real(q)
    }
    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        let (ra, da) = clear_denominators(a.iter().flat_map(|c| [&c.re, &c.im]));
        let (rb, db) = clear_denominators(b.iter().flat_map(|c| [&c.re, &c.im]));
        let d = da * db;
        let split = |v: &[BigInt]| -> (Vec<BigInt>, Vec<BigInt>) {
            (v.iter().step_by(2).cloned().collect(), v.iter().skip(1).step_by(2).cloned().collect())
        };
        let (ar, ai) = split(&ra);
        let (br, bi) = split(&rb);
        let all_real = ai.iter().chain(&bi).all(Zero::is_zero);
        let rr = int_convolve(&ar, &br);
        if all_real {
            return rr.into_iter().map(|n| GaussRat::real(BigRational::new(n, d.clone()))).collect();
        }
        let ii = int_convolve(&ai, &bi);
        let ri = int_convolve(&ar, &bi);
        let ir = int_convolve(&ai, &br);
        (0..rr.len())
            .map(|k| {
                GaussRat::new(
                    BigRational::new(&rr[k] - &ii[k], d.clone()),
                    BigRational::new(&ri[k] + &ir[k], d.clone()),
                )
            })
            .collect()
    }
    fn divrem_coeffs(a: &[Self], d: &[Self]) -> (Vec<Self>, Vec<Self>) {
        let (q, r) = gauss_divrem(GaussInts::of(a), GaussInts::of(d));
        let wrap = |v: Vec<(BigRational, BigRational)>| v.into_iter().map(|(re, im)| GaussRat::new(re, im)).collect();
        (wrap(q), wrap(r))
    }
    const GAUSSIAN: bool = true;
    fn reduce_mod(&self, p: &Prime) -> Option<u64> {
        let re = p.reduce_rational(&self.re)?;
        let im = p.reduce_rational(&self.im)?;
        Some(p.add(re, p.mul(im, p.i)))
    }
    fn from_gauss_parts(re: BigRational, im: BigRational) -> Option<Self> {
        Some(GaussRat { re, im })
    }
}

/// Integer numerators over a common denominator.
fn clear_denominators<'a>(qs: impl Iterator<Item = &'a BigRational> + Clone) -> (Vec<BigInt>, BigInt) {
    let d = qs.clone().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let nums = qs.map(|q| q.numer() * (&d / q.denom())).collect();
    (nums, d)
}

fn schoolbook_divrem<C: Coeff>(a: &[C], d: &[C]) -> (Vec<C>, Vec<C>) {
    let dn = d.len();
    let inv_lead = d[dn - 1].recip();
    let mut r = a.to_vec();
    let mut q = vec![C::zero(); r.len() - dn + 1];
    for k in (0..q.len()).rev() {
        let c = r[k + dn - 1].times(&inv_lead);
        if c.is_zero() {
            continue;
        }
        for (i, di) in d.iter().enumerate() {
            r[k + i] = r[k + i].minus(&c.times(di));
        }
        q[k] = c;
    }
    r.truncate(dn - 1);
    (q, r)
}

/// Gaussian rationals `(re + im·i)/den` over a common integer denominator.
struct GaussInts {
    re: Vec<BigInt>,
    im: Vec<BigInt>,
    den: BigInt,
    real: bool,
}

impl GaussInts {
    fn real<'a>(qs: impl Iterator<Item = &'a BigRational> + Clone) -> Self {
        let (re, den) = clear_denominators(qs);
        let im = vec![BigInt::zero(); re.len()];
        GaussInts { re, im, den, real: true }
    }

    fn of(cs: &[GaussRat]) -> Self {
        let (v, den) = clear_denominators(cs.iter().flat_map(|c| [&c.re, &c.im]));
        let re: Vec<BigInt> = v.iter().step_by(2).cloned().collect();
        let im: Vec<BigInt> = v.iter().skip(1).step_by(2).cloned().collect();
        let real = im.iter().all(Zero::is_zero);
        GaussInts { re, im, den, real }
    }
}

type GaussPair = (BigRational, BigRational);

/// Pseudo-division over the Gaussian integers. Each step scales the running
/// remainder by the leading coefficient's norm (or by the leading coefficient
/// itself when it is real), so every output coefficient is normalized once.
fn gauss_divrem(a: GaussInts, d: GaussInts) -> (Vec<GaussPair>, Vec<GaussPair>) {
    let real = a.real && d.real;
    let dn = d.re.len();
    let (lr, li) = (&d.re[dn - 1], &d.im[dn - 1]);
    let (mult, conj) = if li.is_zero() {
        (lr.clone(), None)
    } else {
        (lr * lr + li * li, Some((lr.clone(), -li)))
    };
    let (mut rr, mut ri, mut den) = (a.re, a.im, a.den);
    let zero = || <BigRational as Zero>::zero();
    let mut q = vec![(zero(), zero()); rr.len() - dn + 1];
    for k in (0..q.len()).rev() {
        let top = k + dn - 1;
        if rr[top].is_zero() && ri[top].is_zero() {
            continue;
        }
        let (tr, ti) = match &conj {
            None => (std::mem::take(&mut rr[top]), std::mem::take(&mut ri[top])),
            Some((cr, ci)) => {
                let (tr, ti) = (&rr[top], &ri[top]);
                (tr * cr - ti * ci, tr * ci + ti * cr)
            }
        };
        let qden = &den * &mult;
        q[k] = (BigRational::new(&tr * &d.den, qden.clone()), BigRational::new(&ti * &d.den, qden.clone()));
        if !mult.is_one() {
            for j in 0..top {
                rr[j] *= &mult;
                if !real {
                    ri[j] *= &mult;
                }
            }
        }
        for i in 0..dn - 1 {
            rr[k + i] -= &tr * &d.re[i];
            if !real {
                rr[k + i] += &ti * &d.im[i];
                ri[k + i] -= &tr * &d.im[i] + &ti * &d.re[i];
            }
        }
        rr[top] = BigInt::zero();
        ri[top] = BigInt::zero();
        den = qden;
    }
    let r = (0..dn - 1)
        .map(|j| (BigRational::new(rr[j].clone(), den.clone()), BigRational::new(ri[j].clone(), den.clone())))
        .collect();
    (q, r)
}

fn int_convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

/// Exact square root in `ℚ(i)`, if one exists.
pub fn gauss_sqrt(c: &GaussRat) -> Option<GaussRat> {
    if Zero::is_zero(&c.im) {
        if !c.re.is_negative() {
            return rational_sqrt(&c.re).map(GaussRat::real);
        }
        return rational_sqrt(&-&c.re).map(|r| GaussRat::new(Zero::zero(), r));
    }
    // (p + qi)^2 = u + vi  =>  p^2 = (u + |c|)/2, q = v / 2p
    let modulus = rational_sqrt(&c.norm_sq())?;
    let two = BigRational::from_integer(BigInt::from(2));
    let p = rational_sqrt(&((&c.re + &modulus) / &two))?;
    if Zero::is_zero(&p) {
        return None;
    }
    let q = &c.im / (&two * &p);
    let root = GaussRat::new(p, q);
    (root.times(&root) == *c).then_some(root)
}

pub(crate) fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn pseudo_division_matches_schoolbook() {
        let g = |re: i64, im: i64, d: i64| GaussRat::new(q(re, d), q(im, d + 1));
        let a = vec![g(3, -1, 2), g(0, 4, 1), g(-5, 0, 3), g(1, 2, 5), g(7, -3, 2)];
        for d in [vec![g(1, 0, 1), g(2, 0, 3)], vec![g(-1, 1, 2), g(0, 2, 1), g(3, 5, 4)], vec![g(2, -1, 3)]] {
            assert_eq!(GaussRat::divrem_coeffs(&a, &d), schoolbook_divrem(&a, &d));
            let ar: Vec<BigRational> = a.iter().map(|c| c.re.clone()).collect();
            let dr: Vec<BigRational> = d.iter().map(|c| c.re.clone()).collect();
            if !Zero::is_zero(dr.last().unwrap()) {
                assert_eq!(BigRational::divrem_coeffs(&ar, &dr), schoolbook_divrem(&ar, &dr));
            }
        }
    }

    #[test]
    fn rational_roots() {
        assert_eq!(rational_sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(rational_sqrt(&q(2, 1)), None);
        assert_eq!(rational_sqrt(&q(-1, 1)), None);
        assert_eq!(rational_sqrt(&q(0, 1)), Some(q(0, 1)));
    }

    #[test]
    fn gaussian_roots() {
        let minus_one = GaussRat::real(q(-1, 1));
        let r = gauss_sqrt(&minus_one).unwrap();
        assert_eq!(r.times(&r), minus_one);
        // (1 + 2i)^2 = -3 + 4i
        let c = GaussRat::new(q(-3, 1), q(4, 1));
        let r = gauss_sqrt(&c).unwrap();
        assert_eq!(r.times(&r), c);
        // 2i = (1 + i)^2
        let c = GaussRat::new(q(0, 1), q(2, 1));
        assert_eq!(gauss_sqrt(&c), Some(GaussRat::new(q(1, 1), q(1, 1))));
        assert_eq!(gauss_sqrt(&GaussRat::real(q(2, 1))), None);
        assert_eq!(gauss_sqrt(&GaussRat::new(q(1, 1), q(1, 1))), None);
    }

    #[test]
    fn reduction_respects_i() {
        let p = &super::super::modular::primes()[0];
        let i = GaussRat::unit_i();
        assert_eq!(i.times(&i).reduce_mod(p), GaussRat::real(q(-1, 1)).reduce_mod(p));
        assert_eq!(q(1, 2).reduce_mod(p).map(|h| p.mul(h, 2)), Some(1));
    }

    #[test]
    fn gauss_inverse() {
        let c = GaussRat::new(q(1, 1), q(1, 1));
        assert!(c.times(&c.recip()).is_one());
    }
}
