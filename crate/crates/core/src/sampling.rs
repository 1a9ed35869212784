//! Seeded random generation of scalars, functions and Sylvester pairs of a
//! prescribed rank, for tests and fuzz campaigns.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{IdemSign, QuatConst, SliceFn};
use crate::scalar::{DomainMode, Poly, RatFun, ScalarElem};
use crate::sylvester::{det_closed, Rank3Subcase};

/// Denominators of random rational functions, lowest degree first.
pub const DENOMINATORS: [&[i64]; 6] = [&[1], &[0, 1], &[1, 1], &[-1, 1], &[1, 0, 1], &[-2, 1]];

/// Deterministic generator for one domain mode.
pub struct Sampler {
    rng: ChaCha8Rng,
    mode: DomainMode,
    max_deg: usize,
}

impl Sampler {
    /// Coordinates of degree at most 3.
    pub fn new(seed: u64, mode: DomainMode) -> Self {
        Self::with_degree(seed, mode, 3)
    }

    pub fn with_degree(seed: u64, mode: DomainMode, max_deg: usize) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), mode, max_deg }
    }

    pub fn mode(&self) -> DomainMode {
        self.mode
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    /// `n/d` with `|n| ≤ 5`, `1 ≤ d ≤ 3`.
    pub fn rational(&mut self) -> BigRational {
        let n = self.int(-5, 5);
        let d = self.int(1, 3);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn nonzero_rational(&mut self) -> BigRational {
        loop {
            let r = self.rational();
            if r != BigRational::from_integer(0.into()) {
                return r;
            }
        }
    }

    pub fn poly(&mut self, deg: usize) -> Poly<BigRational> {
        Poly::new((0..=deg).map(|_| self.rational()).collect())
    }

    /// Numerator of degree at most the bound over a denominator from
    /// [`DENOMINATORS`], which keeps exact elimination on random pairs cheap.
    pub fn ratfun(&mut self) -> RatFun {
        let nd = self.int(0, self.max_deg as i64) as usize;
        let num = self.poly(nd);
        let den = if self.max_deg == 0 || self.coin(0.5) {
            &DENOMINATORS[0]
        } else {
            &DENOMINATORS[self.int(1, DENOMINATORS.len() as i64 - 1) as usize]
        };
        let den = Poly::new(den.iter().map(|&c| BigRational::from_integer(c.into())).collect());
        RatFun::new(num, den).expect("nonzero denominator")
    }

    /// `a + b𝒥`; `b = 0` in slice mode and with probability one half otherwise.
    pub fn scalar(&mut self) -> ScalarElem {
        let a = self.ratfun();
        if self.mode == DomainMode::Product && self.coin(0.5) {
            let b = self.ratfun();
            ScalarElem::from_parts(&a, &b, self.mode).expect("product mode")
        } else {
            ScalarElem::from_ratfun(&a, self.mode)
        }
    }

    pub fn nonzero_scalar(&mut self) -> ScalarElem {
        loop {
            let s = self.scalar();
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Each coordinate is zero with probability one fifth.
    pub fn slicefn(&mut self) -> SliceFn {
        let c = std::array::from_fn(|_| {
            if self.coin(0.2) {
                ScalarElem::zero(self.mode)
            } else {
                self.scalar()
            }
        });
        SliceFn::from_coords(c)
    }

    pub fn noncentral(&mut self) -> SliceFn {
        loop {
            let f = self.slicefn();
            if !f.is_central() {
                return f;
            }
        }
    }

    pub fn invertible(&mut self) -> SliceFn {
        loop {
            let f = self.slicefn();
            if f.is_invertible() {
                return f;
            }
        }
    }

    /// A small invertible constant, `𝒥`-twisted in product mode, used to
    /// conjugate without inflating degrees.
    pub fn small_invertible(&mut self) -> SliceFn {
        loop {
            let c = std::array::from_fn(|_| {
                let q = ScalarElem::from_i64(self.int(-2, 2), self.mode);
                if self.mode == DomainMode::Product && self.coin(0.3) {
                    let t = ScalarElem::from_i64(self.int(-1, 1), self.mode);
                    q + t * ScalarElem::j(self.mode).expect("product mode")
                } else {
                    q
                }
            });
            let h = SliceFn::from_coords(c);
            if h.is_invertible() {
                return h;
            }
        }
    }

    /// `h^{-*}*f*h` for a random small invertible `h`.
    pub fn conjugate_of(&mut self, f: &SliceFn) -> SliceFn {
        let h = self.small_invertible();
        &(&h.star_inverse().expect("invertible") * f) * &h
    }

    /// A random idempotent `h*ℓ^{+,I}*h^{-*}`; product mode only.
    pub fn idempotent(&mut self) -> SliceFn {
        let axis = self.int(1, 3) as usize;
        let mut unit = QuatConst::basis(axis);
        if self.coin(0.5) {
            unit = -&unit;
        }
        let l = SliceFn::basic_idempotent(IdemSign::Plus, &unit, self.mode).expect("product mode");
        self.conjugate_of(&l)
    }

    /// A random zero divisor `s·σ*δ` with `s` scalar and `δ` a unit constant;
    /// product mode only.
    pub fn zero_divisor(&mut self) -> SliceFn {
        let sigma = self.idempotent();
        let s = self.nonzero_scalar();
        let d = QuatConst::basis(self.int(0, 3) as usize).to_slicefn(self.mode);
        (&sigma * &d).scale(&s)
    }

    /// A non-central pair with invertible Sylvester operator.
    pub fn rank4_pair(&mut self) -> (SliceFn, SliceFn) {
        loop {
            let (f, g) = (self.noncentral(), self.noncentral());
            if !det_closed(&f, &g).is_zero() {
                return (f, g);
            }
        }
    }

    /// A pair with `f ≃ −g`, so that `S_{f,g}` has rank 2.
    pub fn rank2_pair(&mut self) -> (SliceFn, SliceFn) {
        let f = if self.mode == DomainMode::Product && self.coin(0.25) {
            let s = SliceFn::from_scalar(self.scalar());
            &s + &self.idempotent()
        } else {
            self.noncentral()
        };
        let g = -self.conjugate_of(&f);
        (f, g)
    }

    /// A rank-3 pair of the requested subcase; product mode only.
    pub fn rank3_pair(&mut self, subcase: Rank3Subcase) -> (SliceFn, SliceFn) {
        let mode = self.mode;
        let jay = ScalarElem::j(mode).expect("rank 3 needs product mode");
        let half = ScalarElem::from_ratio(1, 2, mode);
        let c = ScalarElem::from_rational(self.nonzero_rational(), mode)
            + if self.coin(0.5) { ScalarElem::x(mode) } else { ScalarElem::zero(mode) };
        let i = SliceFn::i(mode);
        let nilpotent = &SliceFn::i(mode) + &SliceFn::j(mode).scale(&jay);
        let sign = |s: &mut Self| if s.coin(0.5) { ScalarElem::one(mode) } else { -ScalarElem::one(mode) };
        let (fv, gv) = match subcase {
            Subcase::AlgMult1 => loop {
                let tau = ScalarElem::from_rational(self.rational(), mode)
                    + if self.coin(0.5) { ScalarElem::x(mode) } else { ScalarElem::zero(mode) };
                let a = &jay * &(&tau - &half) * sign(self);
                let b = &jay * &(&tau + &half) * sign(self);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let fv = self.conjugate_of(&i.scale(&(&a * &c)));
                let gv = self.conjugate_of(&i.scale(&(&b * &c)));
                break (fv, gv);
            },
            Subcase::GvNull => {
                let fv = self.conjugate_of(&i.scale(&(&jay * &c)));
                let s = self.nonzero_scalar();
                (fv, self.conjugate_of(&nilpotent.scale(&s)))
            }
            Subcase::FvNull => {
                let gv = self.conjugate_of(&i.scale(&(&jay * &c)));
                let s = self.nonzero_scalar();
                (self.conjugate_of(&nilpotent.scale(&s)), gv)
            }
        };
        let f0 = self.scalar();
        let g0 = &c - &f0;
        (&SliceFn::from_scalar(f0) + &fv, &SliceFn::from_scalar(g0) + &gv)
    }
}

use Rank3Subcase as Subcase;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sylvester::{branch_of, Branch};

    #[test]
    fn constructed_pairs_land_in_their_branch() {
        let mut s = Sampler::new(7, DomainMode::Product);
        for _ in 0..5 {
            let (f, g) = s.rank2_pair();
            assert_eq!(branch_of(&f, &g), Branch::Rank2);
            for sub in [Subcase::AlgMult1, Subcase::GvNull, Subcase::FvNull] {
                let (f, g) = s.rank3_pair(sub);
                assert_eq!(branch_of(&f, &g), Branch::Rank3);
            }
            let (f, g) = s.rank4_pair();
            assert_eq!(branch_of(&f, &g), Branch::Rank4);
            assert!(s.idempotent().is_idempotent());
            assert!(s.zero_divisor().is_zero_divisor());
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = Sampler::new(42, DomainMode::Slice).slicefn();
        let b = Sampler::new(42, DomainMode::Slice).slicefn();
        assert_eq!(a, b);
    }
}
