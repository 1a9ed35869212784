//! Modular polynomial gcd: images modulo word-size primes `p ≡ 1 mod 4`,
//! Chinese remaindering and rational reconstruction. Every candidate is
//! confirmed by exact trial division, so results are exact; `None` means the
//! caller should fall back to Euclid.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::coeff::Coeff;
use super::poly::Poly;

/// A prime with a fixed square root of `−1`.
#[derive(Clone, Copy, Debug)]
pub struct Prime {
    pub p: u64,
    pub i: u64,
}

impl Prime {
    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.p - b)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    /// Same prime with `i` sent to the other square root of `−1`.
    fn conjugate(&self) -> Prime {
        Prime { p: self.p, i: self.p - self.i }
    }

    fn reduce_int(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64_digits().1.first().copied().unwrap_or(0)
    }

    /// `None` when the denominator vanishes modulo `p`.
    pub fn reduce_rational(&self, q: &BigRational) -> Option<u64> {
        let d = self.reduce_int(q.denom());
        (d != 0).then(|| self.mul(self.reduce_int(q.numer()), self.inv(d)))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let ctx = Prime { p: n, i: 0 };
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = ctx.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ctx.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes `≡ 1 mod 4` just below `2^62`, largest first.
pub(crate) fn primes() -> &'static [Prime] {
    static PRIMES: OnceLock<Vec<Prime>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::new();
        let mut n = (1u64 << 62) - 3;
        while out.len() < 256 {
            if is_prime(n) {
                let ctx = Prime { p: n, i: 0 };
                let c = (2..).find(|&c| ctx.pow(c, (n - 1) / 2) == n - 1).expect("non-residue");
                out.push(Prime { p: n, i: ctx.pow(c, (n - 1) / 4) });
            }
            n -= 4;
        }
        out
    })
}

/// Image in `𝔽_p[x]`, `None` when a coefficient fails to reduce or the
/// leading coefficient vanishes.
fn image<C: Coeff>(a: &Poly<C>, pr: &Prime) -> Option<Vec<u64>> {
    let v = a.coeffs().iter().map(|c| c.reduce_mod(pr)).collect::<Option<Vec<_>>>()?;
    (v.last() != Some(&0)).then_some(v)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd in `𝔽_p[x]`.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, pr: &Prime) -> Vec<u64> {
    while !b.is_empty() {
        let inv = pr.inv(*b.last().expect("nonzero"));
        let dn = b.len();
        while a.len() >= dn {
            let c = pr.mul(*a.last().expect("nonzero"), inv);
            let off = a.len() - dn;
            for (i, bi) in b.iter().enumerate() {
                a[off + i] = pr.sub(a[off + i], pr.mul(c, *bi));
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    let inv = pr.inv(*a.last().expect("nonzero gcd"));
    a.iter().map(|&c| pr.mul(c, inv)).collect()
}

/// `r/s ≡ u mod m` with `|r|, s ≤ √(m/2)`.
fn rational_reconstruct(u: &BigInt, m: &BigInt, bound: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Accumulated residues of one coefficient part.
struct Crt {
    residues: Vec<BigInt>,
}

impl Crt {
    fn combine(&mut self, m: &BigInt, p: u64, new: &[u64]) {
        let pb = BigInt::from(p);
        let m_inv = BigInt::from(Prime { p, i: 0 }.inv(Prime { p, i: 0 }.reduce_int(m)));
        for (r, &v) in self.residues.iter_mut().zip(new) {
            // r + m·((v − r)·m⁻¹ mod p)
            let t = ((BigInt::from(v) - &*r) * &m_inv).mod_floor(&pb);
            *r += m * t;
        }
    }
}

/// Monic gcd of two nonconstant polynomials, or `None` when the modular
/// method gives up.
pub(crate) fn modular_gcd<C: Coeff>(a: &Poly<C>, b: &Poly<C>) -> Option<Poly<C>> {
    const MAX_PRIMES: usize = 256;
    let mut degree: Option<usize> = None;
    let mut modulus = BigInt::one();
    let mut re = Crt { residues: Vec::new() };
    let mut im = Crt { residues: Vec::new() };
    let mut last: Option<Vec<C>> = None;
    for pr in primes().iter().take(MAX_PRIMES) {
        let conj = pr.conjugate();
        let (Some(a1), Some(b1)) = (image(a, pr), image(b, pr)) else {
            continue;
        };
        let g1 = gcd_mod(a1, b1, pr);
        if g1.len() == 1 {
            return Some(Poly::one());
        }
        let g2 = if C::GAUSSIAN {
            let (Some(a2), Some(b2)) = (image(a, &conj), image(b, &conj)) else {
                continue;
            };
            let g2 = gcd_mod(a2, b2, &conj);
            if g2.len() != g1.len() {
                continue;
            }
            g2
        } else {
            g1.clone()
        };
        let d = g1.len() - 1;
        match degree {
            Some(cur) if d > cur => continue,
            Some(cur) if d == cur => {}
            _ => {
                degree = Some(d);
                modulus = BigInt::one();
                re.residues = vec![BigInt::zero(); d + 1];
                im.residues = vec![BigInt::zero(); d + 1];
                last = None;
            }
        }
        // g1 = A + B·i, g2 = A − B·i coefficientwise
        let half = pr.inv(2);
        let inv_2i = pr.inv(pr.mul(2, pr.i));
        let a_part: Vec<u64> = g1.iter().zip(&g2).map(|(&x, &y)| pr.mul(pr.add(x, y), half)).collect();
        let b_part: Vec<u64> = g1.iter().zip(&g2).map(|(&x, &y)| pr.mul(pr.sub(x, y), inv_2i)).collect();
        re.combine(&modulus, pr.p, &a_part);
        im.combine(&modulus, pr.p, &b_part);
        modulus *= pr.p;
        let bound = (&modulus / 2u32).sqrt();
        let candidate: Option<Vec<C>> = re
            .residues
            .iter()
            .zip(&im.residues)
            .map(|(x, y)| {
                let a = rational_reconstruct(x, &modulus, &bound)?;
                let b = rational_reconstruct(y, &modulus, &bound)?;
                C::from_gauss_parts(a, b)
            })
            .collect();
        let Some(candidate) = candidate else {
            last = None;
            continue;
        };
        if last.as_ref() == Some(&candidate) {
            let g = Poly::new(candidate.clone());
            if a.divrem(&g).1.is_zero() && b.divrem(&g).1.is_zero() {
                return Some(g);
            }
        }
        last = Some(candidate);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn primes_are_valid() {
        for pr in &primes()[..8] {
            assert!(is_prime(pr.p));
            assert_eq!(pr.p % 4, 1);
            assert_eq!(pr.mul(pr.i, pr.i), pr.p - 1);
        }
        assert!(!is_prime(4611686018427387903));
    }

    #[test]
    fn reconstruction() {
        let pr = primes()[0];
        let m = BigInt::from(pr.p);
        let bound = (&m / 2u32).sqrt();
        let u = BigInt::from(pr.mul(pr.p - 7, pr.inv(13)));
        assert_eq!(rational_reconstruct(&u, &m, &bound), Some(q(-7, 13)));
    }

    #[test]
    fn gaussian_gcd_matches_euclid() {
        let g = |re: i64, im: i64| GaussRat::new(q(re, 1), q(im, 3));
        // (x + i/3)(x − 2) and (x + i/3)(x² + 5)
        let common = Poly::new(vec![g(0, 1), g(1, 0)]);
        let a = common.mul(&Poly::new(vec![g(-2, 0), g(1, 0)]));
        let b = common.mul(&Poly::new(vec![g(5, 0), g(0, 0), g(1, 0)]));
        assert_eq!(modular_gcd(&a, &b), Some(common));
    }
}
