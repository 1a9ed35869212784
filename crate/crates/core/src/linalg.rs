//! 4×4 linear algebra over the scalar field: the representations `ι_L`,
//! `ι_R`, exact elimination and characteristic polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::algebra::SliceFn;
use crate::error::{AlgebraError, Result};
use crate::scalar::{DomainMode, GaussRat, Poly, RatFn, ScalarElem};

/// Coordinates `F_𝓑(f)` of a slice function in the basis `(1, i, j, k)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldVec4(pub [ScalarElem; 4]);

impl FieldVec4 {
    pub fn zero(mode: DomainMode) -> Self {
        FieldVec4(std::array::from_fn(|_| ScalarElem::zero(mode)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(ScalarElem::is_zero)
    }

    pub fn scale(&self, s: &ScalarElem) -> Self {
        FieldVec4(std::array::from_fn(|n| s * &self.0[n]))
    }

    pub fn to_slicefn(&self) -> SliceFn {
        SliceFn::from_coords(self.0.clone())
    }
}

impl From<&SliceFn> for FieldVec4 {
    fn from(f: &SliceFn) -> Self {
        FieldVec4(f.coords().clone())
    }
}

impl From<&FieldVec4> for SliceFn {
    fn from(v: &FieldVec4) -> Self {
        v.to_slicefn()
    }
}

/// A 4×4 matrix of scalars, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldMat4 {
    pub rows: [[ScalarElem; 4]; 4],
}

/// `ι_L(f)`: `F_𝓑(f*g) = ι_L(f) F_𝓑(g)`.
pub fn iota_l(f: &SliceFn) -> FieldMat4 {
    let [f0, f1, f2, f3] = f.coords().clone();
    FieldMat4 {
        rows: [
            [f0.clone(), -&f1, -&f2, -&f3],
            [f1.clone(), f0.clone(), -&f3, f2.clone()],
            [f2.clone(), f3.clone(), f0.clone(), -&f1],
            [f3.clone(), -&f2, f1.clone(), f0.clone()],
        ],
    }
}

/// `ι_R(g)`: `F_𝓑(f*g) = ι_R(g) F_𝓑(f)`.
pub fn iota_r(g: &SliceFn) -> FieldMat4 {
    let [g0, g1, g2, g3] = g.coords().clone();
    FieldMat4 {
        rows: [
            [g0.clone(), -&g1, -&g2, -&g3],
            [g1.clone(), g0.clone(), g3.clone(), -&g2],
            [g2.clone(), -&g3, g0.clone(), g1.clone()],
            [g3.clone(), g2.clone(), -&g1, g0.clone()],
        ],
    }
}

/// `Σₙ ι_L(fₙ) ι_R(gₙ)`, the matrix of `χ ↦ Σ fₙ*χ*gₙ`.
pub fn assemble_lfg(fs: &[SliceFn], gs: &[SliceFn]) -> Result<FieldMat4> {
    if fs.len() != gs.len() {
        return Err(AlgebraError::LengthMismatch(fs.len(), gs.len()));
    }
    let first = fs.first().ok_or(AlgebraError::EmptyTuple)?;
    let mode = first.mode();
    let mut acc = FieldMat4::zero(mode);
    for (f, g) in fs.iter().zip(gs) {
        if f.is_zero() || g.is_zero() {
            return Err(AlgebraError::ZeroFunction);
        }
        if f.mode() != mode || g.mode() != mode {
            return Err(AlgebraError::ModeMismatch);
        }
        acc = &acc + &(&iota_l(f) * &iota_r(g));
    }
    Ok(acc)
}

type GPoly = Poly<GaussRat>;

/// Rows scaled to polynomial entries, brought to echelon form by
/// fraction-free (Bareiss) elimination. Every entry stays a minor of the
/// scaled matrix, so the divisions are exact and no gcd is ever taken.
struct Echelon {
    rows: Vec<Vec<GPoly>>,
    /// Factor each input row was multiplied by.
    multipliers: Vec<GPoly>,
    pivots: Vec<usize>,
    /// Parity of the row swaps.
    odd: bool,
}

impl Echelon {
    fn new(rows: &[Vec<ScalarElem>]) -> Self {
        let mut multipliers = Vec::with_capacity(rows.len());
        let mut m: Vec<Vec<GPoly>> = rows
            .iter()
            .map(|row| {
                let lcm = row.iter().fold(GPoly::one(), |l, e| {
                    let d = e.gauss().den();
                    l.mul(&d.div_exact(&l.gcd(d)))
                });
                let out = row.iter().map(|e| e.gauss().num().mul(&lcm.div_exact(e.gauss().den()))).collect();
                multipliers.push(lcm);
                out
            })
            .collect();
        let ncols = m.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut odd = false;
        let mut prev = GPoly::one();
        let mut r = 0;
        for col in 0..ncols {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            if p != r {
                m.swap(r, p);
                multipliers.swap(r, p);
                odd = !odd;
            }
            let piv = m[r][col].clone();
            for i in r + 1..m.len() {
                let a = m[i][col].clone();
                for c in col..ncols {
                    let t = piv.mul(&m[i][c]).sub(&a.mul(&m[r][c]));
                    m[i][c] = t.div_exact(&prev);
                }
            }
            prev = piv;
            pivots.push(col);
            r += 1;
        }
        Echelon { rows: m, multipliers, pivots, odd }
    }

    fn scalar_rows(&self, mode: DomainMode) -> Vec<Vec<ScalarElem>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| {
                        let v = RatFn::from_poly(p.clone());
                        ScalarElem::from_gauss(v, mode).expect("mode preserved")
                    })
                    .collect()
            })
            .collect()
    }
}

/// Reduced row echelon form of a dense matrix; returns the pivot columns.
fn rref(rows: &mut [Vec<ScalarElem>]) -> Vec<usize> {
    let Some(mode) = rows.first().and_then(|r| r.first()).map(ScalarElem::mode) else {
        return Vec::new();
    };
    let ech = Echelon::new(rows);
    let mut m = ech.scalar_rows(mode);
    // back substitution on the triangular form
    for (r, &col) in ech.pivots.iter().enumerate().rev() {
        let inv = m[r][col].invert().expect("nonzero pivot");
        for c in col..m[r].len() {
            m[r][c] = &m[r][c] * &inv;
        }
        for i in 0..r {
            if m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone();
            for c in col..m[i].len() {
                let t = &factor * &m[r][c];
                m[i][c] = &m[i][c] - &t;
            }
        }
    }
    for (dst, src) in rows.iter_mut().zip(m) {
        *dst = src;
    }
    ech.pivots
}

/// Rank of a family of coordinate vectors.
pub fn rank_of_vectors(vs: &[FieldVec4]) -> usize {
    let rows: Vec<Vec<ScalarElem>> = vs.iter().map(|v| v.0.to_vec()).collect();
    Echelon::new(&rows).pivots.len()
}

impl FieldMat4 {
    pub fn from_fn(f: impl Fn(usize, usize) -> ScalarElem) -> Self {
        FieldMat4 { rows: std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))) }
    }

    pub fn zero(mode: DomainMode) -> Self {
        Self::from_fn(|_, _| ScalarElem::zero(mode))
    }

    pub fn identity(mode: DomainMode) -> Self {
        Self::from_fn(|r, c| if r == c { ScalarElem::one(mode) } else { ScalarElem::zero(mode) })
    }

    pub fn mode(&self) -> DomainMode {
        self.rows[0][0].mode()
    }

    pub fn entry(&self, r: usize, c: usize) -> &ScalarElem {
        &self.rows[r][c]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self.rows[c][r].clone())
    }

    pub fn scale(&self, s: &ScalarElem) -> Self {
        Self::from_fn(|r, c| s * &self.rows[r][c])
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(ScalarElem::is_zero)
    }

    pub fn mul_vec(&self, v: &FieldVec4) -> FieldVec4 {
        FieldVec4(std::array::from_fn(|r| {
            (0..4).fold(ScalarElem::zero(self.mode()), |acc, c| acc + &self.rows[r][c] * &v.0[c])
        }))
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> ScalarElem {
        let mode = self.mode();
        let rows: Vec<Vec<ScalarElem>> = self.rows.iter().map(|r| r.to_vec()).collect();
        let ech = Echelon::new(&rows);
        if ech.pivots.len() < 4 {
            return ScalarElem::zero(mode);
        }
        let scale = ech.multipliers.iter().fold(GPoly::one(), |a, m| a.mul(m));
        let mut num = ech.rows[3][3].clone();
        if ech.odd {
            num = num.neg();
        }
        let v = RatFn::new(num, scale).expect("nonzero multipliers");
        ScalarElem::from_gauss(v, mode).expect("mode preserved")
    }

    /// Determinant by the Leibniz expansion; used as an independent check.
    pub fn det_leibniz(&self) -> ScalarElem {
        let mode = self.mode();
        permutations4().into_iter().fold(ScalarElem::zero(mode), |acc, (perm, sign)| {
            let term = (0..4).fold(ScalarElem::from_i64(sign, mode), |t, r| t * &self.rows[r][perm[r]]);
            acc + term
        })
    }

    pub fn rank(&self) -> usize {
        let m: Vec<Vec<ScalarElem>> = self.rows.iter().map(|r| r.to_vec()).collect();
        Echelon::new(&m).pivots.len()
    }

    /// Basis of the null space; each vector has its first nonzero
    /// coordinate equal to 1.
    pub fn kernel_basis(&self) -> Vec<FieldVec4> {
        let mode = self.mode();
        let mut m: Vec<Vec<ScalarElem>> = self.rows.iter().map(|r| r.to_vec()).collect();
        let pivots = rref(&mut m);
        let mut basis = Vec::new();
        for free in (0..4).filter(|c| !pivots.contains(c)) {
            let mut v = FieldVec4::zero(mode);
            v.0[free] = ScalarElem::one(mode);
            for (r, &pc) in pivots.iter().enumerate() {
                v.0[pc] = -&m[r][free];
            }
            let lead = v.0.iter().find(|s| !s.is_zero()).expect("nonzero kernel vector").clone();
            basis.push(v.scale(&lead.invert().expect("nonzero")));
        }
        debug_assert!(basis.iter().all(|v| self.mul_vec(v).is_zero()));
        basis
    }

    /// Some `x` with `M x = b`, or `None` when `b` is outside the column span.
    pub fn solve(&self, b: &FieldVec4) -> Option<FieldVec4> {
        let mode = self.mode();
        let mut m: Vec<Vec<ScalarElem>> = (0..4)
            .map(|r| {
                let mut row = self.rows[r].to_vec();
                row.push(b.0[r].clone());
                row
            })
            .collect();
        let pivots = rref(&mut m);
        if pivots.contains(&4) {
            return None;
        }
        let mut x = FieldVec4::zero(mode);
        for (r, &pc) in pivots.iter().enumerate() {
            x.0[pc] = m[r][4].clone();
        }
        assert_eq!(&self.mul_vec(&x), b, "elimination produced a wrong solution");
        Some(x)
    }

    /// `det(M − λ·Id)`, expanded over polynomials in `λ`.
    pub fn char_poly(&self) -> FieldPoly {
        let mode = self.mode();
        let entry = |r: usize, c: usize| {
            let e = self.rows[r][c].clone();
            if r == c {
                FieldPoly::new(vec![e, ScalarElem::from_i64(-1, mode)], mode)
            } else {
                FieldPoly::constant(e)
            }
        };
        permutations4().into_iter().fold(FieldPoly::zero(mode), |acc, (perm, sign)| {
            let term = (0..4).fold(FieldPoly::constant(ScalarElem::from_i64(sign, mode)), |t, r| {
                &t * &entry(r, perm[r])
            });
            &acc + &term
        })
    }
}

fn permutations4() -> Vec<([usize; 4], i64)> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                    if distinct {
                        let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                        out.push((p, if inversions % 2 == 0 { 1 } else { -1 }));
                    }
                }
            }
        }
    }
    out
}

impl Add for &FieldMat4 {
    type Output = FieldMat4;
    fn add(self, o: &FieldMat4) -> FieldMat4 {
        FieldMat4::from_fn(|r, c| &self.rows[r][c] + &o.rows[r][c])
    }
}

impl Sub for &FieldMat4 {
    type Output = FieldMat4;
    fn sub(self, o: &FieldMat4) -> FieldMat4 {
        FieldMat4::from_fn(|r, c| &self.rows[r][c] - &o.rows[r][c])
    }
}

impl Mul for &FieldMat4 {
    type Output = FieldMat4;
    fn mul(self, o: &FieldMat4) -> FieldMat4 {
        FieldMat4::from_fn(|r, c| {
            (0..4).fold(ScalarElem::zero(self.mode()), |acc, k| acc + &self.rows[r][k] * &o.rows[k][c])
        })
    }
}

impl fmt::Display for FieldMat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for FieldMat4 {
    /// Row-major nested arrays of scalar strings.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

/// A polynomial in `λ` with scalar coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldPoly {
    coeffs: Vec<ScalarElem>,
    mode: DomainMode,
}

impl FieldPoly {
    pub fn new(mut coeffs: Vec<ScalarElem>, mode: DomainMode) -> Self {
        while coeffs.last().is_some_and(ScalarElem::is_zero) {
            coeffs.pop();
        }
        FieldPoly { coeffs, mode }
    }

    /// From rational integer coefficients, lowest degree first.
    pub fn from_ints(cs: &[i64], mode: DomainMode) -> Self {
        Self::new(cs.iter().map(|&c| ScalarElem::from_i64(c, mode)).collect(), mode)
    }

    pub fn zero(mode: DomainMode) -> Self {
        FieldPoly { coeffs: Vec::new(), mode }
    }

    pub fn constant(c: ScalarElem) -> Self {
        let mode = c.mode();
        Self::new(vec![c], mode)
    }

    /// The indeterminate `λ`.
    pub fn lambda(mode: DomainMode) -> Self {
        Self::new(vec![ScalarElem::zero(mode), ScalarElem::one(mode)], mode)
    }

    pub fn coeffs(&self) -> &[ScalarElem] {
        &self.coeffs
    }

    /// Coefficients padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Vec<ScalarElem> {
        (0..n.max(self.coeffs.len())).map(|i| self.coeff(i)).collect()
    }

    pub fn coeff(&self, i: usize) -> ScalarElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ScalarElem::zero(self.mode))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mode(&self) -> DomainMode {
        self.mode
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(FieldPoly::constant(ScalarElem::one(self.mode)), |acc, _| &acc * self)
    }

    pub fn eval(&self, at: &ScalarElem) -> ScalarElem {
        self.coeffs.iter().rev().fold(ScalarElem::zero(self.mode), |acc, c| acc * at + c)
    }
}

impl Add for &FieldPoly {
    type Output = FieldPoly;
    fn add(self, o: &FieldPoly) -> FieldPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        FieldPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect(), self.mode)
    }
}

impl Sub for &FieldPoly {
    type Output = FieldPoly;
    fn sub(self, o: &FieldPoly) -> FieldPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        FieldPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect(), self.mode)
    }
}

impl Neg for &FieldPoly {
    type Output = FieldPoly;
    fn neg(self) -> FieldPoly {
        FieldPoly { coeffs: self.coeffs.iter().map(|c| -c).collect(), mode: self.mode }
    }
}

impl Mul for &FieldPoly {
    type Output = FieldPoly;
    fn mul(self, o: &FieldPoly) -> FieldPoly {
        if self.is_zero() || o.is_zero() {
            return FieldPoly::zero(self.mode);
        }
        let mut out = vec![ScalarElem::zero(self.mode); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        FieldPoly::new(out, self.mode)
    }
}

impl fmt::Display for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("[{c}]"),
                1 => format!("[{c}]*λ"),
                _ => format!("[{c}]*λ^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Serialize for FieldPoly {
    /// Coefficient strings, lowest degree first.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}
