//! Operators `𝓛_{𝓕,𝓖}(χ) = Σ f_[n]*χ*g_[n]`, with the complete theory of the
//! one-term case `χ ↦ f*χ*g`.

use serde::Serialize;

use crate::algebra::{DecompSide, IdemSign, QuatConst, SliceFn};
use crate::equivalence::conjugator;
use crate::error::{AlgebraError, Result};
use crate::linalg::{assemble_lfg, FieldMat4, FieldVec4};
use crate::scalar::{DomainMode, ScalarElem};

/// A pair of equally long tuples of nonzero functions.
#[derive(Clone, PartialEq, Debug)]
pub struct OperatorSpec {
    fs: Vec<SliceFn>,
    gs: Vec<SliceFn>,
    matrix: FieldMat4,
}

impl OperatorSpec {
    pub fn new(fs: Vec<SliceFn>, gs: Vec<SliceFn>) -> Result<Self> {
        let matrix = assemble_lfg(&fs, &gs)?;
        Ok(OperatorSpec { fs, gs, matrix })
    }

    /// `χ ↦ f*χ*g`.
    pub fn single(f: SliceFn, g: SliceFn) -> Result<Self> {
        Self::new(vec![f], vec![g])
    }

    /// `χ ↦ f*χ + χ*g`.
    pub fn sylvester(f: SliceFn, g: SliceFn) -> Result<Self> {
        let mode = f.mode();
        Self::new(vec![f, SliceFn::one(mode)], vec![SliceFn::one(mode), g])
    }

    pub fn fs(&self) -> &[SliceFn] {
        &self.fs
    }

    pub fn gs(&self) -> &[SliceFn] {
        &self.gs
    }

    pub fn mode(&self) -> DomainMode {
        self.fs[0].mode()
    }

    /// `Σ ι_L(f_[n]) ι_R(g_[n])`.
    pub fn matrix(&self) -> &FieldMat4 {
        &self.matrix
    }

    /// `Σ f_[n]*χ*g_[n]` by *-products.
    pub fn apply(&self, chi: &SliceFn) -> Result<SliceFn> {
        let mut acc = SliceFn::zero(self.mode());
        for (f, g) in self.fs.iter().zip(&self.gs) {
            acc = acc.try_add(&f.try_star(chi)?.try_star(g)?)?;
        }
        Ok(acc)
    }

    /// Same operator with `f_[n] ↦ α_n f_[n]` and `g_[n] ↦ α_n^{-1} g_[n]`.
    pub fn gauge(&self, alphas: &[ScalarElem]) -> Result<Self> {
        if alphas.len() != self.fs.len() {
            return Err(AlgebraError::LengthMismatch(alphas.len(), self.fs.len()));
        }
        let mut fs = Vec::with_capacity(alphas.len());
        let mut gs = Vec::with_capacity(alphas.len());
        for ((a, f), g) in alphas.iter().zip(&self.fs).zip(&self.gs) {
            fs.push(f.scale(a));
            gs.push(g.scale(&a.invert()?));
        }
        Self::new(fs, gs)
    }

    /// Determinant test; for one term also checked against the criterion
    /// that neither factor is a zero divisor.
    pub fn is_isomorphism(&self) -> Result<bool> {
        let iso = !self.matrix.det().is_zero();
        if self.fs.len() == 1 {
            let by_factors = self.fs[0].is_invertible() && self.gs[0].is_invertible();
            if by_factors != iso {
                return Err(AlgebraError::Verification("determinant and zero-divisor criteria disagree".into()));
            }
        }
        Ok(iso)
    }

    /// Some solution of `𝓛(χ) = b` by elimination.
    pub fn solve_matrix(&self, b: &SliceFn) -> Option<SliceFn> {
        self.matrix.solve(&FieldVec4::from(b)).map(|x| SliceFn::from(&x))
    }

    /// Kernel basis by elimination.
    pub fn kernel_matrix(&self) -> Vec<SliceFn> {
        self.matrix.kernel_basis().iter().map(SliceFn::from).collect()
    }
}

/// Which factor blocks solvability of `f*χ*g = b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ObstructionSide {
    /// `b ≠ σ_f*b`.
    Left,
    /// `b ≠ b*ρ_g`.
    Right,
}

/// Exhibited reason why `f*χ*g = b` has no solution.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct L1Obstruction {
    pub side: ObstructionSide,
    pub idempotent: SliceFn,
    /// `σ_f*b − b` or `b*ρ_g − b`, nonzero.
    pub residual: SliceFn,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum L1Outcome {
    Solved { chi: SliceFn },
    Obstructed { obstruction: L1Obstruction },
}

impl L1Outcome {
    pub fn solution(&self) -> Option<&SliceFn> {
        match self {
            L1Outcome::Solved { chi } => Some(chi),
            L1Outcome::Obstructed { .. } => None,
        }
    }
}

/// Solves `f*χ*g = b`: `f^{-*}*b*g^{-*}` when both factors are invertible,
/// otherwise the construction through the idempotents of the zero divisors.
pub fn solve_l1(f: &SliceFn, g: &SliceFn, b: &SliceFn) -> Result<L1Outcome> {
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::ZeroFunction);
    }
    if f.mode() != g.mode() || f.mode() != b.mode() {
        return Err(AlgebraError::ModeMismatch);
    }
    let mode = f.mode();
    // left factor: f^{-*}, or (2(fδ)₀)^{-1}δ with the side condition b = σ_f*b
    let left = if f.is_zero_divisor() {
        let d = f.zero_divisor_decompose(DecompSide::RightIdem)?;
        let residual = &(&d.idem * b) - b;
        if !residual.is_zero() {
            let obstruction = L1Obstruction { side: ObstructionSide::Left, idempotent: d.idem, residual };
            return Ok(L1Outcome::Obstructed { obstruction });
        }
        d.unit.to_slicefn(mode).scale(&d.scale.invert()?)
    } else {
        f.star_inverse()?
    };
    let right = if g.is_zero_divisor() {
        let d = g.zero_divisor_decompose(DecompSide::LeftIdem)?;
        let residual = &(b * &d.idem) - b;
        if !residual.is_zero() {
            let obstruction = L1Obstruction { side: ObstructionSide::Right, idempotent: d.idem, residual };
            return Ok(L1Outcome::Obstructed { obstruction });
        }
        d.unit.to_slicefn(mode).scale(&d.scale.invert()?)
    } else {
        g.star_inverse()?
    };
    let chi = &(&left * b) * &right;
    if &(&(f * &chi) * g) != b {
        return Err(AlgebraError::Verification("one-term solution fails substitution".into()));
    }
    Ok(L1Outcome::Solved { chi })
}

/// Membership of `χ` in `ker(χ ↦ f*χ*g)` through the idempotents of the
/// zero-divisor factors; errors when the operator is an isomorphism.
pub fn kernel_condition_l1(f: &SliceFn, g: &SliceFn, chi: &SliceFn) -> Result<bool> {
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::ZeroFunction);
    }
    let (fz, gz) = (f.is_zero_divisor(), g.is_zero_divisor());
    if !fz && !gz {
        return Err(AlgebraError::Isomorphism("both factors are invertible".into()));
    }
    let mut probe = chi.clone();
    if fz {
        let rho = f.zero_divisor_decompose(DecompSide::LeftIdem)?.idem;
        probe = rho.try_star(&probe)?;
    }
    if gz {
        let sigma = g.zero_divisor_decompose(DecompSide::RightIdem)?.idem;
        probe = probe.try_star(&sigma)?;
    }
    let verdict = probe.is_zero();
    if verdict != (&(f * chi) * g).is_zero() {
        return Err(AlgebraError::Verification("kernel criterion disagrees with direct product".into()));
    }
    Ok(verdict)
}

/// The three annihilation conditions between an idempotent `σ` and `ρ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Extensional {
    /// `σ*ρ = 0`.
    LeftKill,
    /// `σ*ρ*σ^c = 0`.
    ConjSandwich,
    /// `σ*ρ*σ = 0`.
    SameSandwich,
}

/// Orthonormal frame `(I, J, K = IJ)` of rational unit imaginaries.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Frame {
    pub i: QuatConst,
    pub j: QuatConst,
    pub k: QuatConst,
}

impl Frame {
    /// Frame whose first axis is `unit`, with `J` the Householder image of `j`
    /// under the reflection taking `i` to `unit`.
    pub fn around(unit: &QuatConst) -> Result<Self> {
        if !unit.is_unit_imaginary() {
            return Err(AlgebraError::NotUnitImaginary);
        }
        let v = &QuatConst::i() - unit;
        let j = if v.is_zero() {
            QuatConst::j()
        } else {
            let jq = QuatConst::j();
            let dot: num_rational::BigRational =
                v.q.iter().zip(&jq.q).map(|(a, b)| a * b).fold(Default::default(), |a, b| a + b);
            let factor = dot * num_rational::BigRational::from_integer(2.into()) / v.norm_sq();
            &jq - &v.scale(&factor)
        };
        let k = unit * &j;
        Ok(Frame { i: unit.clone(), j, k })
    }

    fn standard() -> Self {
        Frame { i: QuatConst::i(), j: QuatConst::j(), k: QuatConst::k() }
    }
}

impl Serialize for Frame {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.i.to_string(), self.j.to_string(), self.k.to_string()].serialize(s)
    }
}

/// Coefficients of `ρ` in the canonical frame.
#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(tag = "which", rename_all = "snake_case")]
pub enum ExtensionalParams {
    /// `ρ = ℓ^{−,I}*(α + βJ)`.
    LeftKill { alpha: ScalarElem, beta: ScalarElem },
    /// `ρ = α₀ + α₁I + β ℓ^{−,I}*J`.
    ConjSandwich { alpha0: ScalarElem, alpha1: ScalarElem, beta: ScalarElem },
    /// `ρ = α ℓ^{−,I} + β₂J + β₃K`.
    SameSandwich { alpha: ScalarElem, beta2: ScalarElem, beta3: ScalarElem },
}

/// `σ = h*ℓ^{+,I}*h^{-*}` and `ρ = h*(canonical form)*h^{-*}`.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ExtensionalDecomposition {
    pub conjugator: SliceFn,
    pub frame: Frame,
    pub params: ExtensionalParams,
    /// The idempotency criterion read off the parameters.
    pub rho_idempotent: bool,
}

impl ExtensionalDecomposition {
    /// The canonical form of `ρ` before conjugating back.
    pub fn canonical(&self) -> Result<SliceFn> {
        let mode = self.conjugator.mode();
        let lm = SliceFn::basic_idempotent(IdemSign::Minus, &self.frame.i, mode)?;
        let (fi, fj, fk) = (
            self.frame.i.to_slicefn(mode),
            self.frame.j.to_slicefn(mode),
            self.frame.k.to_slicefn(mode),
        );
        Ok(match &self.params {
            ExtensionalParams::LeftKill { alpha, beta } => {
                &lm * &(&SliceFn::from_scalar(alpha.clone()) + &fj.scale(beta))
            }
            ExtensionalParams::ConjSandwich { alpha0, alpha1, beta } => {
                &(&SliceFn::from_scalar(alpha0.clone()) + &fi.scale(alpha1)) + &(&lm * &fj).scale(beta)
            }
            ExtensionalParams::SameSandwich { alpha, beta2, beta3 } => {
                &(&lm.scale(alpha) + &fj.scale(beta2)) + &fk.scale(beta3)
            }
        })
    }

    /// `h*(canonical form)*h^{-*}`.
    pub fn reassemble(&self) -> Result<SliceFn> {
        let h = &self.conjugator;
        Ok(&(h * &self.canonical()?) * &h.star_inverse()?)
    }
}

/// `I` when `σ = ℓ^{+,I}` with `I` a rational unit imaginary.
pub fn basic_idempotent_axis(sigma: &SliceFn) -> Option<QuatConst> {
    let mode = sigma.mode();
    let jay = ScalarElem::j(mode).ok()?;
    if sigma.real_part() != &ScalarElem::from_ratio(1, 2, mode) {
        return None;
    }
    let u = sigma.vector_part().scale(&(&jay * &ScalarElem::from_i64(2, mode)));
    let q: Option<Vec<_>> = u.coords().iter().map(ScalarElem::as_rational).collect();
    let q = QuatConst::new(q?.try_into().ok()?);
    q.is_unit_imaginary().then_some(q)
}

fn frame_coords(rho: &SliceFn, frame: &Frame) -> Result<[ScalarElem; 4]> {
    let mode = rho.mode();
    Ok([
        rho.real_part().clone(),
        rho.star_scalar(&frame.i.to_slicefn(mode))?,
        rho.star_scalar(&frame.j.to_slicefn(mode))?,
        rho.star_scalar(&frame.k.to_slicefn(mode))?,
    ])
}

/// Decides the chosen annihilation condition between the idempotent `σ` and
/// `ρ`; when it holds, returns the structured form of `ρ`, verified by
/// reassembly.
pub fn image_membership_extensional(
    sigma: &SliceFn,
    rho: &SliceFn,
    which: Extensional,
) -> Result<Option<ExtensionalDecomposition>> {
    if sigma.mode() != rho.mode() {
        return Err(AlgebraError::ModeMismatch);
    }
    if !sigma.is_idempotent() || sigma.is_zero() || sigma.is_one() {
        return Err(AlgebraError::NotIdempotent(sigma.to_string()));
    }
    let holds = match which {
        Extensional::LeftKill => (sigma * rho).is_zero(),
        Extensional::ConjSandwich => (&(sigma * rho) * &sigma.conjugate()).is_zero(),
        Extensional::SameSandwich => (&(sigma * rho) * sigma).is_zero(),
    };
    if !holds {
        return Ok(None);
    }
    let mode = sigma.mode();
    let jay = ScalarElem::j(mode)?;
    let two = ScalarElem::from_i64(2, mode);
    let (h, frame) = match basic_idempotent_axis(sigma) {
        Some(axis) => (SliceFn::one(mode), Frame::around(&axis)?),
        None => {
            let target = SliceFn::basic_idempotent(IdemSign::Plus, &QuatConst::i(), mode)?;
            (conjugator(sigma, &target)?.h, Frame::standard())
        }
    };
    let moved = &(&h.star_inverse()? * rho) * &h;
    let [r0, ri, rj, rk] = frame_coords(&moved, &frame)?;
    let shape_error = || AlgebraError::Verification(format!("{which:?} shape of ρ"));
    let half = ScalarElem::from_ratio(1, 2, mode);
    let (params, rho_idempotent) = match which {
        Extensional::LeftKill => {
            if ri != &jay * &r0 || rk != &jay * &rj {
                return Err(shape_error());
            }
            let alpha = &two * &r0;
            let idem = alpha.is_one();
            (ExtensionalParams::LeftKill { alpha, beta: &two * &rj }, idem)
        }
        Extensional::ConjSandwich => {
            if rk != &jay * &rj {
                return Err(shape_error());
            }
            let idem = r0 == half && &ri * &ri == ScalarElem::from_ratio(-1, 4, mode);
            (ExtensionalParams::ConjSandwich { alpha0: r0, alpha1: ri, beta: &two * &rj }, idem)
        }
        Extensional::SameSandwich => {
            if ri != &jay * &r0 {
                return Err(shape_error());
            }
            let alpha = &two * &r0;
            let idem = alpha.is_one() && (&rj * &rj + &rk * &rk).is_zero();
            (ExtensionalParams::SameSandwich { alpha, beta2: rj, beta3: rk }, idem)
        }
    };
    let out = ExtensionalDecomposition { conjugator: h, frame, params, rho_idempotent };
    if &out.reassemble()? != rho {
        return Err(AlgebraError::Verification("extensional decomposition does not reassemble".into()));
    }
    let sigma_back = &(&out.conjugator * &SliceFn::basic_idempotent(IdemSign::Plus, &out.frame.i, mode)?)
        * &out.conjugator.star_inverse()?;
    if &sigma_back != sigma || out.rho_idempotent != rho.is_idempotent() {
        return Err(AlgebraError::Verification("extensional decomposition of σ".into()));
    }
    Ok(Some(out))
}
