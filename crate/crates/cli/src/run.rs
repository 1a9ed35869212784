//! Command execution. Every command returns an [`Outcome`] holding the exit
//! code, the JSON document and the human-readable text; nothing closed-form is
//! emitted before it has been checked against the definitions.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use slicesyl::equivalence::{are_equivalent, conjugator, intertwines_with_zero_divisor};
use slicesyl::linalg::rank_of_vectors;
use slicesyl::operator::{image_membership_extensional, solve_l1, Extensional, L1Outcome, OperatorSpec};
use slicesyl::oracle::{check_star_pointwise, EvalPoint, QuatF, IDENTITY_TOL};
use slicesyl::sampling::Sampler;
use slicesyl::sylvester::*;
use slicesyl::{AlgebraError, DomainMode, FieldVec4, SliceFn};
use thiserror::Error;

use crate::parse::{parse, parse_lines, ParseError};

pub const EXIT_OK: i32 = 0;
/// No solution, not equivalent, condition fails, or oracle mismatches.
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
/// A computed result failed its own verification.
pub const EXIT_INTERNAL: i32 = 3;

pub const CLOSED: &str = "closed-form";
pub const MATRIX: &str = "matrix-elimination";

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Mode {
    Slice,
    Product,
}

impl From<Mode> for DomainMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Slice => DomainMode::Slice,
            Mode::Product => DomainMode::Product,
        }
    }
}

/// Annihilation condition for `idem-analyze`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Which {
    /// `σ*ρ = 0`.
    Left,
    /// `σ*ρ*σ^c = 0`.
    Csand,
    /// `σ*ρ*σ = 0`.
    Ssand,
}

impl From<Which> for Extensional {
    fn from(w: Which) -> Self {
        match w {
            Which::Left => Extensional::LeftKill,
            Which::Csand => Extensional::ConjSandwich,
            Which::Ssand => Extensional::SameSandwich,
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum Request {
    Classify { f: String, g: String },
    Solve { f: String, g: String, b: String },
    Kernel { f: String, g: String },
    Equiv { f: String, g: String },
    Conjugate { f: String, g: String },
    IdemAnalyze { sigma: String, rho: String, which: Which },
    LfgSolve { fs_file: PathBuf, gs_file: PathBuf, b: String },
    OracleCheck { pairs: usize, points: usize, tol: f64 },
}

impl Request {
    pub fn verb(&self) -> &'static str {
        match self {
            Request::Classify { .. } => "classify",
            Request::Solve { .. } => "solve",
            Request::Kernel { .. } => "kernel",
            Request::Equiv { .. } => "equiv",
            Request::Conjugate { .. } => "conjugate",
            Request::IdemAnalyze { .. } => "idem-analyze",
            Request::LfgSolve { .. } => "lfg-solve",
            Request::OracleCheck { .. } => "oracle-check",
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Command {
    pub request: Request,
    pub mode: DomainMode,
    pub seed: Option<u64>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse {what}: {err}")]
    Parse { what: String, err: ParseError },
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Algebra(AlgebraError),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Verification(m) => CliError::Verification(m),
            e => CliError::Algebra(e),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => EXIT_INTERNAL,
            _ => EXIT_BAD_INPUT,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Io { .. } => "io",
            CliError::Input(_) => "input",
            CliError::Algebra(_) => "algebra",
            CliError::Verification(_) => "verification",
        }
    }

    fn to_json(&self) -> Value {
        let mut v = json!({ "kind": self.kind(), "message": self.to_string() });
        if let CliError::Parse { what, err } = self {
            v["operand"] = json!(what);
            v["line"] = json!(err.pos.line);
            v["column"] = json!(err.pos.col);
        }
        v
    }
}

/// Result of one command.
#[derive(Clone, PartialEq, Debug)]
pub struct Outcome {
    pub code: i32,
    pub json: Value,
    pub text: String,
}

type Provenance = BTreeMap<&'static str, &'static str>;

/// Successful or negative answer of a command body.
struct Answer {
    code: i32,
    status: &'static str,
    inputs: Value,
    result: Value,
    provenance: Provenance,
    text: String,
}

fn verify(ok: bool, what: &str) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Verification(what.into()))
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn operand(name: &str, text: &str, mode: DomainMode) -> Result<SliceFn, CliError> {
    parse(text, mode).map_err(|err| CliError::Parse { what: name.into(), err })
}

fn tuple_file(path: &Path, mode: DomainMode) -> Result<Vec<SliceFn>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    parse_lines(&text, mode).map_err(|err| CliError::Parse { what: path.display().to_string(), err })
}

/// Runs a command and assembles its JSON and text output.
pub fn run(cmd: &Command) -> Outcome {
    let verb = cmd.request.verb();
    let mut doc = json!({
        "command": verb,
        "mode": cmd.mode.to_string(),
        "seed": cmd.seed,
    });
    match dispatch(cmd) {
        Ok(a) => {
            doc["status"] = json!(a.status);
            doc["exit_code"] = json!(a.code);
            doc["inputs"] = a.inputs;
            doc["result"] = a.result;
            doc["provenance"] = to_value(&a.provenance);
            Outcome { code: a.code, json: doc, text: a.text }
        }
        Err(e) => {
            let code = e.exit_code();
            doc["status"] = json!("error");
            doc["exit_code"] = json!(code);
            doc["error"] = e.to_json();
            Outcome { code, json: doc, text: format!("error: {e}\n") }
        }
    }
}

fn dispatch(cmd: &Command) -> Result<Answer, CliError> {
    let mode = cmd.mode;
    match &cmd.request {
        Request::Classify { f, g } => classify_cmd(&operand("f", f, mode)?, &operand("g", g, mode)?),
        Request::Solve { f, g, b } => {
            solve_cmd(&operand("f", f, mode)?, &operand("g", g, mode)?, &operand("b", b, mode)?)
        }
        Request::Kernel { f, g } => kernel_cmd(&operand("f", f, mode)?, &operand("g", g, mode)?),
        Request::Equiv { f, g } => equiv_cmd(&operand("f", f, mode)?, &operand("g", g, mode)?, true),
        Request::Conjugate { f, g } => equiv_cmd(&operand("f", f, mode)?, &operand("g", g, mode)?, false),
        Request::IdemAnalyze { sigma, rho, which } => {
            idem_cmd(&operand("sigma", sigma, mode)?, &operand("rho", rho, mode)?, *which)
        }
        Request::LfgSolve { fs_file, gs_file, b } => {
            lfg_cmd(tuple_file(fs_file, mode)?, tuple_file(gs_file, mode)?, &operand("b", b, mode)?)
        }
        Request::OracleCheck { pairs, points, tol } => oracle_cmd(mode, cmd.seed.unwrap_or(0), *pairs, *points, *tol),
    }
}

fn pair_inputs(f: &SliceFn, g: &SliceFn) -> Value {
    json!({ "f": f.to_string(), "g": g.to_string() })
}

fn tagged(fs: &[SliceFn]) -> Value {
    Value::Array(
        fs.iter()
            .map(|k| json!({ "element": k.to_string(), "invertible": k.is_invertible(), "zero_divisor": k.is_zero_divisor() }))
            .collect(),
    )
}

fn classify_cmd(f: &SliceFn, g: &SliceFn) -> Result<Answer, CliError> {
    let r = classify(f, g)?;
    let kernel: Vec<SliceFn> = match &r.witness {
        Witness::Rank4 { shift, lambda_l, .. } => {
            let (fa, ga) = ShiftChoice { alpha: *shift }.apply(f, g);
            let det = sylvester_matrix(&fa, &ga)?.det();
            verify(fa.symmetrized() * lambda_l.symmetrized() == det, "f^s λ_L^s = det S_{f,g}")?;
            Vec::new()
        }
        Witness::Rank2 { kernel, .. } | Witness::Rank3 { kernel, .. } | Witness::Reduced { kernel, .. } => {
            kernel.clone()
        }
    };
    let vs: Vec<FieldVec4> = kernel.iter().map(FieldVec4::from).collect();
    for k in &kernel {
        verify(apply_sylvester(f, g, k)?.is_zero(), "kernel element")?;
    }
    if r.branch != Branch::Reduced || r.rank == 4 - kernel.len() {
        verify(rank_of_vectors(&vs) == 4 - r.rank, "kernel dimension")?;
    }
    let mut text = format!("rank {} ({:?})\n", r.rank, r.branch);
    let coeffs: Vec<String> = r.char_poly.coeffs().iter().map(|c| c.to_string()).collect();
    text += &format!("characteristic polynomial (low to high): [{}]\n", coeffs.join(", "));
    text += &format!("determinant: {}\n", r.determinant);
    for k in &kernel {
        text += &format!("kernel: {k}\n");
    }
    if let Some(w) = &r.zero_divisor_kernel.witness {
        text += &format!("zero divisor in kernel: {w}\n");
    }
    let provenance = r.provenance.clone();
    Ok(Answer {
        code: EXIT_OK,
        status: "ok",
        inputs: pair_inputs(f, g),
        result: to_value(&r),
        provenance,
        text,
    })
}

fn solve_cmd(f: &SliceFn, g: &SliceFn, b: &SliceFn) -> Result<Answer, CliError> {
    let branch = branch_of(f, g);
    let mut provenance = Provenance::new();
    let mut inputs = pair_inputs(f, g);
    inputs["b"] = json!(b.to_string());
    let (chi, obstruction): (Option<SliceFn>, Value) = match branch {
        Branch::Rank4 => {
            provenance.insert("chi", CLOSED);
            (Some(solve_rank4(f, g, b)?.chi), Value::Null)
        }
        Branch::Rank2 => {
            provenance.insert("chi", CLOSED);
            provenance.insert("image_condition", CLOSED);
            match rank2_solve(f, g, b)? {
                Some(chi) => (Some(chi), Value::Null),
                None => {
                    let residual = &(&f.conjugate() * b) + &(b * g);
                    (None, json!({ "condition": "f^c*b + b*g = 0", "residual": residual.to_string() }))
                }
            }
        }
        Branch::Rank3 => {
            provenance.insert("chi", MATRIX);
            provenance.insert("image_condition", CLOSED);
            let closed = rank3_image_condition(f, g, b)?;
            let found = image_contains_by_elimination(f, g, b)?;
            verify(closed == found.is_some(), "rank-3 image condition against elimination")?;
            let obstruction = if found.is_none() {
                json!({ "condition": "rank-3 image condition", "holds": false })
            } else {
                Value::Null
            };
            (found, obstruction)
        }
        Branch::Reduced => {
            provenance.insert("chi", CLOSED);
            let one = SliceFn::one(f.mode());
            let (l, r) = if g.is_central() {
                (f + &SliceFn::from_scalar(g.real_part().clone()), one)
            } else {
                (one, g + &SliceFn::from_scalar(f.real_part().clone()))
            };
            if l.is_zero() || r.is_zero() {
                provenance.insert("chi", MATRIX);
                if b.is_zero() {
                    (Some(SliceFn::zero(f.mode())), Value::Null)
                } else {
                    (None, json!({ "condition": "operator is zero", "residual": b.to_string() }))
                }
            } else {
                match solve_l1(&l, &r, b)? {
                    L1Outcome::Solved { chi } => (Some(chi), Value::Null),
                    L1Outcome::Obstructed { obstruction } => (None, to_value(&obstruction)),
                }
            }
        }
    };
    let branch_name = format!("{branch:?}");
    match chi {
        Some(chi) => {
            verify(&apply_sylvester(f, g, &chi)? == b, "substitution f*χ + χ*g = b")?;
            Ok(Answer {
                code: EXIT_OK,
                status: "ok",
                inputs,
                result: json!({ "branch": branch_name, "chi": chi.to_string() }),
                provenance,
                text: format!("chi = {chi}\n"),
            })
        }
        None => {
            verify(image_contains_by_elimination(f, g, b)?.is_none(), "obstruction against elimination")?;
            Ok(Answer {
                code: EXIT_NEGATIVE,
                status: "no_solution",
                inputs,
                result: json!({ "branch": branch_name, "obstruction": obstruction }),
                provenance,
                text: format!("no solution: {obstruction}\n"),
            })
        }
    }
}

fn kernel_cmd(f: &SliceFn, g: &SliceFn) -> Result<Answer, CliError> {
    let branch = branch_of(f, g);
    let mut provenance = Provenance::new();
    let (kernel, special) = match branch {
        Branch::Rank4 => {
            provenance.insert("kernel", CLOSED);
            (Vec::new(), None)
        }
        Branch::Rank2 => {
            provenance.insert("kernel", CLOSED);
            let k = rank2_kernel(f, g)?;
            if k.special.is_some() {
                provenance.insert("special_basis", CLOSED);
            }
            (k.basis.to_vec(), k.special.map(|s| s.to_vec()))
        }
        Branch::Rank3 => {
            provenance.insert("kernel", MATRIX);
            let st = rank3_structure(f, g)?;
            if st.closed_kernel.is_some() {
                provenance.insert("kernel_closed_form_check", CLOSED);
            }
            (vec![st.kernel], None)
        }
        Branch::Reduced => {
            provenance.insert("kernel", MATRIX);
            (kernel_by_elimination(f, g)?, None)
        }
    };
    let rank = sylvester_matrix(f, g)?.rank();
    for k in kernel.iter().chain(special.iter().flatten()) {
        verify(apply_sylvester(f, g, k)?.is_zero(), "kernel element")?;
    }
    let vs: Vec<FieldVec4> = kernel.iter().map(FieldVec4::from).collect();
    verify(rank_of_vectors(&vs) == 4 - rank && kernel.len() == 4 - rank, "kernel dimension")?;
    let mut text = format!("kernel dimension {}\n", kernel.len());
    for k in &kernel {
        let tag = if k.is_invertible() { "invertible" } else { "zero divisor" };
        text += &format!("{k}  [{tag}]\n");
    }
    if let Some(sp) = &special {
        for k in sp {
            text += &format!("special: {k}\n");
        }
    }
    Ok(Answer {
        code: EXIT_OK,
        status: "ok",
        inputs: pair_inputs(f, g),
        result: json!({
            "branch": format!("{branch:?}"),
            "dimension": kernel.len(),
            "basis": tagged(&kernel),
            "special_basis": special.as_deref().map(tagged),
        }),
        provenance,
        text,
    })
}

fn equiv_cmd(f: &SliceFn, g: &SliceFn, report: bool) -> Result<Answer, CliError> {
    let mut provenance = Provenance::new();
    provenance.insert("verdict", CLOSED);
    let eq = are_equivalent(f, g)?;
    let same_real = f.real_part() == g.real_part();
    let same_vs = f.vector_part().symmetrized() == g.vector_part().symmetrized();
    let mut result = json!({
        "equivalent": eq,
        "real_parts_equal": same_real,
        "vector_symmetrizations_equal": same_vs,
    });
    let mut text = String::new();
    if eq {
        provenance.insert("conjugator", CLOSED);
        let w = conjugator(f, g)?;
        verify(w.verifies(f, g), "conjugator")?;
        result["conjugator"] = json!(w.h.to_string());
        text += &format!("equivalent\nh = {}\n(h^-* * f * h = g)\n", w.h);
    } else {
        text += "not equivalent\n";
    }
    if report {
        let sigma = intertwines_with_zero_divisor(f, g)?;
        if let Some(s) = &sigma {
            verify(s.is_zero_divisor() && &(f * s) == &(s * g), "intertwining zero divisor")?;
            provenance.insert("intertwiner", MATRIX);
            text += &format!("zero divisor σ with f*σ = σ*g: {s}\n");
        }
        result["zero_divisor_intertwiner"] = json!(sigma.map(|s| s.to_string()));
    }
    Ok(Answer {
        code: if eq { EXIT_OK } else { EXIT_NEGATIVE },
        status: if eq { "ok" } else { "not_equivalent" },
        inputs: pair_inputs(f, g),
        result,
        provenance,
        text,
    })
}

fn idem_cmd(sigma: &SliceFn, rho: &SliceFn, which: Which) -> Result<Answer, CliError> {
    let mut provenance = Provenance::new();
    provenance.insert("decomposition", CLOSED);
    let inputs = json!({ "sigma": sigma.to_string(), "rho": rho.to_string(), "which": format!("{which:?}").to_lowercase() });
    match image_membership_extensional(sigma, rho, which.into())? {
        Some(d) => {
            let back = d.reassemble()?;
            verify(&back == rho, "decomposition reassembles")?;
            let text = format!(
                "condition holds\nconjugator: {}\nframe: {}, {}, {}\nρ idempotent: {}\n",
                d.conjugator, d.frame.i, d.frame.j, d.frame.k, d.rho_idempotent
            );
            Ok(Answer { code: EXIT_OK, status: "ok", inputs, result: to_value(&d), provenance, text })
        }
        None => Ok(Answer {
            code: EXIT_NEGATIVE,
            status: "condition_fails",
            inputs,
            result: json!({ "holds": false }),
            provenance,
            text: "condition fails\n".into(),
        }),
    }
}

fn lfg_cmd(fs: Vec<SliceFn>, gs: Vec<SliceFn>, b: &SliceFn) -> Result<Answer, CliError> {
    if fs.len() != gs.len() {
        return Err(CliError::Input(format!("tuple lengths differ ({} vs {})", fs.len(), gs.len())));
    }
    if fs.is_empty() {
        return Err(CliError::Input("empty operator tuple".into()));
    }
    if fs.iter().chain(&gs).any(SliceFn::is_zero) {
        return Err(CliError::Input("tuple entries must be nonzero".into()));
    }
    let op = OperatorSpec::new(fs.clone(), gs.clone())?;
    let mut provenance = Provenance::new();
    let inputs = json!({
        "fs": fs.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "gs": gs.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "b": b.to_string(),
    });
    let kernel = op.kernel_matrix();
    provenance.insert("kernel", MATRIX);
    let (chi, obstruction) = if fs.len() == 1 {
        provenance.insert("chi", CLOSED);
        match solve_l1(&fs[0], &gs[0], b)? {
            L1Outcome::Solved { chi } => (Some(chi), Value::Null),
            L1Outcome::Obstructed { obstruction } => (None, to_value(&obstruction)),
        }
    } else {
        provenance.insert("chi", MATRIX);
        (op.solve_matrix(b), json!({ "condition": "b outside the image" }))
    };
    let iso = op.is_isomorphism()?;
    let mut result = json!({ "terms": fs.len(), "isomorphism": iso, "kernel_dimension": kernel.len(), "kernel": tagged(&kernel) });
    match chi {
        Some(chi) => {
            verify(&op.apply(&chi)? == b, "substitution Σ f*χ*g = b")?;
            result["chi"] = json!(chi.to_string());
            Ok(Answer { code: EXIT_OK, status: "ok", inputs, result, provenance, text: format!("chi = {chi}\n") })
        }
        None => {
            verify(op.solve_matrix(b).is_none(), "obstruction against elimination")?;
            result["obstruction"] = obstruction.clone();
            Ok(Answer {
                code: EXIT_NEGATIVE,
                status: "no_solution",
                inputs,
                result,
                provenance,
                text: format!("no solution: {obstruction}\n"),
            })
        }
    }
}

fn oracle_cmd(mode: DomainMode, seed: u64, pairs: usize, points: usize, tol: f64) -> Result<Answer, CliError> {
    if !(tol > 0.0) {
        return Err(CliError::Input("tolerance must be positive".into()));
    }
    let mut s = Sampler::new(seed, mode);
    let (mut checked, mut skipped) = (0usize, 0usize);
    let mut failures = Vec::new();
    for n in 0..pairs {
        let (f, g) = (s.slicefn(), s.slicefn());
        for _ in 0..points {
            let mut c = || s.int(-200, 200) as f64 / 100.0;
            let q = QuatF::new(c(), c(), c(), c());
            let p = match EvalPoint::new(q) {
                Ok(p) if q.vector().norm() >= 0.1 => p,
                _ => {
                    skipped += 1;
                    continue;
                }
            };
            match check_star_pointwise(&f, &g, &p, tol) {
                Ok(true) => checked += 1,
                Ok(false) => {
                    checked += 1;
                    failures.push(json!({ "pair": n, "f": f.to_string(), "g": g.to_string(), "point": [q.w, q.x, q.y, q.z] }));
                }
                Err(AlgebraError::NearPole(_) | AlgebraError::NearRealAxis(_)) => skipped += 1,
                Err(e) => return Err(e.into()),
            }
        }
    }
    let ok = failures.is_empty();
    let text = format!(
        "{} pairs, {checked} points checked, {skipped} skipped, {} failures (tolerance {tol:e})\n",
        pairs,
        failures.len()
    );
    let mut provenance = Provenance::new();
    provenance.insert("star_product", CLOSED);
    Ok(Answer {
        code: if ok { EXIT_OK } else { EXIT_NEGATIVE },
        status: if ok { "ok" } else { "oracle_failures" },
        inputs: json!({ "pairs": pairs, "points_per_pair": points, "tolerance": tol }),
        result: json!({ "checked": checked, "skipped": skipped, "failures": failures }),
        provenance,
        text,
    })
}

/// Default relative tolerance of `oracle-check`.
pub const DEFAULT_TOL: f64 = IDENTITY_TOL;
