//! Running `check` commands and the certificate files they produce.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::ast::{Command, Expr, OrderSpec, Session, Stmt, Tuple};
use super::{eval_expr, parse_session, ParseError};
use crate::ci::{
    ci_from_free_conormal, is_nzd, is_regular_sequence, lci_certificate, mod_square_generation, regularize_generators,
    stci_search, stci_verify, CiOutcome, ModSquareOutcome, NzdOutcome, PipelineConfig,
    RegularizeOutcome, SearchOutcome, StciOutcome,
};
use crate::error::{AlgebraError, Result};
use crate::groebner::{syzygies, IdealHandle};
use crate::homology::{ext_module, free_resolution, koszul2_exactness};
use crate::ideal_ops::{dimension_height, radical_equal, radical_member, RadicalComparison};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{PolyRing, RingSpec};
use crate::scalar::Field;

pub const SCHEMA: &str = "cicert/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Refuted,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Verified => 0,
            Verdict::Refuted => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(match self {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Exit code for input errors.
pub const EXIT_INPUT_ERROR: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    pub gb_steps: u64,
    pub trials: u32,
    pub degree_bound: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub micros: u64,
}

/// Everything needed to re-run a command and compare its outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub schema: String,
    /// The declarations in scope, in canonical form.
    pub session: String,
    pub command: String,
    pub ring: String,
    pub verdict: Verdict,
    pub witnesses: Value,
    pub seed: u64,
    pub budgets: Budgets,
    pub gb_hashes: BTreeMap<String, String>,
    /// Not covered by the digest.
    pub timings: Timings,
    /// sha256 of the canonical JSON of every other field except `timings`.
    pub digest: String,
}

impl CertificateFile {
    pub fn config(&self) -> PipelineConfig {
        PipelineConfig {
            seed: self.seed,
            gb_steps: self.budgets.gb_steps,
            trials: self.budgets.trials,
            degree_bound: self.budgets.degree_bound,
        }
    }

    pub fn compute_digest(&self) -> String {
        let mut v = serde_json::to_value(self).expect("certificate serializes");
        if let Value::Object(m) = &mut v {
            m.remove("timings");
            m.remove("digest");
        }
        hex::encode(Sha256::digest(v.to_string().as_bytes()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, ReplayError> {
        let v: Value = serde_json::from_str(text).map_err(|e| ReplayError::Malformed(e.to_string()))?;
        match v.get("schema").and_then(Value::as_str) {
            Some(SCHEMA) => {}
            Some(other) => return Err(ReplayError::Schema(other.to_string())),
            None => return Err(ReplayError::Malformed("missing schema".into())),
        }
        serde_json::from_value(v).map_err(|e| ReplayError::Malformed(e.to_string()))
    }
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("unsupported certificate schema `{0}`")]
    Schema(String),
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("digest mismatch: stored {stored}, computed {computed}")]
    Digest { stored: String, computed: String },
    #[error("replay defect: field `{field}` differs from the recomputed certificate")]
    Mismatch { field: String },
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
}

/// Rings, ideals, polynomials and pairs of a session, evaluated.
#[derive(Debug, Clone)]
pub struct Workspace {
    rings: HashMap<String, RingSpec>,
    ideals: HashMap<String, IdealHandle>,
    polys: HashMap<String, HashMap<String, Polynomial>>,
    pairs: HashMap<String, Vec<Polynomial>>,
}

fn order_of(o: OrderSpec) -> MonomialOrder {
    match o {
        OrderSpec::Lex => MonomialOrder::lex(),
        OrderSpec::Grevlex => MonomialOrder::grevlex(),
        OrderSpec::Elim(k) => MonomialOrder::block(k),
    }
}

impl Workspace {
    pub fn build(session: &Session, gb_steps: u64) -> Result<Self> {
        let mut ws = Workspace {
            rings: HashMap::new(),
            ideals: HashMap::new(),
            polys: HashMap::new(),
            pairs: HashMap::new(),
        };
        for stmt in session.declarations() {
            match stmt {
                Stmt::Ring(r) => {
                    let ring = PolyRing::new(r.vars.clone(), r.field, order_of(r.order))?;
                    let base = r.base.iter().map(|e| eval_expr(&ring, e, &HashMap::new())).collect::<Result<Vec<_>>>()?;
                    ws.rings.insert(r.name.clone(), RingSpec::new(ring, base)?);
                    ws.polys.insert(r.name.clone(), HashMap::new());
                }
                Stmt::Ideal { name, ring, gens } => {
                    let gens = ws.eval_all(ring, gens)?;
                    let spec = ws.spec(ring)?.clone();
                    ws.ideals.insert(name.clone(), IdealHandle::new(&spec, gens)?.with_budget(gb_steps));
                }
                Stmt::Poly { name, ring, expr } => {
                    let p = ws.eval(ring, expr)?;
                    ws.polys.get_mut(ring).expect("ring declared").insert(name.clone(), p);
                }
                Stmt::Pair { name, ring, elems } => {
                    let v = ws.eval_all(ring, elems)?;
                    ws.pairs.insert(name.clone(), v);
                }
                Stmt::Check { .. } => {}
            }
        }
        Ok(ws)
    }

    pub fn spec(&self, ring: &str) -> Result<&RingSpec> {
        self.rings.get(ring).ok_or_else(|| AlgebraError::InvalidInput(format!("unknown ring {ring}")))
    }

    pub fn ideal(&self, name: &str) -> Result<&IdealHandle> {
        self.ideals.get(name).ok_or_else(|| AlgebraError::InvalidInput(format!("unknown ideal {name}")))
    }

    fn eval(&self, ring: &str, e: &Expr) -> Result<Polynomial> {
        eval_expr(self.spec(ring)?.ring(), e, &self.polys[ring])
    }

    fn eval_all(&self, ring: &str, es: &[Expr]) -> Result<Vec<Polynomial>> {
        es.iter().map(|e| self.eval(ring, e)).collect()
    }

    fn tuple(&self, ring: &str, t: &Tuple) -> Result<Vec<Polynomial>> {
        match t {
            Tuple::Named(n) => {
                self.pairs.get(n).cloned().ok_or_else(|| AlgebraError::InvalidInput(format!("unknown pair {n}")))
            }
            Tuple::Inline(items) => self.eval_all(ring, items),
        }
    }
}

/// Replace the coefficient field of every ring.
pub fn with_field(session: &Session, field: Field) -> Session {
    let stmts = session
        .stmts
        .iter()
        .map(|s| match s {
            Stmt::Ring(r) => {
                let mut r = r.clone();
                r.field = field;
                Stmt::Ring(r)
            }
            other => other.clone(),
        })
        .collect();
    Session { stmts }
}

struct Outcome {
    verdict: Verdict,
    witnesses: Value,
    hashes: BTreeMap<String, String>,
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("witness serializes")
}

fn texts(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn pair2(v: Vec<Polynomial>) -> Result<[Polynomial; 2]> {
    <[Polynomial; 2]>::try_from(v).map_err(|v| AlgebraError::InvalidInput(format!("expected 2 elements, found {}", v.len())))
}

/// Elements of `c` outside `I`, if any.
fn first_outside(ideal: &IdealHandle, c: &[Polynomial]) -> Result<Option<Polynomial>> {
    for e in c {
        if !ideal.contains(e)? {
            return Ok(Some(e.clone()));
        }
    }
    Ok(None)
}

fn verdict_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Verified
    } else {
        Verdict::Refuted
    }
}

fn dispatch(ws: &Workspace, cmd: &Command, ring: &str, cfg: &PipelineConfig) -> Result<Outcome> {
    let spec = ws.spec(ring)?;
    let mut hashes = BTreeMap::new();
    let mut hash = |label: &str, i: &IdealHandle| -> Result<()> {
        hashes.insert(label.to_string(), i.gb_hash()?);
        Ok(())
    };
    let (verdict, witnesses) = match cmd {
        Command::Member { f, ideal } => {
            let i = ws.ideal(ideal)?;
            let f = ws.eval(ring, f)?;
            hash(ideal, i)?;
            match i.lift(&f)? {
                Some(c) => (Verdict::Verified, json!({ "member": true, "cofactors": texts(&c) })),
                None => (Verdict::Refuted, json!({ "member": false, "normal_form": i.normal_form(&f)?.to_string() })),
            }
        }
        Command::RadicalMember { f, ideal } => {
            let i = ws.ideal(ideal)?;
            hash(ideal, i)?;
            let w = radical_member(&ws.eval(ring, f)?, i)?;
            (verdict_if(w.member), to_json(&w))
        }
        Command::RadicalEqual { left, right } => {
            let (l, r) = (ws.ideal(left)?, ws.ideal(right)?);
            hash(left, l)?;
            hash(right, r)?;
            let c = radical_equal(l, r)?;
            (verdict_if(matches!(c, RadicalComparison::Equal(_))), to_json(&c))
        }
        Command::Equal { left, right } => {
            let (l, r) = (ws.ideal(left)?, ws.ideal(right)?);
            hash(left, l)?;
            hash(right, r)?;
            let mut missing = None;
            for (from, to, side) in [(l, r, left), (r, l, right)] {
                if let Some(g) = first_outside(to, from.gens())? {
                    missing = Some(json!({ "generator": g.to_string(), "of": side }));
                    break;
                }
            }
            match missing {
                None => (Verdict::Verified, json!({ "equal": true })),
                Some(w) => (Verdict::Refuted, w),
            }
        }
        Command::Nzd { f, ideal } => {
            let i = ws.ideal(ideal)?;
            hash(ideal, i)?;
            let o = is_nzd(&ws.eval(ring, f)?, i)?;
            (verdict_if(matches!(o, NzdOutcome::Nzd { .. })), to_json(&o))
        }
        Command::Regular { seq, modulo } => {
            let base = match modulo {
                Some(m) => ws.ideal(m)?.clone(),
                None => IdealHandle::zero(spec).with_budget(cfg.gb_steps),
            };
            hash(modulo.as_deref().unwrap_or("0"), &base)?;
            let o = is_regular_sequence(&ws.tuple(ring, seq)?, &base)?;
            (verdict_if(o.is_regular()), to_json(&o))
        }
        Command::KoszulExact { pair } => {
            let [x, y] = pair2(ws.tuple(ring, pair)?)?;
            let o = koszul2_exactness(spec, &x, &y, cfg.gb_steps)?;
            (verdict_if(o.is_exact()), to_json(&o))
        }
        Command::Syzygies { seq } => {
            let f = ws.tuple(ring, seq)?;
            let m = syzygies(spec, &f, cfg.gb_steps)?;
            let rows: Vec<String> = m.rows().iter().map(|r| r.to_string()).collect();
            (Verdict::Verified, json!({ "generators": texts(&f), "syzygies": rows }))
        }
        Command::Dimension { ideal } => {
            let i = ws.ideal(ideal)?;
            hash(ideal, i)?;
            (Verdict::Verified, to_json(&dimension_height(i)?))
        }
        Command::Lci { ideal } => {
            let i = ws.ideal(ideal)?;
            hash(ideal, i)?;
            let o = lci_certificate(i)?;
            (verdict_if(o.is_certified()), to_json(&o))
        }
        Command::Resolution { ideal, length } => {
            let i = ws.ideal(ideal)?;
            hash(ideal, i)?;
            let r = free_resolution(i, *length)?;
            if !r.is_complex(cfg.gb_steps)? {
                return Err(AlgebraError::Internal("resolution maps do not compose to zero".into()));
            }
            let maps: Vec<String> = r.maps().iter().map(|m| m.to_string()).collect();
            (Verdict::Verified, json!({ "betti": r.betti(), "maps": maps, "complete": r.is_complete() }))
        }
        Command::Ext { ideal, index } => {
            let i = ws.ideal(ideal)?;
            hash(ideal, i)?;
            let e = ext_module(i, *index)?;
            let fitting: Vec<Vec<String>> = e.fitting.ideals().iter().map(|f| texts(f.gens())).collect();
            (
                Verdict::Verified,
                json!({
                    "index": e.index,
                    "presentation": e.presentation.to_string(),
                    "fitting": fitting,
                    "locally_cyclic": e.locally_cyclic,
                }),
            )
        }
        Command::ModSquare { ideal, with } => {
            let i = ws.ideal(ideal)?;
            hash(ideal, i)?;
            let c = ws.tuple(ring, with)?;
            match first_outside(i, &c)? {
                Some(e) => (Verdict::Refuted, json!({ "not_in_ideal": e.to_string() })),
                None => {
                    let o = mod_square_generation(i, &c)?;
                    (verdict_if(o.generates()), to_json(&o))
                }
            }
        }
        Command::Regularize { ideal, with } => {
            let i = ws.ideal(ideal)?;
            hash(ideal, i)?;
            let gens = ws.tuple(ring, with)?;
            if !i.derive(gens.clone()).equals(i)? {
                (Verdict::Refuted, json!({ "generates": false }))
            } else {
                match regularize_generators(i, &gens, cfg)? {
                    o @ RegularizeOutcome::Regularized(_) => (Verdict::Verified, to_json(&o)),
                    o => (Verdict::Inconclusive, to_json(&o)),
                }
            }
        }
        Command::Ci { ideal, with } => {
            let i = ws.ideal(ideal)?;
            hash(ideal, i)?;
            let c = pair2(ws.tuple(ring, with)?)?;
            if let Some(e) = first_outside(i, &c)? {
                (Verdict::Refuted, json!({ "not_in_ideal": e.to_string() }))
            } else {
                match mod_square_generation(i, &c)? {
                    f @ ModSquareOutcome::Fails { .. } => (Verdict::Refuted, json!({ "mod_square": to_json(&f) })),
                    ModSquareOutcome::Generates { .. } => match ci_from_free_conormal(i, c, cfg)? {
                        o @ CiOutcome::Certified(_) => (Verdict::Verified, to_json(&o)),
                        o => (Verdict::Inconclusive, to_json(&o)),
                    },
                }
            }
        }
        Command::Stci { ideal, with } => {
            let i = ws.ideal(ideal)?;
            hash(ideal, i)?;
            let o = stci_verify(i, pair2(ws.tuple(ring, with)?)?)?;
            (verdict_if(matches!(o, StciOutcome::Certified(_))), to_json(&o))
        }
        Command::StciSearch { ideal, hint } => {
            let i = ws.ideal(ideal)?;
            hash(ideal, i)?;
            let dim = dimension_height(i)?;
            if dim.height != Some(2) {
                (Verdict::Refuted, json!({ "height": dim.height }))
            } else {
                let hint = hint.as_ref().map(|h| ws.tuple(ring, h).and_then(pair2)).transpose()?;
                match stci_search(i, hint, cfg)? {
                    o @ SearchOutcome::Found(_) => (Verdict::Verified, to_json(&o)),
                    o => (Verdict::Inconclusive, to_json(&o)),
                }
            }
        }
    };
    Ok(Outcome { verdict, witnesses, hashes })
}

/// Run one check against an evaluated workspace. Budget exhaustion becomes
/// an inconclusive certificate; other errors are input errors.
pub fn run_command(
    ws: &Workspace,
    session_text: &str,
    stmt: &Stmt,
    cfg: &PipelineConfig,
) -> Result<CertificateFile> {
    let Stmt::Check { command, ring, .. } = stmt else {
        return Err(AlgebraError::InvalidInput("not a check statement".into()));
    };
    let start = Instant::now();
    let outcome = match dispatch(ws, command, ring, cfg) {
        Ok(o) => o,
        Err(AlgebraError::Budget(b)) => Outcome {
            verdict: Verdict::Inconclusive,
            witnesses: json!({ "budget": {
                "steps": b.steps,
                "limit": b.limit,
                "pending_pairs": b.pending_pairs,
                "partial_basis_size": b.partial_basis.len(),
            }}),
            hashes: BTreeMap::new(),
        },
        Err(e) => return Err(e),
    };
    let mut file = CertificateFile {
        schema: SCHEMA.to_string(),
        session: session_text.to_string(),
        command: stmt.to_string(),
        ring: ws.spec(ring)?.to_string(),
        verdict: outcome.verdict,
        witnesses: outcome.witnesses,
        seed: cfg.seed,
        budgets: Budgets { gb_steps: cfg.gb_steps, trials: cfg.trials, degree_bound: cfg.degree_bound },
        gb_hashes: outcome.hashes,
        timings: Timings { micros: start.elapsed().as_micros() as u64 },
        digest: String::new(),
    };
    file.digest = file.compute_digest();
    Ok(file)
}

/// Result of one `check` in a session.
#[derive(Debug)]
pub struct CommandRun {
    pub command: String,
    pub result: Result<CertificateFile>,
}

impl CommandRun {
    pub fn exit_code(&self) -> i32 {
        match &self.result {
            Ok(c) => c.verdict.exit_code(),
            Err(_) => EXIT_INPUT_ERROR,
        }
    }
}

/// Run every check of a session in declaration order.
pub fn run_session(session: &Session, cfg: &PipelineConfig) -> Result<Vec<CommandRun>> {
    let ws = Workspace::build(session, cfg.gb_steps)?;
    let mut scope = String::new();
    let mut out = Vec::new();
    for stmt in &session.stmts {
        match stmt {
            Stmt::Check { .. } => out.push(CommandRun {
                command: stmt.to_string(),
                result: run_command(&ws, &scope, stmt, cfg),
            }),
            decl => {
                scope.push_str(&decl.to_string());
                scope.push('\n');
            }
        }
    }
    Ok(out)
}

/// The worst exit code over all runs: input error > inconclusive > refuted > verified.
pub fn aggregate_exit_code(runs: &[CommandRun]) -> i32 {
    runs.iter().map(CommandRun::exit_code).max().unwrap_or(0)
}

fn first_difference(a: &CertificateFile, b: &CertificateFile) -> String {
    let (va, vb) = (to_json(a), to_json(b));
    if let (Value::Object(ma), Value::Object(mb)) = (&va, &vb) {
        for (k, v) in ma {
            if k != "timings" && k != "digest" && mb.get(k) != Some(v) {
                return k.clone();
            }
        }
    }
    "digest".into()
}

/// Check the digest, re-run the command and compare everything but timings.
pub fn replay(file: &CertificateFile) -> Result<Verdict, ReplayError> {
    if file.schema != SCHEMA {
        return Err(ReplayError::Schema(file.schema.clone()));
    }
    let computed = file.compute_digest();
    if computed != file.digest {
        return Err(ReplayError::Digest { stored: file.digest.clone(), computed });
    }
    let session = parse_session(&format!("{}{}\n", file.session, file.command))?;
    let cfg = file.config();
    let ws = Workspace::build(&session, cfg.gb_steps)?;
    let stmt = session
        .stmts
        .iter()
        .rfind(|s| matches!(s, Stmt::Check { .. }))
        .ok_or_else(|| ReplayError::Malformed("no command".into()))?;
    let again = run_command(&ws, &file.session, stmt, &cfg)?;
    if again.digest != file.digest {
        return Err(ReplayError::Mismatch { field: first_difference(file, &again) });
    }
    Ok(again.verdict)
}

pub fn replay_json(text: &str) -> Result<Verdict, ReplayError> {
    replay(&CertificateFile::from_json(text)?)
}
