use std::collections::HashMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use closure_core::closure::presets::{axiom_instances, lemma_instances};
use closure_core::closure::random::{random_axiom_instance, random_lemma_instances};
use closure_core::closure::{
    axiom_instance_check, lemma_suite_check, CheckStatus, ClosureOracle, FrobeniusClosure, Oracle,
    TightClosure, Trivial, Verdict,
};
use closure_core::expr::Expr;
use closure_core::phantom::{
    alpha_avoids_mm, canonical_diagram, modification_sequence, modify, phantom_check,
    sop_certificate_verify, splitting, SopRelation, SopSource,
};
use closure_core::solidity::is_solid;
use closure_core::{
    is_partial_sop, FpModule, FreeElem, FreeSubmodule, Matrix, ModuleMap, PolyRing, Polynomial,
    QuotientRing,
};

use crate::ast::*;
use crate::parser::ParseError;

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Replaces the bound of every Frobenius and tight oracle.
    pub emax: Option<u32>,
    /// Seed for randomized axiom suites.
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub command: String,
    pub position: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_e: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_q: Option<u64>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub certificate: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expect: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expect_met: Option<bool>,
    pub wall_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub commands: usize,
    pub errors: usize,
    pub violations: usize,
    pub unmet_expectations: usize,
    pub exit_code: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    fn new(records: Vec<Record>) -> Self {
        let errors = records.iter().filter(|r| r.verdict == "error").count();
        let violations = records.iter().filter(|r| r.verdict == "violation").count();
        let unmet = records.iter().filter(|r| r.expect_met == Some(false)).count();
        let exit_code = if errors > 0 {
            2
        } else if violations > 0 || unmet > 0 {
            1
        } else {
            0
        };
        Report {
            summary: Summary {
                commands: records.len(),
                errors,
                violations,
                unmet_expectations: unmet,
                exit_code,
            },
            records,
        }
    }

    pub fn parse_error(e: &ParseError) -> Self {
        Report::new(vec![Record {
            command: String::new(),
            position: e.pos.to_string(),
            verdict: "error".into(),
            bound_e: None,
            witness_q: None,
            certificate: if e.expected.is_empty() { Value::Null } else { json!({ "expected": e.expected }) },
            error: Some(e.message.clone()),
            expect: None,
            expect_met: None,
            wall_ms: 0,
        }])
    }

    pub fn exit_code(&self) -> i32 {
        self.summary.exit_code
    }

    /// Copy with every `wall_ms` set to 0, for comparisons across runs.
    pub fn masked(&self) -> Report {
        let mut r = self.clone();
        for rec in &mut r.records {
            rec.wall_ms = 0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!("{} [{}] {}", r.position, r.verdict, r.command));
            if let Some(e) = r.bound_e {
                out.push_str(&format!(" bound_e={e}"));
            }
            if let Some(q) = r.witness_q {
                out.push_str(&format!(" witness_q={q}"));
            }
            if let Some(m) = r.expect_met {
                out.push_str(if m { " (as expected)" } else { " (EXPECTATION NOT MET)" });
            }
            if let Some(e) = &r.error {
                out.push_str(&format!(": {e}"));
            }
            out.push('\n');
        }
        out
    }
}

type RResult<T> = Result<T, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

struct Outcome {
    verdict: String,
    bound_e: Option<u32>,
    witness_q: Option<u64>,
    certificate: Value,
}

impl Outcome {
    fn from_verdict(v: &Verdict, certificate: Value) -> Self {
        Outcome {
            verdict: v.label().into(),
            bound_e: v.bound_e(),
            witness_q: v.witness_q(),
            certificate,
        }
    }
}

#[derive(Default)]
struct Env {
    ring: Option<QuotientRing>,
    ideals: HashMap<String, Vec<Polynomial>>,
    modules: HashMap<String, FpModule>,
    elements: HashMap<String, Vec<Polynomial>>,
    maps: HashMap<String, ModuleMap>,
    oracles: HashMap<String, Oracle>,
}

pub fn run(session: &Session, opts: &RunOptions) -> Report {
    let mut env = Env::default();
    let mut records = Vec::new();
    for stmt in &session.stmts {
        let start = Instant::now();
        let result = env.exec(&stmt.kind, opts);
        let wall_ms = start.elapsed().as_millis() as u64;
        let rec = match result {
            Ok(None) => continue,
            Ok(Some(o)) => {
                let expect = match &stmt.kind {
                    StmtKind::Check(c) => c.expect.clone(),
                    _ => None,
                };
                Record {
                    command: stmt.kind.to_string(),
                    position: stmt.pos.to_string(),
                    expect_met: expect.as_ref().map(|e| *e == o.verdict),
                    expect,
                    verdict: o.verdict,
                    bound_e: o.bound_e,
                    witness_q: o.witness_q,
                    certificate: o.certificate,
                    error: None,
                    wall_ms,
                }
            }
            Err(message) => error_record(stmt, message, wall_ms),
        };
        records.push(rec);
    }
    Report::new(records)
}

fn error_record(stmt: &Stmt, message: String, wall_ms: u64) -> Record {
    let expect = match &stmt.kind {
        StmtKind::Check(c) => c.expect.clone(),
        _ => None,
    };
    Record {
        command: stmt.kind.to_string(),
        position: stmt.pos.to_string(),
        verdict: "error".into(),
        bound_e: None,
        witness_q: None,
        certificate: Value::Null,
        error: Some(message),
        expect_met: expect.as_ref().map(|e| e == "error"),
        expect,
        wall_ms,
    }
}

fn rows_json(ring: &QuotientRing, m: &Matrix) -> Value {
    json!(m
        .rows()
        .iter()
        .map(|r| r.coords().iter().map(|c| ring.display(c)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn elem_json(ring: &QuotientRing, e: &FreeElem) -> Value {
    json!(e.coords().iter().map(|c| ring.display(c)).collect::<Vec<_>>())
}

fn status_counts<'a>(statuses: impl Iterator<Item = &'a CheckStatus>) -> Value {
    let mut counts: Vec<(&str, usize)> = vec![
        ("holds", 0),
        ("vacuous", 0),
        ("undetermined", 0),
        ("not_instance_checkable", 0),
        ("violation", 0),
    ];
    for s in statuses {
        let i = match s {
            CheckStatus::Holds => 0,
            CheckStatus::Vacuous => 1,
            CheckStatus::Undetermined => 2,
            CheckStatus::NotInstanceCheckable => 3,
            CheckStatus::Violation => 4,
        };
        counts[i].1 += 1;
    }
    let mut map = serde_json::Map::new();
    for (k, v) in counts {
        map.insert(k.into(), json!(v));
    }
    Value::Object(map)
}

impl Env {
    fn ring(&self) -> RResult<&QuotientRing> {
        self.ring.as_ref().ok_or_else(|| "no ring declared".to_string())
    }

    fn poly(&self, e: &Expr) -> RResult<Polynomial> {
        let ring = self.ring()?;
        Ok(ring.reduce(&e.eval(ring.base()).map_err(err)?))
    }

    fn polys(&self, es: &[Expr]) -> RResult<Vec<Polynomial>> {
        es.iter().map(|e| self.poly(e)).collect()
    }

    fn module(&self, m: &ModExpr) -> RResult<FpModule> {
        let ring = self.ring()?;
        match m {
            ModExpr::Named(n) => self.modules.get(n).cloned().ok_or_else(|| format!("unknown module {n}")),
            ModExpr::Free(n) => Ok(FpModule::free(ring, *n as usize)),
            ModExpr::Coker(rows) => FpModule::new(ring, self.matrix(rows)?).map_err(err),
        }
    }

    fn matrix(&self, rows: &[Vec<Expr>]) -> RResult<Matrix> {
        let ring = self.ring()?;
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err("matrix rows have different lengths".into());
        }
        let mut entries = Vec::new();
        for r in rows {
            entries.extend(self.polys(r)?);
        }
        Matrix::new(ring, rows.len(), ncols, entries).map_err(err)
    }

    /// The rank a vector expression fixes by itself, if any.
    fn vec_rank(&self, v: &VecExpr) -> Option<usize> {
        match v {
            VecExpr::Literal(c) => Some(c.len()),
            VecExpr::Named(n) => self.elements.get(n).map(|c| c.len()),
        }
    }

    fn vector(&self, v: &VecExpr, rank: usize) -> RResult<FreeElem> {
        let ring = self.ring()?;
        let coords = match v {
            VecExpr::Literal(c) => self.polys(c)?,
            VecExpr::Named(n) => match self.elements.get(n) {
                Some(c) => c.clone(),
                None => {
                    let i: usize = n
                        .strip_prefix('e')
                        .and_then(|d| d.parse().ok())
                        .ok_or_else(|| format!("unknown element {n}"))?;
                    if i == 0 || i > rank {
                        return Err(format!("basis vector {n} out of range for rank {rank}"));
                    }
                    return Ok(FreeElem::basis(ring, rank, i - 1));
                }
            },
        };
        if coords.len() != rank {
            return Err(format!("{v} has {} coordinates, expected {rank}", coords.len()));
        }
        Ok(FreeElem::new(ring, coords))
    }

    fn oracle(&self, name: &str) -> RResult<&Oracle> {
        self.oracles.get(name).ok_or_else(|| format!("unknown oracle {name}"))
    }

    fn exec(&mut self, stmt: &StmtKind, opts: &RunOptions) -> RResult<Option<Outcome>> {
        match stmt {
            StmtKind::Ring(r) => {
                if self.ring.is_some() {
                    return Err("a session has exactly one ring".into());
                }
                let vars: Vec<&str> = r.vars.iter().map(|s| s.as_str()).collect();
                let base = PolyRing::new(r.p, &vars, r.order.unwrap_or_default()).map_err(err)?;
                let gens = r.ideal.iter().map(|e| e.eval(&base)).collect::<Result<Vec<_>, _>>().map_err(err)?;
                // With no quotient ideal the ring is a polynomial ring, hence a domain.
                self.ring = Some(if gens.is_empty() {
                    QuotientRing::polynomial(base)
                } else {
                    QuotientRing::new(base, gens, r.domain).map_err(err)?
                });
                Ok(None)
            }
            StmtKind::Ideal { name, gens } => {
                let g = self.polys(gens)?;
                self.ideals.insert(name.clone(), g);
                Ok(None)
            }
            StmtKind::Module { name, module } => {
                let m = self.module(module)?;
                self.modules.insert(name.clone(), m);
                Ok(None)
            }
            StmtKind::Element { name, vec } => {
                let coords = match vec {
                    VecExpr::Literal(c) => self.polys(c)?,
                    VecExpr::Named(n) => self.elements.get(n).cloned().ok_or_else(|| format!("unknown element {n}"))?,
                };
                self.elements.insert(name.clone(), coords);
                Ok(None)
            }
            StmtKind::Map { name, source, target, matrix } => {
                let (s, t) = (self.module(source)?, self.module(target)?);
                let f = ModuleMap::new(&s, &t, self.matrix(matrix)?).map_err(err)?;
                self.maps.insert(name.clone(), f);
                Ok(None)
            }
            StmtKind::Oracle { name, oracle } => {
                let ring = self.ring()?.clone();
                let bound = |e: u64| -> RResult<u32> {
                    opts.emax.map_or_else(|| u32::try_from(e).map_err(|_| format!("emax {e} is too large")), Ok)
                };
                let o = match oracle {
                    OracleExpr::Triv => Oracle::Trivial(Trivial),
                    OracleExpr::Fc { emax } => Oracle::Frobenius(FrobeniusClosure::new(bound(*emax)?).map_err(err)?),
                    OracleExpr::Tc { c, testelt, emax } => Oracle::Tight(
                        TightClosure::new(&ring, self.poly(c)?, *testelt, bound(*emax)?).map_err(err)?,
                    ),
                };
                self.oracles.insert(name.clone(), o);
                Ok(None)
            }
            StmtKind::Check(c) => self.check(c, opts).map(Some),
        }
    }

    fn check(&self, c: &Check, opts: &RunOptions) -> RResult<Outcome> {
        let ring = self.ring()?.clone();
        let oracle = self.oracle(&c.oracle)?;
        let desc = serde_json::to_value(oracle.descriptor()).map_err(err)?;
        match &c.kind {
            CheckKind::Member { u, sub, within } => {
                let module = match within {
                    Some(m) => Some(self.module(m)?),
                    None => None,
                };
                let spans: Vec<&VecExpr> = match sub {
                    SubExpr::Span(v) => v.iter().collect(),
                    SubExpr::Named(_) => Vec::new(),
                };
                let rank = match (&module, sub) {
                    (Some(m), _) => m.rank(),
                    (None, SubExpr::Named(_)) => 1,
                    (None, SubExpr::Span(_)) => std::iter::once(u)
                        .chain(spans.iter().copied())
                        .find_map(|v| self.vec_rank(v))
                        .ok_or("cannot infer the ambient rank; use a literal vector")?,
                };
                let gens: Vec<FreeElem> = match sub {
                    SubExpr::Named(n) => {
                        if rank != 1 {
                            return Err(format!("ideal {n} used in rank {rank}"));
                        }
                        self.ideals
                            .get(n)
                            .ok_or_else(|| format!("unknown ideal {n}"))?
                            .iter()
                            .map(|g| FreeElem::new(&ring, vec![g.clone()]))
                            .collect()
                    }
                    SubExpr::Span(v) => v.iter().map(|x| self.vector(x, rank)).collect::<RResult<_>>()?,
                };
                let uu = self.vector(u, rank)?;
                let v = match &module {
                    Some(m) => oracle.member_in(m, &uu, &gens),
                    None => FreeSubmodule::new(&ring, rank, gens).and_then(|n| oracle.member(&uu, &n)),
                }
                .map_err(err)?;
                Ok(Outcome::from_verdict(&v, json!({ "oracle": desc, "detail": v })))
            }
            CheckKind::Phantom { module, via } => {
                let m = self.module(module)?;
                let a = self.vector(via, m.rank())?;
                let d = canonical_diagram(&m, &a).map_err(err)?;
                let v = phantom_check(&d, oracle).map_err(err)?;
                let avoids = alpha_avoids_mm(&d).map_err(err)?;
                let mut cert = json!({
                    "oracle": desc,
                    "nu": rows_json(&ring, d.nu()),
                    "nu_tilde": elem_json(&ring, d.nu_tilde()),
                    "alpha_avoids_mM": avoids,
                    "detail": v,
                });
                if v.is_proved_in() && matches!(v, Verdict::In { .. }) {
                    if let Some(rho) = splitting(&d).map_err(err)? {
                        cert["retraction"] = elem_json(&ring, &rho);
                    }
                }
                let mut out = Outcome::from_verdict(&v, cert);
                if v.is_positive() && !avoids {
                    out.verdict = "violation".into();
                }
                Ok(out)
            }
            CheckKind::Modify { module, via, along, relation } => {
                let m = self.module(module)?;
                let a = self.vector(via, m.rank())?;
                let params = self.polys(along)?;
                match relation {
                    Some(rel) => {
                        let coeffs = rel.iter().map(|x| self.vector(x, m.rank())).collect::<RResult<Vec<_>>>()?;
                        let rel = SopRelation::new(&m, params, coeffs).map_err(err)?;
                        let d = canonical_diagram(&m, &a).map_err(err)?;
                        let base = phantom_check(&d, oracle).map_err(err)?;
                        let res = modify(&m, &d, &rel).map_err(err)?;
                        let v = phantom_check(&res.diagram, oracle).map_err(err)?;
                        let avoids = alpha_avoids_mm(&res.diagram).map_err(err)?;
                        let cert = json!({
                            "oracle": desc,
                            "presentation": rows_json(&ring, res.module.presentation()),
                            "alpha": elem_json(&ring, &res.alpha),
                            "relation": rel.display(&ring),
                            "parameters_form_sop": rel.sequence_certificate().map(|c| c.is_partial_sop),
                            "base_verdict": base.label(),
                            "alpha_avoids_mM": avoids,
                            "detail": v,
                        });
                        let mut out = Outcome::from_verdict(&v, cert);
                        if (base.is_positive() && v.is_not_in()) || (v.is_positive() && !avoids) {
                            out.verdict = "violation".into();
                        }
                        Ok(out)
                    }
                    None => {
                        let rep = modification_sequence(&m, &a, oracle, &SopSource::Explicit(vec![params]), 1)
                            .map_err(err)?;
                        let step = rep.steps.first().ok_or_else(|| {
                            rep.stopped.clone().unwrap_or_else(|| "no relation found".into())
                        })?;
                        let mut out = Outcome::from_verdict(&step.verdict, json!({ "oracle": desc, "sequence": rep }));
                        if !rep.all_ok() {
                            out.verdict = "violation".into();
                        }
                        Ok(out)
                    }
                }
            }
            CheckKind::Sop { module, via, along, relation } => {
                let m = self.module(module)?;
                let a = self.vector(via, m.rank())?;
                let params = self.polys(along)?;
                let coeffs = relation.iter().map(|x| self.vector(x, m.rank())).collect::<RResult<Vec<_>>>()?;
                let rel = SopRelation::unverified(params, coeffs);
                let d = canonical_diagram(&m, &a).map_err(err)?;
                let rep = sop_certificate_verify(&m, &d, &rel, oracle).map_err(err)?;
                let mut out = Outcome::from_verdict(&rep.verdict, json!({ "oracle": desc, "report": rep }));
                if !rep.consistent {
                    out.verdict = "violation".into();
                }
                Ok(out)
            }
            CheckKind::Solid { module } => {
                let m = self.module(module)?;
                let rep = is_solid(&m).map_err(err)?;
                Ok(Outcome {
                    verdict: if rep.is_solid { "in" } else { "not_in" }.into(),
                    bound_e: None,
                    witness_q: None,
                    certificate: json!(rep),
                })
            }
            CheckKind::Axioms(source) => {
                let (instances, lemmas) = match source {
                    AxiomSource::Preset => (
                        axiom_instances(&ring).map_err(err)?,
                        lemma_instances(&ring).map_err(err)?,
                    ),
                    AxiomSource::Random(n) => {
                        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                        let inst = (0..*n)
                            .map(|_| random_axiom_instance(&ring, &mut rng))
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(err)?;
                        let lem = random_lemma_instances(&ring, &mut rng, *n as usize).map_err(err)?;
                        (inst, lem)
                    }
                };
                let mut statuses = Vec::new();
                for inst in &instances {
                    let rep = axiom_instance_check(oracle, inst).map_err(err)?;
                    statuses.extend(rep.records.iter().map(|r| r.status));
                }
                let lrep = lemma_suite_check(oracle, &ring, &lemmas).map_err(err)?;
                statuses.extend(lrep.records.iter().map(|r| r.status));
                let violations = statuses.iter().filter(|s| **s == CheckStatus::Violation).count();
                Ok(Outcome {
                    verdict: if violations == 0 { "consistent" } else { "violation" }.into(),
                    bound_e: None,
                    witness_q: None,
                    certificate: json!({
                        "oracle": desc,
                        "instances": instances.len(),
                        "checks": statuses.len(),
                        "status_counts": status_counts(statuses.iter()),
                    }),
                })
            }
            CheckKind::Dim { params } => {
                let xs = self.polys(params)?;
                let cert = if xs.is_empty() {
                    json!({ "ring_dimension": ring.dimension() })
                } else {
                    json!(is_partial_sop(&ring, &xs).map_err(err)?)
                };
                Ok(Outcome {
                    verdict: "consistent".into(),
                    bound_e: None,
                    witness_q: None,
                    certificate: cert,
                })
            }
        }
    }
}
