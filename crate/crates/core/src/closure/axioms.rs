use serde::Serialize;

use super::{ClosureOracle, Descriptor, Verdict};
use crate::error::{Error, Result};
use crate::modalg::{lift, module_member, FpModule, FreeElem, FreeSubmodule, ModuleMap};
use crate::poly::Polynomial;
use crate::ring::{is_partial_sop, QuotientRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Extension,
    Idempotence,
    OrderPreserving,
    Functorial,
    SemiResidual,
    MaximalIdealClosed,
    ColonCapturing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Holds,
    /// The hypothesis came out "not in".
    Vacuous,
    /// Some verdict involved was unknown.
    Undetermined,
    NotInstanceCheckable,
    Violation,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub axiom: Axiom,
    pub statement: String,
    pub status: CheckStatus,
    /// Verdict labels of the hypothesis and conclusion, in order.
    pub verdicts: Vec<&'static str>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub backend: Descriptor,
    pub records: Vec<CheckRecord>,
}

impl AxiomReport {
    pub fn violations(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.status == CheckStatus::Violation)
            .count()
    }

    pub fn is_consistent(&self) -> bool {
        self.violations() == 0
    }

    pub fn status_of(&self, axiom: Axiom) -> Vec<CheckStatus> {
        self.records
            .iter()
            .filter(|r| r.axiom == axiom)
            .map(|r| r.status)
            .collect()
    }
}

/// Generalized colon-capturing data: `x_1, ..., x_{k+1}` part of a system of
/// parameters, `f: M → R/(x_1..x_k)` onto, `f(v) = x_{k+1}`, and a test
/// element `u` of `ker f`.
#[derive(Clone, Debug)]
pub struct ColonInstance {
    pub params: Vec<Polynomial>,
    pub map: ModuleMap,
    pub v: FreeElem,
    pub u: FreeElem,
}

/// One instance of the quantifiers in the axioms. Elements are given as
/// vectors in the free cover of `module`.
#[derive(Clone, Debug)]
pub struct AxiomInstance {
    pub label: String,
    pub module: FpModule,
    pub n: Vec<FreeElem>,
    pub u: FreeElem,
    /// Extra generators: `N ⊆ N + larger` for order preservation.
    pub larger: Vec<FreeElem>,
    /// Tested against `N + Ru` for idempotence.
    pub second: Option<FreeElem>,
    /// `f: M → W` for functoriality.
    pub map: Option<ModuleMap>,
    pub colon: Option<ColonInstance>,
    /// Also run the maximal-ideal check on the ring.
    pub check_max_ideal: bool,
}

impl AxiomInstance {
    pub fn new(label: impl Into<String>, module: FpModule, n: Vec<FreeElem>, u: FreeElem) -> Self {
        Self {
            label: label.into(),
            module,
            n,
            u,
            larger: Vec::new(),
            second: None,
            map: None,
            colon: None,
            check_max_ideal: false,
        }
    }
}

fn record(axiom: Axiom, statement: String, status: CheckStatus, verdicts: &[&Verdict]) -> CheckRecord {
    CheckRecord {
        axiom,
        statement,
        status,
        verdicts: verdicts.iter().map(|v| v.label()).collect(),
    }
}

/// Status of "hypothesis in ⇒ conclusion not refuted".
fn implication(hyp: &Verdict, concl: &Verdict) -> CheckStatus {
    if hyp.is_not_in() {
        CheckStatus::Vacuous
    } else if hyp.is_unknown() {
        CheckStatus::Undetermined
    } else if concl.is_not_in() {
        CheckStatus::Violation
    } else if concl.is_unknown() {
        CheckStatus::Undetermined
    } else {
        CheckStatus::Holds
    }
}

/// Status of "the two verdicts agree" for statements that are equivalences.
pub(crate) fn agreement(a: &Verdict, b: &Verdict) -> CheckStatus {
    if a.contradicts(b) {
        CheckStatus::Violation
    } else if a.is_unknown() || b.is_unknown() {
        CheckStatus::Undetermined
    } else {
        CheckStatus::Holds
    }
}

fn check_ranks(m: &FpModule, elems: &[&FreeElem]) -> Result<()> {
    for e in elems {
        if e.rank() != m.rank() {
            return Err(Error::RankMismatch {
                expected: m.rank(),
                found: e.rank(),
            });
        }
    }
    Ok(())
}

/// `𝔪^cl = 𝔪` in `R`: each variable is in, and `1` is not.
pub fn max_ideal_check(oracle: &dyn ClosureOracle, ring: &QuotientRing) -> Result<Vec<CheckRecord>> {
    let gens: Vec<FreeElem> = ring
        .base()
        .vars()
        .into_iter()
        .map(|x| FreeElem::new(ring, vec![x]))
        .filter(|x| !x.is_zero())
        .collect();
    let m = FreeSubmodule::new(ring, 1, gens.clone())?;
    let mut out = Vec::new();
    for x in &gens {
        let v = oracle.member(x, &m)?;
        let status = if v.is_positive() {
            CheckStatus::Holds
        } else {
            CheckStatus::Violation
        };
        out.push(record(
            Axiom::MaximalIdealClosed,
            format!("{} in closure of the maximal ideal", x.display(ring)),
            status,
            &[&v],
        ));
    }
    let one = FreeElem::basis(ring, 1, 0);
    let v = oracle.member(&one, &m)?;
    let status = if v.is_positive() {
        CheckStatus::Violation
    } else if v.is_not_in() {
        CheckStatus::Holds
    } else {
        CheckStatus::Undetermined
    };
    out.push(record(
        Axiom::MaximalIdealClosed,
        "1 not in closure of the maximal ideal".into(),
        status,
        &[&v],
    ));
    Ok(out)
}

fn colon_check(oracle: &dyn ClosureOracle, inst: &AxiomInstance, c: &ColonInstance) -> Result<CheckRecord> {
    let m = &inst.module;
    let ring = m.ring();
    if c.params.is_empty() {
        return Err(Error::Invalid("colon instance needs at least one parameter".into()));
    }
    if c.map.source().presentation() != m.presentation() {
        return Err(Error::Invalid("colon map must start at the instance module".into()));
    }
    check_ranks(m, &[&c.v, &c.u])?;
    let cert = is_partial_sop(ring, &c.params)?;
    if !cert.is_partial_sop {
        return Err(Error::Certificate(format!(
            "colon parameters are not part of a system of parameters ({})",
            cert.note
        )));
    }
    let k = c.params.len() - 1;
    let j: Vec<Polynomial> = c.params[..k].to_vec();
    let target = c.map.target();
    if target.rank() != 1 || !FreeSubmodule::new(ring, 1, j.iter().map(|x| FreeElem::new(ring, vec![x.clone()])).collect())?.same_span(target.relations())? {
        return Err(Error::Invalid("colon map must land in R/(x_1..x_k)".into()));
    }
    // f onto: 1 is in the image modulo J.
    let mut images = c.map.matrix().columns();
    images.extend(target.relations().generators().iter().cloned());
    if lift(ring, &FreeElem::basis(ring, 1, 0), &images)?.is_none() {
        return Err(Error::Certificate("colon map is not onto".into()));
    }
    let xk1 = FreeElem::new(ring, vec![c.params[k].clone()]);
    if !target.elems_equal(&c.map.apply(&c.v)?, &xk1)? {
        return Err(Error::Certificate("f(v) is not x_{k+1} modulo (x_1..x_k)".into()));
    }
    let statement = format!(
        "{} in cl(Rv) and in ker f implies in cl(Jv)",
        c.u.display(ring)
    );
    if !target.is_zero_elem(&c.map.apply(&c.u)?)? {
        return Ok(CheckRecord {
            axiom: Axiom::ColonCapturing,
            statement: format!("{statement}: u not in ker f"),
            status: CheckStatus::Vacuous,
            verdicts: Vec::new(),
        });
    }
    let hyp = oracle.member_in(m, &c.u, &[c.v.clone()])?;
    let jv: Vec<FreeElem> = j.iter().map(|x| c.v.scale(ring, x)).collect();
    let concl = oracle.member_in(m, &c.u, &jv)?;
    Ok(record(
        Axiom::ColonCapturing,
        statement,
        implication(&hyp, &concl),
        &[&hyp, &concl],
    ))
}

/// Checks every axiom the instance supplies data for. A violation is
/// recorded only when definite verdicts contradict the axiom.
pub fn axiom_instance_check(oracle: &dyn ClosureOracle, inst: &AxiomInstance) -> Result<AxiomReport> {
    let m = &inst.module;
    let ring = m.ring();
    let mut all: Vec<&FreeElem> = inst.n.iter().chain(&inst.larger).collect();
    all.push(&inst.u);
    all.extend(inst.second.as_ref());
    check_ranks(m, &all)?;
    let mut records = Vec::new();
    let u_show = inst.u.display(ring);

    // (1) extension
    for g in &inst.n {
        let v = oracle.member_in(m, g, &inst.n)?;
        let status = if v.is_positive() {
            CheckStatus::Holds
        } else {
            CheckStatus::Violation
        };
        records.push(record(
            Axiom::Extension,
            format!("generator {} in cl(N)", g.display(ring)),
            status,
            &[&v],
        ));
    }
    let v_u = oracle.member_in(m, &inst.u, &inst.n)?;
    if module_member(&inst.u, &m.lifted_submodule(&inst.n)?)? {
        let status = if v_u.is_positive() {
            CheckStatus::Holds
        } else {
            CheckStatus::Violation
        };
        records.push(record(
            Axiom::Extension,
            format!("{u_show} in N so in cl(N)"),
            status,
            &[&v_u],
        ));
    }

    // (2) idempotence
    if let Some(w) = &inst.second {
        let statement = format!("{u_show} in cl(N) and w in cl(N + Ru) imply w in cl(N)");
        if !oracle.proves_in() {
            records.push(CheckRecord {
                axiom: Axiom::Idempotence,
                statement,
                status: CheckStatus::NotInstanceCheckable,
                verdicts: vec![v_u.label()],
            });
        } else {
            let mut nu = inst.n.clone();
            nu.push(inst.u.clone());
            let v_wu = oracle.member_in(m, w, &nu)?;
            let v_w = oracle.member_in(m, w, &inst.n)?;
            let hyp = v_u.and(&v_wu);
            records.push(record(
                Axiom::Idempotence,
                statement,
                implication(&hyp, &v_w),
                &[&v_u, &v_wu, &v_w],
            ));
        }
    }

    // (3) order preserving
    if !inst.larger.is_empty() {
        let mut bigger = inst.n.clone();
        bigger.extend(inst.larger.iter().cloned());
        let v_big = oracle.member_in(m, &inst.u, &bigger)?;
        records.push(record(
            Axiom::OrderPreserving,
            format!("{u_show} in cl(N) implies in cl(N')"),
            implication(&v_u, &v_big),
            &[&v_u, &v_big],
        ));
    }

    // (4) functorial
    if let Some(f) = &inst.map {
        if f.source().presentation() != m.presentation() || f.source().ring() != ring {
            return Err(Error::Invalid("functoriality map must start at the instance module".into()));
        }
        let fu = f.apply(&inst.u)?;
        let fn_ = f.apply_all(&inst.n)?;
        let v_f = oracle.member_in(f.target(), &fu, &fn_)?;
        records.push(record(
            Axiom::Functorial,
            format!("{u_show} in cl(N) implies f(u) in cl(f(N))"),
            implication(&v_u, &v_f),
            &[&v_u, &v_f],
        ));
    }

    // (5) semi-residual
    {
        let quotient = m.quotient(&inst.n)?;
        let v_q = oracle.member_in(&quotient, &inst.u, &[])?;
        records.push(record(
            Axiom::SemiResidual,
            format!("class of {u_show} in cl(0) of M/N iff {u_show} in cl(N)"),
            agreement(&v_q, &v_u),
            &[&v_q, &v_u],
        ));
    }

    // (6) maximal ideal
    if inst.check_max_ideal {
        records.extend(max_ideal_check(oracle, ring)?);
    }

    // (7) colon capturing
    if let Some(c) = &inst.colon {
        records.push(colon_check(oracle, inst, c)?);
    }

    Ok(AxiomReport {
        backend: oracle.descriptor(),
        records,
    })
}
