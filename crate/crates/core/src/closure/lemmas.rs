use serde::Serialize;

use super::axioms::agreement;
use super::{ClosureOracle, Descriptor, Verdict};
use super::CheckStatus;
use crate::error::{Error, Result};
use crate::modalg::{direct_sum, FpModule, FreeElem, FreeSubmodule, ModuleMap};
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

/// `N' ⊆ N ⊆ M` and `u ∈ M`; `n` lists generators of `N` beyond `N'`.
#[derive(Clone, Debug)]
pub struct QuotientInstance {
    pub module: FpModule,
    pub n_prime: Vec<FreeElem>,
    pub n: Vec<FreeElem>,
    pub u: FreeElem,
}

#[derive(Clone, Debug)]
pub struct DirectSumInstance {
    pub m1: FpModule,
    pub n1: Vec<FreeElem>,
    pub u1: FreeElem,
    pub m2: FpModule,
    pub n2: Vec<FreeElem>,
    pub u2: FreeElem,
}

/// An isomorphism `φ: M → M'` with its inverse, and `u ∈ M`, `N ⊆ M`.
#[derive(Clone, Debug)]
pub struct IsomorphismInstance {
    pub iso: ModuleMap,
    pub inverse: ModuleMap,
    pub n: Vec<FreeElem>,
    pub u: FreeElem,
}

#[derive(Clone, Debug, Default)]
pub struct LemmaInstances {
    pub quotients: Vec<QuotientInstance>,
    pub sums: Vec<DirectSumInstance>,
    pub isomorphisms: Vec<IsomorphismInstance>,
    /// Elements of `R` tested against `0^cl_R`.
    pub zero_closure: Vec<Polynomial>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    QuotientTransfer,
    DirectSum,
    Isomorphism,
    ZeroClosure,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaRecord {
    pub lemma: Lemma,
    pub statement: String,
    pub status: CheckStatus,
    pub verdicts: Vec<&'static str>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub backend: Descriptor,
    pub records: Vec<LemmaRecord>,
}

impl LemmaReport {
    pub fn violations(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.status == CheckStatus::Violation)
            .count()
    }

    pub fn is_consistent(&self) -> bool {
        self.violations() == 0
    }
}

fn rec(lemma: Lemma, statement: String, status: CheckStatus, vs: &[&Verdict]) -> LemmaRecord {
    LemmaRecord {
        lemma,
        statement,
        status,
        verdicts: vs.iter().map(|v| v.label()).collect(),
    }
}

fn quotient_transfer(oracle: &dyn ClosureOracle, q: &QuotientInstance) -> Result<LemmaRecord> {
    let mut n = q.n_prime.clone();
    n.extend(q.n.iter().cloned());
    let whole = oracle.member_in(&q.module, &q.u, &n)?;
    let m_mod = q.module.quotient(&q.n_prime)?;
    let down = oracle.member_in(&m_mod, &q.u, &q.n)?;
    Ok(rec(
        Lemma::QuotientTransfer,
        format!(
            "{} in cl(N) iff its class is in cl(N/N')",
            q.u.display(q.module.ring())
        ),
        agreement(&whole, &down),
        &[&whole, &down],
    ))
}

fn direct_sum_check(oracle: &dyn ClosureOracle, d: &DirectSumInstance) -> Result<LemmaRecord> {
    let sum = direct_sum(&d.m1, &d.m2)?;
    let mut gens = sum.inclusions[0].apply_all(&d.n1)?;
    gens.extend(sum.inclusions[1].apply_all(&d.n2)?);
    let u = d.u1.concat(&d.u2);
    let v = oracle.member_in(&sum.module, &u, &gens)?;
    let v1 = oracle.member_in(&d.m1, &d.u1, &d.n1)?;
    let v2 = oracle.member_in(&d.m2, &d.u2, &d.n2)?;
    let both = v1.and(&v2);
    Ok(rec(
        Lemma::DirectSum,
        format!(
            "({}, {}) in cl(N1 + N2) iff both components are",
            d.u1.display(d.m1.ring()),
            d.u2.display(d.m2.ring())
        ),
        agreement(&v, &both),
        &[&v, &v1, &v2],
    ))
}

fn isomorphism_check(oracle: &dyn ClosureOracle, i: &IsomorphismInstance) -> Result<LemmaRecord> {
    let m = i.iso.source();
    let one = ModuleMap::identity(m);
    let other = ModuleMap::identity(i.iso.target());
    if !i.inverse.compose(&i.iso)?.equals(&one)? || !i.iso.compose(&i.inverse)?.equals(&other)? {
        return Err(Error::Certificate("maps are not mutually inverse".into()));
    }
    let v = oracle.member_in(m, &i.u, &i.n)?;
    let v_img = oracle.member_in(i.iso.target(), &i.iso.apply(&i.u)?, &i.iso.apply_all(&i.n)?)?;
    Ok(rec(
        Lemma::Isomorphism,
        format!("{} in cl(N) iff its image is in cl(φ(N))", i.u.display(m.ring())),
        agreement(&v, &v_img),
        &[&v, &v_img],
    ))
}

fn zero_closure_check(oracle: &dyn ClosureOracle, ring: &QuotientRing, u: &Polynomial) -> Result<LemmaRecord> {
    if !ring.is_domain() {
        return Err(Error::Invalid("0^cl_R = 0 is only checked over a domain".into()));
    }
    let elem = FreeElem::new(ring, vec![u.clone()]);
    let v = oracle.member(&elem, &FreeSubmodule::zero(ring, 1))?;
    let status = if elem.is_zero() {
        if v.is_positive() {
            CheckStatus::Holds
        } else {
            CheckStatus::Violation
        }
    } else if v.is_positive() {
        CheckStatus::Violation
    } else if v.is_not_in() {
        CheckStatus::Holds
    } else {
        CheckStatus::Undetermined
    };
    Ok(rec(
        Lemma::ZeroClosure,
        format!("{} in cl(0) iff it is 0", ring.display(u)),
        status,
        &[&v],
    ))
}

/// Checks the quotient, direct sum, isomorphism and zero-closure statements
/// on the supplied instances. Only definite contradictions are violations.
pub fn lemma_suite_check(
    oracle: &dyn ClosureOracle,
    ring: &QuotientRing,
    instances: &LemmaInstances,
) -> Result<LemmaReport> {
    let mut records = Vec::new();
    for q in &instances.quotients {
        records.push(quotient_transfer(oracle, q)?);
    }
    for d in &instances.sums {
        records.push(direct_sum_check(oracle, d)?);
    }
    for i in &instances.isomorphisms {
        records.push(isomorphism_check(oracle, i)?);
    }
    for u in &instances.zero_closure {
        records.push(zero_closure_check(oracle, ring, u)?);
    }
    Ok(LemmaReport {
        backend: oracle.descriptor(),
        records,
    })
}
