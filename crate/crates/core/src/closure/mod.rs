//! Closure operations as three-valued membership oracles.
//!
//! Tight closure quantifies over every Frobenius power, which no finite
//! computation can exhaust. Verdicts therefore distinguish proved membership,
//! membership witnessed up to a bound, refuted membership (only when the
//! multiplier is asserted to be a test element), and no conclusion.

mod axioms;
mod lemmas;
pub mod presets;
pub mod random;

pub use axioms::{
    axiom_instance_check, max_ideal_check, Axiom, AxiomInstance, AxiomReport, CheckRecord,
    CheckStatus, ColonInstance,
};
pub use lemmas::{
    lemma_suite_check, DirectSumInstance, IsomorphismInstance, Lemma, LemmaInstances,
    LemmaRecord, LemmaReport, QuotientInstance,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frobenius::{tight_test_detail, FrobeniusPower, MAX_E};
use crate::modalg::{FpModule, FreeElem, FreeSubmodule};
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

/// Why a verdict says "in".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum InEvidence {
    /// `u ∈ N` already.
    ExactMembership,
    /// `u^{[q]} ∈ N^{[q]}` at this exponent.
    FrobeniusPower { e: u32, q: u64 },
    /// `c u^{[q]} ∈ N^{[q]}` for every `e ≤ e_max`; evidence, not proof.
    WitnessedToBound { e_max: u32, q_max: u64, multiplier: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    In {
        evidence: InEvidence,
    },
    NotIn {
        e: u32,
        q: u64,
        /// Normal form of the failing element modulo the (bracket) submodule.
        normal_form: String,
    },
    Unknown {
        e_max: u32,
        /// First exponent whose test failed with a multiplier that is not an
        /// asserted test element.
        first_failure: Option<u32>,
    },
}

impl Verdict {
    /// Report vocabulary: `in`, `in_to_bound`, `not_in` or `unknown`.
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::In {
                evidence: InEvidence::WitnessedToBound { .. },
            } => "in_to_bound",
            Verdict::In { .. } => "in",
            Verdict::NotIn { .. } => "not_in",
            Verdict::Unknown { .. } => "unknown",
        }
    }

    /// In, exact or to a bound.
    pub fn is_positive(&self) -> bool {
        matches!(self, Verdict::In { .. })
    }

    /// In with a proof rather than bounded evidence.
    pub fn is_proved_in(&self) -> bool {
        matches!(self, Verdict::In { evidence } if !matches!(evidence, InEvidence::WitnessedToBound { .. }))
    }

    pub fn is_not_in(&self) -> bool {
        matches!(self, Verdict::NotIn { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown { .. })
    }

    pub fn witness_q(&self) -> Option<u64> {
        match self {
            Verdict::NotIn { q, .. } => Some(*q),
            _ => None,
        }
    }

    pub fn bound_e(&self) -> Option<u32> {
        match self {
            Verdict::In {
                evidence: InEvidence::WitnessedToBound { e_max, .. },
            }
            | Verdict::Unknown { e_max, .. } => Some(*e_max),
            _ => None,
        }
    }

    /// One says in and the other says not in.
    pub fn contradicts(&self, other: &Verdict) -> bool {
        (self.is_positive() && other.is_not_in()) || (self.is_not_in() && other.is_positive())
    }

    /// Three-valued conjunction.
    pub fn and(&self, other: &Verdict) -> Verdict {
        if self.is_not_in() {
            return self.clone();
        }
        if other.is_not_in() {
            return other.clone();
        }
        if self.is_unknown() {
            return self.clone();
        }
        if other.is_unknown() {
            return other.clone();
        }
        // Both positive: keep the weaker evidence.
        if self.is_proved_in() {
            other.clone()
        } else {
            self.clone()
        }
    }
}

/// Names a backend and its parameters; echoed into every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Descriptor {
    pub backend: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplier: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub test_element: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub assumptions: Vec<String>,
}

pub trait ClosureOracle {
    /// Verdict for `u ∈ N^cl` with `N` a submodule of a free module.
    fn member(&self, u: &FreeElem, n: &FreeSubmodule) -> Result<Verdict>;

    fn descriptor(&self) -> Descriptor;

    /// Whether every "in" verdict is a proof of closure membership.
    fn proves_in(&self) -> bool;

    /// Verdict for `u ∈ N^cl_M` with `M` finitely presented and `N` generated
    /// by `gens`, both given in the free cover. Decided on the preimage of `N`
    /// in the free cover.
    fn member_in(&self, m: &FpModule, u: &FreeElem, gens: &[FreeElem]) -> Result<Verdict> {
        self.member(u, &m.lifted_submodule(gens)?)
    }
}

fn check_rank(u: &FreeElem, n: &FreeSubmodule) -> Result<()> {
    if u.rank() != n.rank() {
        return Err(Error::RankMismatch {
            expected: n.rank(),
            found: u.rank(),
        });
    }
    Ok(())
}

fn check_e_max(e_max: u32) -> Result<()> {
    if e_max > MAX_E {
        return Err(Error::ExponentTooLarge(e_max));
    }
    Ok(())
}

/// The identity closure `N^cl = N`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Trivial;

pub fn trivial_member(u: &FreeElem, n: &FreeSubmodule) -> Result<Verdict> {
    check_rank(u, n)?;
    let nf = n.reduce(u)?;
    Ok(if nf.is_zero() {
        Verdict::In {
            evidence: InEvidence::ExactMembership,
        }
    } else {
        Verdict::NotIn {
            e: 0,
            q: 1,
            normal_form: nf.display(n.ring()),
        }
    })
}

impl ClosureOracle for Trivial {
    fn member(&self, u: &FreeElem, n: &FreeSubmodule) -> Result<Verdict> {
        trivial_member(u, n)
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor {
            backend: "trivial",
            e_max: None,
            multiplier: None,
            test_element: None,
            assumptions: Vec::new(),
        }
    }

    fn proves_in(&self) -> bool {
        true
    }
}

/// Frobenius closure: `u ∈ N^F` iff `u^{[q]} ∈ N^{[q]}` for some `q`.
/// Only the "in" direction is decidable by search.
#[derive(Clone, Copy, Debug)]
pub struct FrobeniusClosure {
    e_max: u32,
}

impl FrobeniusClosure {
    pub fn new(e_max: u32) -> Result<Self> {
        check_e_max(e_max)?;
        Ok(Self { e_max })
    }
}

pub fn frobenius_closure_member(u: &FreeElem, n: &FreeSubmodule, e_max: u32) -> Result<Verdict> {
    check_rank(u, n)?;
    check_e_max(e_max)?;
    let ring = n.ring();
    let one = ring.base().one();
    for e in 0..=e_max {
        let fp = FrobeniusPower::new(ring, e)?;
        if tight_test_detail(u, n, &one, fp)?.passed {
            return Ok(Verdict::In {
                evidence: InEvidence::FrobeniusPower { e, q: fp.q },
            });
        }
    }
    Ok(Verdict::Unknown {
        e_max,
        first_failure: None,
    })
}

impl ClosureOracle for FrobeniusClosure {
    fn member(&self, u: &FreeElem, n: &FreeSubmodule) -> Result<Verdict> {
        frobenius_closure_member(u, n, self.e_max)
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor {
            backend: "frobenius",
            e_max: Some(self.e_max),
            multiplier: None,
            test_element: None,
            assumptions: Vec::new(),
        }
    }

    fn proves_in(&self) -> bool {
        true
    }
}

/// Tight closure tested with a fixed multiplier `c` up to `q = p^{e_max}`.
#[derive(Clone, Debug)]
pub struct TightClosure {
    ring: QuotientRing,
    c: Polynomial,
    test_element: bool,
    e_max: u32,
}

impl TightClosure {
    pub fn new(ring: &QuotientRing, c: Polynomial, test_element: bool, e_max: u32) -> Result<Self> {
        let c = ring.reduce(&c);
        if c.is_zero() {
            return Err(Error::ZeroMultiplier);
        }
        check_e_max(e_max)?;
        Ok(Self {
            ring: ring.clone(),
            c,
            test_element,
            e_max,
        })
    }

    pub fn multiplier(&self) -> &Polynomial {
        &self.c
    }

    pub fn is_test_element(&self) -> bool {
        self.test_element
    }

    pub fn e_max(&self) -> u32 {
        self.e_max
    }

    pub fn with_e_max(&self, e_max: u32) -> Result<Self> {
        Self::new(&self.ring, self.c.clone(), self.test_element, e_max)
    }
}

pub fn tight_member(u: &FreeElem, n: &FreeSubmodule, backend: &TightClosure) -> Result<Verdict> {
    check_rank(u, n)?;
    if n.ring() != &backend.ring {
        return Err(Error::RingMismatch);
    }
    if n.contains(u)? {
        return Ok(Verdict::In {
            evidence: InEvidence::ExactMembership,
        });
    }
    let ring = n.ring();
    let mut q_max = 1;
    for e in 0..=backend.e_max {
        let fp = FrobeniusPower::new(ring, e)?;
        let test = tight_test_detail(u, n, &backend.c, fp)?;
        if !test.passed {
            return Ok(if backend.test_element {
                Verdict::NotIn {
                    e,
                    q: fp.q,
                    normal_form: test.normal_form.display(ring),
                }
            } else {
                Verdict::Unknown {
                    e_max: backend.e_max,
                    first_failure: Some(e),
                }
            });
        }
        q_max = fp.q;
    }
    Ok(Verdict::In {
        evidence: InEvidence::WitnessedToBound {
            e_max: backend.e_max,
            q_max,
            multiplier: ring.display(&backend.c),
        },
    })
}

impl ClosureOracle for TightClosure {
    fn member(&self, u: &FreeElem, n: &FreeSubmodule) -> Result<Verdict> {
        tight_member(u, n, self)
    }

    fn descriptor(&self) -> Descriptor {
        let mut assumptions = Vec::new();
        if self.test_element {
            assumptions.push(format!(
                "{} is asserted to be a test element",
                self.ring.display(&self.c)
            ));
        }
        Descriptor {
            backend: "tight",
            e_max: Some(self.e_max),
            multiplier: Some(self.ring.display(&self.c)),
            test_element: Some(self.test_element),
            assumptions,
        }
    }

    fn proves_in(&self) -> bool {
        false
    }
}

/// Any of the shipped backends.
#[derive(Clone, Debug)]
pub enum Oracle {
    Trivial(Trivial),
    Frobenius(FrobeniusClosure),
    Tight(TightClosure),
}

impl Oracle {
    fn inner(&self) -> &dyn ClosureOracle {
        match self {
            Oracle::Trivial(o) => o,
            Oracle::Frobenius(o) => o,
            Oracle::Tight(o) => o,
        }
    }
}

impl ClosureOracle for Oracle {
    fn member(&self, u: &FreeElem, n: &FreeSubmodule) -> Result<Verdict> {
        self.inner().member(u, n)
    }

    fn descriptor(&self) -> Descriptor {
        self.inner().descriptor()
    }

    fn proves_in(&self) -> bool {
        self.inner().proves_in()
    }
}
