use serde::Serialize;

use super::diagram::{alpha_avoids_mm, canonical_diagram, phantom_check};
use super::modification::{modify, sop_relation_kernel, SopRelation};
use crate::closure::{ClosureOracle, Verdict};
use crate::error::{Error, Result};
use crate::modalg::{FpModule, FreeElem};
use crate::poly::Polynomial;
use crate::ring::{is_partial_sop, QuotientRing};

/// Where parameter sequences come from.
#[derive(Clone, Debug)]
pub enum SopSource {
    /// These sequences, in this order.
    Explicit(Vec<Vec<Polynomial>>),
    /// Subsequences of the variables of length ≥ 2, in lexicographic order
    /// of index sequences, whose first `k` entries form a partial system of
    /// parameters.
    Variables,
}

impl SopSource {
    fn sequences(&self, ring: &QuotientRing) -> Result<Vec<Vec<Polynomial>>> {
        match self {
            SopSource::Explicit(v) => Ok(v.clone()),
            SopSource::Variables => {
                let n = ring.nvars();
                let vars = ring.base().vars();
                let mut out = Vec::new();
                let mut stack: Vec<Vec<usize>> = (0..n).rev().map(|i| vec![i]).collect();
                while let Some(idx) = stack.pop() {
                    if idx.len() >= 2 {
                        let prefix: Vec<Polynomial> = idx[..idx.len() - 1].iter().map(|&i| vars[i].clone()).collect();
                        if is_partial_sop(ring, &prefix)?.is_partial_sop {
                            out.push(idx.iter().map(|&i| vars[i].clone()).collect());
                        }
                    }
                    let last = *idx.last().expect("nonempty");
                    for j in (last + 1..n).rev() {
                        let mut next = idx.clone();
                        next.push(j);
                        stack.push(next);
                    }
                }
                Ok(out)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    pub step: usize,
    pub params: Vec<String>,
    pub relation: String,
    /// `nontrivial` when `u_{k+1} ∉ (x_1..x_k)M`, otherwise `first`.
    pub choice: &'static str,
    pub rank: usize,
    pub verdict: Verdict,
    pub avoids_mm: bool,
    /// Positive verdict implies `α(1) ∉ 𝔪M`.
    pub corollary_ok: bool,
    /// Not "not in" when the previous step was positive.
    pub preservation_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceReport {
    pub selection_rule: &'static str,
    pub base_verdict: Verdict,
    pub base_avoids_mm: bool,
    pub steps: Vec<StepReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stopped: Option<String>,
}

impl SequenceReport {
    pub fn all_ok(&self) -> bool {
        self.steps.iter().all(|s| s.corollary_ok && s.preservation_ok)
    }
}

const SELECTION_RULE: &str = "scan parameter sequences in order and kernel generators in order; \
take the first relation with u_{k+1} not in (x_1..x_k)M, else the first relation";

fn choose(m: &FpModule, seqs: &[Vec<Polynomial>]) -> Result<Option<(SopRelation, &'static str)>> {
    let ring = m.ring();
    let mut fallback = None;
    for params in seqs {
        if params.len() < 2 {
            continue;
        }
        let k = params.len() - 1;
        for rel in sop_relation_kernel(m, params)? {
            let mut jm = Vec::new();
            for x in &params[..k] {
                for j in 0..m.rank() {
                    jm.push(FreeElem::basis(ring, m.rank(), j).scale(ring, x));
                }
            }
            if !m.lifted_submodule(&jm)?.contains(&rel.coefficients()[k])? {
                return Ok(Some((rel, "nontrivial")));
            }
            if fallback.is_none() {
                fallback = Some((rel, "first"));
            }
        }
    }
    Ok(fallback)
}

/// Iterated modifications of `α: R → M`, re-running the phantom test and the
/// `α(1) ∉ 𝔪M` check after each step.
pub fn modification_sequence(
    m: &FpModule,
    a: &FreeElem,
    oracle: &dyn ClosureOracle,
    source: &SopSource,
    max_steps: usize,
) -> Result<SequenceReport> {
    if max_steps == 0 {
        return Err(Error::ZeroSteps);
    }
    let ring = m.ring();
    let seqs = source.sequences(ring)?;
    let mut module = m.clone();
    let mut diagram = canonical_diagram(m, a)?;
    let base_verdict = phantom_check(&diagram, oracle)?;
    let base_avoids_mm = alpha_avoids_mm(&diagram)?;
    let mut previous = base_verdict.clone();
    let mut steps = Vec::new();
    let mut stopped = None;
    for step in 1..=max_steps {
        let Some((rel, choice)) = choose(&module, &seqs)? else {
            stopped = Some(format!("no nontrivial relation before step {step}"));
            break;
        };
        let result = modify(&module, &diagram, &rel)?;
        let verdict = phantom_check(&result.diagram, oracle)?;
        let avoids_mm = alpha_avoids_mm(&result.diagram)?;
        steps.push(StepReport {
            step,
            params: rel.params().iter().map(|x| ring.display(x)).collect(),
            relation: rel.display(ring),
            choice,
            rank: result.module.rank(),
            corollary_ok: !verdict.is_positive() || avoids_mm,
            preservation_ok: !(previous.is_positive() && verdict.is_not_in()),
            avoids_mm,
            verdict: verdict.clone(),
        });
        previous = verdict;
        module = result.module;
        diagram = result.diagram;
    }
    Ok(SequenceReport {
        selection_rule: SELECTION_RULE,
        base_verdict,
        base_avoids_mm,
        steps,
        stopped,
    })
}
