//! Solid modules: `Hom_R(M, R) ≠ 0`.

use serde::Serialize;

use crate::closure::{TightClosure, Verdict};
use crate::error::{Error, Result};
use crate::frobenius::DEFAULT_E_MAX;
use crate::modalg::{hom_into_ring, rank_over_fractions, syzygies, FpModule, FreeElem, Matrix};
use crate::phantom::{canonical_diagram, phantom_check};
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

#[derive(Clone, Debug, Serialize)]
pub struct SolidityReport {
    pub is_solid: bool,
    /// A nonzero functional on the free cover vanishing on the relations.
    #[serde(skip)]
    pub witness: Option<FreeElem>,
    pub witness_display: Option<String>,
    /// Rank of `M` over the fraction field.
    pub rank: usize,
}

fn verify_witness(m: &FpModule, w: &FreeElem) -> Result<()> {
    let ring = m.ring();
    for (j, col) in m.presentation().columns().iter().enumerate() {
        if !ring.is_zero(&w.dot(ring, col)?) {
            return Err(Error::Certificate(format!("witness does not vanish on relation {j}")));
        }
    }
    Ok(())
}

pub fn is_solid(m: &FpModule) -> Result<SolidityReport> {
    let ring = m.ring();
    if !ring.is_domain() {
        return Err(Error::RequiresDomain);
    }
    let hom = hom_into_ring(m)?;
    let witness = hom.generators().first().cloned();
    if let Some(w) = &witness {
        verify_witness(m, w)?;
    }
    let rank = m.rank() - rank_over_fractions(ring, m.presentation())?;
    if witness.is_some() != (rank >= 1) {
        return Err(Error::Certificate(format!(
            "Hom(M,R) and rank {rank} disagree on solidity"
        )));
    }
    Ok(SolidityReport {
        is_solid: witness.is_some(),
        witness_display: witness.as_ref().map(|w| w.display(ring)),
        witness,
        rank,
    })
}

/// A module-finite algebra is solid when some `γ ∈ Hom(M, R)` has `γ(1) ≠ 0`;
/// `identity` represents `1` in the free cover.
pub fn is_solid_algebra(m: &FpModule, identity: &FreeElem) -> Result<Option<FreeElem>> {
    let ring = m.ring();
    if !ring.is_domain() {
        return Err(Error::RequiresDomain);
    }
    let hom = hom_into_ring(m)?;
    for g in hom.generators() {
        verify_witness(m, g)?;
        if !ring.is_zero(&g.dot(ring, identity)?) {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

/// `dim_k I / 𝔪I`, the number of generators of `I` needed near the origin.
pub fn minimal_generator_count(ring: &QuotientRing, gens: &[Polynomial]) -> usize {
    let mut sorted: Vec<Polynomial> = gens.iter().map(|g| ring.reduce(g)).filter(|g| !g.is_zero()).collect();
    sorted.sort_by_key(|g| g.degree());
    let vars = ring.base().vars();
    let mut m_i = Vec::new();
    for g in &sorted {
        for x in &vars {
            m_i.push(ring.mul(g, x));
        }
    }
    let mut kept: Vec<Polynomial> = Vec::new();
    for g in &sorted {
        let mut span = m_i.clone();
        span.extend(kept.iter().cloned());
        if !ring.ideal_contains(g, &span) {
            kept.push(g.clone());
        }
    }
    kept.len()
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub presentation: Vec<Vec<String>>,
    pub solidity: SolidityReport,
    pub phantom: Verdict,
    /// Solid and not phantom.
    pub reproduced: bool,
}

/// `α: R → I`, `1 ↦` first generator, for an ideal needing at least two
/// generators: `I` is solid but not a phantom extension of `R`.
pub fn solid_not_phantom_scenario(ring: &QuotientRing, gens: &[Polynomial]) -> Result<ScenarioReport> {
    if minimal_generator_count(ring, gens) < 2 {
        return Err(Error::PrincipalIdeal);
    }
    let vectors: Vec<FreeElem> = gens.iter().map(|g| FreeElem::new(ring, vec![g.clone()])).collect();
    let syz = syzygies(ring, &vectors)?;
    let presentation = Matrix::from_columns(gens.len(), &syz)?;
    let m = FpModule::new(ring, presentation)?;
    let solidity = is_solid(&m)?;
    let d = canonical_diagram(&m, &FreeElem::basis(ring, gens.len(), 0))?;
    let oracle = TightClosure::new(ring, ring.base().one(), true, DEFAULT_E_MAX)?;
    let phantom = phantom_check(&d, &oracle)?;
    Ok(ScenarioReport {
        presentation: m
            .presentation()
            .rows()
            .iter()
            .map(|r| r.coords().iter().map(|c| ring.display(c)).collect())
            .collect(),
        reproduced: solidity.is_solid && phantom.is_not_in(),
        solidity,
        phantom,
    })
}
