//! Syzygies, lifts and kernels via the lifted-basis computation: a Gröbner
//! basis of the columns `(g_i, e_i)` in `R^t ⊕ R^n` under a position-over-term
//! order that ranks the `R^t` block above the `R^n` block.

use crate::error::{Error, Result};
use crate::gb::{ModuleBasis, ModuleOrder, PositionRule, SVec};
use crate::ideal;
use crate::modalg::free::{ideal_multiples, FreeElem, FreeSubmodule, Matrix};
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

struct LiftedBasis {
    t: usize,
    n: usize,
    basis: ModuleBasis,
}

fn check_ranks(t: usize, vectors: &[FreeElem]) -> Result<()> {
    for v in vectors {
        if v.rank() != t {
            return Err(Error::RankMismatch {
                expected: t,
                found: v.rank(),
            });
        }
    }
    Ok(())
}

impl LiftedBasis {
    fn new(ring: &QuotientRing, t: usize, vectors: &[FreeElem]) -> Result<Self> {
        check_ranks(t, vectors)?;
        let n = vectors.len();
        let priority: Vec<usize> = (0..t + n).collect();
        let order = ModuleOrder::new(ring.base().order(), PositionRule::OverTerm, &priority);
        let mut gens: Vec<SVec> = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut coords: Vec<Polynomial> = v.coords().to_vec();
                coords.resize(t + n, Polynomial::zero());
                coords[t + i] = ring.base().one();
                SVec::from_coords(&order, &coords, 0)
            })
            .collect();
        gens.extend(ideal_multiples(ring, &order, 0, t));
        let basis = ModuleBasis::compute(ring.base().field(), order, &gens);
        Ok(Self { t, n, basis })
    }

    fn lift(&self, ring: &QuotientRing, u: &FreeElem) -> Option<Vec<Polynomial>> {
        let r = self.basis.reduce(&u.to_svec(self.basis.order(), 0));
        if !r.supported_from(self.t) {
            return None;
        }
        Some(
            r.to_coords(self.t, self.n)
                .iter()
                .map(|c| ring.reduce(&ring.base().neg(c)))
                .collect(),
        )
    }

    fn syzygy_parts(&self) -> Vec<FreeElem> {
        self.basis
            .elements()
            .iter()
            .filter(|g| g.supported_from(self.t))
            .map(|g| FreeElem::from_coords_unchecked(g.to_coords(self.t, self.n)))
            .collect()
    }
}

/// Generators of `{a ∈ R^n : Σ a_i v_i = 0}` as a reduced basis under
/// position-over-term order `e_0 > e_1 > ...`. Zero module gives `[]`.
pub fn syzygies(ring: &QuotientRing, vectors: &[FreeElem]) -> Result<Vec<FreeElem>> {
    let Some(first) = vectors.first() else {
        return Ok(Vec::new());
    };
    let t = first.rank();
    let n = vectors.len();
    let lifted = LiftedBasis::new(ring, t, vectors)?;
    let parts = lifted.syzygy_parts();
    let clean = FreeSubmodule::with_index_order(ring, n, parts)?;
    Ok(clean
        .basis()
        .elements()
        .iter()
        .map(|g| FreeElem::new(ring, g.to_coords(0, n)))
        .filter(|g| !g.is_zero())
        .collect())
}

/// Coefficients `a` with `u = Σ a_i g_i` in `R^t`, or `None` if `u` is not in
/// the span.
pub fn lift(ring: &QuotientRing, u: &FreeElem, gens: &[FreeElem]) -> Result<Option<Vec<Polynomial>>> {
    let t = u.rank();
    if gens.is_empty() {
        return Ok(u.is_zero().then(Vec::new));
    }
    let lifted = LiftedBasis::new(ring, t, gens)?;
    Ok(lifted.lift(ring, u))
}

/// `{v ∈ R^a : B v = 0}` for a `b × a` matrix `B`.
pub fn kernel_of_matrix(ring: &QuotientRing, b: &Matrix) -> Result<FreeSubmodule> {
    let gens = syzygies(ring, &b.columns())?;
    FreeSubmodule::with_index_order(ring, b.ncols(), gens)
}

/// Generators of the ideal `{r ∈ R : r·a ∈ N}`; `[]` means the zero ideal.
pub fn colon_into(ring: &QuotientRing, n: &FreeSubmodule, a: &FreeElem) -> Result<Vec<Polynomial>> {
    if a.rank() != n.rank() {
        return Err(Error::RankMismatch {
            expected: n.rank(),
            found: a.rank(),
        });
    }
    let mut vectors = vec![a.clone()];
    vectors.extend(n.generators().iter().cloned());
    let firsts: Vec<Polynomial> = syzygies(ring, &vectors)?
        .into_iter()
        .map(|s| s.get(0).clone())
        .collect();
    Ok(ideal_in_ring(ring, &firsts))
}

/// Reduced generators of the ideal `(gens)` of `R`, dropping those that vanish
/// in `R`.
pub fn ideal_in_ring(ring: &QuotientRing, gens: &[Polynomial]) -> Vec<Polynomial> {
    ideal::buchberger(ring.base(), &ring.extend_ideal(gens))
        .into_iter()
        .map(|g| ring.reduce(&g))
        .filter(|g| !g.is_zero())
        .collect()
}
