//! Seeded random instances for the axiom and lemma checkers.

use rand::Rng;

use super::{AxiomInstance, ColonInstance, DirectSumInstance, IsomorphismInstance, LemmaInstances, QuotientInstance};
use crate::error::Result;
use crate::modalg::{FpModule, FreeElem, Matrix, ModuleMap};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

/// A polynomial with at most `max_terms` terms of degree at most `max_deg`.
pub fn random_poly<G: Rng + ?Sized>(ring: &QuotientRing, rng: &mut G, max_deg: u32, max_terms: usize) -> Polynomial {
    let base = ring.base();
    let p = base.characteristic();
    let n = rng.gen_range(0..=max_terms);
    let terms = (0..n).map(|_| {
        let mut exps = vec![0u32; base.nvars()];
        let deg = rng.gen_range(0..=max_deg);
        let nv = exps.len();
        for _ in 0..deg {
            exps[rng.gen_range(0..nv)] += 1;
        }
        (Monomial::new(exps), rng.gen_range(1..p))
    });
    ring.reduce(&base.from_terms(terms))
}

/// A homogeneous-free random element of the maximal ideal (no constant term).
fn random_in_max<G: Rng + ?Sized>(ring: &QuotientRing, rng: &mut G) -> Polynomial {
    let f = random_poly(ring, rng, 2, 2);
    let c = ring.base().constant(f.constant_term() as i64);
    ring.sub(&f, &c)
}

pub fn random_elem<G: Rng + ?Sized>(ring: &QuotientRing, rng: &mut G, rank: usize) -> FreeElem {
    FreeElem::new(ring, (0..rank).map(|_| random_poly(ring, rng, 2, 2)).collect())
}

/// A random combination of `gens` (zero when `gens` is empty).
pub fn random_combination<G: Rng + ?Sized>(ring: &QuotientRing, rng: &mut G, rank: usize, gens: &[FreeElem]) -> FreeElem {
    let mut acc = FreeElem::zero(rank);
    for g in gens {
        let c = random_poly(ring, rng, 1, 2);
        acc = acc.add(ring, &g.scale(ring, &c)).expect("ranks agree");
    }
    acc
}

/// `R^t` or `coker` of one random column, `t ∈ {1, 2}`.
pub fn random_module<G: Rng + ?Sized>(ring: &QuotientRing, rng: &mut G) -> Result<FpModule> {
    let t = rng.gen_range(1..=2);
    if rng.gen_bool(0.5) {
        return Ok(FpModule::free(ring, t));
    }
    let col: Vec<Polynomial> = (0..t).map(|_| random_in_max(ring, rng)).collect();
    FpModule::new(ring, Matrix::new(ring, t, 1, col)?)
}

pub fn random_axiom_instance<G: Rng + ?Sized>(ring: &QuotientRing, rng: &mut G) -> Result<AxiomInstance> {
    let with_colon = ring.nvars() >= 2 && rng.gen_bool(0.3);
    let m = if with_colon {
        FpModule::free(ring, 1)
    } else {
        random_module(ring, rng)?
    };
    let t = m.rank();
    let n: Vec<FreeElem> = (0..rng.gen_range(1..=2)).map(|_| random_elem(ring, rng, t)).collect();
    let u = if rng.gen_bool(0.5) {
        random_combination(ring, rng, t, &n)
    } else {
        random_elem(ring, rng, t)
    };
    let mut inst = AxiomInstance::new("random", m.clone(), n.clone(), u);
    inst.larger = vec![random_elem(ring, rng, t)];
    let mut nu = n.clone();
    nu.push(inst.u.clone());
    inst.second = Some(if rng.gen_bool(0.5) {
        random_combination(ring, rng, t, &nu)
    } else {
        random_elem(ring, rng, t)
    });
    inst.map = Some(if m.is_free_presentation() && rng.gen_bool(0.5) {
        let t2 = rng.gen_range(1..=2);
        let entries = (0..t2 * t).map(|_| random_poly(ring, rng, 1, 2)).collect();
        ModuleMap::new(&m, &FpModule::free(ring, t2), Matrix::new(ring, t2, t, entries)?)?
    } else {
        let target = m.quotient(&[random_elem(ring, rng, t)])?;
        ModuleMap::new(&m, &target, Matrix::identity(ring, t))?
    });
    inst.check_max_ideal = rng.gen_bool(0.2);
    if with_colon {
        // x_1 = first variable, x_2 = second, f: R → R/(x_1).
        let x1 = ring.base().var(0);
        let x2 = ring.base().var(1);
        let target = FpModule::cyclic(ring, &[x1.clone()])?;
        let f = ModuleMap::new(&m, &target, Matrix::identity(ring, 1))?;
        let mult = random_poly(ring, rng, 1, 2);
        inst.colon = Some(ColonInstance {
            params: vec![x1.clone(), x2.clone()],
            map: f,
            v: FreeElem::new(ring, vec![x2]),
            u: FreeElem::new(ring, vec![ring.mul(&x1, &mult)]),
        });
    }
    Ok(inst)
}

pub fn random_lemma_instances<G: Rng + ?Sized>(ring: &QuotientRing, rng: &mut G, count: usize) -> Result<LemmaInstances> {
    let mut out = LemmaInstances::default();
    for _ in 0..count {
        let m = random_module(ring, rng)?;
        let t = m.rank();
        let n_prime = vec![random_elem(ring, rng, t)];
        let n = vec![random_elem(ring, rng, t)];
        let mut all = n_prime.clone();
        all.extend(n.iter().cloned());
        let u = if rng.gen_bool(0.5) {
            random_combination(ring, rng, t, &all)
        } else {
            random_elem(ring, rng, t)
        };
        out.quotients.push(QuotientInstance { module: m, n_prime, n, u });

        let m1 = random_module(ring, rng)?;
        let m2 = random_module(ring, rng)?;
        let n1 = vec![random_elem(ring, rng, m1.rank())];
        let n2 = vec![random_elem(ring, rng, m2.rank())];
        let u1 = if rng.gen_bool(0.5) { random_combination(ring, rng, m1.rank(), &n1) } else { random_elem(ring, rng, m1.rank()) };
        let u2 = if rng.gen_bool(0.5) { random_combination(ring, rng, m2.rank(), &n2) } else { random_elem(ring, rng, m2.rank()) };
        out.sums.push(DirectSumInstance { m1, n1, u1, m2, n2, u2 });

        // Shear of R^2 and its inverse.
        let r2 = FpModule::free(ring, 2);
        let s = random_poly(ring, rng, 2, 2);
        let one = ring.base().one();
        let zero = Polynomial::zero();
        let iso = Matrix::new(ring, 2, 2, vec![one.clone(), s.clone(), zero.clone(), one.clone()])?;
        let inv = Matrix::new(ring, 2, 2, vec![one.clone(), ring.neg(&s), zero, one])?;
        let n = vec![random_elem(ring, rng, 2)];
        let u = if rng.gen_bool(0.5) { random_combination(ring, rng, 2, &n) } else { random_elem(ring, rng, 2) };
        out.isomorphisms.push(IsomorphismInstance {
            iso: ModuleMap::new(&r2, &r2, iso)?,
            inverse: ModuleMap::new(&r2, &r2, inv)?,
            n,
            u,
        });

        out.zero_closure.push(random_poly(ring, rng, 2, 2));
    }
    Ok(out)
}
