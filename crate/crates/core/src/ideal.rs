//! Ideal-level operations: normal forms, reduced Gröbner bases, membership
//! and Krull dimension.

use crate::error::{Error, Result};
use crate::gb::{self, ModuleOrder, SVec};
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};

fn scalar_order(ring: &PolyRing) -> ModuleOrder {
    ModuleOrder::pot(ring.order(), 1)
}

fn lift(ring: &PolyRing, f: &Polynomial) -> SVec {
    SVec::from_coords(&scalar_order(ring), std::slice::from_ref(f), 0)
}

fn drop_pos(v: &SVec) -> Polynomial {
    v.to_coords(0, 1).pop().unwrap()
}

/// Remainder of `f` under full multivariate division by `basis`.
///
/// The result has no term divisible by a leading monomial of `basis`. It is
/// a canonical coset representative only when `basis` is a Gröbner basis.
pub fn normal_form(ring: &PolyRing, f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let order = scalar_order(ring);
    let b: Vec<SVec> = basis.iter().filter(|g| !g.is_zero()).map(|g| lift(ring, g)).collect();
    drop_pos(&gb::reduce(&ring.field(), &order, &lift(ring, f), &b))
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(ring: &PolyRing, gens: &[Polynomial]) -> Vec<Polynomial> {
    let order = scalar_order(ring);
    let g: Vec<SVec> = gens.iter().filter(|g| !g.is_zero()).map(|g| lift(ring, g)).collect();
    gb::groebner(&ring.field(), &order, &g)
        .iter()
        .map(drop_pos)
        .collect()
}

/// `lc(g) * (L/lm(f)) * f - lc(f) * (L/lm(g)) * g` with `L` the lcm of the
/// leading monomials.
pub fn s_polynomial(ring: &PolyRing, f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() || g.is_zero() {
        return Polynomial::zero();
    }
    let order = scalar_order(ring);
    let s = gb::s_pair(&ring.field(), &order, &lift(ring, f), &lift(ring, g)).unwrap();
    drop_pos(&s)
}

pub fn ideal_member(ring: &PolyRing, f: &Polynomial, gens: &[Polynomial]) -> bool {
    normal_form(ring, f, &buchberger(ring, gens)).is_zero()
}

/// True when every S-polynomial of `basis` reduces to zero modulo `basis`.
pub fn is_groebner_basis(ring: &PolyRing, basis: &[Polynomial]) -> bool {
    for (i, f) in basis.iter().enumerate() {
        for g in &basis[i + 1..] {
            if !normal_form(ring, &s_polynomial(ring, f, g), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Dimension of `S/I` for a monomial ideal given by generators: the largest
/// variable set containing the support of no generator.
pub fn monomial_ideal_dimension(nvars: usize, leads: &[Monomial]) -> usize {
    assert!(nvars < 32, "too many variables for subset search");
    let supports: Vec<u32> = leads
        .iter()
        .map(|m| m.support().fold(0u32, |acc, i| acc | (1 << i)))
        .collect();
    (0u32..(1 << nvars))
        .filter(|set| supports.iter().all(|s| s & !set != 0))
        .map(|set| set.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Krull dimension of `S/I`, read off the leading-term ideal.
pub fn krull_dimension(ring: &PolyRing, gens: &[Polynomial]) -> Result<usize> {
    let gb = buchberger(ring, gens);
    if gb.iter().any(|g| g.leading_monomial().is_some_and(Monomial::is_one)) {
        return Err(Error::NotProperIdeal);
    }
    let leads: Vec<Monomial> = gb.iter().filter_map(|g| g.leading_monomial().cloned()).collect();
    Ok(monomial_ideal_dimension(ring.nvars(), &leads))
}
