//! Buchberger's algorithm for submodules of free modules `S^t`,
//! `S = F_p[x_1..x_n]`. Ideals are the rank-one case.
//!
//! Pairs are selected by the normal strategy (smallest lcm first). Useless
//! pairs are dropped with Buchberger's chain criterion, and in rank one also
//! with the coprime-leads criterion. The final basis is fully inter-reduced
//! and monic, hence canonical for the module and the order.

use std::cmp::Ordering;
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

/// One term of a vector: position, monomial, coefficient.
pub type VecTerm = (usize, Monomial, u32);

/// Where positions enter the comparison of module terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositionRule {
    /// Position first, then monomial.
    OverTerm,
    /// Monomial first, then position.
    UnderTerm,
}

/// A monomial order on the terms `m * e_i` of a free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    mono: MonomialOrder,
    rule: PositionRule,
    /// `rank[i]` is the priority of position `i`; 0 is the largest.
    rank: Vec<usize>,
}

impl ModuleOrder {
    /// `priority` lists positions from largest to smallest.
    pub fn new(mono: MonomialOrder, rule: PositionRule, priority: &[usize]) -> Self {
        let mut rank = vec![usize::MAX; priority.len()];
        for (r, &p) in priority.iter().enumerate() {
            rank[p] = r;
        }
        assert!(rank.iter().all(|&r| r != usize::MAX), "priority must be a permutation");
        Self { mono, rule, rank }
    }

    /// Position-over-term with `e_0 > e_1 > ...`.
    pub fn pot(mono: MonomialOrder, rank: usize) -> Self {
        let priority: Vec<usize> = (0..rank).collect();
        Self::new(mono, PositionRule::OverTerm, &priority)
    }

    pub fn monomial_order(&self) -> MonomialOrder {
        self.mono
    }

    pub fn rank(&self) -> usize {
        self.rank.len()
    }

    #[inline]
    pub fn cmp(&self, p1: usize, m1: &Monomial, p2: usize, m2: &Monomial) -> Ordering {
        let by_pos = || self.rank[p2].cmp(&self.rank[p1]);
        match self.rule {
            PositionRule::OverTerm => by_pos().then_with(|| self.mono.cmp(m1, m2)),
            PositionRule::UnderTerm => self.mono.cmp(m1, m2).then_with(by_pos),
        }
    }
}

/// A sparse vector in `S^t`, terms sorted strictly descending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SVec {
    terms: Vec<VecTerm>,
}

impl SVec {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[VecTerm] {
        &self.terms
    }

    pub fn lead(&self) -> Option<&VecTerm> {
        self.terms.first()
    }

    /// Builds a vector from coordinates; coordinate `i` lands at position
    /// `offset + i`.
    pub fn from_coords(order: &ModuleOrder, coords: &[Polynomial], offset: usize) -> Self {
        let mut terms: Vec<VecTerm> = coords
            .iter()
            .enumerate()
            .flat_map(|(i, f)| f.terms().iter().map(move |(m, c)| (offset + i, m.clone(), *c)))
            .collect();
        terms.sort_by(|a, b| order.cmp(b.0, &b.1, a.0, &a.1));
        Self { terms }
    }

    /// Splits back into `len` coordinates starting at position `offset`;
    /// terms outside that window are ignored.
    pub fn to_coords(&self, offset: usize, len: usize) -> Vec<Polynomial> {
        let mut out: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); len];
        for (p, m, c) in &self.terms {
            if (offset..offset + len).contains(p) {
                out[p - offset].push((m.clone(), *c));
            }
        }
        out.into_iter().map(Polynomial::from_sorted_unchecked).collect()
    }

    /// True when every term sits at a position `>= from`.
    pub fn supported_from(&self, from: usize) -> bool {
        self.terms.iter().all(|t| t.0 >= from)
    }

    pub(crate) fn monic(&self, field: &PrimeField) -> SVec {
        match self.terms.first() {
            None => SVec::zero(),
            Some(&(_, _, 1)) => self.clone(),
            Some(&(_, _, c)) => {
                let inv = field.inv(c);
                SVec {
                    terms: self
                        .terms
                        .iter()
                        .map(|(p, m, a)| (*p, m.clone(), field.mul(*a, inv)))
                        .collect(),
                }
            }
        }
    }
}

/// `f + c * m * g`, where `f` and `g` are sorted term slices.
fn axpy(
    field: &PrimeField,
    order: &ModuleOrder,
    f: &[VecTerm],
    c: u32,
    m: &Monomial,
    g: &[VecTerm],
) -> Vec<VecTerm> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let mut gj: Option<VecTerm> = g.first().map(|(p, gm, gc)| (*p, gm.mul(m), field.mul(*gc, c)));
    while i < f.len() || gj.is_some() {
        let take_f = match (&gj, f.get(i)) {
            (None, _) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(b), Some(a)) => order.cmp(a.0, &a.1, b.0, &b.1),
        };
        match take_f {
            Ordering::Greater => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let t = gj.take().unwrap();
                if t.2 != 0 {
                    out.push(t);
                }
                j += 1;
                gj = g.get(j).map(|(p, gm, gc)| (*p, gm.mul(m), field.mul(*gc, c)));
            }
            Ordering::Equal => {
                let t = gj.take().unwrap();
                let s = field.add(f[i].2, t.2);
                if s != 0 {
                    out.push((t.0, t.1, s));
                }
                i += 1;
                j += 1;
                gj = g.get(j).map(|(p, gm, gc)| (*p, gm.mul(m), field.mul(*gc, c)));
            }
        }
    }
    out
}

fn find_divisor<'a>(basis: &'a [SVec], pos: usize, mon: &Monomial) -> Option<&'a SVec> {
    basis.iter().find(|b| {
        let (bp, bm, _) = b.lead().expect("basis elements are nonzero");
        *bp == pos && bm.divides(mon)
    })
}

/// Full reduction of `f` by `basis` (monic leads assumed).
pub(crate) fn reduce(field: &PrimeField, order: &ModuleOrder, f: &SVec, basis: &[SVec]) -> SVec {
    let mut rem: Vec<VecTerm> = Vec::new();
    let mut cur: Vec<VecTerm> = f.terms.clone();
    let mut k = 0;
    while k < cur.len() {
        let (pos, mon, c) = &cur[k];
        match find_divisor(basis, *pos, mon) {
            Some(b) => {
                let (_, bm, bc) = b.lead().unwrap();
                let q = mon.div(bm).unwrap();
                let coef = field.neg(field.mul(*c, field.inv(*bc)));
                cur = axpy(field, order, &cur[k + 1..], coef, &q, &b.terms[1..]);
                k = 0;
            }
            None => {
                rem.push(cur[k].clone());
                k += 1;
            }
        }
    }
    SVec { terms: rem }
}

fn s_vector(field: &PrimeField, order: &ModuleOrder, f: &SVec, g: &SVec) -> SVec {
    let (fp, fm, fc) = f.lead().unwrap();
    let (gp, gm, gc) = g.lead().unwrap();
    debug_assert_eq!(fp, gp);
    let l = fm.lcm(gm);
    let uf = l.div(fm).unwrap();
    let ug = l.div(gm).unwrap();
    // gc * uf * f - fc * ug * g, leads cancel
    let left = axpy(field, order, &[], *gc, &uf, &f.terms[1..]);
    SVec {
        terms: axpy(field, order, &left, field.neg(*fc), &ug, &g.terms[1..]),
    }
}

#[derive(Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    /// Sort key of the lcm; comparing keys agrees with the module order.
    key: Vec<i64>,
    j: usize,
    i: usize,
    pos: usize,
    lcm: Monomial,
}

impl ModuleOrder {
    /// A lexicographically comparable key that orders terms like `cmp`.
    fn key(&self, pos: usize, m: &Monomial) -> Vec<i64> {
        let exps = m.exponents();
        let mut mono: Vec<i64> = Vec::with_capacity(exps.len() + 2);
        match self.mono {
            MonomialOrder::Grevlex => {
                mono.push(m.degree() as i64);
                mono.extend(exps.iter().rev().map(|&e| -(e as i64)));
            }
            MonomialOrder::Lex => mono.extend(exps.iter().map(|&e| e as i64)),
        }
        let rank = -(self.rank[pos] as i64);
        match self.rule {
            PositionRule::OverTerm => {
                mono.insert(0, rank);
                mono
            }
            PositionRule::UnderTerm => {
                mono.push(rank);
                mono
            }
        }
    }
}

/// Computes the reduced Gröbner basis of the submodule generated by `gens`.
pub fn groebner(field: &PrimeField, order: &ModuleOrder, gens: &[SVec]) -> Vec<SVec> {
    let scalar_case = order.rank() == 1;
    let mut basis: Vec<SVec> = Vec::new();
    let mut pairs: BinaryHeap<Reverse<Pair>> = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let add = |h: SVec,
               basis: &mut Vec<SVec>,
               pairs: &mut BinaryHeap<Reverse<Pair>>,
               pending: &mut HashSet<(usize, usize)>| {
        let n = basis.len();
        let (hp, hm, _) = h.lead().unwrap().clone();
        for (i, b) in basis.iter().enumerate() {
            let (bp, bm, _) = b.lead().unwrap();
            if *bp != hp {
                continue;
            }
            if scalar_case && bm.is_coprime(&hm) {
                continue;
            }
            let lcm = bm.lcm(&hm);
            pairs.push(Reverse(Pair {
                key: order.key(hp, &lcm),
                j: n,
                i,
                pos: hp,
                lcm,
            }));
            pending.insert((i, n));
        }
        basis.push(h);
    };

    for g in gens {
        let r = reduce(field, order, g, &basis);
        if !r.is_zero() {
            add(r.monic(field), &mut basis, &mut pairs, &mut pending);
        }
    }

    while let Some(Reverse(pair)) = pairs.pop() {
        pending.remove(&(pair.i, pair.j));

        let chain = basis.iter().enumerate().any(|(k, b)| {
            if k == pair.i || k == pair.j {
                return false;
            }
            let (bp, bm, _) = b.lead().unwrap();
            *bp == pair.pos
                && bm.divides(&pair.lcm)
                && !pending.contains(&(pair.i.min(k), pair.i.max(k)))
                && !pending.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            continue;
        }

        let s = s_vector(field, order, &basis[pair.i], &basis[pair.j]);
        let r = reduce(field, order, &s, &basis);
        if !r.is_zero() {
            add(r.monic(field), &mut basis, &mut pairs, &mut pending);
        }
    }

    interreduce(field, order, basis)
}

fn interreduce(field: &PrimeField, order: &ModuleOrder, basis: Vec<SVec>) -> Vec<SVec> {
    let mut keep: Vec<SVec> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let (gp, gm, _) = g.lead().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let (hp, hm, _) = h.lead().unwrap();
            j != i && hp == gp && hm.divides(gm) && (hm != gm || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut out: Vec<SVec> = (0..keep.len())
        .map(|i| {
            let others: Vec<SVec> = keep
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            reduce(field, order, &keep[i], &others).monic(field)
        })
        .collect();
    out.sort_by(|a, b| {
        let (ap, am, _) = a.lead().unwrap();
        let (bp, bm, _) = b.lead().unwrap();
        order.cmp(*bp, bm, *ap, am)
    });
    out
}

/// S-vector of two basis elements, or `None` when leads sit at different
/// positions.
pub fn s_pair(field: &PrimeField, order: &ModuleOrder, f: &SVec, g: &SVec) -> Option<SVec> {
    let (fp, _, _) = f.lead()?;
    let (gp, _, _) = g.lead()?;
    (fp == gp).then(|| s_vector(field, order, f, g))
}

/// A cached reduced Gröbner basis together with its order.
#[derive(Clone, Debug)]
pub struct ModuleBasis {
    field: PrimeField,
    order: ModuleOrder,
    elems: Vec<SVec>,
}

impl ModuleBasis {
    pub fn compute(field: PrimeField, order: ModuleOrder, gens: &[SVec]) -> Self {
        let elems = groebner(&field, &order, gens);
        Self { field, order, elems }
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn elements(&self) -> &[SVec] {
        &self.elems
    }

    pub fn reduce(&self, f: &SVec) -> SVec {
        reduce(&self.field, &self.order, f, &self.elems)
    }

    pub fn contains(&self, f: &SVec) -> bool {
        self.reduce(f).is_zero()
    }

    /// True when every S-vector of the basis reduces to zero.
    pub fn verify(&self) -> bool {
        for (i, f) in self.elems.iter().enumerate() {
            for g in &self.elems[i + 1..] {
                if let Some(s) = s_pair(&self.field, &self.order, f, g) {
                    if !self.contains(&s) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
