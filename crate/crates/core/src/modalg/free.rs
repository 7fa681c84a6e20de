use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gb::{ModuleBasis, ModuleOrder, PositionRule, SVec};
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

/// An element of the free module `R^t`, coordinates in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeElem {
    coords: Vec<Polynomial>,
}

impl FreeElem {
    pub fn new(ring: &QuotientRing, coords: Vec<Polynomial>) -> Self {
        Self {
            coords: coords.iter().map(|c| ring.reduce(c)).collect(),
        }
    }

    /// Parses each coordinate in the ring's variables.
    pub fn parse(ring: &QuotientRing, coords: &[&str]) -> Result<Self> {
        Ok(Self {
            coords: coords.iter().map(|c| ring.parse(c)).collect::<Result<_>>()?,
        })
    }

    pub fn zero(rank: usize) -> Self {
        Self {
            coords: vec![Polynomial::zero(); rank],
        }
    }

    /// The standard basis vector `e_i` of `R^rank`.
    pub fn basis(ring: &QuotientRing, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.coords[i] = ring.base().one();
        v
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> &Polynomial {
        &self.coords[i]
    }

    pub fn into_coords(self) -> Vec<Polynomial> {
        self.coords
    }

    pub(crate) fn from_coords_unchecked(coords: Vec<Polynomial>) -> Self {
        Self { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Polynomial::is_zero)
    }

    fn check_rank(&self, other: &FreeElem) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        Ok(())
    }

    pub fn add(&self, ring: &QuotientRing, other: &FreeElem) -> Result<FreeElem> {
        self.check_rank(other)?;
        Ok(Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| ring.add(a, b))
                .collect(),
        })
    }

    pub fn sub(&self, ring: &QuotientRing, other: &FreeElem) -> Result<FreeElem> {
        self.check_rank(other)?;
        Ok(Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| ring.sub(a, b))
                .collect(),
        })
    }

    pub fn neg(&self, ring: &QuotientRing) -> FreeElem {
        Self {
            coords: self.coords.iter().map(|a| ring.neg(a)).collect(),
        }
    }

    pub fn scale(&self, ring: &QuotientRing, r: &Polynomial) -> FreeElem {
        Self {
            coords: self.coords.iter().map(|a| ring.mul(a, r)).collect(),
        }
    }

    /// `sum_i self_i * other_i`.
    pub fn dot(&self, ring: &QuotientRing, other: &FreeElem) -> Result<Polynomial> {
        self.check_rank(other)?;
        let base = ring.base();
        let mut acc = Polynomial::zero();
        for (a, b) in self.coords.iter().zip(&other.coords) {
            acc = base.add(&acc, &base.mul(a, b));
        }
        Ok(ring.reduce(&acc))
    }

    /// Entrywise `q`-th powers, reduced.
    pub fn frobenius(&self, ring: &QuotientRing, q: u64) -> FreeElem {
        Self {
            coords: self
                .coords
                .iter()
                .map(|a| ring.reduce(&ring.base().frobenius(a, q)))
                .collect(),
        }
    }

    pub fn concat(&self, other: &FreeElem) -> FreeElem {
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        Self { coords }
    }

    /// Coordinates `range` as a new vector.
    pub fn slice(&self, range: std::ops::Range<usize>) -> FreeElem {
        Self {
            coords: self.coords[range].to_vec(),
        }
    }

    pub fn display(&self, ring: &QuotientRing) -> String {
        let mut s = String::from("(");
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            let _ = write!(s, "{}", ring.display(c));
        }
        s.push(')');
        s
    }

    pub(crate) fn to_svec(&self, order: &ModuleOrder, offset: usize) -> SVec {
        SVec::from_coords(order, &self.coords, offset)
    }
}

/// A matrix over `R`, row-major, entries in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    entries: Vec<Polynomial>,
}

impl Matrix {
    pub fn new(ring: &QuotientRing, nrows: usize, ncols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != nrows * ncols {
            return Err(Error::Invalid(format!(
                "{} entries for a {nrows}x{ncols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            nrows,
            ncols,
            entries: entries.iter().map(|e| ring.reduce(e)).collect(),
        })
    }

    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            entries: vec![Polynomial::zero(); nrows * ncols],
        }
    }

    pub fn identity(ring: &QuotientRing, n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = ring.base().one();
        }
        m
    }

    /// Matrix whose columns are `cols`, each of length `nrows`.
    pub fn from_columns(nrows: usize, cols: &[FreeElem]) -> Result<Self> {
        let mut m = Self::zero(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.rank() != nrows {
                return Err(Error::RankMismatch {
                    expected: nrows,
                    found: c.rank(),
                });
            }
            for i in 0..nrows {
                m.entries[i * cols.len() + j] = c.coords[i].clone();
            }
        }
        Ok(m)
    }

    pub fn from_rows(ncols: usize, rows: &[FreeElem]) -> Result<Self> {
        Ok(Self::from_columns(ncols, rows)?.transpose())
    }

    /// Parses a matrix given as rows of expressions.
    pub fn parse(ring: &QuotientRing, rows: &[&[&str]]) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::new();
        for r in rows {
            if r.len() != ncols {
                return Err(Error::Invalid("ragged matrix".into()));
            }
            for e in *r {
                entries.push(ring.parse(e)?);
            }
        }
        Self::new(ring, rows.len(), ncols, entries)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.ncols + j]
    }

    pub fn column(&self, j: usize) -> FreeElem {
        FreeElem {
            coords: (0..self.nrows).map(|i| self.get(i, j).clone()).collect(),
        }
    }

    pub fn columns(&self) -> Vec<FreeElem> {
        (0..self.ncols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> FreeElem {
        FreeElem {
            coords: self.entries[i * self.ncols..(i + 1) * self.ncols].to_vec(),
        }
    }

    pub fn rows(&self) -> Vec<FreeElem> {
        (0..self.nrows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Self::zero(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                m.entries[j * self.nrows + i] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn mul_vec(&self, ring: &QuotientRing, v: &FreeElem) -> Result<FreeElem> {
        if v.rank() != self.ncols {
            return Err(Error::RankMismatch {
                expected: self.ncols,
                found: v.rank(),
            });
        }
        (0..self.nrows)
            .map(|i| self.row(i).dot(ring, v))
            .collect::<Result<Vec<_>>>()
            .map(|coords| FreeElem { coords })
    }

    pub fn mul(&self, ring: &QuotientRing, other: &Matrix) -> Result<Matrix> {
        let cols: Vec<FreeElem> = other
            .columns()
            .iter()
            .map(|c| self.mul_vec(ring, c))
            .collect::<Result<_>>()?;
        Matrix::from_columns(self.nrows, &cols)
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Matrix) -> Result<Matrix> {
        if self.nrows != other.nrows {
            return Err(Error::RankMismatch {
                expected: self.nrows,
                found: other.nrows,
            });
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        Matrix::from_columns(self.nrows, &cols)
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let nrows = self.nrows + other.nrows;
        let mut cols: Vec<FreeElem> = self
            .columns()
            .into_iter()
            .map(|c| c.concat(&FreeElem::zero(other.nrows)))
            .collect();
        cols.extend(
            other
                .columns()
                .into_iter()
                .map(|c| FreeElem::zero(self.nrows).concat(&c)),
        );
        Matrix::from_columns(nrows, &cols).expect("block sizes agree")
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }
}

/// Position priority for membership bases: positions whose generator entries
/// have the lowest degree rank highest, ties broken by index.
fn membership_priority(rank: usize, gens: &[FreeElem]) -> Vec<usize> {
    let mut key: Vec<(u64, usize)> = (0..rank)
        .map(|i| {
            let d = gens
                .iter()
                .filter_map(|g| g.coords[i].degree())
                .min()
                .unwrap_or(u64::MAX);
            (d, i)
        })
        .collect();
    key.sort();
    key.into_iter().map(|(_, i)| i).collect()
}

/// A submodule of `R^t` given by generators, with a cached Gröbner basis of
/// the lifted generators together with `I * e_j` for every position.
#[derive(Clone, Debug)]
pub struct FreeSubmodule {
    ring: QuotientRing,
    rank: usize,
    gens: Vec<FreeElem>,
    basis: Arc<ModuleBasis>,
}

impl FreeSubmodule {
    pub fn new(ring: &QuotientRing, rank: usize, gens: Vec<FreeElem>) -> Result<Self> {
        let priority = membership_priority(rank, &gens);
        Self::with_priority(ring, rank, gens, &priority)
    }

    /// Uses the position-over-term order with `e_0 > e_1 > ...`.
    pub fn with_index_order(ring: &QuotientRing, rank: usize, gens: Vec<FreeElem>) -> Result<Self> {
        let priority: Vec<usize> = (0..rank).collect();
        Self::with_priority(ring, rank, gens, &priority)
    }

    fn with_priority(ring: &QuotientRing, rank: usize, gens: Vec<FreeElem>, priority: &[usize]) -> Result<Self> {
        for g in &gens {
            if g.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: g.rank(),
                });
            }
        }
        let gens: Vec<FreeElem> = gens
            .into_iter()
            .map(|g| FreeElem::new(ring, g.coords))
            .filter(|g| !g.is_zero())
            .collect();
        let order = ModuleOrder::new(ring.base().order(), PositionRule::OverTerm, priority);
        let mut lifted: Vec<SVec> = gens.iter().map(|g| g.to_svec(&order, 0)).collect();
        lifted.extend(ideal_multiples(ring, &order, 0, rank));
        let basis = ModuleBasis::compute(ring.base().field(), order, &lifted);
        Ok(Self {
            ring: ring.clone(),
            rank,
            gens,
            basis: Arc::new(basis),
        })
    }

    pub fn zero(ring: &QuotientRing, rank: usize) -> Self {
        Self::new(ring, rank, Vec::new()).expect("no generators")
    }

    /// All of `R^rank`.
    pub fn full(ring: &QuotientRing, rank: usize) -> Self {
        let gens = (0..rank).map(|i| FreeElem::basis(ring, rank, i)).collect();
        Self::new(ring, rank, gens).expect("basis vectors have the right rank")
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Nonzero generators, in input order.
    pub fn generators(&self) -> &[FreeElem] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub(crate) fn basis(&self) -> &ModuleBasis {
        &self.basis
    }

    fn check(&self, u: &FreeElem) -> Result<()> {
        if u.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: u.rank(),
            });
        }
        Ok(())
    }

    /// Canonical representative of `u` modulo this submodule.
    pub fn reduce(&self, u: &FreeElem) -> Result<FreeElem> {
        self.check(u)?;
        let r = self.basis.reduce(&u.to_svec(self.basis.order(), 0));
        Ok(FreeElem {
            coords: r.to_coords(0, self.rank),
        })
    }

    pub fn contains(&self, u: &FreeElem) -> Result<bool> {
        self.check(u)?;
        Ok(self.basis.contains(&u.to_svec(self.basis.order(), 0)))
    }

    pub fn contains_submodule(&self, other: &FreeSubmodule) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_span(&self, other: &FreeSubmodule) -> Result<bool> {
        Ok(self.contains_submodule(other)? && other.contains_submodule(self)?)
    }

    /// `self + span(extra)`.
    pub fn extend(&self, extra: &[FreeElem]) -> Result<FreeSubmodule> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        FreeSubmodule::new(&self.ring, self.rank, gens)
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self.gens.iter().map(|g| g.display(&self.ring)).collect();
        format!("span{{{}}}", parts.join(", "))
    }
}

/// `g * e_j` for every defining-ideal basis element `g` and position
/// `offset <= j < offset + len`.
pub(crate) fn ideal_multiples(ring: &QuotientRing, order: &ModuleOrder, offset: usize, len: usize) -> Vec<SVec> {
    let mut out = Vec::new();
    for j in 0..len {
        for g in ring.groebner_basis() {
            let mut coords = vec![Polynomial::zero(); len];
            coords[j] = g.clone();
            out.push(SVec::from_coords(order, &coords, offset));
        }
    }
    out
}

/// Decides `u ∈ N`.
pub fn module_member(u: &FreeElem, n: &FreeSubmodule) -> Result<bool> {
    n.contains(u)
}
