//! Multivariate polynomials over F_p in a fixed monomial order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{FpScalar, PrimeField};
use crate::monomial::{Monomial, MonomialOrder};

/// A polynomial as a list of `(monomial, coefficient)` pairs sorted strictly
/// descending in the owning ring's order, without zero coefficients.
///
/// The representation is canonical, so structural equality is equality of
/// polynomials. Arithmetic goes through [`PolyRing`], which knows the field
/// and the order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<u32> {
        self.terms.first().map(|&(_, c)| c)
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> u32 {
        self.terms
            .last()
            .filter(|(m, _)| m.is_one())
            .map(|&(_, c)| c)
            .unwrap_or(0)
    }

    pub(crate) fn from_sorted_unchecked(terms: Vec<(Monomial, u32)>) -> Self {
        Self { terms }
    }
}

/// The polynomial ring F_p[x_1, ..., x_n] with a monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(p: u64, vars: &[&str], order: MonomialOrder) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            if v.is_empty() || names.iter().any(|n| n == v) {
                return Err(Error::BadVariable(v.to_string()));
            }
            names.push(v.to_string());
        }
        Ok(Self {
            field,
            vars: names,
            order,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial {
            terms: vec![(Monomial::var(self.nvars(), i), 1)],
        }
    }

    pub fn var_named(&self, name: &str) -> Result<Polynomial> {
        self.var_index(name)
            .map(|i| self.var(i))
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn vars(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero()
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        self.term(self.field.from_i64(c), Monomial::one(self.nvars()))
    }

    pub fn term(&self, c: u32, m: Monomial) -> Polynomial {
        debug_assert_eq!(m.nvars(), self.nvars());
        if c % self.characteristic() == 0 {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(m, c % self.characteristic())],
            }
        }
    }

    pub fn monomial(&self, exps: &[u32]) -> Polynomial {
        self.term(1, Monomial::new(exps.iter().copied()))
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and
    /// drops zeros.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Polynomial {
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = self.field.add(*e, c % self.characteristic());
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        Polynomial { terms }
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.combine(f, 1, None, g)
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.combine(f, self.field.neg(1), None, g)
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        self.scale(f, self.field.neg(1))
    }

    pub fn scale(&self, f: &Polynomial, c: u32) -> Polynomial {
        let c = c % self.characteristic();
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), self.field.mul(*a, c)))
                .collect(),
        }
    }

    pub fn scalar(&self, c: u32) -> FpScalar {
        self.field.scalar(c as i64)
    }

    /// `f + c * m * g` in one merge pass.
    pub fn combine(
        &self,
        f: &Polynomial,
        c: u32,
        m: Option<&Monomial>,
        g: &Polynomial,
    ) -> Polynomial {
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let mut gi = g.terms.iter().map(|(gm, gc)| {
            let mm = match m {
                Some(m) => gm.mul(m),
                None => gm.clone(),
            };
            (mm, self.field.mul(*gc, c))
        });
        let mut fi = f.terms.iter().cloned();
        let mut a = fi.next();
        let mut b = gi.next();
        loop {
            match (a.take(), b.take()) {
                (None, None) => break,
                (Some(x), None) => {
                    out.push(x);
                    out.extend(fi.by_ref());
                    break;
                }
                (None, Some(y)) => {
                    if y.1 != 0 {
                        out.push(y);
                    }
                    out.extend(gi.by_ref().filter(|t| t.1 != 0));
                    break;
                }
                (Some(x), Some(y)) => match self.order.cmp(&x.0, &y.0) {
                    Ordering::Greater => {
                        out.push(x);
                        a = fi.next();
                        b = Some(y);
                    }
                    Ordering::Less => {
                        if y.1 != 0 {
                            out.push(y);
                        }
                        a = Some(x);
                        b = gi.next();
                    }
                    Ordering::Equal => {
                        let s = self.field.add(x.1, y.1);
                        if s != 0 {
                            out.push((x.0, s));
                        }
                        a = fi.next();
                        b = gi.next();
                    }
                },
            }
        }
        Polynomial { terms: out }
    }

    pub fn mul_term(&self, f: &Polynomial, c: u32, m: &Monomial) -> Polynomial {
        let c = c % self.characteristic();
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(fm, fc)| (fm.mul(m), self.field.mul(*fc, c)))
                .collect(),
        }
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        if f.is_zero() || g.is_zero() {
            return Polynomial::zero();
        }
        let (small, big) = if f.len() <= g.len() { (f, g) } else { (g, f) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return self.mul_term(big, *c, m);
        }
        let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(f.len() * g.len());
        for (fm, fc) in &f.terms {
            for (gm, gc) in &g.terms {
                let e = acc.entry(fm.mul(gm)).or_insert(0);
                *e = self.field.add(*e, self.field.mul(*fc, *gc));
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        Polynomial { terms }
    }

    pub fn pow(&self, f: &Polynomial, mut k: u64) -> Polynomial {
        let mut base = f.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `f^q` for `q` a power of the characteristic: coefficients are fixed by
    /// Frobenius on F_p, so only exponents scale.
    pub fn frobenius(&self, f: &Polynomial, q: u64) -> Polynomial {
        Polynomial {
            terms: f.terms.iter().map(|(m, c)| (m.pow(q), *c)).collect(),
        }
    }

    /// Scales `f` so its leading coefficient is 1.
    pub fn monic(&self, f: &Polynomial) -> Polynomial {
        match f.leading_coefficient() {
            None | Some(1) => f.clone(),
            Some(c) => self.scale(f, self.field.inv(c)),
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut s = String::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(&self.vars[i]);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    /// Renders `f` with coefficients in `0..p` and `*`/`^` syntax that the
    /// expression parser accepts back.
    pub fn display(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in f.terms.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            if m.is_one() {
                let _ = write!(s, "{c}");
            } else if *c == 1 {
                s.push_str(&self.format_monomial(m));
            } else {
                let _ = write!(s, "{c}*{}", self.format_monomial(m));
            }
        }
        s
    }

    /// Parses a polynomial expression in this ring's variables.
    pub fn parse(&self, src: &str) -> Result<Polynomial> {
        crate::expr::Expr::parse(src)?.eval(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> PolyRing {
        PolyRing::new(7, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn canonical_representation() {
        let r = ring();
        let f = r.parse("x^2 + y - x^2 + 8*y").unwrap();
        assert_eq!(f, r.scale(&r.var(1), 2));
        assert_eq!(r.parse("7*x").unwrap(), Polynomial::zero());
        let g = r.parse("z^2 + x*y + x^2").unwrap();
        let lead: Vec<_> = g.terms().iter().map(|(m, _)| r.format_monomial(m)).collect();
        assert_eq!(lead, vec!["x^2", "x*y", "z^2"]);
    }

    #[test]
    fn ring_identities() {
        let r = ring();
        let f = r.parse("x + y").unwrap();
        let g = r.parse("x - y").unwrap();
        assert_eq!(r.mul(&f, &g), r.parse("x^2 - y^2").unwrap());
        assert_eq!(r.pow(&f, 7), r.parse("x^7 + y^7").unwrap());
        assert_eq!(r.frobenius(&f, 7), r.pow(&f, 7));
        assert_eq!(r.sub(&f, &f), Polynomial::zero());
        assert_eq!(r.display(&r.parse("3 - x^2*z").unwrap()), "6*x^2*z + 3");
    }

    #[test]
    fn rejects_bad_variables() {
        assert!(PolyRing::new(7, &["x", "x"], MonomialOrder::Grevlex).is_err());
        assert!(PolyRing::new(8, &["x"], MonomialOrder::Grevlex).is_err());
        assert!(ring().parse("w + 1").is_err());
    }
}
