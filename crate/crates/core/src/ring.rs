//! Quotient rings `R = F_p[x]/I` and partial systems of parameters.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal;
use crate::poly::{PolyRing, Polynomial};

#[derive(Debug)]
struct Inner {
    base: PolyRing,
    ideal: Vec<Polynomial>,
    gb: Vec<Polynomial>,
    domain: bool,
    dim: usize,
}

/// A polynomial ring modulo a proper ideal, with the reduced Gröbner basis of
/// the ideal computed once at construction. Cheap to clone.
///
/// The maximal ideal is always taken to be the ideal of the variables.
/// `domain` records a user assertion and is never verified.
#[derive(Clone, Debug)]
pub struct QuotientRing(Arc<Inner>);

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.base == other.0.base
                && self.0.gb == other.0.gb
                && self.0.domain == other.0.domain)
    }
}

impl QuotientRing {
    pub fn new(base: PolyRing, gens: Vec<Polynomial>, domain: bool) -> Result<Self> {
        let gb = ideal::buchberger(&base, &gens);
        if gb.iter().any(|g| g.leading_monomial().is_some_and(|m| m.is_one())) {
            return Err(Error::NotProperIdeal);
        }
        if !ideal::is_groebner_basis(&base, &gb) {
            return Err(Error::Certificate(
                "defining ideal basis has a non-reducing S-polynomial".into(),
            ));
        }
        let dim = ideal::krull_dimension(&base, &gb)?;
        Ok(Self(Arc::new(Inner {
            base,
            ideal: gens,
            gb,
            domain,
            dim,
        })))
    }

    /// The polynomial ring itself, flagged as a domain.
    pub fn polynomial(base: PolyRing) -> Self {
        Self::new(base, Vec::new(), true).expect("zero ideal is proper")
    }

    pub fn base(&self) -> &PolyRing {
        &self.0.base
    }

    pub fn ideal_generators(&self) -> &[Polynomial] {
        &self.0.ideal
    }

    pub fn groebner_basis(&self) -> &[Polynomial] {
        &self.0.gb
    }

    pub fn is_domain(&self) -> bool {
        self.0.domain
    }

    pub fn characteristic(&self) -> u32 {
        self.0.base.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.0.base.nvars()
    }

    /// Krull dimension of `R`.
    pub fn dimension(&self) -> usize {
        self.0.dim
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        if self.0.gb.is_empty() {
            return f.clone();
        }
        ideal::normal_form(&self.0.base, f, &self.0.gb)
    }

    pub fn is_zero(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.reduce(&self.0.base.add(f, g))
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.reduce(&self.0.base.sub(f, g))
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        self.0.base.neg(f)
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.reduce(&self.0.base.mul(f, g))
    }

    pub fn pow(&self, f: &Polynomial, k: u64) -> Polynomial {
        let mut base = self.reduce(f);
        let mut acc = self.0.base.one();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        self.reduce(&acc)
    }

    pub fn parse(&self, src: &str) -> Result<Polynomial> {
        Ok(self.reduce(&self.0.base.parse(src)?))
    }

    pub fn display(&self, f: &Polynomial) -> String {
        self.0.base.display(f)
    }

    /// Generators of `I + (extra)` in the ambient polynomial ring.
    pub fn extend_ideal(&self, extra: &[Polynomial]) -> Vec<Polynomial> {
        self.0.gb.iter().chain(extra).cloned().collect()
    }

    /// Membership of `f` in the ideal `(gens)` of `R`.
    pub fn ideal_contains(&self, f: &Polynomial, gens: &[Polynomial]) -> bool {
        ideal::ideal_member(&self.0.base, f, &self.extend_ideal(gens))
    }

    /// Membership in the maximal ideal generated by the variables.
    pub fn in_maximal_ideal(&self, f: &Polynomial) -> bool {
        self.ideal_contains(f, &self.0.base.vars())
    }

    /// Krull dimension of `R/(gens)`.
    pub fn quotient_dimension(&self, gens: &[Polynomial]) -> Result<usize> {
        ideal::krull_dimension(&self.0.base, &self.extend_ideal(gens))
    }
}

/// Outcome of a partial-system-of-parameters test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SopCertificate {
    pub is_partial_sop: bool,
    pub ring_dimension: usize,
    pub quotient_dimension: Option<usize>,
    pub length: usize,
    pub note: String,
}

/// Tests whether `xs` is part of a system of parameters: `dim R/(xs) = dim R - |xs|`.
pub fn is_partial_sop(ring: &QuotientRing, xs: &[Polynomial]) -> Result<SopCertificate> {
    if xs.is_empty() {
        return Err(Error::Invalid("empty parameter list".into()));
    }
    if let Some(x) = xs.iter().find(|x| !ring.in_maximal_ideal(x)) {
        return Err(Error::Invalid(format!(
            "{} is not in the maximal ideal",
            ring.display(x)
        )));
    }
    let d = ring.dimension();
    if xs.len() > d {
        return Ok(SopCertificate {
            is_partial_sop: false,
            ring_dimension: d,
            quotient_dimension: None,
            length: xs.len(),
            note: format!("{} elements exceed dim R = {d}", xs.len()),
        });
    }
    let qd = ring.quotient_dimension(xs)?;
    let ok = qd + xs.len() == d;
    Ok(SopCertificate {
        is_partial_sop: ok,
        ring_dimension: d,
        quotient_dimension: Some(qd),
        length: xs.len(),
        note: format!("dim R = {d}, dim R/(xs) = {qd}"),
    })
}

/// A certified partial system of parameters `x_1, ..., x_k`.
#[derive(Clone, Debug)]
pub struct PartialSop {
    elements: Vec<Polynomial>,
    certificate: SopCertificate,
}

impl PartialSop {
    pub fn new(ring: &QuotientRing, xs: Vec<Polynomial>) -> Result<Self> {
        let xs: Vec<Polynomial> = xs.iter().map(|x| ring.reduce(x)).collect();
        let certificate = is_partial_sop(ring, &xs)?;
        if !certificate.is_partial_sop {
            return Err(Error::Certificate(format!(
                "not a partial system of parameters ({})",
                certificate.note
            )));
        }
        Ok(Self {
            elements: xs,
            certificate,
        })
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn certificate(&self) -> &SopCertificate {
        &self.certificate
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;

    fn fermat() -> QuotientRing {
        let base = PolyRing::new(7, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
        let f = base.parse("x^3 + y^3 + z^3").unwrap();
        QuotientRing::new(base, vec![f], true).unwrap()
    }

    #[test]
    fn rejects_unit_ideal() {
        let base = PolyRing::new(7, &["x"], MonomialOrder::Grevlex).unwrap();
        let gens = vec![base.parse("x").unwrap(), base.parse("x + 1").unwrap()];
        assert_eq!(QuotientRing::new(base, gens, false).unwrap_err(), Error::NotProperIdeal);
    }

    #[test]
    fn sop_examples() {
        let r = fermat();
        let x = r.parse("x").unwrap();
        let y = r.parse("y").unwrap();
        let c = is_partial_sop(&r, &[x.clone(), y.clone()]).unwrap();
        assert!(c.is_partial_sop);
        assert_eq!((c.ring_dimension, c.quotient_dimension), (2, Some(0)));
        let c = is_partial_sop(&r, &[x.clone()]).unwrap();
        assert!(c.is_partial_sop);
        assert_eq!(c.quotient_dimension, Some(1));
        let z = r.parse("z").unwrap();
        let c = is_partial_sop(&r, &[x, y, z]).unwrap();
        assert!(!c.is_partial_sop);
        assert_eq!(c.quotient_dimension, None);

        let base = PolyRing::new(7, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let s = QuotientRing::polynomial(base);
        let c = is_partial_sop(&s, &[s.parse("x").unwrap(), s.parse("x^2").unwrap()]).unwrap();
        assert!(!c.is_partial_sop);
        assert!(is_partial_sop(&s, &[s.parse("x + 1").unwrap()]).is_err());
    }

    #[test]
    fn arithmetic_reduces() {
        let r = fermat();
        let z = r.parse("z").unwrap();
        // x^3 leads in grevlex with x > y > z, so x^3 rewrites to -y^3 - z^3
        assert_eq!(r.parse("x^3").unwrap(), r.parse("-y^3 - z^3").unwrap());
        assert_eq!(r.pow(&z, 3), r.parse("z^3").unwrap());
        assert!(r.is_zero(&r.base().parse("x^4 + x*y^3 + x*z^3").unwrap()));
        assert_eq!(r.dimension(), 2);
    }
}
