//! The Frobenius functor on free modules and presentations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modalg::{FpModule, FreeElem, FreeSubmodule, Matrix};
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

/// Largest supported Frobenius exponent.
pub const MAX_E: u32 = 6;
/// Default search bound for closure oracles.
pub const DEFAULT_E_MAX: u32 = 3;
// q itself must leave headroom for multiplying exponents of small degree.
const MAX_Q: u64 = 1 << 20;

/// `q = p^e` for the characteristic of a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusPower {
    pub e: u32,
    pub q: u64,
}

impl FrobeniusPower {
    pub fn new(ring: &QuotientRing, e: u32) -> Result<Self> {
        if e > MAX_E {
            return Err(Error::ExponentTooLarge(e));
        }
        let q = (ring.characteristic() as u64)
            .checked_pow(e)
            .filter(|&q| q <= MAX_Q)
            .ok_or(Error::ExponentTooLarge(e))?;
        Ok(Self { e, q })
    }
}

/// Entrywise q-th powers of the generators of `n`.
pub fn bracket_generators(n: &FreeSubmodule, fp: FrobeniusPower) -> Vec<FreeElem> {
    n.generators()
        .iter()
        .map(|g| g.frobenius(n.ring(), fp.q))
        .collect()
}

/// `N^{[q]}` inside the same free module.
pub fn bracket_power(n: &FreeSubmodule, fp: FrobeniusPower) -> Result<FreeSubmodule> {
    if fp.e == 0 {
        return Ok(n.clone());
    }
    FreeSubmodule::new(n.ring(), n.rank(), bracket_generators(n, fp))
}

/// `F^e(M)`: the presentation matrix with every entry raised to the q-th power.
pub fn frobenius_presentation(m: &FpModule, fp: FrobeniusPower) -> Result<FpModule> {
    let ring = m.ring();
    let a = m.presentation();
    let mut entries = Vec::with_capacity(a.nrows() * a.ncols());
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            entries.push(ring.base().frobenius(a.get(i, j), fp.q));
        }
    }
    FpModule::new(ring, Matrix::new(ring, a.nrows(), a.ncols(), entries)?)
}

/// Outcome of one tight closure test `c u^{[q]} ∈ N^{[q]}`, with the normal
/// form of `c u^{[q]}` modulo `N^{[q]}` (zero iff the test passed).
#[derive(Clone, Debug)]
pub struct QTest {
    pub power: FrobeniusPower,
    pub passed: bool,
    pub normal_form: FreeElem,
}

pub fn tight_test_detail(
    u: &FreeElem,
    n: &FreeSubmodule,
    c: &Polynomial,
    fp: FrobeniusPower,
) -> Result<QTest> {
    let ring = n.ring();
    if ring.is_zero(c) {
        return Err(Error::ZeroMultiplier);
    }
    if u.rank() != n.rank() {
        return Err(Error::RankMismatch {
            expected: n.rank(),
            found: u.rank(),
        });
    }
    let target = u.frobenius(ring, fp.q).scale(ring, c);
    let normal_form = bracket_power(n, fp)?.reduce(&target)?;
    Ok(QTest {
        power: fp,
        passed: normal_form.is_zero(),
        normal_form,
    })
}

/// `c · u^{[q]} ∈ N^{[q]}`.
pub fn tight_test_one_q(
    u: &FreeElem,
    n: &FreeSubmodule,
    c: &Polynomial,
    fp: FrobeniusPower,
) -> Result<bool> {
    Ok(tight_test_detail(u, n, c, fp)?.passed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modalg::module_member;
    use crate::monomial::MonomialOrder;
    use crate::poly::PolyRing;

    fn fermat() -> QuotientRing {
        let base = PolyRing::new(7, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
        let f = base.parse("x^3+y^3+z^3").unwrap();
        QuotientRing::new(base, vec![f], true).unwrap()
    }

    fn sub(r: &QuotientRing, rank: usize, gens: &[&[&str]]) -> FreeSubmodule {
        let gens = gens.iter().map(|g| FreeElem::parse(r, g).unwrap()).collect();
        FreeSubmodule::new(r, rank, gens).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let r = QuotientRing::polynomial(PolyRing::new(7, &["x", "y"], MonomialOrder::Grevlex).unwrap());
        let f1 = FrobeniusPower::new(&r, 1).unwrap();
        let n = sub(&r, 1, &[&["x"], &["y"]]);
        assert!(bracket_power(&n, f1).unwrap().same_span(&sub(&r, 1, &[&["x^7"], &["y^7"]])).unwrap());
        let f0 = FrobeniusPower::new(&r, 0).unwrap();
        assert!(bracket_power(&n, f0).unwrap().same_span(&n).unwrap());
        let n = sub(&r, 2, &[&["y", "1"], &["-x", "0"]]);
        let gens = bracket_generators(&n, f1);
        assert_eq!(gens[1], FreeElem::parse(&r, &["-x^7", "0"]).unwrap());
        assert_eq!(gens[0], FreeElem::parse(&r, &["y^7", "1"]).unwrap());
    }

    #[test]
    fn presentations() {
        let r = fermat();
        let f1 = FrobeniusPower::new(&r, 1).unwrap();
        let free = FpModule::free(&r, 1);
        assert_eq!(frobenius_presentation(&free, f1).unwrap().presentation(), free.presentation());
        let m = FpModule::new(&r, Matrix::parse(&r, &[&["z^2"], &["x"], &["y"]]).unwrap()).unwrap();
        let expected = Matrix::parse(&r, &[&["z^14"], &["x^7"], &["y^7"]]).unwrap();
        assert_eq!(frobenius_presentation(&m, f1).unwrap().presentation(), &expected);
    }

    #[test]
    fn fermat_tests() {
        let r = fermat();
        let n = sub(&r, 1, &[&["x"], &["y"]]);
        let z2 = FreeElem::parse(&r, &["z^2"]).unwrap();
        let xy = r.parse("x*y").unwrap();
        let f1 = FrobeniusPower::new(&r, 1).unwrap();
        assert!(tight_test_one_q(&z2, &n, &xy, f1).unwrap());
        let z = FreeElem::parse(&r, &["z"]).unwrap();
        let x = r.parse("x").unwrap();
        let f2 = FrobeniusPower::new(&r, 2).unwrap();
        assert!(!tight_test_one_q(&z, &n, &x, f2).unwrap());
        assert!(matches!(
            tight_test_one_q(&z, &n, &Polynomial::zero(), f1),
            Err(Error::ZeroMultiplier)
        ));
        let inside = FreeElem::parse(&r, &["x*z+y^2"]).unwrap();
        assert!(module_member(&inside, &n).unwrap());
        for e in 0..=2 {
            let fp = FrobeniusPower::new(&r, e).unwrap();
            assert!(tight_test_one_q(&inside, &n, &x, fp).unwrap());
        }
    }

    #[test]
    fn exponent_cap() {
        let r = fermat();
        assert!(FrobeniusPower::new(&r, 6).is_ok());
        assert!(matches!(FrobeniusPower::new(&r, 7), Err(Error::ExponentTooLarge(7))));
    }
}
