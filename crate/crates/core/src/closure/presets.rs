//! The Fermat cubic `F_p[x,y,z]/(x^3+y^3+z^3)` with `p ≡ 1 mod 3`, where
//! `z^2 ∈ (x,y)*` but `z^2 ∉ (x,y)`, and `x` is used as a test element.
//! That `x` is a test element is an assumption of these presets and is
//! echoed by every oracle built from them.

use super::{AxiomInstance, ColonInstance, DirectSumInstance, IsomorphismInstance, LemmaInstances, QuotientInstance, TightClosure};
use crate::error::{Error, Result};
use crate::modalg::{FpModule, FreeElem, Matrix, ModuleMap};
use crate::monomial::MonomialOrder;
use crate::poly::PolyRing;
use crate::ring::QuotientRing;

pub fn fermat_cubic(p: u64) -> Result<QuotientRing> {
    if p % 3 != 1 {
        return Err(Error::Invalid(format!("the Fermat cubic preset needs p ≡ 1 mod 3, got {p}")));
    }
    let base = PolyRing::new(p, &["x", "y", "z"], MonomialOrder::Grevlex)?;
    let f = base.parse("x^3+y^3+z^3")?;
    QuotientRing::new(base, vec![f], true)
}

/// Tight closure with `c = x`, asserted to be a test element.
pub fn test_element_oracle(ring: &QuotientRing, e_max: u32) -> Result<TightClosure> {
    TightClosure::new(ring, ring.parse("x")?, true, e_max)
}

/// Tight closure with `c = xy`, no test element assertion.
pub fn flagship_oracle(ring: &QuotientRing, e_max: u32) -> Result<TightClosure> {
    TightClosure::new(ring, ring.parse("x*y")?, false, e_max)
}

fn el(r: &QuotientRing, c: &[&str]) -> Result<FreeElem> {
    FreeElem::parse(r, c)
}

fn els(r: &QuotientRing, cs: &[&[&str]]) -> Result<Vec<FreeElem>> {
    cs.iter().map(|c| el(r, c)).collect()
}

/// The shipped axiom instances over the Fermat cubic.
pub fn axiom_instances(r: &QuotientRing) -> Result<Vec<AxiomInstance>> {
    let ring_mod = FpModule::free(r, 1);
    let mod_x = FpModule::cyclic(r, &[r.parse("x")?])?;
    let to_mod_x = ModuleMap::new(&ring_mod, &mod_x, Matrix::identity(r, 1))?;
    let mut out = Vec::new();

    let mut a = AxiomInstance::new("z^2 over (x,y)", ring_mod.clone(), els(r, &[&["x"], &["y"]])?, el(r, &["z^2"])?);
    a.larger = els(r, &[&["z"]])?;
    a.second = Some(el(r, &["x*z"])?);
    a.map = Some(to_mod_x.clone());
    a.check_max_ideal = true;
    a.colon = Some(ColonInstance {
        params: vec![r.parse("x")?, r.parse("y")?],
        map: to_mod_x.clone(),
        v: el(r, &["y"])?,
        u: el(r, &["x*y"])?,
    });
    out.push(a);

    let mut b = AxiomInstance::new("z over (x,y)", ring_mod.clone(), els(r, &[&["x"], &["y"]])?, el(r, &["z"])?);
    b.larger = els(r, &[&["z^2"]])?;
    b.map = Some(ModuleMap::new(&ring_mod, &FpModule::free(r, 2), Matrix::parse(r, &[&["1"], &["z"]])?)?);
    b.colon = Some(ColonInstance {
        params: vec![r.parse("x")?, r.parse("y")?],
        map: to_mod_x.clone(),
        v: el(r, &["y"])?,
        u: el(r, &["x"])?,
    });
    out.push(b);

    // M = R ⊕ R, f(r, s) = r x + s, v = (1, 0), u = (-1, x).
    let r2 = FpModule::free(r, 2);
    let f = ModuleMap::new(&r2, &ring_mod, Matrix::parse(r, &[&["x", "1"]])?)?;
    let mut c = AxiomInstance::new("R^2 colon instance", r2.clone(), els(r, &[&["1", "0"]])?, el(r, &["-1", "x"])?);
    c.colon = Some(ColonInstance {
        params: vec![r.parse("x")?],
        map: f,
        v: el(r, &["1", "0"])?,
        u: el(r, &["-1", "x"])?,
    });
    out.push(c);

    // Inside the modification coker(z^2, x, y)^t.
    let flag = FpModule::new(r, Matrix::parse(r, &[&["z^2"], &["x"], &["y"]])?)?;
    let mut d = AxiomInstance::new("modification module", flag.clone(), els(r, &[&["0", "1", "0"], &["0", "0", "1"]])?, el(r, &["z^2", "0", "0"])?);
    d.larger = els(r, &[&["z", "0", "0"]])?;
    d.map = Some(ModuleMap::new(&flag, &flag.quotient(&els(r, &[&["1", "0", "0"]])?)?, Matrix::identity(r, 3))?);
    out.push(d);

    Ok(out)
}

/// The shipped lemma instances over the Fermat cubic.
pub fn lemma_instances(r: &QuotientRing) -> Result<LemmaInstances> {
    let ring_mod = FpModule::free(r, 1);
    let r2 = FpModule::free(r, 2);
    let scale = ModuleMap::new(&ring_mod, &ring_mod, Matrix::parse(r, &[&["3"]])?)?;
    let unscale = ModuleMap::new(&ring_mod, &ring_mod, Matrix::parse(r, &[&["5"]])?)?;
    let shear = ModuleMap::new(&r2, &r2, Matrix::parse(r, &[&["1", "z"], &["0", "1"]])?)?;
    let unshear = ModuleMap::new(&r2, &r2, Matrix::parse(r, &[&["1", "-z"], &["0", "1"]])?)?;
    Ok(LemmaInstances {
        quotients: vec![
            QuotientInstance {
                module: ring_mod.clone(),
                n_prime: els(r, &[&["x"]])?,
                n: els(r, &[&["y"]])?,
                u: el(r, &["z^2"])?,
            },
            QuotientInstance {
                module: ring_mod.clone(),
                n_prime: Vec::new(),
                n: els(r, &[&["x"], &["y"]])?,
                u: el(r, &["z"])?,
            },
        ],
        sums: vec![DirectSumInstance {
            m1: ring_mod.clone(),
            n1: els(r, &[&["x"], &["y"]])?,
            u1: el(r, &["z^2"])?,
            m2: ring_mod.clone(),
            n2: els(r, &[&["x"]])?,
            u2: el(r, &["y"])?,
        }],
        isomorphisms: vec![
            IsomorphismInstance {
                iso: scale,
                inverse: unscale,
                n: els(r, &[&["x"], &["y"]])?,
                u: el(r, &["z^2"])?,
            },
            IsomorphismInstance {
                iso: shear,
                inverse: unshear,
                n: els(r, &[&["x", "y"]])?,
                u: el(r, &["z", "1"])?,
            },
        ],
        zero_closure: vec![r.base().zero(), r.parse("x")?, r.parse("z^2")?, r.parse("x+y")?],
    })
}
