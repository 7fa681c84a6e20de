use super::*;
use crate::closure::presets::{fermat_cubic, flagship_oracle};
use crate::closure::{CheckStatus, TightClosure, Trivial};
use crate::modalg::{FpModule, FreeElem, FreeSubmodule, Matrix, ModuleMap};
use crate::monomial::MonomialOrder;
use crate::poly::PolyRing;
use crate::ring::QuotientRing;
use crate::Error;

fn f7(vars: &[&str]) -> QuotientRing {
    QuotientRing::polynomial(PolyRing::new(7, vars, MonomialOrder::Grevlex).unwrap())
}

fn el(r: &QuotientRing, c: &[&str]) -> FreeElem {
    FreeElem::parse(r, c).unwrap()
}

fn c_one(r: &QuotientRing) -> TightClosure {
    TightClosure::new(r, r.base().one(), true, 3).unwrap()
}

fn koszul_module(r: &QuotientRing) -> FpModule {
    FpModule::new(r, Matrix::parse(r, &[&["y"], &["-x"]]).unwrap()).unwrap()
}

#[test]
fn canonical_examples() {
    let r = f7(&["x", "y"]);
    let d = canonical_diagram(&FpModule::free(&r, 1), &el(&r, &["1"])).unwrap();
    assert_eq!(d.nu(), &Matrix::identity(&r, 1));
    assert!(d.dual_image().contains(&el(&r, &["1"])).unwrap());
    let d = canonical_diagram(&FpModule::free(&r, 2), &el(&r, &["1", "0"])).unwrap();
    assert_eq!(d.nu(), &Matrix::parse(&r, &[&["1"], &["0"]]).unwrap());
    let d = canonical_diagram(&koszul_module(&r), &el(&r, &["1", "0"])).unwrap();
    assert_eq!(d.nu(), &Matrix::parse(&r, &[&["y", "1"], &["-x", "0"]]).unwrap());
    assert_eq!(d.nu_tilde(), &el(&r, &["0", "1"]));
    let expected = FreeSubmodule::new(&r, 2, vec![el(&r, &["y", "1"]), el(&r, &["-x", "0"])]).unwrap();
    assert!(d.dual_image().same_span(&expected).unwrap());
    // R/(x) has torsion: α(1) = 1 is killed by x.
    let torsion = FpModule::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
    match canonical_diagram(&torsion, &el(&r, &["1"])) {
        Err(Error::AlphaNotInjective(g)) => assert_eq!(g, "x"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn phantom_ground_truth() {
    let r = f7(&["x", "y"]);
    let id = canonical_diagram(&FpModule::free(&r, 1), &el(&r, &["1"])).unwrap();
    assert!(phantom_check(&id, &c_one(&r)).unwrap().is_proved_in());
    assert!(splitting(&id).unwrap().is_some());
    let split = canonical_diagram(&FpModule::free(&r, 2), &el(&r, &["1", "0"])).unwrap();
    assert!(phantom_check(&split, &Trivial).unwrap().is_proved_in());
    assert_eq!(splitting(&split).unwrap(), Some(el(&r, &["1", "0"])));
    let ex = canonical_diagram(&koszul_module(&r), &el(&r, &["1", "0"])).unwrap();
    let v = phantom_check(&ex, &c_one(&r)).unwrap();
    assert_eq!(v.witness_q(), Some(1));
    assert!(splitting(&ex).unwrap().is_none());

    let f = fermat_cubic(7).unwrap();
    let m = FpModule::new(&f, Matrix::parse(&f, &[&["z^2"], &["x"], &["y"]]).unwrap()).unwrap();
    let d = canonical_diagram(&m, &el(&f, &["1", "0", "0"])).unwrap();
    let v = phantom_check(&d, &flagship_oracle(&f, 3).unwrap()).unwrap();
    assert_eq!(v.label(), "in_to_bound");
    assert!(alpha_avoids_mm(&d).unwrap());
}

#[test]
fn avoids_mm_examples() {
    let r = f7(&["x", "y"]);
    let id = canonical_diagram(&FpModule::free(&r, 1), &el(&r, &["1"])).unwrap();
    assert!(alpha_avoids_mm(&id).unwrap());
    let d = canonical_diagram(&FpModule::free(&r, 2), &el(&r, &["x", "0"])).unwrap();
    assert!(!alpha_avoids_mm(&d).unwrap());
}

#[test]
fn padded_presentations_agree() {
    let r = f7(&["x", "y"]);
    let red = Redundancy {
        extra_generators: vec![el(&r, &["x"])],
        redundant_columns: vec![el(&r, &["y"])],
        shift: vec![r.parse("y").unwrap()],
        extra_shift: vec![r.parse("x+1").unwrap()],
    };
    let rep = presentation_independence_test(&FpModule::free(&r, 1), &el(&r, &["1"]), &c_one(&r), &red).unwrap();
    assert!(rep.canonical.is_positive() && rep.padded.is_positive());
    let red = Redundancy {
        extra_generators: vec![el(&r, &["x", "y"])],
        redundant_columns: vec![el(&r, &["x", "0"])],
        shift: vec![r.parse("x").unwrap(), r.parse("1").unwrap()],
        extra_shift: vec![],
    };
    let rep = presentation_independence_test(&koszul_module(&r), &el(&r, &["1", "0"]), &c_one(&r), &red).unwrap();
    assert!(rep.canonical.is_not_in() && rep.padded.is_not_in(), "{rep:?}");
}

#[test]
fn kernels_of_parameter_maps() {
    let r = f7(&["x", "y"]);
    let xs = vec![r.parse("x").unwrap(), r.parse("y").unwrap()];
    let rels = sop_relation_kernel(&FpModule::free(&r, 1), &xs).unwrap();
    assert_eq!(rels.len(), 1);
    let u: Vec<_> = rels[0].coefficients().to_vec();
    let k = FreeSubmodule::new(&r, 2, vec![u[0].concat(&u[1])]).unwrap();
    assert!(k.same_span(&FreeSubmodule::new(&r, 2, vec![el(&r, &["y", "-x"])]).unwrap()).unwrap());

    let mod_x = FpModule::cyclic(&r, &[r.parse("x").unwrap()]).unwrap();
    assert!(sop_relation_kernel(&mod_x, &[r.parse("y").unwrap()]).unwrap().is_empty());

    let f = fermat_cubic(7).unwrap();
    let xs: Vec<_> = ["x", "y", "z"].iter().map(|v| f.parse(v).unwrap()).collect();
    let rels = sop_relation_kernel(&FpModule::free(&f, 1), &xs).unwrap();
    let gens: Vec<FreeElem> = rels
        .iter()
        .map(|r| r.coefficients().iter().fold(FreeElem::zero(0), |acc, u| acc.concat(u)))
        .collect();
    let span = FreeSubmodule::new(&f, 3, gens).unwrap();
    assert!(span.contains(&el(&f, &["x^2", "y^2", "z^2"])).unwrap());
    assert!(!rels[0].sequence_certificate().unwrap().is_partial_sop);
}

#[test]
fn modifications() {
    let r = f7(&["x", "y"]);
    let m = FpModule::free(&r, 1);
    let d = canonical_diagram(&m, &el(&r, &["1"])).unwrap();
    let xs = vec![r.parse("x").unwrap(), r.parse("y").unwrap()];
    let rel = SopRelation::new(&m, xs.clone(), vec![el(&r, &["y"]), el(&r, &["-x"])]).unwrap();
    let res = modify(&m, &d, &rel).unwrap();
    assert_eq!(res.module.presentation(), &Matrix::parse(&r, &[&["-x"], &["x"]]).unwrap());
    assert!(phantom_check(&res.diagram, &Trivial).unwrap().is_proved_in());

    let f = fermat_cubic(7).unwrap();
    let m = FpModule::free(&f, 1);
    let d = canonical_diagram(&m, &el(&f, &["1"])).unwrap();
    let xs: Vec<_> = ["x", "y", "z"].iter().map(|v| f.parse(v).unwrap()).collect();
    let rel = SopRelation::new(&m, xs, vec![el(&f, &["x^2"]), el(&f, &["y^2"]), el(&f, &["z^2"])]).unwrap();
    let res = modify(&m, &d, &rel).unwrap();
    assert_eq!(res.module.presentation(), &Matrix::parse(&f, &[&["z^2"], &["x"], &["y"]]).unwrap());
    assert_eq!(res.alpha, el(&f, &["1", "0", "0"]));

    let short = SopRelation::new(&FpModule::free(&r, 1), vec![r.parse("x").unwrap()], vec![el(&r, &["0"])]).unwrap();
    let d = canonical_diagram(&FpModule::free(&r, 1), &el(&r, &["1"])).unwrap();
    assert!(matches!(modify(&FpModule::free(&r, 1), &d, &short), Err(Error::RelationTooShort)));
}

#[test]
fn sop_certificates() {
    let r = f7(&["x", "y"]);
    let m = FpModule::free(&r, 1);
    let d = canonical_diagram(&m, &el(&r, &["1"])).unwrap();
    let xs = vec![r.parse("x").unwrap(), r.parse("y").unwrap()];
    let rel = SopRelation::new(&m, xs.clone(), vec![el(&r, &["y"]), el(&r, &["-x"])]).unwrap();
    let rep = sop_certificate_verify(&m, &d, &rel, &Trivial).unwrap();
    assert!(rep.identities.iter().all(|i| i.holds));
    assert!(rep.verdict.is_proved_in());

    let bad = SopRelation::unverified(xs, vec![el(&r, &["y"]), el(&r, &["x"])]);
    assert!(matches!(sop_certificate_verify(&m, &d, &bad, &Trivial), Err(Error::Certificate(_))));

    let f = fermat_cubic(7).unwrap();
    let m = FpModule::free(&f, 1);
    let d = canonical_diagram(&m, &el(&f, &["1"])).unwrap();
    let xs: Vec<_> = ["x", "y", "z"].iter().map(|v| f.parse(v).unwrap()).collect();
    let rel = SopRelation::new(&m, xs, vec![el(&f, &["x^2"]), el(&f, &["y^2"]), el(&f, &["z^2"])]).unwrap();
    let rep = sop_certificate_verify(&m, &d, &rel, &flagship_oracle(&f, 3).unwrap()).unwrap();
    assert_eq!(rep.identities.len(), 4);
    assert_eq!(rep.verdict.label(), "in_to_bound");
    assert!(rep.consistent);
}

#[test]
fn sequences() {
    let r = f7(&["x", "y"]);
    let rep = modification_sequence(&FpModule::free(&r, 1), &el(&r, &["1"]), &c_one(&r), &SopSource::Variables, 3).unwrap();
    assert_eq!(rep.steps.len(), 3);
    assert!(rep.steps.iter().all(|s| s.verdict.is_positive() && s.avoids_mm));
    assert!(rep.all_ok());
    assert!(matches!(
        modification_sequence(&FpModule::free(&r, 1), &el(&r, &["1"]), &Trivial, &SopSource::Variables, 0),
        Err(Error::ZeroSteps)
    ));

    let f = fermat_cubic(7).unwrap();
    let rep = modification_sequence(&FpModule::free(&f, 1), &el(&f, &["1"]), &flagship_oracle(&f, 3).unwrap(), &SopSource::Variables, 1).unwrap();
    let s = &rep.steps[0];
    assert_eq!(s.choice, "nontrivial");
    assert_eq!(s.verdict.label(), "in_to_bound");
    assert!(s.avoids_mm);
}

#[test]
fn factorization() {
    let r = f7(&["x", "y"]);
    let rr = FpModule::free(&r, 1);
    let id = canonical_diagram(&rr, &el(&r, &["1"])).unwrap();
    let inc = ModuleMap::new(&rr, &FpModule::free(&r, 2), Matrix::parse(&r, &[&["1"], &["0"]]).unwrap()).unwrap();
    let rep = factor_phantom_check(&id, &inc, &Trivial).unwrap();
    assert_eq!(rep.status, CheckStatus::Holds);
    let zero = ModuleMap::zero(&rr, &FpModule::free(&r, 1));
    assert!(matches!(factor_phantom_check(&id, &zero, &Trivial), Err(Error::AlphaNotInjective(_))));
}
