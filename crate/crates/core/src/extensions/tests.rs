use std::sync::Arc;

use super::*;
use crate::cohomology::{cocycle_of_extension, extension_of_cocycle, h2_cohomology, Cocycle2};
use crate::groups::{builtin, is_isomorphic, GroupMorphism};

fn g(spec: &str) -> Arc<FiniteGroup> {
    Arc::new(builtin(spec).unwrap())
}

fn quotient_ext(x: &Arc<FiniteGroup>, n: &Subgroup) -> Extension {
    let (_, pi) = quotient(x, n).unwrap();
    make_extension(pi).unwrap()
}

fn center_ext(spec: &str) -> Extension {
    let x = g(spec);
    quotient_ext(&x, &center(&x))
}

fn c4_to_c2() -> Extension {
    let x = g("C4");
    let k = Subgroup::generated(&x, &[2]);
    quotient_ext(&x, &k).identify_kernel().unwrap()
}

fn split_c2_c2() -> Extension {
    let x = g("C2xC2");
    let y = g("C2");
    let f = GroupMorphism::new(x, y, vec![0, 0, 1, 1]).unwrap();
    make_extension(f).unwrap().identify_kernel().unwrap()
}

fn is_split(e: &Extension) -> bool {
    find_splitting(e).is_some()
}

#[test]
fn make_extension_examples() {
    let id = GroupMorphism::identity(&g("S3"));
    assert!(make_extension(id).unwrap().kernel().is_trivial());
    assert_eq!(c4_to_c2().kernel().elements(), &[0, 2]);
    let q8 = center_ext("Q8");
    assert_eq!(q8.kernel().order(), 2);
    let not_onto = GroupMorphism::new(g("C2"), g("C4"), vec![0, 2]).unwrap();
    assert_eq!(make_extension(not_onto).unwrap_err(), Error::NotSurjective);
}

#[test]
fn huq_examples() {
    assert!(is_central_huq(&c4_to_c2()).is_some());
    let s3 = g("S3");
    let w = Subgroup::whole(&s3);
    let a3 = commutator_subgroup(&s3, &w, &w).unwrap();
    assert!(is_central_huq(&quotient_ext(&s3, &a3)).is_none());
    let coop = is_central_huq(&center_ext("Q8")).unwrap();
    let e = center_ext("Q8");
    let (kg, incl) = e.kernel_group();
    let nx = e.total().order();
    for a in kg.elements() {
        for x in e.total().elements() {
            assert_eq!(coop.map.apply(a * nx + x), e.total().mul(incl.apply(a), x));
        }
    }
}

#[test]
fn smith_examples() {
    for spec in ["C2xC4", "C3xC3"] {
        let x = g(spec);
        for k in Subgroup::normal_subgroups(&x) {
            assert!(is_central_smith(&quotient_ext(&x, &k)).holds());
        }
    }
    let s3 = g("S3");
    let a3 = Subgroup::generated(&s3, &[s3.elements().find(|&a| s3.element_order(a) == 3).unwrap()]);
    assert!(!is_central_smith(&quotient_ext(&s3, &a3)).holds());
    assert!(is_central_smith(&center_ext("D4")).holds());
}

#[test]
fn kernel_subgroups_are_normal_examples() {
    let e = make_extension(GroupMorphism::identity(&g("D4"))).unwrap();
    assert!(subobjects_of_kernel_are_normal(&e).unwrap().is_empty());
    assert!(subobjects_of_kernel_are_normal(&center_ext("Q8")).unwrap().is_empty());
    let x = g("C2xS3");
    let k = Subgroup::generated(&x, &[6]);
    let e = quotient_ext(&x, &k);
    assert!(e.is_central());
    assert!(subobjects_of_kernel_are_normal(&e).unwrap().is_empty());
}

#[test]
fn central_reflection_examples() {
    let e = center_ext("D4");
    let (r, cmp) = central_reflection(&e);
    assert_eq!(r.total().order(), 8);
    assert!(cmp.is_bijective());

    let s3 = g("S3");
    let w = Subgroup::whole(&s3);
    let a3 = commutator_subgroup(&s3, &w, &w).unwrap();
    let (r, cmp) = central_reflection(&quotient_ext(&s3, &a3));
    assert_eq!(r.total().order(), 2);
    assert!(r.kernel().is_trivial());
    for x in s3.elements() {
        assert_eq!(r.proj().apply(cmp.apply(x)), quotient_ext(&s3, &a3).proj().apply(x));
    }
}

#[test]
fn pushout_examples() {
    let e = c4_to_c2();
    let (kg, _) = e.kernel_group();
    let c2 = CoefficientGroup::cyclic(2);
    let id = GroupMorphism::new(kg.clone(), c2.concrete().clone(), vec![0, 1]).unwrap();
    let same = pushout_along(&e, &id, &c2).unwrap();
    assert!(are_equivalent(&same, &e, EquivalenceMode::FixedKernel).unwrap().is_some());

    let zero = GroupMorphism::zero(&kg, c2.concrete());
    let split = pushout_along(&e, &zero, &c2).unwrap();
    assert!(is_split(&split));

    let c4 = CoefficientGroup::cyclic(4);
    let incl = GroupMorphism::new(kg, c4.concrete().clone(), vec![0, 2]).unwrap();
    // the pushed factor set takes the value 2 = δc(g, g) for c(g) = 1, so
    // the result splits even though the total group has order 8
    let pushed = pushout_along(&e, &incl, &c4).unwrap();
    assert_eq!(pushed.total().order(), 8);
    assert!(is_isomorphic(pushed.total(), &g("C4xC2")).is_some());
    assert!(is_split(&pushed));
    let f = cocycle_of_extension(&pushed).unwrap();
    assert!(h2_cohomology(f.base(), &c4).unwrap().is_coboundary(&f).unwrap());

    let s3 = g("S3");
    let w = Subgroup::whole(&s3);
    let a3 = commutator_subgroup(&s3, &w, &w).unwrap();
    let nc = quotient_ext(&s3, &a3);
    let (kg, _) = nc.kernel_group();
    let c3 = CoefficientGroup::cyclic(3);
    let z = GroupMorphism::zero(&kg, c3.concrete());
    assert_eq!(pushout_along(&nc, &z, &c3).unwrap_err(), Error::NotCentral);
}

#[test]
fn pullback_examples() {
    let e = c4_to_c2();
    let same = pullback_along(&e, &GroupMorphism::identity(e.base())).unwrap();
    assert!(are_equivalent(&same, &e, EquivalenceMode::FixedKernel).unwrap().is_some());

    let w = e.proj().clone();
    let p = pullback_along(&e, &w).unwrap();
    assert!(is_isomorphic(p.total(), &g("C4xC2")).is_some());
    assert!(is_split(&p));
    let one = Arc::new(crate::groups::trivial());
    let w1 = GroupMorphism::zero(&one, e.base());
    let k = pullback_along(&e, &w1).unwrap();
    assert_eq!(k.total().order(), 2);
    assert_eq!(k.base().order(), 1);
}

#[test]
fn equivalence_examples() {
    let e = c4_to_c2();
    let w = are_equivalent(&e, &e, EquivalenceMode::FixedKernel).unwrap().unwrap();
    assert!(w.iso.is_bijective());
    assert!(are_equivalent(&e, &split_c2_c2(), EquivalenceMode::FixedKernel).unwrap().is_none());
    assert!(are_equivalent(&e, &split_c2_c2(), EquivalenceMode::OverBase).unwrap().is_none());

    let y = g("C2xC2");
    let a = CoefficientGroup::cyclic(2);
    let h = h2_cohomology(&y, &a).unwrap();
    let f = h.cocycle(&[1, 0, 1]);
    let c: Vec<usize> = vec![0, 1, 1, 0];
    let f2 = f.add(&Cocycle2::coboundary(&y, &a, &c)).unwrap();
    let e1 = extension_of_cocycle(&f);
    let e2 = extension_of_cocycle(&f2);
    let wit = are_equivalent(&e1, &e2, EquivalenceMode::FixedKernel).unwrap().unwrap();
    assert!(wit.iso.is_bijective());

    let other = center_ext("Q8");
    assert_eq!(are_equivalent(&e, &other, EquivalenceMode::OverBase).unwrap_err(), Error::BaseMismatch);
    let bare = make_extension(e.proj().clone()).unwrap();
    assert!(matches!(are_equivalent(&bare, &e, EquivalenceMode::FixedKernel), Err(Error::KernelMismatch(_))));
}

#[test]
fn fixed_kernel_is_finer_than_over_base() {
    // Over C3 with A = C3 the two nontrivial classes have isomorphic totals
    // (C9) related by the automorphism -1 of A, which is not allowed when the
    // kernel is fixed.
    let y = g("C3");
    let a = CoefficientGroup::cyclic(3);
    let fixed = classify_by_catalog(&y, &a, EquivalenceMode::FixedKernel).unwrap();
    let loose = classify_by_catalog(&y, &a, EquivalenceMode::OverBase).unwrap();
    assert_eq!(fixed.len(), 3);
    assert_eq!(loose.len(), 2);
}

#[test]
fn classify_examples() {
    let c2 = CoefficientGroup::cyclic(2);
    let classes = classify_central(&g("C2"), &c2, 1024).unwrap();
    assert_eq!(classes.len(), 2);
    let totals: Vec<bool> = classes.iter().map(|c| c.extension.total().is_abelian()).collect();
    assert_eq!(totals, vec![true, true]);
    assert!(classes.iter().any(|c| is_isomorphic(c.extension.total(), &g("C4")).is_some()));

    assert_eq!(classify_central(&g("C2xC2"), &c2, 1024).unwrap().len(), 8);
    assert_eq!(classify_by_catalog(&g("C2xC2"), &c2, EquivalenceMode::FixedKernel).unwrap().len(), 8);
    assert_eq!(classify_central(&g("C3"), &c2, 1024).unwrap().len(), 1);
    assert_eq!(classify_by_catalog(&g("C3"), &c2, EquivalenceMode::FixedKernel).unwrap().len(), 1);
    assert!(matches!(classify_central(&g("C2xC2"), &c2, 4), Err(Error::SolverCapExceeded { size: 8, cap: 4 })));
}

#[test]
fn baer_examples() {
    let e = c4_to_c2();
    let split = split_c2_c2();
    let s = baer_sum(&e, &split).unwrap();
    assert!(are_equivalent(&s, &e, EquivalenceMode::FixedKernel).unwrap().is_some());
    let twice = baer_sum(&e, &e).unwrap();
    assert!(is_isomorphic(twice.total(), &g("C2xC2")).is_some());
    assert!(is_split(&twice));

    let q8 = center_ext("Q8").identify_kernel().unwrap();
    let a = q8.identification().unwrap().coeff().clone();
    let r = a.structure().rank();
    let neg: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| if i == j { -1 } else { 0 }).collect()).collect();
    let minus = crate::abelian::AbMorphism::new(a.structure().clone(), a.structure().clone(), neg).unwrap();
    let inv = pushout_coefficients(&q8, &minus, &a).unwrap();
    assert!(is_split(&baer_sum(&q8, &inv).unwrap()));

    let f = cocycle_of_extension(&q8).unwrap();
    let h = h2_cohomology(q8.base(), &a).unwrap();
    let sum = cocycle_of_extension(&baer_sum(&q8, &q8).unwrap()).unwrap();
    let expect: Vec<i64> = h.coordinates(&f).unwrap().iter().map(|c| 2 * c).collect();
    assert_eq!(h.structure().reduce(&expect), h.coordinates(&sum).unwrap());
}

#[test]
fn json_round_trip() {
    let e = center_ext("Q8").identify_kernel().unwrap();
    let back = Extension::from_json(&e.to_json()).unwrap();
    assert!(are_equivalent(&e, &back, EquivalenceMode::FixedKernel).unwrap().is_some());

    let v = serde_json::json!({"total": "C4", "proj": {"map": [0, 1, 0, 1]}});
    let e = Extension::from_json(&v).unwrap();
    assert_eq!(e.base().order(), 2);
    assert!(e.identification().is_none());

    let v = serde_json::json!({"total": "C4", "proj": {"map": [0, 1, 0, 1]}, "kernel_identification": {"map": [0, 2]}});
    let e = Extension::from_json(&v).unwrap();
    assert_eq!(e.identification().unwrap().coeff().structure().factors(), &[2]);

    let bad = serde_json::json!({"total": "C4", "proj": {"map": [0, 1, 2, 3]}, "base": "C2"});
    assert!(Extension::from_json(&bad).is_err());
    let not_onto = serde_json::json!({"total": "C2", "proj": {"map": [0, 0]}, "base": "C2"});
    assert_eq!(Extension::from_json(&not_onto).unwrap_err(), Error::NotSurjective);
    let wrong_kernel =
        serde_json::json!({"total": "C4", "proj": {"map": [0, 1, 0, 1]}, "kernel_identification": {"map": [0, 1]}});
    assert!(matches!(Extension::from_json(&wrong_kernel), Err(Error::KernelMismatch(_))));
}
