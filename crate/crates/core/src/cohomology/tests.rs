use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::abelian::ext_group;
use crate::catalog::catalog;
use crate::extensions::{find_splitting, make_extension};
use crate::groups::{builtin, quotient, Subgroup};
use crate::homology::{h2, kernel_mod_commutator};

fn g(spec: &str) -> Arc<FiniteGroup> {
    Arc::new(builtin(spec).unwrap())
}

fn coeffs() -> Vec<CoefficientGroup> {
    ["C2", "C3", "C4", "C2xC2"].iter().map(|s| CoefficientGroup::from_spec(s).unwrap()).collect()
}

/// Counts normalized cocycles by backtracking over the table, checking each
/// instance of the cocycle identity as soon as its four values are set.
/// With `symmetric`, only cocycles with `f(x,y) = f(y,x)` are counted.
/// Gives up (returns `None`) after `limit` leaves.
fn count_cocycles(y: &FiniteGroup, a: &CoefficientGroup, symmetric: bool, limit: u64) -> Option<u64> {
    let n = y.order();
    let pair = |x: usize, z: usize| -> Option<usize> {
        if x == 0 || z == 0 {
            None
        } else if symmetric && z < x {
            Some((z - 1) * (n - 1) + (x - 1))
        } else {
            Some((x - 1) * (n - 1) + (z - 1))
        }
    };
    let slots = (n - 1) * (n - 1);
    let mut checks: Vec<Vec<[Option<usize>; 4]>> = vec![Vec::new(); slots];
    for x in 1..n {
        for yy in 1..n {
            for z in 1..n {
                let t = [pair(x, yy), pair(y.mul(x, yy), z), pair(yy, z), pair(x, y.mul(yy, z))];
                let last = t.iter().flatten().copied().max();
                if let Some(p) = last {
                    checks[p].push(t);
                }
            }
        }
    }
    let order: Vec<usize> = (0..slots).filter(|&p| !symmetric || (p / (n - 1)) <= (p % (n - 1))).collect();
    let mut val = vec![0usize; slots];
    let mut leaves = 0u64;
    fn rec(
        i: usize,
        order: &[usize],
        val: &mut Vec<usize>,
        checks: &[Vec<[Option<usize>; 4]>],
        a: &CoefficientGroup,
        leaves: &mut u64,
        limit: u64,
    ) -> bool {
        if i == order.len() {
            *leaves += 1;
            return *leaves <= limit;
        }
        let p = order[i];
        for v in 0..a.order() {
            val[p] = v;
            let get = |s: Option<usize>| s.map_or(0, |s| val[s]);
            let ok = checks[p].iter().all(|t| a.add(get(t[0]), get(t[1])) == a.add(get(t[2]), get(t[3])));
            if ok && !rec(i + 1, order, val, checks, a, leaves, limit) {
                return false;
            }
        }
        true
    }
    rec(0, &order, &mut val, &checks, a, &mut leaves, limit).then_some(leaves)
}

/// `|Hom(Y, A)|` by morphism enumeration.
fn hom_count(y: &Arc<FiniteGroup>, a: &CoefficientGroup) -> u64 {
    enumerate_morphisms(y, a.concrete(), &Constraints::new()).count() as u64
}

/// `|H²| = |Z²| · |Hom(Y, A)| / |A|^(|Y|−1)`, since `δ` on normalized
/// 1-cochains has kernel `Hom(Y, A)`.
fn brute_force_h2_order(y: &Arc<FiniteGroup>, a: &CoefficientGroup, symmetric: bool, limit: u64) -> Option<u64> {
    let z = count_cocycles(y, a, symmetric, limit)?;
    let b = (a.order() as u64).pow(y.order() as u32 - 1) / hom_count(y, a);
    assert_eq!(z % b, 0);
    Some(z / b)
}

#[test]
fn h2_examples() {
    let c2 = CoefficientGroup::cyclic(2);
    assert_eq!(h2_cohomology(&g("C2"), &c2).unwrap().structure().factors(), &[2]);
    assert_eq!(h2_cohomology(&g("C2xC2"), &c2).unwrap().structure().order(), 8);
    assert!(h2_cohomology(&g("S3"), &CoefficientGroup::cyclic(3)).unwrap().structure().is_zero());
}

#[test]
fn brute_force_c2_on_c2() {
    // the single free value f(g, g) is unconstrained; no coboundary is nonzero
    let y = g("C2");
    let a = CoefficientGroup::cyclic(2);
    assert_eq!(count_cocycles(&y, &a, false, u64::MAX), Some(2));
    let f = Cocycle2::from_fn(&y, &a, |x, z| usize::from(x == 1 && z == 1)).unwrap();
    let h = h2_cohomology(&y, &a).unwrap();
    assert!(!h.is_coboundary(&f).unwrap());
}

#[test]
fn solver_matches_exhaustive_count() {
    let mut checked = 0;
    for y in catalog() {
        let y = Arc::new(y);
        for a in coeffs() {
            let n = y.order();
            if n * n * a.order() > 1 << 16 {
                continue;
            }
            // the solver only picks which cases fit the enumeration budget
            let h = h2_cohomology(&y, &a).unwrap();
            let cocycles =
                h.structure().order() as f64 * (a.order() as f64).powi(n as i32 - 1) / hom_count(&y, &a) as f64;
            if cocycles > (1u64 << 14) as f64 {
                continue;
            }
            let bf = brute_force_h2_order(&y, &a, false, 1 << 20).expect("within budget");
            assert_eq!(h.structure().order() as u64, bf, "{} with {}", y.label(), a.label());
            checked += 1;
        }
    }
    assert!(checked >= 30, "only {checked} cases fit the brute-force budget");
}

#[test]
fn ext_matches_symmetric_cocycles() {
    for ys in ["C2", "C3", "C4", "C2xC2", "C5", "C6", "C7", "C8", "C4xC2", "C2xC2xC2"] {
        let y = g(ys);
        for as_ in ["C2", "C3", "C4", "C2xC2", "C5", "C6", "C7", "C8", "C4xC2"] {
            let a = CoefficientGroup::from_spec(as_).unwrap();
            let Some(bf) = brute_force_h2_order(&y, &a, true, 1 << 22) else { continue };
            let yab = crate::homology::h1(&y).structure().clone();
            assert_eq!(ext_group(&yab, a.structure()).structure().order() as u64, bf, "Ext({ys}, {as_})");
        }
    }
}

#[test]
fn h1_examples() {
    let c2 = CoefficientGroup::cyclic(2);
    assert!(h1_cohomology(&g("C3"), &c2).structure().is_zero());
    let s3 = h1_cohomology(&g("S3"), &c2);
    assert_eq!(s3.structure().factors(), &[2]);
    let sign = s3.morphism(&[1]);
    assert_eq!(sign.kernel().order(), 3);
    assert_eq!(h1_cohomology(&g("Q8"), &c2).structure().order(), 4);
    let q8 = h1_cohomology(&g("Q8"), &c2);
    for phi in q8.basis() {
        assert_eq!(q8.morphism(&q8.coords_of(&phi)), phi);
    }
}

fn c4_to_c2() -> Extension {
    let x = g("C4");
    let (_, pi) = quotient(&x, &Subgroup::generated(&x, &[2])).unwrap();
    make_extension(pi).unwrap().identify_kernel().unwrap()
}

fn q8_ext() -> Extension {
    let x = g("Q8");
    let (_, pi) = quotient(&x, &crate::groups::center(&x)).unwrap();
    make_extension(pi).unwrap().identify_kernel().unwrap()
}

#[test]
fn cocycle_of_extension_examples() {
    let y = g("C3");
    let a = CoefficientGroup::cyclic(2);
    let split = extension_of_cocycle(&Cocycle2::zero(&y, &a));
    assert!(cocycle_of_extension(&split).unwrap().values().iter().all(|&v| v == 0));

    let f = cocycle_of_extension(&c4_to_c2()).unwrap();
    assert_eq!(f.values(), &[0, 0, 0, 1]);

    let f = cocycle_of_extension(&q8_ext()).unwrap();
    let h = h2_cohomology(f.base(), f.coeff()).unwrap();
    assert!(!h.is_coboundary(&f).unwrap());
    assert!(h.solve_coboundary(&f).unwrap().is_none());

    let s3 = g("S3");
    let a3 = Subgroup::generated(&s3, &[s3.elements().find(|&x| s3.element_order(x) == 3).unwrap()]);
    let (_, pi) = quotient(&s3, &a3).unwrap();
    let e = make_extension(pi).unwrap().identify_kernel().unwrap();
    assert_eq!(cocycle_of_extension(&e).unwrap_err(), Error::NotCentral);
    let (_, pi) = quotient(&g("C4"), &Subgroup::generated(&g("C4"), &[2])).unwrap();
    assert!(matches!(cocycle_of_extension(&make_extension(pi).unwrap()), Err(Error::KernelMismatch(_))));
}

#[test]
fn extension_of_cocycle_examples() {
    let y = g("C2");
    let a = CoefficientGroup::cyclic(2);
    let split = extension_of_cocycle(&Cocycle2::zero(&y, &a));
    assert!(find_splitting(&split).is_some());
    assert!(split.total().is_abelian() && split.total().exponent() == 2);
    let f = Cocycle2::from_fn(&y, &a, |x, z| usize::from(x == 1 && z == 1)).unwrap();
    let e = extension_of_cocycle(&f);
    assert_eq!(e.total().element_order(2), 4);
}

#[test]
fn round_trip_through_extensions() {
    for y in catalog() {
        let y = Arc::new(y);
        for a in coeffs() {
            if y.order() * a.order() > 16 {
                continue;
            }
            let h = h2_cohomology(&y, &a).unwrap();
            for coords in h.classes() {
                let f = h.cocycle(&coords);
                let back = cocycle_of_extension(&extension_of_cocycle(&f)).unwrap();
                assert_eq!(back, f);
                assert_eq!(h.coordinates(&back).unwrap(), coords);
            }
        }
    }
}

#[test]
fn representatives_are_cocycles_and_independent() {
    for (ys, as_) in [("C2xC2", "C2"), ("D4", "C2xC2"), ("C4xC4", "C4"), ("Q8", "C4"), ("A4", "C2")] {
        let y = g(ys);
        let a = CoefficientGroup::from_spec(as_).unwrap();
        let h = h2_cohomology(&y, &a).unwrap();
        for (i, r) in h.representatives().iter().enumerate() {
            r.check().unwrap();
            let mut e = h.structure().zero_element();
            e[i] = 1;
            assert_eq!(h.coordinates(r).unwrap(), e);
            let d = h.structure().factors()[i] as i64;
            assert!(h.is_coboundary(&r.scale(d)).unwrap());
            assert!(!h.is_coboundary(&r.scale(d / 2)).unwrap() || d / 2 == 0);
        }
    }
}

#[test]
fn solve_coboundary_produces_a_primitive() {
    let y = g("D4");
    let a = CoefficientGroup::from_spec("C4").unwrap();
    let h = h2_cohomology(&y, &a).unwrap();
    let c: Vec<usize> = (0..8).map(|i| if i == 0 { 0 } else { (i * 3) % 4 }).collect();
    let f = Cocycle2::coboundary(&y, &a, &c);
    let prim = h.solve_coboundary(&f).unwrap().unwrap();
    assert_eq!(Cocycle2::coboundary(&y, &a, &prim), f);
}

#[test]
fn restriction_examples() {
    let e = c4_to_c2();
    let kq = kernel_mod_commutator(&e);
    let a = CoefficientGroup::cyclic(2);
    let zero = GroupMorphism::zero(e.total(), a.concrete());
    assert!(restriction_to_kernel(&kq, &zero, &a).is_zero());
    let onto = GroupMorphism::new(e.total().clone(), a.concrete().clone(), vec![0, 1, 0, 1]).unwrap();
    assert!(restriction_to_kernel(&kq, &onto, &a).is_zero());

    let e = q8_ext();
    let kq = kernel_mod_commutator(&e);
    for phi in enumerate_morphisms(e.total(), a.concrete(), &Constraints::new()) {
        assert!(restriction_to_kernel(&kq, &phi, &a).is_zero());
    }
}

#[test]
fn transgression_examples() {
    let a = CoefficientGroup::cyclic(2);
    let e = c4_to_c2();
    let kq = kernel_mod_commutator(&e);
    let zero = AbMorphism::zero(kq.structure(), a.structure());
    let t0 = cohomology_transgression(&e, &zero, &a).unwrap();
    let h = h2_cohomology(e.base(), &a).unwrap();
    assert!(h.is_coboundary(&t0).unwrap());
    let id = AbMorphism::identity(kq.structure());
    let t1 = cohomology_transgression(&e, &id, &a).unwrap();
    assert!(!h.is_coboundary(&t1).unwrap());
    assert!(extend_to_total(&e, &id, &a).is_none());

    let x = g("C2xC2");
    let f = GroupMorphism::new(x, g("C2"), vec![0, 0, 1, 1]).unwrap();
    let e = make_extension(f).unwrap();
    let kq = kernel_mod_commutator(&e);
    let id = AbMorphism::identity(kq.structure());
    let t = cohomology_transgression(&e, &id, &a).unwrap();
    assert!(h.is_coboundary(&t).unwrap());
    assert!(extend_to_total(&e, &id, &a).is_some());
}

#[test]
fn inflation_examples() {
    let a = CoefficientGroup::cyclic(2);
    let c4 = g("C4");
    let c2 = g("C2");
    let f = GroupMorphism::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
    let zero = inflation(&f, &Cocycle2::zero(&c2, &a)).unwrap();
    assert!(zero.values().iter().all(|&v| v == 0));
    let cls = cocycle_of_extension(&c4_to_c2()).unwrap();
    let inf = inflation(&f, &cls).unwrap();
    assert!(h2_cohomology(&c4, &a).unwrap().is_coboundary(&inf).unwrap());
    let inj = GroupMorphism::new(c2.clone(), c4.clone(), vec![0, 2]).unwrap();
    assert_eq!(inflation(&inj, &Cocycle2::zero(&c4, &a)).unwrap_err(), Error::NotSurjective);
}

#[test]
fn pairing_on_klein_four() {
    let y = g("C2xC2");
    let a = CoefficientGroup::cyclic(2);
    let h = h2_cohomology(&y, &a).unwrap();
    let hy = h2(&y).unwrap();
    let (hom, m) = pairing_morphism(&h, &hy).unwrap();
    assert_eq!(hom.structure().order(), 2);
    let mut fibers = std::collections::BTreeMap::new();
    for c in h.classes() {
        *fibers.entry(m.apply(&c)).or_insert(0) += 1;
    }
    assert_eq!(fibers.len(), 2);
    assert!(fibers.values().all(|&v| v == 4));
}

#[test]
fn cocycle_json_shape() {
    let f = cocycle_of_extension(&c4_to_c2()).unwrap();
    let v = f.to_json();
    assert_eq!(v["coeff"], serde_json::json!([2]));
    assert_eq!(v["values"], serde_json::json!([[0, 0], [0, 1]]));
}

fn small_pairs() -> Vec<(&'static str, &'static str)> {
    vec![("C2xC2", "C2"), ("C4", "C4"), ("D4", "C2"), ("S3", "C6"), ("C2xC4", "C2xC2"), ("Q8", "C4")]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coordinates_are_additive(idx in 0usize..6, s in prop::collection::vec(0i64..16, 8), t in prop::collection::vec(0i64..16, 8)) {
        let (ys, as_) = small_pairs()[idx];
        let y = g(ys);
        let a = CoefficientGroup::from_spec(as_).unwrap();
        let h = h2_cohomology(&y, &a).unwrap();
        let r = h.structure().rank();
        let (u, v) = (h.structure().reduce(&s[..r]), h.structure().reduce(&t[..r]));
        let f = h.cocycle(&u);
        let f2 = h.cocycle(&v);
        let sum: Vec<i64> = u.iter().zip(&v).map(|(p, q)| p + q).collect();
        prop_assert_eq!(h.coordinates(&f.add(&f2).unwrap()).unwrap(), h.structure().reduce(&sum));
        prop_assert!(h.is_coboundary(&f.add(&f.neg()).unwrap()).unwrap());
    }

    #[test]
    fn coboundaries_have_zero_coordinates(idx in 0usize..6, c in prop::collection::vec(0usize..64, 8)) {
        let (ys, as_) = small_pairs()[idx];
        let y = g(ys);
        let a = CoefficientGroup::from_spec(as_).unwrap();
        let h = h2_cohomology(&y, &a).unwrap();
        let mut cochain: Vec<usize> = c.iter().take(y.order()).map(|v| v % a.order()).collect();
        cochain.resize(y.order(), 0);
        cochain[0] = 0;
        let f = Cocycle2::coboundary(&y, &a, &cochain);
        prop_assert_eq!(h.coordinates(&f).unwrap(), h.structure().zero_element());
    }

    #[test]
    fn pairing_is_natural_in_coefficients(idx in 0usize..4, coords in prop::collection::vec(0i64..8, 8)) {
        // a: C4 -> C2 reduction, C2 -> C4 doubling, C4 -> C4 by 3 and C2xC2 -> C2 first factor
        let maps: [(&str, &str, Vec<Vec<i64>>); 4] = [
            ("C4", "C2", vec![vec![1]]),
            ("C2", "C4", vec![vec![2]]),
            ("C4", "C4", vec![vec![3]]),
            ("C2xC2", "C2", vec![vec![1, 0]]),
        ];
        let (src, tgt, mat) = &maps[idx];
        let a = CoefficientGroup::from_spec(src).unwrap();
        let b = CoefficientGroup::from_spec(tgt).unwrap();
        let m = AbMorphism::new(a.structure().clone(), b.structure().clone(), mat.clone()).unwrap();
        for ys in ["C2xC2", "D4", "C4xC2"] {
            let y = g(ys);
            let h = h2_cohomology(&y, &a).unwrap();
            let hy = h2(&y).unwrap();
            let r = h.structure().rank();
            let f = h.cocycle(&h.structure().reduce(&coords[..r]));
            let left = pairing_to_hom(&hy, &f.pushforward(&m, &b)).unwrap();
            let right = pairing_to_hom(&hy, &f).unwrap().then(&m).unwrap();
            prop_assert_eq!(left.matrix(), right.matrix());
        }
    }
}
