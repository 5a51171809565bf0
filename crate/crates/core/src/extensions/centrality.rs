use std::sync::Arc;

use super::Extension;
use crate::error::{Error, Result};
use crate::groups::{direct_product, enumerate_morphisms, Constraints, FiniteGroup, GroupMorphism, Subgroup};

/// A morphism `φ: K × X → X` with `φ(k, 1) = k` and `φ(1, x) = x`.
#[derive(Debug, Clone)]
pub struct Cooperator {
    pub product: Arc<FiniteGroup>,
    pub left: GroupMorphism,
    pub right: GroupMorphism,
    pub map: GroupMorphism,
    /// Number of cooperators found; at most one since the axes generate.
    pub multiplicity: usize,
}

/// Searches for the cooperator of the kernel inclusion and the identity of
/// `X`. It exists exactly when `K` commutes with `X`.
pub fn is_central_huq(e: &Extension) -> Option<Cooperator> {
    let (kg, incl) = e.kernel_group();
    let x = e.total();
    let nx = x.order();
    let product = Arc::new(direct_product(&kg, x));
    let mut c = Constraints::new();
    for k in kg.elements() {
        c = c.pin(k * nx, incl.apply(k));
    }
    for g in x.elements() {
        c = c.pin(g, g);
    }
    let found: Vec<GroupMorphism> = enumerate_morphisms(&product, x, &c).collect();
    let multiplicity = found.len();
    let map = found.into_iter().next()?;
    let map = GroupMorphism::new(product.clone(), x.clone(), map.map().to_vec()).ok()?;
    let left = GroupMorphism::new(kg.clone(), product.clone(), kg.elements().map(|k| k * nx).collect()).ok()?;
    let right = GroupMorphism::new(x.clone(), product.clone(), x.elements().collect()).ok()?;
    Some(Cooperator { product, left, right, map, multiplicity })
}

/// One corner of the square `p R q`, `r R s`, `p ∇ r`, `q ∇ s`: forgetting
/// that corner should be a bijection onto the compatible triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareCertificate {
    pub corner: char,
    pub image_size: usize,
    pub expected: usize,
    pub injective: bool,
}

impl SquareCertificate {
    pub fn holds(&self) -> bool {
        self.injective && self.image_size == self.expected
    }
}

/// Evidence for centrality in the sense of Smith: the kernel pair `R` of the
/// projection and the relation `C = {(p, q, r, s) : pq⁻¹ = rs⁻¹ ∈ K}` on
/// `X⁴`, which is a subgroup exactly when `[R, ∇] = Δ`.
#[derive(Debug, Clone)]
pub struct SmithWitness {
    pub relation_order: usize,
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
    pub relation_is_subgroup: bool,
    pub connector_order: usize,
    pub connector_is_subgroup: bool,
    pub squares: Vec<SquareCertificate>,
}

impl SmithWitness {
    pub fn is_congruence(&self) -> bool {
        self.reflexive && self.symmetric && self.transitive && self.relation_is_subgroup
    }

    pub fn holds(&self) -> bool {
        self.is_congruence() && self.connector_is_subgroup && self.squares.iter().all(SquareCertificate::holds)
    }
}

pub fn is_central_smith(e: &Extension) -> SmithWitness {
    let x = e.total();
    let n = x.order();
    let k = e.kernel();
    let in_k = |a: usize| k.contains(a);
    let related = |p: usize, q: usize| in_k(x.mul(p, x.inv(q)));

    let relation_order = (0..n).map(|p| (0..n).filter(|&q| related(p, q)).count()).sum();
    let reflexive = (0..n).all(|p| related(p, p));
    let mut symmetric = true;
    let mut transitive = true;
    for p in 0..n {
        for &a in k.elements() {
            let q = x.mul(x.inv(a), p);
            symmetric &= related(q, p);
            for &b in k.elements() {
                transitive &= related(p, x.mul(x.inv(b), q));
            }
        }
    }
    // R is generated by (k, 1) and (g, g); closure under those decides it.
    let gens = x.generators();
    let kgens = k.generators(x);
    let mut relation_is_subgroup = true;
    for &a in k.elements() {
        for q in 0..n {
            let p = x.mul(a, q);
            for &g in gens {
                relation_is_subgroup &= related(x.mul(p, g), x.mul(q, g));
            }
            for &b in &kgens {
                relation_is_subgroup &= related(x.mul(p, b), q);
            }
        }
    }

    // C is contained in the subgroup generated by (k,1,k,1), (x,x,1,1) and
    // (1,1,x,x), so it is a subgroup iff it is closed under those.
    let in_c = |c: [usize; 4]| {
        let a = x.mul(c[0], x.inv(c[1]));
        a == x.mul(c[2], x.inv(c[3])) && in_k(a)
    };
    let mut steps: Vec<[usize; 4]> = kgens.iter().map(|&a| [a, 0, a, 0]).collect();
    steps.extend(gens.iter().map(|&g| [g, g, 0, 0]));
    steps.extend(gens.iter().map(|&g| [0, 0, g, g]));
    let mut connector_order = 0;
    let mut connector_is_subgroup = true;
    for &a in k.elements() {
        for q in 0..n {
            for s in 0..n {
                let c = [x.mul(a, q), q, x.mul(a, s), s];
                connector_order += 1;
                for t in &steps {
                    let prod = [x.mul(c[0], t[0]), x.mul(c[1], t[1]), x.mul(c[2], t[2]), x.mul(c[3], t[3])];
                    connector_is_subgroup &= in_c(prod);
                }
            }
        }
    }

    let squares = ['p', 'q', 'r', 's']
        .iter()
        .enumerate()
        .map(|(omit, &corner)| {
            let mut seen = std::collections::HashSet::new();
            for &a in k.elements() {
                for q in 0..n {
                    for s in 0..n {
                        let c = [x.mul(a, q), q, x.mul(a, s), s];
                        let mut key = Vec::with_capacity(3);
                        for (i, &v) in c.iter().enumerate() {
                            if i != omit {
                                key.push(v);
                            }
                        }
                        seen.insert(key);
                    }
                }
            }
            let image_size = seen.len();
            SquareCertificate {
                corner,
                image_size,
                expected: relation_order * n,
                injective: image_size == connector_order,
            }
        })
        .collect();

    SmithWitness {
        relation_order,
        reflexive,
        symmetric,
        transitive,
        relation_is_subgroup,
        connector_order,
        connector_is_subgroup,
        squares,
    }
}

/// For a central extension every subgroup of the kernel is normal in the
/// total group; returns those that are not.
pub fn subobjects_of_kernel_are_normal(e: &Extension) -> Result<Vec<Subgroup>> {
    if !e.is_central() {
        return Err(Error::NotCentral);
    }
    let x = e.total();
    Ok(Subgroup::subgroups_within(x, e.kernel()).into_iter().filter(|s| !s.is_normal_in(x)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::make_extension;
    use crate::groups::{builtin, quotient};

    fn center_ext(total: &str) -> Extension {
        let x = Arc::new(builtin(total).unwrap());
        let z = crate::groups::center(&x);
        let (_, pi) = quotient(&x, &z).unwrap();
        make_extension(pi).unwrap()
    }

    fn derived_ext(total: &str) -> Extension {
        let x = Arc::new(builtin(total).unwrap());
        let w = Subgroup::whole(&x);
        let d = crate::groups::commutator_subgroup(&x, &w, &w).unwrap();
        let (_, pi) = quotient(&x, &d).unwrap();
        make_extension(pi).unwrap()
    }

    #[test]
    fn center_quotients_are_central_in_both_senses() {
        for name in ["Q8", "D4", "C2xC4", "C3xS3"] {
            let e = center_ext(name);
            assert!(e.is_central());
            let c = is_central_huq(&e).expect(name);
            assert_eq!(c.multiplicity, 1);
            let w = is_central_smith(&e);
            assert!(w.holds(), "{name}: {w:?}");
            assert_eq!(w.relation_order, e.total().order() * e.kernel().order());
            assert!(subobjects_of_kernel_are_normal(&e).unwrap().is_empty());
        }
    }

    #[test]
    fn noncentral_kernels_fail_both() {
        for e in [derived_ext("S3"), derived_ext("A4"), derived_ext("S4")] {
            if e.is_central() {
                continue;
            }
            assert!(is_central_huq(&e).is_none());
            let w = is_central_smith(&e);
            assert!(w.is_congruence());
            assert!(!w.connector_is_subgroup);
            assert_eq!(subobjects_of_kernel_are_normal(&e), Err(Error::NotCentral));
        }
    }

    #[test]
    fn noncentral_kernel_can_have_nonnormal_subgroups() {
        let x = Arc::new(builtin("S4").unwrap());
        let v4 = Subgroup::normal_subgroups(&x).into_iter().find(|s| s.order() == 4).unwrap();
        let (_, pi) = quotient(&x, &v4).unwrap();
        let e = make_extension(pi).unwrap();
        assert!(!e.is_central());
        let bad = Subgroup::subgroups_within(&x, e.kernel()).into_iter().filter(|s| !s.is_normal_in(&x)).count();
        assert_eq!(bad, 3);
    }
}
