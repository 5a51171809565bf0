use std::sync::Arc;

use super::{Extension, PairGroup};
use crate::catalog::groups_of_order;
use crate::cohomology::{extension_of_cocycle, h2_cohomology, Cocycle2, CoefficientGroup};
use crate::error::{Error, Result};
use crate::groups::{enumerate_morphisms, quotient, Constraints, FiniteGroup, GroupMorphism, Subgroup};

/// Which isomorphisms count as equivalences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceMode {
    /// Over `Y` and restricting to the identity of `A` through both
    /// identifications.
    FixedKernel,
    /// Over `Y` only.
    OverBase,
}

#[derive(Debug, Clone)]
pub struct EquivalenceWitness {
    pub iso: GroupMorphism,
}

/// Searches for an isomorphism `X → X′` over `Y`, also fixing the
/// coefficients in [`EquivalenceMode::FixedKernel`].
pub fn are_equivalent(e: &Extension, other: &Extension, mode: EquivalenceMode) -> Result<Option<EquivalenceWitness>> {
    if **e.base() != **other.base() {
        return Err(Error::BaseMismatch);
    }
    let mut c = Constraints::new().over(e.proj().map().to_vec(), other.proj().map().to_vec());
    if mode == EquivalenceMode::FixedKernel {
        let (Some(i1), Some(i2)) = (e.identification(), other.identification()) else {
            return Err(Error::KernelMismatch("both extensions need a kernel identification".into()));
        };
        if i1.coeff() != i2.coeff() {
            return Err(Error::KernelMismatch("extensions have different coefficient groups".into()));
        }
        for a in 0..i1.coeff().order() {
            c = c.pin(i1.apply(a), i2.apply(a));
        }
    }
    if e.total().order() != other.total().order() {
        return Ok(None);
    }
    Ok(enumerate_morphisms(e.total(), other.total(), &c)
        .find(GroupMorphism::is_bijective)
        .map(|iso| EquivalenceWitness { iso }))
}

/// For each element of the base, the sorted element orders of its fiber.
/// Equivalent extensions have equal signatures.
pub fn fiber_signature(e: &Extension) -> Vec<Vec<usize>> {
    let x = e.total();
    let mut sig = vec![Vec::new(); e.base().order()];
    for g in x.elements() {
        sig[e.proj().apply(g)].push(x.element_order(g));
    }
    sig.iter_mut().for_each(|v| v.sort_unstable());
    sig
}

/// `(X ×_Y X′)/{(ι(a), ι′(−a))}` with kernel identified with `A`.
pub fn baer_sum(e: &Extension, other: &Extension) -> Result<Extension> {
    if **e.base() != **other.base() {
        return Err(Error::BaseMismatch);
    }
    let (Some(i1), Some(i2)) = (e.identification(), other.identification()) else {
        return Err(Error::KernelMismatch("both extensions need a kernel identification".into()));
    };
    if i1.coeff() != i2.coeff() {
        return Err(Error::KernelMismatch("extensions have different coefficient groups".into()));
    }
    if !e.is_central() || !other.is_central() {
        return Err(Error::NotCentral);
    }
    let a = i1.coeff();
    let label = format!("{}+{}", e.total().label(), other.total().label());
    let pg = PairGroup::new(e.total(), other.total(), |p, q| e.proj().apply(p) == other.proj().apply(q), &label);
    let anti: Vec<usize> = (0..a.order()).map(|s| pg.index(i1.apply(s), i2.apply(a.neg(s)))).collect();
    let n = Subgroup::new(&pg.group, anti)?;
    let (q, pi) = quotient(&pg.group, &n)?;
    let mut down = vec![0usize; q.order()];
    for (i, &(p, _)) in pg.pairs.iter().enumerate() {
        down[pi.apply(i)] = e.proj().apply(p);
    }
    let q = Arc::new(q.as_ref().clone().with_label(&label));
    let proj = GroupMorphism::new_unchecked(q, e.base().clone(), down);
    let embed = (0..a.order()).map(|s| pi.apply(pg.index(i1.apply(s), 0))).collect();
    Extension::from_parts(proj).with_identification(a.clone(), embed)
}

/// A class of `H²(Y, A)` with its factor set and extension.
#[derive(Debug, Clone)]
pub struct CentralClass {
    pub coords: Vec<i64>,
    pub cocycle: Cocycle2,
    pub extension: Extension,
}

/// One extension per class of `H²(Y, A)`, checked pairwise inequivalent.
/// Refuses when there are more than `max_classes` classes.
pub fn classify_central(
    y: &Arc<FiniteGroup>,
    coeff: &CoefficientGroup,
    max_classes: usize,
) -> Result<Vec<CentralClass>> {
    let h = h2_cohomology(y, coeff)?;
    let count = h.structure().order();
    if count > max_classes as u128 {
        return Err(Error::SolverCapExceeded { size: count.min(usize::MAX as u128) as usize, cap: max_classes });
    }
    let classes: Vec<CentralClass> = h
        .classes()
        .map(|coords| {
            let cocycle = h.cocycle(&coords);
            let extension = extension_of_cocycle(&cocycle);
            CentralClass { coords, cocycle, extension }
        })
        .collect();
    let sigs: Vec<_> = classes.iter().map(|c| fiber_signature(&c.extension)).collect();
    for i in 0..classes.len() {
        for j in 0..i {
            if sigs[i] == sigs[j]
                && are_equivalent(&classes[i].extension, &classes[j].extension, EquivalenceMode::FixedKernel)?.is_some()
            {
                return Err(Error::Inconsistent(format!(
                    "classes {:?} and {:?} give equivalent extensions",
                    classes[j].coords, classes[i].coords
                )));
            }
        }
    }
    Ok(classes)
}

/// Every central extension of `Y` by `A`, up to equivalence, found by
/// running through the catalog groups of order `|Y|·|A|`, their
/// surjections onto `Y` and the identifications of `A` with the kernel.
pub fn classify_by_catalog(
    y: &Arc<FiniteGroup>,
    coeff: &CoefficientGroup,
    mode: EquivalenceMode,
) -> Result<Vec<Extension>> {
    let n = y.order() * coeff.order();
    let a = coeff.concrete();
    let mut out = Vec::new();
    for x in groups_of_order(n)? {
        let x = Arc::new(x);
        let mut reps: Vec<(Vec<Vec<usize>>, Extension)> = Vec::new();
        for f in enumerate_morphisms(&x, y, &Constraints::new()) {
            if !f.is_surjective() {
                continue;
            }
            let k = f.kernel();
            if !k.is_central_in(&x) || k.order() != a.order() {
                continue;
            }
            let base = Extension::from_parts(f);
            let mut candidates = Vec::new();
            if mode == EquivalenceMode::OverBase {
                if let Ok(e) = base.clone().identify_kernel() {
                    candidates.push(e);
                }
            } else {
                let mut c = Constraints::new();
                // images must lie in K
                let labels_a = vec![0usize; a.order()];
                let labels_x: Vec<usize> = x.elements().map(|g| usize::from(!k.contains(g))).collect();
                c = c.over(labels_a, labels_x);
                for iota in enumerate_morphisms(a, &x, &c) {
                    if iota.is_injective() {
                        candidates.push(base.clone().with_identification(coeff.clone(), iota.map().to_vec())?);
                    }
                }
            }
            for e in candidates {
                let sig = fiber_signature(&e);
                let mut seen = false;
                for (s, r) in &reps {
                    if *s == sig && are_equivalent(&e, r, mode)?.is_some() {
                        seen = true;
                        break;
                    }
                }
                if !seen {
                    reps.push((sig, e));
                }
            }
        }
        out.extend(reps.into_iter().map(|(_, e)| e));
    }
    Ok(out)
}
