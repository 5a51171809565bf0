use std::collections::BTreeSet;

use super::{FiniteGroup, GroupMorphism};
use crate::error::{Error, Result};
use std::sync::Arc;

/// A subgroup, stored as the sorted list of its elements in the parent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent_order: usize,
    elements: Vec<usize>,
}

impl Subgroup {
    /// Checks that `elements` form a subgroup of `g`.
    pub fn new(g: &FiniteGroup, elements: impl IntoIterator<Item = usize>) -> Result<Subgroup> {
        let set: BTreeSet<usize> = elements.into_iter().collect();
        let s = Subgroup { parent_order: g.order(), elements: set.into_iter().collect() };
        if s.is_subgroup_of(g) {
            Ok(s)
        } else {
            Err(Error::ForeignSubgroup)
        }
    }

    /// The subgroup generated by `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
        Subgroup { parent_order: g.order(), elements: g.closure(gens) }
    }

    pub fn whole(g: &FiniteGroup) -> Subgroup {
        Subgroup { parent_order: g.order(), elements: g.elements().collect() }
    }

    pub fn trivial(g: &FiniteGroup) -> Subgroup {
        Subgroup { parent_order: g.order(), elements: vec![0] }
    }

    pub(crate) fn from_sorted_unchecked(parent_order: usize, elements: Vec<usize>) -> Subgroup {
        Subgroup { parent_order, elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Greedy generators: each is the smallest element outside the
    /// subgroup generated by the previous ones.
    pub fn generators(&self, g: &FiniteGroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for &x in &self.elements {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = g.closure(&gens);
            }
        }
        gens
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, g: &FiniteGroup) -> bool {
        self.parent_order == g.order()
            && self.elements.first() == Some(&0)
            && self.elements.iter().all(|&x| x < g.order())
            && self
                .elements
                .iter()
                .all(|&a| self.contains(g.inv(a)) && self.elements.iter().all(|&b| self.contains(g.mul(a, b))))
    }

    pub fn is_normal_in(&self, g: &FiniteGroup) -> bool {
        g.generators().iter().all(|&s| self.elements.iter().all(|&a| self.contains(g.conjugate(s, a))))
    }

    pub fn is_central_in(&self, g: &FiniteGroup) -> bool {
        g.generators().iter().all(|&s| self.elements.iter().all(|&a| g.mul(s, a) == g.mul(a, s)))
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.elements.iter().all(|&a| self.elements.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// The subgroup as a group in its own right, with the inclusion into `g`.
    /// Element `i` of the new group is `elements()[i]`.
    pub fn as_group(&self, g: &Arc<FiniteGroup>, label: &str) -> (Arc<FiniteGroup>, GroupMorphism) {
        let n = self.elements.len();
        let mut pos = vec![usize::MAX; g.order()];
        for (i, &x) in self.elements.iter().enumerate() {
            pos[x] = i;
        }
        let mut t = vec![0u32; n * n];
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                t[i * n + j] = pos[g.mul(a, b)] as u32;
            }
        }
        let sub = Arc::new(FiniteGroup::from_flat_table(t, n, label));
        let incl = GroupMorphism::new_unchecked(sub.clone(), g.clone(), self.elements.clone());
        (sub, incl)
    }

    /// Every subgroup of `g`, sorted by order then elements.
    pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
        Self::subgroups_within(g, &Subgroup::whole(g))
    }

    /// Every subgroup of `g` contained in `within`.
    pub fn subgroups_within(g: &FiniteGroup, within: &Subgroup) -> Vec<Subgroup> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(vec![0]);
        let mut queue: Vec<Vec<usize>> = vec![vec![0]];
        while let Some(h) = queue.pop() {
            let hs = Subgroup { parent_order: g.order(), elements: h.clone() };
            for &x in within.elements() {
                if hs.contains(x) {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(x);
                let next = g.closure(&gens);
                if found.insert(next.clone()) {
                    queue.push(next);
                }
            }
        }
        let mut subs: Vec<Subgroup> =
            found.into_iter().map(|e| Subgroup { parent_order: g.order(), elements: e }).collect();
        subs.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        subs
    }

    pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
        Self::all_subgroups(g).into_iter().filter(|s| s.is_normal_in(g)).collect()
    }
}

/// The subgroup generated by all `a⁻¹b⁻¹ab` with `a ∈ A`, `b ∈ B`.
pub fn commutator_subgroup(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    if !a.is_subgroup_of(g) || !b.is_subgroup_of(g) {
        return Err(Error::ForeignSubgroup);
    }
    let mut comms: BTreeSet<usize> = BTreeSet::new();
    for &x in a.elements() {
        for &y in b.elements() {
            comms.insert(g.commutator(x, y));
        }
    }
    comms.remove(&0);
    let gens: Vec<usize> = comms.into_iter().collect();
    Ok(Subgroup::generated(g, &gens))
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let gens = g.generators();
    let elements = g.elements().filter(|&z| gens.iter().all(|&s| g.mul(z, s) == g.mul(s, z))).collect();
    Subgroup { parent_order: g.order(), elements }
}

/// `G/N` with its canonical projection. Cosets are numbered in order of their
/// smallest element, so the coset of `x` is numbered before that of `y`
/// whenever `min(xN) < min(yN)`.
pub fn quotient(g: &Arc<FiniteGroup>, n: &Subgroup) -> Result<(Arc<FiniteGroup>, GroupMorphism)> {
    if !n.is_subgroup_of(g) {
        return Err(Error::ForeignSubgroup);
    }
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &k in n.elements() {
            coset[g.mul(x, k)] = id;
        }
    }
    let q = reps.len();
    let mut t = vec![0u32; q * q];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            t[i * q + j] = coset[g.mul(a, b)] as u32;
        }
    }
    let label = format!("{}/N{}", g.label(), n.order());
    let quo = Arc::new(FiniteGroup::from_flat_table(t, q, &label));
    let proj = GroupMorphism::new_unchecked(g.clone(), quo.clone(), coset);
    Ok((quo, proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{builtin, cyclic, direct_product, quaternion, symmetric};

    fn arc(g: FiniteGroup) -> Arc<FiniteGroup> {
        Arc::new(g)
    }

    #[test]
    fn derived_subgroups() {
        let c4 = cyclic(4);
        let w = Subgroup::whole(&c4);
        assert!(commutator_subgroup(&c4, &w, &w).unwrap().is_trivial());

        let s3 = symmetric(3).unwrap();
        let w = Subgroup::whole(&s3);
        let d = commutator_subgroup(&s3, &w, &w).unwrap();
        assert_eq!(d.order(), 3);
        // oracle: the 36 commutators themselves already form A3
        let mut comms: Vec<usize> =
            s3.elements().flat_map(|a| s3.elements().map(move |b| (a, b))).map(|(a, b)| s3.commutator(a, b)).collect();
        comms.sort_unstable();
        comms.dedup();
        assert_eq!(comms, d.elements());

        let q8 = quaternion();
        let z = center(&q8);
        let w = Subgroup::whole(&q8);
        assert!(commutator_subgroup(&q8, &z, &w).unwrap().is_trivial());
    }

    #[test]
    fn foreign_subgroups_rejected() {
        let c4 = cyclic(4);
        let c2 = cyclic(2);
        let bogus = Subgroup::whole(&c2);
        assert_eq!(commutator_subgroup(&c4, &bogus, &bogus), Err(Error::ForeignSubgroup));
        assert_eq!(Subgroup::new(&c4, [0, 1]), Err(Error::ForeignSubgroup));
    }

    #[test]
    fn centers_and_quotients() {
        let q8 = arc(quaternion());
        let z = center(&q8);
        assert_eq!(z.order(), 2);
        let (quo, proj) = quotient(&q8, &z).unwrap();
        assert_eq!(quo.order(), 4);
        assert!(quo.is_abelian());
        assert_eq!(quo.exponent(), 2);
        assert_eq!(proj.kernel(), z);

        let ab = builtin("C2xC4").unwrap();
        assert_eq!(center(&ab).order(), 8);
    }

    #[test]
    fn quotient_requires_normality() {
        let s3 = arc(symmetric(3).unwrap());
        let t = s3.elements().find(|&x| x != 0 && s3.element_order(x) == 2).unwrap();
        let h = Subgroup::generated(&s3, &[t]);
        assert_eq!(quotient(&s3, &h).err(), Some(Error::NotNormal));
    }

    #[test]
    fn subgroup_counts() {
        // subgroup counts of C2^3, Q8, S3, D4
        let v = direct_product(&direct_product(&cyclic(2), &cyclic(2)), &cyclic(2));
        assert_eq!(Subgroup::all_subgroups(&v).len(), 16);
        assert_eq!(Subgroup::all_subgroups(&quaternion()).len(), 6);
        assert_eq!(Subgroup::all_subgroups(&symmetric(3).unwrap()).len(), 6);
        assert_eq!(Subgroup::normal_subgroups(&symmetric(3).unwrap()).len(), 3);
        assert_eq!(Subgroup::all_subgroups(&builtin("D4").unwrap()).len(), 10);
    }

    #[test]
    fn derived_subgroup_is_smallest_abelian_kernel() {
        for spec in ["S3", "D4", "Q8", "A4", "D6", "C2xD4"] {
            let g = arc(builtin(spec).unwrap());
            let w = Subgroup::whole(&g);
            let d = commutator_subgroup(&g, &w, &w).unwrap();
            assert!(d.is_normal_in(&g));
            let (q, _) = quotient(&g, &d).unwrap();
            assert!(q.is_abelian());
            for n in Subgroup::normal_subgroups(&g) {
                let (qn, _) = quotient(&g, &n).unwrap();
                if qn.is_abelian() {
                    assert!(d.is_subset_of(&n), "{spec}");
                }
            }
        }
    }
}
