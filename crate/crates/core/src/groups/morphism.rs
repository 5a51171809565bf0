use std::sync::Arc;

use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// A homomorphism between two finite groups, as an element map.
#[derive(Debug, Clone)]
pub struct GroupMorphism {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl PartialEq for GroupMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && *self.source == *other.source && *self.target == *other.target
    }
}

impl Eq for GroupMorphism {}

impl GroupMorphism {
    /// Checks that `map` is a homomorphism `source → target`.
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<GroupMorphism> {
        if map.len() != source.order() {
            return Err(Error::MapLength { len: map.len(), order: source.order() });
        }
        if let Some((a, &v)) = map.iter().enumerate().find(|(_, &v)| v >= target.order()) {
            return Err(Error::NotClosed { a, b: 0, value: v, order: target.order() });
        }
        if map[0] != 0 {
            return Err(Error::NotHomomorphism { a: 0, b: 0 });
        }
        for &s in source.generators() {
            for x in source.elements() {
                if map[source.mul(x, s)] != target.mul(map[x], map[s]) {
                    return Err(Error::NotHomomorphism { a: x, b: s });
                }
            }
        }
        Ok(GroupMorphism { source, target, map })
    }

    pub(crate) fn new_unchecked(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> GroupMorphism {
        debug_assert_eq!(map.len(), source.order());
        GroupMorphism { source, target, map }
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> GroupMorphism {
        GroupMorphism { source: g.clone(), target: g.clone(), map: g.elements().collect() }
    }

    pub fn zero(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> GroupMorphism {
        GroupMorphism { source: source.clone(), target: target.clone(), map: vec![0; source.order()] }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupMorphism) -> Result<GroupMorphism> {
        if *self.target != *other.source {
            return Err(Error::NotComposable(0));
        }
        Ok(GroupMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        })
    }

    pub fn kernel(&self) -> Subgroup {
        let elements = self.source.elements().filter(|&x| self.map[x] == 0).collect();
        Subgroup::from_sorted_unchecked(self.source.order(), elements)
    }

    pub fn image(&self) -> Subgroup {
        let mut e: Vec<usize> = self.map.clone();
        e.sort_unstable();
        e.dedup();
        Subgroup::from_sorted_unchecked(self.target.order(), e)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    /// Inverse of a bijective morphism.
    pub fn inverse(&self) -> Option<GroupMorphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(GroupMorphism { source: self.target.clone(), target: self.source.clone(), map: inv })
    }
}

/// Restrictions on the morphisms produced by [`enumerate_morphisms`].
#[derive(Debug, Clone, Default)]
pub struct Constraints {
    pins: Vec<(usize, usize)>,
    labels: Option<(Vec<usize>, Vec<usize>)>,
    preserve_orders: bool,
}

impl Constraints {
    pub fn new() -> Constraints {
        Constraints::default()
    }

    /// Require `f(source) = target`.
    pub fn pin(mut self, source: usize, target: usize) -> Constraints {
        self.pins.push((source, target));
        self
    }

    /// Require `target_labels[f(x)] == source_labels[x]` for every `x`;
    /// typically both label vectors are projections onto a common base.
    pub fn over(mut self, source_labels: Vec<usize>, target_labels: Vec<usize>) -> Constraints {
        self.labels = Some((source_labels, target_labels));
        self
    }

    /// Only consider images of the same order (isomorphism search).
    pub fn preserving_orders(mut self) -> Constraints {
        self.preserve_orders = true;
        self
    }
}

/// Depth-first search over images of the greedy generators of the source,
/// ordered lexicographically by those images.
pub struct MorphismSearch {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    pins: Vec<Option<usize>>,
    labels: Option<(Vec<usize>, Vec<usize>)>,
    images: Vec<usize>,
    cursor: Vec<usize>,
    depth: usize,
    done: bool,
}

/// Every homomorphism `G → H` satisfying `constraints`, deterministically
/// ordered.
pub fn enumerate_morphisms(g: &Arc<FiniteGroup>, h: &Arc<FiniteGroup>, constraints: &Constraints) -> MorphismSearch {
    let gens = g.generators().to_vec();
    let mut pins = vec![None; g.order()];
    let mut contradictory = false;
    for &(x, y) in &constraints.pins {
        if x >= g.order() || y >= h.order() {
            contradictory = true;
            continue;
        }
        match pins[x] {
            Some(p) if p != y => contradictory = true,
            _ => pins[x] = Some(y),
        }
    }
    if let Some((ls, lt)) = &constraints.labels {
        if ls.len() != g.order() || lt.len() != h.order() {
            contradictory = true;
        }
    }
    let h_orders: Vec<usize> = h.elements().map(|y| h.element_order(y)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let os = g.element_order(s);
            h.elements()
                .filter(|&y| {
                    let order_ok =
                        if constraints.preserve_orders { h_orders[y] == os } else { os.is_multiple_of(h_orders[y]) };
                    let pin_ok = pins[s].is_none_or(|p| p == y);
                    let label_ok = match &constraints.labels {
                        Some((ls, lt)) if !contradictory => lt[y] == ls[s],
                        _ => true,
                    };
                    order_ok && pin_ok && label_ok
                })
                .collect()
        })
        .collect();
    let k = gens.len();
    MorphismSearch {
        source: g.clone(),
        target: h.clone(),
        gens,
        candidates,
        pins,
        labels: constraints.labels.clone(),
        images: vec![0; k],
        cursor: vec![0; k],
        depth: 0,
        done: contradictory,
    }
}

impl MorphismSearch {
    /// The map on the subgroup generated by the first `level + 1` generators,
    /// or `None` if the assigned images are inconsistent with the constraints.
    fn partial_map(&self, level: usize) -> Option<Vec<usize>> {
        let g = &self.source;
        let h = &self.target;
        let mut map = vec![usize::MAX; g.order()];
        map[0] = 0;
        if !self.admissible(0, 0) {
            return None;
        }
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for j in 0..=level {
                let y = g.mul(x, self.gens[j]);
                let v = h.mul(map[x], self.images[j]);
                if map[y] == usize::MAX {
                    if !self.admissible(y, v) {
                        return None;
                    }
                    map[y] = v;
                    queue.push(y);
                } else if map[y] != v {
                    return None;
                }
            }
        }
        Some(map)
    }

    fn admissible(&self, x: usize, v: usize) -> bool {
        if let Some(p) = self.pins[x] {
            if p != v {
                return false;
            }
        }
        match &self.labels {
            Some((ls, lt)) => lt[v] == ls[x],
            None => true,
        }
    }
}

impl Iterator for MorphismSearch {
    type Item = GroupMorphism;

    fn next(&mut self) -> Option<GroupMorphism> {
        if self.done {
            return None;
        }
        let k = self.gens.len();
        if k == 0 {
            self.done = true;
            let ok = self.admissible(0, 0);
            return ok.then(|| GroupMorphism::new_unchecked(self.source.clone(), self.target.clone(), vec![0]));
        }
        loop {
            let lvl = self.depth;
            if self.cursor[lvl] >= self.candidates[lvl].len() {
                self.cursor[lvl] = 0;
                if lvl == 0 {
                    self.done = true;
                    return None;
                }
                self.depth -= 1;
                continue;
            }
            self.images[lvl] = self.candidates[lvl][self.cursor[lvl]];
            self.cursor[lvl] += 1;
            if let Some(map) = self.partial_map(lvl) {
                if lvl + 1 == k {
                    return Some(GroupMorphism::new_unchecked(self.source.clone(), self.target.clone(), map));
                }
                self.depth += 1;
            }
        }
    }
}

/// Brute-force isomorphism test; returns an isomorphism when one exists.
pub fn is_isomorphic(g: &Arc<FiniteGroup>, h: &Arc<FiniteGroup>) -> Option<GroupMorphism> {
    if g.order() != h.order() || g.order_profile() != h.order_profile() || g.is_abelian() != h.is_abelian() {
        return None;
    }
    enumerate_morphisms(g, h, &Constraints::new().preserving_orders()).find(GroupMorphism::is_bijective)
}
