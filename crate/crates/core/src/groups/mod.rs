//! Finite groups stored as Cayley tables.
//!
//! Element `0` is always the identity. Every constructor either validates the
//! group axioms or builds the table from a multiplication that is known to be
//! associative (permutations, products, quotients).

mod builders;
mod dsl;
mod morphism;
mod subgroup;

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub use builders::{
    alternating, cyclic, dihedral, direct_product, metacyclic, permutation_group, quaternion, semidirect, symmetric,
    trivial, Permutation, DEFAULT_CLOSURE_CAP,
};
pub use dsl::{builtin, builtin_with_cap, parse_permutation};
pub use morphism::{enumerate_morphisms, is_isomorphic, Constraints, GroupMorphism, MorphismSearch};
pub use subgroup::{center, commutator_subgroup, quotient, Subgroup};

/// A finite group given by its multiplication table.
#[derive(Debug)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    generators: OnceLock<Vec<usize>>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            label: self.label.clone(),
            order: self.order,
            table: self.table.clone(),
            inverse: self.inverse.clone(),
            generators: self.generators.clone(),
        }
    }
}

impl PartialEq for FiniteGroup {
    /// Equality of tables; labels are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

/// Largest order for which associativity is checked on every triple.
const EXHAUSTIVE_ASSOCIATIVITY: usize = 64;

impl FiniteGroup {
    /// Validates a Cayley table. If the identity is not element 0 the elements
    /// are relabelled: the identity moves to 0 and the others keep their
    /// relative order.
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<FiniteGroup> {
        Self::from_cayley_table_labeled(table, "")
    }

    pub fn from_cayley_table_labeled(table: &[Vec<usize>], label: &str) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare { row, len: r.len(), expected: n });
            }
            for (b, &v) in r.iter().enumerate() {
                if v >= n {
                    return Err(Error::NotClosed { a: row, b, value: v, order: n });
                }
            }
        }
        let e = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x)).ok_or(Error::NoIdentity)?;

        // relabel: identity first, then the rest in original order
        let mut old_of_new: Vec<usize> = Vec::with_capacity(n);
        old_of_new.push(e);
        old_of_new.extend((0..n).filter(|&x| x != e));
        let mut new_of_old = vec![0usize; n];
        for (new, &old) in old_of_new.iter().enumerate() {
            new_of_old[old] = new;
        }
        let mut flat = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[a * n + b] = new_of_old[table[old_of_new[a]][old_of_new[b]]] as u32;
            }
        }

        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| flat[a * n + b] == 0 && flat[b * n + a] == 0)
                .ok_or(Error::NoInverse { element: old_of_new[a] })?;
            inverse[a] = inv as u32;
        }
        let group =
            FiniteGroup { label: label.to_string(), order: n, table: flat, inverse, generators: OnceLock::new() };
        if let Some((a, b, c)) = group.associativity_failure() {
            return Err(Error::NotAssociative { a: old_of_new[a], b: old_of_new[b], c: old_of_new[c] });
        }
        Ok(group)
    }

    /// Builds the group generated by closing `elements` under `mul`. The first
    /// element must be the identity; indices follow the order of `elements`.
    pub(crate) fn from_elements<T, F>(elements: Vec<T>, label: &str, mul: F) -> FiniteGroup
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let n = elements.len();
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut table = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let p = mul(a, b);
                table[i * n + j] = *index.get(&p).expect("element set is closed") as u32;
            }
        }
        Self::from_flat_table(table, n, label)
    }

    /// Trusted constructor for tables built from an associative operation.
    pub(crate) fn from_flat_table(table: Vec<u32>, n: usize, label: &str) -> FiniteGroup {
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            let inv = row.iter().position(|&v| v == 0).expect("every element has an inverse");
            inverse[a] = inv as u32;
        }
        debug_assert!((0..n).all(|x| table[x] as usize == x && table[x * n] as usize == x));
        FiniteGroup { label: label.to_string(), order: n, table, inverse, generators: OnceLock::new() }
    }

    /// Returns a failing triple, if any. Exhaustive for small orders; otherwise
    /// Light's test against a generating set, which is sufficient.
    fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        let probes: Vec<usize> = if n <= EXHAUSTIVE_ASSOCIATIVITY { (0..n).collect() } else { self.spanning_set() };
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for &c in &probes {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Greedy set whose right-multiplicative closure from the identity covers
    /// the table; used before associativity is known.
    fn spanning_set(&self) -> Vec<usize> {
        let n = self.order;
        let mut reached = vec![false; n];
        reached[0] = true;
        let mut set = Vec::new();
        for g in 0..n {
            if reached[g] {
                continue;
            }
            set.push(g);
            let mut stack: Vec<usize> = (0..n).filter(|&x| reached[x]).collect();
            while let Some(x) = stack.pop() {
                for &s in &set {
                    let y = self.mul(x, s);
                    if !reached[y] {
                        reached[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        set
    }

    pub fn trivial_labeled(label: &str) -> FiniteGroup {
        Self::from_flat_table(vec![0], 1, label)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> FiniteGroup {
        self.label = label.into();
        self
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = 0;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// `a⁻¹ b⁻¹ a b`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// `g a g⁻¹`
    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().enumerate().all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    /// Greedy generating set: scan elements by index and keep each one not yet
    /// in the subgroup generated by those kept so far.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let mut gens = Vec::new();
            let mut member = vec![false; self.order];
            member[0] = true;
            for g in 0..self.order {
                if member[g] {
                    continue;
                }
                gens.push(g);
                for x in self.closure(&gens) {
                    member[x] = true;
                }
            }
            gens
        })
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            i += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if !member[y] {
                    member[y] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Writes every element as a product of generators: for `g != 0`,
    /// `parent[g] = (h, i)` with `g = h · gens[i]`, in breadth-first order.
    pub fn word_tree(&self, gens: &[usize]) -> (Vec<usize>, Vec<Option<(usize, usize)>>) {
        let mut parent = vec![None; self.order];
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut order = vec![0];
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            i += 1;
            for (k, &s) in gens.iter().enumerate() {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, k));
                    order.push(y);
                }
            }
        }
        (order, parent)
    }

    /// Rows of the Cayley table.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "label": self.label,
            "order": self.order,
            "table": self.table(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<FiniteGroup> {
        let obj = value.as_object().ok_or_else(|| Error::Schema("Cayley JSON must be an object".into()))?;
        let table: Vec<Vec<usize>> =
            serde_json::from_value(obj.get("table").cloned().ok_or_else(|| Error::Schema("missing \"table\"".into()))?)
                .map_err(|e| Error::Schema(format!("table: {e}")))?;
        if let Some(order) = obj.get("order") {
            let order = order.as_u64().ok_or_else(|| Error::Schema("\"order\" must be an integer".into()))?;
            if order as usize != table.len() {
                return Err(Error::Schema(format!("order {order} does not match table size {}", table.len())));
            }
        }
        let label = obj.get("label").and_then(|l| l.as_str()).unwrap_or("");
        FiniteGroup::from_cayley_table_labeled(&table, label)
    }

    /// Histogram of element orders, sorted; a cheap isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_table() {
        let g = FiniteGroup::from_cayley_table(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.generators().is_empty());
    }

    #[test]
    fn c2_table() {
        let g = FiniteGroup::from_cayley_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn identity_is_relabelled() {
        // Z/3 with identity stored at index 2
        let t = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_cayley_table(&t).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 2);
        assert_eq!(g.element_order(1), 3);
    }

    #[test]
    fn s3_table_round_trips() {
        let s3 = symmetric(3).unwrap();
        let g = FiniteGroup::from_cayley_table(&s3.table()).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g, s3);
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(
            FiniteGroup::from_cayley_table(&[vec![0, 2], vec![1, 0]]),
            Err(Error::NotClosed { a: 0, b: 1, value: 2, order: 2 })
        );
        assert_eq!(FiniteGroup::from_cayley_table(&[vec![1, 0], vec![0, 0]]), Err(Error::NoIdentity));
        assert!(matches!(
            FiniteGroup::from_cayley_table(&[vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 0]]),
            Err(Error::NoInverse { .. })
        ));
        // a Latin square with identity that is not associative
        let quasi = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_cayley_table(&quasi), Err(Error::NotAssociative { .. })));
        assert_eq!(FiniteGroup::from_cayley_table(&[]), Err(Error::EmptyTable));
    }

    #[test]
    fn light_test_catches_large_failures() {
        // C70 with one swapped product in a row pair breaks associativity
        let g = cyclic(70);
        let mut t = g.table();
        t[3].swap(5, 6);
        t[4].swap(5, 6);
        assert!(FiniteGroup::from_cayley_table(&t).is_err());
        assert!(FiniteGroup::from_cayley_table(&g.table()).is_ok());
    }

    #[test]
    fn generators_are_greedy() {
        let g = cyclic(6);
        assert_eq!(g.generators(), &[1]);
        let k = direct_product(&cyclic(2), &cyclic(2));
        assert_eq!(k.generators(), &[1, 2]);
    }

    #[test]
    fn pow_and_orders() {
        let g = cyclic(12);
        assert_eq!(g.pow(5, 3), 3);
        assert_eq!(g.pow(5, -1), 7);
        assert_eq!(g.element_order(4), 3);
        assert_eq!(g.exponent(), 12);
    }
}
