//! A small presentation of the bar complex in degrees 1-3.
//!
//! Fix a generating set `S` and a breadth-first tree writing every element as
//! `g = s·h`. The relation `d₃(s, h, z)` rewrites the pair `(s·h, z)` as
//! `(h, z) + (s, h·z) − (s, h)`, so modulo boundaries every 2-chain is a
//! combination of the pairs `(s, w)` with `s ∈ S`. The remaining boundaries
//! are generated by the triples `(s, y, z)` whose first entry is a generator
//! (the identity `δδ = 0` propagates them to all triples), and those of them
//! that are tree edges vanish identically.

use std::collections::BTreeSet;

use crate::groups::FiniteGroup;

pub(crate) type Sparse = Vec<(usize, i64)>;

fn add_into(acc: &mut Sparse, v: &[(usize, i64)], scale: i64) {
    let mut out = Vec::with_capacity(acc.len() + v.len());
    let (mut i, mut j) = (0, 0);
    while i < acc.len() || j < v.len() {
        let take_left = j == v.len() || (i < acc.len() && acc[i].0 < v[j].0);
        let take_right = i == acc.len() || (j < v.len() && v[j].0 < acc[i].0);
        if take_left {
            out.push(acc[i]);
            i += 1;
        } else if take_right {
            out.push((v[j].0, v[j].1 * scale));
            j += 1;
        } else {
            let c = acc[i].1 + v[j].1 * scale;
            if c != 0 {
                out.push((acc[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out.retain(|e| e.1 != 0);
    *acc = out;
}

#[derive(Debug, Clone)]
pub(crate) struct Presentation {
    pub n: usize,
    pub gens: Vec<usize>,
    /// `pairs[g * n + z]` is the class of `(g, z)` in `Z^U`.
    pairs: Vec<Sparse>,
    /// Distinct nonzero relation rows, each of length `U`.
    pub relations: Vec<Sparse>,
}

impl Presentation {
    pub fn new(g: &FiniteGroup) -> Presentation {
        let n = g.order();
        let gens = g.generators().to_vec();
        let k = gens.len();
        let var = |si: usize, w: usize| si * (n - 1) + (w - 1);
        let unit = |si: usize, w: usize| -> Sparse {
            if w == 0 {
                Vec::new()
            } else {
                vec![(var(si, w), 1)]
            }
        };

        let mut pairs: Vec<Sparse> = vec![Vec::new(); n * n];
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut order = vec![0usize];
        let mut i = 0;
        while i < order.len() {
            let h = order[i];
            i += 1;
            for (si, &s) in gens.iter().enumerate() {
                let x = g.mul(s, h);
                if seen[x] {
                    continue;
                }
                seen[x] = true;
                parent[x] = Some((si, h));
                order.push(x);
                for z in 1..n {
                    let mut v = pairs[h * n + z].clone();
                    add_into(&mut v, &unit(si, g.mul(h, z)), 1);
                    add_into(&mut v, &unit(si, h), -1);
                    pairs[x * n + z] = v;
                }
            }
        }

        let mut rels: BTreeSet<Sparse> = BTreeSet::new();
        for (si, &s) in gens.iter().enumerate() {
            for y in 0..n {
                let x = g.mul(s, y);
                if parent[x] == Some((si, y)) {
                    continue;
                }
                for z in 1..n {
                    let mut row = pairs[x * n + z].clone();
                    add_into(&mut row, &pairs[y * n + z], -1);
                    add_into(&mut row, &unit(si, g.mul(y, z)), -1);
                    add_into(&mut row, &unit(si, y), 1);
                    if let Some(&(_, lead)) = row.first() {
                        if lead < 0 {
                            row.iter_mut().for_each(|e| e.1 = -e.1);
                        }
                        rels.insert(row);
                    }
                }
            }
        }
        debug_assert!(k == 0 || order.len() == n);
        Presentation { n, gens, pairs, relations: rels.into_iter().collect() }
    }

    /// Number of free generators `(s, w)`, `s ∈ S`, `w ≠ 1`.
    pub fn unknowns(&self) -> usize {
        self.gens.len() * (self.n - 1)
    }

    /// The pair `(gens[si], w)` of unknown `v`.
    pub fn pair_of(&self, v: usize) -> (usize, usize) {
        (self.gens[v / (self.n - 1)], v % (self.n - 1) + 1)
    }

    /// Class of the bar pair `(g, z)` as a combination of unknowns.
    pub fn pair(&self, g: usize, z: usize) -> &Sparse {
        &self.pairs[g * self.n + z]
    }

    /// `Σ c·(g, z)` as a dense vector in `Z^U`.
    pub fn chain(&self, chain: &[(usize, usize, i64)]) -> Vec<i64> {
        let mut out = vec![0i64; self.unknowns()];
        for &(g, z, c) in chain {
            for &(i, x) in self.pair(g, z) {
                out[i] += c * x;
            }
        }
        out
    }

    pub fn dense_relations(&self) -> Vec<Vec<i64>> {
        self.relations
            .iter()
            .map(|r| {
                let mut d = vec![0i64; self.unknowns()];
                for &(i, x) in r {
                    d[i] = x;
                }
                d
            })
            .collect()
    }

    /// The differential `(x, y) ↦ (y) − (xy) + (x)` on the unknowns, as an
    /// `(n−1) × U` matrix indexed by nonidentity elements.
    pub fn d2(&self, g: &FiniteGroup) -> Vec<Vec<i64>> {
        let n = self.n;
        let mut m = vec![vec![0i64; self.unknowns()]; n - 1];
        for v in 0..self.unknowns() {
            let (s, w) = self.pair_of(v);
            m[w - 1][v] += 1;
            let sw = g.mul(s, w);
            if sw != 0 {
                m[sw - 1][v] -= 1;
            }
            m[s - 1][v] += 1;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::builtin;

    #[test]
    fn pairs_of_generators_are_unit_vectors() {
        let g = builtin("S3").unwrap();
        let p = Presentation::new(&g);
        for v in 0..p.unknowns() {
            let (s, w) = p.pair_of(v);
            assert_eq!(p.pair(s, w), &vec![(v, 1)]);
        }
    }

    #[test]
    fn rewriting_respects_triples() {
        // (xy, z) ≡ (y, z) + (x, yz) − (x, y) modulo the relations; check that
        // each such difference vanishes on every integer solution of the
        // relations, using the cocycle given by an explicit factor set.
        let g = builtin("C4").unwrap();
        let p = Presentation::new(&g);
        // the carry cocycle of C4 is a genuine cocycle; its values on the
        // unknowns satisfy every relation
        let f = |a: usize, b: usize| i64::from(a + b >= 4);
        let u: Vec<i64> = (0..p.unknowns())
            .map(|v| {
                let (s, w) = p.pair_of(v);
                f(s, w)
            })
            .collect();
        for r in &p.relations {
            assert_eq!(r.iter().map(|&(i, c)| c * u[i]).sum::<i64>(), 0);
        }
        for x in 0..4 {
            for z in 1..4 {
                let val: i64 = p.pair(x, z).iter().map(|&(i, c)| c * u[i]).sum();
                assert_eq!(val, f(x, z));
            }
        }
    }
}
