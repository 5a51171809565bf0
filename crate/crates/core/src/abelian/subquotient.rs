use std::collections::VecDeque;

use super::{snf_i64, FinAb, Track};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Subgroup};

/// An abelian section `top/bottom` of a finite group, with explicit
/// coordinates for every coset and element representatives for the
/// invariant generators.
#[derive(Debug, Clone)]
pub struct Subquotient {
    structure: FinAb,
    top: Subgroup,
    bottom: Subgroup,
    coset_of: Vec<usize>,
    coset_coords: Vec<Vec<i64>>,
    generator_reps: Vec<usize>,
}

impl Subquotient {
    pub fn structure(&self) -> &FinAb {
        &self.structure
    }

    pub fn top(&self) -> &Subgroup {
        &self.top
    }

    pub fn bottom(&self) -> &Subgroup {
        &self.bottom
    }

    /// Coordinates of `x·bottom`, or `None` when `x ∉ top`.
    pub fn coords(&self, x: usize) -> Option<Vec<i64>> {
        let c = *self.coset_of.get(x)?;
        (c != usize::MAX).then(|| self.coset_coords[c].clone())
    }

    /// An element of `top` mapping to the `i`-th invariant generator.
    pub fn generator_reps(&self) -> &[usize] {
        &self.generator_reps
    }

    /// An element of `top` with the given coordinates.
    pub fn element_of(&self, g: &FiniteGroup, coords: &[i64]) -> usize {
        coords.iter().zip(&self.generator_reps).fold(0, |acc, (&c, &r)| g.mul(acc, g.pow(r, c)))
    }
}

/// `top/bottom` as a finite abelian group.
pub fn subquotient_structure(g: &FiniteGroup, top: &Subgroup, bottom: &Subgroup) -> Result<Subquotient> {
    if !top.is_subgroup_of(g) || !bottom.is_subgroup_of(g) {
        return Err(Error::ForeignSubgroup);
    }
    if !bottom.is_subset_of(top) {
        return Err(Error::NotNested);
    }
    for &t in top.elements() {
        for &b in bottom.elements() {
            if !bottom.contains(g.conjugate(t, b)) {
                return Err(Error::NotNormal);
            }
        }
    }
    for &a in top.elements() {
        for &b in top.elements() {
            if !bottom.contains(g.commutator(a, b)) {
                return Err(Error::NonAbelianQuotient);
            }
        }
    }

    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for &x in top.elements() {
        if coset_of[x] == usize::MAX {
            let id = reps.len();
            reps.push(x);
            for &b in bottom.elements() {
                coset_of[g.mul(x, b)] = id;
            }
        }
    }
    let q = reps.len();

    // greedy generators of the quotient, by coset number
    let mut gens: Vec<usize> = Vec::new();
    let mut reached = vec![false; q];
    reached[0] = true;
    for c in 1..q {
        if reached[c] {
            continue;
        }
        gens.push(reps[c]);
        let mut members: Vec<usize> = (0..q).filter(|&i| reached[i]).collect();
        let mut i = 0;
        while i < members.len() {
            for &s in &gens {
                let n = coset_of[g.mul(reps[members[i]], s)];
                if !reached[n] {
                    reached[n] = true;
                    members.push(n);
                }
            }
            i += 1;
        }
    }
    let k = gens.len();

    // vectors in Z^k for every coset, and the relations from graph cycles
    let mut vec_of: Vec<Option<Vec<i64>>> = vec![None; q];
    vec_of[0] = Some(vec![0; k]);
    let mut relations: Vec<Vec<i64>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        let v = vec_of[c].clone().expect("visited");
        for (i, &s) in gens.iter().enumerate() {
            let n = coset_of[g.mul(reps[c], s)];
            let mut w = v.clone();
            w[i] += 1;
            match &vec_of[n] {
                None => {
                    vec_of[n] = Some(w);
                    queue.push_back(n);
                }
                Some(existing) => {
                    let rel: Vec<i64> = w.iter().zip(existing).map(|(a, b)| a - b).collect();
                    if rel.iter().any(|&x| x != 0) {
                        relations.push(rel);
                    }
                }
            }
        }
    }

    let r = relations.len();
    let mat: Vec<Vec<i64>> = (0..k).map(|i| relations.iter().map(|rel| rel[i]).collect()).collect();
    let s = snf_i64(&mat, k, r, Track::LEFT)?;
    let u = s.u.expect("tracked");
    let u_inv = s.u_inv.expect("tracked");
    let diag: Vec<i64> = (0..k).map(|i| s.diag.get(i).copied().unwrap_or(0)).collect();
    if diag.contains(&0) {
        return Err(Error::InfiniteCokernel);
    }
    let keep: Vec<usize> = (0..k).filter(|&i| diag[i] > 1).collect();
    let structure = FinAb::new(keep.iter().map(|&i| diag[i] as u64).collect())?;

    let coset_coords = vec_of
        .iter()
        .map(|v| {
            let v = v.as_ref().expect("quotient is generated");
            keep.iter()
                .map(|&i| {
                    let s: i128 = u[i].iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum();
                    s.rem_euclid(diag[i] as i128) as i64
                })
                .collect()
        })
        .collect();
    let generator_reps =
        keep.iter().map(|&i| (0..k).fold(0, |acc, j| g.mul(acc, g.pow(gens[j], u_inv[j][i])))).collect();

    Ok(Subquotient { structure, top: top.clone(), bottom: bottom.clone(), coset_of, coset_coords, generator_reps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{builtin, center, commutator_subgroup, cyclic, quaternion};

    fn check_consistent(g: &FiniteGroup, sq: &Subquotient) {
        let st = sq.structure();
        assert_eq!(st.order() as usize * sq.bottom().order(), sq.top().order());
        for &a in sq.top().elements() {
            for &b in sq.top().elements() {
                let ca = sq.coords(a).unwrap();
                let cb = sq.coords(b).unwrap();
                let sum: Vec<i64> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
                assert_eq!(sq.coords(g.mul(a, b)).unwrap(), st.reduce(&sum));
            }
        }
        for (i, &r) in sq.generator_reps().iter().enumerate() {
            let mut e = st.zero_element();
            e[i] = 1;
            assert_eq!(sq.coords(r).unwrap(), e);
        }
    }

    #[test]
    fn examples() {
        let c4 = cyclic(4);
        let w = Subgroup::whole(&c4);
        assert!(subquotient_structure(&c4, &w, &w).unwrap().structure().is_zero());
        let two = Subgroup::generated(&c4, &[2]);
        let sq = subquotient_structure(&c4, &w, &two).unwrap();
        assert_eq!(sq.structure().factors(), &[2]);
        check_consistent(&c4, &sq);

        let q8 = quaternion();
        let z = center(&q8);
        let kx = commutator_subgroup(&q8, &z, &Subgroup::whole(&q8)).unwrap();
        let sq = subquotient_structure(&q8, &z, &kx).unwrap();
        assert_eq!(sq.structure().factors(), &[2]);
        check_consistent(&q8, &sq);
    }

    #[test]
    fn errors() {
        let s3 = builtin("S3").unwrap();
        let w = Subgroup::whole(&s3);
        let t = Subgroup::trivial(&s3);
        assert_eq!(subquotient_structure(&s3, &t, &w).err(), Some(Error::NotNested));
        assert_eq!(subquotient_structure(&s3, &w, &t).err(), Some(Error::NonAbelianQuotient));
    }

    #[test]
    fn abelianizations() {
        for (spec, factors) in [
            ("C2xC4", vec![2, 4]),
            ("C6xC2", vec![2, 6]),
            ("D4", vec![2, 2]),
            ("S4", vec![2]),
            ("A4", vec![3]),
            ("C3xS3", vec![6]),
        ] {
            let g = builtin(spec).unwrap();
            let w = Subgroup::whole(&g);
            let d = commutator_subgroup(&g, &w, &w).unwrap();
            let sq = subquotient_structure(&g, &w, &d).unwrap();
            assert_eq!(sq.structure().factors(), factors.as_slice(), "{spec}");
            check_consistent(&g, &sq);
        }
    }
}
