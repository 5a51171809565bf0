use std::sync::Arc;

use crate::abelian::{AbMorphism, FinAb};
use crate::error::{Error, Result};
use crate::groups::{builtin_with_cap, FiniteGroup, GroupMorphism, DEFAULT_CLOSURE_CAP};
use crate::homology::h1;

/// A finite abelian coefficient group. Element `i` of the concrete group is
/// the vector `structure.element_at(i)`, so element `0` is zero and the
/// last invariant factor varies fastest.
#[derive(Debug, Clone)]
pub struct CoefficientGroup {
    structure: FinAb,
    concrete: Arc<FiniteGroup>,
}

impl PartialEq for CoefficientGroup {
    fn eq(&self, other: &Self) -> bool {
        self.structure == other.structure
    }
}

impl Eq for CoefficientGroup {}

impl CoefficientGroup {
    pub fn new(structure: FinAb) -> CoefficientGroup {
        let n = structure.order() as usize;
        let mut t = vec![0u32; n * n];
        for a in 0..n {
            let va = structure.element_at(a as u128);
            for b in 0..n {
                let vb = structure.element_at(b as u128);
                let s: Vec<i64> = va.iter().zip(&vb).map(|(x, y)| x + y).collect();
                t[a * n + b] = structure.index_of(&structure.reduce(&s)) as u32;
            }
        }
        let concrete = Arc::new(FiniteGroup::from_flat_table(t, n, &structure.to_string()));
        CoefficientGroup { structure, concrete }
    }

    pub fn cyclic(m: u64) -> CoefficientGroup {
        CoefficientGroup::new(FinAb::cyclic(m))
    }

    /// Parses a group spec and requires it to be abelian. The result is the
    /// canonical group with the same invariant factors.
    pub fn from_spec(spec: &str) -> Result<CoefficientGroup> {
        let g = Arc::new(builtin_with_cap(spec, DEFAULT_CLOSURE_CAP)?);
        if !g.is_abelian() {
            return Err(Error::NotAbelian);
        }
        Ok(CoefficientGroup::new(h1(&g).structure().clone()))
    }

    pub fn structure(&self) -> &FinAb {
        &self.structure
    }

    pub fn concrete(&self) -> &Arc<FiniteGroup> {
        &self.concrete
    }

    pub fn order(&self) -> usize {
        self.concrete.order()
    }

    pub fn label(&self) -> String {
        self.structure.to_string()
    }

    pub fn coords(&self, i: usize) -> Vec<i64> {
        self.structure.element_at(i as u128)
    }

    pub fn index(&self, coords: &[i64]) -> usize {
        self.structure.index_of(&self.structure.reduce(coords)) as usize
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.concrete.mul(a, b)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.concrete.inv(a)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn scale(&self, a: usize, k: i64) -> usize {
        self.concrete.pow(a, k)
    }

    /// The concrete group homomorphism of an abstract one.
    pub fn realize(&self, m: &AbMorphism, target: &CoefficientGroup) -> GroupMorphism {
        assert_eq!(m.source(), &self.structure);
        assert_eq!(m.target(), &target.structure);
        let map = (0..self.order()).map(|i| target.index(&m.apply(&self.coords(i)))).collect();
        GroupMorphism::new(self.concrete.clone(), target.concrete.clone(), map).expect("linear maps are homomorphisms")
    }

    /// The abstract morphism of a concrete homomorphism between coefficient
    /// groups.
    pub fn abstract_morphism(&self, f: &GroupMorphism, target: &CoefficientGroup) -> Result<AbMorphism> {
        let cols: Vec<Vec<i64>> = (0..self.structure.rank())
            .map(|j| {
                let mut e = self.structure.zero_element();
                e[j] = 1;
                target.coords(f.apply(self.index(&e)))
            })
            .collect();
        AbMorphism::from_columns(self.structure.clone(), target.structure.clone(), &cols)
    }
}
