//! Finite abelian groups in invariant-factor form, integer linear algebra,
//! and the Hom/Ext calculus.

mod matrix;
mod snf;
mod subquotient;

use std::fmt;

use num_integer::Integer;
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub use matrix::IntMatrix;
pub(crate) use snf::{local_valuations, snf_i64, Track};
pub use snf::{smith_normal_form, SmithForm};
pub use subquotient::{subquotient_structure, Subquotient};

/// `C{d₁} ⊕ … ⊕ C{dₖ}` with `d₁ | d₂ | …` and every `dᵢ ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FinAb {
    factors: Vec<u64>,
}

impl FinAb {
    pub fn new(factors: Vec<u64>) -> Result<FinAb> {
        let chain_ok = factors.iter().all(|&d| d >= 2) && factors.windows(2).all(|w| w[1] % w[0] == 0);
        if !chain_ok {
            return Err(Error::Schema(format!("{factors:?} is not an invariant-factor chain")));
        }
        Ok(FinAb { factors })
    }

    pub fn zero() -> FinAb {
        FinAb::default()
    }

    pub fn cyclic(n: u64) -> FinAb {
        if n <= 1 {
            FinAb::zero()
        } else {
            FinAb { factors: vec![n] }
        }
    }

    /// Invariant factors of `⊕ Z/oᵢ` for arbitrary positive orders.
    pub fn from_orders(orders: &[u64]) -> FinAb {
        Normalization::new(orders).expect("positive orders").structure
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty()
    }

    /// `A ⊕ B`, renormalized.
    pub fn direct_sum(&self, other: &FinAb) -> FinAb {
        let mut o = self.factors.clone();
        o.extend_from_slice(&other.factors);
        FinAb::from_orders(&o)
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        v.iter().zip(&self.factors).map(|(&x, &d)| x.rem_euclid(d as i64)).collect()
    }

    pub fn zero_element(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    /// Mixed-radix index of a reduced element, last coordinate fastest.
    pub fn index_of(&self, v: &[i64]) -> u128 {
        v.iter().zip(&self.factors).fold(0u128, |acc, (&x, &d)| acc * d as u128 + x.rem_euclid(d as i64) as u128)
    }

    pub fn element_at(&self, mut index: u128) -> Vec<i64> {
        let mut v = vec![0i64; self.rank()];
        for (slot, &d) in v.iter_mut().zip(&self.factors).rev() {
            *slot = (index % d as u128) as i64;
            index /= d as u128;
        }
        v
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    pub fn element_order(&self, v: &[i64]) -> u64 {
        v.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| d / (x.rem_euclid(d as i64) as u64).gcd(&d))
            .fold(1, |a, b| a.lcm(&b))
    }

    pub fn to_json(&self) -> Value {
        json!({ "factors": self.factors })
    }

    pub fn from_json(value: &Value) -> Result<FinAb> {
        let f: Vec<u64> = serde_json::from_value(value.get("factors").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::Schema(format!("FinAb factors: {e}")))?;
        FinAb::new(f)
    }
}

impl fmt::Display for FinAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("C{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Change of coordinates from `⊕ Z/oᵢ` (any positive orders) to invariant
/// factors.
#[derive(Debug, Clone)]
pub struct Normalization {
    pub structure: FinAb,
    orders: Vec<u64>,
    to_new: Vec<Vec<i64>>,
    to_old: Vec<Vec<i64>>,
}

impl Normalization {
    pub fn new(orders: &[u64]) -> Result<Normalization> {
        if orders.contains(&0) {
            return Err(Error::InfiniteCokernel);
        }
        let k = orders.len();
        let diag: Vec<Vec<i64>> =
            (0..k).map(|i| (0..k).map(|j| if i == j { orders[i] as i64 } else { 0 }).collect()).collect();
        let s = snf_i64(&diag, k, k, Track::LEFT)?;
        let u = s.u.expect("tracked");
        let u_inv = s.u_inv.expect("tracked");
        let keep: Vec<usize> = (0..k).filter(|&i| s.diag[i] > 1).collect();
        let factors: Vec<u64> = keep.iter().map(|&i| s.diag[i] as u64).collect();
        let to_new = keep.iter().map(|&i| u[i].iter().map(|&x| x.rem_euclid(s.diag[i])).collect()).collect();
        let to_old = keep.iter().map(|&i| (0..k).map(|r| u_inv[r][i].rem_euclid(orders[r] as i64)).collect()).collect();
        Ok(Normalization { structure: FinAb { factors }, orders: orders.to_vec(), to_new, to_old })
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Old coordinates to invariant-factor coordinates.
    pub fn forward(&self, old: &[i64]) -> Vec<i64> {
        self.to_new
            .iter()
            .zip(self.structure.factors())
            .map(|(row, &d)| {
                let s: i128 = row.iter().zip(old).map(|(&a, &b)| a as i128 * b as i128).sum();
                s.rem_euclid(d as i128) as i64
            })
            .collect()
    }

    /// Invariant-factor coordinates to old coordinates.
    pub fn backward(&self, new: &[i64]) -> Vec<i64> {
        (0..self.orders.len())
            .map(|r| {
                let s: i128 = self.to_old.iter().zip(new).map(|(col, &c)| col[r] as i128 * c as i128).sum();
                s.rem_euclid(self.orders[r] as i128) as i64
            })
            .collect()
    }
}

/// A homomorphism of finite abelian groups: column `j` is the image of the
/// `j`-th generator of the source, in target coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbMorphism {
    source: FinAb,
    target: FinAb,
    matrix: Vec<Vec<i64>>,
}

impl AbMorphism {
    /// `columns[j]` is the image of source generator `j`.
    pub fn from_columns(source: FinAb, target: FinAb, columns: &[Vec<i64>]) -> Result<AbMorphism> {
        if columns.len() != source.rank() || columns.iter().any(|c| c.len() != target.rank()) {
            return Err(Error::IllDefinedMorphism);
        }
        let matrix = (0..target.rank()).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
        AbMorphism::new(source, target, matrix)
    }

    pub fn new(source: FinAb, target: FinAb, matrix: Vec<Vec<i64>>) -> Result<AbMorphism> {
        if matrix.len() != target.rank() || matrix.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::IllDefinedMorphism);
        }
        let matrix: Vec<Vec<i64>> = matrix
            .iter()
            .zip(target.factors())
            .map(|(row, &e)| row.iter().map(|&x| x.rem_euclid(e as i64)).collect())
            .collect();
        for (j, &d) in source.factors().iter().enumerate() {
            for (i, &e) in target.factors().iter().enumerate() {
                if (matrix[i][j] as i128 * d as i128) % e as i128 != 0 {
                    return Err(Error::IllDefinedMorphism);
                }
            }
        }
        Ok(AbMorphism { source, target, matrix })
    }

    pub fn zero(source: &FinAb, target: &FinAb) -> AbMorphism {
        AbMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: vec![vec![0; source.rank()]; target.rank()],
        }
    }

    pub fn identity(a: &FinAb) -> AbMorphism {
        let n = a.rank();
        let matrix = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        AbMorphism { source: a.clone(), target: a.clone(), matrix }
    }

    pub fn source(&self) -> &FinAb {
        &self.source
    }

    pub fn target(&self) -> &FinAb {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.matrix.iter().map(|r| r[j]).collect()
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .zip(self.target.factors())
            .map(|(row, &e)| {
                let s: i128 = row.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
                s.rem_euclid(e as i128) as i64
            })
            .collect()
    }

    /// `next ∘ self`
    pub fn then(&self, next: &AbMorphism) -> Result<AbMorphism> {
        if self.target != next.source {
            return Err(Error::NotComposable(0));
        }
        let cols: Vec<Vec<i64>> = (0..self.source.rank()).map(|j| next.apply(&self.column(j))).collect();
        AbMorphism::from_columns(self.source.clone(), next.target.clone(), &cols)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&x| x == 0)
    }

    /// Order of the image, from the Smith form of `[diag(e) | M]`.
    pub fn image_order(&self) -> u128 {
        let t = self.target.rank();
        if t == 0 {
            return 1;
        }
        let s = self.source.rank();
        let rows: Vec<Vec<i64>> = (0..t)
            .map(|i| {
                let mut r = vec![0i64; t + s];
                r[i] = self.target.factors()[i] as i64;
                r[t..].copy_from_slice(&self.matrix[i]);
                r
            })
            .collect();
        let snf = snf_i64(&rows, t, t + s, Track::NONE).expect("small matrix");
        let coker: u128 = snf.diag.iter().map(|&d| d as u128).product();
        self.target.order() / coker
    }

    pub fn kernel_order(&self) -> u128 {
        self.source.order() / self.image_order()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_order() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image_order() == self.target.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.factors(),
            "target": self.target.factors(),
            "matrix": self.matrix,
        })
    }
}

/// Result of `Hom(A, B) ≅ ⊕ᵢⱼ Z/gcd(dᵢ, eⱼ)` with explicit generators.
#[derive(Debug, Clone)]
pub struct HomGroup {
    source: FinAb,
    target: FinAb,
    cells: Vec<(usize, usize, u64)>,
    norm: Normalization,
}

pub fn hom_group(a: &FinAb, b: &FinAb) -> HomGroup {
    let cells = gcd_cells(a, b);
    let orders: Vec<u64> = cells.iter().map(|c| c.2).collect();
    HomGroup { source: a.clone(), target: b.clone(), norm: Normalization::new(&orders).expect("positive"), cells }
}

fn gcd_cells(a: &FinAb, b: &FinAb) -> Vec<(usize, usize, u64)> {
    let mut cells = Vec::new();
    for (i, &d) in a.factors().iter().enumerate() {
        for (j, &e) in b.factors().iter().enumerate() {
            let g = d.gcd(&e);
            if g > 1 {
                cells.push((i, j, g));
            }
        }
    }
    cells
}

impl HomGroup {
    pub fn structure(&self) -> &FinAb {
        &self.norm.structure
    }

    pub fn source(&self) -> &FinAb {
        &self.source
    }

    pub fn target(&self) -> &FinAb {
        &self.target
    }

    /// The morphism with the given coordinates in `structure()`.
    pub fn morphism(&self, coords: &[i64]) -> AbMorphism {
        let raw = self.norm.backward(coords);
        let mut matrix = vec![vec![0i64; self.source.rank()]; self.target.rank()];
        for (&(i, j, g), &c) in self.cells.iter().zip(&raw) {
            let e = self.target.factors()[j];
            matrix[j][i] = (matrix[j][i] + c * (e / g) as i64).rem_euclid(e as i64);
        }
        AbMorphism::new(self.source.clone(), self.target.clone(), matrix).expect("elementary homs are well defined")
    }

    pub fn basis(&self) -> Vec<AbMorphism> {
        (0..self.structure().rank())
            .map(|k| {
                let mut c = vec![0; self.structure().rank()];
                c[k] = 1;
                self.morphism(&c)
            })
            .collect()
    }

    pub fn coords(&self, m: &AbMorphism) -> Vec<i64> {
        assert_eq!(m.source(), &self.source);
        assert_eq!(m.target(), &self.target);
        let raw: Vec<i64> = self
            .cells
            .iter()
            .map(|&(i, j, g)| {
                let step = (self.target.factors()[j] / g) as i64;
                debug_assert_eq!(m.matrix()[j][i] % step, 0);
                m.matrix()[j][i] / step
            })
            .collect();
        self.norm.forward(&raw)
    }
}

/// `Ext(A, B) ≅ ⊕ᵢⱼ Z/gcd(dᵢ, eⱼ)`. The raw generator for cell `(i, j)` is the
/// extension of `Z/dᵢ` by `Z/eⱼ` whose factor set is the carry cocycle
/// `(a, b) ↦ [a + b ≥ dᵢ]` placed in coordinate `j`.
#[derive(Debug, Clone)]
pub struct ExtGroup {
    source: FinAb,
    target: FinAb,
    cells: Vec<(usize, usize, u64)>,
    norm: Normalization,
}

pub fn ext_group(a: &FinAb, b: &FinAb) -> ExtGroup {
    let cells = gcd_cells(a, b);
    let orders: Vec<u64> = cells.iter().map(|c| c.2).collect();
    ExtGroup { source: a.clone(), target: b.clone(), norm: Normalization::new(&orders).expect("positive"), cells }
}

impl ExtGroup {
    pub fn structure(&self) -> &FinAb {
        &self.norm.structure
    }

    pub fn source(&self) -> &FinAb {
        &self.source
    }

    pub fn target(&self) -> &FinAb {
        &self.target
    }

    /// `(i, j, gcd)` for each raw generator.
    pub fn cells(&self) -> &[(usize, usize, u64)] {
        &self.cells
    }

    /// Raw cell multiplicities of the element with invariant coordinates.
    pub fn raw(&self, coords: &[i64]) -> Vec<i64> {
        self.norm.backward(coords)
    }

    pub fn coords_of_raw(&self, raw: &[i64]) -> Vec<i64> {
        self.norm.forward(raw)
    }
}

/// Invariant factors of `coker(M) = Zʳ / M·Zᶜ`.
pub fn cokernel_structure(m: &IntMatrix) -> Result<FinAb> {
    let s = smith_normal_form(m);
    let diag = s.diagonal();
    let mut factors = Vec::new();
    for i in 0..m.rows() {
        let d = diag.get(i).cloned().unwrap_or_default();
        if num_traits::Zero::is_zero(&d) {
            return Err(Error::InfiniteCokernel);
        }
        let d: u64 = num_traits::ToPrimitive::to_u64(&d).ok_or(Error::Overflow)?;
        if d > 1 {
            factors.push(d);
        }
    }
    FinAb::new(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ab(f: &[u64]) -> FinAb {
        FinAb::from_orders(f)
    }

    /// Counts homomorphisms `A → B` by checking every assignment of
    /// generator images against the generator orders.
    fn hom_count_oracle(a: &FinAb, b: &FinAb) -> u128 {
        let mut count = 0u128;
        let total = b.order().pow(a.rank() as u32);
        for idx in 0..total {
            let mut rest = idx;
            let ok = a.factors().iter().all(|&d| {
                let img = b.element_at(rest % b.order());
                rest /= b.order();
                img.iter().zip(b.factors()).all(|(&x, &e)| (x as u128 * d as u128).is_multiple_of(e as u128))
            });
            if ok {
                count += 1;
            }
        }
        count
    }

    /// Counts abelian extensions `0 → B → E → A → 0` up to equivalence by
    /// enumerating symmetric normalized cocycles on `A` with values in `B`,
    /// modulo coboundaries. Only for tiny groups.
    fn ext_count_oracle(a: &FinAb, b: &FinAb) -> u128 {
        let n = a.order() as usize;
        let m = b.order() as usize;
        let add = |x: usize, y: usize| -> usize {
            let (u, v) = (a.element_at(x as u128), a.element_at(y as u128));
            let w: Vec<i64> = u.iter().zip(&v).map(|(p, q)| p + q).collect();
            a.index_of(&a.reduce(&w)) as usize
        };
        let badd = |x: usize, y: usize| -> usize {
            let (u, v) = (b.element_at(x as u128), b.element_at(y as u128));
            let w: Vec<i64> = u.iter().zip(&v).map(|(p, q)| p + q).collect();
            b.index_of(&b.reduce(&w)) as usize
        };
        let bneg = |x: usize| -> usize {
            let u = b.element_at(x as u128);
            let w: Vec<i64> = u.iter().map(|p| -p).collect();
            b.index_of(&b.reduce(&w)) as usize
        };
        // unknown values f(x, y) for 1 <= x <= y < n
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|x| (x..n).map(move |y| (x, y))).collect();
        let mut cocycles = 0u128;
        let total = (m as u128).pow(pairs.len() as u32);
        for idx in 0..total {
            let mut f = vec![0usize; n * n];
            let mut rest = idx;
            for &(x, y) in &pairs {
                let v = (rest % m as u128) as usize;
                rest /= m as u128;
                f[x * n + y] = v;
                f[y * n + x] = v;
            }
            let ok = (0..n).all(|x| {
                (0..n).all(|y| {
                    (0..n).all(|z| badd(f[x * n + y], f[add(x, y) * n + z]) == badd(f[y * n + z], f[x * n + add(y, z)]))
                })
            });
            if ok {
                cocycles += 1;
            }
        }
        // coboundaries: c(x) + c(y) - c(x + y), all symmetric
        let mut cob = std::collections::BTreeSet::new();
        for idx in 0..(m as u128).pow(n as u32 - 1) {
            let mut c = vec![0usize; n];
            let mut rest = idx;
            for slot in c.iter_mut().skip(1) {
                *slot = (rest % m as u128) as usize;
                rest /= m as u128;
            }
            let f: Vec<usize> =
                (0..n * n).map(|k| badd(badd(c[k / n], c[k % n]), bneg(c[add(k / n, k % n)]))).collect();
            cob.insert(f);
        }
        cocycles / cob.len() as u128
    }

    #[test]
    fn normalization() {
        assert_eq!(ab(&[2, 3]).factors(), &[6]);
        assert_eq!(ab(&[4, 2]).factors(), &[2, 4]);
        assert_eq!(ab(&[1, 1]).factors(), &[] as &[u64]);
        assert_eq!(ab(&[6, 10]).factors(), &[2, 30]);
        let n = Normalization::new(&[2, 3]).unwrap();
        for x in 0..2 {
            for y in 0..3 {
                let c = n.forward(&[x, y]);
                assert_eq!(n.backward(&c), vec![x, y]);
            }
        }
        assert_eq!(format!("{}", ab(&[2, 2])), "C2 x C2");
        assert_eq!(format!("{}", FinAb::zero()), "0");
    }

    #[test]
    fn cokernels() {
        let m = IntMatrix::from_i64(2, 2, &[vec![1, 0], vec![0, 1]]);
        assert!(cokernel_structure(&m).unwrap().is_zero());
        let m = IntMatrix::from_i64(2, 2, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(cokernel_structure(&m).unwrap().factors(), &[6]);
        let mut m = IntMatrix::zeros(1, 1);
        m.set(0, 0, BigInt::from(2));
        assert_eq!(cokernel_structure(&m).unwrap().factors(), &[2]);
        assert_eq!(cokernel_structure(&IntMatrix::zeros(1, 1)), Err(Error::InfiniteCokernel));
    }

    #[test]
    fn hom_examples() {
        assert!(hom_group(&ab(&[2]), &ab(&[3])).structure().is_zero());
        assert_eq!(hom_group(&ab(&[4]), &ab(&[2])).structure().factors(), &[2]);
        assert_eq!(hom_group(&ab(&[2, 2]), &ab(&[2])).structure().order(), 4);
    }

    #[test]
    fn ext_examples() {
        assert!(ext_group(&ab(&[2]), &ab(&[3])).structure().is_zero());
        assert_eq!(ext_group(&ab(&[2]), &ab(&[2])).structure().factors(), &[2]);
        assert_eq!(ext_group(&ab(&[2, 2]), &ab(&[2])).structure().order(), 4);
        assert_eq!(ext_count_oracle(&ab(&[2]), &ab(&[2])), 2);
        assert_eq!(ext_count_oracle(&ab(&[2, 2]), &ab(&[2])), 4);
    }

    fn small_groups() -> Vec<FinAb> {
        [vec![], vec![2], vec![3], vec![4], vec![2, 2], vec![5], vec![6], vec![7], vec![8], vec![2, 4], vec![2, 2, 2]]
            .iter()
            .map(|f| ab(f))
            .collect()
    }

    #[test]
    fn hom_orders_match_oracle() {
        for a in small_groups() {
            for b in small_groups() {
                assert_eq!(hom_group(&a, &b).structure().order(), hom_count_oracle(&a, &b), "Hom({a}, {b})");
            }
        }
    }

    #[test]
    fn ext_orders_match_oracle() {
        for a in small_groups().into_iter().filter(|a| a.order() <= 4) {
            for b in small_groups().into_iter().filter(|b| b.order() <= 4) {
                assert_eq!(ext_group(&a, &b).structure().order(), ext_count_oracle(&a, &b), "Ext({a}, {b})");
            }
        }
    }

    #[test]
    fn hom_coordinates_round_trip() {
        let h = hom_group(&ab(&[2, 4]), &ab(&[4, 8]));
        for c in h.structure().elements() {
            let m = h.morphism(&c);
            assert_eq!(h.coords(&m), c);
        }
        assert_eq!(h.basis().len(), h.structure().rank());
    }

    #[test]
    fn additivity() {
        for a in small_groups() {
            for a2 in small_groups() {
                let b = ab(&[4]);
                let sum = a.direct_sum(&a2);
                assert_eq!(
                    hom_group(&sum, &b).structure().order(),
                    hom_group(&a, &b).structure().order() * hom_group(&a2, &b).structure().order()
                );
                assert_eq!(
                    ext_group(&sum, &b).structure().order(),
                    ext_group(&a, &b).structure().order() * ext_group(&a2, &b).structure().order()
                );
            }
        }
    }

    #[test]
    fn morphism_orders() {
        let c4 = ab(&[4]);
        let c2 = ab(&[2]);
        let red = AbMorphism::new(c4.clone(), c2.clone(), vec![vec![1]]).unwrap();
        assert!(red.is_surjective() && !red.is_injective());
        assert_eq!(red.kernel_order(), 2);
        let incl = AbMorphism::new(c2.clone(), c4.clone(), vec![vec![2]]).unwrap();
        assert!(incl.is_injective());
        assert!(incl.then(&red).unwrap().is_zero());
        assert_eq!(AbMorphism::new(c2, c4, vec![vec![1]]), Err(Error::IllDefinedMorphism));
    }
}
