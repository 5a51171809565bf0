//! `H¹` and `H²` with trivial action on finite abelian coefficients.
//!
//! A normalized 2-cocycle is determined by its values `f(s, w)` on a
//! generating set `S` (see `homology::presentation`), so `Z²(Y, Z/m)` is the
//! solution space of a small integer system read modulo `m`. The integer
//! Smith forms are computed once per group in [`CocycleSystem`]; every
//! modulus then only needs gcds.

mod coeff;

use std::sync::Arc;

use num_integer::Integer;
use serde_json::{json, Value};

use crate::abelian::{hom_group, snf_i64, AbMorphism, FinAb, HomGroup, Normalization, Subquotient, Track};
use crate::error::{Error, Result};
use crate::extensions::{central_reflection, pushout_along, Extension};
use crate::groups::{enumerate_morphisms, Constraints, FiniteGroup, GroupMorphism};
use crate::homology::presentation::Presentation;
use crate::homology::{h1, Abelianization, HomologyGroup};

pub use coeff::CoefficientGroup;

/// Default bound on `|Y|² · (number of cyclic factors of A)`.
pub const DEFAULT_SOLVER_CAP: usize = 16384;

/// A normalized 2-cocycle `Y × Y → A`, stored as a row-major table of
/// coefficient indices.
#[derive(Debug, Clone)]
pub struct Cocycle2 {
    base: Arc<FiniteGroup>,
    coeff: CoefficientGroup,
    values: Vec<usize>,
}

impl PartialEq for Cocycle2 {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && self.coeff == other.coeff && *self.base == *other.base
    }
}

impl Eq for Cocycle2 {}

impl Cocycle2 {
    /// Validates normalization and the cocycle identity on every triple.
    pub fn new(base: Arc<FiniteGroup>, coeff: CoefficientGroup, values: Vec<usize>) -> Result<Cocycle2> {
        let n = base.order();
        if values.len() != n * n || values.iter().any(|&v| v >= coeff.order()) {
            return Err(Error::Schema(format!("cocycle needs {} values below {}", n * n, coeff.order())));
        }
        let c = Cocycle2 { base, coeff, values };
        c.check()?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(base: Arc<FiniteGroup>, coeff: CoefficientGroup, values: Vec<usize>) -> Cocycle2 {
        let c = Cocycle2 { base, coeff, values };
        debug_assert!(c.check().is_ok());
        c
    }

    pub fn zero(base: &Arc<FiniteGroup>, coeff: &CoefficientGroup) -> Cocycle2 {
        let n = base.order();
        Cocycle2 { base: base.clone(), coeff: coeff.clone(), values: vec![0; n * n] }
    }

    pub fn from_fn(
        base: &Arc<FiniteGroup>,
        coeff: &CoefficientGroup,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Cocycle2> {
        let n = base.order();
        let values = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Cocycle2::new(base.clone(), coeff.clone(), values)
    }

    /// `δc(x, y) = c(x) + c(y) − c(xy)`.
    pub fn coboundary(base: &Arc<FiniteGroup>, coeff: &CoefficientGroup, c: &[usize]) -> Cocycle2 {
        assert_eq!(c.len(), base.order());
        assert_eq!(c[0], 0, "cochains are normalized");
        let n = base.order();
        let values = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                coeff.sub(coeff.add(c[x], c[y]), c[base.mul(x, y)])
            })
            .collect();
        Cocycle2::new_unchecked(base.clone(), coeff.clone(), values)
    }

    /// First failing triple of `f(x,y) + f(xy,z) = f(y,z) + f(x,yz)`.
    pub fn check(&self) -> Result<()> {
        let g = &self.base;
        let a = &self.coeff;
        let n = g.order();
        for x in 0..n {
            if self.value(x, 0) != 0 || self.value(0, x) != 0 {
                return Err(Error::NotACocycle { x, y: 0, z: 0 });
            }
        }
        for x in 1..n {
            for y in 1..n {
                let xy = g.mul(x, y);
                let fxy = self.value(x, y);
                for z in 1..n {
                    let lhs = a.add(fxy, self.value(xy, z));
                    let rhs = a.add(self.value(y, z), self.value(x, g.mul(y, z)));
                    if lhs != rhs {
                        return Err(Error::NotACocycle { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn coeff(&self) -> &CoefficientGroup {
        &self.coeff
    }

    #[inline]
    pub fn value(&self, x: usize, y: usize) -> usize {
        self.values[x * self.base.order() + y]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    fn compatible(&self, other: &Cocycle2) -> Result<()> {
        if *self.base != *other.base {
            return Err(Error::BaseMismatch);
        }
        if self.coeff != other.coeff {
            return Err(Error::KernelMismatch("different coefficient groups".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cocycle2) -> Result<Cocycle2> {
        self.compatible(other)?;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| self.coeff.add(a, b)).collect();
        Ok(Cocycle2 { base: self.base.clone(), coeff: self.coeff.clone(), values })
    }

    pub fn neg(&self) -> Cocycle2 {
        let values = self.values.iter().map(|&a| self.coeff.neg(a)).collect();
        Cocycle2 { base: self.base.clone(), coeff: self.coeff.clone(), values }
    }

    pub fn scale(&self, k: i64) -> Cocycle2 {
        let values = self.values.iter().map(|&a| self.coeff.scale(a, k)).collect();
        Cocycle2 { base: self.base.clone(), coeff: self.coeff.clone(), values }
    }

    /// `m ∘ f` for a coefficient homomorphism `m: A → B`.
    pub fn pushforward(&self, m: &AbMorphism, target: &CoefficientGroup) -> Cocycle2 {
        let real = self.coeff.realize(m, target);
        let values = self.values.iter().map(|&a| real.apply(a)).collect();
        Cocycle2 { base: self.base.clone(), coeff: target.clone(), values }
    }

    /// `f ∘ (φ × φ)` for `φ: X → Y`.
    pub fn pullback(&self, phi: &GroupMorphism) -> Result<Cocycle2> {
        if **phi.target() != *self.base {
            return Err(Error::BaseMismatch);
        }
        let x = phi.source();
        let n = x.order();
        let values = (0..n * n).map(|i| self.value(phi.apply(i / n), phi.apply(i % n))).collect();
        Ok(Cocycle2 { base: x.clone(), coeff: self.coeff.clone(), values })
    }

    pub fn to_json(&self) -> Value {
        let n = self.base.order();
        let table: Vec<Vec<usize>> = (0..n).map(|x| self.values[x * n..(x + 1) * n].to_vec()).collect();
        json!({
            "base": self.base.label(),
            "coeff": self.coeff.structure().factors(),
            "values": table,
        })
    }
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    let (mut t, mut nt, mut r, mut nr) = (0i64, 1i64, m, a.rem_euclid(m));
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(m)
}

fn dot_mod(row: &[i64], v: &[i64], m: i64) -> i64 {
    let s: i128 = row.iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum();
    s.rem_euclid(m as i128) as i64
}

/// Integer Smith data of the cocycle system of a group, shared by every
/// coefficient group.
#[derive(Debug, Clone)]
pub struct CocycleSystem {
    group: Arc<FiniteGroup>,
    pres: Arc<Presentation>,
    q: Vec<Vec<i64>>,
    q_inv: Vec<Vec<i64>>,
    d: Vec<i64>,
    pw: Vec<Vec<i64>>,
    pw_inv: Vec<Vec<i64>>,
    qw: Vec<Vec<i64>>,
    dw: Vec<i64>,
}

impl CocycleSystem {
    pub fn new(y: &Arc<FiniteGroup>) -> Result<CocycleSystem> {
        let pres = Presentation::new(y);
        let u = pres.unknowns();
        let n = y.order();
        let rels = pres.dense_relations();
        let s = snf_i64(&rels, rels.len(), u, Track::RIGHT)?;
        let r = s.rank;
        let q = s.v.expect("tracked");
        let q_inv = s.v_inv.expect("tracked");
        let d = s.diag[..r].to_vec();

        // coboundary columns, one per nonidentity element
        let mut bmat = vec![vec![0i64; n.saturating_sub(1)]; u];
        for (v, row) in bmat.iter_mut().enumerate() {
            let (s, w) = pres.pair_of(v);
            row[s - 1] += 1;
            row[w - 1] += 1;
            let sw = y.mul(s, w);
            if sw != 0 {
                row[sw - 1] -= 1;
            }
        }
        let w: Vec<Vec<i64>> = (r..u)
            .map(|i| (0..n - 1).map(|c| q_inv[i].iter().zip(&bmat).map(|(&a, b)| a * b[c]).sum()).collect())
            .collect();
        for i in 0..r {
            let zero = (0..n - 1).all(|c| q_inv[i].iter().zip(&bmat).map(|(&a, b)| a * b[c]).sum::<i64>() == 0);
            if !zero {
                return Err(Error::Inconsistent("coboundaries violate the cocycle system".into()));
            }
        }
        let sw = snf_i64(&w, u - r, n.saturating_sub(1), Track::ALL)?;
        let dw = (0..u - r).map(|i| sw.diag.get(i).copied().unwrap_or(0)).collect();
        Ok(CocycleSystem {
            group: y.clone(),
            pres: Arc::new(pres),
            q,
            q_inv,
            d,
            pw: sw.u.expect("tracked"),
            pw_inv: sw.u_inv.expect("tracked"),
            qw: sw.v.expect("tracked"),
            dw,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    fn unknowns(&self) -> usize {
        self.pres.unknowns()
    }

    /// Raw cyclic summands of `H²(Y, Z/m)`: `(order, kind)` where kind is
    /// `Ok(i)` for a torsion row of the system and `Err(l)` for a row of the
    /// coboundary block.
    fn raw_summands(&self, m: i64) -> Vec<(u64, std::result::Result<usize, usize>)> {
        let mut out = Vec::new();
        for (i, &di) in self.d.iter().enumerate() {
            let g = di.gcd(&m);
            if g > 1 {
                out.push((g as u64, Ok(i)));
            }
        }
        for (l, &dl) in self.dw.iter().enumerate() {
            let g = dl.gcd(&m);
            if g > 1 {
                out.push((g as u64, Err(l)));
            }
        }
        out
    }

    /// `Z^U`-vector of a raw generator modulo `m`.
    fn raw_vector(&self, m: i64, kind: std::result::Result<usize, usize>, order: u64) -> Vec<i64> {
        let u = self.unknowns();
        let r = self.d.len();
        match kind {
            Ok(i) => {
                let scale = m / order as i64;
                (0..u).map(|v| (self.q[v][i] as i128 * scale as i128).rem_euclid(m as i128) as i64).collect()
            }
            Err(l) => (0..u)
                .map(|v| {
                    let s: i128 = (0..u - r).map(|t| self.q[v][r + t] as i128 * self.pw_inv[t][l] as i128).sum();
                    s.rem_euclid(m as i128) as i64
                })
                .collect(),
        }
    }

    /// Values of a cocycle on the unknowns, for one cyclic factor.
    fn unknown_values(&self, f: &Cocycle2, factor: usize) -> Vec<i64> {
        (0..self.unknowns())
            .map(|v| {
                let (s, w) = self.pres.pair_of(v);
                f.coeff().coords(f.value(s, w))[factor]
            })
            .collect()
    }

    /// `H²(Y, A)`, refusing systems above `cap`.
    pub fn cohomology(&self, coeff: &CoefficientGroup, cap: usize) -> Result<CohomologyGroup2> {
        let n = self.group.order();
        let size = n * n * coeff.structure().rank().max(1);
        if size > cap {
            return Err(Error::SolverCapExceeded { size, cap });
        }
        let mut raw = Vec::new();
        for (j, &m) in coeff.structure().factors().iter().enumerate() {
            for (order, kind) in self.raw_summands(m as i64) {
                raw.push(RawSummand { factor: j, order, kind });
            }
        }
        let orders: Vec<u64> = raw.iter().map(|r| r.order).collect();
        let norm = Normalization::new(&orders)?;
        let mut h = CohomologyGroup2 {
            system: Arc::new(self.clone()),
            coeff: coeff.clone(),
            raw,
            norm,
            representatives: Vec::new(),
        };
        h.representatives = (0..h.structure().rank())
            .map(|k| {
                let mut e = h.structure().zero_element();
                e[k] = 1;
                h.cocycle_of_raw(&h.norm.backward(&e))
            })
            .collect();
        Ok(h)
    }
}

#[derive(Debug, Clone, Copy)]
struct RawSummand {
    factor: usize,
    order: u64,
    kind: std::result::Result<usize, usize>,
}

/// `H²(Y, A)` with cocycle representatives of the invariant generators and a
/// coordinate map on cocycles.
#[derive(Debug, Clone)]
pub struct CohomologyGroup2 {
    system: Arc<CocycleSystem>,
    coeff: CoefficientGroup,
    raw: Vec<RawSummand>,
    norm: Normalization,
    representatives: Vec<Cocycle2>,
}

impl CohomologyGroup2 {
    pub fn structure(&self) -> &FinAb {
        &self.norm.structure
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.system.group
    }

    pub fn coeff(&self) -> &CoefficientGroup {
        &self.coeff
    }

    pub fn representatives(&self) -> &[Cocycle2] {
        &self.representatives
    }

    /// The cocycle `Σ cᵢ·repᵢ`, with values determined by the generator
    /// pairs.
    pub fn cocycle(&self, coords: &[i64]) -> Cocycle2 {
        self.cocycle_of_raw(&self.norm.backward(coords))
    }

    fn cocycle_of_raw(&self, raw_coords: &[i64]) -> Cocycle2 {
        let sys = &self.system;
        let factors = self.coeff.structure().factors();
        let u = sys.unknowns();
        let mut per_factor: Vec<Vec<i64>> = vec![vec![0; u]; factors.len()];
        for (rs, &c) in self.raw.iter().zip(raw_coords) {
            if c == 0 {
                continue;
            }
            let m = factors[rs.factor] as i64;
            let vec = sys.raw_vector(m, rs.kind, rs.order);
            for (slot, x) in per_factor[rs.factor].iter_mut().zip(vec) {
                *slot = (*slot as i128 + x as i128 * c as i128).rem_euclid(m as i128) as i64;
            }
        }
        self.cocycle_from_unknowns(&per_factor)
    }

    fn cocycle_from_unknowns(&self, per_factor: &[Vec<i64>]) -> Cocycle2 {
        let y = self.base();
        let n = y.order();
        let pres = &self.system.pres;
        let factors = self.coeff.structure().factors();
        let values = (0..n * n)
            .map(|i| {
                let (g, z) = (i / n, i % n);
                let coords: Vec<i64> = factors
                    .iter()
                    .enumerate()
                    .map(|(j, &m)| {
                        let s: i128 = pres.pair(g, z).iter().map(|&(v, c)| c as i128 * per_factor[j][v] as i128).sum();
                        s.rem_euclid(m as i128) as i64
                    })
                    .collect();
                self.coeff.index(&coords)
            })
            .collect();
        Cocycle2::new_unchecked(y.clone(), self.coeff.clone(), values)
    }

    fn check_operand(&self, f: &Cocycle2) -> Result<()> {
        if **f.base() != **self.base() {
            return Err(Error::BaseMismatch);
        }
        if *f.coeff() != self.coeff {
            return Err(Error::KernelMismatch("cocycle has other coefficients".into()));
        }
        Ok(())
    }

    /// Coordinates of the class of `f`.
    pub fn coordinates(&self, f: &Cocycle2) -> Result<Vec<i64>> {
        self.check_operand(f)?;
        let sys = &self.system;
        let r = sys.d.len();
        let factors = self.coeff.structure().factors();
        let vv: Vec<Vec<i64>> = (0..factors.len())
            .map(|j| {
                let m = factors[j] as i64;
                let u = sys.unknown_values(f, j);
                sys.q_inv.iter().map(|row| dot_mod(row, &u, m)).collect()
            })
            .collect();
        let mut raw = Vec::with_capacity(self.raw.len());
        for rs in &self.raw {
            let m = factors[rs.factor] as i64;
            let v = &vv[rs.factor];
            let c = match rs.kind {
                Ok(i) => {
                    let step = m / rs.order as i64;
                    if v[i] % step != 0 {
                        return Err(Error::NotACocycle { x: 0, y: 0, z: 0 });
                    }
                    v[i] / step
                }
                Err(l) => dot_mod(&sys.pw[l], &v[r..], m),
            };
            raw.push(c.rem_euclid(rs.order as i64));
        }
        Ok(self.norm.forward(&raw))
    }

    pub fn is_coboundary(&self, f: &Cocycle2) -> Result<bool> {
        Ok(self.coordinates(f)?.iter().all(|&c| c == 0))
    }

    /// A normalized cochain `c` with `δc = f`, if one exists.
    pub fn solve_coboundary(&self, f: &Cocycle2) -> Result<Option<Vec<usize>>> {
        self.check_operand(f)?;
        let sys = &self.system;
        let y = self.base();
        let n = y.order();
        let r = sys.d.len();
        let factors = self.coeff.structure().factors();
        let mut per_factor = Vec::new();
        for (j, &m) in factors.iter().enumerate() {
            let m = m as i64;
            let u = sys.unknown_values(f, j);
            let v: Vec<i64> = sys.q_inv.iter().map(|row| dot_mod(row, &u, m)).collect();
            if v[..r].iter().any(|&x| x != 0) {
                return Ok(None);
            }
            let w: Vec<i64> = sys.pw.iter().map(|row| dot_mod(row, &v[r..], m)).collect();
            let mut t = vec![0i64; n - 1];
            for (l, &wl) in w.iter().enumerate() {
                let dl = sys.dw[l];
                let g = dl.gcd(&m);
                if wl % g != 0 {
                    return Ok(None);
                }
                if l < n - 1 && dl != 0 {
                    let mg = m / g;
                    t[l] = ((wl / g) as i128 * mod_inverse(dl / g, mg) as i128).rem_euclid(mg as i128) as i64;
                }
            }
            let c: Vec<i64> = sys.qw.iter().map(|row| dot_mod(row, &t, m)).collect();
            per_factor.push(c);
        }
        let mut cochain = vec![0usize; n];
        for (g, slot) in cochain.iter_mut().enumerate().skip(1) {
            let coords: Vec<i64> = per_factor.iter().map(|c| c[g - 1]).collect();
            *slot = self.coeff.index(&coords);
        }
        let check = Cocycle2::coboundary(y, &self.coeff, &cochain);
        if check != *f {
            return Err(Error::Inconsistent("coboundary solution does not reproduce the cocycle".into()));
        }
        Ok(Some(cochain))
    }

    /// Every class, in coordinate order.
    pub fn classes(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        self.structure().elements()
    }
}

/// `H²(Y, A)` with the default solver cap.
pub fn h2_cohomology(y: &Arc<FiniteGroup>, coeff: &CoefficientGroup) -> Result<CohomologyGroup2> {
    h2_cohomology_with_cap(y, coeff, DEFAULT_SOLVER_CAP)
}

pub fn h2_cohomology_with_cap(y: &Arc<FiniteGroup>, coeff: &CoefficientGroup, cap: usize) -> Result<CohomologyGroup2> {
    let n = y.order();
    let size = n * n * coeff.structure().rank().max(1);
    if size > cap {
        return Err(Error::SolverCapExceeded { size, cap });
    }
    CocycleSystem::new(y)?.cohomology(coeff, cap)
}

/// `H¹(X, A) = Hom(H₁X, A)` with explicit homomorphisms `X → A`.
#[derive(Debug, Clone)]
pub struct H1Cohomology {
    ab: Abelianization,
    hom: HomGroup,
    coeff: CoefficientGroup,
}

pub fn h1_cohomology(x: &Arc<FiniteGroup>, coeff: &CoefficientGroup) -> H1Cohomology {
    let ab = h1(x);
    let hom = hom_group(ab.structure(), coeff.structure());
    H1Cohomology { ab, hom, coeff: coeff.clone() }
}

impl H1Cohomology {
    pub fn structure(&self) -> &FinAb {
        self.hom.structure()
    }

    pub fn abelianization(&self) -> &Abelianization {
        &self.ab
    }

    pub fn morphism(&self, coords: &[i64]) -> GroupMorphism {
        let m = self.hom.morphism(coords);
        let x = self.ab.group();
        let map = x.elements().map(|g| self.coeff.index(&m.apply(&self.ab.project(g)))).collect();
        GroupMorphism::new(x.clone(), self.coeff.concrete().clone(), map).expect("factors through H1")
    }

    pub fn basis(&self) -> Vec<GroupMorphism> {
        (0..self.structure().rank())
            .map(|k| {
                let mut e = self.structure().zero_element();
                e[k] = 1;
                self.morphism(&e)
            })
            .collect()
    }

    pub fn coords_of(&self, phi: &GroupMorphism) -> Vec<i64> {
        let cols: Vec<Vec<i64>> = self.ab.generator_reps().iter().map(|&r| self.coeff.coords(phi.apply(r))).collect();
        let m = AbMorphism::from_columns(self.ab.structure().clone(), self.coeff.structure().clone(), &cols)
            .expect("homomorphisms to abelian groups factor through H1");
        self.hom.coords(&m)
    }
}

/// Factor set of a central extension with identified kernel, using the
/// minimal-preimage section.
pub fn cocycle_of_extension(e: &Extension) -> Result<Cocycle2> {
    let id =
        e.identification().ok_or_else(|| Error::KernelMismatch("extension has no kernel identification".into()))?;
    if !e.is_central() {
        return Err(Error::NotCentral);
    }
    let x = e.total();
    let y = e.base();
    let coeff = id.coeff();
    let back = id.inverse_map();
    let s = e.section();
    let n = y.order();
    let mut values = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            let k = x.mul(x.mul(s[a], s[b]), x.inv(s[y.mul(a, b)]));
            values[a * n + b] = back[k].ok_or_else(|| Error::KernelMismatch("section defect outside kernel".into()))?;
        }
    }
    Cocycle2::new(y.clone(), coeff.clone(), values)
}

/// The extension `A ×_f Y` with `(a, y)(a′, y′) = (a + a′ + f(y, y′), yy′)`.
/// Element `(a, y)` has index `y·|A| + a`.
pub fn extension_of_cocycle(f: &Cocycle2) -> Extension {
    let y = f.base();
    let a = f.coeff();
    let (n, m) = (y.order(), a.order());
    let size = n * m;
    let mut t = vec![0u32; size * size];
    for y1 in 0..n {
        for a1 in 0..m {
            for y2 in 0..n {
                let y12 = y.mul(y1, y2);
                let fv = f.value(y1, y2);
                for a2 in 0..m {
                    let s = a.add(a.add(a1, a2), fv);
                    t[(y1 * m + a1) * size + y2 * m + a2] = (y12 * m + s) as u32;
                }
            }
        }
    }
    let label = format!("E({}; {})", y.label(), a.label());
    let total = Arc::new(FiniteGroup::from_flat_table(t, size, &label));
    let proj_map = (0..size).map(|i| i / m).collect();
    let proj = GroupMorphism::new_unchecked(total.clone(), y.clone(), proj_map);
    Extension::from_parts(proj).with_identification(a.clone(), (0..m).collect()).expect("canonical kernel embedding")
}

/// `φ∘k` descended to `K/[K,X] → A`.
pub fn restriction_to_kernel(kq: &Subquotient, phi: &GroupMorphism, coeff: &CoefficientGroup) -> AbMorphism {
    let cols: Vec<Vec<i64>> = kq.generator_reps().iter().map(|&r| coeff.coords(phi.apply(r))).collect();
    AbMorphism::from_columns(kq.structure().clone(), coeff.structure().clone(), &cols)
        .expect("homomorphisms to abelian groups kill [K,X]")
}

/// The class of the pushout of the central reflection of `e` along
/// `a: K/[K,X] → A`, returned as a cocycle.
pub fn cohomology_transgression(e: &Extension, a: &AbMorphism, coeff: &CoefficientGroup) -> Result<Cocycle2> {
    let (refl, comparison) = central_reflection(e);
    let kq = crate::homology::kernel_mod_commutator(e);
    if a.source() != kq.structure() || a.target() != coeff.structure() {
        return Err(Error::KernelMismatch("transgression argument has the wrong shape".into()));
    }
    // kernel of the reflection, as elements of X/[K,X], mapped into A
    let rk = refl.kernel();
    let xq = refl.total();
    let mut image_of = vec![usize::MAX; xq.order()];
    for &k in e.kernel().elements() {
        let c = comparison.apply(k);
        image_of[c] = coeff.index(&a.apply(&kq.coords(k).expect("k lies in K")));
    }
    let (kgroup, incl) = rk.as_group(xq, "K");
    let map = kgroup.elements().map(|i| image_of[incl.apply(i)]).collect();
    let to_a = GroupMorphism::new(kgroup, coeff.concrete().clone(), map)?;
    let pushed = pushout_along(&refl, &to_a, coeff)?;
    cocycle_of_extension(&pushed)
}

/// A homomorphism `X → A` restricting to `a` on `K`, if one exists. Its
/// existence is equivalent to the vanishing of the transgression of `a`.
pub fn extend_to_total(e: &Extension, a: &AbMorphism, coeff: &CoefficientGroup) -> Option<GroupMorphism> {
    let kq = crate::homology::kernel_mod_commutator(e);
    let mut c = Constraints::new();
    for k in e.kernel().generators(e.total()) {
        c = c.pin(k, coeff.index(&a.apply(&kq.coords(k)?)));
    }
    enumerate_morphisms(e.total(), coeff.concrete(), &c).next()
}

/// Inflation `H²Y → H²X` along a surjection `f: X → Y`.
pub fn inflation(f: &GroupMorphism, class: &Cocycle2) -> Result<Cocycle2> {
    if !f.is_surjective() {
        return Err(Error::NotSurjective);
    }
    class.pullback(f)
}

/// Evaluation of a cocycle on the cycle representatives of `H₂Y`.
pub fn pairing_to_hom(h2y: &HomologyGroup, f: &Cocycle2) -> Result<AbMorphism> {
    if **h2y.group() != **f.base() {
        return Err(Error::BaseMismatch);
    }
    let a = f.coeff();
    let cols: Vec<Vec<i64>> = h2y
        .cycle_basis()
        .iter()
        .map(|chain| {
            let mut acc = a.structure().zero_element();
            for &(x, y, c) in chain {
                for (slot, v) in acc.iter_mut().zip(a.coords(f.value(x, y))) {
                    *slot += c * v;
                }
            }
            a.structure().reduce(&acc)
        })
        .collect();
    AbMorphism::from_columns(h2y.structure().clone(), a.structure().clone(), &cols)
}

/// The pairing as a morphism `H²(Y, A) → Hom(H₂Y, A)`.
pub fn pairing_morphism(h: &CohomologyGroup2, h2y: &HomologyGroup) -> Result<(HomGroup, AbMorphism)> {
    let hom = hom_group(h2y.structure(), h.coeff().structure());
    let cols =
        h.representatives().iter().map(|f| Ok(hom.coords(&pairing_to_hom(h2y, f)?))).collect::<Result<Vec<_>>>()?;
    let m = AbMorphism::from_columns(h.structure().clone(), hom.structure().clone(), &cols)?;
    Ok((hom, m))
}

#[cfg(test)]
mod tests;
