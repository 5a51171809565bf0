//! First and second integral homology of finite groups.
//!
//! `H₁` is the abelianization. `H₂` is computed from the normalized bar
//! complex, reduced to a presentation whose size is linear in the number of
//! generators (see [`presentation`]). The full normalized bar segment is
//! available as [`BarSegment`] and serves as a cross-check.

mod bar;
pub(crate) mod presentation;

use std::sync::Arc;

use crate::abelian::{snf_i64, subquotient_structure, AbMorphism, FinAb, Subquotient, Track};
use crate::error::{Error, Result};
use crate::extensions::Extension;
use crate::groups::{commutator_subgroup, FiniteGroup, GroupMorphism, Subgroup};

pub use bar::BarSegment;
use presentation::Presentation;

/// Largest order accepted by the certified `H₂` path unless overridden.
pub const DEFAULT_CERTIFIED_CAP: usize = 24;

/// A bar 2-chain `Σ c·(x, y)`.
pub type Chain2 = Vec<(usize, usize, i64)>;

/// `H₁Y = Y/[Y,Y]` together with the projection `η: Y → H₁Y`.
#[derive(Debug, Clone)]
pub struct Abelianization {
    group: Arc<FiniteGroup>,
    sq: Subquotient,
}

impl Abelianization {
    pub fn structure(&self) -> &FinAb {
        self.sq.structure()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn derived_subgroup(&self) -> &Subgroup {
        self.sq.bottom()
    }

    /// `η(x)` in invariant-factor coordinates.
    pub fn project(&self, x: usize) -> Vec<i64> {
        self.sq.coords(x).expect("every element lies in Y")
    }

    /// Elements of `Y` mapping to the invariant generators of `H₁Y`.
    pub fn generator_reps(&self) -> &[usize] {
        self.sq.generator_reps()
    }

    /// An element of `Y` with the given image.
    pub fn lift(&self, coords: &[i64]) -> usize {
        self.sq.element_of(&self.group, coords)
    }
}

pub fn h1(y: &Arc<FiniteGroup>) -> Abelianization {
    let whole = Subgroup::whole(y);
    let derived = commutator_subgroup(y, &whole, &whole).expect("subgroups of y");
    let sq = subquotient_structure(y, &whole, &derived).expect("abelianization is abelian");
    Abelianization { group: y.clone(), sq }
}

/// `H₂Y` with explicit cycle representatives and a coordinate map on cycles.
#[derive(Debug, Clone)]
pub struct HomologyGroup {
    group: Arc<FiniteGroup>,
    structure: FinAb,
    certified: bool,
    cycles: Vec<Chain2>,
    pres: Arc<Presentation>,
    q_inv: Vec<Vec<i64>>,
    rank_d2: usize,
    coord_rows: Vec<Vec<i64>>,
}

impl HomologyGroup {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn structure(&self) -> &FinAb {
        &self.structure
    }

    /// False when the structure came from the modular path.
    pub fn certified(&self) -> bool {
        self.certified
    }

    /// One bar cycle per invariant factor.
    pub fn cycle_basis(&self) -> &[Chain2] {
        &self.cycles
    }

    /// Invariant-factor coordinates of the class of a bar 2-cycle.
    pub fn coordinates(&self, chain: &[(usize, usize, i64)]) -> Result<Vec<i64>> {
        if !bar::is_cycle(&self.group, chain) {
            return Err(Error::NotACycle);
        }
        let x = self.pres.chain(chain);
        let y: Vec<i128> =
            self.q_inv.iter().map(|row| row.iter().zip(&x).map(|(&a, &b)| a as i128 * b as i128).sum()).collect();
        if y[..self.rank_d2].iter().any(|&v| v != 0) {
            return Err(Error::Inconsistent("cycle has a component outside ker d2".into()));
        }
        Ok(self
            .coord_rows
            .iter()
            .zip(self.structure.factors())
            .map(|(row, &d)| {
                let s: i128 = row.iter().zip(&y[self.rank_d2..]).map(|(&a, &b)| a as i128 * b).sum();
                s.rem_euclid(d as i128) as i64
            })
            .collect())
    }
}

/// `H₂Y` on the certified path, refusing groups above `DEFAULT_CERTIFIED_CAP`.
pub fn h2(y: &Arc<FiniteGroup>) -> Result<HomologyGroup> {
    h2_with_cap(y, DEFAULT_CERTIFIED_CAP)
}

pub fn h2_with_cap(y: &Arc<FiniteGroup>, cap: usize) -> Result<HomologyGroup> {
    if y.order() > cap {
        return Err(Error::OrderCapExceeded { order: y.order(), cap });
    }
    h2_exact(y)
}

/// `H₂Y` with its structure read from ranks over `Z/pᵏ`. Cycle
/// representatives still come from the integer computation, and the two
/// structures must agree.
pub fn h2_uncertified(y: &Arc<FiniteGroup>) -> Result<HomologyGroup> {
    let modular = h2_modular_structure(y)?;
    let mut exact = h2_exact(y)?;
    if exact.structure != modular {
        return Err(Error::Inconsistent(format!(
            "modular H2 {modular} disagrees with the integer computation {}",
            exact.structure
        )));
    }
    exact.certified = false;
    Ok(exact)
}

fn h2_exact(y: &Arc<FiniteGroup>) -> Result<HomologyGroup> {
    let pres = Presentation::new(y);
    let u = pres.unknowns();
    let d2 = pres.d2(y);
    let s = snf_i64(&d2, y.order() - 1, u, Track::RIGHT)?;
    let rank_d2 = s.rank;
    let q = s.v.expect("tracked");
    let q_inv = s.v_inv.expect("tracked");

    let rels = &pres.relations;
    let kdim = u - rank_d2;
    let t: Vec<Vec<i64>> = (rank_d2..u)
        .map(|i| rels.iter().map(|r| r.iter().map(|&(k, c)| q_inv[i][k] * c).sum::<i64>()).collect())
        .collect();
    let st = snf_i64(&t, kdim, rels.len(), Track::LEFT)?;
    let pt = st.u.expect("tracked");
    let pt_inv = st.u_inv.expect("tracked");
    let diag: Vec<i64> = (0..kdim).map(|i| st.diag.get(i).copied().unwrap_or(0)).collect();
    if diag.contains(&0) {
        return Err(Error::InfiniteCokernel);
    }
    let keep: Vec<usize> = (0..kdim).filter(|&i| diag[i] > 1).collect();
    let structure = FinAb::new(keep.iter().map(|&i| diag[i] as u64).collect())?;
    let cycles = keep
        .iter()
        .map(|&i| {
            let mut x = vec![0i64; u];
            for j in 0..kdim {
                let c = pt_inv[j][i];
                if c != 0 {
                    for (v, xv) in x.iter_mut().enumerate() {
                        *xv += q[v][rank_d2 + j] * c;
                    }
                }
            }
            x.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(v, &c)| {
                    let (a, b) = pres.pair_of(v);
                    (a, b, c)
                })
                .collect()
        })
        .collect();
    let coord_rows = keep.iter().map(|&i| pt[i].clone()).collect();
    Ok(HomologyGroup {
        group: y.clone(),
        structure,
        certified: true,
        cycles,
        pres: Arc::new(pres),
        q_inv,
        rank_d2,
        coord_rows,
    })
}

fn prime_factors(mut n: usize) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p as u64, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n as u64, 1));
    }
    out
}

/// Structure of `H₂Y` from the orders of `H₂(Y; Z/pᵏ)` for every prime power
/// dividing `|Y|`, after removing the `Tor(H₁Y, Z/pᵏ)` summand.
pub fn h2_modular_structure(y: &Arc<FiniteGroup>) -> Result<FinAb> {
    let pres = Presentation::new(y);
    let u = pres.unknowns();
    let d2 = pres.d2(y);
    let rel_cols: Vec<Vec<i64>> = {
        let dense = pres.dense_relations();
        (0..u).map(|i| dense.iter().map(|r| r[i]).collect()).collect()
    };
    let h1s = h1(y).structure().clone();
    let mut orders = Vec::new();
    for (p, v) in prime_factors(y.order()) {
        // sums[k] = Σ min(e, k) over the p-exponents e of H₂Y
        let mut sums = vec![0i64; v as usize + 1];
        for k in 1..=v {
            let q = p.pow(k) as i64;
            let to_mod = |m: &[Vec<i64>]| -> Vec<Vec<u64>> {
                m.iter().map(|r| r.iter().map(|&x| x.rem_euclid(q) as u64).collect()).collect()
            };
            let vd = crate::abelian::local_valuations(to_mod(&d2), p, k);
            let vr = crate::abelian::local_valuations(to_mod(&rel_cols), p, k);
            let ker: i64 = k as i64 * (u - vd.len()) as i64 + vd.iter().map(|&x| x as i64).sum::<i64>();
            let im: i64 = vr.iter().map(|&x| (k - x) as i64).sum();
            let tor: i64 = h1s
                .factors()
                .iter()
                .map(|&d| {
                    let mut e = 0;
                    let mut d = d;
                    while d % p == 0 {
                        d /= p;
                        e += 1;
                    }
                    e.min(k) as i64
                })
                .sum();
            sums[k as usize] = ker - im - tor;
        }
        let at_least: Vec<i64> = (0..=v as usize).map(|k| if k == 0 { 0 } else { sums[k] - sums[k - 1] }).collect();
        for k in 1..=v as usize {
            let next = if k < v as usize { at_least[k + 1] } else { 0 };
            for _ in 0..(at_least[k] - next) {
                orders.push(p.pow(k as u32));
            }
        }
    }
    Ok(FinAb::from_orders(&orders))
}

/// `H₁f` in invariant-factor coordinates.
pub fn induced_h1(f: &GroupMorphism) -> AbMorphism {
    let hx = h1(f.source());
    let hy = h1(f.target());
    induced_h1_with(f, &hx, &hy)
}

pub fn induced_h1_with(f: &GroupMorphism, hx: &Abelianization, hy: &Abelianization) -> AbMorphism {
    let cols: Vec<Vec<i64>> = hx.generator_reps().iter().map(|&r| hy.project(f.apply(r))).collect();
    AbMorphism::from_columns(hx.structure().clone(), hy.structure().clone(), &cols).expect("H1 is functorial")
}

/// Image of a 2-chain under `(x, y) ↦ (f x, f y)`.
pub fn push_chain(f: &GroupMorphism, chain: &[(usize, usize, i64)]) -> Chain2 {
    chain
        .iter()
        .filter_map(|&(a, b, c)| {
            let (fa, fb) = (f.apply(a), f.apply(b));
            (fa != 0 && fb != 0).then_some((fa, fb, c))
        })
        .collect()
}

/// `H₂f` with both homology groups on the certified path.
pub fn induced_h2(f: &GroupMorphism) -> Result<AbMorphism> {
    let hx = h2(f.source())?;
    let hy = h2(f.target())?;
    induced_h2_with(f, &hx, &hy)
}

pub fn induced_h2_with(f: &GroupMorphism, hx: &HomologyGroup, hy: &HomologyGroup) -> Result<AbMorphism> {
    let cols = hx.cycle_basis().iter().map(|c| hy.coordinates(&push_chain(f, c))).collect::<Result<Vec<_>>>()?;
    AbMorphism::from_columns(hx.structure().clone(), hy.structure().clone(), &cols)
}

/// `K/[K,X]` for an extension with kernel `K`.
pub fn kernel_mod_commutator(e: &Extension) -> Subquotient {
    let x = e.total();
    let k = e.kernel();
    let kx = commutator_subgroup(x, k, &Subgroup::whole(x)).expect("kernel is a subgroup");
    subquotient_structure(x, k, &kx).expect("[K,X] contains [K,K]")
}

/// The connecting map `H₂Y → K/[K,X]`, using the minimal-preimage section.
pub fn homology_transgression(e: &Extension, hy: &HomologyGroup, kq: &Subquotient) -> Result<AbMorphism> {
    transgression_with_section(e, hy, kq, &e.section())
}

/// The connecting map computed from an arbitrary set-theoretic section with
/// `section[0] = 0`.
pub fn transgression_with_section(
    e: &Extension,
    hy: &HomologyGroup,
    kq: &Subquotient,
    section: &[usize],
) -> Result<AbMorphism> {
    let x = e.total();
    let y = e.base();
    let cols = hy
        .cycle_basis()
        .iter()
        .map(|chain| {
            let mut acc = kq.structure().zero_element();
            for &(a, b, c) in chain {
                let k = x.mul(x.mul(section[a], section[b]), x.inv(section[y.mul(a, b)]));
                let v = kq.coords(k).ok_or(Error::NotACycle)?;
                for (slot, t) in acc.iter_mut().zip(v) {
                    *slot += c * t;
                }
            }
            Ok(kq.structure().reduce(&acc))
        })
        .collect::<Result<Vec<_>>>()?;
    AbMorphism::from_columns(hy.structure().clone(), kq.structure().clone(), &cols)
}
