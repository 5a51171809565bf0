use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::exact::{check_exactness_named, FiveTermReport};
use crate::abelian::{ext_group, hom_group, AbMorphism, FinAb};
use crate::catalog::catalog;
use crate::cohomology::{
    cohomology_transgression, h1_cohomology, h2_cohomology, inflation, pairing_morphism, restriction_to_kernel,
    Cocycle2, CoefficientGroup, CohomologyGroup2,
};
use crate::error::{Error, Result};
use crate::extensions::{make_extension, Extension};
use crate::groups::{quotient, FiniteGroup, GroupMorphism, Subgroup};
use crate::homology::{
    h1, h2, h2_with_cap, homology_transgression, induced_h1_with, induced_h2_with, kernel_mod_commutator,
    transgression_with_section, HomologyGroup,
};

/// `H₂X → H₂Y → K/[K,X] → H₁X → H₁Y → 0`.
pub fn stallings_stammbach(e: &Extension) -> Result<FiveTermReport> {
    let hx = h2(e.total())?;
    let hy = h2(e.base())?;
    stallings_stammbach_with(e, &hx, &hy)
}

pub fn stallings_stammbach_with_cap(e: &Extension, cap: usize) -> Result<FiveTermReport> {
    let hx = h2_with_cap(e.total(), cap)?;
    let hy = h2_with_cap(e.base(), cap)?;
    stallings_stammbach_with(e, &hx, &hy)
}

pub fn stallings_stammbach_with(e: &Extension, hx: &HomologyGroup, hy: &HomologyGroup) -> Result<FiveTermReport> {
    let f = e.proj();
    let kq = kernel_mod_commutator(e);
    let (ax, ay) = (h1(e.total()), h1(e.base()));
    let incl_cols: Vec<Vec<i64>> = kq.generator_reps().iter().map(|&r| ax.project(r)).collect();
    let incl = AbMorphism::from_columns(kq.structure().clone(), ax.structure().clone(), &incl_cols)?;
    let zero = FinAb::zero();
    let nodes = vec![
        hx.structure().clone(),
        hy.structure().clone(),
        kq.structure().clone(),
        ax.structure().clone(),
        ay.structure().clone(),
        zero.clone(),
    ];
    let arrows = vec![
        induced_h2_with(f, hx, hy)?,
        homology_transgression(e, hy, &kq)?,
        incl,
        induced_h1_with(f, &ax, &ay),
        AbMorphism::zero(ay.structure(), &zero),
    ];
    let labels = ["H2X", "H2Y", "K/[K,X]", "H1X", "H1Y", "0"].map(String::from).to_vec();
    let mut r = check_exactness_named("stallings-stammbach", labels, nodes, arrows)?;
    r.certified = hx.certified() && hy.certified();
    Ok(r)
}

/// Compares the transgression of the minimal section with `trials` random
/// normalized sections.
pub fn transgression_is_section_independent(e: &Extension, trials: usize, seed: u64) -> Result<bool> {
    let hy = h2(e.base())?;
    let kq = kernel_mod_commutator(e);
    let reference = homology_transgression(e, &hy, &kq)?;
    let mut fibers = vec![Vec::new(); e.base().order()];
    for x in e.total().elements() {
        fibers[e.proj().apply(x)].push(x);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut section: Vec<usize> = fibers.iter().map(|f| f[rng.gen_range(0..f.len())]).collect();
        section[0] = 0;
        if transgression_with_section(e, &hy, &kq, &section)? != reference {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `0 → H¹Y → H¹X → Hom(K/[K,X], A) → H²Y → H²X`.
pub fn hochschild_serre(e: &Extension, coeff: &CoefficientGroup) -> Result<FiveTermReport> {
    let h2y = h2_cohomology(e.base(), coeff)?;
    let h2x = h2_cohomology(e.total(), coeff)?;
    hochschild_serre_with(e, coeff, &h2y, &h2x)
}

pub fn hochschild_serre_with(
    e: &Extension,
    coeff: &CoefficientGroup,
    h2y: &CohomologyGroup2,
    h2x: &CohomologyGroup2,
) -> Result<FiveTermReport> {
    let f = e.proj();
    let h1y = h1_cohomology(e.base(), coeff);
    let h1x = h1_cohomology(e.total(), coeff);
    let kq = kernel_mod_commutator(e);
    let homk = hom_group(kq.structure(), coeff.structure());

    let precompose: Vec<Vec<i64>> =
        h1y.basis().iter().map(|phi| Ok(h1x.coords_of(&f.then(phi)?))).collect::<Result<_>>()?;
    let restrict: Vec<Vec<i64>> =
        h1x.basis().iter().map(|phi| homk.coords(&restriction_to_kernel(&kq, phi, coeff))).collect();
    let transgress: Vec<Vec<i64>> =
        homk.basis().iter().map(|a| h2y.coordinates(&cohomology_transgression(e, a, coeff)?)).collect::<Result<_>>()?;
    let inflate: Vec<Vec<i64>> =
        h2y.representatives().iter().map(|c| h2x.coordinates(&inflation(f, c)?)).collect::<Result<_>>()?;

    let zero = FinAb::zero();
    let nodes = vec![
        zero.clone(),
        h1y.structure().clone(),
        h1x.structure().clone(),
        homk.structure().clone(),
        h2y.structure().clone(),
        h2x.structure().clone(),
    ];
    let arrows = vec![
        AbMorphism::zero(&zero, h1y.structure()),
        AbMorphism::from_columns(nodes[1].clone(), nodes[2].clone(), &precompose)?,
        AbMorphism::from_columns(nodes[2].clone(), nodes[3].clone(), &restrict)?,
        AbMorphism::from_columns(nodes[3].clone(), nodes[4].clone(), &transgress)?,
        AbMorphism::from_columns(nodes[4].clone(), nodes[5].clone(), &inflate)?,
    ];
    let labels = ["0", "H1(Y,A)", "H1(X,A)", "Hom(K/[K,X],A)", "H2(Y,A)", "H2(X,A)"].map(String::from).to_vec();
    check_exactness_named("hochschild-serre", labels, nodes, arrows)
}

/// For a morphism of extensions `α: X → X′` (inducing `β: Y → Y′`), whether
/// the four squares between the two cohomology sequences commute.
pub fn hochschild_serre_ladder(
    e: &Extension,
    e2: &Extension,
    alpha: &GroupMorphism,
    coeff: &CoefficientGroup,
) -> Result<Vec<bool>> {
    if **alpha.source() != **e.total() || **alpha.target() != **e2.total() {
        return Err(Error::BaseMismatch);
    }
    let mut beta = vec![usize::MAX; e.base().order()];
    for x in e.total().elements() {
        let (y, y2) = (e.proj().apply(x), e2.proj().apply(alpha.apply(x)));
        if beta[y] != usize::MAX && beta[y] != y2 {
            return Err(Error::KernelMismatch("morphism does not carry the kernel into the kernel".into()));
        }
        beta[y] = y2;
    }
    let beta = GroupMorphism::new(e.base().clone(), e2.base().clone(), beta)?;
    let low = hochschild_serre(e, coeff)?;
    let high = hochschild_serre(e2, coeff)?;

    let (h1y, h1x) = (h1_cohomology(e.base(), coeff), h1_cohomology(e.total(), coeff));
    let (h1y2, h1x2) = (h1_cohomology(e2.base(), coeff), h1_cohomology(e2.total(), coeff));
    let (kq, kq2) = (kernel_mod_commutator(e), kernel_mod_commutator(e2));
    let (homk, homk2) = (hom_group(kq.structure(), coeff.structure()), hom_group(kq2.structure(), coeff.structure()));
    let (h2y, h2x) = (h2_cohomology(e.base(), coeff)?, h2_cohomology(e.total(), coeff)?);
    let (h2y2, h2x2) = (h2_cohomology(e2.base(), coeff)?, h2_cohomology(e2.total(), coeff)?);

    let v1: Vec<Vec<i64>> = h1y2.basis().iter().map(|p| Ok(h1y.coords_of(&beta.then(p)?))).collect::<Result<_>>()?;
    let v2: Vec<Vec<i64>> = h1x2.basis().iter().map(|p| Ok(h1x.coords_of(&alpha.then(p)?))).collect::<Result<_>>()?;
    let v3: Vec<Vec<i64>> = homk2
        .basis()
        .iter()
        .map(|m| {
            let cols: Vec<Vec<i64>> = kq
                .generator_reps()
                .iter()
                .map(|&r| kq2.coords(alpha.apply(r)).map(|c| m.apply(&c)).ok_or(Error::NotCentral))
                .collect::<Result<_>>()?;
            Ok(homk.coords(&AbMorphism::from_columns(kq.structure().clone(), coeff.structure().clone(), &cols)?))
        })
        .collect::<Result<_>>()?;
    let pull = |src: &CohomologyGroup2, dst: &CohomologyGroup2, g: &GroupMorphism| -> Result<Vec<Vec<i64>>> {
        src.representatives().iter().map(|c| dst.coordinates(&c.pullback(g)?)).collect()
    };
    let v4 = pull(&h2y2, &h2y, &beta)?;
    let v5 = pull(&h2x2, &h2x, alpha)?;
    let verticals = [
        AbMorphism::from_columns(high.nodes[1].clone(), low.nodes[1].clone(), &v1)?,
        AbMorphism::from_columns(high.nodes[2].clone(), low.nodes[2].clone(), &v2)?,
        AbMorphism::from_columns(high.nodes[3].clone(), low.nodes[3].clone(), &v3)?,
        AbMorphism::from_columns(high.nodes[4].clone(), low.nodes[4].clone(), &v4)?,
        AbMorphism::from_columns(high.nodes[5].clone(), low.nodes[5].clone(), &v5)?,
    ];
    (0..4)
        .map(|i| {
            let across_then_down = high.arrows[i + 1].then(&verticals[i + 1])?;
            let down_then_across = verticals[i].then(&low.arrows[i + 1])?;
            Ok(across_then_down == down_then_across)
        })
        .collect()
}

/// Carry cocycle of the `Ext` class with the given raw cell multiplicities,
/// pulled back to `Y` along `Y → H₁Y`.
fn ext_class_cocycle(
    y: &Arc<FiniteGroup>,
    coeff: &CoefficientGroup,
    cells: &[(usize, usize, u64)],
    raw: &[i64],
) -> Result<Cocycle2> {
    let ab = h1(y);
    let hab = CoefficientGroup::new(ab.structure().clone());
    let eta = GroupMorphism::new(
        y.clone(),
        hab.concrete().clone(),
        y.elements().map(|g| hab.index(&ab.project(g))).collect(),
    )?;
    let d = ab.structure().factors();
    let on_h1 = Cocycle2::from_fn(hab.concrete(), coeff, |u, v| {
        let (cu, cv) = (hab.coords(u), hab.coords(v));
        let mut out = coeff.structure().zero_element();
        for (&(i, j, _), &m) in cells.iter().zip(raw) {
            if cu[i] + cv[i] >= d[i] as i64 {
                out[j] += m;
            }
        }
        coeff.index(&coeff.structure().reduce(&out))
    })?;
    on_h1.pullback(&eta)
}

/// `0 → Ext(H₁Y, A) → H²(Y, A) → Hom(H₂Y, A)`.
pub fn universal_coefficients(y: &Arc<FiniteGroup>, coeff: &CoefficientGroup) -> Result<FiveTermReport> {
    let hy = h2(y)?;
    let h = h2_cohomology(y, coeff)?;
    universal_coefficients_with(y, coeff, &hy, &h)
}

pub fn universal_coefficients_with(
    y: &Arc<FiniteGroup>,
    coeff: &CoefficientGroup,
    hy: &HomologyGroup,
    h: &CohomologyGroup2,
) -> Result<FiveTermReport> {
    let ab = h1(y);
    let ext = ext_group(ab.structure(), coeff.structure());
    let left: Vec<Vec<i64>> = (0..ext.structure().rank())
        .map(|k| {
            let mut unit = ext.structure().zero_element();
            unit[k] = 1;
            h.coordinates(&ext_class_cocycle(y, coeff, ext.cells(), &ext.raw(&unit))?)
        })
        .collect::<Result<_>>()?;
    let (hom, pairing) = pairing_morphism(h, hy)?;
    let zero = FinAb::zero();
    let nodes = vec![zero.clone(), ext.structure().clone(), h.structure().clone(), hom.structure().clone()];
    let arrows = vec![
        AbMorphism::zero(&zero, ext.structure()),
        AbMorphism::from_columns(nodes[1].clone(), nodes[2].clone(), &left)?,
        pairing,
    ];
    let labels = ["0", "Ext(H1Y,A)", "H2(Y,A)", "Hom(H2Y,A)"].map(String::from).to_vec();
    let mut r = check_exactness_named("universal-coefficients", labels, nodes, arrows)?;
    r.certified = hy.certified();
    Ok(r)
}

/// Every extension `X → X/N` for a catalog group `X` and a normal subgroup
/// `N`, the trivial and whole subgroups excluded.
pub fn standard_extension_suite() -> Vec<Extension> {
    let mut out = Vec::new();
    for x in catalog() {
        let x = Arc::new(x);
        for n in Subgroup::normal_subgroups(&x) {
            if n.is_trivial() || n.order() == x.order() {
                continue;
            }
            let (_, pi) = quotient(&x, &n).expect("normal subgroup");
            out.push(make_extension(pi).expect("quotient maps are onto"));
        }
    }
    out
}
