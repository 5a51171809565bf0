//! Extensions `K ↣ X ↠ Y` as first-class values: centrality in the senses
//! of Huq and Smith, the central reflection, pushouts and pullbacks,
//! equivalence, classification and the Baer sum.

mod centrality;
mod classify;

use std::sync::Arc;

use serde_json::{json, Value};

use crate::abelian::{subquotient_structure, AbMorphism};
use crate::cohomology::CoefficientGroup;
use crate::error::{Error, Result};
use crate::groups::{
    builtin, center, commutator_subgroup, direct_product, quotient, FiniteGroup, GroupMorphism, Subgroup,
};

pub use centrality::{
    is_central_huq, is_central_smith, subobjects_of_kernel_are_normal, Cooperator, SmithWitness, SquareCertificate,
};
pub use classify::{
    are_equivalent, baer_sum, classify_by_catalog, classify_central, fiber_signature, CentralClass, EquivalenceMode,
    EquivalenceWitness,
};

/// An isomorphism from a coefficient group onto the kernel of an extension.
#[derive(Debug, Clone)]
pub struct KernelIdentification {
    coeff: CoefficientGroup,
    embed: Vec<usize>,
    back: Vec<Option<usize>>,
}

impl KernelIdentification {
    pub fn coeff(&self) -> &CoefficientGroup {
        &self.coeff
    }

    /// `embed[a]` is the image of coefficient element `a` in the total group.
    pub fn embed(&self) -> &[usize] {
        &self.embed
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.embed[a]
    }

    /// For each element of the total group, its preimage if it lies in the
    /// kernel.
    pub fn inverse_map(&self) -> &[Option<usize>] {
        &self.back
    }
}

/// A surjection `f: X → Y` with its kernel and, optionally, an identification
/// of the kernel with a coefficient group.
#[derive(Debug, Clone)]
pub struct Extension {
    total: Arc<FiniteGroup>,
    base: Arc<FiniteGroup>,
    proj: GroupMorphism,
    kernel: Subgroup,
    identification: Option<KernelIdentification>,
}

pub fn make_extension(f: GroupMorphism) -> Result<Extension> {
    if !f.is_surjective() {
        return Err(Error::NotSurjective);
    }
    Ok(Extension::from_parts(f))
}

impl Extension {
    pub(crate) fn from_parts(proj: GroupMorphism) -> Extension {
        let kernel = proj.kernel();
        Extension { total: proj.source().clone(), base: proj.target().clone(), proj, kernel, identification: None }
    }

    /// Attaches `embed: A → X`, which must be an isomorphism onto the kernel.
    pub fn with_identification(mut self, coeff: CoefficientGroup, embed: Vec<usize>) -> Result<Extension> {
        let hom = GroupMorphism::new(coeff.concrete().clone(), self.total.clone(), embed.clone())
            .map_err(|e| Error::KernelMismatch(format!("identification is not a homomorphism: {e}")))?;
        if !hom.is_injective() {
            return Err(Error::KernelMismatch("identification is not injective".into()));
        }
        if hom.image() != self.kernel {
            return Err(Error::KernelMismatch("identification does not hit the kernel exactly".into()));
        }
        let mut back = vec![None; self.total.order()];
        for (a, &x) in embed.iter().enumerate() {
            back[x] = Some(a);
        }
        self.identification = Some(KernelIdentification { coeff, embed, back });
        Ok(self)
    }

    /// Identifies an abelian kernel with the canonical group of its
    /// invariant factors.
    pub fn identify_kernel(self) -> Result<Extension> {
        let x = &self.total;
        let trivial = Subgroup::trivial(x);
        let sq = subquotient_structure(x, &self.kernel, &trivial).map_err(|e| match e {
            Error::NonAbelianQuotient => Error::NotAbelian,
            other => other,
        })?;
        let coeff = CoefficientGroup::new(sq.structure().clone());
        let embed = (0..coeff.order()).map(|a| sq.element_of(x, &coeff.coords(a))).collect();
        self.with_identification(coeff, embed)
    }

    pub fn total(&self) -> &Arc<FiniteGroup> {
        &self.total
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn proj(&self) -> &GroupMorphism {
        &self.proj
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// The kernel as a group, with its embedding `k: K → X`.
    pub fn kernel_group(&self) -> (Arc<FiniteGroup>, GroupMorphism) {
        self.kernel.as_group(&self.total, "K")
    }

    pub fn identification(&self) -> Option<&KernelIdentification> {
        self.identification.as_ref()
    }

    /// The set-theoretic section choosing the smallest preimage.
    pub fn section(&self) -> Vec<usize> {
        let mut s = vec![usize::MAX; self.base.order()];
        for x in self.total.elements() {
            let y = self.proj.apply(x);
            if s[y] == usize::MAX {
                s[y] = x;
            }
        }
        s
    }

    /// `K ⊆ Z(X)`.
    pub fn is_central(&self) -> bool {
        self.kernel.is_subset_of(&center(&self.total))
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "total": self.total.to_json(),
            "base": self.base.to_json(),
            "proj": { "map": self.proj.map() },
        });
        if let Some(id) = &self.identification {
            v["kernel_identification"] = json!({
                "coeff": id.coeff.structure().to_json(),
                "map": id.embed,
            });
        }
        v
    }

    /// Reads `{"total", "proj": {"map"}, "base"?, "kernel_identification"?}`.
    /// Groups are Cayley JSON objects or DSL strings. Without `base`, the base
    /// is the group structure induced on the values of `proj`.
    pub fn from_json(value: &Value) -> Result<Extension> {
        let total = Arc::new(group_from_json(value.get("total").ok_or_else(|| schema("missing \"total\""))?)?);
        let map: Vec<usize> = value
            .get("proj")
            .and_then(|p| p.get("map"))
            .ok_or_else(|| schema("missing \"proj\".\"map\""))
            .and_then(|m| serde_json::from_value(m.clone()).map_err(|e| schema(&format!("proj map: {e}"))))?;
        if map.len() != total.order() {
            return Err(Error::MapLength { len: map.len(), order: total.order() });
        }
        let base = match value.get("base") {
            Some(b) => Arc::new(group_from_json(b)?),
            None => Arc::new(induced_base(&total, &map)?),
        };
        let proj = GroupMorphism::new(total, base, map)?;
        let mut e = make_extension(proj)?;
        if let Some(id) = value.get("kernel_identification") {
            let embed: Vec<usize> =
                id.get("map").ok_or_else(|| schema("kernel_identification needs \"map\"")).and_then(|m| {
                    serde_json::from_value(m.clone()).map_err(|e| schema(&format!("identification map: {e}")))
                })?;
            let coeff = match id.get("coeff") {
                Some(Value::String(s)) => CoefficientGroup::from_spec(s)?,
                Some(c) => CoefficientGroup::new(crate::abelian::FinAb::from_json(c)?),
                None => {
                    let auto = e.clone().identify_kernel()?;
                    auto.identification.expect("just identified").coeff
                }
            };
            if embed.len() != coeff.order() {
                return Err(Error::KernelMismatch(format!(
                    "identification has {} entries, coefficient group has order {}",
                    embed.len(),
                    coeff.order()
                )));
            }
            e = e.with_identification(coeff, embed)?;
        }
        Ok(e)
    }
}

fn schema(msg: &str) -> Error {
    Error::Schema(msg.to_string())
}

/// A Cayley JSON object or a DSL string.
pub fn group_from_json(value: &Value) -> Result<FiniteGroup> {
    match value {
        Value::String(s) => builtin(s),
        Value::Object(_) => FiniteGroup::from_json(value),
        _ => Err(schema("group must be a Cayley JSON object or a DSL string")),
    }
}

/// The group on `{0, …, m−1}` making `map` a surjective homomorphism.
fn induced_base(total: &FiniteGroup, map: &[usize]) -> Result<FiniteGroup> {
    let m = map.iter().copied().max().map_or(0, |v| v + 1);
    let mut rep = vec![usize::MAX; m];
    for (x, &y) in map.iter().enumerate() {
        if rep[y] == usize::MAX {
            rep[y] = x;
        }
    }
    if rep.contains(&usize::MAX) {
        return Err(Error::NotSurjective);
    }
    let table: Vec<Vec<usize>> = (0..m).map(|a| (0..m).map(|b| map[total.mul(rep[a], rep[b])]).collect()).collect();
    for a in total.elements() {
        for &s in total.generators() {
            if map[total.mul(a, s)] != table[map[a]][map[s]] {
                return Err(Error::NotHomomorphism { a, b: s });
            }
        }
    }
    if map[0] != 0 {
        return Err(Error::NotHomomorphism { a: 0, b: 0 });
    }
    FiniteGroup::from_cayley_table_labeled(&table, "Y")
}

/// Structures shared by pushouts and Baer sums: a subgroup of pairs with
/// direct lookup.
pub(crate) struct PairGroup {
    pub group: Arc<FiniteGroup>,
    pub pairs: Vec<(usize, usize)>,
    index: Vec<u32>,
    width: usize,
}

impl PairGroup {
    /// The subgroup `{(a, b) : keep(a, b)}` of `G × H`.
    pub fn new(g: &FiniteGroup, h: &FiniteGroup, keep: impl Fn(usize, usize) -> bool, label: &str) -> PairGroup {
        let width = h.order();
        let mut index = vec![u32::MAX; g.order() * width];
        let mut pairs = Vec::new();
        for a in g.elements() {
            for b in h.elements() {
                if keep(a, b) {
                    index[a * width + b] = pairs.len() as u32;
                    pairs.push((a, b));
                }
            }
        }
        let n = pairs.len();
        let mut t = vec![0u32; n * n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(c, d)) in pairs.iter().enumerate() {
                t[i * n + j] = index[g.mul(a, c) * width + h.mul(b, d)];
            }
        }
        let group = Arc::new(FiniteGroup::from_flat_table(t, n, label));
        PairGroup { group, pairs, index, width }
    }

    pub fn index(&self, a: usize, b: usize) -> usize {
        self.index[a * self.width + b] as usize
    }
}

/// `X/[K,X]` over `Y`, with the comparison map from `X`.
pub fn central_reflection(e: &Extension) -> (Extension, GroupMorphism) {
    let x = &e.total;
    let kx = commutator_subgroup(x, &e.kernel, &Subgroup::whole(x)).expect("kernel is a subgroup");
    let (q, pi) = quotient(x, &kx).expect("[K,X] is normal");
    let mut down = vec![0usize; q.order()];
    for g in x.elements() {
        down[pi.apply(g)] = e.proj.apply(g);
    }
    let proj = GroupMorphism::new_unchecked(q.clone(), e.base.clone(), down);
    let mut refl = Extension::from_parts(proj);
    if kx.is_trivial() {
        if let Some(id) = &e.identification {
            let embed = id.embed.iter().map(|&k| pi.apply(k)).collect();
            refl = refl.with_identification(id.coeff.clone(), embed).expect("quotient by the trivial group");
        }
    }
    debug_assert!(refl.is_central());
    (refl, pi)
}

/// Pushout of a central extension along `a: K → A`, realized as
/// `(X × A)/{(k, −a(k))}`. The kernel of the result is identified with `A`.
pub fn pushout_along(e: &Extension, a: &GroupMorphism, coeff: &CoefficientGroup) -> Result<Extension> {
    if !e.is_central() {
        return Err(Error::NotCentral);
    }
    if a.source().order() != e.kernel.order() || **a.target() != **coeff.concrete() {
        return Err(Error::KernelMismatch("pushout map must go from the kernel to the coefficients".into()));
    }
    let x = &e.total;
    let prod = Arc::new(direct_product(x, coeff.concrete()));
    let m = coeff.order();
    let n_elems: Vec<usize> =
        e.kernel.elements().iter().enumerate().map(|(i, &k)| k * m + coeff.neg(a.apply(i))).collect();
    let n =
        Subgroup::new(&prod, n_elems).map_err(|_| Error::KernelMismatch("pushout map is not a homomorphism".into()))?;
    let (q, pi) = quotient(&prod, &n)?;
    let mut down = vec![0usize; q.order()];
    for g in x.elements() {
        for b in 0..m {
            down[pi.apply(g * m + b)] = e.proj.apply(g);
        }
    }
    let q = Arc::new(q.as_ref().clone().with_label(format!("{}+{}", x.label(), coeff.label())));
    let proj = GroupMorphism::new_unchecked(q, e.base.clone(), down);
    let embed = (0..m).map(|b| pi.apply(b)).collect();
    Extension::from_parts(proj).with_identification(coeff.clone(), embed)
}

/// Pushout along a coefficient morphism `m: A → B`, using the extension's
/// kernel identification.
pub fn pushout_coefficients(e: &Extension, m: &AbMorphism, target: &CoefficientGroup) -> Result<Extension> {
    let id =
        e.identification().ok_or_else(|| Error::KernelMismatch("extension has no kernel identification".into()))?;
    if m.source() != id.coeff.structure() || m.target() != target.structure() {
        return Err(Error::KernelMismatch("coefficient morphism has the wrong shape".into()));
    }
    let (kg, incl) = e.kernel_group();
    let map = kg
        .elements()
        .map(|i| {
            let a = id.back[incl.apply(i)].expect("kernel element");
            target.index(&m.apply(&id.coeff.coords(a)))
        })
        .collect();
    let a = GroupMorphism::new(kg, target.concrete().clone(), map)?;
    pushout_along(e, &a, target)
}

/// Pullback along `w: Y′ → Y`; the total group is `X ×_Y Y′`.
pub fn pullback_along(e: &Extension, w: &GroupMorphism) -> Result<Extension> {
    if **w.target() != *e.base {
        return Err(Error::BaseMismatch);
    }
    let x = &e.total;
    let yp = w.source();
    let label = format!("{}x_{}", x.label(), yp.label());
    let pg = PairGroup::new(x, yp, |a, b| e.proj.apply(a) == w.apply(b), &label);
    let map = pg.pairs.iter().map(|&(_, b)| b).collect();
    let proj = GroupMorphism::new_unchecked(pg.group.clone(), yp.clone(), map);
    let mut out = Extension::from_parts(proj);
    if let Some(id) = &e.identification {
        let embed = id.embed.iter().map(|&k| pg.index(k, 0)).collect();
        out = out.with_identification(id.coeff.clone(), embed)?;
    }
    Ok(out)
}

/// Whether a homomorphic section `Y → X` exists.
pub fn find_splitting(e: &Extension) -> Option<GroupMorphism> {
    use crate::groups::{enumerate_morphisms, Constraints};
    let labels_y: Vec<usize> = e.base.elements().collect();
    let c = Constraints::new().over(labels_y, e.proj.map().to_vec());
    enumerate_morphisms(&e.base, &e.total, &c).next()
}

#[cfg(test)]
mod tests;
