use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::abelian::{AbMorphism, FinAb};
use crate::cohomology::{extension_of_cocycle, h2_cohomology, pairing_morphism, Cocycle2, CoefficientGroup};
use crate::error::{Error, Result};
use crate::extensions::{find_splitting, Extension};
use crate::groups::{commutator_subgroup, enumerate_morphisms, Constraints, FiniteGroup, Subgroup};
use crate::homology::{h1, h2_uncertified, h2_with_cap, HomologyGroup, DEFAULT_CERTIFIED_CAP};

/// Largest order accepted on the modular `H₂` path.
pub const UNCERTIFIED_CAP: usize = 60;

/// `[Y, Y] = Y`, checked against `H₁Y = 0`.
pub fn is_perfect(y: &FiniteGroup) -> bool {
    let whole = Subgroup::whole(y);
    let derived = commutator_subgroup(y, &whole, &whole).expect("subgroups of y");
    let by_commutators = derived.order() == y.order();
    let by_h1 = h1(&Arc::new(y.clone())).structure().is_zero();
    assert_eq!(by_commutators, by_h1, "commutator closure and abelianization disagree");
    by_commutators
}

/// Limits for the `H₂` computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomologyCaps {
    pub certified: usize,
    /// Enables the modular path up to [`UNCERTIFIED_CAP`].
    pub allow_uncertified: bool,
}

impl Default for HomologyCaps {
    fn default() -> HomologyCaps {
        HomologyCaps { certified: DEFAULT_CERTIFIED_CAP, allow_uncertified: false }
    }
}

impl HomologyCaps {
    pub fn uncertified() -> HomologyCaps {
        HomologyCaps { allow_uncertified: true, ..HomologyCaps::default() }
    }

    pub fn h2(&self, y: &Arc<FiniteGroup>) -> Result<HomologyGroup> {
        if y.order() <= self.certified {
            return h2_with_cap(y, self.certified);
        }
        if self.allow_uncertified && y.order() <= UNCERTIFIED_CAP.max(self.certified) {
            return h2_uncertified(y);
        }
        let cap = if self.allow_uncertified { UNCERTIFIED_CAP.max(self.certified) } else { self.certified };
        Err(Error::OrderCapExceeded { order: y.order(), cap })
    }
}

/// Number of morphisms of extensions from the universal one to a sample
/// extension, counted up to two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialityCheck {
    pub target: String,
    pub target_order: usize,
    pub morphisms: usize,
}

impl InitialityCheck {
    pub fn holds(&self) -> bool {
        self.morphisms == 1
    }
}

#[derive(Debug, Clone)]
pub struct UCEResult {
    pub extension: Extension,
    pub kernel_structure: FinAb,
    pub h2_structure: FinAb,
    pub certified: bool,
    pub total_perfect: bool,
    pub split: bool,
    pub initiality: Vec<InitialityCheck>,
}

impl UCEResult {
    pub fn holds(&self) -> bool {
        let trivial = self.kernel_structure.is_zero();
        self.total_perfect
            && (trivial || !self.split)
            && self.kernel_structure == self.h2_structure
            && self.extension.is_central()
            && self.initiality.iter().all(InitialityCheck::holds)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "base": self.extension.base().label(),
            "total_order": self.extension.total().order(),
            "kernel": self.kernel_structure.factors(),
            "h2": self.h2_structure.factors(),
            "certified": self.certified,
            "total_perfect": self.total_perfect,
            "split": self.split,
            "central": self.extension.is_central(),
            "initiality": self.initiality.iter().map(|c| json!({
                "target": c.target,
                "target_order": c.target_order,
                "morphisms": c.morphisms,
            })).collect::<Vec<_>>(),
            "pass": self.holds(),
        })
    }
}

/// Counts morphisms of extensions `u → g` over the common base, stopping at two.
pub fn morphisms_over_base(u: &Extension, g: &Extension) -> Result<usize> {
    if **u.base() != **g.base() {
        return Err(Error::BaseMismatch);
    }
    let c = Constraints::new().over(u.proj().map().to_vec(), g.proj().map().to_vec());
    Ok(enumerate_morphisms(u.total(), g.total(), &c).take(2).count())
}

/// Central extensions of `Y` by `C2, C3, C4` and `C2xC2`, one per class.
pub fn initiality_sample(y: &Arc<FiniteGroup>) -> Result<Vec<Extension>> {
    let mut out = Vec::new();
    for spec in ["C2", "C3", "C4", "C2xC2"] {
        let a = CoefficientGroup::from_spec(spec)?;
        let h = h2_cohomology(y, &a)?;
        for coords in h.classes() {
            out.push(extension_of_cocycle(&h.cocycle(&coords)));
        }
    }
    Ok(out)
}

/// The central extension of a perfect group by `H₂Y` whose class pairs to
/// the identity of `H₂Y`. `seed` perturbs the factor set by a random
/// coboundary.
pub fn universal_central_extension(y: &Arc<FiniteGroup>, caps: HomologyCaps, seed: u64) -> Result<UCEResult> {
    let sample = initiality_sample(y)?;
    universal_central_extension_with_sample(y, caps, seed, &sample)
}

pub fn universal_central_extension_with_sample(
    y: &Arc<FiniteGroup>,
    caps: HomologyCaps,
    seed: u64,
    sample: &[Extension],
) -> Result<UCEResult> {
    if !is_perfect(y) {
        return Err(Error::NotPerfect);
    }
    let hy = caps.h2(y)?;
    let a = CoefficientGroup::new(hy.structure().clone());
    let h = h2_cohomology(y, &a)?;
    let (hom, pairing) = pairing_morphism(&h, &hy)?;
    let want = hom.coords(&AbMorphism::identity(a.structure()));
    let coords = h
        .classes()
        .find(|c| pairing.apply(c) == want)
        .ok_or_else(|| Error::Inconsistent("no class pairs to the identity of H2".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c: Vec<usize> = y.elements().map(|_| rng.gen_range(0..a.order())).collect();
    c[0] = 0;
    let f = h.cocycle(&coords).add(&Cocycle2::coboundary(y, &a, &c))?;
    let extension = extension_of_cocycle(&f);

    let total_perfect = is_perfect(extension.total());
    let split = find_splitting(&extension).is_some();
    let initiality = sample
        .iter()
        .map(|g| {
            Ok(InitialityCheck {
                target: g.total().label().to_string(),
                target_order: g.total().order(),
                morphisms: morphisms_over_base(&extension, g)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(UCEResult {
        kernel_structure: a.structure().clone(),
        h2_structure: hy.structure().clone(),
        certified: hy.certified(),
        extension,
        total_perfect,
        split,
        initiality,
    })
}

/// Orders of both sides of `H²(Y, A) → Hom(H₂Y, A)` and whether it is a
/// bijection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingVerdict {
    pub coeff: String,
    pub perfect: bool,
    pub h2_order: u128,
    pub hom_order: u128,
    pub bijective: bool,
    pub certified: bool,
}

impl PairingVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "coeff": self.coeff,
            "perfect": self.perfect,
            "h2_order": self.h2_order.to_string(),
            "hom_order": self.hom_order.to_string(),
            "bijective": self.bijective,
            "certified": self.certified,
        })
    }
}

pub fn perfect_case_isomorphism(
    y: &Arc<FiniteGroup>,
    a: &CoefficientGroup,
    caps: HomologyCaps,
) -> Result<PairingVerdict> {
    let hy = caps.h2(y)?;
    let h = h2_cohomology(y, a)?;
    let (hom, pairing) = pairing_morphism(&h, &hy)?;
    Ok(PairingVerdict {
        coeff: a.label(),
        perfect: is_perfect(y),
        h2_order: h.structure().order(),
        hom_order: hom.structure().order(),
        bijective: pairing.is_bijective(),
        certified: hy.certified(),
    })
}

/// For a non-perfect `Y`, the first coefficient group among `candidates`
/// where the pairing fails to be bijective.
pub fn projectivity_witness(
    y: &Arc<FiniteGroup>,
    candidates: &[CoefficientGroup],
    caps: HomologyCaps,
) -> Result<Option<PairingVerdict>> {
    for a in candidates {
        let v = perfect_case_isomorphism(y, a, caps)?;
        if !v.bijective {
            return Ok(Some(v));
        }
    }
    Ok(None)
}
