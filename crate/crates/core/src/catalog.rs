//! Every group of order at most 16, one per isomorphism type.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{
    builtin, center, cyclic, dihedral, direct_product, metacyclic, quaternion, quotient, semidirect, FiniteGroup,
    Subgroup,
};

/// Largest order covered.
pub const CATALOG_MAX_ORDER: usize = 16;

/// Number of isomorphism types for orders `1..=16`.
pub const TYPES_PER_ORDER: [usize; 16] = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14];

fn dsl(spec: &str) -> FiniteGroup {
    builtin(spec).expect("catalog spec")
}

fn order_16_extras() -> Vec<FiniteGroup> {
    // (C4 x C2) : C2 with c a c = ab, index (i, j) = 2i + j
    let c4c2 = direct_product(&cyclic(4), &cyclic(2));
    let twist: Vec<usize> = (0..8).map(|x| (x / 2) * 2 + (x % 2 + x / 2) % 2).collect();
    let g163 = semidirect(&c4c2, &cyclic(2), &[(0..8).collect(), twist]).expect("automorphism of order 2");

    // C4 o D4: identify the involution of C4 with the center of D4
    let prod = Arc::new(direct_product(&cyclic(4), &dihedral(4)));
    let z = center(&dihedral(4)).elements()[1];
    let n = Subgroup::new(&prod, [0, 2 * 8 + z]).expect("central subgroup");
    let (pauli, _) = quotient(&prod, &n).expect("central subgroup is normal");

    vec![
        dihedral(8),
        metacyclic(8, 2, 7, 4).with_label("Q16"),
        metacyclic(8, 2, 3, 0).with_label("SD16"),
        metacyclic(8, 2, 5, 0).with_label("M16"),
        metacyclic(4, 4, 3, 0).with_label("C4:C4"),
        g163.with_label("(C4xC2):C2"),
        pauli.as_ref().clone().with_label("C4oD4"),
    ]
}

/// The groups of order `n`, abelian ones first.
pub fn groups_of_order(n: usize) -> Result<Vec<FiniteGroup>> {
    let specs: &[&str] = match n {
        1 => &["C1"],
        2 | 3 | 5 | 7 | 11 | 13 | 15 => &[],
        4 => &["C4", "C2xC2"],
        6 => &["C6", "S3"],
        8 => &["C8", "C4xC2", "C2xC2xC2", "D4", "Q8"],
        9 => &["C9", "C3xC3"],
        10 => &["C10", "D5"],
        12 => &["C12", "C6xC2", "D6", "A4"],
        14 => &["C14", "D7"],
        16 => &["C16", "C8xC2", "C4xC4", "C4xC2xC2", "C2xC2xC2xC2", "D4xC2", "Q8xC2"],
        _ => return Err(Error::CatalogIncomplete(n)),
    };
    let mut out: Vec<FiniteGroup> =
        if specs.is_empty() { vec![dsl(&format!("C{n}"))] } else { specs.iter().map(|s| dsl(s)).collect() };
    match n {
        8 => {
            let q = out.pop().expect("Q8 listed");
            out.push(quaternion().with_label(q.label()));
        }
        12 => out.push(metacyclic(3, 4, 2, 0).with_label("Dic3")),
        16 => out.extend(order_16_extras()),
        _ => {}
    }
    Ok(out)
}

/// All catalog groups in order of size.
pub fn catalog() -> Vec<FiniteGroup> {
    (1..=CATALOG_MAX_ORDER).flat_map(|n| groups_of_order(n).expect("covered order")).collect()
}
