use std::collections::HashSet;

use serde_json::{json, Value};

use crate::abelian::{AbMorphism, FinAb};
use crate::error::{Error, Result};

/// Nodes up to this order are compared element by element; larger ones by
/// composite-is-zero plus `|im| = |ker|`.
pub const ELEMENTWISE_LIMIT: u128 = 1 << 16;

/// Why a node fails to be exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `b(x) = 0` but `x` is not hit by the incoming arrow.
    KernelNotInImage { element: Vec<i64> },
    /// `a(source)` is not killed by the outgoing arrow.
    ImageNotInKernel { source: Vec<i64>, element: Vec<i64> },
}

impl Witness {
    pub fn to_json(&self) -> Value {
        match self {
            Witness::KernelNotInImage { element } => json!({ "kind": "kernel_not_in_image", "element": element }),
            Witness::ImageNotInKernel { source, element } => {
                json!({ "kind": "image_not_in_kernel", "source": source, "element": element })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeVerdict {
    pub node: usize,
    pub image_order: u128,
    pub kernel_order: u128,
    pub exact: bool,
    pub elementwise: bool,
    pub witness: Option<Witness>,
}

impl NodeVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "node": self.node,
            "image_order": self.image_order.to_string(),
            "kernel_order": self.kernel_order.to_string(),
            "exact": self.exact,
            "elementwise": self.elementwise,
            "witness": self.witness.as_ref().map(Witness::to_json),
        })
    }
}

/// A chain of abelian groups with a verdict at every internal node.
#[derive(Debug, Clone)]
pub struct FiveTermReport {
    pub name: String,
    pub labels: Vec<String>,
    pub nodes: Vec<FinAb>,
    pub arrows: Vec<AbMorphism>,
    pub verdicts: Vec<NodeVerdict>,
    /// The first arrow is injective.
    pub monic_start: bool,
    /// The last arrow is surjective.
    pub epic_end: bool,
    pub certified: bool,
}

impl FiveTermReport {
    pub fn is_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.exact)
    }

    pub fn node_orders(&self) -> Vec<u128> {
        self.nodes.iter().map(FinAb::order).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "labels": self.labels,
            "nodes": self.nodes.iter().map(|n| n.factors().to_vec()).collect::<Vec<_>>(),
            "node_orders": self.node_orders().iter().map(u128::to_string).collect::<Vec<_>>(),
            "arrows": self.arrows.iter().map(|a| a.matrix().to_vec()).collect::<Vec<_>>(),
            "verdicts": self.verdicts.iter().map(NodeVerdict::to_json).collect::<Vec<_>>(),
            "monic_start": self.monic_start,
            "epic_end": self.epic_end,
            "certified": self.certified,
            "pass": self.is_pass(),
        })
    }
}

/// Certifies `im = ker` at every internal node of
/// `nodes[0] → nodes[1] → … → nodes[n]`.
pub fn check_exactness(nodes: Vec<FinAb>, arrows: Vec<AbMorphism>) -> Result<FiveTermReport> {
    check_exactness_named("chain", Vec::new(), nodes, arrows)
}

pub(crate) fn check_exactness_named(
    name: &str,
    labels: Vec<String>,
    nodes: Vec<FinAb>,
    arrows: Vec<AbMorphism>,
) -> Result<FiveTermReport> {
    if nodes.len() != arrows.len() + 1 || arrows.is_empty() {
        return Err(Error::NotComposable(arrows.len()));
    }
    for (i, a) in arrows.iter().enumerate() {
        if a.source() != &nodes[i] || a.target() != &nodes[i + 1] {
            return Err(Error::NotComposable(i));
        }
    }
    let verdicts = (1..nodes.len() - 1).map(|j| node_verdict(j, &arrows[j - 1], &arrows[j])).collect();
    let monic_start = arrows[0].is_injective();
    let epic_end = arrows[arrows.len() - 1].is_surjective();
    let labels = if labels.len() == nodes.len() { labels } else { (0..nodes.len()).map(|i| format!("N{i}")).collect() };
    Ok(FiveTermReport { name: name.into(), labels, nodes, arrows, verdicts, monic_start, epic_end, certified: true })
}

fn node_verdict(node: usize, a: &AbMorphism, b: &AbMorphism) -> NodeVerdict {
    let image_order = a.image_order();
    let kernel_order = b.kernel_order();
    let mid = a.target();
    if mid.order() <= ELEMENTWISE_LIMIT && a.source().order() <= ELEMENTWISE_LIMIT {
        let mut image = HashSet::new();
        let mut witness = None;
        for s in a.source().elements() {
            let t = a.apply(&s);
            if witness.is_none() && b.apply(&t).iter().any(|&v| v != 0) {
                witness = Some(Witness::ImageNotInKernel { source: s.clone(), element: t.clone() });
            }
            image.insert(t);
        }
        if witness.is_none() {
            witness = mid
                .elements()
                .find(|x| b.apply(x).iter().all(|&v| v == 0) && !image.contains(x))
                .map(|element| Witness::KernelNotInImage { element });
        }
        return NodeVerdict { node, image_order, kernel_order, exact: witness.is_none(), elementwise: true, witness };
    }
    let mut witness = None;
    for j in 0..a.source().rank() {
        let t = a.column(j);
        if b.apply(&t).iter().any(|&v| v != 0) {
            let mut s = a.source().zero_element();
            s[j] = 1;
            witness = Some(Witness::ImageNotInKernel { source: s, element: t });
            break;
        }
    }
    let exact = witness.is_none() && image_order == kernel_order;
    NodeVerdict { node, image_order, kernel_order, exact, elementwise: false, witness }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(f: &[u64]) -> FinAb {
        FinAb::from_orders(f)
    }

    #[test]
    fn identity_is_exact() {
        let a = ab(&[2, 3]);
        let z = FinAb::zero();
        let r = check_exactness(
            vec![z.clone(), a.clone(), a.clone(), z.clone()],
            vec![AbMorphism::zero(&z, &a), AbMorphism::identity(&a), AbMorphism::zero(&a, &z)],
        )
        .unwrap();
        assert!(r.is_pass());
        assert_eq!(r.verdicts.len(), 2);
        assert!(!r.monic_start || r.nodes[0].is_zero());
    }

    #[test]
    fn zero_map_fails_at_both_nodes() {
        let c2 = ab(&[2]);
        let z = FinAb::zero();
        let r = check_exactness(
            vec![z.clone(), c2.clone(), c2.clone(), z.clone()],
            vec![AbMorphism::zero(&z, &c2), AbMorphism::zero(&c2, &c2), AbMorphism::zero(&c2, &z)],
        )
        .unwrap();
        assert!(!r.is_pass());
        assert_eq!(r.verdicts[0].witness, Some(Witness::KernelNotInImage { element: vec![1] }));
        assert_eq!(r.verdicts[1].witness, Some(Witness::KernelNotInImage { element: vec![1] }));
    }

    #[test]
    fn composite_nonzero_is_reported() {
        let c2 = ab(&[2]);
        let id = AbMorphism::identity(&c2);
        let r = check_exactness(vec![c2.clone(), c2.clone(), c2.clone()], vec![id.clone(), id]).unwrap();
        assert_eq!(r.verdicts[0].witness, Some(Witness::ImageNotInKernel { source: vec![1], element: vec![1] }));
    }

    #[test]
    fn mismatched_chain_is_rejected() {
        let (c2, c3) = (ab(&[2]), ab(&[3]));
        let err = check_exactness(
            vec![c2.clone(), c2.clone(), c3.clone()],
            vec![AbMorphism::identity(&c2), AbMorphism::identity(&c3)],
        );
        assert_eq!(err.unwrap_err(), Error::NotComposable(1));
        assert_eq!(check_exactness(vec![c2], vec![]).unwrap_err(), Error::NotComposable(0));
    }
}
