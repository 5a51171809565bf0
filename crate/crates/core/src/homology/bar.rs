use std::collections::BTreeMap;
use std::sync::Arc;

use crate::abelian::{snf_i64, FinAb, IntMatrix, Track};
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;

/// Degrees 1-3 of the normalized bar complex with trivial integer
/// coefficients. Rows and columns are indexed lexicographically by tuples of
/// nonidentity elements.
#[derive(Debug, Clone)]
pub struct BarSegment {
    group: Arc<FiniteGroup>,
    d2: IntMatrix,
    d3: IntMatrix,
}

/// Orders above this make `d3` unreasonably large.
const BAR_CAP: usize = 24;

impl BarSegment {
    pub fn new(g: &Arc<FiniteGroup>) -> Result<BarSegment> {
        let n = g.order();
        if n > BAR_CAP {
            return Err(Error::OrderCapExceeded { order: n, cap: BAR_CAP });
        }
        let m = n.saturating_sub(1);
        let mut d2 = IntMatrix::zeros(m, m * m);
        for x in 1..n {
            for y in 1..n {
                let col = (x - 1) * m + (y - 1);
                for (e, c) in d2_terms(g, x, y) {
                    let v = d2.get(e - 1, col) + c;
                    d2.set(e - 1, col, v);
                }
            }
        }
        let mut d3 = IntMatrix::zeros(m * m, m * m * m);
        for x in 1..n {
            for y in 1..n {
                for z in 1..n {
                    let col = ((x - 1) * m + (y - 1)) * m + (z - 1);
                    for (a, b, c) in d3_chain(g, x, y, z) {
                        let row = (a - 1) * m + (b - 1);
                        let v = d3.get(row, col) + c;
                        d3.set(row, col, v);
                    }
                }
            }
        }
        Ok(BarSegment { group: g.clone(), d2, d3 })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn d2(&self) -> &IntMatrix {
        &self.d2
    }

    pub fn d3(&self) -> &IntMatrix {
        &self.d3
    }

    /// `(x, y)` for a column of `d2`.
    pub fn pair(&self, col: usize) -> (usize, usize) {
        let m = self.group.order() - 1;
        (col / m + 1, col % m + 1)
    }

    pub fn composite_vanishes(&self) -> bool {
        self.d2.mul(&self.d3).nonzero_entries().next().is_none()
    }

    /// `ker d2 / im d3` by Smith normal form of both differentials.
    pub fn h2_structure(&self) -> Result<FinAb> {
        let m = self.group.order() - 1;
        if m == 0 {
            return Ok(FinAb::zero());
        }
        let d2 = self.d2.to_i64_dense().ok_or(Error::Overflow)?;
        let s = snf_i64(&d2, m, m * m, Track { left: false, left_inv: false, right: false, right_inv: true })?;
        let v_inv = s.v_inv.expect("tracked");
        let d3 = self.d3.to_i64_dense().ok_or(Error::Overflow)?;
        let kdim = m * m - s.rank;
        let t: Vec<Vec<i64>> = (s.rank..m * m)
            .map(|i| {
                let mut row = vec![0i64; m * m * m];
                for (k, &c) in v_inv[i].iter().enumerate() {
                    if c != 0 {
                        for (slot, &x) in row.iter_mut().zip(&d3[k]) {
                            *slot += c * x;
                        }
                    }
                }
                row
            })
            .collect();
        let st = snf_i64(&t, kdim, m * m * m, Track::NONE)?;
        let mut factors = Vec::new();
        for i in 0..kdim {
            match st.diag.get(i).copied().unwrap_or(0) {
                0 => return Err(Error::InfiniteCokernel),
                1 => {}
                d => factors.push(d as u64),
            }
        }
        FinAb::new(factors)
    }
}

fn d2_terms(g: &FiniteGroup, x: usize, y: usize) -> Vec<(usize, i64)> {
    let mut out: BTreeMap<usize, i64> = BTreeMap::new();
    for (e, c) in [(y, 1), (g.mul(x, y), -1), (x, 1)] {
        if e != 0 {
            *out.entry(e).or_default() += c;
        }
    }
    out.into_iter().filter(|&(_, c)| c != 0).collect()
}

/// `d3(x, y, z) = (y, z) − (xy, z) + (x, yz) − (x, y)`, degenerate terms dropped.
pub(crate) fn d3_chain(g: &FiniteGroup, x: usize, y: usize, z: usize) -> Vec<(usize, usize, i64)> {
    [(y, z, 1), (g.mul(x, y), z, -1), (x, g.mul(y, z), 1), (x, y, -1)]
        .into_iter()
        .filter(|&(a, b, _)| a != 0 && b != 0)
        .collect()
}

pub(crate) fn is_cycle(g: &FiniteGroup, chain: &[(usize, usize, i64)]) -> bool {
    let mut acc = vec![0i64; g.order()];
    for &(x, y, c) in chain {
        if x >= g.order() || y >= g.order() {
            return false;
        }
        if x == 0 || y == 0 {
            continue;
        }
        for (e, k) in d2_terms(g, x, y) {
            acc[e] += c * k;
        }
    }
    acc.iter().all(|&v| v == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::builtin;
    use crate::homology::h2;

    #[test]
    fn differentials_compose_to_zero() {
        for spec in ["C2", "C3", "C2xC2", "S3", "C4", "Q8"] {
            let g = Arc::new(builtin(spec).unwrap());
            assert!(BarSegment::new(&g).unwrap().composite_vanishes(), "{spec}");
        }
    }

    #[test]
    fn full_complex_agrees_with_presentation() {
        for spec in ["C2", "C3", "C2xC2", "C4", "S3", "Q8", "D4", "C2xC4"] {
            let g = Arc::new(builtin(spec).unwrap());
            let full = BarSegment::new(&g).unwrap().h2_structure().unwrap();
            assert_eq!(&full, h2(&g).unwrap().structure(), "{spec}");
        }
    }
}
