use std::collections::HashSet;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// Largest permutation-group closure the builders will materialize.
pub const DEFAULT_CLOSURE_CAP: usize = 5000;

pub fn trivial() -> FiniteGroup {
    FiniteGroup::trivial_labeled("1")
}

/// `Z/n` with element `k` standing for `k`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group of order 0");
    let mut t = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            t[a * n + b] = ((a + b) % n) as u32;
        }
    }
    FiniteGroup::from_flat_table(t, n, &format!("C{n}"))
}

/// Metacyclic group `⟨a, b | aᵐ = 1, bⁿ = aˢ, b a b⁻¹ = aʳ⟩` with element
/// `aⁱbʲ` stored at index `j·m + i`. Requires `rⁿ ≡ 1` and `r·s ≡ s (mod m)`.
pub fn metacyclic(m: usize, n: usize, r: usize, s: usize) -> FiniteGroup {
    let (mi, ri, si) = (m as i64, r as i64, s as i64);
    assert!(m >= 1 && n >= 1);
    let mut rpow = vec![1i64; n + 1];
    for j in 1..=n {
        rpow[j] = (rpow[j - 1] * ri).rem_euclid(mi);
    }
    assert_eq!(rpow[n], 1 % mi, "r^n must be 1 mod m");
    assert_eq!((ri * si).rem_euclid(mi), si.rem_euclid(mi), "a^s must be fixed by conjugation");
    let order = m * n;
    let mut t = vec![0u32; order * order];
    for j in 0..n {
        for i in 0..m {
            for l in 0..n {
                for k in 0..m {
                    // aⁱbʲ · aᵏbˡ = a^(i + k rʲ) b^(j+l)
                    let mut ai = i as i64 + k as i64 * rpow[j];
                    let mut bj = j + l;
                    if bj >= n {
                        bj -= n;
                        ai += si;
                    }
                    let ai = ai.rem_euclid(mi) as usize;
                    t[(j * m + i) * order + l * m + k] = (bj * m + ai) as u32;
                }
            }
        }
    }
    FiniteGroup::from_flat_table(t, order, &format!("M({m},{n},{r},{s})"))
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> FiniteGroup {
    let r = if n <= 2 { 1 } else { n - 1 };
    metacyclic(n, 2, r, 0).with_label(format!("D{n}"))
}

pub fn quaternion() -> FiniteGroup {
    metacyclic(4, 2, 3, 2).with_label("Q8")
}

/// `G × H` with `(g, h)` at index `g·|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (ng, nh) = (g.order(), h.order());
    let n = ng * nh;
    let mut t = vec![0u32; n * n];
    for a in 0..ng {
        for b in 0..nh {
            let x = a * nh + b;
            for c in 0..ng {
                for d in 0..nh {
                    t[x * n + c * nh + d] = (g.mul(a, c) * nh + h.mul(b, d)) as u32;
                }
            }
        }
    }
    FiniteGroup::from_flat_table(t, n, &format!("{}x{}", g.label(), h.label()))
}

/// `N ⋊ H` where `action[h]` is the automorphism of `N` by which `h` acts
/// (as a permutation of `N`'s elements). Element `(n, h)` sits at `h·|N| + n`
/// and multiplies as `(n, h)(n', h') = (n · h(n'), h h')`.
pub fn semidirect(normal: &FiniteGroup, top: &FiniteGroup, action: &[Vec<usize>]) -> Result<FiniteGroup> {
    let (nn, nh) = (normal.order(), top.order());
    if action.len() != nh || action.iter().any(|a| a.len() != nn) {
        return Err(Error::Schema("action must list one permutation of N per element of H".into()));
    }
    for h in 0..nh {
        for a in 0..nn {
            for b in 0..nn {
                if action[h][normal.mul(a, b)] != normal.mul(action[h][a], action[h][b]) {
                    return Err(Error::NotHomomorphism { a, b });
                }
            }
        }
        for k in 0..nh {
            for a in 0..nn {
                if action[top.mul(h, k)][a] != action[h][action[k][a]] {
                    return Err(Error::NotHomomorphism { a: h, b: k });
                }
            }
        }
    }
    let n = nn * nh;
    let mut t = vec![0u32; n * n];
    for h in 0..nh {
        for a in 0..nn {
            for k in 0..nh {
                for b in 0..nn {
                    let c = normal.mul(a, action[h][b]);
                    t[(h * nn + a) * n + k * nn + b] = (top.mul(h, k) * nn + c) as u32;
                }
            }
        }
    }
    Ok(FiniteGroup::from_flat_table(t, n, &format!("{}:{}", normal.label(), top.label())))
}

/// Permutation of `{0, …, degree-1}` as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation((0..degree).collect())
    }

    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Permutation {
        let mut p: Vec<usize> = (0..degree).collect();
        for c in cycles {
            for i in 0..c.len() {
                p[c[i]] = c[(i + 1) % c.len()];
            }
        }
        Permutation(p)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i]).collect())
    }

    pub fn is_even(&self) -> bool {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j];
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }
}

/// Closure of permutation generators. Elements are indexed in lexicographic
/// order of their image vectors, which puts the identity at 0.
pub fn permutation_group(gens: &[Permutation], cap: usize, label: &str) -> Result<FiniteGroup> {
    let degree = gens.iter().map(Permutation::degree).max().unwrap_or(0);
    let pad = |p: &Permutation| {
        let mut v = p.0.clone();
        v.extend(v.len()..degree);
        Permutation(v)
    };
    let gens: Vec<Permutation> = gens.iter().map(pad).collect();
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in &gens {
            let q = p.then(g);
            if seen.insert(q.clone()) {
                if seen.len() > cap {
                    return Err(Error::ClosureTooLarge { cap });
                }
                frontier.push(q);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort();
    Ok(FiniteGroup::from_elements(elements, label, |a, b| a.then(b)))
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    let label = format!("S{n}");
    if n <= 1 {
        return Ok(FiniteGroup::trivial_labeled(&label));
    }
    let cycle = Permutation::from_cycles(n, &[(0..n).collect()]);
    let swap = Permutation::from_cycles(n, &[vec![0, 1]]);
    permutation_group(&[cycle, swap], DEFAULT_CLOSURE_CAP, &label)
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    let label = format!("A{n}");
    if n <= 2 {
        return Ok(FiniteGroup::trivial_labeled(&label));
    }
    let gens: Vec<Permutation> = (2..n).map(|i| Permutation::from_cycles(n, &[vec![0, 1, i]])).collect();
    permutation_group(&gens, DEFAULT_CLOSURE_CAP, &label)
}
