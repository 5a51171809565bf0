//! The group DSL: `C<n>`, `D<n>`, `Q8`, `S<n>`, `A<n>` (n ≤ 6), products
//! joined by `x`, and `perm:` followed by comma-separated permutations in
//! 0-based cycle notation.

use super::builders::{self, permutation_group, Permutation, DEFAULT_CLOSURE_CAP};
use super::FiniteGroup;
use crate::error::{Error, Result};

pub fn builtin(spec: &str) -> Result<FiniteGroup> {
    builtin_with_cap(spec, DEFAULT_CLOSURE_CAP)
}

pub fn builtin_with_cap(spec: &str, cap: usize) -> Result<FiniteGroup> {
    let spec_trim = spec.trim();
    if let Some(rest) = spec_trim.strip_prefix("perm:") {
        let gens = rest.split(',').map(|p| parse_permutation(p.trim())).collect::<Result<Vec<_>>>()?;
        return permutation_group(&gens, cap, spec_trim);
    }
    if spec_trim.is_empty() {
        return Err(parse_error(spec, "empty group specification"));
    }
    let mut acc: Option<FiniteGroup> = None;
    for factor in spec_trim.split('x') {
        let g = named(factor, spec)?;
        acc = Some(match acc {
            None => g,
            Some(a) => builders::direct_product(&a, &g),
        });
    }
    Ok(acc.expect("at least one factor").with_label(spec_trim))
}

fn parse_error(input: &str, reason: &str) -> Error {
    Error::Parse { input: input.to_string(), reason: reason.to_string() }
}

fn named(factor: &str, whole: &str) -> Result<FiniteGroup> {
    if factor.is_empty() {
        return Err(parse_error(whole, "empty factor in product"));
    }
    if factor == "Q8" {
        return Ok(builders::quaternion());
    }
    let mut chars = factor.chars();
    let head = chars.next().expect("non-empty");
    let digits = chars.as_str();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(match head {
            'C' | 'D' | 'S' | 'A' => parse_error(whole, &format!("expected a number after {head:?} in {factor:?}")),
            _ => Error::UnsupportedName(factor.to_string()),
        });
    }
    let n: usize = digits.parse().map_err(|_| parse_error(whole, "number out of range"))?;
    match head {
        'C' if n >= 1 => Ok(builders::cyclic(n)),
        'D' if n >= 1 => Ok(builders::dihedral(n)),
        'S' if (1..=6).contains(&n) => builders::symmetric(n),
        'A' if (1..=6).contains(&n) => builders::alternating(n),
        _ => Err(Error::UnsupportedName(factor.to_string())),
    }
}

/// Parses `(0 1 2)(3 4)`; `()` or the empty string is the identity.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let inner_end = rest
            .strip_prefix('(')
            .and_then(|r| r.find(')'))
            .ok_or_else(|| parse_error(text, "expected a parenthesized cycle"))?;
        let inner = &rest[1..inner_end + 1];
        let cycle = inner
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| parse_error(text, &format!("bad point {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let mut sorted = cycle.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != cycle.len() {
            return Err(parse_error(text, "repeated point in a cycle"));
        }
        cycles.push(cycle);
        rest = rest[inner_end + 2..].trim_start();
    }
    let mut used: Vec<usize> = cycles.iter().flatten().copied().collect();
    used.sort_unstable();
    if used.windows(2).any(|w| w[0] == w[1]) {
        return Err(parse_error(text, "cycles are not disjoint"));
    }
    let degree = used.last().map_or(0, |&m| m + 1);
    Ok(Permutation::from_cycles(degree, &cycles))
}
