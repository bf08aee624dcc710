//! Capability of finite abelian groups.
//!
//! `G = C_{n_1} × … × C_{n_k}` is capable iff `k ≥ 2` and `n_{k-1} = n_k`.
//! Equivalently, `G` admits a family of subgroups with trivial intersection
//! whose join is `G` and whose quotients share an exponent (condition c),
//! or, stronger, a family with trivial intersection, covering union,
//! pairwise isomorphic members and pairwise isomorphic quotients
//! (condition d).
//!
//! This module provides the criterion itself, the explicit family that
//! realizes (d) for capable groups, the `A_p` subgroup that blocks (c) for
//! non-capable ones, a family verifier, and exhaustive existence oracles.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::abelian::{
    enumerate_subgroups, factorize, is_prime, AbelianGroup, GroupError, Subgroup,
};
use crate::intlinalg::{ext_gcd, gcd};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CapabilityError {
    #[error("{group} is not capable: {reason}")]
    NotCapable { group: String, reason: String },
    #[error("({0},{1}) does not have order {2} in C_{2} x C_{2}")]
    NotInXSet(i64, i64, i64),
    #[error("C_n x C_n needs n > 1, got {0}")]
    InvalidModulus(i64),
    #[error("a family must contain at least one subgroup")]
    EmptyFamily,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub type Result<T> = std::result::Result<T, CapabilityError>;

/// `k ≥ 2` and the top two invariant factors agree.
pub fn is_capable(group: &AbelianGroup) -> bool {
    match group.factors() {
        [.., a, b] => a == b,
        _ => false,
    }
}

/// Human-readable reason a group fails the criterion, or `None` if capable.
pub fn incapability_reason(group: &AbelianGroup) -> Option<String> {
    match group.factors() {
        [] => Some("trivial".to_owned()),
        [_] => Some("cyclic".to_owned()),
        [.., a, b] if a != b => Some(format!("top invariant factors differ: {a} != {b}")),
        _ => None,
    }
}

/// Pairs `(i, j)` in `[0, n)²` of order exactly `n` in `C_n × C_n`, that is
/// with `gcd(i, j, n) = 1`. Lexicographic order.
pub fn x_set(n: i64) -> Vec<(i64, i64)> {
    assert!(n > 1, "x_set needs n > 1");
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| gcd(gcd(i, j), n) == 1)
        .collect()
}

/// A partner `y` for `x = (i, j)` with `C_n × C_n = ⟨x⟩ ⊕ ⟨y⟩`.
///
/// With `i·i' + j·j' = d = gcd(i, j)`, take `y = (j', −i')`. Then
/// `i'·x + j·y = (d, 0)` and `j'·x − i·y = (0, d)`, and `d` is a unit mod
/// `n`, so `x` and `y` generate; both have order at most `n`, so the sum is
/// direct.
pub fn complement(x: (i64, i64), n: i64) -> Result<(i64, i64)> {
    if n <= 1 {
        return Err(CapabilityError::InvalidModulus(n));
    }
    let (i, j) = (x.0.rem_euclid(n), x.1.rem_euclid(n));
    if gcd(gcd(i, j), n) != 1 {
        return Err(CapabilityError::NotInXSet(x.0, x.1, n));
    }
    let (_, i_coef, j_coef) = ext_gcd(i, j);
    Ok((j_coef.rem_euclid(n), (-i_coef).rem_euclid(n)))
}

/// A cyclic subgroup `⟨x⟩` of order `n` in `C_n × C_n`, with its
/// lexicographically least generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCoverMember {
    pub generator: (i64, i64),
    pub subgroup: Subgroup,
}

/// The distinct subgroups `⟨x⟩` for `x` of order `n` in `C_n × C_n`. Their
/// union is the whole group.
pub fn cyclic_cover(n: i64) -> Result<Vec<CyclicCoverMember>> {
    if n <= 1 {
        return Err(CapabilityError::InvalidModulus(n));
    }
    let group = AbelianGroup::new(vec![n, n])?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    // x_set is lexicographic, so the first generator met is the least.
    for (i, j) in x_set(n) {
        let subgroup = group.subgroup_from_vectors(&[[i, j]])?;
        if seen.insert(subgroup.clone()) {
            out.push(CyclicCoverMember {
                generator: (i, j),
                subgroup,
            });
        }
    }
    Ok(out)
}

/// Family realizing condition (d) for a capable group, deduplicated and
/// sorted by canonical basis.
///
/// With `a_1, …, a_k` the canonical generators it contains
/// - `H_i = ⟨a_1, …, a_{i-1}, a_i + (n_k/n_i)·a_k, a_{i+1}, …, a_{k-1}⟩` for `i < k`,
/// - `H_k = ⟨a_1, …, a_{k-1}⟩`,
/// - `H_x = ⟨a_1, …, a_{k-2}, x⟩` for one `x` per cyclic subgroup of order
///   `n = n_k` inside `⟨a_{k-1}⟩ × ⟨a_k⟩ ≅ C_n × C_n`.
///
/// Every member is isomorphic to `C_{n_1} × … × C_{n_{k-1}}` with quotient
/// `C_{n_k}`.
pub fn witness_family(group: &AbelianGroup) -> Result<Vec<Subgroup>> {
    if let Some(reason) = incapability_reason(group) {
        return Err(CapabilityError::NotCapable {
            group: group.to_string(),
            reason,
        });
    }
    let factors = group.factors();
    let k = factors.len();
    let top = factors[k - 1];
    let unit = |i: usize| {
        let mut v = vec![0i64; k];
        v[i] = 1;
        v
    };

    let mut family = BTreeSet::new();
    for (i, &n_i) in factors.iter().enumerate().take(k - 1) {
        let gens: Vec<Vec<i64>> = (0..k - 1)
            .map(|j| {
                let mut v = unit(j);
                if j == i {
                    v[k - 1] = top / n_i;
                }
                v
            })
            .collect();
        family.insert(group.subgroup_from_vectors(&gens)?);
    }
    let base: Vec<Vec<i64>> = (0..k - 2).map(unit).collect();
    let mut h_k = base.clone();
    h_k.push(unit(k - 2));
    family.insert(group.subgroup_from_vectors(&h_k)?);

    for member in cyclic_cover(top)? {
        let mut gens = base.clone();
        let mut x = vec![0i64; k];
        x[k - 2] = member.generator.0;
        x[k - 1] = member.generator.1;
        gens.push(x);
        family.insert(group.subgroup_from_vectors(&gens)?);
    }
    Ok(family.into_iter().collect())
}

/// Outcome of checking a family of subgroups against conditions (c) and (d).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub intersection_trivial: bool,
    /// The join of the members is `G`.
    pub generates: bool,
    /// The set union of the members is `G`.
    pub covers: bool,
    pub quotient_invariant_lists: Vec<Vec<i64>>,
    pub quotient_exponents: Vec<i64>,
    pub subgroup_invariant_lists: Vec<Vec<i64>>,
    pub verdict_c: bool,
    pub verdict_d: bool,
}

fn all_equal<T: PartialEq>(items: &[T]) -> bool {
    items.windows(2).all(|w| w[0] == w[1])
}

pub fn verify_family(group: &AbelianGroup, family: &[Subgroup]) -> Result<FamilyReport> {
    let (first, rest) = family.split_first().ok_or(CapabilityError::EmptyFamily)?;
    if let Some(stray) = family.iter().find(|h| h.group() != group) {
        return Err(GroupError::ParentMismatch {
            left: group.to_string(),
            right: stray.group().to_string(),
        }
        .into());
    }

    let mut meet = first.clone();
    let mut join = first.clone();
    for h in rest {
        if !meet.is_trivial() {
            meet = meet.intersect(h)?;
        }
        if !join.is_whole() {
            join = join.join(h)?;
        }
    }
    let intersection_trivial = meet.is_trivial();
    let generates = join.is_whole();
    let covers = generates && covers_group(group, family);

    let quotient_invariant_lists: Vec<Vec<i64>> =
        family.iter().map(Subgroup::quotient_invariants).collect();
    let quotient_exponents: Vec<i64> = quotient_invariant_lists
        .iter()
        .map(|q| q.last().copied().unwrap_or(1))
        .collect();
    let subgroup_invariant_lists: Vec<Vec<i64>> =
        family.iter().map(Subgroup::subgroup_invariants).collect();

    let verdict_c = intersection_trivial && generates && all_equal(&quotient_exponents);
    let verdict_d = intersection_trivial
        && covers
        && all_equal(&quotient_invariant_lists)
        && all_equal(&subgroup_invariant_lists);
    Ok(FamilyReport {
        intersection_trivial,
        generates,
        covers,
        quotient_invariant_lists,
        quotient_exponents,
        subgroup_invariant_lists,
        verdict_c,
        verdict_d,
    })
}

fn covers_group(group: &AbelianGroup, family: &[Subgroup]) -> bool {
    let mut hit = vec![false; group.order() as usize];
    let mut remaining = hit.len();
    for h in family {
        for x in h.elements() {
            let idx = group.index_of(x.coords());
            if !hit[idx] {
                hit[idx] = true;
                remaining -= 1;
            }
        }
        if remaining == 0 {
            return true;
        }
    }
    remaining == 0
}

/// Searches for a family satisfying (c). Within one quotient exponent class
/// the largest family is the best candidate: adding members only shrinks
/// the intersection and grows the join. Returns that family if it passes.
///
/// The trivial group yields `None`: the criterion is stated for nontrivial
/// groups.
pub fn find_family_c(group: &AbelianGroup, bound: i64) -> Result<Option<Vec<Subgroup>>> {
    if group.is_trivial() {
        return Ok(None);
    }
    let mut classes: BTreeMap<i64, Vec<Subgroup>> = BTreeMap::new();
    for h in enumerate_subgroups(group, bound)? {
        classes.entry(h.quotient_exponent()).or_default().push(h);
    }
    for family in classes.into_values() {
        let report = verify_family(group, &family)?;
        if report.intersection_trivial && report.generates {
            return Ok(Some(family));
        }
    }
    Ok(None)
}

/// Searches for a family satisfying (d), one class per pair
/// (member type, quotient type). See [`find_family_c`].
pub fn find_family_d(group: &AbelianGroup, bound: i64) -> Result<Option<Vec<Subgroup>>> {
    if group.is_trivial() {
        return Ok(None);
    }
    let mut classes: BTreeMap<(Vec<i64>, Vec<i64>), Vec<Subgroup>> = BTreeMap::new();
    for h in enumerate_subgroups(group, bound)? {
        classes
            .entry((h.subgroup_invariants(), h.quotient_invariants()))
            .or_default()
            .push(h);
    }
    for family in classes.into_values() {
        let report = verify_family(group, &family)?;
        if report.intersection_trivial && report.covers {
            return Ok(Some(family));
        }
    }
    Ok(None)
}

pub fn exists_family_c(group: &AbelianGroup, bound: i64) -> Result<bool> {
    Ok(find_family_c(group, bound)?.is_some())
}

pub fn exists_family_d(group: &AbelianGroup, bound: i64) -> Result<bool> {
    Ok(find_family_d(group, bound)?.is_some())
}

/// `A_p`: the subgroup of order `p^t` in the last cyclic factor, where
/// `p^t` is the largest power of `p` dividing `m = n_k / n_{k-1}`.
///
/// For every subgroup `H`, `exp(G/H)` divides `n_k / p^t` exactly when
/// `H ⊇ A_p`. Since some member of any generating family must contain an
/// element of full `p`-power order, it contains `A_p`; equal quotient
/// exponents then force every member to contain it.
pub fn critical_subgroup(group: &AbelianGroup, p: i64) -> Result<Subgroup> {
    let factors = group.factors();
    let [.., below, top] = factors else {
        return Err(CapabilityError::Precondition(format!("{group} is cyclic")));
    };
    let m = top / below;
    if m == 1 {
        return Err(CapabilityError::Precondition(format!(
            "{group} has equal top factors"
        )));
    }
    if !is_prime(p) || m % p != 0 {
        return Err(CapabilityError::Precondition(format!(
            "{p} is not a prime divisor of {m}"
        )));
    }
    let p_t = p_part(m, p);
    let mut gen = vec![0i64; factors.len()];
    gen[factors.len() - 1] = top / p_t;
    Ok(group.subgroup_from_vectors(&[gen])?)
}

/// `p^t`, the largest power of `p` dividing `m`.
pub fn p_part(mut m: i64, p: i64) -> i64 {
    let mut out = 1;
    while m % p == 0 {
        m /= p;
        out *= p;
    }
    out
}

/// Primes dividing `n_k / n_{k-1}`; empty for cyclic or capable groups.
pub fn obstruction_primes(group: &AbelianGroup) -> Vec<i64> {
    match group.factors() {
        [.., below, top] => factorize(top / below).into_iter().map(|(p, _)| p).collect(),
        _ => Vec::new(),
    }
}
