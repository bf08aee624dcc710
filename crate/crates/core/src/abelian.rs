//! Finite abelian groups in invariant factor form.
//!
//! A group `G = C_{n_1} × … × C_{n_k}` is stored as its factor list. An
//! element is a residue vector. A subgroup is stored as the Hermite basis of
//! the lattice `M` with `L ⊆ M ⊆ Z^k`, where `L` is spanned by the rows
//! `n_i·e_i`; the subgroup is `M/L`. Because the Hermite form is canonical,
//! two subgroups are equal iff their bases are equal entry-wise.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::intlinalg::{
    self, hnf_only, lcm, smith_diagonal, solve_hermite, IntMatrix, LinalgError,
};

/// Largest group order [`enumerate_subgroups`] accepts unless told otherwise.
pub const DEFAULT_ENUMERATION_BOUND: i64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cyclic order must be greater than 1, got {0}")]
    InvalidOrder(i64),
    #[error("factors {0:?} do not form a divisibility chain")]
    NotDivisibilityChain(Vec<i64>),
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("operands belong to different groups: {left} and {right}")]
    ParentMismatch { left: String, right: String },
    #[error("group order {order} exceeds the enumeration bound {bound}")]
    BoundExceeded { order: i64, bound: i64 },
    #[error("group order overflows i64")]
    OrderOverflow,
    #[error("lattice basis does not describe a subgroup: {0}")]
    InvalidBasis(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, GroupError>;

/// `C_{n_1} × … × C_{n_k}` with `1 < n_1 | n_2 | … | n_k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    factors: Arc<[i64]>,
    order: i64,
}

impl AbelianGroup {
    /// Takes factors already in invariant form; see [`AbelianGroup::from_orders`]
    /// for arbitrary cyclic orders.
    pub fn new(factors: Vec<i64>) -> Result<Self> {
        if let Some(&bad) = factors.iter().find(|&&n| n <= 1) {
            return Err(GroupError::InvalidOrder(bad));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(GroupError::NotDivisibilityChain(factors));
        }
        let order = factors
            .iter()
            .try_fold(1i64, |acc, &n| acc.checked_mul(n))
            .ok_or(GroupError::OrderOverflow)?;
        Ok(Self {
            factors: factors.into(),
            order,
        })
    }

    pub fn trivial() -> Self {
        Self {
            factors: Arc::from(Vec::new()),
            order: 1,
        }
    }

    /// Invariant factor form of `C_{m_1} × … × C_{m_r}`, read off the Smith
    /// form of `diag(m_1, …, m_r)` with unit entries dropped.
    pub fn from_orders(orders: &[i64]) -> Result<Self> {
        if let Some(&bad) = orders.iter().find(|&&n| n <= 1) {
            return Err(GroupError::InvalidOrder(bad));
        }
        let diag = smith_diagonal(&IntMatrix::diagonal(orders))?;
        Self::new(diag.into_iter().filter(|&d| d > 1).collect())
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn exponent(&self) -> i64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            coords: vec![0; self.rank()],
        }
    }

    /// Element with the given coordinates, reduced into `[0, n_i)`.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(GroupError::WrongLength {
                expected: self.rank(),
                got: coords.len(),
            });
        }
        Ok(GroupElement {
            group: self.clone(),
            coords: coords
                .iter()
                .zip(self.factors.iter())
                .map(|(&c, &n)| c.rem_euclid(n))
                .collect(),
        })
    }

    /// The canonical generator `a_i` (zero-based), the `i`-th unit vector.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        coords[i] = 1;
        GroupElement {
            group: self.clone(),
            coords,
        }
    }

    /// All elements in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<GroupElement> {
        self.whole().elements()
    }

    /// Position of `coords` in [`AbelianGroup::elements`].
    pub fn index_of(&self, coords: &[i64]) -> usize {
        coords
            .iter()
            .zip(self.factors.iter())
            .fold(0usize, |acc, (&c, &n)| acc * n as usize + c as usize)
    }

    /// Lattice `L` spanned by `n_i·e_i`.
    fn relation_lattice(&self) -> IntMatrix {
        IntMatrix::diagonal(&self.factors)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            group: self.clone(),
            basis: IntMatrix::identity(self.rank()),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            group: self.clone(),
            basis: self.relation_lattice(),
        }
    }

    /// Subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[GroupElement]) -> Result<Subgroup> {
        for g in gens {
            self.check_same(&g.group)?;
        }
        let rows: Vec<&[i64]> = gens.iter().map(|g| g.coords.as_slice()).collect();
        self.subgroup_from_vectors(&rows)
    }

    /// Subgroup generated by raw coordinate vectors (not necessarily reduced).
    pub fn subgroup_from_vectors<R: AsRef<[i64]>>(&self, vectors: &[R]) -> Result<Subgroup> {
        for v in vectors {
            let v = v.as_ref();
            if v.len() != self.rank() {
                return Err(GroupError::WrongLength {
                    expected: self.rank(),
                    got: v.len(),
                });
            }
        }
        let gens = IntMatrix::from_rows(self.rank(), vectors)?;
        let stacked = gens.vstack(&self.relation_lattice())?;
        Ok(Subgroup {
            group: self.clone(),
            basis: top_rows(&hnf_only(&stacked)?, self.rank()),
        })
    }

    /// Wraps a lattice basis, canonicalizing it and checking `L ⊆ M`.
    pub fn subgroup_from_basis(&self, basis: &IntMatrix) -> Result<Subgroup> {
        if basis.cols() != self.rank() {
            return Err(GroupError::WrongLength {
                expected: self.rank(),
                got: basis.cols(),
            });
        }
        let h = hnf_only(basis)?;
        let rank = h
            .row_iter()
            .take_while(|r| r.iter().any(|&x| x != 0))
            .count();
        if rank != self.rank() {
            return Err(GroupError::InvalidBasis(format!(
                "rank {rank}, expected {}",
                self.rank()
            )));
        }
        let h = top_rows(&h, self.rank());
        for (i, &n) in self.factors.iter().enumerate() {
            let mut v = vec![0; self.rank()];
            v[i] = n;
            if solve_hermite(&h, &v)?.is_none() {
                return Err(GroupError::InvalidBasis(format!(
                    "row space misses {n}·e_{}",
                    i + 1
                )));
            }
        }
        Ok(Subgroup {
            group: self.clone(),
            basis: h,
        })
    }

    fn check_same(&self, other: &AbelianGroup) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(GroupError::ParentMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

fn top_rows(m: &IntMatrix, k: usize) -> IntMatrix {
    IntMatrix::new(k, m.cols(), m.entries()[..k * m.cols()].to_vec())
        .expect("prefix of a matrix with at least k rows")
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_factors(&self.factors))
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup{}", format_factors(&self.factors))
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.factors.serialize(s)
    }
}

/// `(n_1,…,n_k)`; the empty list prints as `()`.
pub fn format_factors(factors: &[i64]) -> String {
    let inner: Vec<String> = factors.iter().map(i64::to_string).collect();
    format!("({})", inner.join(","))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: AbelianGroup,
    coords: Vec<i64>,
}

impl GroupElement {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.group.check_same(&other.group)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .zip(self.group.factors.iter())
            .map(|((&a, &b), &n)| (a + b) % n)
            .collect();
        Ok(GroupElement {
            group: self.group.clone(),
            coords,
        })
    }

    pub fn neg(&self) -> GroupElement {
        let coords = self
            .coords
            .iter()
            .zip(self.group.factors.iter())
            .map(|(&a, &n)| (n - a) % n)
            .collect();
        GroupElement {
            group: self.group.clone(),
            coords,
        }
    }

    /// `c·x`, for any integer `c`.
    pub fn smul(&self, c: i64) -> GroupElement {
        let coords = self
            .coords
            .iter()
            .zip(self.group.factors.iter())
            .map(|(&a, &n)| ((c.rem_euclid(n) as i128 * a as i128) % n as i128) as i64)
            .collect();
        GroupElement {
            group: self.group.clone(),
            coords,
        }
    }

    /// `lcm_i n_i / gcd(m_i, n_i)`.
    pub fn order(&self) -> i64 {
        self.coords
            .iter()
            .zip(self.group.factors.iter())
            .fold(1, |acc, (&m, &n)| {
                lcm(acc, n / intlinalg::gcd(m, n)).expect("element order divides the exponent")
            })
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_factors(&self.coords))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.group, self)
    }
}

/// A subgroup `M/L` of `G`, held as the Hermite basis of `M`.
///
/// Ordering compares bases entry-wise, so sorting a list of subgroups of
/// the same group is deterministic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    group: AbelianGroup,
    basis: IntMatrix,
}

impl Subgroup {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// Upper triangular `k×k` Hermite basis.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    fn diagonal(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.group.rank()).map(|i| self.basis[(i, i)])
    }

    /// Index `[Z^k : M]`, which equals `|G/H|`.
    pub fn index(&self) -> i64 {
        self.diagonal().product()
    }

    pub fn order(&self) -> i64 {
        self.group.order() / self.index()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.index() == 1
    }

    pub fn contains(&self, x: &GroupElement) -> Result<bool> {
        self.group.check_same(&x.group)?;
        Ok(self.contains_coords(&x.coords))
    }

    pub(crate) fn contains_coords(&self, coords: &[i64]) -> bool {
        solve_hermite(&self.basis, coords)
            .expect("reduced coordinates against a bounded basis")
            .is_some()
    }

    /// `self ⊆ other`.
    pub fn is_subgroup_of(&self, other: &Subgroup) -> Result<bool> {
        self.group.check_same(&other.group)?;
        Ok(self.basis.row_iter().all(|r| other.contains_coords(r)))
    }

    /// All member elements. Row `i` of the basis has diagonal `d_i | n_i`,
    /// and the sums `Σ c_i·b_i` with `0 ≤ c_i < n_i/d_i` hit each member
    /// exactly once.
    pub fn elements(&self) -> Vec<GroupElement> {
        let k = self.group.rank();
        let factors = self.group.factors();
        let radix: Vec<i64> = (0..k).map(|i| factors[i] / self.basis[(i, i)]).collect();
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut counter = vec![0i64; k];
        loop {
            let mut coords = vec![0i64; k];
            for (i, &c) in counter.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (j, x) in coords.iter_mut().enumerate().skip(i) {
                    *x = (*x + c * self.basis[(i, j)]) % factors[j];
                }
            }
            out.push(GroupElement {
                group: self.group.clone(),
                coords,
            });
            // Odometer, last digit fastest.
            let mut pos = k;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                counter[pos] += 1;
                if counter[pos] < radix[pos] {
                    break;
                }
                counter[pos] = 0;
            }
        }
    }

    /// Smallest subgroup containing both.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        self.group.check_same(&other.group)?;
        let stacked = self.basis.vstack(&other.basis)?;
        Ok(Subgroup {
            group: self.group.clone(),
            basis: top_rows(&hnf_only(&stacked)?, self.group.rank()),
        })
    }

    /// Intersection, generated by the members of the smaller operand that
    /// the larger one contains.
    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        self.group.check_same(&other.group)?;
        let (small, large) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = self.group.trivial_subgroup();
        for x in small.elements() {
            if large.contains_coords(&x.coords) && !acc.contains_coords(&x.coords) {
                acc = acc.with_vector(&x.coords)?;
            }
        }
        Ok(acc)
    }

    fn with_vector(&self, v: &[i64]) -> Result<Subgroup> {
        let extra = IntMatrix::from_rows(self.group.rank(), &[v])?;
        let stacked = self.basis.vstack(&extra)?;
        Ok(Subgroup {
            group: self.group.clone(),
            basis: top_rows(&hnf_only(&stacked)?, self.group.rank()),
        })
    }

    /// Invariant factors of `G/H`; empty when `H = G`.
    pub fn quotient_invariants(&self) -> Vec<i64> {
        smith_diagonal(&self.basis)
            .expect("Smith form of a Hermite basis with entries below n_k")
            .into_iter()
            .filter(|&d| d > 1)
            .collect()
    }

    /// Exponent of `G/H`.
    pub fn quotient_exponent(&self) -> i64 {
        self.quotient_invariants().last().copied().unwrap_or(1)
    }

    /// Invariant factors of `H` itself. `L` expressed in the basis of `M` is
    /// the integer matrix `C` with `C·basis = diag(n)`, and `H ≅ Z^k / C`.
    pub fn subgroup_invariants(&self) -> Vec<i64> {
        let k = self.group.rank();
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|i| {
                let mut v = vec![0; k];
                v[i] = self.group.factors()[i];
                solve_hermite(&self.basis, &v)
                    .expect("bounded entries")
                    .expect("L lies in every subgroup lattice")
            })
            .collect();
        let c = IntMatrix::from_rows(k, &rows).expect("k rows of length k");
        smith_diagonal(&c)
            .expect("Smith form of a bounded relation matrix")
            .into_iter()
            .filter(|&d| d > 1)
            .collect()
    }

    /// Short generator list for display and interchange: the basis rows
    /// reduced into `[0, n_i)`, with rows that vanish dropped. The trivial
    /// subgroup is generated by the zero vector.
    pub fn generators(&self) -> Vec<Vec<i64>> {
        let factors = self.group.factors();
        let gens: Vec<Vec<i64>> = self
            .basis
            .row_iter()
            .map(|r| {
                r.iter()
                    .zip(factors)
                    .map(|(&x, &n)| x.rem_euclid(n))
                    .collect::<Vec<_>>()
            })
            .filter(|r| r.iter().any(|&x| x != 0))
            .collect();
        if gens.is_empty() {
            vec![vec![0; self.group.rank()]]
        } else {
            gens
        }
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{}{}", self.group, self.basis)
    }
}

/// True iff two invariant factor lists describe isomorphic groups.
pub fn is_isomorphic(f1: &[i64], f2: &[i64]) -> bool {
    f1 == f2
}

/// Every subgroup of `group`, sorted by basis.
///
/// Builds the upper triangular Hermite basis from the bottom row up. Row
/// `i` has diagonal `d_i | n_i` and entries in `[0, d_j)` at columns
/// `j > i`; it is kept only if `(n_i/d_i)·b_i` falls in the span of the
/// rows below, which is the condition `n_i·e_i ∈ M` restricted to what is
/// already fixed.
pub fn enumerate_subgroups(group: &AbelianGroup, bound: i64) -> Result<Vec<Subgroup>> {
    if group.order() > bound {
        return Err(GroupError::BoundExceeded {
            order: group.order(),
            bound,
        });
    }
    let k = group.rank();
    let factors = group.factors();
    // Each partial is the rows i..k, stored as full length-k rows.
    let mut partials: Vec<Vec<Vec<i64>>> = vec![Vec::new()];
    for i in (0..k).rev() {
        let mut next = Vec::new();
        for below in &partials {
            let lower = IntMatrix::from_rows(k, below)?;
            let ranges: Vec<i64> = below
                .iter()
                .enumerate()
                .map(|(r, row)| row[i + 1 + r])
                .collect();
            for d in divisors(factors[i]) {
                let mut entries = vec![0i64; ranges.len()];
                loop {
                    let mut row = vec![0i64; k];
                    row[i] = d;
                    row[i + 1..].copy_from_slice(&entries);
                    let scaled: Vec<i64> = row.iter().map(|&x| x * (factors[i] / d)).collect();
                    let mut tail = scaled;
                    tail[i] = 0;
                    if solve_hermite(&lower, &tail)?.is_some() {
                        let mut rows = Vec::with_capacity(below.len() + 1);
                        rows.push(row);
                        rows.extend(below.iter().cloned());
                        next.push(rows);
                    }
                    if !advance(&mut entries, &ranges) {
                        break;
                    }
                }
            }
        }
        partials = next;
    }
    let mut subgroups: Vec<Subgroup> = partials
        .into_iter()
        .map(|rows| Subgroup {
            group: group.clone(),
            basis: IntMatrix::from_rows(k, &rows).expect("k rows of length k"),
        })
        .collect();
    subgroups.sort();
    Ok(subgroups)
}

/// Odometer over `0 ≤ digits[j] < ranges[j]`; false once it wraps.
fn advance(digits: &mut [i64], ranges: &[i64]) -> bool {
    for j in (0..digits.len()).rev() {
        digits[j] += 1;
        if digits[j] < ranges[j] {
            return true;
        }
        digits[j] = 0;
    }
    false
}

/// Positive divisors of `n > 0`, ascending.
pub fn divisors(n: i64) -> Vec<i64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorization of `n ≥ 1` as `(p, e)` pairs, ascending in `p`.
pub fn factorize(mut n: i64) -> Vec<(i64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: i64) -> bool {
    n > 1 && factorize(n) == [(n, 1)]
}

/// Partitions of `n` as non-increasing part lists.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// One representative per isomorphism type of abelian group of order exactly `n`.
pub fn abelian_types_of_order(n: i64) -> Vec<AbelianGroup> {
    assert!(n >= 1, "group order must be positive");
    let primes = factorize(n);
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for chain in &out {
            for part in partitions(e) {
                next.push(merge_primary(chain, p, &part));
            }
        }
        out = next;
    }
    let mut groups: Vec<AbelianGroup> = out
        .into_iter()
        .map(|f| AbelianGroup::new(f).expect("merged chains divide"))
        .collect();
    groups.sort_by(|a, b| a.factors().cmp(b.factors()));
    groups
}

/// Folds the `p`-primary parts `p^{λ_1} ≥ p^{λ_2} ≥ …` into an ascending
/// divisibility chain, aligning the largest parts at the top.
fn merge_primary(chain: &[i64], p: i64, parts: &[u32]) -> Vec<i64> {
    let len = chain.len().max(parts.len());
    let mut out = vec![1i64; len];
    for (j, &c) in chain.iter().rev().enumerate() {
        out[len - 1 - j] *= c;
    }
    for (j, &e) in parts.iter().enumerate() {
        out[len - 1 - j] *= p.pow(e);
    }
    out
}

/// Every abelian isomorphism type of order at most `n`, including the
/// trivial group, ordered by group order then factor list.
pub fn abelian_types(n: i64) -> Vec<AbelianGroup> {
    (1..=n).flat_map(abelian_types_of_order).collect()
}
