//! Brute-force group oracle shared by the integration tests.
//!
//! Works on explicit element tables and bitmask subsets (groups of order at
//! most 128) and never touches the lattice machinery, so it can check it.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

pub type Mask = u128;

pub struct BruteGroup {
    pub factors: Vec<i64>,
    pub elems: Vec<Vec<i64>>,
    add: Vec<Vec<usize>>,
    orders: Vec<i64>,
}

impl BruteGroup {
    pub fn new(factors: &[i64]) -> Self {
        let mut elems: Vec<Vec<i64>> = vec![Vec::new()];
        for &n in factors {
            elems = elems
                .into_iter()
                .flat_map(|e| {
                    (0..n).map(move |c| {
                        let mut v = e.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        assert!(elems.len() <= 128, "brute oracle limited to order 128");
        let index: BTreeMap<Vec<i64>, usize> = elems
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let add: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| {
                        let s: Vec<i64> = a
                            .iter()
                            .zip(b)
                            .zip(factors)
                            .map(|((x, y), n)| (x + y) % n)
                            .collect();
                        index[&s]
                    })
                    .collect()
            })
            .collect();
        let mut g = Self {
            factors: factors.to_vec(),
            elems,
            add,
            orders: Vec::new(),
        };
        g.orders = (0..g.len()).map(|i| g.period(i)).collect();
        g
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn index(&self, coords: &[i64]) -> usize {
        self.elems
            .iter()
            .position(|e| e == coords)
            .expect("coordinates in range")
    }

    pub fn sum(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    /// Least positive c with c·x = 0, by repeated addition.
    fn period(&self, x: usize) -> i64 {
        let mut acc = x;
        let mut c = 1;
        while acc != 0 {
            acc = self.add[acc][x];
            c += 1;
        }
        c
    }

    pub fn order_of(&self, x: usize) -> i64 {
        self.orders[x]
    }

    pub fn full(&self) -> Mask {
        if self.len() == 128 {
            Mask::MAX
        } else {
            (1 << self.len()) - 1
        }
    }

    pub fn cyclic(&self, x: usize) -> Mask {
        let mut m: Mask = 1;
        let mut acc = x;
        while acc != 0 {
            m |= 1 << acc;
            acc = self.add[acc][x];
        }
        m
    }

    /// Subgroup generated by an arbitrary subset.
    pub fn closure(&self, set: Mask) -> Mask {
        let mut h: Mask = 1;
        for x in bits(set) {
            h = self.join_cyclic(h, x);
        }
        h
    }

    /// `H + ⟨x⟩` for a subgroup `H`.
    pub fn join_cyclic(&self, h: Mask, x: usize) -> Mask {
        if h >> x & 1 == 1 {
            return h;
        }
        let multiples: Vec<usize> = bits(self.cyclic(x)).collect();
        let mut out = 0;
        for a in bits(h) {
            for &m in &multiples {
                out |= 1 << self.add[a][m];
            }
        }
        out
    }

    /// Every subgroup, found by adding one cyclic subgroup at a time.
    pub fn subgroups(&self) -> Vec<Mask> {
        let mut seen: BTreeSet<Mask> = BTreeSet::new();
        let mut queue = VecDeque::from([1 as Mask]);
        seen.insert(1);
        while let Some(h) = queue.pop_front() {
            for x in 0..self.len() {
                let j = self.join_cyclic(h, x);
                if seen.insert(j) {
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Order of the coset `x + H`.
    pub fn coset_order(&self, h: Mask, x: usize) -> i64 {
        let mut acc = x;
        let mut c = 1;
        while h >> acc & 1 == 0 {
            acc = self.add[acc][x];
            c += 1;
        }
        c
    }

    pub fn quotient_exponent(&self, h: Mask) -> i64 {
        (0..self.len())
            .map(|x| self.coset_order(h, x))
            .max()
            .unwrap_or(1)
    }

    /// Isomorphism signature of `H`: how many members have each order.
    /// Finite abelian groups are determined by these counts.
    pub fn subgroup_signature(&self, h: Mask) -> BTreeMap<i64, usize> {
        let mut sig = BTreeMap::new();
        for x in bits(h) {
            *sig.entry(self.order_of(x)).or_default() += 1;
        }
        sig
    }

    /// Signature of `G/H`: how many cosets have each order.
    pub fn quotient_signature(&self, h: Mask) -> BTreeMap<i64, usize> {
        let size = h.count_ones() as usize;
        let mut sig: BTreeMap<i64, usize> = BTreeMap::new();
        for x in 0..self.len() {
            *sig.entry(self.coset_order(h, x)).or_default() += 1;
        }
        sig.values_mut().for_each(|c| *c /= size);
        sig
    }

    pub fn mask_of(&self, coords: impl IntoIterator<Item = Vec<i64>>) -> Mask {
        coords.into_iter().fold(0, |m, c| m | 1 << self.index(&c))
    }
}

pub fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Exhaustive search over every nonempty subset of the subgroup list for
/// families meeting (c) and (d). Returns `(c_exists, d_exists)`.
pub fn exhaustive_family_search(g: &BruteGroup) -> (bool, bool) {
    let subs = g.subgroups();
    let s = subs.len();
    assert!(s <= 22, "exhaustive search over {s} subgroups is too large");

    let mut join_table = vec![vec![0usize; s]; s];
    let pos: BTreeMap<Mask, usize> = subs.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    for a in 0..s {
        for b in 0..s {
            join_table[a][b] = pos[&g.closure(subs[a] | subs[b])];
        }
    }
    let exps: Vec<i64> = subs.iter().map(|&h| g.quotient_exponent(h)).collect();
    let types: Vec<_> = subs
        .iter()
        .map(|&h| (g.subgroup_signature(h), g.quotient_signature(h)))
        .collect();

    let n_sets = 1usize << s;
    let mut meet = vec![0 as Mask; n_sets];
    let mut union = vec![0 as Mask; n_sets];
    let mut join = vec![0usize; n_sets];
    let whole = pos[&g.full()];
    let (mut found_c, mut found_d) = (false, false);
    for set in 1..n_sets {
        let low = set.trailing_zeros() as usize;
        let rest = set & (set - 1);
        if rest == 0 {
            meet[set] = subs[low];
            union[set] = subs[low];
            join[set] = low;
        } else {
            meet[set] = meet[rest] & subs[low];
            union[set] = union[rest] | subs[low];
            join[set] = join_table[join[rest]][low];
        }
        if meet[set] != 1 {
            continue;
        }
        let members = (0..s).filter(|i| set >> i & 1 == 1);
        if !found_c && join[set] == whole {
            let mut e = members.clone().map(|i| exps[i]);
            let first = e.next().unwrap();
            if e.all(|x| x == first) {
                found_c = true;
            }
        }
        if !found_d && union[set] == g.full() {
            let mut t = members.map(|i| &types[i]);
            let first = t.next().unwrap();
            if t.all(|x| x == first) {
                found_d = true;
            }
        }
        if found_c && found_d {
            break;
        }
    }
    (found_c, found_d)
}
