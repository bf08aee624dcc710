//! Exact integer linear algebra over `i64`.
//!
//! Every arithmetic step is checked; an overflow surfaces as
//! [`LinalgError::Overflow`] instead of wrapping. Magnitudes at the scale
//! this crate works at (group orders in the thousands) stay far below the
//! 64-bit range, so the checks only fire on adversarial input.
//!
//! Conventions:
//! - [`hnf`] returns the *row* Hermite form: upper echelon, positive
//!   pivots, entries above each pivot reduced into `[0, pivot)`, zero rows
//!   last. Two matrices have the same integer row space iff their Hermite
//!   forms are equal.
//! - [`snf`] returns `D = U·M·V` with `d_1 | d_2 | …`, all `d_i ≥ 0`, and
//!   zeros trailing.

use std::fmt;
use std::ops::{Index, IndexMut};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("integer overflow during {0}")]
    Overflow(&'static str),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, LinalgError>;

#[inline]
pub(crate) fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(LinalgError::Overflow("addition"))
}

#[inline]
pub(crate) fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(LinalgError::Overflow("subtraction"))
}

#[inline]
pub(crate) fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b)
        .ok_or(LinalgError::Overflow("multiplication"))
}

/// `a*x + b*y`, checked.
#[inline]
fn lin(a: i64, x: i64, b: i64, y: i64) -> Result<i64> {
    add(mul(a, x)?, mul(b, y)?)
}

/// Extended Euclid: returns `(d, s, t)` with `d = gcd(a, b) ≥ 0` and
/// `s·a + t·b = d`. The coefficients are whatever the Euclidean recurrence
/// produces; callers should only rely on the identity.
///
/// Panics only when the gcd itself is `2^63`, i.e. when both inputs lie in
/// `{0, i64::MIN}` and at least one is `i64::MIN`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if a == 0 && b == 0 {
        return (0, 0, 0);
    }
    // i128 keeps the recurrence free of intermediate overflow; the final
    // coefficients satisfy |s| ≤ |b|/d and |t| ≤ |a|/d.
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    let narrow = |v: i128| i64::try_from(v).expect("gcd of i64::MIN does not fit in i64");
    (narrow(r0), narrow(s0), narrow(t0))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    ext_gcd(a, b).0
}

/// Least common multiple of nonnegative values; `lcm(0, x) = 0`.
pub fn lcm(a: i64, b: i64) -> Result<i64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    mul(a / gcd(a, b), b).map(i64::abs)
}

/// Dense row-major integer matrix with fixed dimensions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if rows.checked_mul(cols) != Some(data.len()) {
            return Err(LinalgError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1; n])
    }

    /// Square matrix with `diag` on the diagonal.
    pub fn diagonal(diag: &[i64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds a matrix from rows of equal length. `cols` is needed to give
    /// an empty row list a width.
    pub fn from_rows<R: AsRef<[i64]>>(cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(LinalgError::Dimension(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[i64]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.row_iter().map(<[i64]>::to_vec).collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(LinalgError::Dimension(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = add(out[(i, j)], mul(a, rhs[(k, j)])?)?;
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: `v·self`.
    pub fn vec_mul(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.rows {
            return Err(LinalgError::Dimension(format!(
                "vector of length {} times {}x{}",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = vec![0; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &e) in out.iter_mut().zip(self.row(i)) {
                *o = add(*o, mul(c, e)?)?;
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<i64> {
        if !self.is_square() {
            return Err(LinalgError::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let at = |i: usize, j: usize| i * n + j;
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[at(k, k)] == 0 {
                let Some(p) = (k + 1..n).find(|&i| a[at(i, k)] != 0) else {
                    return Ok(0);
                };
                for j in 0..n {
                    a.swap(at(k, j), at(p, j));
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[at(i, j)]
                        .checked_mul(a[at(k, k)])
                        .and_then(|x| x.checked_sub(a[at(i, k)].checked_mul(a[at(k, j)])?))
                        .ok_or(LinalgError::Overflow("determinant"))?;
                    a[at(i, j)] = num / prev;
                }
                a[at(i, k)] = 0;
            }
            prev = a[at(k, k)];
        }
        i64::try_from(sign * a[at(n - 1, n - 1)]).map_err(|_| LinalgError::Overflow("determinant"))
    }

    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.is_square() && self.determinant()?.abs() == 1)
    }

    /// True when this matrix is in canonical row Hermite form.
    pub fn is_hermite(&self) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero_row = false;
        for i in 0..self.rows {
            let row = self.row(i);
            match row.iter().position(|&x| x != 0) {
                None => seen_zero_row = true,
                Some(p) => {
                    if seen_zero_row || last_pivot.is_some_and(|lp| p <= lp) || row[p] <= 0 {
                        return false;
                    }
                    let piv = row[p];
                    if (0..i).any(|r| !(0..piv).contains(&self[(r, p)])) {
                        return false;
                    }
                    last_pivot = Some(p);
                }
            }
        }
        true
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Replaces rows `(a, b)` by `(p·a + q·b, r·a + s·b)`.
    fn combine_rows(&mut self, a: usize, b: usize, [p, q, r, s]: [i64; 4]) -> Result<()> {
        for j in 0..self.cols {
            let (x, y) = (self[(a, j)], self[(b, j)]);
            self[(a, j)] = lin(p, x, q, y)?;
            self[(b, j)] = lin(r, x, s, y)?;
        }
        Ok(())
    }

    /// Replaces columns `(a, b)` by `(p·a + q·b, r·a + s·b)`.
    fn combine_cols(&mut self, a: usize, b: usize, [p, q, r, s]: [i64; 4]) -> Result<()> {
        for i in 0..self.rows {
            let (x, y) = (self[(i, a)], self[(i, b)]);
            self[(i, a)] = lin(p, x, q, y)?;
            self[(i, b)] = lin(r, x, s, y)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, a: usize) -> Result<()> {
        for j in 0..self.cols {
            self[(a, j)] = sub(0, self[(a, j)])?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "IntMatrix{}x{}{:?}",
            self.rows,
            self.cols,
            self.to_rows()
        )
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.row_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// 2x2 unimodular transform that sends `(a, b)` to `(gcd, 0)`.
fn bezout_transform(a: i64, b: i64) -> [i64; 4] {
    // Leave the first vector untouched when it already divides the second;
    // the Smith loop relies on this to terminate.
    if a != 0 && b % a == 0 {
        return [1, 0, -(b / a), 1];
    }
    let (d, s, t) = ext_gcd(a, b);
    // [[s, t], [-b/d, a/d]] has determinant (s·a + t·b)/d = 1.
    [s, t, -(b / d), a / d]
}

/// In-place row Hermite reduction. When `track` is given it receives the
/// same row operations, so starting from the identity it ends as `U` with
/// `U·M = H`.
fn hermite_in_place(h: &mut IntMatrix, mut track: Option<&mut IntMatrix>) -> Result<()> {
    let mut pivot_row = 0;
    for col in 0..h.cols {
        if pivot_row == h.rows {
            break;
        }
        for i in pivot_row + 1..h.rows {
            if h[(i, col)] == 0 {
                continue;
            }
            let t = bezout_transform(h[(pivot_row, col)], h[(i, col)]);
            h.combine_rows(pivot_row, i, t)?;
            if let Some(u) = track.as_deref_mut() {
                u.combine_rows(pivot_row, i, t)?;
            }
        }
        let pivot = h[(pivot_row, col)];
        if pivot == 0 {
            continue;
        }
        if pivot < 0 {
            h.negate_row(pivot_row)?;
            if let Some(u) = track.as_deref_mut() {
                u.negate_row(pivot_row)?;
            }
        }
        let pivot = h[(pivot_row, col)];
        for r in 0..pivot_row {
            let q = h[(r, col)].div_euclid(pivot);
            if q != 0 {
                h.combine_rows(r, pivot_row, [1, -q, 0, 1])?;
                if let Some(u) = track.as_deref_mut() {
                    u.combine_rows(r, pivot_row, [1, -q, 0, 1])?;
                }
            }
        }
        pivot_row += 1;
    }
    Ok(())
}

/// Canonical row Hermite form `H` together with a unimodular `U`, `U·M = H`.
pub fn hnf(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    hermite_in_place(&mut h, Some(&mut u))?;
    Ok((h, u))
}

/// Hermite form without the transform.
pub fn hnf_only(m: &IntMatrix) -> Result<IntMatrix> {
    let mut h = m.clone();
    hermite_in_place(&mut h, None)?;
    Ok(h)
}

/// Smith normal form: returns `(D, U, V)` with `U·M·V = D`.
pub fn snf(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix, IntMatrix)> {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);

    for t in 0..n {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..d.rows {
            for j in t..d.cols {
                let x = d[(i, j)];
                if x != 0
                    && best.is_none_or(|(bi, bj)| x.unsigned_abs() < d[(bi, bj)].unsigned_abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            for i in t + 1..d.rows {
                if d[(i, t)] != 0 {
                    let tr = bezout_transform(d[(t, t)], d[(i, t)]);
                    d.combine_rows(t, i, tr)?;
                    u.combine_rows(t, i, tr)?;
                }
            }
            for j in t + 1..d.cols {
                if d[(t, j)] != 0 {
                    let tr = bezout_transform(d[(t, t)], d[(t, j)]);
                    d.combine_cols(t, j, tr)?;
                    v.combine_cols(t, j, tr)?;
                }
            }
            let column_clear = (t + 1..d.rows).all(|i| d[(i, t)] == 0);
            if !column_clear {
                continue;
            }
            // Enforce divisibility: pull an offending row into row t and redo.
            let piv = d[(t, t)];
            let offender = (t + 1..d.rows).find(|&i| (t + 1..d.cols).any(|j| d[(i, j)] % piv != 0));
            match offender {
                Some(i) => {
                    d.combine_rows(t, i, [1, 1, 0, 1])?;
                    u.combine_rows(t, i, [1, 1, 0, 1])?;
                }
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            d.negate_row(t)?;
            u.negate_row(t)?;
        }
    }
    Ok((d, u, v))
}

/// Diagonal of the Smith form, length `min(rows, cols)`.
pub fn smith_diagonal(m: &IntMatrix) -> Result<Vec<i64>> {
    let (d, _, _) = snf(m)?;
    Ok((0..m.rows.min(m.cols)).map(|i| d[(i, i)]).collect())
}

/// Solves `x·H = v` for `H` in row Hermite form. Returns `None` when `v` is
/// not in the integer row space.
pub(crate) fn solve_hermite(h: &IntMatrix, v: &[i64]) -> Result<Option<Vec<i64>>> {
    let mut residual = v.to_vec();
    let mut x = vec![0; h.rows];
    for (r, xr) in x.iter_mut().enumerate() {
        let row = h.row(r);
        let Some(p) = row.iter().position(|&e| e != 0) else {
            break;
        };
        if residual[..p].iter().any(|&e| e != 0) {
            return Ok(None);
        }
        if residual[p] % row[p] != 0 {
            return Ok(None);
        }
        let c = residual[p] / row[p];
        if c != 0 {
            for (res, &e) in residual.iter_mut().zip(row) {
                *res = sub(*res, mul(c, e)?)?;
            }
        }
        *xr = c;
    }
    if residual.iter().any(|&e| e != 0) {
        return Ok(None);
    }
    Ok(Some(x))
}

/// Finds `c` with `c·B = v`, or `None` if `v` is outside the integer row
/// space of `B`.
pub fn solve_in_rowspace(b: &IntMatrix, v: &[i64]) -> Result<Option<Vec<i64>>> {
    if v.len() != b.cols {
        return Err(LinalgError::Dimension(format!(
            "vector of length {} against {} columns",
            v.len(),
            b.cols
        )));
    }
    let (h, u) = hnf(b)?;
    match solve_hermite(&h, v)? {
        Some(x) => Ok(Some(u.vec_mul(&x)?)),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.first().map_or(0, |r| r.len()), rows).unwrap()
    }

    #[test]
    fn ext_gcd_small_cases() {
        assert_eq!(ext_gcd(0, 0), (0, 0, 0));
        assert_eq!(ext_gcd(1, 0), (1, 1, 0));
        let (d, s, t) = ext_gcd(6, 4);
        assert_eq!(d, 2);
        assert_eq!(6 * s + 4 * t, 2);
        let (d, s, t) = ext_gcd(-6, 4);
        assert_eq!(d, 2);
        assert_eq!(-6 * s + 4 * t, 2);
    }

    #[test]
    fn ext_gcd_exhaustive() {
        for a in -50i64..=50 {
            for b in -50i64..=50 {
                let (d, s, t) = ext_gcd(a, b);
                assert!(d >= 0);
                assert_eq!(s * a + t * b, d, "bezout for ({a},{b})");
                // Maximal common divisor, by trial.
                let brute = (1..=50i64)
                    .rev()
                    .find(|&c| a % c == 0 && b % c == 0)
                    .unwrap_or(0);
                let expect = if a == 0 && b == 0 { 0 } else { brute };
                assert_eq!(d, expect, "gcd({a},{b})");
            }
        }
    }

    #[test]
    fn ext_gcd_extremes() {
        let (d, s, t) = ext_gcd(i64::MAX, i64::MAX - 1);
        assert_eq!(d, 1);
        assert_eq!(
            s as i128 * i64::MAX as i128 + t as i128 * (i64::MAX - 1) as i128,
            1
        );
        assert_eq!(ext_gcd(i64::MIN, 3).0, 1);
    }

    #[test]
    fn hnf_examples() {
        let (h, u) = hnf(&IntMatrix::identity(3)).unwrap();
        assert_eq!(h, IntMatrix::identity(3));
        assert!(u.is_unimodular().unwrap());

        let swap = m(&[&[0, 1], &[1, 0]]);
        let (h, u) = hnf(&swap).unwrap();
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u.mul(&swap).unwrap(), h);

        let already = m(&[&[2, 2], &[0, 4]]);
        assert!(already.is_hermite());
        let (h, _) = hnf(&already).unwrap();
        assert_eq!(h, already);
    }

    #[test]
    fn hnf_pushes_zero_rows_down() {
        let a = m(&[&[0, 0, 0], &[2, 4, 6], &[1, 2, 3]]);
        let (h, u) = hnf(&a).unwrap();
        assert_eq!(h, m(&[&[1, 2, 3], &[0, 0, 0], &[0, 0, 0]]));
        assert_eq!(u.mul(&a).unwrap(), h);
        assert!(u.is_unimodular().unwrap());
    }

    #[test]
    fn hermite_predicate_rejects() {
        assert!(!m(&[&[2, 5], &[0, 4]]).is_hermite());
        assert!(!m(&[&[-1, 0], &[0, 1]]).is_hermite());
        assert!(!m(&[&[0, 0], &[0, 1]]).is_hermite());
        assert!(!m(&[&[0, 1], &[1, 0]]).is_hermite());
    }

    #[test]
    fn snf_examples() {
        let (d, _, _) = snf(&IntMatrix::diagonal(&[2, 4])).unwrap();
        assert_eq!(d, IntMatrix::diagonal(&[2, 4]));

        let a = IntMatrix::diagonal(&[2, 3]);
        let (d, u, v) = snf(&a).unwrap();
        assert_eq!(d, IntMatrix::diagonal(&[1, 6]));
        assert_eq!(u.mul(&a).unwrap().mul(&v).unwrap(), d);
        assert_eq!(
            a.determinant().unwrap().abs(),
            d.determinant().unwrap().abs()
        );

        let z = IntMatrix::zeros(2, 3);
        let (d, _, _) = snf(&z).unwrap();
        assert_eq!(d, z);
    }

    #[test]
    fn snf_rectangular() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let (d, u, v) = snf(&a).unwrap();
        assert_eq!(u.mul(&a).unwrap().mul(&v).unwrap(), d);
        assert_eq!(smith_diagonal(&a).unwrap(), vec![2, 6, 12]);

        let wide = m(&[&[4, 6, 10]]);
        assert_eq!(smith_diagonal(&wide).unwrap(), vec![2]);
    }

    #[test]
    fn solve_examples() {
        let id = IntMatrix::identity(3);
        assert_eq!(
            solve_in_rowspace(&id, &[4, -1, 7]).unwrap(),
            Some(vec![4, -1, 7])
        );

        let even = IntMatrix::diagonal(&[2, 2]);
        assert_eq!(solve_in_rowspace(&even, &[1, 0]).unwrap(), None);

        let b = m(&[&[1, 1], &[0, 2]]);
        let c = solve_in_rowspace(&b, &[1, 3]).unwrap().unwrap();
        assert_eq!(c, vec![1, 1]);
        assert_eq!(b.vec_mul(&c).unwrap(), vec![1, 3]);
    }

    #[test]
    fn solve_with_dependent_rows() {
        let b = m(&[&[2, 4], &[3, 6], &[0, 0]]);
        let c = solve_in_rowspace(&b, &[5, 10]).unwrap().unwrap();
        assert_eq!(b.vec_mul(&c).unwrap(), vec![5, 10]);
        assert_eq!(solve_in_rowspace(&b, &[1, 3]).unwrap(), None);
        assert!(solve_in_rowspace(&b, &[1]).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = m(&[&[i64::MAX, 1], &[i64::MAX, 1]]);
        assert!(matches!(
            big.mul(&IntMatrix::diagonal(&[2, 2])),
            Err(LinalgError::Overflow(_))
        ));
        let a = m(&[&[i64::MAX, 0], &[0, i64::MAX]]);
        assert!(matches!(a.determinant(), Err(LinalgError::Overflow(_))));
    }

    #[test]
    fn determinant_small() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).determinant().unwrap(), -2);
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant().unwrap(), -1);
        assert_eq!(
            m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])
                .determinant()
                .unwrap(),
            6
        );
        assert_eq!(
            m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]])
                .determinant()
                .unwrap(),
            0
        );
        assert_eq!(IntMatrix::zeros(0, 0).determinant().unwrap(), 1);
    }

    #[test]
    fn dimension_errors() {
        assert!(IntMatrix::new(2, 2, vec![1, 2, 3]).is_err());
        assert!(IntMatrix::from_rows(2, &[vec![1, 2], vec![3]]).is_err());
        assert!(IntMatrix::zeros(2, 3).determinant().is_err());
        let empty = IntMatrix::from_rows::<Vec<i64>>(3, &[]).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (0, 3));
        let (h, u) = hnf(&empty).unwrap();
        assert_eq!((h.rows(), u.rows()), (0, 0));
    }
}
