//! Smith normal form over the integers.
//!
//! Elimination runs in checked `i64` arithmetic and restarts in `BigInt` when
//! an intermediate value overflows, so results are always exact. Pivot
//! policy: smallest absolute value, ties broken by (row, column).

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

pub(crate) trait SnfScalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn is_negative(&self) -> bool;
    /// Quotient rounded toward zero.
    fn quot(&self, other: &Self) -> Self;
    fn divides(&self, other: &Self) -> bool;
    /// `self - q * b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
}

impl SnfScalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn quot(&self, other: &Self) -> Self {
        self / other
    }
    fn divides(&self, other: &Self) -> bool {
        other % self == 0
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        q.checked_mul(*b).and_then(|p| self.checked_sub(p))
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
}

impl SnfScalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn quot(&self, other: &Self) -> Self {
        self / other
    }
    fn divides(&self, other: &Self) -> bool {
        Zero::is_zero(&(other % self))
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self.clone())
    }
}

/// Which transforms to accumulate. Tracking the long side of a tall matrix
/// is expensive, so callers ask only for what they use.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Track {
    pub left: bool,
    pub left_inv: bool,
    pub right: bool,
    pub right_inv: bool,
}

impl Track {
    pub const ALL: Track = Track { left: true, left_inv: true, right: true, right_inv: true };
    pub const LEFT: Track = Track { left: true, left_inv: true, right: false, right_inv: false };
    pub const RIGHT: Track = Track { left: false, left_inv: false, right: true, right_inv: true };
    pub const NONE: Track = Track { left: false, left_inv: false, right: false, right_inv: false };
}

/// `U · M · V = diag(d)` with `d[0] | d[1] | …`, zeros last.
#[derive(Debug, Clone)]
pub(crate) struct SnfResult<T> {
    pub diag: Vec<T>,
    pub rank: usize,
    pub u: Option<Vec<Vec<T>>>,
    pub u_inv: Option<Vec<Vec<T>>>,
    pub v: Option<Vec<Vec<T>>>,
    pub v_inv: Option<Vec<Vec<T>>>,
}

fn identity<T: SnfScalar>(n: usize) -> Vec<Vec<T>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect()
}

struct Work<T> {
    a: Vec<Vec<T>>,
    rows: usize,
    cols: usize,
    u: Option<Vec<Vec<T>>>,
    u_inv: Option<Vec<Vec<T>>>,
    v: Option<Vec<Vec<T>>>,
    v_inv: Option<Vec<Vec<T>>>,
}

fn row_sub<T: SnfScalar>(m: &mut [Vec<T>], i: usize, j: usize, q: &T) -> Option<()> {
    let (ri, rj) = if i < j {
        let (lo, hi) = m.split_at_mut(j);
        (&mut lo[i], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(i);
        (&mut hi[0], &lo[j])
    };
    for (x, y) in ri.iter_mut().zip(rj.iter()) {
        if !y.is_zero() {
            *x = x.sub_mul(q, y)?;
        }
    }
    Some(())
}

fn col_sub<T: SnfScalar>(m: &mut [Vec<T>], i: usize, j: usize, q: &T) -> Option<()> {
    for row in m.iter_mut() {
        if !row[j].is_zero() {
            let v = row[i].sub_mul(q, &row[j])?;
            row[i] = v;
        }
    }
    Some(())
}

fn col_swap<T>(m: &mut [Vec<T>], i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

impl<T: SnfScalar> Work<T> {
    /// row_i -= q · row_j
    fn row_op(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        row_sub(&mut self.a, i, j, q)?;
        if let Some(u) = self.u.as_mut() {
            row_sub(u, i, j, q)?;
        }
        if let Some(ui) = self.u_inv.as_mut() {
            // U⁻¹ ← U⁻¹ E⁻¹: col_j += q · col_i
            col_sub(ui, j, i, &q.neg()?)?;
        }
        Some(())
    }

    /// col_i -= q · col_j
    fn col_op(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        col_sub(&mut self.a, i, j, q)?;
        if let Some(v) = self.v.as_mut() {
            col_sub(v, i, j, q)?;
        }
        if let Some(vi) = self.v_inv.as_mut() {
            // V⁻¹ ← E⁻¹ V⁻¹: row_j += q · row_i
            row_sub(vi, j, i, &q.neg()?)?;
        }
        Some(())
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = self.u.as_mut() {
            u.swap(i, j);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            col_swap(ui, i, j);
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        col_swap(&mut self.a, i, j);
        if let Some(v) = self.v.as_mut() {
            col_swap(v, i, j);
        }
        if let Some(vi) = self.v_inv.as_mut() {
            vi.swap(i, j);
        }
    }

    fn row_negate(&mut self, i: usize) -> Option<()> {
        for x in self.a[i].iter_mut() {
            *x = x.neg()?;
        }
        if let Some(u) = self.u.as_mut() {
            for x in u[i].iter_mut() {
                *x = x.neg()?;
            }
        }
        if let Some(ui) = self.u_inv.as_mut() {
            for row in ui.iter_mut() {
                row[i] = row[i].neg()?;
            }
        }
        Some(())
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) if x.abs_lt(&self.a[bi][bj]) => best = Some((i, j)),
                    _ => {}
                }
            }
        }
        best
    }

    fn run(&mut self) -> Option<usize> {
        let limit = self.rows.min(self.cols);
        let mut t = 0;
        while t < limit {
            let Some((pi, pj)) = self.find_pivot(t) else { break };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            'settle: loop {
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].quot(&self.a[t][t]);
                    self.row_op(i, t, &q)?;
                    if !self.a[i][t].is_zero() {
                        self.row_swap(t, i);
                        continue 'settle;
                    }
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].quot(&self.a[t][t]);
                    self.col_op(j, t, &q)?;
                    if !self.a[t][j].is_zero() {
                        self.col_swap(t, j);
                        continue 'settle;
                    }
                }
                let p = self.a[t][t].clone();
                let offender =
                    (t + 1..self.rows).find(|&i| self.a[i][t + 1..].iter().any(|x| !x.is_zero() && !p.divides(x)));
                match offender {
                    Some(i) => {
                        let minus_one = T::one().neg()?;
                        self.row_op(t, i, &minus_one)?;
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.row_negate(t)?;
            }
            t += 1;
        }
        Some(t)
    }
}

pub(crate) fn snf_generic<T: SnfScalar>(
    a: Vec<Vec<T>>,
    rows: usize,
    cols: usize,
    track: Track,
) -> Option<SnfResult<T>> {
    let mut w = Work {
        a,
        rows,
        cols,
        u: track.left.then(|| identity(rows)),
        u_inv: track.left_inv.then(|| identity(rows)),
        v: track.right.then(|| identity(cols)),
        v_inv: track.right_inv.then(|| identity(cols)),
    };
    let rank = w.run()?;
    let limit = rows.min(cols);
    let diag = (0..limit).map(|i| w.a[i][i].clone()).collect();
    Some(SnfResult { diag, rank, u: w.u, u_inv: w.u_inv, v: w.v, v_inv: w.v_inv })
}

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn from_big(m: Option<Vec<Vec<BigInt>>>) -> Result<Option<Vec<Vec<i64>>>> {
    m.map(|m| {
        m.into_iter()
            .map(|r| r.into_iter().map(|x| x.to_i64().ok_or(Error::Overflow)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
    })
    .transpose()
}

/// Exact SNF of a small-entry matrix; transforms are returned in `i64` and
/// the call fails only if a transform entry itself exceeds `i64`.
pub(crate) fn snf_i64(a: &[Vec<i64>], rows: usize, cols: usize, track: Track) -> Result<SnfResult<i64>> {
    if let Some(r) = snf_generic(a.to_vec(), rows, cols, track) {
        return Ok(r);
    }
    let big = snf_generic(to_big(a), rows, cols, track).expect("BigInt arithmetic does not overflow");
    Ok(SnfResult {
        diag: big.diag.into_iter().map(|x| x.to_i64().ok_or(Error::Overflow)).collect::<Result<_>>()?,
        rank: big.rank,
        u: from_big(big.u)?,
        u_inv: from_big(big.u_inv)?,
        v: from_big(big.v)?,
        v_inv: from_big(big.v_inv)?,
    })
}

/// Pivot valuations of `a` over the local ring `Z/pᵏ`: the matrix is
/// equivalent to `diag(p^{v₁}, …, p^{vᵣ}, 0, …)` with every `vᵢ < k`.
pub(crate) fn local_valuations(mut a: Vec<Vec<u64>>, p: u64, k: u32) -> Vec<u32> {
    let q = p.pow(k) as u128;
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    for row in a.iter_mut() {
        for x in row.iter_mut() {
            *x = (*x as u128 % q) as u64;
        }
    }
    let val = |x: u64| -> u32 {
        let (mut x, mut v) = (x, 0);
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        v
    };
    let inverse = |x: u64| -> u64 {
        // x is a unit mod q
        let (mut t, mut new_t, mut r, mut new_r) = (0i128, 1i128, q as i128, x as i128);
        while new_r != 0 {
            let quo = r / new_r;
            (t, new_t) = (new_t, t - quo * new_t);
            (r, new_r) = (new_r, r - quo * new_r);
        }
        t.rem_euclid(q as i128) as u64
    };
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize, u32)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let v = val(x);
                    if best.is_none_or(|b| v < b.2) {
                        best = Some((i, j, v));
                    }
                }
            }
        }
        let Some((pi, pj, v)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let scale = p.pow(v) as u128;
        let unit_inv = inverse((a[t][t] as u128 / scale) as u64) as u128;
        for i in t + 1..rows {
            if a[i][t] == 0 {
                continue;
            }
            let factor = (a[i][t] as u128 / scale) * unit_inv % q;
            let pivot_row = a[t].clone();
            for (x, &y) in a[i].iter_mut().zip(&pivot_row).skip(t) {
                *x = ((*x as u128 + q * q - factor * y as u128 % q) % q) as u64;
            }
        }
        // column operations only touch row t once the column below is clear
        for j in t + 1..cols {
            a[t][j] = 0;
        }
        out.push(v);
        t += 1;
    }
    out
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal with a
/// divisibility chain.
#[derive(Debug, Clone, PartialEq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d₁ | d₂ | …`, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i)).collect()
    }
}

/// Smith normal form with both transforms. The postcondition `U·M·V = D` and
/// the unimodularity of `U` and `V` (via their computed inverses) are
/// re-checked before returning.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let small = m.to_i64_dense();
    let big: SnfResult<BigInt> = match small.and_then(|s| snf_generic(s, rows, cols, Track::ALL)) {
        Some(r) => SnfResult {
            diag: r.diag.into_iter().map(BigInt::from).collect(),
            rank: r.rank,
            u: r.u.map(|x| to_big(&x)),
            u_inv: r.u_inv.map(|x| to_big(&x)),
            v: r.v.map(|x| to_big(&x)),
            v_inv: r.v_inv.map(|x| to_big(&x)),
        },
        None => snf_generic(m.to_big_dense(), rows, cols, Track::ALL).expect("BigInt arithmetic does not overflow"),
    };
    let u = IntMatrix::from_dense(&big.u.expect("tracked"));
    let v = IntMatrix::from_dense(&big.v.expect("tracked"));
    let u_inv = IntMatrix::from_dense(&big.u_inv.expect("tracked"));
    let v_inv = IntMatrix::from_dense(&big.v_inv.expect("tracked"));
    let mut d = IntMatrix::zeros(rows, cols);
    for (i, x) in big.diag.iter().enumerate() {
        d.set(i, i, x.clone());
    }
    assert_eq!(u.mul(m).mul(&v), d, "SNF postcondition U·M·V = D");
    assert!(u.mul(&u_inv).is_identity() && v.mul(&v_inv).is_identity(), "SNF transforms are unimodular");
    for w in big.diag[..big.rank].windows(2) {
        assert!(Zero::is_zero(&(&w[1] % &w[0])), "SNF divisibility chain");
    }
    SmithForm { u, d, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<_>>())
    }

    fn diag_of(m: &IntMatrix) -> Vec<i64> {
        smith_normal_form(m).diagonal().iter().map(|x| x.to_i64().unwrap()).collect()
    }

    /// Oracle: the k-th determinantal divisor is the gcd of all k×k minors,
    /// and d_k = D_k / D_{k-1}. Only for tiny matrices.
    fn determinantal_diag(a: &[Vec<i64>]) -> Vec<i64> {
        fn det(m: &[Vec<i64>]) -> i64 {
            let n = m.len();
            if n == 1 {
                return m[0][0];
            }
            (0..n)
                .map(|c| {
                    let minor: Vec<Vec<i64>> = m[1..]
                        .iter()
                        .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, &x)| x).collect())
                        .collect();
                    let s = if c % 2 == 0 { 1 } else { -1 };
                    s * m[0][c] * det(&minor)
                })
                .sum()
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let rows = a.len();
        let cols = a[0].len();
        let mut divisors = vec![1i64];
        for k in 1..=rows.min(cols) {
            let mut g = 0i64;
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let minor: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| a[r][c]).collect()).collect();
                    g = g.gcd(&det(&minor));
                }
            }
            divisors.push(g);
        }
        (1..divisors.len()).map(|k| if divisors[k] == 0 { 0 } else { divisors[k] / divisors[k - 1] }).collect()
    }

    #[test]
    fn zero_matrix() {
        let m = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&m);
        assert!(s.u.is_identity() && s.v.is_identity());
        assert_eq!(diag_of(&m), vec![0, 0]);
    }

    #[test]
    fn worked_examples() {
        assert_eq!(diag_of(&mat(&[&[2, 0], &[0, 3]])), vec![1, 6]);
        assert_eq!(diag_of(&mat(&[&[2, 4], &[6, 8]])), vec![2, 4]);
        assert_eq!(determinantal_diag(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(determinantal_diag(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let m = mat(&[&[big, big - 1], &[big - 7, big - 11]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    proptest! {
        #[test]
        fn matches_determinantal_divisors(
            rows in 1usize..4,
            cols in 1usize..4,
            entries in proptest::collection::vec(-9i64..10, 16),
        ) {
            let a: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| entries[i * 4 + j]).collect()).collect();
            let m = IntMatrix::from_dense(&a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<_>>());
            prop_assert_eq!(diag_of(&m), determinantal_diag(&a));
        }
    }
}
