//! Exact rational linear algebra.
//!
//! Dense matrices cover the small systems (forms against variables, minors,
//! generic solves). [`SparseEchelon`] is an incremental column-by-column
//! elimination that records how each echelon row was built from the input
//! columns; the bounded-degree solver uses it to obtain both a particular
//! solution and a basis of linear relations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Rational;

mod modular;

pub use modular::{solve_modular, ModularSolve};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of [`RationalMatrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: RationalMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        RationalMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.rows).map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // first nonzero entry at or below row r
            let Some(p) = (r..self.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..self.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..self.cols {
                    let sub = m.get(r, j);
                    if !sub.is_zero() {
                        let v = m.get(i, j) - &factor * sub;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Solves `Ax = b` with free variables set to zero, or `None` if inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Standard free-variable basis of the null space.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -matrix.get(i, free);
            }
            basis.push(v);
        }
        basis
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<RationalMatrix> {
        if rows.iter().any(|&i| i >= self.rows) || cols.iter().any(|&j| j >= self.cols) {
            return Err(Error::Dimension("submatrix index out of range".into()));
        }
        Ok(RationalMatrix::from_rows(
            rows.iter().map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect()).collect(),
        ))
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Rational> {
        if rows.len() != cols.len() {
            return Err(Error::Dimension(format!("{} rows but {} columns", rows.len(), cols.len())));
        }
        self.submatrix(rows, cols)?.det()
    }

    /// Determinant by Bareiss fraction-free elimination on a row-scaled integer copy.
    pub fn det(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let l = self.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            a.push(self.row(i).iter().map(|x| x.numer() * (&l / x.denom())).collect());
            scale *= l;
        }
        let mut sign = 1;
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Ok(Rational::zero());
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        let d = Rational::new(&a[n - 1][n - 1] * sign, scale);
        Ok(d)
    }

    pub fn inverse(&self) -> Result<RationalMatrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, matrix.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }
}

/// Sparse vector: strictly increasing indices, no zero entries.
pub type SparseVec = Vec<(usize, Rational)>;

/// `a - c*b` for sparse vectors.
pub fn sparse_axpy(a: &SparseVec, c: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_dot(a: &SparseVec, b: &SparseVec) -> Rational {
    let (mut i, mut j) = (0, 0);
    let mut acc = Rational::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += &a[i].1 * &b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

#[derive(Clone, Debug)]
struct EchelonRow {
    vec: SparseVec,
    trans: SparseVec,
}

/// Incremental sparse column echelon form with transformation tracking.
///
/// Columns are pushed one at a time. Each stored row is monic at its lowest
/// index (its pivot) and records the combination of input columns it equals.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    rows: Vec<EchelonRow>,
    /// Row holding the pivot at each index, `usize::MAX` if none.
    pivot_of: Vec<usize>,
    relations: Vec<SparseVec>,
    columns: usize,
    /// One past the largest index stored in any row.
    width: usize,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    /// Kernel basis of the pushed columns, one vector per dependent column.
    pub fn relations(&self) -> &[SparseVec] {
        &self.relations
    }

    /// Reduces `v`; returns the remainder and the column combination removed.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let len = v.last().map_or(0, |(k, _)| k + 1).max(self.width);
        let mut rem = vec![Rational::zero(); len];
        for (k, x) in v {
            rem[*k] = x.clone();
        }
        let mut trans = vec![Rational::zero(); self.columns];
        for k in 0..self.pivot_of.len() {
            let r = self.pivot_of[k];
            if r == usize::MAX || rem[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut rem[k]);
            let row = &self.rows[r];
            for (i, x) in &row.vec[1..] {
                rem[*i] -= &c * x;
            }
            for (i, x) in &row.trans {
                trans[*i] += &c * x;
            }
        }
        (to_sparse_owned(rem), to_sparse_owned(trans))
    }

    /// Pushes the next column. Returns the new relation if it was dependent.
    pub fn push_column(&mut self, v: SparseVec) -> Option<SparseVec> {
        let j = self.columns;
        self.columns += 1;
        let (rem, trans) = self.reduce(&v);
        let combo = sparse_axpy(&vec![(j, Rational::one())], &Rational::one(), &trans);
        if rem.is_empty() {
            self.relations.push(combo);
            return self.relations.last().cloned();
        }
        let lead = rem[0].1.recip();
        let vec: SparseVec = rem.into_iter().map(|(k, x)| (k, x * &lead)).collect();
        let trans: SparseVec = combo.into_iter().map(|(k, x)| (k, x * &lead)).collect();
        let k = vec[0].0;
        self.width = self.width.max(vec.last().expect("nonzero").0 + 1);
        if self.pivot_of.len() <= k {
            self.pivot_of.resize(k + 1, usize::MAX);
        }
        self.pivot_of[k] = self.rows.len();
        self.rows.push(EchelonRow { vec, trans });
        None
    }

    /// Some `x` with `Σ x_j col_j = b`, or `None` when `b` is outside the span.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let (rem, trans) = self.reduce(b);
        rem.is_empty().then_some(trans)
    }
}

/// Projects `x` onto the orthogonal complement of the span of `kernel`.
///
/// When `kernel` spans the null space of a system, this turns any solution
/// into the unique solution of least Euclidean norm.
pub fn project_out(x: &SparseVec, kernel: &[SparseVec]) -> SparseVec {
    let k = kernel.len();
    if k == 0 {
        return x.clone();
    }
    let mut gram = RationalMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v = sparse_dot(&kernel[i], &kernel[j]);
            gram.set(i, j, v.clone());
            gram.set(j, i, v);
        }
    }
    let rhs: Vec<Rational> = kernel.iter().map(|v| sparse_dot(v, x)).collect();
    let y = gram.solve(&rhs).expect("gram matrix of independent vectors is invertible");
    let mut out = x.clone();
    for (v, c) in kernel.iter().zip(&y) {
        if !c.is_zero() {
            out = sparse_axpy(&out, c, v);
        }
    }
    out
}

pub fn to_dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

fn to_sparse_owned(v: Vec<Rational>) -> SparseVec {
    v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

pub fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// True when every entry is an integer of absolute value one or zero.
pub fn is_unimodular_entries(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero() || (x.is_integer() && x.abs().is_one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn rref_examples() {
        let id = RationalMatrix::identity(3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        let m = RationalMatrix::from_i64(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(RationalMatrix::zeros(2, 3).rank(), 0);
    }

    #[test]
    fn rref_idempotent() {
        let m = RationalMatrix::from_i64(&[&[2, 4, 1], &[1, 2, 0], &[3, 6, 1]]);
        let r = m.rref().matrix;
        assert_eq!(r.rref().matrix, r);
    }

    #[test]
    fn solve_examples() {
        let id = RationalMatrix::identity(2);
        assert_eq!(id.solve(&[rat(3), rat(-1)]), Some(vec![rat(3), rat(-1)]));
        let m = RationalMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.solve(&[rat(1), rat(2)]), None);
        let under = RationalMatrix::from_i64(&[&[1, 2, 3]]);
        let x = under.solve(&[rat(6)]).unwrap();
        assert_eq!(x, vec![rat(6), rat(0), rat(0)]);
        assert_eq!(under.mul_vec(&x), vec![rat(6)]);
    }

    #[test]
    fn kernel_examples() {
        assert!(RationalMatrix::identity(3).kernel().is_empty());
        let m = RationalMatrix::from_i64(&[&[1, 1]]);
        assert_eq!(m.kernel(), vec![vec![rat(-1), rat(1)]]);
        let m = RationalMatrix::from_i64(&[&[1, 2, 3, 4], &[2, 4, 6, 8]]);
        let k = m.kernel();
        assert_eq!(k.len(), 3);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn determinants() {
        assert_eq!(RationalMatrix::identity(4).det().unwrap(), rat(1));
        let m = RationalMatrix::from_i64(&[&[1, 0], &[1, 1]]);
        assert_eq!(m.minor(&[0, 1], &[0, 1]).unwrap(), rat(1));
        let m = RationalMatrix::from_i64(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 5]]);
        // cofactor expansion along the second row: -1 * (2*5 - 1*1)
        assert_eq!(m.det().unwrap(), rat(-9));
        let half = RationalMatrix::from_rows(vec![vec![crate::poly::rat2(1, 2), rat(0)], vec![rat(0), rat(3)]]);
        assert_eq!(half.det().unwrap(), crate::poly::rat2(3, 2));
        assert!(RationalMatrix::zeros(2, 3).det().is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = RationalMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(2));
        assert!(RationalMatrix::from_i64(&[&[1, 1], &[1, 1]]).inverse().is_err());
    }

    #[test]
    fn sparse_echelon_tracks_combinations() {
        // columns (1,1,0), (0,1,1), (1,2,1)
        let cols: Vec<SparseVec> = vec![
            vec![(0, rat(1)), (1, rat(1))],
            vec![(1, rat(1)), (2, rat(1))],
            vec![(0, rat(1)), (1, rat(2)), (2, rat(1))],
        ];
        let mut e = SparseEchelon::new();
        assert!(e.push_column(cols[0].clone()).is_none());
        assert!(e.push_column(cols[1].clone()).is_none());
        let rel = e.push_column(cols[2].clone()).unwrap();
        assert_eq!(rel, vec![(0, rat(-1)), (1, rat(-1)), (2, rat(1))]);
        let b: SparseVec = vec![(0, rat(2)), (1, rat(5)), (2, rat(3))];
        let x = e.solve(&b).unwrap();
        let mut acc: SparseVec = Vec::new();
        for (j, c) in &x {
            acc = sparse_axpy(&acc, &-c.clone(), &cols[*j]);
        }
        assert_eq!(acc, b);
        assert!(e.solve(&vec![(0, rat(1))]).is_none());
    }

    #[test]
    fn min_norm_projection() {
        // x + y = 2: least-norm solution (1, 1)
        let x: SparseVec = vec![(0, rat(2))];
        let kernel = vec![vec![(0, rat(-1)), (1, rat(1))]];
        assert_eq!(project_out(&x, &kernel), vec![(0, rat(1)), (1, rat(1))]);
    }
}
