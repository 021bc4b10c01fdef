//! Dense linear algebra over a prime field `F_p`.
//!
//! Every matrix carries its modulus. Elements are stored as residues in
//! `0..p`, row-major. All reductions follow the RREF conventions below so
//! that bases, coordinates and solutions are reproducible bit-for-bit.

use std::fmt;

use crate::error::{Error, Result};

/// Default characteristic of the ground field.
pub const DEFAULT_PRIME: u32 = 101;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn add(p: u32, a: u32, b: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(p: u32, a: u32, b: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul(p: u32, a: u32, b: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg(p: u32, a: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn inv(p: u32, a: u32) -> u32 {
    assert!(!a.is_multiple_of(p), "inverse of zero in F_{p}");
    pow(p, a, p - 2)
}

pub fn pow(p: u32, a: u32, mut e: u32) -> u32 {
    let mut base = a % p;
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(p, acc, base);
        }
        base = mul(p, base, base);
        e >>= 1;
    }
    acc
}

/// Reduce a signed integer into `0..p`.
pub fn reduce(p: u32, v: i64) -> u32 {
    v.rem_euclid(p as i64) as u32
}

/// Symmetric representative in `(-p/2, p/2]`, handy for display.
pub fn signed(p: u32, v: u32) -> i64 {
    if v > p / 2 {
        v as i64 - p as i64
    } else {
        v as i64
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<F_{}>{}x{}[", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

/// Result of row reduction: the RREF itself, its pivot columns and rank.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns that carry no pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.matrix.cols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.matrix.cols).filter(|&c| !is_pivot[c]).collect()
    }
}

impl Matrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Matrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn from_vec(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows x cols");
        let data = data.into_iter().map(|v| v % p).collect();
        Matrix { p, rows, cols, data }
    }

    /// Build from signed rows; every row must have the same length.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row.iter().map(|&v| reduce(p, v)));
        }
        Matrix { p, rows: r, cols: c, data }
    }

    /// Single column from a vector.
    pub fn column_vec(p: u32, v: &[u32]) -> Self {
        Matrix::from_vec(p, v.len(), 1, v.to_vec())
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn to_signed_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| signed(self.p, self.get(r, c))).collect())
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn from_columns(p: u32, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Matrix::zeros(p, rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, &v) in col.iter().enumerate() {
                m.data[r * m.cols + c] = v;
            }
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p, "field mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch in product {:?} * {:?}", self.shape(), other.shape());
        let p = self.p as u64;
        let mut out = Matrix::zeros(self.p, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot += a * b as u64;
                }
                // keep the accumulator well away from overflow
                if k % 1024 == 1023 {
                    acc.iter_mut().for_each(|a| *a %= p);
                }
            }
            for (c, a) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = (a % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| {
                let s: u64 = self.row(r).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| add(p, a, b)).collect();
        Matrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in difference");
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| sub(p, a, b)).collect();
        Matrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(neg(self.p, 1 % self.p))
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let p = self.p;
        let data = self.data.iter().map(|&a| mul(p, a, s % p)).collect();
        Matrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.p, self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut m = Matrix::zeros(self.p, self.rows + other.rows, self.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, 0, other);
        m
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.p, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for r in 0..b.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + b.cols].copy_from_slice(&b.data[r * b.cols..(r + 1) * b.cols]);
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(self.p, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            m.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.p, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.p, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            m.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(self.row(r));
        }
        m
    }

    pub fn rref(&self) -> Rref {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(sel) = (prow..m.rows).find(|&r| m.data[r * m.cols + c] != 0) else {
                continue;
            };
            if sel != prow {
                for k in 0..m.cols {
                    m.data.swap(sel * m.cols + k, prow * m.cols + k);
                }
            }
            let iv = inv(p, m.data[prow * m.cols + c]);
            for k in c..m.cols {
                let idx = prow * m.cols + k;
                m.data[idx] = mul(p, m.data[idx], iv);
            }
            for r in 0..m.rows {
                if r == prow {
                    continue;
                }
                let factor = m.data[r * m.cols + c];
                if factor == 0 {
                    continue;
                }
                for k in c..m.cols {
                    let pv = m.data[prow * m.cols + k];
                    if pv != 0 {
                        let idx = r * m.cols + k;
                        m.data[idx] = sub(p, m.data[idx], mul(p, factor, pv));
                    }
                }
            }
            pivots.push(c);
            prow += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Columns form a basis of the null space. The basis vector attached to
    /// free column `j` has a 1 in position `j` and 0 in every other free
    /// position, so coordinates of a kernel vector are its free entries.
    pub fn kernel_basis(&self) -> Matrix {
        let r = self.rref();
        let free = r.free_columns();
        let mut k = Matrix::zeros(self.p, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, 1);
            for (row, &pc) in r.pivots.iter().enumerate() {
                let v = r.matrix.get(row, fc);
                k.set(pc, j, neg(self.p, v));
            }
        }
        k
    }

    /// Solve `self * x = b`. Free variables are set to zero.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != b.rows {
            return Err(Error::Dimension(format!(
                "solve: A has {} rows but b has {}",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b);
        let r = aug.rref();
        let n = self.cols;
        if r.pivots.iter().any(|&c| c >= n) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.p, n, b.cols);
        for (row, &pc) in r.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.matrix.get(row, n + j));
            }
        }
        Ok(Some(x))
    }

    /// Solve for a single right-hand side vector.
    pub fn solve_vec(&self, b: &[u32]) -> Option<Vec<u32>> {
        self.solve(&Matrix::column_vec(self.p, b))
            .expect("dimensions checked by caller")
            .map(|x| x.column(0))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.p, self.rows)).ok()??;
        if self.mul(&x) == Matrix::identity(self.p, self.rows) {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn pow(&self, e: usize) -> Matrix {
        let mut acc = Matrix::identity(self.p, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Basis of the column space: the columns of `self` at pivot positions.
    pub fn column_space(&self) -> Matrix {
        let r = self.rref();
        self.select_columns(&r.pivots)
    }
}

/// Coordinates on a quotient `F_p^n / S`.
///
/// The subspace `S` is stored as the RREF of its spanning vectors (as rows).
/// Coordinates of a class are the entries at the non-pivot positions after
/// reduction; the standard basis vectors at those positions form a
/// complement of `S`.
#[derive(Clone, Debug)]
pub struct QuotientChart {
    p: u32,
    ambient: usize,
    basis_rows: Matrix,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl QuotientChart {
    /// `span` has `ambient` rows; its columns span the subspace.
    pub fn new(span: &Matrix) -> Self {
        let p = span.prime();
        let ambient = span.rows();
        let r = span.transpose().rref();
        let rank = r.rank();
        let basis_rows = r.matrix.block(0, 0, rank, ambient);
        let free = r.free_columns();
        QuotientChart { p, ambient, basis_rows, pivots: r.pivots, free }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn sub_dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_positions(&self) -> &[usize] {
        &self.free
    }

    /// Normal form of `v` modulo the subspace.
    pub fn normal_form(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient);
        let p = self.p;
        let mut w = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let f = w[pc];
            if f == 0 {
                continue;
            }
            for (slot, &b) in w.iter_mut().zip(self.basis_rows.row(i)) {
                if b != 0 {
                    *slot = sub(p, *slot, mul(p, f, b));
                }
            }
        }
        w
    }

    pub fn coords(&self, v: &[u32]) -> Vec<u32> {
        let w = self.normal_form(v);
        self.free.iter().map(|&c| w[c]).collect()
    }

    pub fn lift(&self, coords: &[u32]) -> Vec<u32> {
        assert_eq!(coords.len(), self.free.len());
        let mut v = vec![0; self.ambient];
        for (&c, &x) in self.free.iter().zip(coords) {
            v[c] = x % self.p;
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.normal_form(v).iter().all(|&x| x == 0)
    }

    /// Matrix of the projection `F_p^n -> quotient`, in coordinates.
    pub fn projection(&self) -> Matrix {
        let mut m = Matrix::zeros(self.p, self.dim(), self.ambient);
        let mut e = vec![0; self.ambient];
        for c in 0..self.ambient {
            e[c] = 1;
            for (r, x) in self.coords(&e).into_iter().enumerate() {
                m.set(r, c, x);
            }
            e[c] = 0;
        }
        m
    }

    /// Matrix of the section `quotient -> F_p^n` picked out by the chart.
    pub fn section(&self) -> Matrix {
        let mut m = Matrix::zeros(self.p, self.ambient, self.dim());
        for (j, &c) in self.free.iter().enumerate() {
            m.set(c, j, 1);
        }
        m
    }
}

/// Coordinates of `v` with respect to a kernel basis produced by
/// [`Matrix::kernel_basis`] on a matrix whose RREF has the given free columns.
pub fn kernel_coords(free: &[usize], v: &[u32]) -> Vec<u32> {
    free.iter().map(|&c| v[c]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity() {
        let i = Matrix::identity(101, 2);
        let r = i.rref();
        assert_eq!(r.matrix, i);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank(), 2);
    }

    #[test]
    fn rref_zero() {
        let z = Matrix::zeros(101, 3, 4);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_hand_reduction_f5() {
        let m = Matrix::from_rows(5, &[vec![2, 4], vec![1, 2]]);
        let r = m.rref();
        assert_eq!(r.matrix, Matrix::from_rows(5, &[vec![1, 2], vec![0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank(), 1);
    }

    #[test]
    fn solve_examples() {
        let i = Matrix::identity(101, 2);
        let b = Matrix::from_rows(101, &[vec![3], vec![4]]);
        assert_eq!(i.solve(&b).unwrap(), Some(b.clone()));

        let z = Matrix::zeros(101, 2, 2);
        let b = Matrix::from_rows(101, &[vec![1], vec![0]]);
        assert_eq!(z.solve(&b).unwrap(), None);

        let a = Matrix::from_rows(5, &[vec![1, 1]]);
        let b = Matrix::from_rows(5, &[vec![3]]);
        assert_eq!(a.solve(&b).unwrap(), Some(Matrix::from_rows(5, &[vec![3], vec![0]])));
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = Matrix::identity(101, 2);
        let b = Matrix::zeros(101, 3, 1);
        assert!(matches!(a.solve(&b), Err(Error::Dimension(_))));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(101, 3).kernel_basis().cols(), 0);
        let k = Matrix::zeros(101, 2, 3).kernel_basis();
        assert_eq!(k, Matrix::identity(101, 3));
        let k = Matrix::from_rows(5, &[vec![1, 2]]).kernel_basis();
        assert_eq!(k, Matrix::from_rows(5, &[vec![3], vec![1]]));
    }

    #[test]
    fn quotient_chart_roundtrip() {
        let span = Matrix::from_rows(7, &[vec![1], vec![1], vec![0]]);
        let q = QuotientChart::new(&span);
        assert_eq!(q.dim(), 2);
        assert!(q.contains(&[3, 3, 0]));
        let c = q.coords(&[1, 0, 0]);
        let back = q.lift(&c);
        let diff: Vec<u32> = back.iter().zip([1u32, 0, 0]).map(|(&a, b)| sub(7, a, b)).collect();
        assert!(q.contains(&diff));
        assert_eq!(q.projection().mul(&q.section()), Matrix::identity(7, 2));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_rows(101, &[vec![2, 1], vec![7, 5]]);
        let mi = m.inverse().unwrap();
        assert_eq!(m.mul(&mi), Matrix::identity(101, 2));
        assert!(Matrix::from_rows(101, &[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }
}
