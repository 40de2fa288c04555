//! Dense exact linear algebra over a prime field GF(p).
//!
//! Everything else in the crate (Hom spaces, kernels, syzygies, decompositions)
//! bottoms out in the routines here. Pivoting always takes the first nonzero
//! entry, so every result is reproducible bit for bit.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

mod poly;

pub use poly::Poly;

/// The prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    /// Reduces a signed integer into [0, p).
    pub fn from_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in GF({})", self.p);
        // extended Euclid on signed values
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        self.from_i64(t0)
    }

    /// Number of products of reduced elements that fit in a u64 accumulator.
    fn accumulation_bound(self) -> usize {
        let sq = (self.p as u64 - 1).max(1).pow(2);
        ((u64::MAX - self.p as u64) / sq).min(1 << 20) as usize
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self {
            p: Self::DEFAULT_CHARACTERISTIC,
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub reduced: Mat,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Mat {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing each entry mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = field.from_i64(x);
            }
        }
        m
    }

    /// Wraps already reduced row-major data.
    pub fn from_data(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&x| x < field.p));
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    /// A single column from a reduced vector.
    pub fn column(field: PrimeField, v: &[u32]) -> Self {
        Self::from_data(field, v.len(), 1, v.to_vec())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u32> {
        self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.field.p);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let f = self.field;
        let p = f.p as u64;
        let bound = f.accumulation_bound();
        let (n, m) = (self.rows, other.cols);
        let mut out = Mat::zeros(f, n, m);
        let mut acc = vec![0u64; m];
        for i in 0..n {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut pending = 0usize;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * m..(k + 1) * m];
                for (slot, &b) in acc.iter_mut().zip(brow) {
                    *slot += a * b as u64;
                }
                pending += 1;
                if pending >= bound {
                    acc.iter_mut().for_each(|a| *a %= p);
                    pending = 0;
                }
            }
            for (j, a) in acc.iter().enumerate() {
                out.data[i * m + j] = (a % p) as u32;
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat::from_data(f, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat::from_data(f, self.rows, self.cols, data)
    }

    pub fn scale(&self, s: u32) -> Mat {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Mat::from_data(f, self.rows, self.cols, data)
    }

    /// self += s * other
    pub fn axpy(&mut self, s: u32, other: &Mat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(s, b));
        }
    }

    pub fn trace(&self) -> u32 {
        assert!(self.is_square());
        let f = self.field;
        (0..self.rows).fold(0, |acc, i| f.add(acc, self.get(i, i)))
    }

    /// [self | other]
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut out = Mat::zeros(self.field, self.rows, cols);
        for r in 0..self.rows {
            out.data[r * cols..r * cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * cols + self.cols..(r + 1) * cols].copy_from_slice(other.row(r));
        }
        out
    }

    /// [self ; other]
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat::from_data(self.field, self.rows + other.rows, self.cols, data)
    }

    /// Block-diagonal matrix built from the given blocks.
    pub fn block_diag(field: PrimeField, blocks: &[Mat]) -> Mat {
        let rows = blocks.iter().map(Mat::rows).sum();
        let cols = blocks.iter().map(Mat::cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols);
        for r in 0..b.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + b.cols].copy_from_slice(b.row(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let mut out = Mat::zeros(self.field, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            out.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Mat::from_data(self.field, rows.len(), self.cols, data)
    }

    /// Reduced row echelon form; `self` is left untouched.
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        Echelon {
            reduced: m,
            pivots,
            rank,
        }
    }

    /// Row reduces in place and returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let p = f.p as u64;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in c..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            if inv != 1 {
                for j in c..cols {
                    let x = &mut self.data[r * cols + j];
                    *x = ((*x as u64 * inv as u64) % p) as u32;
                }
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [u32]| {
                let factor = row[c];
                if factor == 0 {
                    return;
                }
                let neg = p - factor as u64;
                for j in c..cols {
                    let pv = pivot_row[j];
                    if pv != 0 {
                        row[j] = ((row[j] as u64 + neg * pv as u64) % p) as u32;
                    }
                }
            };
            before.chunks_mut(cols).for_each(eliminate);
            after.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Rows form a basis of the right null space {x : self * x = 0}.
    pub fn kernel_basis(&self) -> Mat {
        let e = self.rref();
        let cols = self.cols;
        let is_pivot = {
            let mut v = vec![false; cols];
            for &c in &e.pivots {
                v[c] = true;
            }
            v
        };
        let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
        let f = self.field;
        let mut out = Mat::zeros(f, free.len(), cols);
        for (k, &fc) in free.iter().enumerate() {
            out.data[k * cols + fc] = 1;
            for (i, &pc) in e.pivots.iter().enumerate() {
                out.data[k * cols + pc] = f.neg(e.reduced.get(i, fc));
            }
        }
        out
    }

    /// Columns spanning the null space (transpose of `kernel_basis`).
    pub fn kernel_columns(&self) -> Mat {
        self.kernel_basis().transpose()
    }

    /// Some X with self * X = b, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Mat) -> Result<Option<Mat>> {
        if b.rows != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.rows,
            });
        }
        let aug = self.hstack(b);
        let e = aug.rref();
        let n = self.cols;
        if e.pivots.iter().any(|&c| c >= n) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.field, n, b.cols);
        for (i, &pc) in e.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, e.reduced.get(i, n + j));
            }
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let e = self.hstack(&Mat::identity(self.field, n)).rref();
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return None;
        }
        Some(e.reduced.block(0, n, n, n))
    }

    /// Columns forming a basis of the column space, taken from the echelon
    /// form of the transpose (so the result is canonical for the space).
    pub fn column_space(&self) -> Mat {
        let e = self.transpose().rref();
        e.reduced.select_rows(&(0..e.rank).collect::<Vec<_>>()).transpose()
    }

    pub fn determinant(&self) -> u32 {
        assert!(self.is_square());
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u32;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let pv = m.get(c, c);
            det = f.mul(det, pv);
            let inv = f.inv(pv);
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over GF({})", self.rows, self.cols, self.field.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Incrementally maintained echelon basis of a subspace of GF(p)^n, with the
/// ability to express members in terms of the inserted vectors.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    field: PrimeField,
    len: usize,
    // reduced rows with their pivot and their expression in inserted vectors
    rows: Vec<(usize, Vec<u32>, Vec<u32>)>,
    inserted: usize,
}

impl SpanBuilder {
    pub fn new(field: PrimeField, len: usize) -> Self {
        Self {
            field,
            len,
            rows: Vec::new(),
            inserted: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The reduced basis vectors of the span (echelon form, sorted by pivot).
    pub fn basis_rows(&self) -> Vec<Vec<u32>> {
        let mut rows: Vec<_> = self.rows.iter().map(|(p, r, _)| (*p, r.clone())).collect();
        rows.sort_by_key(|(p, _)| *p);
        rows.into_iter().map(|(_, r)| r).collect()
    }

    /// Reduces `v` against the basis; returns the remainder and the combination
    /// of previously inserted vectors that was subtracted.
    fn reduce(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let f = self.field;
        let mut rem = v.to_vec();
        let mut combo = vec![0u32; self.inserted];
        for (pc, row, expr) in &self.rows {
            let c = rem[*pc];
            if c == 0 {
                continue;
            }
            for (x, &y) in rem.iter_mut().zip(row) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
            for (x, &y) in combo.iter_mut().zip(expr) {
                if y != 0 {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
        }
        (rem, combo)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).0.iter().all(|&x| x == 0)
    }

    /// Coefficients expressing `v` in the inserted vectors (only independent
    /// insertions carry weight), or `None` if `v` is outside the span.
    pub fn express(&self, v: &[u32]) -> Option<Vec<u32>> {
        let (rem, combo) = self.reduce(v);
        rem.iter().all(|&x| x == 0).then_some(combo)
    }

    /// Inserts `v`; returns true when it enlarged the span. Dependent vectors
    /// are still counted as inserted (with zero weight in later expressions).
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.len);
        let f = self.field;
        let (mut rem, combo) = self.reduce(v);
        self.inserted += 1;
        for (_, _, expr) in self.rows.iter_mut() {
            expr.push(0);
        }
        let Some(pc) = rem.iter().position(|&x| x != 0) else {
            return false;
        };
        // new row = (v - combo) / lead
        let inv = f.inv(rem[pc]);
        rem.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        let mut expr: Vec<u32> = combo.iter().map(|&c| f.mul(f.neg(c), inv)).collect();
        expr.push(inv);
        // keep the basis fully reduced at the new pivot
        for (_, row, e) in self.rows.iter_mut() {
            let c = row[pc];
            if c == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&rem) {
                *x = f.sub(*x, f.mul(c, y));
            }
            for (x, &y) in e.iter_mut().zip(&expr) {
                *x = f.sub(*x, f.mul(c, y));
            }
        }
        self.rows.push((pc, rem, expr));
        true
    }
}
