//! Exact arithmetic and linear algebra over Z_d for odd primes d.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest modulus accepted by [`Prime::new`].
pub const MAX_PRIME: u32 = 97;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZdError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("modulus {0} exceeds the supported maximum {MAX_PRIME}")]
    TooLarge(u32),
    #[error("0 has no inverse mod {0}")]
    ZeroInverse(u32),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u32, u32),
}

/// An odd prime modulus `3 <= d <= 97`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub fn new(d: u32) -> Result<Self, ZdError> {
        if d > MAX_PRIME {
            return Err(ZdError::TooLarge(d));
        }
        if d < 3
            || d.is_multiple_of(2)
            || (3..d)
                .take_while(|k| k * k <= d)
                .any(|k| d.is_multiple_of(k))
        {
            return Err(ZdError::NotOddPrime(d));
        }
        Ok(Prime(d))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_usize(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.0
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.0 - b) % self.0
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        (self.0 - a) % self.0
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.0
    }

    pub fn inv(self, a: u32) -> Result<u32, ZdError> {
        mod_inverse(a, self)
    }

    /// The inverse of 2, `(d + 1) / 2`.
    #[inline]
    pub fn half(self) -> u32 {
        self.0.div_ceil(2)
    }

    pub fn dot(self, a: &[u32], b: &[u32]) -> u32 {
        let s: u64 = a.iter().zip(b).map(|(&x, &y)| (x * y) as u64).sum();
        (s % self.0 as u64) as u32
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl TryFrom<u32> for Prime {
    type Error = ZdError;
    fn try_from(d: u32) -> Result<Self, Self::Error> {
        Prime::new(d)
    }
}

impl<'de> Deserialize<'de> for Prime {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let d = u32::deserialize(de)?;
        Prime::new(d).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Multiplicative inverse by the extended Euclidean algorithm.
pub fn mod_inverse(a: u32, d: Prime) -> Result<u32, ZdError> {
    let a = a % d.get();
    if a == 0 {
        return Err(ZdError::ZeroInverse(d.get()));
    }
    let (mut r0, mut r1) = (d.get() as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    Ok(d.reduce(t0))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZdVector {
    modulus: Prime,
    entries: Vec<u32>,
}

impl ZdVector {
    /// Builds a vector, reducing every entry mod d.
    pub fn new(modulus: Prime, entries: impl IntoIterator<Item = i64>) -> Self {
        let entries = entries.into_iter().map(|x| modulus.reduce(x)).collect();
        ZdVector { modulus, entries }
    }

    pub fn from_reduced(modulus: Prime, entries: Vec<u32>) -> Self {
        debug_assert!(entries.iter().all(|&x| x < modulus.get()));
        ZdVector { modulus, entries }
    }

    pub fn zeros(modulus: Prime, len: usize) -> Self {
        ZdVector {
            modulus,
            entries: vec![0; len],
        }
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.entries
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.entries
    }

    pub fn dot(&self, other: &ZdVector) -> Result<u32, ZdError> {
        if self.len() != other.len() {
            return Err(ZdError::DimensionMismatch(self.len(), other.len()));
        }
        Ok(self.modulus.dot(&self.entries, &other.entries))
    }
}

impl std::ops::Index<usize> for ZdVector {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.entries[i]
    }
}

/// Dense row-major matrix over Z_d.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZdMatrix {
    modulus: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of [`ZdMatrix::row_reduce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReduction {
    pub rref: ZdMatrix,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

impl ZdMatrix {
    pub fn zeros(modulus: Prime, rows: usize, cols: usize) -> Self {
        ZdMatrix {
            modulus,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(modulus: Prime, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from signed rows, reducing every entry. All rows must
    /// have the same length.
    pub fn from_rows<R: AsRef<[i64]>>(modulus: Prime, rows: &[R]) -> Result<Self, ZdError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(ZdError::DimensionMismatch(cols, r.len()));
            }
            data.extend(r.iter().map(|&x| modulus.reduce(x)));
        }
        Ok(ZdMatrix {
            modulus,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_fn(
        modulus: Prime,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> i64,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(modulus.reduce(f(i, j)));
            }
        }
        ZdMatrix {
            modulus,
            rows,
            cols,
            data,
        }
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> ZdVector {
        ZdVector::from_reduced(self.modulus, self.row(i).to_vec())
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> ZdMatrix {
        let mut t = ZdMatrix::zeros(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Sub-matrix made of the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> ZdMatrix {
        ZdMatrix::from_fn(self.modulus, self.rows, cols.len(), |i, j| {
            self[(i, cols[j])] as i64
        })
    }

    /// Stacks `other` to the right of `self`.
    pub fn hstack(&self, other: &ZdMatrix) -> Result<ZdMatrix, ZdError> {
        if self.rows != other.rows {
            return Err(ZdError::DimensionMismatch(self.rows, other.rows));
        }
        Ok(ZdMatrix::from_fn(
            self.modulus,
            self.rows,
            self.cols + other.cols,
            |i, j| {
                if j < self.cols {
                    self[(i, j)] as i64
                } else {
                    other[(i, j - self.cols)] as i64
                }
            },
        ))
    }

    pub fn vstack(&self, other: &ZdMatrix) -> Result<ZdMatrix, ZdError> {
        if self.cols != other.cols {
            return Err(ZdError::DimensionMismatch(self.cols, other.cols));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(ZdMatrix {
            modulus: self.modulus,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>, ZdError> {
        if v.len() != self.cols {
            return Err(ZdError::DimensionMismatch(self.cols, v.len()));
        }
        Ok((0..self.rows)
            .map(|i| self.modulus.dot(self.row(i), v))
            .collect())
    }

    pub fn mul(&self, other: &ZdMatrix) -> Result<ZdMatrix, ZdError> {
        if self.cols != other.rows {
            return Err(ZdError::DimensionMismatch(self.cols, other.rows));
        }
        let p = self.modulus;
        Ok(ZdMatrix::from_fn(p, self.rows, other.cols, |i, j| {
            (0..self.cols)
                .map(|k| (self[(i, k)] * other[(k, j)]) as i64)
                .sum()
        }))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[i] *= c`.
    pub fn scale_row(&mut self, i: usize, c: u32) {
        let p = self.modulus;
        for x in self.row_mut(i) {
            *x = p.mul(*x, c);
        }
    }

    /// `row[dst] += c * row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.modulus;
        for j in 0..self.cols {
            let s = self[(src, j)];
            let x = &mut self.data[dst * self.cols + j];
            *x = p.add(*x, p.mul(c, s));
        }
    }

    /// Reduced row-echelon form. Pivots are taken at the leftmost nonzero
    /// column and normalized to 1.
    pub fn row_reduce(&self) -> RowReduction {
        let mut m = self.clone();
        let p = self.modulus;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m[(i, c)] != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = p.inv(m[(r, c)]).expect("nonzero pivot");
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r && m[(i, c)] != 0 {
                    let f = p.neg(m[(i, c)]);
                    m.add_row_multiple(i, r, f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        RowReduction {
            rref: m,
            rank: r,
            pivot_columns: pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().rank
    }

    /// True when both matrices span the same row space.
    pub fn same_row_space(&self, other: &ZdMatrix) -> bool {
        if self.cols != other.cols {
            return false;
        }
        let a = self.row_reduce();
        let b = other.row_reduce();
        a.rank == b.rank && (0..a.rank).all(|i| a.rref.row(i) == b.rref.row(i))
    }

    /// Returns some `x` with `self * x = s`, or `None` when inconsistent.
    pub fn solve(&self, s: &[u32]) -> Result<Option<Vec<u32>>, ZdError> {
        if s.len() != self.rows {
            return Err(ZdError::DimensionMismatch(self.rows, s.len()));
        }
        let aug = self.hstack(&ZdMatrix::from_fn(self.modulus, self.rows, 1, |i, _| {
            s[i] as i64
        }))?;
        let red = aug.row_reduce();
        if red.pivot_columns.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (i, &c) in red.pivot_columns.iter().enumerate() {
            x[c] = red.rref[(i, self.cols)];
        }
        Ok(Some(x))
    }

    /// Basis of the right null space `{x : self * x = 0}`, one vector per
    /// free column.
    pub fn null_space(&self) -> Vec<Vec<u32>> {
        let red = self.row_reduce();
        let p = self.modulus;
        let free: Vec<usize> = (0..self.cols)
            .filter(|c| !red.pivot_columns.contains(c))
            .collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![0; self.cols];
                x[f] = 1;
                for (i, &c) in red.pivot_columns.iter().enumerate() {
                    x[c] = p.neg(red.rref[(i, f)]);
                }
                x
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for ZdMatrix {
    type Output = u32;
    fn index(&self, (i, j): (usize, usize)) -> &u32 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ZdMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u32 {
        &mut self.data[i * self.cols + j]
    }
}

/// Solves `m * x = s`. `Ok(None)` means the system is inconsistent.
pub fn solve_linear(m: &ZdMatrix, s: &ZdVector) -> Result<Option<ZdVector>, ZdError> {
    if m.modulus() != s.modulus() {
        return Err(ZdError::ModulusMismatch(
            m.modulus().get(),
            s.modulus().get(),
        ));
    }
    Ok(m.solve(s.as_slice())?
        .map(|x| ZdVector::from_reduced(m.modulus(), x)))
}

/// A Pauli operator label `(a | b)` over `Z_d^N + Z_d^N`, standing for
/// `Z^a1 X^b1 (x) ... (x) Z^aN X^bN` up to phase.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymplecticVector {
    modulus: Prime,
    a: Vec<u32>,
    b: Vec<u32>,
}

impl SymplecticVector {
    pub fn new(modulus: Prime, a: Vec<u32>, b: Vec<u32>) -> Result<Self, ZdError> {
        if a.len() != b.len() {
            return Err(ZdError::DimensionMismatch(a.len(), b.len()));
        }
        let a = a.into_iter().map(|x| x % modulus.get()).collect();
        let b = b.into_iter().map(|x| x % modulus.get()).collect();
        Ok(SymplecticVector { modulus, a, b })
    }

    /// Splits a concatenated `(a_1..a_N, b_1..b_N)` row.
    pub fn from_row(modulus: Prime, row: &[u32]) -> Result<Self, ZdError> {
        if !row.len().is_multiple_of(2) {
            return Err(ZdError::DimensionMismatch(row.len(), row.len() + 1));
        }
        let n = row.len() / 2;
        Self::new(modulus, row[..n].to_vec(), row[n..].to_vec())
    }

    pub fn zeros(modulus: Prime, n: usize) -> Self {
        SymplecticVector {
            modulus,
            a: vec![0; n],
            b: vec![0; n],
        }
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    pub fn num_qudits(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn b(&self) -> &[u32] {
        &self.b
    }

    pub fn to_row(&self) -> Vec<u32> {
        self.a.iter().chain(&self.b).copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().chain(&self.b).all(|&x| x == 0)
    }

    /// `a . b` (the exponent sum that separates `Z^a X^b` from the Weyl
    /// ordering).
    pub fn ab_dot(&self) -> u32 {
        self.modulus.dot(&self.a, &self.b)
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.modulus;
        SymplecticVector {
            modulus: p,
            a: self.a.iter().map(|&x| p.mul(x, c)).collect(),
            b: self.b.iter().map(|&x| p.mul(x, c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ZdError> {
        self.check_compatible(other)?;
        let p = self.modulus;
        Ok(SymplecticVector {
            modulus: p,
            a: self
                .a
                .iter()
                .zip(&other.a)
                .map(|(&x, &y)| p.add(x, y))
                .collect(),
            b: self
                .b
                .iter()
                .zip(&other.b)
                .map(|(&x, &y)| p.add(x, y))
                .collect(),
        })
    }

    /// Reorders qudits: qudit `j` of the result is qudit `perm[j]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        SymplecticVector {
            modulus: self.modulus,
            a: perm.iter().map(|&k| self.a[k]).collect(),
            b: perm.iter().map(|&k| self.b[k]).collect(),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), ZdError> {
        if self.modulus != other.modulus {
            return Err(ZdError::ModulusMismatch(
                self.modulus.get(),
                other.modulus.get(),
            ));
        }
        if self.a.len() != other.a.len() {
            return Err(ZdError::DimensionMismatch(self.a.len(), other.a.len()));
        }
        Ok(())
    }
}

/// `a . b' - b . a'` mod d. Zero iff the two Paulis commute; in general
/// `P(p) P(q) = w^{<p,q>} P(q) P(p)`.
pub fn symplectic_product(p: &SymplecticVector, q: &SymplecticVector) -> Result<u32, ZdError> {
    p.check_compatible(q)?;
    let d = p.modulus;
    Ok(d.sub(d.dot(&p.a, &q.b), d.dot(&p.b, &q.a)))
}
