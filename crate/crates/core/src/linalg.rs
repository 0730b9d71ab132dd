//! Exact linear algebra over a prime field GF(p).
//!
//! Linear maps use the column-vector convention throughout: a map
//! `F^m → F^n` is an `n × m` [`Matrix`]. Subspaces are stored as the
//! nonzero rows of a reduced row echelon form, which is canonical, so two
//! [`Subspace`] values are equal exactly when they span the same space.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// The prime field GF(p), `2 <= p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    p: u32,
}

impl Default for Field {
    fn default() -> Self {
        Field { p: 2 }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field { p: p as u32 })
    }

    pub const fn gf2() -> Self {
        Field { p: 2 }
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
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

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in GF({})", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    fn check_same(self, other: Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.p,
                right: other.p,
            })
        }
    }
}

/// Dense row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})^{{{}x{}}}{:?}", self.field.p, self.rows, self.cols, self.to_rows())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    /// `cols` is needed to describe matrices with zero rows.
    pub fn from_rows<R: AsRef<[i64]>>(field: Field, cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::RaggedRows {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row.iter().map(|&x| field.reduce(x)));
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix from rows already reduced into `[0, p)`.
    pub fn from_field_rows(field: Field, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            data.extend(row.iter().map(|&x| x % field.p));
        }
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % field.p);
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> Field {
        self.field
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.field.check_same(rhs.field)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, rhs.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, x: &[u32]) -> Result<Vec<u32>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    pub fn try_add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.field.check_same(rhs.field)?;
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        let f = self.field;
        Ok(Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.add(a, b)).collect(),
        })
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let f = self.field;
        Matrix {
            data: self.data.iter().map(|&a| f.mul(a, s % f.p)).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.field.p - 1)
    }

    /// Copy of the column range `[start, start + len)`.
    pub fn column_block(&self, start: usize, len: usize) -> Matrix {
        Matrix::from_fn(self.field, self.rows, len, |i, j| self.get(i, start + j))
    }

    /// Copy of the row range `[start, start + len)`.
    pub fn row_block(&self, start: usize, len: usize) -> Matrix {
        Matrix {
            field: self.field,
            rows: len,
            cols: self.cols,
            data: self.data[start * self.cols..(start + len) * self.cols].to_vec(),
        }
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn hstack(field: Field, rows: usize, blocks: &[&Matrix]) -> Result<Matrix> {
        let mut cols = 0;
        for b in blocks {
            field.check_same(b.field)?;
            if b.rows != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: b.rows,
                });
            }
            cols += b.cols;
        }
        let mut out = Matrix::zeros(field, rows, cols);
        let mut c0 = 0;
        for b in blocks {
            out.set_block(0, c0, b);
            c0 += b.cols;
        }
        Ok(out)
    }

    pub fn vstack(field: Field, cols: usize, blocks: &[&Matrix]) -> Result<Matrix> {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            field.check_same(b.field)?;
            if b.cols != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: b.cols,
                });
            }
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Reduced row echelon form (same shape, zero rows last) and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let (rows, cols) = self.shape();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    m.data.swap(r * cols + j, pr * cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in c..cols {
                m.data[r * cols + j] = f.mul(m.data[r * cols + j], inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let a = m.get(i, c);
                if a == 0 {
                    continue;
                }
                for j in c..cols {
                    let v = f.mul(a, m.data[r * cols + j]);
                    m.data[i * cols + j] = f.sub(m.data[i * cols + j], v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Null space `{x : M x = 0}` inside `F^cols`.
    pub fn kernel(&self) -> Subspace {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let gens: Vec<Vec<u32>> = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, free));
                }
                v
            })
            .collect();
        Subspace::span(f, self.cols, &gens)
    }

    /// Column space inside `F^rows`.
    pub fn image(&self) -> Subspace {
        Subspace::row_span(&self.transpose())
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    /// Panics on shape or field mismatch; use [`Matrix::try_mul`] otherwise.
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

/// A linear subspace of `F^n`, stored as its canonical RREF basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(GF({}), dim {} in F^{}, {:?})",
            self.basis.field.p,
            self.dim(),
            self.ambient_dim(),
            self.basis.to_rows()
        )
    }
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        Subspace {
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the rows of `m`, inside `F^{m.cols}`.
    pub fn row_span(m: &Matrix) -> Self {
        let (r, pivots) = m.rref();
        Subspace {
            basis: r.row_block(0, pivots.len()),
            pivots,
        }
    }

    pub fn span(field: Field, ambient_dim: usize, vectors: &[Vec<u32>]) -> Self {
        Self::row_span(&Matrix::from_field_rows(field, ambient_dim, vectors))
    }

    pub fn field(&self) -> Field {
        self.basis.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Basis rows in RREF.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        self.field().check_same(other.field())?;
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::AmbientMismatch {
                left: self.ambient_dim(),
                right: other.ambient_dim(),
            });
        }
        Ok(())
    }

    /// Residue of `x` after eliminating the pivot coordinates.
    fn reduce(&self, x: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut v = x.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let a = v[pc];
            if a == 0 {
                continue;
            }
            for (vj, &bj) in v.iter_mut().zip(self.basis.row(i)) {
                *vj = f.sub(*vj, f.mul(a, bj));
            }
        }
        v
    }

    pub fn contains(&self, x: &[u32]) -> bool {
        x.len() == self.ambient_dim() && self.reduce(x).iter().all(|&a| a == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.check_compatible(other).is_ok()
            && (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    /// Coordinates of `x` in this basis, or `None` if `x` is not a member.
    pub fn coordinates(&self, x: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(x) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| x[pc]).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let stacked = Matrix::vstack(self.field(), self.ambient_dim(), &[&self.basis, &other.basis])?;
        Ok(Subspace::row_span(&stacked))
    }

    /// Intersection, via the kernel of `[Uᵀ | -Vᵀ]`: every `(a, b)` with
    /// `aU = bV` yields the common vector `aU`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let f = self.field();
        let n = self.ambient_dim();
        let (r, s) = (self.dim(), other.dim());
        let block = Matrix::hstack(f, n, &[&self.basis.transpose(), &other.basis.transpose().neg()])?;
        let ker = block.kernel();
        let coeffs = ker.basis.column_block(0, r);
        let common = &coeffs * &self.basis;
        debug_assert_eq!(ker.basis.cols, r + s);
        Ok(Subspace::row_span(&common))
    }

    /// `{m x : x ∈ self}` inside `F^{m.rows}`.
    pub fn image_under(&self, m: &Matrix) -> Result<Subspace> {
        self.field().check_same(m.field)?;
        if m.cols != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: m.cols,
                found: self.ambient_dim(),
            });
        }
        Ok(Subspace::row_span(&(&self.basis * &m.transpose())))
    }

    /// `{x : m x ∈ self}` inside `F^{m.cols}`.
    pub fn preimage_under(&self, m: &Matrix) -> Result<Subspace> {
        self.field().check_same(m.field)?;
        if m.rows != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: m.rows,
                found: self.ambient_dim(),
            });
        }
        let q = QuotientSpace::new(self.ambient_dim(), self)?;
        Ok((&q.map * m).kernel())
    }

    pub fn quotient(&self) -> QuotientSpace {
        QuotientSpace::new(self.ambient_dim(), self).expect("ambient dim matches by construction")
    }

    /// `self ⊕ other` inside `F^{n + m}`.
    pub fn direct_sum(&self, other: &Subspace) -> Result<Subspace> {
        self.field().check_same(other.field())?;
        let (n, m) = (self.ambient_dim(), other.ambient_dim());
        let f = self.field();
        let mut gens = Matrix::zeros(f, self.dim() + other.dim(), n + m);
        gens.set_block(0, 0, &self.basis);
        gens.set_block(self.dim(), n, &other.basis);
        Ok(Subspace::row_span(&gens))
    }

    /// Inclusion matrix `F^{dim} → F^{ambient}` (basis vectors as columns).
    pub fn inclusion(&self) -> Matrix {
        self.basis.transpose()
    }
}

/// `F^n / K` with its canonical projection.
///
/// The projection keeps the coordinates that are not pivots of `K`'s RREF
/// basis after eliminating the pivot coordinates, so `map · k = 0` for every
/// `k ∈ K` and `map` has full row rank `n - dim K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotientSpace {
    killed: Subspace,
    free: Vec<usize>,
    map: Matrix,
}

impl QuotientSpace {
    pub fn new(ambient_dim: usize, killed: &Subspace) -> Result<Self> {
        if killed.ambient_dim() != ambient_dim {
            return Err(Error::AmbientMismatch {
                left: ambient_dim,
                right: killed.ambient_dim(),
            });
        }
        let f = killed.field();
        let mut is_pivot = vec![false; ambient_dim];
        for &c in &killed.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..ambient_dim).filter(|&c| !is_pivot[c]).collect();
        let mut map = Matrix::zeros(f, free.len(), ambient_dim);
        for (row, &j) in free.iter().enumerate() {
            map.set(row, j, 1);
            for (i, &pc) in killed.pivots.iter().enumerate() {
                map.set(row, pc, f.neg(killed.basis.get(i, j)));
            }
        }
        Ok(QuotientSpace {
            killed: killed.clone(),
            free,
            map,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.map.cols
    }

    pub fn dim(&self) -> usize {
        self.map.rows
    }

    pub fn killed(&self) -> &Subspace {
        &self.killed
    }

    /// Projection `F^n → F^n / K`, a `(n - dim K) × n` matrix.
    pub fn map(&self) -> &Matrix {
        &self.map
    }

    pub fn project(&self, x: &[u32]) -> Result<Vec<u32>> {
        self.map.apply(x)
    }

    /// Section of the projection: places quotient coordinates on the free
    /// (non-pivot) columns.
    pub fn lift(&self, y: &[u32]) -> Result<Vec<u32>> {
        if y.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: y.len(),
            });
        }
        let mut x = vec![0; self.ambient_dim()];
        for (&c, &v) in self.free.iter().zip(y) {
            x[c] = v;
        }
        Ok(x)
    }

    /// Matrix of [`QuotientSpace::lift`], `n × (n - dim K)`.
    pub fn section(&self) -> Matrix {
        let f = self.killed.field();
        let mut s = Matrix::zeros(f, self.ambient_dim(), self.dim());
        for (j, &c) in self.free.iter().enumerate() {
            s.set(c, j, 1);
        }
        s
    }

    /// Preimage of a subspace of the quotient: `q⁻¹(t) ⊇ K`.
    pub fn pull_back(&self, t: &Subspace) -> Result<Subspace> {
        t.preimage_under(&self.map)
    }

    pub fn push_forward(&self, u: &Subspace) -> Result<Subspace> {
        u.image_under(&self.map)
    }
}
