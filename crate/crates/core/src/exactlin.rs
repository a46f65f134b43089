//! Exact linear algebra over the rationals.
//!
//! Everything downstream (brackets, derivation systems, prolongation
//! components) reduces to the handful of operations here: reduced row
//! echelon form, nullspaces, and subspace arithmetic. Subspaces are stored
//! as the canonical RREF of a spanning set, so equality of subspaces is
//! equality of their basis matrices.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::par;

pub type Rational = BigRational;

/// Integer as a rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den` as a rational. Panics when `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    debug_assert_eq!(acc.len(), v.len());
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

pub fn scale_vec(c: &Rational, v: &[Rational]) -> Vec<Rational> {
    v.iter().map(|x| c * x).collect()
}

pub fn sub_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Rational::one())
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Builds a matrix from rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Self {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<Rational>]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&x| q(x)).collect()
            })
            .collect();
        Self::from_rows(cols, rows).expect("row lengths checked above")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Rational) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for (a, x) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: scale_vec(c, &self.data),
        }
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn pow(&self, e: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let mut out = Matrix::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        rref(self).1
    }

    /// Inverse of a square matrix, or `Error::Singular`.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Rational::one());
        }
        let (red, _) = rref(&aug);
        for i in 0..n {
            if !red.get(i, i).is_one() {
                return Err(Error::Singular);
            }
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }

    /// Row-major flattening, used for the endomorphism-space embedding.
    pub fn to_flat(&self) -> Vec<Rational> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form and rank.
///
/// Pivots are normalised to 1 and zero rows are kept at the bottom, so the
/// returned matrix has the same shape as the input.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    let mut rows = m.row_vecs();
    let rank = rref_in_place(&mut rows, m.cols);
    let mut data = Vec::with_capacity(m.rows * m.cols);
    for r in rows {
        data.extend(r);
    }
    (
        Matrix {
            rows: m.rows,
            cols: m.cols,
            data,
        },
        rank,
    )
}

/// Gauss-Jordan elimination on a list of rows. Returns the rank; the first
/// `rank` rows hold the reduced basis afterwards.
pub(crate) fn rref_in_place(rows: &mut [Vec<Rational>], cols: usize) -> usize {
    let mut lead = 0;
    for col in 0..cols {
        if lead == rows.len() {
            break;
        }
        let Some(p) = (lead..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(lead, p);
        let inv = rows[lead][col].recip();
        if !inv.is_one() {
            for x in rows[lead].iter_mut().skip(col) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot = rows[lead].clone();
        par::for_each_mut(rows, |r, row| {
            if r == lead || row[col].is_zero() {
                return;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot).skip(col) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        });
        lead += 1;
    }
    lead
}

/// A linear subspace of `Q^ambient_dim`, stored as a canonical RREF basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
        }
    }

    /// Span of the given vectors (any number, possibly dependent).
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        let mut rows = vectors.to_vec();
        for r in &rows {
            if r.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: r.len(),
                });
            }
        }
        let rank = rref_in_place(&mut rows, ambient_dim);
        rows.truncate(rank);
        let basis = Matrix::from_rows(ambient_dim, rows)?;
        Ok(Self { ambient_dim, basis })
    }

    /// Span of the standard basis vectors with the given (0-based) indices.
    pub fn coordinate(ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vecs: Vec<_> = indices.into_iter().map(|i| unit_vec(ambient_dim, i)).collect();
        Self::span(ambient_dim, &vecs).expect("unit vectors have ambient length")
    }

    pub fn row_space(m: &Matrix) -> Self {
        Self::span(m.cols(), &m.row_vecs()).expect("rows have matrix width")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| {
                self.basis
                    .row(r)
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("basis rows are nonzero")
            })
            .collect()
    }

    /// Remainder of `v` after clearing every pivot coordinate; zero iff `v`
    /// lies in the subspace.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        for (r, p) in self.pivots().into_iter().enumerate() {
            if !out[p].is_zero() {
                let c = -out[p].clone();
                axpy(&mut out, &c, self.basis.row(r));
            }
        }
        out
    }

    /// Coordinates of `v` with respect to the stored RREF basis, if `v` lies
    /// in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if v.len() != self.ambient_dim || !is_zero_vec(&self.reduce(v)) {
            return None;
        }
        Some(self.pivots().into_iter().map(|p| v[p].clone()).collect())
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.ambient_dim && is_zero_vec(&self.reduce(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && (0..self.dim()).all(|r| other.contains(self.basis.row(r)))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        subspace_sum(self, other)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        subspace_intersect(self, other)
    }

    /// Image of the subspace under a linear map given as a matrix acting on
    /// column vectors.
    pub fn image(&self, map: &Matrix) -> Result<Subspace> {
        let imgs = self
            .basis_vectors()
            .iter()
            .map(|v| map.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(map.rows(), &imgs)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in Q^{}) ", self.dim(), self.ambient_dim)?;
        self.basis.fmt(f)
    }
}

/// Solution space of `m * x = 0`.
pub fn nullspace(m: &Matrix) -> Subspace {
    let (red, rank) = rref(m);
    let cols = m.cols();
    let mut pivot_of_row = Vec::with_capacity(rank);
    for r in 0..rank {
        let p = red.row(r).iter().position(|x| !x.is_zero()).expect("nonzero pivot row");
        pivot_of_row.push(p);
    }
    let mut is_pivot = vec![false; cols];
    for &p in &pivot_of_row {
        is_pivot[p] = true;
    }
    let vecs: Vec<Vec<Rational>> = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = unit_vec(cols, f);
            for (r, &p) in pivot_of_row.iter().enumerate() {
                v[p] = -red.get(r, f).clone();
            }
            v
        })
        .collect();
    Subspace::span(cols, &vecs).expect("null vectors have column length")
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.check_ambient(b)?;
    let mut vecs = a.basis_vectors();
    vecs.extend(b.basis_vectors());
    Subspace::span(a.ambient_dim, &vecs)
}

/// Intersection via the kernel of `[A^T | -B^T]`: a null vector `(alpha, beta)`
/// gives the common element `alpha . A = beta . B`.
pub fn subspace_intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.check_ambient(b)?;
    let n = a.ambient_dim;
    let (da, db) = (a.dim(), b.dim());
    if da == 0 || db == 0 {
        return Ok(Subspace::zero(n));
    }
    let mut stacked = Matrix::zeros(n, da + db);
    for i in 0..da {
        for (c, x) in a.basis.row(i).iter().enumerate() {
            stacked.set(c, i, x.clone());
        }
    }
    for j in 0..db {
        for (c, x) in b.basis.row(j).iter().enumerate() {
            stacked.set(c, da + j, -x.clone());
        }
    }
    let kernel = nullspace(&stacked);
    let vecs: Vec<Vec<Rational>> = kernel
        .basis_vectors()
        .iter()
        .map(|k| {
            let mut v = zero_vec(n);
            for i in 0..da {
                axpy(&mut v, &k[i], a.basis.row(i));
            }
            v
        })
        .collect();
    Subspace::span(n, &vecs)
}

pub fn membership(v: &[Rational], s: &Subspace) -> bool {
    s.contains(v)
}

/// Full solution set of `a * x = b`: a particular solution plus the
/// homogeneous solution space. `None` when the system is inconsistent.
pub fn solve_affine(a: &Matrix, b: &[Rational]) -> Result<Option<(Vec<Rational>, Subspace)>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let cols = a.cols();
    let mut aug = Matrix::zeros(a.rows(), cols + 1);
    for r in 0..a.rows() {
        for c in 0..cols {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, cols, b[r].clone());
    }
    let (red, rank) = rref(&aug);
    let mut particular = zero_vec(cols);
    for r in 0..rank {
        let p = red.row(r).iter().position(|x| !x.is_zero()).expect("nonzero pivot row");
        if p == cols {
            return Ok(None);
        }
        particular[p] = red.get(r, cols).clone();
    }
    Ok(Some((particular, nullspace(a))))
}

/// Vectors of `whole` whose classes form a basis of `whole / sub`.
///
/// Rows of the canonical basis of `whole` are taken in order and kept when
/// they are independent of `sub` and of the rows already kept, so the
/// choice favours low pivot indices and is deterministic.
pub fn quotient_basis(sub: &Subspace, whole: &Subspace) -> Result<Vec<Vec<Rational>>> {
    sub.check_ambient(whole)?;
    if !sub.is_subspace_of(whole) {
        return Err(Error::NotContained);
    }
    let mut acc = sub.clone();
    let mut out = Vec::with_capacity(whole.dim() - sub.dim());
    for v in whole.basis_vectors() {
        if !acc.contains(&v) {
            acc = subspace_sum(&acc, &Subspace::span(whole.ambient_dim, std::slice::from_ref(&v))?)?;
            out.push(v);
        }
    }
    Ok(out)
}

/// Sparse row: sorted `(column, nonzero value)` pairs.
pub(crate) type SparseRow = Vec<(usize, Rational)>;

pub(crate) fn sparse_from_dense(v: &[Rational]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// `a - c * b` for sparse rows.
fn sparse_sub_scaled(a: &SparseRow, c: &Rational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                let v = va - c * vb;
                if !v.is_zero() {
                    out.push((*ca, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (Some((ca, va)), None) => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (_, Some((cb, vb))) => {
                out.push((*cb, -(c * vb)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Incremental echelon form for large, sparse homogeneous systems.
///
/// Equations are fed one at a time and reduced against the pivots seen so
/// far, so redundant equations (the common case for Leibniz systems) cost a
/// single sparse reduction and are then dropped.
#[derive(Debug, Clone)]
pub(crate) struct SparseEchelon {
    unknowns: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub(crate) fn new(unknowns: usize) -> Self {
        Self {
            unknowns,
            pivots: BTreeMap::new(),
        }
    }

    #[cfg(test)]
    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub(crate) fn push(&mut self, mut row: SparseRow) {
        while let Some((lead, val)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => row = sparse_sub_scaled(&row, &val, p),
                None => {
                    let inv = val.recip();
                    for (_, x) in row.iter_mut() {
                        *x *= &inv;
                    }
                    self.pivots.insert(lead, row);
                    return;
                }
            }
        }
    }

    /// Basis of the solution space, canonicalised as a `Subspace`.
    pub(crate) fn nullspace(mut self) -> Subspace {
        let n = self.unknowns;
        // back-substitute from the highest pivot down to reach reduced form
        let keys: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &p in &keys {
            let prow = self.pivots[&p].clone();
            for (_, row) in self.pivots.range_mut(..p) {
                if let Ok(idx) = row.binary_search_by_key(&p, |(c, _)| *c) {
                    let c = row[idx].1.clone();
                    *row = sparse_sub_scaled(row, &c, &prow);
                }
            }
        }
        let free: Vec<usize> = (0..n).filter(|c| !self.pivots.contains_key(c)).collect();
        let mut free_pos = vec![usize::MAX; n];
        for (k, &f) in free.iter().enumerate() {
            free_pos[f] = k;
        }
        let mut vecs: Vec<Vec<Rational>> = free.iter().map(|&f| unit_vec(n, f)).collect();
        for (&p, row) in &self.pivots {
            for (c, x) in row.iter().skip(1) {
                vecs[free_pos[*c]][p] = -x.clone();
            }
        }
        Subspace::span(n, &vecs).expect("null vectors have unknown count")
    }
}

/// Row vector rendering `[a, b, c]` with rationals as `p/q`.
pub fn format_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}


#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    fn span(n: usize, vs: &[&[i64]]) -> Subspace {
        Subspace::span(n, &vs.iter().map(|x| v(x)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rref_examples() {
        let (r, k) = rref(&Matrix::from_i64(&[&[2, 4], &[1, 2]]));
        assert_eq!(r, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(k, 1);

        let (r, k) = rref(&Matrix::identity(3));
        assert_eq!(r, Matrix::identity(3));
        assert_eq!(k, 3);

        let (r, k) = rref(&Matrix::from_i64(&[&[1, 2], &[3, 4]]));
        assert_eq!(r, Matrix::identity(2));
        assert_eq!(k, 2);
    }

    #[test]
    fn rref_keeps_fractions_exact() {
        let (r, _) = rref(&Matrix::from_i64(&[&[3, 1], &[0, 0]]));
        assert_eq!(r.get(0, 1), &frac(1, 3));
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace(&Matrix::identity(3)).is_zero());
        assert_eq!(nullspace(&Matrix::zeros(2, 2)), Subspace::full(2));

        let m = Matrix::from_i64(&[&[1, 1, 0]]);
        let ns = nullspace(&m);
        assert_eq!(ns.dim(), 2);
        assert!(ns.contains(&v(&[1, -1, 0])));
        assert!(ns.contains(&v(&[0, 0, 1])));
        for b in ns.basis_vectors() {
            assert!(is_zero_vec(&m.mul_vec(&b).unwrap()));
        }
    }

    #[test]
    fn sum_examples() {
        let a = span(3, &[&[1, 2, 3]]);
        assert_eq!(subspace_sum(&a, &a).unwrap(), a);
        assert_eq!(
            subspace_sum(&span(2, &[&[1, 0]]), &span(2, &[&[0, 1]])).unwrap(),
            Subspace::full(2)
        );
        assert_eq!(
            subspace_sum(&span(3, &[&[1, 1, 0]]), &span(3, &[&[1, -1, 0]])).unwrap(),
            Subspace::coordinate(3, [0, 1])
        );
        assert!(subspace_sum(&Subspace::zero(2), &Subspace::zero(3)).is_err());
    }

    #[test]
    fn intersect_examples() {
        let a = span(3, &[&[1, 2, 0], &[0, 1, 5]]);
        assert_eq!(subspace_intersect(&a, &Subspace::full(3)).unwrap(), a);
        assert!(subspace_intersect(&span(2, &[&[1, 0]]), &span(2, &[&[0, 1]]))
            .unwrap()
            .is_zero());
        assert_eq!(
            subspace_intersect(&Subspace::coordinate(3, [0, 1]), &Subspace::coordinate(3, [1, 2])).unwrap(),
            Subspace::coordinate(3, [1])
        );
        assert!(subspace_intersect(&Subspace::zero(2), &Subspace::zero(4)).is_err());
    }

    #[test]
    fn membership_examples() {
        let s = span(3, &[&[0, 1, 0]]);
        assert!(membership(&zero_vec(3), &s));
        assert!(!membership(&v(&[1, 0, 0]), &s));
        assert!(membership(&v(&[1, 1, 0]), &span(3, &[&[1, 0, 0], &[0, 1, 0]])));
    }

    #[test]
    fn solve_affine_examples() {
        let b = v(&[3, -1, 7]);
        let (p, h) = solve_affine(&Matrix::identity(3), &b).unwrap().unwrap();
        assert_eq!(p, b);
        assert!(h.is_zero());

        let (p, h) = solve_affine(&Matrix::from_i64(&[&[1, 1]]), &v(&[2])).unwrap().unwrap();
        assert_eq!(p, v(&[2, 0]));
        assert_eq!(h, span(2, &[&[1, -1]]));

        assert!(solve_affine(&Matrix::from_i64(&[&[1], &[1]]), &v(&[0, 1])).unwrap().is_none());
        assert!(solve_affine(&Matrix::identity(2), &v(&[1])).is_err());
    }

    #[test]
    fn quotient_basis_examples() {
        let w = Subspace::coordinate(3, [0, 1]);
        assert!(quotient_basis(&w, &w).unwrap().is_empty());
        assert_eq!(
            quotient_basis(&Subspace::zero(1), &Subspace::full(1)).unwrap(),
            vec![v(&[1])]
        );
        let reps = quotient_basis(&Subspace::coordinate(3, [0]), &w).unwrap();
        assert_eq!(reps.len(), 1);
        let diff = sub_vec(&reps[0], &v(&[0, 1, 0]));
        assert!(Subspace::coordinate(3, [0]).contains(&diff));

        assert_eq!(
            quotient_basis(&Subspace::coordinate(3, [2]), &w),
            Err(Error::NotContained)
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let p = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
        let inv = p.inverse().unwrap();
        assert_eq!(p.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn sparse_echelon_matches_dense_nullspace() {
        let m = Matrix::from_i64(&[&[1, 2, 0, -1], &[2, 4, 1, 0], &[3, 6, 1, -1], &[0, 0, 0, 0]]);
        let mut e = SparseEchelon::new(4);
        for r in m.row_vecs() {
            e.push(sparse_from_dense(&r));
        }
        assert_eq!(e.rank(), 2);
        assert_eq!(e.nullspace(), nullspace(&m));
    }
}
