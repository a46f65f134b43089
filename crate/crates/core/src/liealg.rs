//! Lie algebras given by structure constants.
//!
//! Only brackets `[e_i, e_j]` with `i < j` are stored; the opposite order is
//! the negation, so antisymmetry cannot be violated by the data. Indices are
//! 0-based in the API and 1-based in labels and in the file format.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{
    axpy, is_zero_vec, nullspace, sparse_from_dense, zero_vec, Matrix, Rational, SparseEchelon, SparseRow,
    Subspace,
};
use crate::par;

/// Finite-dimensional Lie algebra over Q in a fixed basis.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    table: BTreeMap<(usize, usize), Vec<Rational>>,
    // [e_i, e_j] for all ordered pairs, sparse, index i * dim + j
    dense: Vec<SparseRow>,
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LieAlgebra")
            .field("dim", &self.dim)
            .field("brackets", &self.table.len())
            .finish()
    }
}

pub fn default_labels(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

impl LieAlgebra {
    /// Builds the algebra without checking the Jacobi identity.
    ///
    /// Pairs must satisfy `a < b < dim`; zero brackets are dropped and a
    /// repeated pair is rejected.
    pub fn raw<I>(dim: usize, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vec<Rational>)>,
    {
        let mut table = BTreeMap::new();
        for (a, b, v) in brackets {
            if a >= dim || b >= dim {
                return Err(Error::IndexOutOfRange {
                    index: a.max(b) + 1,
                    dim,
                });
            }
            if a >= b {
                return Err(Error::UnorderedPair { a: a + 1, b: b + 1 });
            }
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            if table.contains_key(&(a, b)) {
                return Err(Error::DuplicatePair { a: a + 1, b: b + 1 });
            }
            if !is_zero_vec(&v) {
                table.insert((a, b), v);
            }
        }
        let mut dense = vec![SparseRow::new(); dim * dim];
        for (&(a, b), v) in &table {
            let s = sparse_from_dense(v);
            dense[b * dim + a] = s.iter().map(|(k, x)| (*k, -x.clone())).collect();
            dense[a * dim + b] = s;
        }
        Ok(Self {
            dim,
            labels: default_labels(dim),
            table,
            dense,
        })
    }

    /// Builds the algebra and rejects tables violating the Jacobi identity.
    pub fn new<I>(dim: usize, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vec<Rational>)>,
    {
        Self::raw(dim, brackets)?.validated()
    }

    /// Convenience constructor from integer data `(a, b, [(coef, target)])`
    /// with 1-based indices, as the brackets are usually written.
    pub fn from_integer_table(dim: usize, rows: &[(usize, usize, &[(i64, usize)])]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|&(a, b, terms)| {
                let mut v = zero_vec(dim);
                for &(c, t) in terms {
                    if t == 0 || t > dim {
                        return Err(Error::IndexOutOfRange { index: t, dim });
                    }
                    v[t - 1] += Rational::from_integer(c.into());
                }
                if a == 0 || b == 0 {
                    return Err(Error::IndexOutOfRange { index: 0, dim });
                }
                Ok((a - 1, b - 1, v))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, entries)
    }

    pub fn abelian(dim: usize) -> Self {
        Self::raw(dim, std::iter::empty()).expect("empty table is valid")
    }

    pub fn validated(self) -> Result<Self> {
        let defects = jacobi_defect(&self);
        if defects.is_empty() {
            Ok(self)
        } else {
            Err(Error::NotLieAlgebra {
                violations: defects.len(),
            })
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Stored brackets `(i, j) -> [e_i, e_j]` with `i < j`, nonzero only.
    pub fn table(&self) -> &BTreeMap<(usize, usize), Vec<Rational>> {
        &self.table
    }

    /// `[e_i, e_j]` for any ordered pair, as sparse coordinates.
    pub(crate) fn basis_bracket(&self, i: usize, j: usize) -> &SparseRow {
        &self.dense[i * self.dim + j]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        let mut v = zero_vec(self.dim);
        for (k, x) in self.basis_bracket(i, j) {
            v[*k] = x.clone();
        }
        v
    }

    fn check_len(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = zero_vec(self.dim);
        for (&(i, j), v) in &self.table {
            let c = &x[i] * &y[j] - &x[j] * &y[i];
            axpy(&mut out, &c, v);
        }
        Ok(out)
    }
}

pub fn bracket(l: &LieAlgebra, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
    l.bracket(x, y)
}

/// One failing Jacobi triple, 0-based `i < j < k`, with its exact residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub residual: Vec<Rational>,
}

/// Every basis triple on which the Jacobi identity fails.
pub fn jacobi_defect(l: &LieAlgebra) -> Vec<JacobiViolation> {
    let n = l.dim;
    let firsts: Vec<usize> = (0..n).collect();
    par::flat_map(&firsts, |&i| {
        let mut out = Vec::new();
        for j in i + 1..n {
            for k in j + 1..n {
                let mut res = zero_vec(n);
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for (t, x) in l.basis_bracket(a, b) {
                        for (u, y) in l.basis_bracket(*t, c) {
                            res[*u] += x * y;
                        }
                    }
                }
                if !is_zero_vec(&res) {
                    out.push(JacobiViolation { i, j, k, residual: res });
                }
            }
        }
        out
    })
}

/// `[A, B]` for subspaces of the algebra.
pub fn bracket_subspaces(l: &LieAlgebra, a: &Subspace, b: &Subspace) -> Subspace {
    let av = a.basis_vectors();
    let bv = b.basis_vectors();
    let prods = par::flat_map(&av, |x| {
        bv.iter()
            .map(|y| l.bracket(x, y).expect("subspaces live in the algebra"))
            .collect()
    });
    Subspace::span(l.dim, &prods).expect("brackets have algebra length")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesReport {
    /// gamma_1 = g, gamma_2 = [g, g], ... ending at the zero subspace when
    /// nilpotent, or at the first repeated term otherwise.
    pub terms: Vec<Subspace>,
    pub nilpotent: bool,
    pub step: Option<usize>,
}

impl SeriesReport {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }
}

pub fn lower_central_series(l: &LieAlgebra) -> Result<SeriesReport> {
    let violations = jacobi_defect(l).len();
    if violations > 0 {
        return Err(Error::NotLieAlgebra { violations });
    }
    let full = Subspace::full(l.dim);
    let mut terms = vec![full.clone()];
    loop {
        let last = terms.last().expect("series starts with g");
        if last.is_zero() {
            let step = terms.len() - 1;
            return Ok(SeriesReport {
                terms,
                nilpotent: true,
                step: Some(step),
            });
        }
        let next = bracket_subspaces(l, &full, last);
        if next == *last {
            return Ok(SeriesReport {
                terms,
                nilpotent: false,
                step: None,
            });
        }
        terms.push(next);
    }
}

/// Linear endomorphism of the algebra, as a matrix acting on column vectors:
/// column `c` holds the coordinates of `u(e_c)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearEndo(pub Matrix);

impl LinearEndo {
    pub fn identity(n: usize) -> Self {
        Self(Matrix::identity(n))
    }

    pub fn zero(n: usize) -> Self {
        Self(Matrix::zeros(n, n))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        self.0.mul_vec(v)
    }

    /// Image of basis vector `e_c`.
    pub fn image_of_basis(&self, c: usize) -> Vec<Rational> {
        self.0.column(c)
    }

    /// Row-major flattening: coordinate `r * n + c` is the `e_r` component of
    /// `u(e_c)`.
    pub fn to_flat(&self) -> Vec<Rational> {
        self.0.to_flat()
    }

    pub fn from_flat(n: usize, v: Vec<Rational>) -> Result<Self> {
        Ok(Self(Matrix::from_flat(n, n, v)?))
    }

    pub fn compose(&self, other: &LinearEndo) -> Result<LinearEndo> {
        Ok(Self(self.0.mul(&other.0)?))
    }
}

pub fn ad(l: &LieAlgebra, x: &[Rational]) -> Result<LinearEndo> {
    l.check_len(x)?;
    let n = l.dim;
    let mut m = Matrix::zeros(n, n);
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for j in 0..n {
            for (k, c) in l.basis_bracket(i, j) {
                let cur = m.get(*k, j).clone();
                m.set(*k, j, cur + xi * c);
            }
        }
    }
    Ok(LinearEndo(m))
}

pub fn center(l: &LieAlgebra) -> Subspace {
    let n = l.dim;
    // row (i, k): k-th coordinate of [x, e_i] as a functional of x
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        let mut block = vec![zero_vec(n); n];
        for a in 0..n {
            for (k, c) in l.basis_bracket(a, i) {
                block[*k][a] = c.clone();
            }
        }
        rows.extend(block);
    }
    nullspace(&Matrix::from_rows(n, rows).expect("rows have algebra length"))
}

pub fn is_derivation(l: &LieAlgebra, u: &LinearEndo) -> bool {
    let n = l.dim;
    if u.dim() != n || !u.0.is_square() {
        return false;
    }
    let images: Vec<Vec<Rational>> = (0..n).map(|c| u.image_of_basis(c)).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    par::map(&pairs, |&(i, j)| {
        let lhs = u.apply(&l.bracket_basis(i, j)).expect("square endo");
        let mut rhs = l.bracket(&images[i], &crate::exactlin::unit_vec(n, j)).expect("len");
        let r2 = l.bracket(&crate::exactlin::unit_vec(n, i), &images[j]).expect("len");
        for (a, b) in rhs.iter_mut().zip(r2) {
            *a += b;
        }
        lhs == rhs
    })
    .into_iter()
    .all(|ok| ok)
}

/// Sparse Leibniz equations `u[e_i,e_j] = [u e_i, e_j] + [e_i, u e_j]` for all
/// `i < j`, over unknowns `u_{r,c}` (the `e_r` coordinate of `u(e_c)`).
///
/// `var(r, c)` gives the unknown's column, or `None` when that entry is
/// constrained to zero.
pub(crate) fn leibniz_equations<F>(l: &LieAlgebra, var: F) -> Vec<SparseRow>
where
    F: Fn(usize, usize) -> Option<usize> + Sync + Send,
{
    let n = l.dim;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    par::flat_map(&pairs, |&(i, j)| {
        // eq[t] accumulates coefficient maps for target coordinate t
        let mut eqs: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); n];
        let mut add = |t: usize, var_idx: Option<usize>, c: Rational| {
            if let Some(v) = var_idx {
                *eqs[t].entry(v).or_insert_with(Rational::zero) += c;
            }
        };
        // u([e_i, e_j]) = sum_k c_ij^k u(e_k)
        for (k, c) in l.basis_bracket(i, j) {
            for t in 0..n {
                add(t, var(t, *k), c.clone());
            }
        }
        // - [u e_i, e_j] = - sum_r u_{r,i} [e_r, e_j]
        for r in 0..n {
            for (t, c) in l.basis_bracket(r, j) {
                add(*t, var(r, i), -c.clone());
            }
            for (t, c) in l.basis_bracket(i, r) {
                add(*t, var(r, j), -c.clone());
            }
        }
        eqs.into_iter()
            .map(|m| m.into_iter().filter(|(_, c)| !c.is_zero()).collect::<SparseRow>())
            .filter(|r| !r.is_empty())
            .collect()
    })
}

/// All derivations, as a subspace of the `n^2`-dimensional endomorphism
/// space (row-major flattening, see [`LinearEndo::to_flat`]).
pub fn derivation_algebra(l: &LieAlgebra) -> Result<Subspace> {
    let violations = jacobi_defect(l).len();
    if violations > 0 {
        return Err(Error::NotLieAlgebra { violations });
    }
    let n = l.dim;
    let mut ech = SparseEchelon::new(n * n);
    for row in leibniz_equations(l, |r, c| Some(r * n + c)) {
        ech.push(row);
    }
    Ok(ech.nullspace())
}

/// `g ⋊ Q d`: adds a basis vector `e_{n+1}` with `[e_{n+1}, x] = d(x)`.
pub fn semidirect_with_derivation(l: &LieAlgebra, d: &LinearEndo) -> Result<LieAlgebra> {
    let n = l.dim;
    if d.dim() != n || !is_derivation(l, d) {
        return Err(Error::NotDerivation);
    }
    let mut entries: Vec<(usize, usize, Vec<Rational>)> = l
        .table
        .iter()
        .map(|(&(a, b), v)| {
            let mut w = v.clone();
            w.push(Rational::zero());
            (a, b, w)
        })
        .collect();
    for i in 0..n {
        // stored as [e_i, e_{n+1}] = -d(e_i)
        let mut w: Vec<Rational> = d.image_of_basis(i).into_iter().map(|x| -x).collect();
        w.push(Rational::zero());
        entries.push((i, n, w));
    }
    let mut labels = l.labels.clone();
    labels.push("D".to_string());
    LieAlgebra::new(n + 1, entries)?.with_labels(labels)
}

/// Rewrites the structure constants in the basis `f_j = sum_i p_ij e_i`
/// (the columns of `p`).
pub fn change_of_basis(l: &LieAlgebra, p: &Matrix) -> Result<LieAlgebra> {
    let n = l.dim;
    if p.rows() != n || p.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.rows().max(p.cols()),
        });
    }
    let inv = p.inverse()?;
    let cols: Vec<Vec<Rational>> = (0..n).map(|c| p.column(c)).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let entries = par::map(&pairs, |&(a, b)| {
        let br = l.bracket(&cols[a], &cols[b]).expect("columns have algebra length");
        (a, b, inv.mul_vec(&br).expect("square inverse"))
    });
    LieAlgebra::raw(n, entries)
}
