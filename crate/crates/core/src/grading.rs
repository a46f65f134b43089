//! Stratifications, dilations, filtrations and the associated graded algebra.

use num_traits::{Pow, Zero};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::exactlin::{
    nullspace, quotient_basis, q, solve_affine, subspace_sum, zero_vec, Matrix, Rational, Subspace,
};
use crate::liealg::{
    bracket_subspaces, derivation_algebra, is_derivation, lower_central_series, LieAlgebra, LinearEndo,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StratificationError {
    #[error("no layers given")]
    NoLayers,
    #[error("layer {layer} lives in dimension {found}, algebra has dimension {expected}")]
    AmbientMismatch { layer: usize, expected: usize, found: usize },
    #[error("first layer has dimension {0}; at least 2 is required")]
    DegenerateFirstLayer(usize),
    #[error("layer {0} is zero")]
    EmptyLayer(usize),
    #[error("layers do not form a direct sum decomposition of the algebra")]
    NotDirectSum,
    #[error("[V_{layer}, V_1] does not equal V_{next}", next = .layer + 1)]
    GenerationFailure { layer: usize },
}

/// Layers `V_1, ..., V_s` of a validated stratification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratification {
    layers: Vec<Subspace>,
}

impl Stratification {
    pub fn layers(&self) -> &[Subspace] {
        &self.layers
    }

    pub fn step(&self) -> usize {
        self.layers.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.layers[0].ambient_dim()
    }

    pub fn layer_dims(&self) -> Vec<usize> {
        self.layers.iter().map(Subspace::dim).collect()
    }

    /// Basis adapted to the layers: columns are the canonical bases of
    /// `V_1`, then `V_2`, and so on.
    pub fn adapted_basis(&self) -> Matrix {
        let cols: Vec<Vec<Rational>> = self.layers.iter().flat_map(Subspace::basis_vectors).collect();
        Matrix::from_cols(self.ambient_dim(), &cols).expect("layer vectors share the ambient dimension")
    }

    /// Layer degree (1-based) of each adapted basis vector.
    pub fn adapted_degrees(&self) -> Vec<usize> {
        self.layers
            .iter()
            .enumerate()
            .flat_map(|(j, l)| std::iter::repeat(j + 1).take(l.dim()))
            .collect()
    }

    /// True when every layer is spanned by consecutive standard basis
    /// vectors in increasing order, i.e. the adapted basis is the identity.
    pub fn is_coordinate_aligned(&self) -> bool {
        self.adapted_basis() == Matrix::identity(self.ambient_dim())
    }

    /// Map acting as `f(j)` on `V_j`.
    fn block_scalar(&self, f: impl Fn(usize) -> Rational) -> LinearEndo {
        let p = self.adapted_basis();
        let diag: Vec<Rational> = self.adapted_degrees().into_iter().map(f).collect();
        if p == Matrix::identity(p.rows()) {
            return LinearEndo(Matrix::diagonal(&diag));
        }
        let inv = p.inverse().expect("adapted basis of a direct sum is invertible");
        let m = p
            .mul(&Matrix::diagonal(&diag))
            .and_then(|m| m.mul(&inv))
            .expect("square matrices of equal size");
        LinearEndo(m)
    }
}

/// Validates `layers` as a stratification of `l`.
pub fn verify_stratification(l: &LieAlgebra, layers: &[Subspace]) -> Result<Stratification> {
    use StratificationError::*;
    let n = l.dim();
    if layers.is_empty() {
        return Err(NoLayers.into());
    }
    for (j, v) in layers.iter().enumerate() {
        if v.ambient_dim() != n {
            return Err(AmbientMismatch {
                layer: j + 1,
                expected: n,
                found: v.ambient_dim(),
            }
            .into());
        }
    }
    if layers[0].dim() < 2 {
        return Err(DegenerateFirstLayer(layers[0].dim()).into());
    }
    if let Some(j) = layers.iter().position(Subspace::is_zero) {
        return Err(EmptyLayer(j + 1).into());
    }
    let total: usize = layers.iter().map(Subspace::dim).sum();
    let mut span = Subspace::zero(n);
    for v in layers {
        span = subspace_sum(&span, v)?;
    }
    if total != n || !span.is_full() {
        return Err(NotDirectSum.into());
    }
    let zero = Subspace::zero(n);
    for j in 0..layers.len() {
        let next = layers.get(j + 1).unwrap_or(&zero);
        if bracket_subspaces(l, &layers[j], &layers[0]) != *next {
            return Err(GenerationFailure { layer: j + 1 }.into());
        }
    }
    Ok(Stratification {
        layers: layers.to_vec(),
    })
}

/// The derivation acting as `j` on `V_j`.
pub fn grading_derivation(s: &Stratification) -> LinearEndo {
    s.block_scalar(|j| q(j as i64))
}

/// The dilation acting as `lambda^j` on `V_j`.
pub fn dilation(s: &Stratification, lambda: &Rational) -> Result<LinearEndo> {
    if lambda.is_zero() {
        return Err(Error::ZeroDilation);
    }
    Ok(s.block_scalar(|j| Pow::pow(lambda, j as u32)))
}

/// `Q = sum_j j * dim V_j`.
pub fn homogeneous_dimension(s: &Stratification) -> usize {
    s.layers.iter().enumerate().map(|(j, v)| (j + 1) * v.dim()).sum()
}

/// Increasing chain `L_1 ⊆ L_2 ⊆ ... ⊆ L_s = g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    terms: Vec<Subspace>,
}

impl Filtration {
    pub fn terms(&self) -> &[Subspace] {
        &self.terms
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    /// `L_i` for `i >= 1`, saturating at the last term.
    pub fn level(&self, i: usize) -> &Subspace {
        &self.terms[(i.max(1) - 1).min(self.terms.len() - 1)]
    }

    /// Checks `[L_i, L_j] ⊆ L_{i+j}` for every pair of stored terms.
    pub fn respects_brackets(&self, l: &LieAlgebra) -> bool {
        let s = self.terms.len();
        (1..=s).all(|i| {
            (i..=s).all(|j| bracket_subspaces(l, self.level(i), self.level(j)).is_subspace_of(self.level(i + j)))
        })
    }
}

/// `L_1 = h`, `L_{i+1} = L_i + [h, L_i]`, until the whole algebra is reached.
pub fn filtration_from_horizontal(l: &LieAlgebra, h: &Subspace) -> Result<Filtration> {
    if h.ambient_dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: h.ambient_dim(),
        });
    }
    let mut terms = vec![h.clone()];
    loop {
        let last = terms.last().expect("nonempty");
        if last.is_full() {
            return Ok(Filtration { terms });
        }
        let next = subspace_sum(last, &bracket_subspaces(l, h, last))?;
        if next == *last {
            return Err(Error::NotBracketGenerating {
                reached: last.dim(),
                dim: l.dim(),
            });
        }
        terms.push(next);
    }
}

/// Associated graded algebra of the filtration generated by a horizontal
/// subspace, expressed in an adapted basis.
#[derive(Debug, Clone)]
pub struct Nilpotentisation {
    pub algebra: LieAlgebra,
    /// Columns are the representatives chosen level by level.
    pub adapted_basis: Matrix,
    pub stratification: Stratification,
}

pub fn nilpotentisation(l: &LieAlgebra, h: &Subspace) -> Result<Nilpotentisation> {
    let filt = filtration_from_horizontal(l, h)?;
    let n = l.dim();
    let mut reps: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut level_of: Vec<usize> = Vec::with_capacity(n);
    let mut prev = Subspace::zero(n);
    for (i, term) in filt.terms().iter().enumerate() {
        for v in quotient_basis(&prev, term)? {
            reps.push(v);
            level_of.push(i + 1);
        }
        prev = term.clone();
    }
    let p = Matrix::from_cols(n, &reps)?;
    let inv = p.inverse()?;
    let mut entries = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let target = level_of[a] + level_of[b];
            let br = l.bracket(&reps[a], &reps[b])?;
            let mut coords = inv.mul_vec(&br)?;
            for (c, x) in coords.iter_mut().enumerate() {
                if level_of[c] != target {
                    *x = Rational::zero();
                }
            }
            entries.push((a, b, coords));
        }
    }
    let gr = LieAlgebra::new(n, entries)?;
    let layers: Vec<Subspace> = (1..=filt.terms().len())
        .map(|lvl| Subspace::coordinate(n, (0..n).filter(|&c| level_of[c] == lvl)))
        .collect();
    let stratification = verify_stratification(&gr, &layers)?;
    Ok(Nilpotentisation {
        algebra: gr,
        adapted_basis: p,
        stratification,
    })
}

#[derive(Debug, Clone)]
pub struct StratifiabilityVerdict {
    pub stratifiable: bool,
    /// A derivation `delta` with `(delta - id)(g) ⊆ [g, g]`.
    pub witness: Option<LinearEndo>,
    /// Generalized eigenspaces of the witness for eigenvalues `1..=s`, when
    /// they pass [`verify_stratification`].
    pub derived_stratification: Option<Stratification>,
}

/// Linear constraints, on derivation coordinates, expressing that
/// `(delta - id)` maps every basis vector into `[g, g]`. Returns the
/// derivation basis together with the affine system `(A, b)` in the
/// coefficients of that basis.
fn stratifiability_system(l: &LieAlgebra, derived: &Subspace) -> Result<(Vec<Vec<Rational>>, Matrix, Vec<Rational>)> {
    let n = l.dim();
    let der = derivation_algebra(l)?.basis_vectors();
    // functionals vanishing on [g, g]
    let annihilator = nullspace(derived.basis()).basis_vectors();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for f in &annihilator {
        for i in 0..n {
            // f . delta(e_i) = f . e_i, with delta = sum_k alpha_k B_k
            let row: Vec<Rational> = der
                .iter()
                .map(|b| (0..n).fold(Rational::zero(), |acc, r| acc + &f[r] * &b[r * n + i]))
                .collect();
            rows.push(row);
            rhs.push(f[i].clone());
        }
    }
    let a = Matrix::from_rows(der.len(), rows)?;
    Ok((der, a, rhs))
}

/// Decides whether the algebra admits a stratification, by solving for a
/// derivation that acts as the identity modulo `[g, g]`.
///
/// A stratification's grading derivation is such a map. Conversely, for any
/// such `delta` its generalized eigenspaces for eigenvalues `1..=s` form a
/// stratification: they grade the algebra, the degree-1 piece complements
/// `[g, g]` and hence generates. The system is linear with rational data, so
/// feasibility over Q and over R coincide.
pub fn is_stratifiable(l: &LieAlgebra) -> Result<StratifiabilityVerdict> {
    let series = lower_central_series(l)?;
    if !series.nilpotent {
        return Err(Error::NotNilpotent);
    }
    let n = l.dim();
    let derived = series
        .terms
        .get(1)
        .cloned()
        .unwrap_or_else(|| Subspace::zero(n));
    let (der, a, b) = stratifiability_system(l, &derived)?;
    let Some((alpha, _)) = solve_affine(&a, &b)? else {
        return Ok(StratifiabilityVerdict {
            stratifiable: false,
            witness: None,
            derived_stratification: None,
        });
    };
    let mut flat = zero_vec(n * n);
    for (c, basis) in alpha.iter().zip(&der) {
        crate::exactlin::axpy(&mut flat, c, basis);
    }
    let witness = LinearEndo::from_flat(n, flat)?;
    debug_assert!(is_derivation(l, &witness));
    let step = series.step.unwrap_or(0);
    let mut layers = Vec::with_capacity(step);
    for j in 1..=step {
        let shifted = witness.matrix().sub(&Matrix::scalar(n, &q(j as i64)))?;
        layers.push(nullspace(&shifted.pow(n as u32)?));
    }
    let derived_stratification = verify_stratification(l, &layers).ok();
    Ok(StratifiabilityVerdict {
        stratifiable: true,
        witness: Some(witness),
        derived_stratification,
    })
}

/// True when `delta` satisfies both constraint families of the
/// stratifiability criterion.
pub fn is_stratifying_derivation(l: &LieAlgebra, delta: &LinearEndo) -> Result<bool> {
    if !is_derivation(l, delta) {
        return Ok(false);
    }
    let derived = bracket_subspaces(l, &Subspace::full(l.dim()), &Subspace::full(l.dim()));
    let shifted = delta.matrix().sub(&Matrix::identity(l.dim()))?;
    Ok((0..l.dim()).all(|i| derived.contains(&shifted.column(i))))
}
