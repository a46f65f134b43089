//! Strata-preserving derivations and the Tanaka prolongation.
//!
//! Negative degrees are the layers: `g_{-l} = V_l`. For `k >= 0` an element
//! `u` of `g_k` is a tuple of linear maps `u_l : V_l -> g_{k-l}` satisfying
//!
//! ```text
//! u([X, Y]) = [u(X), Y] + [X, u(Y)]
//! ```
//!
//! where a bracket `[w, Y]` with `w` in a nonnegative component is
//! evaluated as `w(Y)`. Each `g_k` is the nullspace of that system, built
//! from the already computed `g_0 .. g_{k-1}`.
//!
//! All computations happen in the basis adapted to the stratification
//! (layer bases concatenated), so every element stores, for each adapted
//! basis vector `e_b` of degree `j`, the coordinates of `u(e_b)`: local
//! coordinates inside `V_{j-k}` when `j > k`, otherwise coordinates in the
//! computed basis of `g_{k-j}`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{axpy, is_zero_vec, q, zero_vec, Matrix, Rational, SparseEchelon, SparseRow, Subspace};
use crate::grading::{verify_stratification, Stratification};
use crate::liealg::{change_of_basis, LieAlgebra, LinearEndo};
use crate::par;

/// Default degree cap for [`prolong`].
pub const DEFAULT_MAX_DEGREE: usize = 6;

/// The algebra rewritten in the adapted basis, with layer bookkeeping.
#[derive(Debug, Clone)]
struct GradedFrame {
    algebra: LieAlgebra,
    basis: Matrix,
    basis_inv: Matrix,
    degree: Vec<usize>,
    offsets: Vec<usize>,
    layer_dims: Vec<usize>,
}

impl GradedFrame {
    fn new(l: &LieAlgebra, s: &Stratification) -> Result<Self> {
        let layers = s.layers().to_vec();
        verify_stratification(l, &layers)?;
        let basis = s.adapted_basis();
        let basis_inv = basis.inverse()?;
        let algebra = if s.is_coordinate_aligned() {
            l.clone()
        } else {
            change_of_basis(l, &basis)?
        };
        let layer_dims = s.layer_dims();
        let mut offsets = Vec::with_capacity(layer_dims.len());
        let mut acc = 0;
        for d in &layer_dims {
            offsets.push(acc);
            acc += d;
        }
        Ok(Self {
            algebra,
            basis,
            basis_inv,
            degree: s.adapted_degrees(),
            offsets,
            layer_dims,
        })
    }

    fn dim(&self) -> usize {
        self.degree.len()
    }

    fn step(&self) -> usize {
        self.layer_dims.len()
    }

    /// Bracket of the `local`-th basis vector of `V_layer` with `e_b`, as
    /// local coordinates in `V_{layer + deg b}` (empty past the top layer).
    fn layer_bracket(&self, layer: usize, local: usize, b: usize) -> Vec<Rational> {
        let target = layer + self.degree[b];
        if target > self.step() {
            return Vec::new();
        }
        let off = self.offsets[target - 1];
        let mut out = zero_vec(self.layer_dims[target - 1]);
        for (k, c) in self.algebra.basis_bracket(self.offsets[layer - 1] + local, b) {
            out[k - off] = c.clone();
        }
        out
    }
}

/// Element of a nonnegative prolongation component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedElement {
    pub degree: usize,
    /// `images[b]` holds `u(e_b)` for the adapted basis vector `e_b`.
    pub images: Vec<Vec<Rational>>,
}

impl GradedElement {
    pub fn flat(&self) -> Vec<Rational> {
        self.images.iter().flatten().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|v| is_zero_vec(v))
    }

    pub fn scaled(&self, c: &Rational) -> GradedElement {
        GradedElement {
            degree: self.degree,
            images: self.images.iter().map(|v| v.iter().map(|x| c * x).collect()).collect(),
        }
    }
}

#[derive(Debug, Clone)]
struct Component {
    space: Subspace,
    basis: Vec<GradedElement>,
}

/// Whether the prolongation was seen to terminate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Finiteness {
    /// Some computed component vanished, hence all later ones vanish.
    Finite,
    /// The degree cap was reached while the last component was nonzero.
    Unknown,
}

impl Finiteness {
    pub fn as_str(self) -> &'static str {
        match self {
            Finiteness::Finite => "finite",
            Finiteness::Unknown => "unknown",
        }
    }
}

/// Computed components `g_0, ..., g_K` of the Tanaka prolongation.
#[derive(Debug, Clone)]
pub struct ProlongationResult {
    frame: GradedFrame,
    components: Vec<Component>,
    pub finite: Finiteness,
}

impl ProlongationResult {
    fn start(l: &LieAlgebra, s: &Stratification) -> Result<Self> {
        Ok(Self {
            frame: GradedFrame::new(l, s)?,
            components: Vec::new(),
            finite: Finiteness::Unknown,
        })
    }

    /// `(dim g_0, dim g_1, ...)` for every computed component.
    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.space.dim()).collect()
    }

    /// Total dimension of the computed part including `g_-`.
    pub fn total_dim(&self) -> usize {
        self.frame.dim() + self.dims().iter().sum::<usize>()
    }

    pub fn computed_degrees(&self) -> usize {
        self.components.len()
    }

    pub fn basis(&self, k: usize) -> Option<&[GradedElement]> {
        self.components.get(k).map(|c| c.basis.as_slice())
    }

    /// Component `g_k` as a subspace of its flattened hom-space coordinates.
    pub fn space(&self, k: usize) -> Option<&Subspace> {
        self.components.get(k).map(|c| &c.space)
    }

    /// Adapted basis of the algebra (columns), in which element images are
    /// expressed.
    pub fn adapted_basis(&self) -> &Matrix {
        &self.frame.basis
    }

    fn has_zero_component(&self) -> Option<usize> {
        self.components.iter().position(|c| c.space.is_zero())
    }

    /// Dimension of the degree-`m` piece used as a target, or an error when
    /// that piece is neither a layer nor a computed (or provably zero)
    /// component.
    fn target_dim(&self, m: isize) -> Result<usize> {
        if m < 0 {
            let l = (-m) as usize;
            return Ok(if l <= self.frame.step() {
                self.frame.layer_dims[l - 1]
            } else {
                0
            });
        }
        let m = m as usize;
        match self.components.get(m) {
            Some(c) => Ok(c.space.dim()),
            None if self.has_zero_component().is_some_and(|z| z <= m) => Ok(0),
            None => Err(Error::ComponentMissing(m)),
        }
    }

    /// `[w, e_b]` where `w` is the `idx`-th basis vector of the degree-`m`
    /// piece; result lies in degree `m - deg b`.
    fn act(&self, m: isize, idx: usize, b: usize) -> Vec<Rational> {
        if m < 0 {
            self.frame.layer_bracket((-m) as usize, idx, b)
        } else {
            self.components[m as usize].basis[idx].images[b].clone()
        }
    }

    /// Column offsets of each `u(e_b)` block for degree `k` unknowns.
    fn layout(&self, k: usize) -> Result<(Vec<usize>, Vec<usize>)> {
        let n = self.frame.dim();
        let mut offsets = Vec::with_capacity(n);
        let mut sizes = Vec::with_capacity(n);
        let mut acc = 0;
        for b in 0..n {
            let size = self.target_dim(k as isize - self.frame.degree[b] as isize)?;
            offsets.push(acc);
            sizes.push(size);
            acc += size;
        }
        offsets.push(acc);
        Ok((offsets, sizes))
    }

    /// Leibniz equations for degree `k` over basis pairs `a < b`.
    fn equations(&self, k: usize, offsets: &[usize], sizes: &[usize]) -> Result<Vec<SparseRow>> {
        let n = self.frame.dim();
        let deg = &self.frame.degree;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        // target dimensions are looked up before entering the parallel section
        let mut tdims = BTreeMap::new();
        for &(a, b) in &pairs {
            let m = k as isize - (deg[a] + deg[b]) as isize;
            if let std::collections::btree_map::Entry::Vacant(e) = tdims.entry(m) {
                e.insert(self.target_dim(m)?);
            }
        }
        let rows = par::flat_map(&pairs, |&(a, b)| {
            let m = k as isize - (deg[a] + deg[b]) as isize;
            let tdim = tdims[&m];
            if tdim == 0 {
                return Vec::new();
            }
            let mut eqs: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); tdim];
            // u([e_a, e_b])
            for (c, coeff) in self.frame.algebra.basis_bracket(a, b) {
                debug_assert_eq!(sizes[*c], tdim);
                for (t, eq) in eqs.iter_mut().enumerate() {
                    *eq.entry(offsets[*c] + t).or_insert_with(Rational::zero) += coeff;
                }
            }
            // - [u(e_a), e_b]
            let ma = k as isize - deg[a] as isize;
            for idx in 0..sizes[a] {
                for (t, x) in self.act(ma, idx, b).iter().enumerate() {
                    if !x.is_zero() {
                        *eqs[t].entry(offsets[a] + idx).or_insert_with(Rational::zero) -= x;
                    }
                }
            }
            // - [e_a, u(e_b)] = + [u(e_b), e_a]
            let mb = k as isize - deg[b] as isize;
            for idx in 0..sizes[b] {
                for (t, x) in self.act(mb, idx, a).iter().enumerate() {
                    if !x.is_zero() {
                        *eqs[t].entry(offsets[b] + idx).or_insert_with(Rational::zero) += x;
                    }
                }
            }
            eqs.into_iter()
                .map(|e| e.into_iter().filter(|(_, c)| !c.is_zero()).collect::<SparseRow>())
                .filter(|r| !r.is_empty())
                .collect()
        });
        Ok(rows)
    }

    /// Solves for the next component regardless of earlier vanishing and
    /// returns its dimension. [`prolong`] stops at the first zero component;
    /// this is exposed to check that vanishing propagates.
    pub fn compute_next_degree(&mut self) -> Result<usize> {
        let k = self.components.len();
        let (offsets, sizes) = self.layout(k)?;
        let unknowns = offsets[self.frame.dim()];
        let mut ech = SparseEchelon::new(unknowns);
        for row in self.equations(k, &offsets, &sizes)? {
            ech.push(row);
        }
        let space = ech.nullspace();
        let basis = space
            .basis_vectors()
            .into_iter()
            .map(|v| self.decode(k, &offsets, &v))
            .collect();
        let dim = space.dim();
        self.components.push(Component { space, basis });
        if dim == 0 {
            self.finite = Finiteness::Finite;
        }
        Ok(dim)
    }

    fn decode(&self, k: usize, offsets: &[usize], flat: &[Rational]) -> GradedElement {
        GradedElement {
            degree: k,
            images: (0..self.frame.dim())
                .map(|b| flat[offsets[b]..offsets[b + 1]].to_vec())
                .collect(),
        }
    }

    /// The grading derivation as an element of `g_0`.
    pub fn grading_element(&self) -> GradedElement {
        GradedElement {
            degree: 0,
            images: (0..self.frame.dim())
                .map(|b| {
                    let j = self.frame.degree[b];
                    let mut v = zero_vec(self.frame.layer_dims[j - 1]);
                    v[b - self.frame.offsets[j - 1]] = q(j as i64);
                    v
                })
                .collect(),
        }
    }

    /// Membership of `u` in its computed component.
    pub fn contains(&self, u: &GradedElement) -> Result<bool> {
        match self.components.get(u.degree) {
            Some(c) => Ok(u.images.len() == self.frame.dim() && c.space.contains(&u.flat())),
            None if self.has_zero_component().is_some_and(|z| z <= u.degree) => Ok(u.is_zero()),
            None => Err(Error::ComponentMissing(u.degree)),
        }
    }

    /// Coordinates of `u` in the stored basis of its component.
    fn coordinates(&self, u: &GradedElement) -> Result<Vec<Rational>> {
        match self.components.get(u.degree) {
            Some(c) => c
                .space
                .coordinates(&u.flat())
                .ok_or(Error::ComponentMissing(u.degree)),
            None if self.has_zero_component().is_some_and(|z| z <= u.degree) => Ok(Vec::new()),
            None => Err(Error::ComponentMissing(u.degree)),
        }
    }

    /// `[u, w]` for `u` in `g_k` and `w` given by coordinates in the
    /// degree-`m` piece; lands in degree `k + m`.
    fn bracket_with(&self, u: &GradedElement, m: isize, w: &[Rational]) -> Result<Vec<Rational>> {
        let target = u.degree as isize + m;
        let mut out = zero_vec(self.target_dim(target)?);
        if m < 0 {
            let layer = (-m) as usize;
            let off = self.frame.offsets[layer - 1];
            for (idx, c) in w.iter().enumerate() {
                axpy(&mut out, c, &u.images[off + idx]);
            }
        } else {
            for (idx, c) in w.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let basis_el = &self.components[m as usize].basis[idx];
                let br = self.bracket(u, basis_el)?;
                axpy(&mut out, c, &self.coordinates(&br)?);
            }
        }
        Ok(out)
    }

    /// Bracket of two nonnegative-degree elements, defined through
    /// `[u, v](X) = [u, [v, X]] - [v, [u, X]]`.
    pub fn bracket(&self, u: &GradedElement, v: &GradedElement) -> Result<GradedElement> {
        let degree = u.degree + v.degree;
        let n = self.frame.dim();
        let mut images = Vec::with_capacity(n);
        for b in 0..n {
            let j = self.frame.degree[b] as isize;
            let mut first = self.bracket_with(u, v.degree as isize - j, &v.images[b])?;
            let second = self.bracket_with(v, u.degree as isize - j, &u.images[b])?;
            for (x, y) in first.iter_mut().zip(second) {
                *x -= y;
            }
            images.push(first);
        }
        Ok(GradedElement { degree, images })
    }

    /// Restriction of a degree-`k` element to `V_1`, flattened.
    pub fn restrict_to_first_layer(&self, u: &GradedElement) -> Vec<Rational> {
        (0..self.frame.dim())
            .filter(|&b| self.frame.degree[b] == 1)
            .flat_map(|b| u.images[b].iter().cloned())
            .collect()
    }

    /// Degree-0 element as an endomorphism of the algebra in the original
    /// basis.
    pub fn degree_zero_endo(&self, u: &GradedElement) -> Result<LinearEndo> {
        if u.degree != 0 {
            return Err(Error::DimensionMismatch {
                expected: 0,
                found: u.degree,
            });
        }
        let n = self.frame.dim();
        let mut m = Matrix::zeros(n, n);
        for b in 0..n {
            let j = self.frame.degree[b];
            let off = self.frame.offsets[j - 1];
            for (idx, x) in u.images[b].iter().enumerate() {
                m.set(off + idx, b, x.clone());
            }
        }
        let conj = self.frame.basis.mul(&m)?.mul(&self.frame.basis_inv)?;
        Ok(LinearEndo(conj))
    }
}

/// Layer-preserving derivations, as a subspace of the `n^2`-dimensional
/// endomorphism space (row-major, see [`LinearEndo::to_flat`]).
pub fn degree_zero_derivations(l: &LieAlgebra, s: &Stratification) -> Result<Subspace> {
    let mut p = ProlongationResult::start(l, s)?;
    p.compute_next_degree()?;
    let n = l.dim();
    let flats = p.components[0]
        .basis
        .iter()
        .map(|u| p.degree_zero_endo(u).map(|e| e.to_flat()))
        .collect::<Result<Vec<_>>>()?;
    Subspace::span(n * n, &flats)
}

/// Computes `g_0, g_1, ...` up to degree `k_max`, stopping at the first zero
/// component.
pub fn prolong(l: &LieAlgebra, s: &Stratification, k_max: usize) -> Result<ProlongationResult> {
    let mut p = ProlongationResult::start(l, s)?;
    for _ in 0..=k_max {
        if p.compute_next_degree()? == 0 {
            break;
        }
    }
    Ok(p)
}

pub fn prolongation_bracket(p: &ProlongationResult, u: &GradedElement, v: &GradedElement) -> Result<GradedElement> {
    p.bracket(u, v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityVerdict {
    pub g0_dim: usize,
    pub infinitesimally_ultrarigid: bool,
    /// `Some(g_1 == 0)` when the algebra is nonabelian with `dim g_0 = 1`.
    pub lemma_prodim1_confirmed: Option<bool>,
}

/// Decides whether the only layer-preserving derivations are multiples of
/// the grading derivation and, in that case, whether `g_1` vanishes.
pub fn ultrarigidity_check(l: &LieAlgebra, s: &Stratification) -> Result<RigidityVerdict> {
    let mut p = ProlongationResult::start(l, s)?;
    let g0_dim = p.compute_next_degree()?;
    let rigid = g0_dim == 1;
    let lemma = if rigid && !l.table().is_empty() {
        Some(p.compute_next_degree()? == 0)
    } else {
        None
    };
    Ok(RigidityVerdict {
        g0_dim,
        infinitesimally_ultrarigid: rigid,
        lemma_prodim1_confirmed: lemma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::grading_derivation;
    use crate::liealg::{derivation_algebra, is_derivation};

    fn heisenberg() -> (LieAlgebra, Stratification) {
        let h = LieAlgebra::from_integer_table(3, &[(1, 2, &[(1, 3)])]).unwrap();
        let s = verify_stratification(&h, &[Subspace::coordinate(3, [0, 1]), Subspace::coordinate(3, [2])]).unwrap();
        (h, s)
    }

    #[test]
    fn heisenberg_g0_is_gl2_plus_scaling() {
        let (h, s) = heisenberg();
        let g0 = degree_zero_derivations(&h, &s).unwrap();
        assert_eq!(g0.dim(), 4);
        assert!(g0.contains(&grading_derivation(&s).to_flat()));
        let der = derivation_algebra(&h).unwrap();
        for b in g0.basis_vectors() {
            assert!(der.contains(&b));
            let u = LinearEndo::from_flat(3, b).unwrap();
            assert!(is_derivation(&h, &u));
            // block shape: e1, e2 do not map to e3 and e3 maps into span(e3)
            assert!(u.matrix().get(2, 0).is_zero() && u.matrix().get(2, 1).is_zero());
            assert!(u.matrix().get(0, 2).is_zero() && u.matrix().get(1, 2).is_zero());
        }
    }

    #[test]
    fn heisenberg_matches_contact_hamiltonian_count() {
        // g_k of the 3-dim contact algebra corresponds to polynomials in
        // (x, y, z) of weighted degree k + 2 with weights (1, 1, 2)
        let count = |w: usize| (0..=w / 2).map(|c| w - 2 * c + 1).sum::<usize>();
        let (h, s) = heisenberg();
        let p = prolong(&h, &s, 5).unwrap();
        let oracle: Vec<usize> = (0..=5).map(|k| count(k + 2)).collect();
        assert_eq!(p.dims(), oracle);
        assert_eq!(p.finite, Finiteness::Unknown);
    }

    #[test]
    fn abelian_plane_never_terminates() {
        let a = LieAlgebra::abelian(2);
        let s = verify_stratification(&a, &[Subspace::full(2)]).unwrap();
        let p = prolong(&a, &s, 4).unwrap();
        // g_k = symmetric (k+1)-linear maps into Q^2
        assert_eq!(p.dims(), vec![4, 6, 8, 10, 12]);
        assert_eq!(p.finite, Finiteness::Unknown);
    }

    #[test]
    fn grading_element_acts_by_degree() {
        let (h, s) = heisenberg();
        let p = prolong(&h, &s, 2).unwrap();
        let d = p.grading_element();
        assert!(p.contains(&d).unwrap());
        for k in 0..p.computed_degrees() {
            for u in p.basis(k).unwrap() {
                let br = p.bracket(&d, u).unwrap();
                assert_eq!(br, u.scaled(&q(-(k as i64))));
                if 2 * k < p.computed_degrees() {
                    assert!(p.bracket(u, u).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn non_aligned_stratification_gives_same_dims() {
        let (h, _) = heisenberg();
        let v1 = Subspace::span(3, &[vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]]).unwrap();
        let s = verify_stratification(&h, &[v1, Subspace::coordinate(3, [2])]).unwrap();
        assert!(!s.is_coordinate_aligned());
        let g0 = degree_zero_derivations(&h, &s).unwrap();
        assert_eq!(g0.dim(), 4);
        assert!(g0.contains(&grading_derivation(&s).to_flat()));
        for b in g0.basis_vectors() {
            assert!(is_derivation(&h, &LinearEndo::from_flat(3, b).unwrap()));
        }
        assert_eq!(prolong(&h, &s, 2).unwrap().dims(), {
            let (h, s) = heisenberg();
            prolong(&h, &s, 2).unwrap().dims()
        });
    }

    #[test]
    fn missing_component_is_reported() {
        let (h, s) = heisenberg();
        let p = prolong(&h, &s, 0).unwrap();
        let fake = GradedElement {
            degree: 1,
            images: vec![Vec::new(); 3],
        };
        assert_eq!(p.contains(&fake), Err(Error::ComponentMissing(1)));
    }
}
