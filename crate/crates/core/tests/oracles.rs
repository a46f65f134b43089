//! Results checked against values obtained independently of the solver
//! under test: closed-form dimension counts, a second formulation of the
//! same linear-algebra question, or a known classification.

use num_traits::Zero;

use carnot_core::catalog;
use carnot_core::exactlin::{nullspace, q, Matrix, Rational, Subspace};
use carnot_core::format;
use carnot_core::grading::{grading_derivation, nilpotentisation, verify_stratification, Stratification};
use carnot_core::liealg::{
    ad, derivation_algebra, is_derivation, jacobi_defect, semidirect_with_derivation, LieAlgebra,
};
use carnot_core::tanaka::{prolong, Finiteness};

fn declared(name: &str) -> (LieAlgebra, Stratification) {
    let e = catalog::get(name).unwrap();
    let layers = format::ranges_to_layers(e.algebra.dim(), e.declared_layers.as_ref().unwrap());
    let s = verify_stratification(&e.algebra, &layers).unwrap();
    (e.algebra, s)
}

/// Annihilator of a subspace, as a subspace of the dual.
fn annihilator(s: &Subspace) -> Subspace {
    if s.is_zero() {
        return Subspace::full(s.ambient_dim());
    }
    nullspace(s.basis())
}

#[test]
fn intersection_agrees_with_annihilator_formula() {
    // A ∩ B = ann(ann A + ann B)
    let v = |xs: &[i64]| xs.iter().map(|&x| q(x)).collect::<Vec<Rational>>();
    let a = Subspace::span(5, &[v(&[1, 2, 0, 0, 1]), v(&[0, 1, 1, 0, 0]), v(&[3, 0, 0, 1, 0])]).unwrap();
    let b = Subspace::span(5, &[v(&[1, 3, 1, 0, 1]), v(&[0, 0, 0, 0, 1]), v(&[2, 1, 0, 1, 1])]).unwrap();
    let direct = a.intersect(&b).unwrap();
    let dual = annihilator(&annihilator(&a).sum(&annihilator(&b)).unwrap());
    assert_eq!(direct, dual);
    assert_eq!(a.sum(&b).unwrap().dim(), 5);
    assert_eq!(direct.dim(), 1);
}

#[test]
fn derivation_dimensions_match_closed_forms() {
    // abelian: all of gl(n)
    for n in 1..=4 {
        assert_eq!(derivation_algebra(&LieAlgebra::abelian(n)).unwrap().dim(), n * n);
    }
    // h3: gl(2) on the first layer, plus the 2 maps V1 -> V2
    let (h3, _) = declared("heisenberg_3");
    assert_eq!(derivation_algebra(&h3).unwrap().dim(), 6);
    // free 2-step on 3 generators: images of the generators are arbitrary
    let (f, _) = declared("free_step2_rank3");
    assert_eq!(derivation_algebra(&f).unwrap().dim(), 3 * 6);
}

#[test]
fn example1_has_inner_derivations_and_d() {
    let (g, s) = declared("example1_16");
    let der = derivation_algebra(&g).unwrap();
    let mut inner = Vec::new();
    for i in 0..10 {
        let mut x = vec![Rational::zero(); 16];
        x[i] = q(1);
        let a = ad(&g, &x).unwrap();
        assert!(is_derivation(&g, &a));
        inner.push(a.to_flat());
    }
    let inner = Subspace::span(256, &inner).unwrap();
    // the center is exactly the second layer, so ad is injective on V1
    assert_eq!(inner.dim(), 10);
    assert!(inner.is_subspace_of(&der));
    let d = grading_derivation(&s).to_flat();
    assert!(der.contains(&d));
    assert!(!inner.contains(&d));
    assert!(der.dim() >= 11);
}

#[test]
fn nilpotentisation_of_a_carnot_algebra_is_itself() {
    for name in ["example1_16", "example2_17", "free_step2_rank3", "heisenberg_2n1(2)"] {
        let (l, s) = declared(name);
        let gr = nilpotentisation(&l, &s.layers()[0]).unwrap();
        assert_eq!(gr.algebra.table(), l.table(), "{name}");
        assert_eq!(gr.stratification.layer_dims(), s.layer_dims());
        let again = nilpotentisation(&gr.algebra, &gr.stratification.layers()[0]).unwrap();
        assert_eq!(again.algebra, gr.algebra);
    }
}

#[test]
fn nilpotentisation_with_a_skew_horizontal_space() {
    // h3 with horizontal space spanned by e1 + e3 and e2: gr is again h3
    let (h3, _) = declared("heisenberg_3");
    let hz = Subspace::span(3, &[vec![q(1), q(0), q(1)], vec![q(0), q(1), q(0)]]).unwrap();
    let gr = nilpotentisation(&h3, &hz).unwrap();
    assert_eq!(gr.stratification.layer_dims(), vec![2, 1]);
    assert!(jacobi_defect(&gr.algebra).is_empty());
    assert_eq!(gr.algebra.table().len(), 1);
}

#[test]
fn free_step2_rank3_prolongs_to_so_3_4() {
    // the prolongation of the free 2-step algebra on 3 generators is the
    // split real form so(3,4): 3 + 3 + 9 + 3 + 3 = 21
    let (f, s) = declared("free_step2_rank3");
    let p = prolong(&f, &s, 6).unwrap();
    assert_eq!(p.dims(), vec![9, 3, 3, 0]);
    assert_eq!(p.finite, Finiteness::Finite);
    assert_eq!(p.total_dim(), 21);
}

#[test]
fn heisenberg_5_matches_contact_count() {
    // g_k of the 5-dim contact algebra: weighted-homogeneous polynomials of
    // weight k + 2 in four variables of weight 1 and one of weight 2
    let binom = |n: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
    let count = |w: usize| (0..=w / 2).map(|c| binom(w - 2 * c + 3, 3)).sum::<usize>();
    let (h5, s) = declared("heisenberg_2n1(2)");
    let p = prolong(&h5, &s, 3).unwrap();
    let oracle: Vec<usize> = (0..=3).map(|k| count(k + 2)).collect();
    assert_eq!(p.dims(), oracle);
}

#[test]
fn restriction_to_the_first_layer_is_injective() {
    for name in ["heisenberg_3", "free_step2_rank3"] {
        let (l, s) = declared(name);
        let p = prolong(&l, &s, 3).unwrap();
        for k in 1..p.computed_degrees() {
            let basis = p.basis(k).unwrap();
            let rows: Vec<Vec<Rational>> = basis.iter().map(|u| p.restrict_to_first_layer(u)).collect();
            if rows.is_empty() {
                continue;
            }
            let m = Matrix::from_rows(rows[0].len(), rows).unwrap();
            assert_eq!(m.rank(), basis.len(), "{name} degree {k}");
        }
    }
}

#[test]
fn vanishing_propagates_one_degree_further() {
    for name in ["example1_16", "example2_17", "free_step2_rank3"] {
        let (l, s) = declared(name);
        let mut p = prolong(&l, &s, 6).unwrap();
        assert_eq!(*p.dims().last().unwrap(), 0, "{name}");
        assert_eq!(p.compute_next_degree().unwrap(), 0, "{name}");
    }
}

#[test]
fn translation_dilation_algebra() {
    let (g, s) = declared("example1_16");
    let d = grading_derivation(&s);
    let td = semidirect_with_derivation(&g, &d).unwrap();
    assert_eq!(td.dim(), 17);
    assert!(jacobi_defect(&td).is_empty());
    // [e_1, D] = -D(e_1) = -e_1 and [e_11, D] = -2 e_11
    assert_eq!(td.bracket_basis(0, 16)[0], q(-1));
    assert_eq!(td.bracket_basis(10, 16)[10], q(-2));
}
