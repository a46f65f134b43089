use num_traits::Zero;
use proptest::prelude::*;

use carnot_core::exactlin::{nullspace, q, quotient_basis, rref, solve_affine, Matrix, Rational, Subspace};
use carnot_core::format;
use carnot_core::grading::{is_stratifiable, is_stratifying_derivation};
use carnot_core::liealg::{ad, change_of_basis, is_derivation, jacobi_defect, LieAlgebra};

fn small_vec(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-3i64..=3, n).prop_map(|v| v.into_iter().map(q).collect())
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(small_vec(c), r).prop_map(move |rows| Matrix::from_rows(c, rows).unwrap())
    })
}

fn unimodular(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..8).prop_map(move |ops| {
        let mut m = Matrix::identity(n);
        for (i, j, c) in ops {
            if i != j {
                for r in 0..n {
                    let x = m.get(r, j) + q(c) * m.get(r, i);
                    m.set(r, j, x);
                }
            }
        }
        m
    })
}

/// Random 2-step nilpotent algebra on `r` generators with `m` central
/// directions; Jacobi holds automatically.
fn two_step() -> impl Strategy<Value = LieAlgebra> {
    (2usize..=4, 1usize..=3).prop_flat_map(|(r, m)| {
        let pairs = r * (r - 1) / 2;
        prop::collection::vec(small_vec(m), pairs).prop_map(move |coeffs| {
            let n = r + m;
            let pairs = (0..r).flat_map(|a| (a + 1..r).map(move |b| (a, b)));
            let entries = pairs.zip(coeffs).map(|((a, b), c)| {
                let mut v = vec![Rational::zero(); n];
                v[r..].clone_from_slice(&c);
                (a, b, v)
            });
            LieAlgebra::new(n, entries).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rref_is_idempotent(m in matrix(5)) {
        let (r, rank) = rref(&m);
        prop_assert_eq!(rref(&r), (r.clone(), rank));
        prop_assert_eq!(rank, m.rank());
        prop_assert!(rank <= m.rows().min(m.cols()));
    }

    #[test]
    fn nullspace_is_the_kernel(m in matrix(5)) {
        let k = nullspace(&m);
        prop_assert_eq!(k.dim() + m.rank(), m.cols());
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn affine_solutions_solve(m in matrix(5), x0 in small_vec(5)) {
        let x0 = &x0[..m.cols()];
        let b = m.mul_vec(x0).unwrap();
        let (x, hom) = solve_affine(&m, &b).unwrap().expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
        prop_assert_eq!(hom, nullspace(&m));
    }

    #[test]
    fn unimodular_inverse(p in unimodular(5)) {
        let inv = p.inverse().unwrap();
        prop_assert_eq!(p.mul(&inv).unwrap(), Matrix::identity(5));
    }

    #[test]
    fn quotient_basis_completes(a in prop::collection::vec(small_vec(5), 0..4), b in prop::collection::vec(small_vec(5), 0..4)) {
        let sub = Subspace::span(5, &a).unwrap();
        let whole = sub.sum(&Subspace::span(5, &b).unwrap()).unwrap();
        let comp = quotient_basis(&sub, &whole).unwrap();
        prop_assert_eq!(comp.len(), whole.dim() - sub.dim());
        let rebuilt = sub.sum(&Subspace::span(5, &comp).unwrap()).unwrap();
        prop_assert_eq!(rebuilt, whole);
    }

    #[test]
    fn inner_derivations(l in two_step(), seed in small_vec(7)) {
        let x = &seed[..l.dim()];
        prop_assert!(is_derivation(&l, &ad(&l, x).unwrap()));
    }

    #[test]
    fn two_step_algebras_are_stratifiable((l, p) in two_step().prop_flat_map(|l| {
        let n = l.dim();
        (Just(l), unimodular(n))
    })) {
        // any 2-step nilpotent algebra is stratifiable: a complement of the
        // derived algebra serves as first layer
        let m = change_of_basis(&l, &p).unwrap();
        prop_assert!(jacobi_defect(&m).is_empty());
        let v = is_stratifiable(&m).unwrap();
        prop_assert!(v.stratifiable);
        prop_assert!(is_stratifying_derivation(&m, v.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn emit_parse_round_trip(l in two_step()) {
        let text = format::emit(&l, None, None);
        let back = format::parse(&text).unwrap();
        prop_assert_eq!(&back.algebra, &l);
        prop_assert!(back.layers.is_none());
    }
}
