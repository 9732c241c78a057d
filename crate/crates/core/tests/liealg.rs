mod common;

use gkforge::exactlin::{int, CScalar, Scalar};
use gkforge::forms::FormElement;
use gkforge::liealg::LieAlgebra;
use gkforge::Error;
use proptest::prelude::*;

fn algebra(dim: usize, entries: &[(usize, usize, usize, i64)]) -> LieAlgebra {
    let e: Vec<(usize, usize, usize, Scalar)> = entries.iter().map(|&(i, j, k, c)| (i, j, k, int(c))).collect();
    LieAlgebra::from_brackets(dim, &e).unwrap()
}

#[test]
fn construction_errors() {
    let err = LieAlgebra::from_brackets(3, &[(0, 1, 2, int(1)), (1, 0, 2, int(1))]).unwrap_err();
    assert_eq!(err, Error::NotAntisymmetric { i: 1, j: 0, k: 2 });
    let err = LieAlgebra::from_brackets(3, &[(0, 0, 2, int(1))]).unwrap_err();
    assert!(matches!(err, Error::NotAntisymmetric { .. }));
    let err = LieAlgebra::from_brackets(3, &[(0, 3, 2, int(1))]).unwrap_err();
    assert_eq!(err, Error::IndexOutOfRange { index: 3, dim: 3 });
    // the transpose with the opposite sign is accepted
    assert!(LieAlgebra::from_brackets(3, &[(0, 1, 2, int(1)), (1, 0, 2, int(-1))]).is_ok());
}

#[test]
fn jacobi_failure_is_reported() {
    // [e1,e2]=e3, [e2,e3]=e1 alone breaks Jacobi
    let g = algebra(3, &[(0, 1, 2, 1), (1, 2, 0, 1), (0, 2, 0, 1)]);
    let r = g.check_jacobi();
    assert!(!r.holds);
    assert!(r.failure.is_some());
    assert!(matches!(g.ce_differential(), Err(Error::DSquaredNonzero { .. })));
}

#[test]
fn bracket_of_vectors() {
    let g = algebra(3, &[(0, 1, 2, 1)]);
    let x = vec![CScalar::from_int(2), CScalar::zero(), CScalar::one()];
    let y = vec![CScalar::zero(), CScalar::from_int(3), CScalar::zero()];
    assert_eq!(g.bracket(&x, &y), vec![CScalar::zero(), CScalar::zero(), CScalar::from_int(6)]);
    assert_eq!(g.ce_images()[2], FormElement::from_indices(&[0, 1], CScalar::from_int(-1)));
}

#[test]
fn lower_central_series_of_known_algebras() {
    let expected = [
        ("ab3", Some(1)),
        ("heis3", Some(2)),
        ("so3", None),
        ("r2", None),
        ("kt4", Some(2)),
        ("hyperell", None),
        ("filiform5", Some(4)),
        ("heis5", Some(2)),
    ];
    for ((name, n, entries), (ename, step)) in common::known_algebras().into_iter().zip(expected) {
        assert_eq!(name, ename);
        let lcs = algebra(n, &entries).lower_central_series();
        assert_eq!(lcs.step, step, "{name}");
        assert_eq!(lcs.is_nilpotent, step.is_some());
        assert!(lcs.series.len() <= n + 1);
    }
}

#[test]
fn filtration_on_nilpotent_and_not() {
    for (name, n, entries) in common::known_algebras() {
        let g = algebra(n, &entries);
        let nilpotent = g.lower_central_series().is_nilpotent;
        match g.filtration() {
            Ok(fl) => {
                assert!(nilpotent, "{name}");
                assert!(fl.length() <= n);
                assert_eq!(*fl.step_dims().last().unwrap(), n);
                assert!(g.check_minimal_basis(&fl.basis_forms()).unwrap(), "{name}");
            }
            Err(e) => {
                assert!(!nilpotent, "{name}");
                assert!(matches!(e, Error::FiltrationStalled { .. }));
            }
        }
    }
    let fl = algebra(5, &common::known_algebras()[6].2).filtration().unwrap();
    assert_eq!(fl.step_dims(), vec![2, 3, 4, 5]);
}

#[test]
fn minimal_basis_rejects_spanning_failures() {
    let g = algebra(3, &[(0, 1, 2, 1)]);
    let e = |i| FormElement::from_indices(&[i], CScalar::one());
    assert!(matches!(g.check_minimal_basis(&[e(0), e(1), e(1)]), Err(Error::NonSpanningBasis { rank: 2, total: 3 })));
    assert!(!g.check_minimal_basis(&[e(2), e(0), e(1)]).unwrap());
}

fn rational_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, n), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn jacobi_iff_d_squared_zero(n in 3usize..=5, raw in prop::collection::vec((0usize..5, 0usize..5, 0usize..5, -2i64..=2), 0..5)) {
        let entries: Vec<_> = raw.into_iter().filter(|&(i, j, k, _)| i < j && j < n && k < n).collect();
        let mut seen = std::collections::HashSet::new();
        let entries: Vec<_> = entries.into_iter().filter(|&(i, j, k, _)| seen.insert((i, j, k))).collect();
        let g = algebra(n, &entries);
        let oracle = common::jacobi_holds(n, &common::table(n, &entries));
        prop_assert_eq!(g.check_jacobi().holds, oracle);
        prop_assert_eq!(g.ce_differential().is_ok(), oracle);
    }

    #[test]
    fn betti_invariant_under_basis_change(which in 0usize..8, p in rational_matrix(5)) {
        let (name, n, entries) = &common::known_algebras()[which];
        let n = *n;
        let p: Vec<Vec<common::Q>> = p[..n].iter().map(|r| r[..n].iter().map(|&x| common::q(x)).collect()).collect();
        let Some(c) = common::change_basis(n, &common::table(n, entries), &p) else { return Ok(()) };
        let g = LieAlgebra::from_table(n, c.clone()).unwrap();
        prop_assert!(g.check_jacobi().holds, "{}", name);
        let betti = g.ce_differential().unwrap().cohomology().betti();
        prop_assert_eq!(&betti, &common::betti(n, &c));
        prop_assert_eq!(betti, common::betti(n, &common::table(n, entries)));
    }
}
