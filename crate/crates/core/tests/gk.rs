mod common;

use gkforge::catalog;
use gkforge::courant::TwistedDouble;
use gkforge::exactlin::{CScalar, Matrix};
use gkforge::forms::FormElement;
use gkforge::gcs::{complex_structure_gcs, symplectic_gcs};
use gkforge::gk::*;
use gkforge::liealg::LieAlgebra;
use gkforge::Error;

fn f(ix: &[usize]) -> FormElement {
    FormElement::from_indices(ix, CScalar::one())
}

fn jstd() -> Matrix {
    Matrix::from_i64(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]])
}

fn omega() -> FormElement {
    f(&[0, 1]).add(&f(&[2, 3]))
}

fn t4() -> TwistedDouble {
    TwistedDouble::untwisted(LieAlgebra::abelian(4))
}

fn all_pairs() -> Vec<(String, GkPair)> {
    let mut out = Vec::new();
    for name in catalog::builtin_names() {
        let e = catalog::builtin(name).unwrap();
        for p in e.pair_names() {
            out.push((format!("{name}/{p}"), e.pair(p).unwrap()));
        }
    }
    out
}

#[test]
fn check_gk_examples() {
    let cx = complex_structure_gcs(&jstd());
    let sym = symplectic_gcs(&omega(), 4).unwrap();
    assert!(check_gk(&cx, &sym, &t4()).passes());
    assert!(check_gk(&sym, &cx, &t4()).passes());

    let same = check_gk(&cx, &cx, &t4());
    assert!(same.commute && !same.positive_definite && !same.passes());

    let perturbed = symplectic_gcs(&omega().add(&f(&[0, 2])), 4).unwrap();
    let r = check_gk(&cx, &perturbed, &t4());
    assert!(r.j1.passes() && r.j2.passes() && !r.commute);

    // −ω gives a negative definite metric
    let neg = symplectic_gcs(&omega().neg(), 4).unwrap();
    let r = check_gk(&cx, &neg, &t4());
    assert!(r.commute && !r.positive_definite);

    match GkPair::new(t4(), cx.clone(), cx) {
        Err(Error::InvalidPair(msg)) => assert!(msg.contains("positive definite"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn intersections_split_evenly() {
    for (name, pair) in all_pairs() {
        let m = pair.j1().double().m();
        let d = pair.intersection_dims().unwrap();
        assert_eq!((d.l1, d.l1_cap_l2, d.l1_cap_l2bar, d.splits), (m, m / 2, m / 2, true), "{name}");
    }
}

#[test]
fn bigrading_dimensions() {
    for (name, pair) in all_pairs() {
        let m = pair.j1().double().m();
        let b = pair.l1_bigrading(7).unwrap();
        assert_eq!(b.p_generators, m / 2);
        assert_eq!(b.dims.iter().map(|(_, d)| d).sum::<usize>(), 1 << m, "{name}");
        for ((p, q), d) in &b.dims {
            assert_eq!(*d, common::binomial(m / 2, *p) * common::binomial(m / 2, *q));
        }
        assert_eq!(b.leibniz_pairs, 32);
        assert_eq!(b.del.add(&b.delbar), *b.algebroid.dga.d_matrix());
    }
}

#[test]
fn upq_dimensions() {
    for (name, pair) in all_pairs() {
        let m = pair.j1().double().m();
        let n = (m / 2) as i64;
        let upq = pair.upq_decomposition().unwrap();
        let mut expected = Vec::new();
        for a in 0..=n {
            for b in 0..=n {
                let d = common::binomial(n as usize, a as usize) * common::binomial(n as usize, b as usize);
                expected.push(((n - a - b, b - a), d));
            }
        }
        expected.sort_by(|x, y| y.0.cmp(&x.0));
        assert_eq!(upq.dims(), expected, "{name}");
        let rho1 = pair.j1().spinor().rho.to_dense(pair.j1().double().form_basis());
        assert_eq!(upq.sum.block_of(&rho1), upq.index_of(n, 0));
    }
}

#[test]
fn delta_operators() {
    for (name, pair) in all_pairs() {
        let d = pair.delta_pm().unwrap();
        assert!(d.plus.mul(&d.plus).is_zero(), "{name}");
        assert!(d.minus.mul(&d.minus).is_zero(), "{name}");
        assert!(d.plus.mul(&d.minus).add(&d.minus.mul(&d.plus)).is_zero(), "{name}");
        assert_eq!(d.plus.add(&d.minus), d.delbar1);
        assert_eq!(d.delbar1, pair.j1().del_delbar().unwrap().delbar);
    }
    let hyperell = catalog::builtin("hyperell").unwrap().pair("kahler").unwrap();
    let d = hyperell.delta_pm().unwrap();
    assert!(!d.plus.is_zero() && !d.minus.is_zero());
}

#[test]
fn ddbar_lemma_on_catalog_pairs() {
    let t4 = catalog::builtin("t4kahler").unwrap().pair("kahler").unwrap();
    let r = t4.ddbar_lemma_check().unwrap();
    assert!(r.holds() && r.im_plus_minus.is_zero());

    for p in ["kahler", "kahler_sc"] {
        let r = catalog::builtin("hyperell").unwrap().pair(p).unwrap().ddbar_lemma_check().unwrap();
        assert!(r.holds(), "{p}");
        assert_eq!((r.im_plus_ker_minus.dim(), r.im_minus_ker_plus.dim(), r.im_plus_minus.dim()), (2, 2, 2));
    }
    for (name, pair) in all_pairs() {
        assert!(pair.ddbar_lemma_check().unwrap().holds(), "{name}");
    }
}

#[test]
fn ddbar_identity_detects_violation() {
    // δ₊ : e₀ ↦ e₁, δ₋ = 0
    let plus = Matrix::from_i64(&[&[0, 0], &[1, 0]]);
    let minus = Matrix::zeros(2, 2);
    let r = ddbar_identity(&plus, &minus).unwrap();
    assert_eq!((r.im_plus_ker_minus.dim(), r.im_minus_ker_plus.dim(), r.im_plus_minus.dim()), (1, 0, 0));
    assert!(!r.holds());

    // both zero: trivially holds
    assert!(ddbar_identity(&minus, &minus).unwrap().holds());

    // δ₊ = δ₋ = shift on a 3-step chain: all three spaces are span(e₂)
    let shift = Matrix::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
    let r = ddbar_identity(&shift, &shift).unwrap();
    assert!(r.holds() && r.im_plus_minus.dim() == 1);
}

#[test]
fn correspondence_results() {
    let sc = catalog::builtin("hyperell").unwrap().pair("kahler_sc").unwrap();
    let r = sc.correspondence(3).unwrap();
    assert!(r.consistent());
    assert!(r.del_to_minus && !r.del_to_plus);
    assert_eq!(r.checked, 16);
    let b = sc.l1_bigrading(3).unwrap();
    assert!(!b.del.is_zero() && !b.delbar.is_zero());

    let t4 = catalog::builtin("t4kahler").unwrap().pair("kahler").unwrap();
    let r = t4.correspondence(0).unwrap();
    assert!(r.del_to_plus && r.del_to_minus && r.sum_identity);

    let not_trivial = catalog::builtin("hyperell").unwrap().pair("kahler").unwrap();
    assert_eq!(not_trivial.correspondence(0).unwrap_err(), Error::NotHolomorphicallyTrivial);
}

#[test]
fn leibniz_seed_does_not_matter() {
    let sc = catalog::builtin("hyperell").unwrap().pair("kahler_sc").unwrap();
    for seed in [0, 1, 42, u64::MAX] {
        assert!(sc.l1_bigrading(seed).is_ok());
    }
}

#[test]
fn formality_verdicts() {
    let kt4 = catalog::builtin("kt4").unwrap().gcs("symplectic").unwrap();
    let r = formality_algebroid(&kt4, 4).unwrap();
    assert!(matches!(r.verdict, FormalityVerdict::NonFormal { witness: true, massey: true }));
    assert_eq!(r.betti, vec![1, 3, 4, 3, 1]);
    assert_eq!(r.minimal, Some(true));

    let h3r = catalog::builtin("heis3_r").unwrap().gcs("symplectic").unwrap();
    let r = formality_algebroid(&h3r, 4).unwrap();
    assert!(r.verdict.is_non_formal());
    assert!(r.witness.unwrap().witness_found);

    let t4 = catalog::builtin("t4kahler").unwrap().gcs("complex").unwrap();
    let r = formality_algebroid(&t4, 4).unwrap();
    assert!(matches!(r.verdict, FormalityVerdict::NoObstruction { max_degree: 4 }));
    assert_eq!(r.betti, vec![1, 4, 6, 4, 1]);

    let hyperell = catalog::builtin("hyperell").unwrap();
    let r = formality_algebroid(&hyperell.gcs("symplectic").unwrap(), 4).unwrap();
    assert!(!r.verdict.is_non_formal());
    assert_eq!(r.filtration, None);
    assert_eq!(
        formality_algebroid(&hyperell.gcs("complex").unwrap(), 4).unwrap_err(),
        Error::NotHolomorphicallyTrivial
    );
}

#[test]
fn symplectic_algebroid_matches_de_rham() {
    // for J_ω the algebroid complex is isomorphic to the CE complex
    for name in ["kt4", "heis3_r", "hyperell"] {
        let e = catalog::builtin(name).unwrap();
        let alg = e.gcs("symplectic").unwrap().algebroid().unwrap();
        assert_eq!(alg.dga.cohomology().betti(), e.algebra.ce_differential().unwrap().cohomology().betti(), "{name}");
    }
}
