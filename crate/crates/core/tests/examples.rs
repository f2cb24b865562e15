mod common;

use common::*;
use gradedk_core::algebra::GradedAlgebra;
use gradedk_core::field::Field;
use gradedk_core::filtration::{filter, layer, psi_q, theta};
use gradedk_core::gmod::{decompose, functor_t, graded_iso, nu, psi, ProjectivePresentation};
use gradedk_core::grading::GradingGroup;
use gradedk_core::ktheory::{corollary_check, k0, lemma_check, quillen_case, theorem1_check};

#[test]
fn quillen_examples() {
    let r = quillen_case(&qx(), 0, None).unwrap();
    assert!(r.passed());
    assert_eq!(r.correspondence.len(), 1);

    let m2 = GradedAlgebra::matrix(Field::Rationals, GradingGroup::integers(), z_degrees(&[0, 0])).unwrap();
    let a = GradedAlgebra::tensor(&m2, &qx()).unwrap();
    let r = quillen_case(&a, 0, None).unwrap();
    assert!(r.passed(), "{:?}", r.checks);
    assert_eq!(k0(&a, 0).unwrap().module.free_rank(), Some(1));

    let t2 = GradedAlgebra::triangular(Field::Rationals, GradingGroup::integers(), z_degrees(&[0, 1])).unwrap();
    let r = quillen_case(&t2, 0, None).unwrap();
    assert!(r.passed(), "{:?}", r.checks);
    assert_eq!(k0(&t2.zero_part().unwrap(), 0).unwrap().module.num_orbits(), 2);
    assert_eq!(k0(&t2, 0).unwrap().module.free_rank(), Some(2));
}

#[test]
fn theorem1_degenerates_to_quillen() {
    let a = theorem1_check(&qx(), 0, None).unwrap();
    let b = quillen_case(&qx(), 0, None).unwrap();
    assert_eq!(a.rhs_module, b.rhs_module);
    assert_eq!(a.lhs_module, b.lhs_module);
}

#[test]
fn corollary_with_one_coordinate_matches_theorem1() {
    let a = GradedAlgebra::poly(&m2_01(), &[1, 0]).unwrap();
    let c = corollary_check(&a, Some(1), 0, None).unwrap();
    let t = theorem1_check(&a, 0, None).unwrap();
    assert!(c.passed() && t.passed());
    assert_eq!(c.rhs_module, t.rhs_module);
    assert_eq!(c.lhs_module, t.lhs_module);
}

#[test]
fn lemma_examples() {
    let z = GradingGroup::integers();
    let z2 = GradingGroup::free_abelian(2);
    for (a, gamma) in [(q(), &z), (m2_01(), &z), (group_algebra_c2(), &z2)] {
        let r = lemma_check(&a, gamma, 0, None).unwrap();
        assert!(r.passed(), "{a}: {:?}", r.checks);
    }
}

#[test]
fn k0_is_seed_independent() {
    for a in corpus_algebras() {
        let x = k0(&a, 0).unwrap();
        let y = k0(&a, 11).unwrap();
        assert_eq!(x.describe(), y.describe());
        assert_eq!(x.basis_entries().len(), y.basis_entries().len());
    }
}

#[test]
fn module_examples() {
    let a = qx();
    let d = z_degrees(&[0, -1]);
    let p = ProjectivePresentation::free(&a, d.clone());
    let parts = decompose(&p, 0).unwrap();
    assert_eq!(parts.len(), 2);
    let one = ProjectivePresentation::free(&a, vec![d[0].clone()]);
    let other = ProjectivePresentation::free(&a, vec![d[1].clone()]);
    assert!(!graded_iso(&one, &other, 0).unwrap());
    assert!(graded_iso(&p, &p.shift(&a.group().zero()), 0).unwrap());
    assert!(decompose(&ProjectivePresentation::zero(&a), 0).unwrap().is_empty());

    let regular = ProjectivePresentation::regular(&m5(Field::Rationals));
    let parts = decompose(&regular, 0).unwrap();
    assert_eq!(parts.iter().map(|(_, m)| m).sum::<usize>(), 5);
}

#[test]
fn shift_of_regular_module() {
    let a = qx();
    let w = a.group().degree(vec![3], vec![]).unwrap();
    let p = ProjectivePresentation::regular(&a).shift(&w);
    for h in -6..4 {
        let hd = a.group().degree(vec![h], vec![]).unwrap();
        assert_eq!(p.component_dim(&hd), a.component_dim(&a.group().add(&w, &hd)));
    }
}

#[test]
fn swan_maps_on_examples() {
    let a = qx();
    let p = ProjectivePresentation::free(&a, z_degrees(&[1]));
    let window = p.window(None).degrees(&a);
    assert!(psi(&p, 5).unwrap().is_iso_on(&window).unwrap());
    let q = functor_t(&ProjectivePresentation::regular(&a)).unwrap();
    assert!(nu(&q).unwrap().is_iso_on(&q.window(None).degrees(q.algebra())).unwrap());
}

#[test]
fn theta_and_psi_examples() {
    let a = qx();
    let t = functor_t(&ProjectivePresentation::regular(&a)).unwrap();
    let back = theta(&t, 0).unwrap();
    assert!(graded_iso(&back, &ProjectivePresentation::regular(&a), 0).unwrap());
    let two = ProjectivePresentation::free(&a, z_degrees(&[0, -2]));
    let q = psi_q(&two, 2).unwrap();
    let th = theta(&q, 2).unwrap();
    let parts = ProjectivePresentation::free(&a, z_degrees(&[0]))
        .direct_sum(&ProjectivePresentation::free(&a, z_degrees(&[-2])))
        .unwrap();
    assert!(graded_iso(&th, &parts, 0).unwrap());
    assert_eq!(psi_q(&ProjectivePresentation::regular(&a), 1).unwrap().shifts(), &z_degrees(&[0])[..]);
    assert!(psi_q(&two, 1).is_err());
}

#[test]
fn layer_of_free_module_is_itself() {
    let a = GradedAlgebra::poly(&group_algebra_c2(), &[1, 1]).unwrap();
    let g = a.group();
    let s = g.degree(vec![-2], vec![1]).unwrap();
    let p = ProjectivePresentation::free(&a, vec![s]);
    assert!(graded_iso(&layer(&p, 0).unwrap(), &p, 0).unwrap());
    assert!(filter(&p, 1).unwrap().is_zero());
    assert!(graded_iso(&filter(&p, 2).unwrap(), &p, 0).unwrap());
}
