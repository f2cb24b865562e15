#![allow(dead_code)]

use gradedk_core::algebra::GradedAlgebra;
use gradedk_core::field::Field;
use gradedk_core::gmod::{random_projective, ProjectivePresentation};
use gradedk_core::grading::{Degree, GradingGroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn z_degrees(xs: &[i64]) -> Vec<Degree> {
    let z = GradingGroup::integers();
    xs.iter().map(|&x| z.degree(vec![x], vec![]).unwrap()).collect()
}

pub fn m5(field: Field) -> GradedAlgebra {
    GradedAlgebra::matrix(field, GradingGroup::integers(), z_degrees(&[0, 1, 2, 2, 3])).unwrap()
}

pub fn m2_01() -> GradedAlgebra {
    GradedAlgebra::matrix(Field::Rationals, GradingGroup::integers(), z_degrees(&[0, 1])).unwrap()
}

pub fn m2_c2() -> GradedAlgebra {
    let c2 = GradingGroup::cyclic(2).unwrap();
    let shifts = vec![c2.zero(), c2.degree(vec![], vec![1]).unwrap()];
    GradedAlgebra::matrix(Field::Rationals, c2, shifts).unwrap()
}

pub fn q() -> GradedAlgebra {
    GradedAlgebra::base_field(Field::Rationals)
}

pub fn qx() -> GradedAlgebra {
    GradedAlgebra::poly(&q(), &[1]).unwrap()
}

pub fn qxy() -> GradedAlgebra {
    GradedAlgebra::poly(&qx(), &[1, 0]).unwrap()
}

pub fn q_times_q() -> GradedAlgebra {
    GradedAlgebra::product(&q(), &q()).unwrap()
}

pub fn group_algebra_c2() -> GradedAlgebra {
    GradedAlgebra::group_algebra(Field::Rationals, GradingGroup::cyclic(2).unwrap())
}

/// The four algebras of the random module corpus, all supported in `N x G`.
pub fn corpus_algebras() -> Vec<GradedAlgebra> {
    vec![
        m5(Field::Rationals).extend_trivially(&GradingGroup::integers()).unwrap(),
        GradedAlgebra::poly(&m2_01(), &[1, 0]).unwrap(),
        qx(),
        GradedAlgebra::poly(&group_algebra_c2(), &[1, 1]).unwrap(),
    ]
}

/// Corpus module number `seed`: a random conjugated idempotent of rank 1 to 3.
pub fn corpus_module(algebras: &[GradedAlgebra], seed: u64) -> (usize, ProjectivePresentation) {
    let i = seed as usize % algebras.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = 1 + (seed as usize / algebras.len()) % 3;
    (i, random_projective(&algebras[i], rank, 2, &mut rng))
}
