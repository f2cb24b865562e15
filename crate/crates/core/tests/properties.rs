mod common;

use common::*;
use gradedk_core::filtration::{filter, jumps, layers};
use gradedk_core::gmod::{functor_s, functor_t, graded_iso, ProjectivePresentation};
use gradedk_core::grading::{shift_module_iso, Degree, GradingGroup, GroupRingElement, ShiftModule};
use gradedk_core::ktheory::k0;
use proptest::prelude::*;

fn group() -> GradingGroup {
    GradingGroup::new(2, vec![3, 2]).unwrap()
}

fn degree_strategy() -> impl Strategy<Value = Degree> {
    (prop::collection::vec(-20i64..20, 2), prop::collection::vec(-5i64..5, 2))
        .prop_map(|(f, t)| group().degree(f, t).unwrap())
}

fn ring_element() -> impl Strategy<Value = GroupRingElement> {
    prop::collection::vec((degree_strategy(), -4i64..5), 0..4).prop_map(|terms| {
        let mut x = GroupRingElement::zero();
        for (d, c) in terms {
            x.add_term(d, c);
        }
        x
    })
}

proptest! {
    #[test]
    fn degree_group_laws(a in degree_strategy(), b in degree_strategy(), c in degree_strategy()) {
        let g = group();
        prop_assert_eq!(g.add(&a, &b), g.add(&b, &a));
        prop_assert_eq!(g.add(&g.add(&a, &b), &c), g.add(&a, &g.add(&b, &c)));
        prop_assert!(g.add(&a, &g.neg(&a)).is_zero());
        prop_assert_eq!(g.sub(&g.add(&a, &b), &b), a);
    }

    #[test]
    fn group_ring_laws(x in ring_element(), y in ring_element(), z in ring_element()) {
        let g = group();
        prop_assert_eq!(x.mul(&y.add(&z), &g), x.mul(&y, &g).add(&x.mul(&z, &g)));
        prop_assert_eq!(x.mul(&y, &g).mul(&z, &g), x.mul(&y.mul(&z, &g), &g));
        prop_assert_eq!(x.mul(&y, &g), y.mul(&x, &g));
        prop_assert_eq!(x.mul(&y, &g).augmentation(), x.augmentation() * y.augmentation());
    }

    #[test]
    fn shift_module_iso_is_reflexive_and_symmetric(n in 1usize..4, m in 1usize..4) {
        let g = group();
        let a = ShiftModule::free(&g, n);
        let b = ShiftModule::free(&g, m);
        prop_assert!(shift_module_iso(&a, &a));
        prop_assert_eq!(shift_module_iso(&a, &b), shift_module_iso(&b, &a));
        prop_assert_eq!(shift_module_iso(&a, &b), n == m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constructions_preserve_idempotency(seed in 0u64..500) {
        let algs = corpus_algebras();
        let (_, p) = corpus_module(&algs, seed);
        prop_assert!(p.is_idempotent());
        let g = p.algebra().group().generators()[0].clone();
        prop_assert!(p.shift(&g).is_idempotent());
        prop_assert!(p.direct_sum(&p).unwrap().is_idempotent());
        let t = functor_t(&p).unwrap();
        prop_assert!(t.is_idempotent());
        prop_assert!(functor_s(&t).unwrap().is_idempotent());
        for (_, l) in layers(&p).unwrap() {
            prop_assert!(l.is_idempotent());
        }
    }

    #[test]
    fn shift_reindexes_components(seed in 0u64..500, k in -3i64..4) {
        let algs = corpus_algebras();
        let (_, p) = corpus_module(&algs, seed);
        let grp = p.algebra().group().clone();
        let g = grp.scale(&grp.generators()[0], k);
        let q = p.shift(&g);
        for h in p.window(None).degrees(p.algebra()) {
            prop_assert_eq!(q.component_dim(&h), p.component_dim(&grp.add(&g, &h)));
        }
        prop_assert!(graded_iso(&q.shift(&grp.neg(&g)), &p, seed).unwrap());
    }

    #[test]
    fn filtration_is_exact_on_sums(a in 0u64..500, b in 0u64..500) {
        let algs = corpus_algebras();
        let i = (a % 4) as usize;
        let (_, p) = corpus_module(&algs, a);
        let (_, q) = corpus_module(&algs, b - b % 4 + i as u64);
        let s = p.direct_sum(&q).unwrap();
        let w = s.window(None).union(&p.window(None)).union(&q.window(None));
        for l in jumps(&s).unwrap() {
            let lhs = filter(&s, l).unwrap().dims(&w);
            let fp = filter(&p, l).unwrap().dims(&w);
            let fq = filter(&q, l).unwrap().dims(&w);
            let rhs: Vec<usize> = fp.iter().zip(&fq).map(|(x, y)| x + y).collect();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn t_zero_forces_zero(seed in 0u64..500) {
        let algs = corpus_algebras();
        let (_, p) = corpus_module(&algs, seed);
        prop_assert_eq!(functor_t(&p).unwrap().is_zero(), p.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn class_map_is_additive_and_equivariant(a in 0u64..200, b in 0u64..200, k in -2i64..3) {
        let algs = corpus_algebras();
        let i = (a % 4) as usize;
        let k0a = k0(&algs[i], 0).unwrap();
        let (_, p) = corpus_module(&algs, a);
        let (_, q) = corpus_module(&algs, b - b % 4 + i as u64);
        let sum = k0a.class_map(&p.direct_sum(&q).unwrap()).unwrap();
        prop_assert_eq!(sum, k0a.class_map(&p).unwrap().add(&k0a.class_map(&q).unwrap()));
        let grp = algs[i].group().clone();
        let g = grp.scale(&grp.generators()[0], k);
        prop_assert_eq!(k0a.class_map(&p.shift(&g)).unwrap(), k0a.act(&k0a.class_map(&p).unwrap(), &g));
    }
}

#[test]
fn regular_module_of_zero_part_is_free() {
    let a = qx();
    let p = ProjectivePresentation::regular(&a);
    let t = functor_t(&p).unwrap();
    assert!(graded_iso(&functor_s(&t).unwrap(), &p, 0).unwrap());
}
