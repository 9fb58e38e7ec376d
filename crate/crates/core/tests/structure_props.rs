mod common;

use adend_core::arith::{int, Rational};
use adend_core::bimodule::Bimodule;
use adend_core::random::random_two_nilpotent;
use adend_core::structures::{binding, Binding};
use adend_core::transforms::{assoc_anti_pre_lie, assoc_pre_lie, op_sum, q_pair, q_single};
use adend_core::{AlgebraSpace, StructTensor};
use common::{holds, pair, pair_algebra, small, tensor, transported_anti_dendriform};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn dendri(succ: StructTensor, prec: StructTensor) -> AlgebraSpace {
    AlgebraSpace::standard(succ.dim()).with_op("succ", succ).unwrap().with_op("prec", prec).unwrap()
}

fn dendri_algebra() -> impl Strategy<Value = AlgebraSpace> {
    (1usize..=2).prop_flat_map(|d| (tensor(d), tensor(d))).prop_map(|(a, b)| dendri(a, b))
}

/// Random pairs mixed with transported catalog anti-dendriform algebras.
fn mixed_pair() -> impl Strategy<Value = AlgebraSpace> {
    prop_oneof![pair_algebra(), transported_anti_dendriform()]
}

fn q_value() -> impl Strategy<Value = Rational> {
    small().prop_filter("q = ±1", |q| *q != int(1) && *q != int(-1))
}

/// Values accepted by the q-condition bundles.
fn q_cond_value() -> impl Strategy<Value = Rational> {
    q_value().prop_filter("q = 0", |q| *q != int(0))
}

fn two_nilpotent(seed: u64) -> StructTensor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = 1 + (seed % 3) as usize;
    random_two_nilpotent(&mut rng, dim, 2, false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn anti_dendriform_sum_is_associative(alg in mixed_pair()) {
        if holds(&alg, "anti-dendriform", &Binding::new()) {
            prop_assert!(holds(&alg, "associative-admissible", &Binding::new()));
        }
    }

    #[test]
    fn anti_dendriform_characterizations_agree(alg in mixed_pair()) {
        let direct = holds(&alg, "anti-dendriform", &Binding::new());
        let m = Bimodule::anti_dendriform(&alg, "rop", "lop").unwrap();
        let via_module = holds(m.base(), "associative", &binding(&[("mul", "sum")])) && m.check().holds;
        let equiv = holds(&alg, "anti-dendriform-equiv", &Binding::new());
        prop_assert_eq!(direct, via_module);
        prop_assert_eq!(direct, equiv);
    }

    #[test]
    fn ntd_characterizations_agree(alg in dendri_algebra()) {
        prop_assert_eq!(
            holds(&alg, "novikov-type-dendriform", &Binding::new()),
            holds(&alg, "novikov-type-dendriform-equiv", &Binding::new())
        );
        let anti = pair(alg.op("succ").unwrap().clone(), alg.op("prec").unwrap().clone());
        prop_assert_eq!(holds(&anti, "admissible-ntd", &Binding::new()), holds(&anti, "admissible-ntd-equiv", &Binding::new()));
    }

    #[test]
    fn two_nilpotent_splits_either_way(seed in any::<u64>()) {
        let m = two_nilpotent(seed);
        let z = StructTensor::zero(m.dim());
        let alg = AlgebraSpace::standard(m.dim()).with_op("mul", m.clone()).unwrap();
        prop_assert!(holds(&alg, "associative", &Binding::new()));
        prop_assert!(holds(&pair(m.clone(), z.clone()), "anti-dendriform", &Binding::new()));
        prop_assert!(holds(&pair(z, m), "anti-dendriform", &Binding::new()));
    }

    #[test]
    fn q_pair_roundtrip_scales(alg in dendri_algebra(), q in q_value()) {
        let once = q_pair(&alg, "succ", "prec", &q).unwrap();
        let twice = q_pair(&once, "rop", "lop", &-q.clone()).unwrap();
        let c = int(1) - &q * &q;
        prop_assert_eq!(twice.op("rop").unwrap(), &alg.op("succ").unwrap().scale(&c));
        prop_assert_eq!(twice.op("lop").unwrap(), &alg.op("prec").unwrap().scale(&c));
    }

    #[test]
    fn q_single_roundtrip_scales(t in (1usize..=3).prop_flat_map(tensor), q in q_value()) {
        let alg = AlgebraSpace::standard(t.dim()).with_op("star", t.clone()).unwrap();
        let once = q_single(&alg, "star", &q).unwrap();
        let twice = q_single(&once, "diamond", &-q.clone()).unwrap();
        prop_assert_eq!(twice.op("diamond").unwrap(), &t.scale(&(int(1) - &q * &q)));
    }

    #[test]
    fn q_diagram_commutes(alg in dendri_algebra(), q in small()) {
        let left = assoc_anti_pre_lie(&q_pair(&alg, "succ", "prec", &q).unwrap(), "rop", "lop").unwrap();
        let right = q_single(&assoc_pre_lie(&alg, "succ", "prec").unwrap(), "star", &-q.clone()).unwrap();
        prop_assert_eq!(left.op("circ").unwrap(), right.op("diamond").unwrap());
    }

    #[test]
    fn dendriform_with_q_conditions_gives_anti_dendriform(alg in dendri_algebra(), q in q_cond_value()) {
        if holds(&alg, "dendriform", &Binding::new())
            && adend_core::check_structure(&alg, "dendri-q-cond", &Binding::new(), Some(&q)).unwrap().holds
        {
            prop_assert!(holds(&q_pair(&alg, "succ", "prec", &q).unwrap(), "anti-dendriform", &Binding::new()));
        }
    }

    #[test]
    fn anti_dendriform_with_q_conditions_gives_dendriform(alg in mixed_pair(), q in q_cond_value()) {
        if holds(&alg, "anti-dendriform", &Binding::new())
            && adend_core::check_structure(&alg, "anti-dendri-q-cond", &Binding::new(), Some(&q)).unwrap().holds
        {
            let back = q_pair(&alg, "rop", "lop", &-q.clone()).unwrap();
            let d = dendri(back.op("rop").unwrap().clone(), back.op("lop").unwrap().clone());
            prop_assert!(holds(&d, "dendriform", &Binding::new()));
        }
    }

    #[test]
    fn ntd_at_minus_two_is_admissible(seed in any::<u64>(), flip in any::<bool>()) {
        let m = two_nilpotent(seed);
        let z = StructTensor::zero(m.dim());
        let alg = if flip { dendri(m, z) } else { dendri(z, m) };
        prop_assert!(holds(&alg, "novikov-type-dendriform", &Binding::new()));
        let p = q_pair(&alg, "succ", "prec", &int(-2)).unwrap().restrict_ops(&["rop", "lop"]).unwrap();
        prop_assert!(holds(&p, "admissible-ntd", &Binding::new()));
        let back = q_pair(&p, "rop", "lop", &int(2)).unwrap();
        prop_assert_eq!(back.op("rop").unwrap(), &alg.op("succ").unwrap().scale(&int(-3)));
    }

    #[test]
    fn pre_lie_with_q_conditions_gives_anti_pre_lie(t in (1usize..=2).prop_flat_map(tensor), q in q_cond_value()) {
        let alg = AlgebraSpace::standard(t.dim()).with_op("star", t).unwrap();
        if holds(&alg, "pre-lie", &Binding::new())
            && adend_core::check_structure(&alg, "pre-lie-q-cond", &Binding::new(), Some(&q)).unwrap().holds
        {
            let d = q_single(&alg, "star", &-q.clone()).unwrap();
            prop_assert!(holds(&d, "anti-pre-lie", &binding(&[("circ", "diamond")])));
        }
    }

    #[test]
    fn commutative_two_nilpotent_is_novikov(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_two_nilpotent(&mut rng, 2 + (seed % 2) as usize, 2, true);
        let alg = AlgebraSpace::standard(t.dim()).with_op("star", t).unwrap();
        prop_assert!(holds(&alg, "novikov", &Binding::new()));
        let d = q_single(&alg, "star", &int(2)).unwrap();
        prop_assert!(holds(&d, "admissible-novikov", &binding(&[("circ", "diamond")])));
    }

    #[test]
    fn op_sum_is_entrywise(alg in pair_algebra()) {
        let s = op_sum(&alg, "rop", "lop").unwrap();
        prop_assert_eq!(s.op("sum").unwrap(), &alg.op("rop").unwrap().add(alg.op("lop").unwrap()));
    }
}
