mod common;

use std::collections::BTreeMap;

use adend_core::arith::{int, Rational};
use adend_core::bimodule::check_anti_rb;
use adend_core::catalog::{self, load};
use adend_core::solver::{anti_rb_matrix, extract_system, iso_search, solve_anti_rb, SolverLimits, DEFAULT_GRID};
use adend_core::structures::{binding, lookup, Binding};
use adend_core::transforms::op_sum;
use adend_core::{AlgebraSpace, Matrix, PolyRing, SymbolicAlgebra};
use common::{catalog_anti_dendriform, holds, invertible, pair_algebra};
use proptest::prelude::*;

fn grid() -> Vec<Rational> {
    DEFAULT_GRID.iter().map(|&v| int(v)).collect()
}

/// The algebra as a symbolic one over a ring with no variables.
fn constant(alg: &AlgebraSpace) -> SymbolicAlgebra {
    let ring = PolyRing::new(Vec::<String>::new()).unwrap();
    let mut s = SymbolicAlgebra::new(alg.basis().to_vec(), ring);
    for (name, t) in alg.ops() {
        let lifted = s.lift(t);
        s.set_op(name, lifted).unwrap();
    }
    s
}

/// Associative catalog algebras moved by a random change of basis.
fn transported_associative() -> impl Strategy<Value = AlgebraSpace> {
    let base: Vec<AlgebraSpace> = ["A2", "EX224"]
        .iter()
        .map(|id| load(id, &BTreeMap::new()).unwrap().algebra.restrict_ops(&["mul"]).unwrap())
        .collect();
    (0..base.len()).prop_flat_map(move |i| {
        let a = base[i].clone();
        invertible(a.dim()).prop_map(move |g| a.transport(&g).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constant_systems_match_the_checker(alg in pair_algebra()) {
        let s = constant(&alg);
        for (bundle, b) in [
            ("anti-dendriform", Binding::new()),
            ("dendriform", binding(&[("succ", "rop"), ("prec", "lop")])),
            ("associative", binding(&[("mul", "rop")])),
        ] {
            let sys = extract_system(&s, &lookup(bundle).unwrap(), &b, None).unwrap();
            prop_assert_eq!(sys.is_empty(), holds(&alg, bundle, &b), "{}", bundle);
        }
    }

    #[test]
    fn anti_rb_ideal_is_sound_and_complete_on_the_grid(alg in transported_associative(), cells in prop::collection::vec(-1i64..=1, 4)) {
        let ideal = solve_anti_rb(&alg, "mul").unwrap();
        for p in ideal.sample_points(&grid(), 3).unwrap() {
            prop_assert!(check_anti_rb(&anti_rb_matrix(2, &p), &alg, "mul").unwrap().is_operator);
        }
        let point: Vec<Rational> = cells.into_iter().map(int).collect();
        let op = check_anti_rb(&anti_rb_matrix(2, &point), &alg, "mul").unwrap().is_operator;
        prop_assert_eq!(op, ideal.contains_point(&point).unwrap());
    }
}

#[test]
fn catalog_self_test_passes() {
    for line in catalog::self_test().unwrap() {
        assert!(line.passed(), "{line:?}");
    }
}

#[test]
fn anti_dendriform_sums_are_nilpotent_and_associative() {
    for (name, alg) in catalog_anti_dendriform() {
        let s = op_sum(&alg, "rop", "lop").unwrap();
        assert!(holds(&s, "associative", &binding(&[("mul", "sum")])), "{name}");
        assert!(s.is_nilpotent("sum").unwrap(), "{name}");
    }
}

#[test]
fn two_dim_classification_is_pairwise_distinct() {
    let mut algs: Vec<(String, AlgebraSpace)> = Vec::new();
    for id in ["B1", "B2"] {
        algs.push((id.into(), load(id, &BTreeMap::new()).unwrap().algebra));
    }
    for l in catalog::samples("B3") {
        let p: BTreeMap<String, Rational> = [("lambda".to_string(), l.clone())].into_iter().collect();
        algs.push((format!("B3({l})"), load("B3", &p).unwrap().algebra));
    }
    let limits = SolverLimits::default();
    for (i, (na, a)) in algs.iter().enumerate() {
        let me = iso_search(a, a, &["rop", "lop"], &limits).unwrap();
        assert!(me.witness.is_some(), "{na} has no automorphism on the grid");
        for (nb, b) in &algs[i + 1..] {
            let rep = iso_search(a, b, &["rop", "lop"], &limits).unwrap();
            assert!(!rep.ideal.consistent, "{na} and {nb}");
        }
    }
}

#[test]
fn transported_algebras_are_isomorphic() {
    let a = load("B3", &BTreeMap::new()).unwrap().algebra.restrict_ops(&["rop", "lop"]).unwrap();
    let g = Matrix::from_fn(2, 2, |i, j| int([[1, 1], [0, 1]][i][j]));
    let b = a.transport(&g).unwrap();
    let rep = iso_search(&a, &b, &["rop", "lop"], &SolverLimits::default()).unwrap();
    let w = rep.witness.expect("witness");
    assert_eq!(a.transport(&w).unwrap(), b);
}
