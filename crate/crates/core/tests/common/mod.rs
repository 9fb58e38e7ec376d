#![allow(dead_code)]

use std::collections::BTreeMap;

use adend_core::arith::{int, rat, Rational};
use adend_core::catalog;
use adend_core::structures::Binding;
use adend_core::{check_structure, AlgebraSpace, Matrix, StructTensor};
use proptest::prelude::*;

pub fn holds(alg: &AlgebraSpace, bundle: &str, b: &Binding) -> bool {
    check_structure(alg, bundle, b, None).unwrap_or_else(|e| panic!("{bundle}: {e}")).holds
}

/// Small rationals, zero-heavy so products stay sparse.
pub fn small() -> impl Strategy<Value = Rational> {
    prop_oneof![
        3 => Just(int(0)),
        2 => (-2i64..=2).prop_map(int),
        1 => (-3i64..=3, 1i64..=3).prop_map(|(n, d)| rat(n, d)),
    ]
}

pub fn tensor(dim: usize) -> impl Strategy<Value = StructTensor> {
    prop::collection::vec(small(), dim * dim * dim).prop_map(move |v| {
        let mut t = StructTensor::zero(dim);
        for (n, c) in v.into_iter().enumerate() {
            t.set(n / (dim * dim), (n / dim) % dim, n % dim, c);
        }
        t
    })
}

pub fn vector(dim: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-7i64..=7, 1i64..=3).prop_map(|(n, d)| rat(n, d)), dim)
}

pub fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-2i64..=2, n * n)
        .prop_map(move |v| Matrix::from_fn(n, n, |i, j| int(v[i * n + j])))
        .prop_filter("singular", |m| m.inverse().is_some())
}

/// A two-op algebra on `rop`/`lop` of dimension 1 or 2.
pub fn pair_algebra() -> impl Strategy<Value = AlgebraSpace> {
    (1usize..=2).prop_flat_map(|d| (tensor(d), tensor(d))).prop_map(|(r, l)| pair(r, l))
}

pub fn pair(r: StructTensor, l: StructTensor) -> AlgebraSpace {
    AlgebraSpace::standard(r.dim()).with_op("rop", r).unwrap().with_op("lop", l).unwrap()
}

/// Every catalog algebra at its defaults and sample parameters.
pub fn catalog_all() -> Vec<(String, AlgebraSpace)> {
    let mut out = Vec::new();
    for info in catalog::list() {
        let mut sets = vec![BTreeMap::new()];
        if let Some((name, _)) = info.params.first() {
            for v in catalog::samples(info.id) {
                sets.push([(name.to_string(), v)].into_iter().collect());
            }
        }
        for ps in sets {
            let e = catalog::load(info.id, &ps).unwrap();
            out.push((catalog::label(&e.id, &e.params), e.algebra));
        }
    }
    out
}

/// Catalog algebras that are anti-dendriform on `rop`/`lop`.
pub fn catalog_anti_dendriform() -> Vec<(String, AlgebraSpace)> {
    catalog_all()
        .into_iter()
        .filter(|(_, a)| a.has_op("rop") && a.has_op("lop"))
        .map(|(n, a)| (n, a.restrict_ops(&["rop", "lop"]).unwrap()))
        .filter(|(_, a)| holds(a, "anti-dendriform", &Binding::new()))
        .collect()
}

/// Catalog anti-dendriform algebras moved by a random change of basis.
pub fn transported_anti_dendriform() -> impl Strategy<Value = AlgebraSpace> {
    let base = catalog_anti_dendriform();
    (0..base.len()).prop_flat_map(move |i| {
        let alg = base[i].1.clone();
        invertible(alg.dim()).prop_map(move |g| alg.transport(&g).unwrap())
    })
}
