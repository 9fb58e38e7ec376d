//! Built-in worked examples with their expected verdicts.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::algebra::AlgebraSpace;
use crate::arith::{int, rat, Rational};
use crate::error::{Error, Result};
use crate::names;
use crate::structures::{binding, check_structure, Binding};
use crate::tensor::StructTensor;
use crate::verdict::Failure;

/// Bundle verdict an entry must produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub bundle: String,
    pub binding: Binding,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub params: BTreeMap<String, Rational>,
    pub algebra: AlgebraSpace,
    pub expected: Vec<Expectation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryInfo {
    pub id: &'static str,
    pub description: &'static str,
    /// Parameter names with defaults.
    pub params: &'static [(&'static str, i64)],
}

pub const ENTRIES: [EntryInfo; 13] = [
    EntryInfo { id: "A1", description: "2-dim trivial associative algebra", params: &[] },
    EntryInfo { id: "A2", description: "2-dim associative algebra e1·e1 = e2", params: &[] },
    EntryInfo { id: "A1-2", description: "anti-dendriform on A1: e1▷e1 = e2, e1◁e1 = -e2", params: &[] },
    EntryInfo { id: "B1", description: "2-dim trivial anti-dendriform algebra", params: &[] },
    EntryInfo { id: "B2", description: "anti-dendriform e1◁e1 = e2", params: &[] },
    EntryInfo { id: "B3", description: "anti-dendriform e1▷e1 = e2, e1◁e1 = λ e2", params: &[("lambda", 0)] },
    EntryInfo {
        id: "EX3D",
        description: "3-dim compatible anti-dendriform structure on e1·e1 = e2, e1·e2 = e2·e1 = e3",
        params: &[("gamma", 1)],
    },
    EntryInfo { id: "EX224", description: "associative e1·e1 = e1, e1·e2 = e2", params: &[] },
    EntryInfo { id: "IDEM1", description: "1-dim idempotent e·e = e with ▷ = ·, ◁ = 0", params: &[] },
    EntryInfo { id: "T1", description: "1-dim trivial anti-dendriform algebra", params: &[] },
    EntryInfo { id: "NTD-A2", description: "dendriform on A2 with ≻ = ·, ≺ = 0", params: &[] },
    EntryInfo { id: "NTD-A2-PREC", description: "dendriform on A2 with ≻ = 0, ≺ = ·", params: &[] },
    EntryInfo { id: "LIE2", description: "2-dim Lie algebra [e1, e2] = e2", params: &[] },
];

/// Parameter values exercised by the self test, besides the defaults.
pub fn samples(id: &str) -> Vec<Rational> {
    match id {
        "B3" => alloc::vec![int(0), int(1), int(-1), int(2)],
        "EX3D" => alloc::vec![int(0), int(1), rat(-3, 2)],
        _ => Vec::new(),
    }
}

pub fn list() -> &'static [EntryInfo] {
    &ENTRIES
}

fn info(id: &str) -> Result<&'static EntryInfo> {
    ENTRIES.iter().find(|e| e.id.eq_ignore_ascii_case(id)).ok_or_else(|| Error::UnknownEntry(id.to_string()))
}

fn canonical_param(name: &str) -> &str {
    match name {
        "λ" => "lambda",
        "γ" => "gamma",
        other => other,
    }
}

fn expect(bundle: &str, pairs: &[(&str, &str)], holds: bool) -> Expectation {
    Expectation { bundle: bundle.to_string(), binding: binding(pairs), holds }
}

type Entries<'a> = &'a [(usize, usize, usize, Rational)];

fn space(dim: usize, basis: Option<&[&str]>, ops: &[(&str, Entries)]) -> AlgebraSpace {
    let mut alg = match basis {
        Some(b) => AlgebraSpace::new(b.iter().copied()).expect("fixed names"),
        None => AlgebraSpace::standard(dim),
    };
    for (name, e) in ops {
        alg.add_op(name, StructTensor::from_entries(dim, e)).expect("fixed ops");
    }
    alg
}

/// Loads an entry; missing parameters take their defaults.
pub fn load(id: &str, params: &BTreeMap<String, Rational>) -> Result<CatalogEntry> {
    let info = info(id)?;
    let mut vals: BTreeMap<String, Rational> = info.params.iter().map(|(n, d)| (n.to_string(), int(*d))).collect();
    for (k, v) in params {
        let k = canonical_param(k);
        if !vals.contains_key(k) {
            return Err(Error::UnknownParameter(k.to_string()));
        }
        vals.insert(k.to_string(), v.clone());
    }
    let p = |n: &str| vals[n].clone();
    let one = int(1);
    let ad = |extra: Vec<Expectation>| {
        let mut v = alloc::vec![
            expect("anti-dendriform", &[], true),
            expect("anti-dendriform-equiv", &[], true),
            expect("associative-admissible", &[], true),
        ];
        v.extend(extra);
        v
    };
    let mul_b: &[(&str, &str)] = &[("mul", names::MUL)];
    let (algebra, expected) = match info.id {
        "A1" => (
            space(2, None, &[(names::MUL, &[])]),
            alloc::vec![expect("associative", &[], true), expect("two-nilpotent", &[], true)],
        ),
        "A2" => (
            space(2, None, &[(names::MUL, &[(0, 0, 1, one.clone())])]),
            alloc::vec![
                expect("associative", &[], true),
                expect("two-nilpotent", &[], true),
                expect("pre-lie", &[("star", names::MUL)], true),
                expect("novikov", &[("star", names::MUL)], true),
                expect("admissible-novikov", &[("circ", names::MUL)], true),
            ],
        ),
        "A1-2" => (
            space(2, None, &[(names::TRI_R, &[(0, 0, 1, one.clone())]), (names::TRI_L, &[(0, 0, 1, int(-1))])]),
            ad(alloc::vec![expect("admissible-ntd", &[], true), expect("admissible-ntd-equiv", &[], true)]),
        ),
        "B1" => (
            space(2, None, &[(names::TRI_R, &[]), (names::TRI_L, &[])]),
            ad(alloc::vec![expect("admissible-ntd", &[], true), expect("admissible-ntd-equiv", &[], true)]),
        ),
        "B2" => (
            space(2, None, &[(names::TRI_R, &[]), (names::TRI_L, &[(0, 0, 1, one.clone())])]),
            ad(alloc::vec![expect("admissible-ntd", &[], true), expect("admissible-ntd-equiv", &[], true)]),
        ),
        "B3" => (
            space(2, None, &[(names::TRI_R, &[(0, 0, 1, one.clone())]), (names::TRI_L, &[(0, 0, 1, p("lambda"))])]),
            ad(alloc::vec![expect("admissible-ntd", &[], true), expect("admissible-ntd-equiv", &[], true)]),
        ),
        "EX3D" => {
            let g = p("gamma");
            (
                space(
                    3,
                    None,
                    &[
                        (names::MUL, &[(0, 0, 1, one.clone()), (0, 1, 2, one.clone()), (1, 0, 2, one.clone())]),
                        (names::TRI_R, &[(0, 0, 1, rat(1, 2)), (0, 0, 2, g.clone()), (0, 1, 2, int(2)), (1, 0, 2, int(-1))]),
                        (names::TRI_L, &[(0, 0, 1, rat(1, 2)), (0, 0, 2, -g), (1, 0, 2, int(2)), (0, 1, 2, int(-1))]),
                    ],
                ),
                ad(alloc::vec![
                    expect("admissible-ntd", &[], false),
                    expect("admissible-ntd-equiv", &[], false),
                    expect("associative", mul_b, true),
                    expect("two-nilpotent", mul_b, false),
                ]),
            )
        }
        "EX224" => (
            space(2, None, &[(names::MUL, &[(0, 0, 0, one.clone()), (0, 1, 1, one.clone())])]),
            alloc::vec![expect("associative", &[], true), expect("two-nilpotent", &[], false)],
        ),
        "IDEM1" => (
            space(1, Some(&["e"]), &[(names::MUL, &[(0, 0, 0, one.clone())]), (names::TRI_R, &[(0, 0, 0, one.clone())]), (names::TRI_L, &[])]),
            alloc::vec![
                expect("associative", &[], true),
                expect("anti-dendriform", &[], false),
                expect("anti-dendriform-equiv", &[], false),
                expect("associative-admissible", &[], true),
            ],
        ),
        "T1" => (space(1, None, &[(names::TRI_R, &[]), (names::TRI_L, &[])]), ad(alloc::vec![expect("admissible-ntd", &[], true)])),
        "NTD-A2" | "NTD-A2-PREC" => {
            let e: Entries = &[(0, 0, 1, one.clone())];
            let (s, pr): (Entries, Entries) = if info.id == "NTD-A2" { (e, &[]) } else { (&[], e) };
            (
                space(2, None, &[(names::SUCC, s), (names::PREC, pr)]),
                alloc::vec![
                    expect("dendriform", &[], true),
                    expect("novikov-type-dendriform", &[], true),
                    expect("novikov-type-dendriform-equiv", &[], true),
                ],
            )
        }
        "LIE2" => (
            space(2, None, &[(names::MUL, &[(0, 1, 1, one.clone()), (1, 0, 1, int(-1))])]),
            alloc::vec![
                expect("lie", &[], true),
                expect("lie-admissible", &[], true),
                expect("associative", &[], false),
            ],
        ),
        _ => unreachable!("ids come from ENTRIES"),
    };
    Ok(CatalogEntry { id: info.id.to_string(), description: info.description.to_string(), params: vals, algebra, expected })
}

/// One checked expectation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfTestLine {
    pub entry: String,
    pub params: BTreeMap<String, Rational>,
    pub bundle: String,
    pub expected: bool,
    pub got: bool,
    pub failure: Option<Failure>,
}

impl SelfTestLine {
    pub fn passed(&self) -> bool {
        self.expected == self.got
    }
}

/// Every expectation of every entry at its defaults and sample parameters.
pub fn self_test() -> Result<Vec<SelfTestLine>> {
    let mut out = Vec::new();
    for info in list() {
        let mut param_sets = alloc::vec![BTreeMap::new()];
        if let Some((name, _)) = info.params.first() {
            for v in samples(info.id) {
                param_sets.push([(name.to_string(), v)].into_iter().collect());
            }
        }
        for ps in param_sets {
            let entry = load(info.id, &ps)?;
            for e in &entry.expected {
                let v = check_structure(&entry.algebra, &e.bundle, &e.binding, None)?;
                out.push(SelfTestLine {
                    entry: entry.id.clone(),
                    params: entry.params.clone(),
                    bundle: e.bundle.clone(),
                    expected: e.holds,
                    got: v.holds,
                    failure: v.failure,
                });
            }
        }
    }
    Ok(out)
}

/// `id(k=v, ...)` for reports.
pub fn label(entry: &str, params: &BTreeMap<String, Rational>) -> String {
    if params.is_empty() {
        return entry.to_string();
    }
    let ps: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{entry}({})", ps.join(", "))
}
