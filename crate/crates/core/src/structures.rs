//! Named axiom bundles over operation slots, and the checker binding an
//! algebra's operations to those slots.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::algebra::AlgebraSpace;
use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::names;
use crate::identity::{eval_expr, first_failure, parse_identity, parse_identity_chain, IdentityExpr, OpTable};
use crate::ring::{Rationals, Ring};
use crate::tensor::Tensor;
use crate::verdict::{Failure, Verdict};

/// Slot name or symbol mapped to an operation of the algebra.
pub type Binding = BTreeMap<String, String>;

pub fn binding(pairs: &[(&str, &str)]) -> Binding {
    pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub name: String,
    /// Operation name used inside the bundle's identities.
    pub symbol: String,
}

/// Operation defined from slots by a two-variable expression `x,y: ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedOp {
    pub name: String,
    pub def: IdentityExpr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledIdentity {
    pub label: String,
    pub id: IdentityExpr,
}

type QTemplate = fn(&Rational) -> Vec<String>;

#[derive(Clone, Debug)]
pub struct StructureDef {
    name: String,
    slots: Vec<Slot>,
    derived: Vec<DerivedOp>,
    identities: Vec<LabeledIdentity>,
    q_template: Option<QTemplate>,
}

impl StructureDef {
    /// `slots` are `(name, symbol)`; `derived` are `(name, "x,y: expr")` in
    /// dependency order; identities may be chains `a = b = c`.
    pub fn new(name: &str, slots: &[(&str, &str)], derived: &[(&str, &str)], identities: &[&str]) -> Result<Self> {
        let slots: Vec<Slot> = slots.iter().map(|(n, s)| Slot { name: n.to_string(), symbol: s.to_string() }).collect();
        let mut known: Vec<String> = slots.iter().map(|s| s.symbol.clone()).collect();
        for (i, s) in slots.iter().enumerate() {
            if slots[..i].iter().any(|t| t.name == s.name || t.symbol == s.symbol) {
                return Err(Error::InvalidBasis(format!("repeated slot `{}`", s.name)));
            }
        }
        let mut d = Vec::new();
        for (n, src) in derived {
            let def = parse_identity(src)?;
            if def.arity() != 2 {
                return Err(Error::Parse { column: 1, message: format!("derived operation `{n}` needs exactly two variables") });
            }
            check_known(&def, &known)?;
            known.push(n.to_string());
            d.push(DerivedOp { name: n.to_string(), def });
        }
        let ids = parse_labeled(identities)?;
        for li in &ids {
            check_known(&li.id, &known)?;
        }
        Ok(StructureDef { name: name.to_string(), slots, derived: d, identities: ids, q_template: None })
    }

    fn with_q(mut self, t: QTemplate) -> Self {
        self.q_template = Some(t);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn derived(&self) -> &[DerivedOp] {
        &self.derived
    }

    /// Identities not depending on q.
    pub fn identities(&self) -> &[LabeledIdentity] {
        &self.identities
    }

    pub fn is_q_parameterized(&self) -> bool {
        self.q_template.is_some()
    }

    /// Full identity list with q substituted. q must be given exactly when
    /// the bundle is parameterized and must avoid 0 and ±1.
    pub fn instantiate(&self, q: Option<&Rational>) -> Result<Vec<LabeledIdentity>> {
        match (self.q_template, q) {
            (None, None) => Ok(self.identities.clone()),
            (None, Some(_)) => Err(Error::UnexpectedQ(self.name.clone())),
            (Some(_), None) => Err(Error::MissingQ(self.name.clone())),
            (Some(t), Some(q)) => {
                if q.is_zero() || q.abs().is_one() {
                    return Err(Error::ForbiddenQ(q.clone()));
                }
                let srcs = t(q);
                let refs: Vec<&str> = srcs.iter().map(String::as_str).collect();
                let mut ids = self.identities.clone();
                ids.extend(parse_labeled(&refs)?);
                Ok(ids)
            }
        }
    }

    /// Operation table over the slot symbols and derived ops.
    pub fn bind<R: Ring>(&self, ring: &R, dim: usize, ops: &BTreeMap<String, Tensor<R::Elem>>, binding: &Binding) -> Result<OpTable<R::Elem>> {
        for key in binding.keys() {
            if !self.slots.iter().any(|s| s.name == *key || s.symbol == *key) {
                return Err(Error::UnknownSlot(key.clone()));
            }
        }
        let mut table = OpTable::new();
        for s in &self.slots {
            let op = binding
                .get(&s.name)
                .or_else(|| binding.get(&s.symbol))
                .cloned()
                .or_else(|| {
                    [s.name.as_str(), s.symbol.as_str(), conventional(&s.name)]
                        .into_iter()
                        .find(|n| ops.contains_key(*n))
                        .map(String::from)
                })
                .ok_or_else(|| Error::IncompleteBinding(s.name.clone()))?;
            let t = ops.get(&op).ok_or_else(|| Error::UnknownOp(op.clone()))?;
            if t.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: t.dim() });
            }
            table.insert(s.symbol.clone(), t.clone());
        }
        let one = ring.from_rational(&Rational::one());
        let unit = |i: usize| -> Vec<R::Elem> { (0..dim).map(|k| if k == i { one.clone() } else { ring.zero() }).collect() };
        for d in &self.derived {
            let mut data = Vec::with_capacity(dim * dim);
            for i in 0..dim {
                for j in 0..dim {
                    data.push(eval_expr(ring, &table, dim, d.def.expr(), &[unit(i), unit(j)])?);
                }
            }
            let t = Tensor::from_fn(dim, |i, j, k| data[i * dim + j][k].clone());
            table.insert(d.name.clone(), t);
        }
        Ok(table)
    }

    /// Checks every identity on `alg`; reports the first failure.
    pub fn check(&self, alg: &AlgebraSpace, binding: &Binding, q: Option<&Rational>) -> Result<Verdict> {
        let ids = self.instantiate(q)?;
        let table = self.bind(&Rationals, alg.dim(), alg.ops(), binding)?;
        for li in &ids {
            if let Some((tuple, residual)) = first_failure(&Rationals, &table, alg.dim(), &li.id)? {
                return Ok(Verdict::fail(Failure { identity: format!("{}: {}", self.name, li.label), tuple, residual }));
            }
        }
        Ok(Verdict::pass())
    }
}

/// Operation name conventionally carrying a slot.
fn conventional(slot: &str) -> &str {
    match slot {
        "tri_r" => names::TRI_R,
        "tri_l" => names::TRI_L,
        other => other,
    }
}

fn check_known(id: &IdentityExpr, known: &[String]) -> Result<()> {
    for op in id.ops() {
        if !known.contains(&op) {
            return Err(Error::UnknownOp(op));
        }
    }
    Ok(())
}

fn parse_labeled(srcs: &[&str]) -> Result<Vec<LabeledIdentity>> {
    let mut out = Vec::new();
    for src in srcs {
        for (label, id) in parse_identity_chain(src)? {
            out.push(LabeledIdentity { label, id });
        }
    }
    Ok(out)
}

/// `vars: c1*(t1) + c2*(t2) ...` for a linear combination of monomials.
fn linear(vars: &str, terms: &[(Rational, &str)]) -> String {
    let mut s = format!("{vars}: ");
    for (i, (c, t)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&format!("{}*({t})", c.abs()));
    }
    s
}

const DOT: (&str, &str) = (".", "x,y: x>y + x<y");
const BRACKET_STAR: (&str, &str) = ("[,]", "x,y: x*y - y*x");
const BRACKET_CIRC: (&str, &str) = ("[,]", "x,y: x o y - y o x");
const BRACKET_DOT: (&str, &str) = ("[,]", "x,y: x.y - y.x");
const MUL: (&str, &str) = ("mul", ".");
const DENDRI: [(&str, &str); 2] = [("succ", ">"), ("prec", "<")];
const ANTI: [(&str, &str); 2] = [("tri_r", ">"), ("tri_l", "<")];

const ASSOC: &str = "x,y,z: (x.y).z = x.(y.z)";
const DENDRIFORM: [&str; 3] = ["x,y,z: x>(y>z) = (x.y)>z", "x,y,z: (x<y)<z = x<(y.z)", "x,y,z: (x>y)<z = x>(y<z)"];
const ANTI_DENDRIFORM: [&str; 2] = ["x,y,z: x>(y>z) = -((x.y)>z) = -(x<(y.z)) = (x<y)<z", "x,y,z: (x>y)<z = x>(y<z)"];
const S1: &str = "x,y,z: x>(y>z) = (x<y)<z";
const S2: &str = "x,y,z: (x<y)>z = x<(y>z)";
const ANTI_S1: &str = "x,y,z: (x<y)>z = x<(y>z)";
const PRE_LIE: &str = "x,y,z: (x*y)*z - x*(y*z) = (y*x)*z - y*(x*z)";
const ANTI_PRE_LIE_21: &str = "x,y,z: x o (y o z) - y o (x o z) = (y '[,]' x) o z";

fn dendri_q(q: &Rational) -> Vec<String> {
    let q2 = q * q;
    alloc::vec![linear(
        "x,y,z",
        &[
            (&q2 + q * int(3) + int(2), "(x<y)<z"),
            (&q2 + q * int(2), "x>(y<z)"),
            (&q2 - q, "x<(y<z)"),
        ],
    )]
}

fn anti_dendri_q(q: &Rational) -> Vec<String> {
    let q2 = q * q;
    alloc::vec![linear(
        "x,y,z",
        &[(-&q2 + q + int(2), "(x<y)<z"), (-&q2, "(x>y)<z"), (&q2 + q, "x<(y<z)")],
    )]
}

fn pre_lie_q(q: &Rational) -> Vec<String> {
    let q2 = q * q;
    let c = &q2 - q;
    alloc::vec![linear(
        "x,y,z",
        &[
            (int(2) + q, "(x '[,]' y)*z"),
            (-&q2 - q * int(2), "z * (x '[,]' y)"),
            (c.clone(), "(z*y)*x"),
            (-c, "(z*x)*y"),
        ],
    )]
}

fn anti_pre_lie_q(q: &Rational) -> Vec<String> {
    let q2 = q * q;
    let c = &q2 + q;
    alloc::vec![linear(
        "x,y,z",
        &[
            (int(2) + q, "(x '[,]' y) o z"),
            (-&q2, "z o (x '[,]' y)"),
            (c.clone(), "(z o x) o y"),
            (-c, "(z o y) o x"),
        ],
    )]
}

/// Names of all built-in bundles.
pub const BUILTIN: [&str; 21] = [
    "associative",
    "lie",
    "lie-admissible",
    "two-nilpotent",
    "two-step-nilpotent",
    "dendriform",
    "anti-dendriform",
    "anti-dendriform-equiv",
    "associative-admissible",
    "pre-lie",
    "anti-pre-lie",
    "novikov",
    "admissible-novikov",
    "novikov-type-dendriform",
    "novikov-type-dendriform-equiv",
    "admissible-ntd",
    "admissible-ntd-equiv",
    "dendri-q-cond",
    "anti-dendri-q-cond",
    "pre-lie-q-cond",
    "anti-pre-lie-q-cond",
];

fn cat<'a>(a: &[&'a str], b: &[&'a str]) -> Vec<&'a str> {
    a.iter().chain(b).copied().collect()
}

/// Built-in bundle by name.
pub fn lookup(name: &str) -> Result<StructureDef> {
    let n = name;
    match name {
        "associative" => StructureDef::new(n, &[MUL], &[], &[ASSOC]),
        "lie" => StructureDef::new(n, &[MUL], &[], &["x,y: x.y + y.x", "x,y,z: (x.y).z + (y.z).x + (z.x).y"]),
        "lie-admissible" => StructureDef::new(
            n,
            &[MUL],
            &[BRACKET_DOT],
            &["x,y,z: (x '[,]' y) '[,]' z + (y '[,]' z) '[,]' x + (z '[,]' x) '[,]' y"],
        ),
        "two-nilpotent" => StructureDef::new(n, &[MUL], &[], &["x,y,z: (x.y).z", "x,y,z: x.(y.z)"]),
        "two-step-nilpotent" => StructureDef::new(n, &[MUL], &[BRACKET_DOT], &["x,y,z: (x '[,]' y) '[,]' z"]),
        "dendriform" => StructureDef::new(n, &DENDRI, &[DOT], &DENDRIFORM),
        "anti-dendriform" => StructureDef::new(n, &ANTI, &[DOT], &ANTI_DENDRIFORM),
        "anti-dendriform-equiv" => StructureDef::new(
            n,
            &ANTI,
            &[DOT],
            &[ASSOC, "x,y,z: x>(y>z) = -((x.y)>z)", "x,y,z: (x<y)<z = -(x<(y.z))", "x,y,z: (x>y)<z = x>(y<z)"],
        ),
        "associative-admissible" => StructureDef::new(n, &ANTI, &[DOT], &[ASSOC]),
        "pre-lie" => StructureDef::new(n, &[("star", "*")], &[], &[PRE_LIE]),
        "anti-pre-lie" => StructureDef::new(
            n,
            &[("circ", "o")],
            &[BRACKET_CIRC],
            &[ANTI_PRE_LIE_21, "x,y,z: (x '[,]' y) o z + (y '[,]' z) o x + (z '[,]' x) o y"],
        ),
        "novikov" => StructureDef::new(n, &[("star", "*")], &[], &[PRE_LIE, "x,y,z: (x*y)*z = (x*z)*y"]),
        "admissible-novikov" => StructureDef::new(
            n,
            &[("circ", "o")],
            &[BRACKET_CIRC],
            &[ANTI_PRE_LIE_21, "x,y,z: 2*(x o (y '[,]' z)) = (x o y) o z - (x o z) o y"],
        ),
        "novikov-type-dendriform" => StructureDef::new(n, &DENDRI, &[DOT], &cat(&DENDRIFORM, &[S1, S2, "x,y,z: x<(y<z)"])),
        "novikov-type-dendriform-equiv" => StructureDef::new(
            n,
            &DENDRI,
            &[],
            &[
                "x,y,z: x>(y>z) = (x<y)<z = x<(y>z) = (x<y)>z",
                "x,y,z: x>(y<z) = (x>y)<z",
                "x,y,z: (x>y)>z = x<(y<z) = 0",
            ],
        ),
        "admissible-ntd" => {
            StructureDef::new(n, &ANTI, &[DOT], &cat(&ANTI_DENDRIFORM, &[ANTI_S1, "x,y,z: x<(y<z) = 2*((x.y)<z)"]))
        }
        "admissible-ntd-equiv" => StructureDef::new(
            n,
            &ANTI,
            &[],
            &[
                "x,y,z: (x>y)>z = x<(y<z) = 2/3*((x>y)<z) - 2/3*((x<y)>z)",
                "x,y,z: x>(y>z) = (x<y)<z = -2/3*((x>y)<z) - 1/3*((x<y)>z)",
                "x,y,z: x>(y<z) = (x>y)<z",
                "x,y,z: x<(y>z) = (x<y)>z",
            ],
        ),
        "dendri-q-cond" => Ok(StructureDef::new(n, &DENDRI, &[], &[S1, S2])?.with_q(dendri_q)),
        "anti-dendri-q-cond" => Ok(StructureDef::new(n, &ANTI, &[], &[ANTI_S1])?.with_q(anti_dendri_q)),
        "pre-lie-q-cond" => Ok(StructureDef::new(n, &[("star", "*")], &[BRACKET_STAR], &[])?.with_q(pre_lie_q)),
        "anti-pre-lie-q-cond" => Ok(StructureDef::new(n, &[("circ", "o")], &[BRACKET_CIRC], &[])?.with_q(anti_pre_lie_q)),
        _ => Err(Error::UnknownStructure(name.to_string())),
    }
}

/// The full built-in registry.
pub fn registry() -> BTreeMap<String, StructureDef> {
    BUILTIN
        .iter()
        .map(|n| (n.to_string(), lookup(n).expect("built-in bundles parse")))
        .collect()
}

/// Checks a built-in bundle on `alg`.
pub fn check_structure(alg: &AlgebraSpace, name: &str, binding: &Binding, q: Option<&Rational>) -> Result<Verdict> {
    lookup(name)?.check(alg, binding, q)
}

/// Whether two bundles give the same verdict on `alg`.
pub fn check_equiv_characterizations(alg: &AlgebraSpace, pair: (&str, &str), binding: &Binding) -> Result<bool> {
    let a = check_structure(alg, pair.0, binding, None)?;
    let b = check_structure(alg, pair.1, binding, None)?;
    Ok(a.holds == b.holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::tensor::StructTensor;
    use alloc::vec;

    fn two_op(dim: usize, a: (&str, &[(usize, usize, usize, Rational)]), b: (&str, &[(usize, usize, usize, Rational)])) -> AlgebraSpace {
        AlgebraSpace::standard(dim)
            .with_op(a.0, StructTensor::from_entries(dim, a.1))
            .unwrap()
            .with_op(b.0, StructTensor::from_entries(dim, b.1))
            .unwrap()
    }

    #[test]
    fn registry_shape() {
        let r = registry();
        assert_eq!(r.len(), BUILTIN.len());
        let ad = &r["anti-dendriform"];
        assert_eq!(ad.slots().len(), 2);
        assert_eq!(ad.identities().len(), 4);
        let tn = &r["two-nilpotent"];
        let shown: Vec<String> = tn.identities().iter().map(|l| l.id.to_string()).collect();
        assert_eq!(shown, vec!["x,y,z: (x.y).z", "x,y,z: x.(y.z)"]);
    }

    #[test]
    fn q_rules() {
        let alg = AlgebraSpace::standard(2).with_op("star", StructTensor::zero(2)).unwrap();
        for q in [int(0), int(1), int(-1)] {
            assert_eq!(check_structure(&alg, "pre-lie-q-cond", &Binding::new(), Some(&q)), Err(Error::ForbiddenQ(q.clone())));
        }
        assert!(matches!(check_structure(&alg, "pre-lie-q-cond", &Binding::new(), None), Err(Error::MissingQ(_))));
        assert!(matches!(check_structure(&alg, "pre-lie", &Binding::new(), Some(&int(2))), Err(Error::UnexpectedQ(_))));
        assert!(check_structure(&alg, "pre-lie-q-cond", &Binding::new(), Some(&int(2))).unwrap().holds);
    }

    #[test]
    fn b3_is_anti_dendriform() {
        let alg = two_op(2, ("rop", &[(0, 0, 1, int(1))]), ("lop", &[(0, 0, 1, int(1))]));
        let b = binding(&[("tri_r", "rop"), ("tri_l", "lop")]);
        assert!(check_structure(&alg, "anti-dendriform", &b, None).unwrap().holds);
    }

    #[test]
    fn trivial_passes_everything() {
        let mut alg = AlgebraSpace::standard(2);
        for op in ["mul", "succ", "prec", "tri_r", "tri_l", "star", "circ"] {
            alg.add_op(op, StructTensor::zero(2)).unwrap();
        }
        for name in BUILTIN {
            let def = lookup(name).unwrap();
            let q = def.is_q_parameterized().then(|| int(2));
            assert!(def.check(&alg, &Binding::new(), q.as_ref()).unwrap().holds, "{name}");
        }
    }

    #[test]
    fn ex3d_not_admissible_ntd() {
        let r = &[(0, 0, 1, rat(1, 2)), (0, 0, 2, int(1)), (0, 1, 2, int(2)), (1, 0, 2, int(-1))];
        let l = &[(0, 0, 1, rat(1, 2)), (0, 0, 2, int(-1)), (1, 0, 2, int(2)), (0, 1, 2, int(-1))];
        let alg = two_op(3, ("rop", r), ("lop", l));
        let b = binding(&[("tri_r", "rop"), ("tri_l", "lop")]);
        assert!(check_structure(&alg, "anti-dendriform", &b, None).unwrap().holds);
        assert!(!check_structure(&alg, "admissible-ntd", &b, None).unwrap().holds);
    }

    #[test]
    fn idempotent_fails_with_witness() {
        let alg = two_op(1, ("rop", &[(0, 0, 0, int(1))]), ("lop", &[]));
        let v = check_structure(&alg, "anti-dendriform", &Binding::new(), None).unwrap();
        let f = v.failure.unwrap();
        assert_eq!(f.tuple, vec![0, 0, 0]);
        assert!(f.identity.starts_with("anti-dendriform: "));
    }

    #[test]
    fn binding_errors() {
        let alg = AlgebraSpace::standard(2).with_op("a", StructTensor::zero(2)).unwrap();
        assert_eq!(check_structure(&alg, "nope", &Binding::new(), None), Err(Error::UnknownStructure("nope".into())));
        assert_eq!(check_structure(&alg, "dendriform", &binding(&[("succ", "a")]), None), Err(Error::IncompleteBinding("prec".into())));
        assert_eq!(check_structure(&alg, "associative", &binding(&[("foo", "a")]), None), Err(Error::UnknownSlot("foo".into())));
        assert!(check_structure(&alg, "associative", &binding(&[(".", "a")]), None).unwrap().holds);
        assert_eq!(check_structure(&alg, "associative", &binding(&[("mul", "b")]), None), Err(Error::UnknownOp("b".into())));
    }

    #[test]
    fn two_nilpotent_gives_ntd_both_ways() {
        // A2: e1·e1 = e2
        let alg = two_op(2, ("succ", &[(0, 0, 1, int(1))]), ("prec", &[]));
        assert!(check_equiv_characterizations(&alg, ("novikov-type-dendriform", "novikov-type-dendriform-equiv"), &Binding::new()).unwrap());
        assert!(check_structure(&alg, "novikov-type-dendriform", &Binding::new(), None).unwrap().holds);
        let alg = two_op(2, ("tri_r", &[]), ("tri_l", &[(0, 0, 1, int(1))]));
        assert!(check_structure(&alg, "anti-dendriform", &Binding::new(), None).unwrap().holds);
    }

    #[test]
    fn custom_bundle_rejects_unknown_ops() {
        assert!(StructureDef::new("c", &[("m", ".")], &[], &["x,y: x*y"]).is_err());
        assert!(StructureDef::new("c", &[("m", ".")], &[("b", "x,y: x.y - y.x")], &["x,y: x b y"]).is_ok());
        assert!(StructureDef::new("c", &[("m", ".")], &[("b", "x,y,z: x.y")], &[]).is_err());
    }

    #[test]
    fn linear_formatting() {
        let s = linear("x,y,z", &[(int(-2), "(x.y).z"), (int(0), "x.(y.z)"), (rat(1, 3), "z.(y.x)")]);
        assert_eq!(s, "x,y,z: -2*((x.y).z) + 0*(x.(y.z)) + 1/3*(z.(y.x))");
        assert!(parse_identity(&s).is_ok());
    }
}
