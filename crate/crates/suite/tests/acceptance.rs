//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeMap;
use std::process::ExitCode;

use adend_core::arith::{int, rat, Rational};
use adend_core::bimodule::{check_anti_rb, double_space, Bimodule};
use adend_core::catalog::{self, load};
use adend_core::forms::{
    check_invariance_anti_dendriform, classify_form, compatible_anti_pre_lie, form_on_semidirect, reconstruct_anti_dendriform,
};
use adend_core::random::{random_invertible, random_sparse_tensor, random_tensor, random_two_nilpotent};
use adend_core::solver::{
    anti_rb_matrix, solve_anti_dendriform_free, solve_anti_rb, solve_compatible_anti_dendriform, SolutionIdeal, SolverLimits,
    DEFAULT_GRID,
};
use adend_core::structures::{binding, check_structure, Binding};
use adend_core::transforms::{assoc_anti_pre_lie, assoc_pre_lie, op_sum, q_pair, q_single};
use adend_core::{AlgebraSpace, Matrix, StructTensor};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn holds(alg: &AlgebraSpace, bundle: &str, b: &Binding) -> bool {
    check_structure(alg, bundle, b, None).unwrap_or_else(|e| panic!("{bundle}: {e}")).holds
}

fn entry(id: &str, params: &[(&str, Rational)]) -> AlgebraSpace {
    let p: BTreeMap<String, Rational> = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    load(id, &p).unwrap().algebra
}

fn grid() -> Vec<Rational> {
    DEFAULT_GRID.iter().map(|&v| int(v)).collect()
}

fn gens(ideal: &SolutionIdeal) -> Vec<String> {
    ideal.basis.generators().iter().map(|g| g.to_string()).collect()
}

/// Every catalog algebra carrying `rop` and `lop`, at defaults and sample parameters.
fn catalog_pairs() -> Vec<(String, AlgebraSpace)> {
    let mut out = Vec::new();
    for info in catalog::list() {
        let mut sets = vec![BTreeMap::new()];
        if let Some((name, _)) = info.params.first() {
            for v in catalog::samples(info.id) {
                sets.push([(name.to_string(), v)].into_iter().collect());
            }
        }
        for ps in sets {
            let e = load(info.id, &ps).unwrap();
            if e.algebra.has_op("rop") && e.algebra.has_op("lop") {
                out.push((catalog::label(&e.id, &e.params), e.algebra.restrict_ops(&["rop", "lop"]).unwrap()));
            }
        }
    }
    out
}

fn anti_dendriform_catalog() -> Vec<(String, AlgebraSpace)> {
    catalog_pairs().into_iter().filter(|(_, a)| holds(a, "anti-dendriform", &Binding::new())).collect()
}

fn pair(r: StructTensor, l: StructTensor) -> AlgebraSpace {
    let n = r.dim();
    AlgebraSpace::standard(n).with_op("rop", r).unwrap().with_op("lop", l).unwrap()
}

/// Catalog pairs plus 50 seeded random 2-dim pairs and 20 random transports of
/// catalog anti-dendriform algebras.
fn population() -> Vec<(String, AlgebraSpace)> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut out = catalog_pairs();
    for i in 0..50 {
        let alg = if i % 2 == 0 {
            pair(random_tensor(&mut rng, 2, 2), random_tensor(&mut rng, 2, 2))
        } else {
            pair(random_sparse_tensor(&mut rng, 2, 2, 0.2), random_sparse_tensor(&mut rng, 2, 2, 0.2))
        };
        out.push((format!("random #{i}"), alg));
    }
    let base = anti_dendriform_catalog();
    for i in 0..20 {
        let (name, alg) = &base[i % base.len()];
        let g = random_invertible(&mut rng, alg.dim(), 2);
        out.push((format!("{name} transported #{i}"), alg.transport(&g).unwrap()));
    }
    out
}

fn c1() -> Outcome {
    let ideal = solve_anti_dendriform_free(1, &BTreeMap::new(), &SolverLimits::default()).map_err(|e| e.to_string())?;
    let g = gens(&ideal);
    ensure(g == ["r111", "l111"], || format!("basis {g:?}"))?;
    Ok("basis {r111, l111} (α = e▷e, β = e◁e)".into())
}

fn c2() -> Outcome {
    let idem = AlgebraSpace::new(["e"]).unwrap().with_op("mul", StructTensor::from_entries(1, &[(0, 0, 0, int(1))])).unwrap();
    let ideal = solve_compatible_anti_dendriform(&idem, "mul").map_err(|e| e.to_string())?;
    ensure(!ideal.consistent && ideal.basis.is_unit(), || format!("basis {:?}", gens(&ideal)))?;
    Ok("basis {1}".into())
}

/// (a) every ▷ entry except r112 lies in the ideal, (b) r112 is free,
/// (c) five sampled points pass "anti-dendriform" with ◁ = · − ▷ of the stated shape.
fn family_check(id: &str, lop_112: impl Fn(&Rational) -> Rational) -> Result<Vec<String>, String> {
    let alg = entry(id, &[]);
    let ideal = solve_compatible_anti_dendriform(&alg, "mul").map_err(|e| e.to_string())?;
    let ring = ideal.ring().clone();
    let mut problems = Vec::new();
    let stray: Vec<String> = ring
        .vars()
        .iter()
        .enumerate()
        .filter(|(i, v)| *v != "r112" && !ideal.contains(&ring.var(*i)).unwrap())
        .map(|(_, v)| v.clone())
        .collect();
    if !stray.is_empty() {
        // a witness outside the family: a grid point of the variety with a stray entry nonzero
        let mut witness = None;
        let vals = [int(0), int(1), int(-1)];
        let n = ring.nvars();
        let mut idx = vec![0usize; n];
        'scan: loop {
            let p: Vec<Rational> = idx.iter().map(|&k| vals[k].clone()).collect();
            let off = ring.vars().iter().zip(&p).any(|(v, c)| v != "r112" && *c != int(0));
            if off && ideal.contains_point(&p).unwrap() {
                let a = ideal.algebra_at(&p).unwrap().unwrap();
                if holds(&a, "anti-dendriform", &Binding::new()) {
                    witness = Some(ideal.point_map(&p).into_iter().filter(|(_, c)| *c != int(0)).map(|(k, c)| format!("{k}={c}")).collect::<Vec<_>>());
                    break 'scan;
                }
            }
            let mut pos = n;
            loop {
                if pos == 0 {
                    break 'scan;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < vals.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
        problems.push(format!(
            "{id}: (a) entries {stray:?} are not forced to 0; anti-dendriform witness {}",
            witness.map(|w| w.join(", ")).unwrap_or_else(|| "none on the grid".into())
        ));
    }
    if ideal.free_vars != ["r112"] && !ideal.free_vars.contains(&"r112".to_string()) {
        problems.push(format!("{id}: (b) free variables {:?}", ideal.free_vars));
    }
    let pts = ideal.sample_points(&grid(), 5).map_err(|e| e.to_string())?;
    if pts.len() < 5 {
        problems.push(format!("{id}: (c) only {} sample points", pts.len()));
    }
    for p in &pts {
        let a = ideal.algebra_at(p).unwrap().unwrap();
        let gamma = a.op("rop").unwrap().get(0, 0, 1).clone();
        let ok = holds(&a, "anti-dendriform", &Binding::new()) && (!stray.is_empty() || a.op("lop").unwrap().get(0, 0, 1) == &lop_112(&gamma));
        if !ok {
            problems.push(format!("{id}: (c) point {:?} fails", ideal.point_map(p)));
        }
    }
    Ok(problems)
}

fn c3() -> Outcome {
    let mut problems = family_check("A1", |g| -g.clone())?;
    problems.extend(family_check("A2", |g| int(1) - g)?);
    if problems.is_empty() {
        Ok("A1 and A2 families exact, r112 free, 5 samples each pass".into())
    } else {
        Err(problems.join("; "))
    }
}

fn c4() -> Outcome {
    let alg = entry("EX224", &[]);
    let ideal = solve_anti_rb(&alg, "mul").map_err(|e| e.to_string())?;
    ensure(gens(&ideal) == ["a11", "a12", "a22"], || format!("basis {:?}", gens(&ideal)))?;
    ensure(ideal.free_vars == ["a21"], || format!("free {:?}", ideal.free_vars))?;
    let pts = ideal.sample_points(&grid(), 5).map_err(|e| e.to_string())?;
    ensure(pts.len() == 5, || format!("{} samples", pts.len()))?;
    for p in &pts {
        let rep = check_anti_rb(&anti_rb_matrix(2, p), &alg, "mul").map_err(|e| e.to_string())?;
        ensure(rep.is_operator && rep.is_strong, || format!("point {p:?} not strong"))?;
    }
    Ok("basis {a11, a12, a22}, a21 free, 5 sampled operators strong".into())
}

fn c5() -> Outcome {
    for g in [int(0), int(1), rat(-3, 2), int(7)] {
        let alg = entry("EX3D", &[("gamma", g.clone())]);
        ensure(holds(&alg, "anti-dendriform", &Binding::new()), || format!("γ={g} fails"))?;
        let s = op_sum(&alg, "rop", "lop").unwrap();
        ensure(s.op("sum").unwrap() == alg.op("mul").unwrap(), || format!("γ={g}: sum differs from ·"))?;
        let e1 = alg.unit(0);
        let t = alg.eval_op("lop", &alg.eval_op("rop", &e1, &e1).unwrap(), &e1).unwrap();
        ensure(t == alg.unit(2), || format!("γ={g}: (e1▷e1)◁e1 = {t:?}"))?;
    }
    Ok("γ ∈ {0, 1, -3/2, 7}".into())
}

fn c6() -> Outcome {
    let pop = population();
    let mut passing = 0;
    for (name, alg) in &pop {
        let ad = holds(alg, "anti-dendriform", &Binding::new());
        let d = double_space(alg, "rop", "lop").unwrap();
        let assoc = holds(&d, "associative", &Binding::new());
        ensure(ad == assoc, || format!("{name}: anti-dendriform {ad}, double associative {assoc}"))?;
        passing += ad as usize;
    }
    Ok(format!("{} algebras ({passing} anti-dendriform), 0 disagreements", pop.len()))
}

fn c7() -> Outcome {
    let pop = population();
    for (name, alg) in &pop {
        let a = holds(alg, "anti-dendriform", &Binding::new());
        let m = Bimodule::anti_dendriform(alg, "rop", "lop").unwrap();
        let b = holds(m.base(), "associative", &binding(&[("mul", "sum")])) && m.check().holds;
        let c = holds(alg, "anti-dendriform-equiv", &Binding::new());
        ensure(a == b && b == c, || format!("{name}: {a} {b} {c}"))?;
    }
    Ok(format!("{} algebras, 0 disagreements", pop.len()))
}

fn c8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let base = anti_dendriform_catalog();
    for i in 0..100 {
        let (name, alg) = &base[i % base.len()];
        let g = random_invertible(&mut rng, alg.dim(), 2);
        let alg = alg.transport(&g).unwrap();
        let m = Bimodule::anti_dendriform(&alg, "rop", "lop").unwrap();
        let n = alg.dim();
        let (m, t) = if i % 2 == 0 {
            (m, Matrix::identity(n))
        } else {
            // conjugate the module by φ; φ⁻¹ is then an anti-O-operator
            let phi = random_invertible(&mut rng, n, 2);
            let inv = phi.inverse().unwrap();
            let conj = |a: &Matrix| phi.mul(a).unwrap().mul(&inv).unwrap();
            let m2 = Bimodule::new(
                m.base().clone(),
                m.op(),
                m.names().to_vec(),
                m.l().iter().map(conj).collect(),
                m.r().iter().map(conj).collect(),
            )
            .unwrap();
            (m2, inv)
        };
        let rep = m.check_anti_o(&t).map_err(|e| e.to_string())?;
        ensure(rep.is_operator && rep.is_strong, || format!("instance {i} from {name}: {rep:?}"))?;
    }
    Ok("100 invertible instances, all strong".into())
}

fn c9_c10(check_diagram: bool) -> Outcome {
    let base = anti_dendriform_catalog();
    for (name, alg) in &base {
        let (s, b) = form_on_semidirect(alg, "rop", "lop").map_err(|e| format!("{name}: {e}"))?;
        let rep = classify_form(&b, &s, "mul").unwrap();
        ensure(rep.nondegenerate && rep.commutative_connes, || format!("{name}: {rep:?}"))?;
        let rec = reconstruct_anti_dendriform(&b, &s, "mul").map_err(|e| format!("{name}: {e}"))?;
        ensure(holds(&rec, "anti-dendriform", &Binding::new()), || format!("{name}: reconstruction not anti-dendriform"))?;
        ensure(&rec.op("rop").unwrap().add(rec.op("lop").unwrap()) == s.op("mul").unwrap(), || format!("{name}: sum differs"))?;
        let inv = check_invariance_anti_dendriform(&b, &rec, "rop", "lop").unwrap();
        ensure(inv.invariant.holds, || format!("{name}: not invariant"))?;
        if check_diagram {
            let via_form = compatible_anti_pre_lie(&b, &s, "mul").map_err(|e| format!("{name}: {e}"))?;
            let via_pair = assoc_anti_pre_lie(&rec, "rop", "lop").unwrap();
            ensure(via_form.op("circ").unwrap() == via_pair.op("circ").unwrap(), || format!("{name}: ∘ differs"))?;
        }
    }
    Ok(format!("{} catalog anti-dendriform algebras", base.len()))
}

fn c11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let b_d = Binding::new();
    for i in 0..50 {
        let dim = 1 + i % 3;
        let m = random_two_nilpotent(&mut rng, dim, 2, false);
        let alg = AlgebraSpace::standard(dim).with_op("succ", m).unwrap().with_op("prec", StructTensor::zero(dim)).unwrap();
        ensure(holds(&alg, "novikov-type-dendriform", &b_d), || format!("sample {i}: not NTD"))?;
        let p = q_pair(&alg, "succ", "prec", &int(-2)).unwrap();
        ensure(holds(&p.restrict_ops(&["rop", "lop"]).unwrap(), "admissible-ntd", &b_d), || format!("sample {i}: (-2)-algebra not admissible NTD"))?;
        for q in [int(2), int(-2), int(3), rat(1, 2)] {
            let once = q_pair(&alg, "succ", "prec", &q).unwrap();
            let twice = q_pair(&once, "rop", "lop", &-q.clone()).unwrap();
            let c = int(1) - &q * &q;
            ensure(twice.op("rop").unwrap() == &alg.op("succ").unwrap().scale(&c), || format!("sample {i}, q={q}: ▷ roundtrip"))?;
            ensure(twice.op("lop").unwrap() == &alg.op("prec").unwrap().scale(&c), || format!("sample {i}, q={q}: ◁ roundtrip"))?;
            let left = assoc_anti_pre_lie(&once, "rop", "lop").unwrap();
            let right = q_single(&assoc_pre_lie(&alg, "succ", "prec").unwrap(), "star", &-q.clone()).unwrap();
            ensure(left.op("circ").unwrap() == right.op("diamond").unwrap(), || format!("sample {i}, q={q}: diagram"))?;
        }
    }
    Ok("50 samples".into())
}

fn c12() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let a2 = entry("A2", &[]).op("mul").unwrap().clone();
    let mut samples = vec![("A2".to_string(), a2)];
    for i in 0..20 {
        samples.push((format!("random #{i}"), random_two_nilpotent(&mut rng, 2 + i % 2, 2, true)));
    }
    for (name, t) in samples {
        let dim = t.dim();
        let alg = AlgebraSpace::standard(dim).with_op("star", t).unwrap();
        ensure(holds(&alg, "novikov", &Binding::new()), || format!("{name}: not Novikov"))?;
        let d = q_single(&alg, "star", &int(2)).unwrap();
        ensure(holds(&d, "admissible-novikov", &binding(&[("circ", "diamond")])), || format!("{name}: 2-algebra not admissible Novikov"))?;
    }
    Ok("A2 and 20 random commutative 2-nilpotent algebras".into())
}

fn c13() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let (mut ntd, mut antd) = (0, 0);
    for i in 0..200 {
        let density = [0.1, 0.2, 0.35, 0.6][i % 4];
        let a = random_sparse_tensor(&mut rng, 2, 2, density);
        let b = random_sparse_tensor(&mut rng, 2, 2, density);
        let d = AlgebraSpace::standard(2).with_op("succ", a.clone()).unwrap().with_op("prec", b.clone()).unwrap();
        let x = holds(&d, "novikov-type-dendriform", &Binding::new());
        let y = holds(&d, "novikov-type-dendriform-equiv", &Binding::new());
        ensure(x == y, || format!("sample {i}: NTD {x} vs equiv {y}"))?;
        let ad = pair(a, b);
        let u = holds(&ad, "admissible-ntd", &Binding::new());
        let v = holds(&ad, "admissible-ntd-equiv", &Binding::new());
        ensure(u == v, || format!("sample {i}: admissible NTD {u} vs equiv {v}"))?;
        ntd += x as usize;
        antd += u as usize;
    }
    Ok(format!("200 samples ({ntd} NTD, {antd} admissible NTD), 0 disagreements"))
}

/// Sampled points pass the checker, and on the {-1,0,1} grid the checker
/// agrees with membership in the solution set.
fn c14() -> Outcome {
    let lim = SolverLimits::default();
    let idem = AlgebraSpace::new(["e"]).unwrap().with_op("mul", StructTensor::from_entries(1, &[(0, 0, 0, int(1))])).unwrap();
    let ex224 = entry("EX224", &[]);
    let alg_cases: Vec<(&str, SolutionIdeal)> = vec![
        ("free dim 1", solve_anti_dendriform_free(1, &BTreeMap::new(), &lim).unwrap()),
        ("compatible e·e=e", solve_compatible_anti_dendriform(&idem, "mul").unwrap()),
        ("compatible A1", solve_compatible_anti_dendriform(&entry("A1", &[]), "mul").unwrap()),
        ("compatible A2", solve_compatible_anti_dendriform(&entry("A2", &[]), "mul").unwrap()),
    ];
    let anti_rb = solve_anti_rb(&ex224, "mul").unwrap();
    let mut sampled = 0;
    let mut grid_points = 0;
    let passes = |name: &str, p: &[Rational], ideal: &SolutionIdeal| -> bool {
        if name == "anti-rb" {
            check_anti_rb(&anti_rb_matrix(2, p), &ex224, "mul").unwrap().is_operator
        } else {
            holds(&ideal.algebra_at(p).unwrap().unwrap(), "anti-dendriform", &Binding::new())
        }
    };
    let all: Vec<(&str, &SolutionIdeal)> = alg_cases.iter().map(|(n, i)| (*n, i)).chain([("anti-rb", &anti_rb)]).collect();
    for (name, ideal) in all {
        for p in ideal.sample_points(&grid(), 10).unwrap() {
            sampled += 1;
            ensure(passes(name, &p, ideal), || format!("{name}: sampled point {:?} fails the checker", ideal.point_map(&p)))?;
        }
        let n = ideal.ring().nvars();
        let vals = [int(-1), int(0), int(1)];
        for code in 0..3usize.pow(n as u32) {
            let p: Vec<Rational> = (0..n).map(|k| vals[(code / 3usize.pow(k as u32)) % 3].clone()).collect();
            grid_points += 1;
            let ok = passes(name, &p, ideal);
            let member = ideal.contains_point(&p).unwrap();
            ensure(ok == member, || format!("{name}: grid point {:?}: checker {ok}, membership {member}", ideal.point_map(&p)))?;
        }
    }
    Ok(format!("{sampled} sampled points, {grid_points} grid points, 0 violations"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("1-dim triviality", c1),
        ("idempotent obstruction", c2),
        ("2-dim classification", c3),
        ("anti-Rota-Baxter family", c4),
        ("3-dim family", c5),
        ("double-space equivalence", c6),
        ("bimodule characterization", c7),
        ("invertible implies strong", c8),
        ("Connes-cocycle pipeline", || c9_c10(false)),
        ("diagram coincidence", || c9_c10(true)),
        ("q-correspondence", c11),
        ("pre-Lie side", c12),
        ("equivalent characterizations", c13),
        ("solver soundness", c14),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
