//! Command handlers.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use adend_core::arith::{parse_rational, Rational};
use adend_core::bimodule::{check_anti_rb, double_space, Bimodule};
use adend_core::catalog;
use adend_core::forms::{
    check_invariance_anti_dendriform, check_invariance_anti_pre_lie, classify_form, compatible_anti_pre_lie, describe,
    form_equivalence_check, form_on_semidirect, reconstruct_anti_dendriform, FormReport,
};
use adend_core::identity::{check_identity, parse_identity};
use adend_core::random::random_sparse_tensor;
use adend_core::solver::{
    iso_invariants, iso_search, solve_anti_dendriform_free, solve_anti_rb, solve_compatible_anti_dendriform, InvariantVector,
    SolverLimits,
};
use adend_core::structures::{lookup, Binding};
use adend_core::transforms::{self, assoc_anti_pre_lie, assoc_pre_lie, commutator, op_sum, TransformKind, TransformSpec};
use adend_core::{AlgebraSpace, SolutionIdeal, StructureDef, Verdict};
use anyhow::{anyhow, bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::format::{self, algebra_json, bimodule_json, load_algebra, load_bimodule, matrix_json, parse_map, rat_str, Kind};
use crate::report::{
    failure_json, failure_text, operator_json, operator_text, verdict_json, verdict_outcome, verdict_text, Outcome, EXIT_FAILS,
    EXIT_HOLDS, EXIT_INPUT,
};
use crate::{CatalogCmd, CheckCmd, Cli, Command, ConstructCmd, DeriveArgs, FormCmd, OpCmd, SolveCmd, SolveOpts, TransformArgs};

pub fn dispatch(cli: &Cli, err: &mut dyn Write) -> Result<Outcome> {
    match &cli.command {
        Command::Check(c) => check(c, cli.seed),
        Command::Derive(a) => derive(a),
        Command::Transform(a) => transform(a, err),
        Command::Construct(c) => construct(c),
        Command::Op(c) => op(c),
        Command::Form(c) => form(c),
        Command::Solve(c) => solve(c),
        Command::Catalog(c) => catalog_cmd(c),
        Command::Validate(a) => validate(&a.files, a.kind.as_deref()),
    }
}

fn parse_binding(items: &[String]) -> Result<Binding> {
    let mut b = Binding::new();
    for item in items.iter().filter(|s| !s.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| anyhow!("binding `{item}` must be `slot=op`"))?;
        b.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(b)
}

fn parse_assignments(items: &[String], what: &str) -> Result<BTreeMap<String, Rational>> {
    let mut out = BTreeMap::new();
    for item in items.iter().filter(|s| !s.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| anyhow!("{what} `{item}` must be `name=p/q`"))?;
        let r = parse_rational(v.trim()).with_context(|| format!("{what} `{item}`"))?;
        out.insert(k.trim().to_string(), r);
    }
    Ok(out)
}

fn parse_q(q: Option<&String>) -> Result<Option<Rational>> {
    q.map(|s| parse_rational(s).with_context(|| format!("--q {s}"))).transpose()
}

fn two_ops(ops: &[String], default: [&str; 2]) -> Result<(String, String)> {
    match ops {
        [] => Ok((default[0].to_string(), default[1].to_string())),
        [a, b] => Ok((a.clone(), b.clone())),
        _ => bail!("expected two operations, got {}", ops.len()),
    }
}

fn op_list(ops: &[String], alg: &AlgebraSpace) -> Vec<String> {
    if ops.is_empty() {
        alg.op_names()
    } else {
        ops.to_vec()
    }
}

/// A bundle name from the registry, or a path to a bundle JSON file.
fn resolve_bundle(name: &str) -> Result<StructureDef> {
    let p = Path::new(name);
    if name.ends_with(".json") || p.is_file() {
        return Ok(format::load_bundle(p)?);
    }
    Ok(lookup(name)?)
}

/// Writes `doc` to `output`, or returns it as the command output.
fn emit(doc: Value, output: Option<&PathBuf>, what: &str) -> Result<Outcome> {
    let pretty = serde_json::to_string_pretty(&doc)?;
    match output {
        Some(path) => {
            fs::write(path, format!("{pretty}\n")).with_context(|| format!("writing {}", path.display()))?;
            Ok(Outcome::ok(format!("wrote {what} to {}", path.display()), json!({ "output": path.display().to_string() })))
        }
        None => Ok(Outcome::ok(pretty, doc)),
    }
}

fn limits(opts: &SolveOpts) -> Result<SolverLimits> {
    let mut l = SolverLimits::default();
    let cap = match opts.max_dim {
        Some(d) => Some(d),
        None => match std::env::var("ADEND_MAX_DIM") {
            Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| anyhow!("ADEND_MAX_DIM must be a nonnegative integer, got `{v}`"))?),
            Err(_) => None,
        },
    };
    if let Some(c) = cap {
        l.max_free_dim = c;
        l.max_iso_dim = c;
    }
    l.sample_limit = opts.samples;
    Ok(l)
}

fn worst(codes: impl IntoIterator<Item = i32>) -> i32 {
    codes.into_iter().fold(EXIT_HOLDS, |a, c| if a == EXIT_INPUT || c == EXIT_INPUT { EXIT_INPUT } else { a.max(c) })
}

// ---- check ----

fn check(c: &CheckCmd, seed: u64) -> Result<Outcome> {
    match c {
        CheckCmd::Structure { bundle, files, glob, bind, q } => {
            let def = resolve_bundle(bundle)?;
            let binding = parse_binding(bind)?;
            let q = parse_q(q.as_ref())?;
            let mut paths = files.clone();
            if let Some(pattern) = glob {
                for entry in glob::glob(pattern).with_context(|| format!("bad pattern `{pattern}`"))? {
                    paths.push(entry?);
                }
            }
            if paths.is_empty() {
                bail!("no algebra files given");
            }
            paths.sort();
            paths.dedup();
            check_many(&def, &binding, q.as_ref(), &paths)
        }
        CheckCmd::Identity { identity, file } => {
            let alg = load_algebra(file)?;
            let id = parse_identity(identity)?;
            let v = check_identity(&id, &alg)?;
            Ok(verdict_outcome(&id.to_string(), &v, alg.basis()))
        }
        CheckCmd::Equiv { a, b, file, bind } => {
            let alg = load_algebra(file)?;
            let binding = parse_binding(bind)?;
            let (da, db) = (resolve_bundle(a)?, resolve_bundle(b)?);
            let va = da.check(&alg, &binding, None)?;
            let vb = db.check(&alg, &binding, None)?;
            let agree = va.holds == vb.holds;
            let text = format!(
                "{}\n{}\n{}",
                verdict_text(a, &va, alg.basis()),
                verdict_text(b, &vb, alg.basis()),
                if agree { "verdicts agree" } else { "verdicts differ" }
            );
            Ok(Outcome::new(agree, text, json!({ "agree": agree, a.as_str(): verdict_json(&va, alg.basis()), b.as_str(): verdict_json(&vb, alg.basis()) })))
        }
        CheckCmd::Random { a, b, dim, count, bound, density } => random_agreement(a, b, *dim, *count, *bound, *density, seed),
        CheckCmd::Bimodule { file } => {
            let m = load_bimodule(file)?;
            let v = m.check();
            Ok(verdict_outcome("bimodule", &v, m.base().basis()))
        }
    }
}

fn check_one(def: &StructureDef, binding: &Binding, q: Option<&Rational>, path: &Path) -> Result<(Verdict, Vec<String>)> {
    let alg = load_algebra(path)?;
    let v = def.check(&alg, binding, q)?;
    Ok((v, alg.basis().to_vec()))
}

/// Files are checked in parallel; output follows the sorted file order.
fn check_many(def: &StructureDef, binding: &Binding, q: Option<&Rational>, paths: &[PathBuf]) -> Result<Outcome> {
    if let [path] = paths {
        let (v, basis) = check_one(def, binding, q, path)?;
        return Ok(verdict_outcome(def.name(), &v, &basis));
    }
    let results: Vec<Result<(Verdict, Vec<String>)>> = paths.par_iter().map(|p| check_one(def, binding, q, p)).collect();
    let mut lines = Vec::new();
    let mut docs = Vec::new();
    let mut codes = Vec::new();
    for (path, r) in paths.iter().zip(results) {
        let name = path.display().to_string();
        match r {
            Ok((v, basis)) => {
                codes.push(if v.holds { EXIT_HOLDS } else { EXIT_FAILS });
                lines.push(verdict_text(&format!("{name}: {}", def.name()), &v, &basis));
                let mut d = verdict_json(&v, &basis);
                d["file"] = json!(name);
                docs.push(d);
            }
            Err(e) => {
                codes.push(EXIT_INPUT);
                // input errors already name the file
                lines.push(match e.downcast_ref::<format::InputError>() {
                    Some(_) => format!("error: {e:#}"),
                    None => format!("{name}: error: {e:#}"),
                });
                docs.push(json!({ "file": name, "error": e.to_string() }));
            }
        }
    }
    Ok(Outcome { code: worst(codes), text: lines.join("\n"), json: Value::Array(docs) })
}

fn random_agreement(a: &str, b: &str, dim: usize, count: usize, bound: i64, density: f64, seed: u64) -> Result<Outcome> {
    let (da, db) = (resolve_bundle(a)?, resolve_bundle(b)?);
    if !(0.0..=1.0).contains(&density) {
        bail!("--density must lie in [0, 1]");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut holds_a, mut holds_b) = (0usize, 0usize);
    for n in 0..count {
        let mut alg = AlgebraSpace::standard(dim);
        for slot in da.slots() {
            alg.add_op(&slot.name, random_sparse_tensor(&mut rng, dim, bound, density))?;
        }
        let va = da.check(&alg, &Binding::new(), None)?;
        let vb = db.check(&alg, &Binding::new(), None).context("the second bundle must use the slot names of the first")?;
        holds_a += va.holds as usize;
        holds_b += vb.holds as usize;
        if va.holds != vb.holds {
            let text = format!(
                "sample {n} separates the bundles\n{}\n{}",
                verdict_text(a, &va, alg.basis()),
                verdict_text(b, &vb, alg.basis())
            );
            return Ok(Outcome::new(
                false,
                text,
                json!({ "agree": false, "sample": n, "seed": seed, "algebra": algebra_json(&alg), a: verdict_json(&va, alg.basis()), b: verdict_json(&vb, alg.basis()) }),
            ));
        }
    }
    Ok(Outcome::ok(
        format!("{count} samples (seed {seed}): verdicts agree; {a} held {holds_a} times, {b} held {holds_b} times"),
        json!({ "agree": true, "samples": count, "seed": seed, "holds": { a: holds_a, b: holds_b } }),
    ))
}

// ---- derive ----

fn derive(a: &DeriveArgs) -> Result<Outcome> {
    let alg = load_algebra(&a.file)?;
    let basis = alg.basis().to_vec();
    let mut checks: Vec<(String, Verdict)> = Vec::new();
    let mut out = alg.clone();
    match a.from.as_str() {
        "anti-dendriform" => {
            let (r, l) = two_ops(&a.ops, ["rop", "lop"])?;
            let b = adend_core::structures::binding(&[("tri_r", &r), ("tri_l", &l)]);
            checks.push(("anti-dendriform".into(), lookup("anti-dendriform")?.check(&alg, &b, None)?));
            let s = op_sum(&alg, &r, &l)?;
            checks.push(("sum: associative".into(), lookup("associative")?.check(&s, &adend_core::structures::binding(&[("mul", "sum")]), None)?));
            let circ = assoc_anti_pre_lie(&alg, &r, &l)?;
            checks.push(("circ: anti-pre-lie".into(), lookup("anti-pre-lie")?.check(&circ, &Binding::new(), None)?));
            let br = commutator(&s, "sum")?;
            checks.push(("bracket: lie".into(), lookup("lie")?.check(&br, &adend_core::structures::binding(&[("mul", "bracket")]), None)?));
            out.set_op("sum", s.op("sum")?.clone())?;
            out.set_op("circ", circ.op("circ")?.clone())?;
            out.set_op("bracket", br.op("bracket")?.clone())?;
        }
        "dendriform" => {
            let (sc, pr) = two_ops(&a.ops, ["succ", "prec"])?;
            let b = adend_core::structures::binding(&[("succ", &sc), ("prec", &pr)]);
            checks.push(("dendriform".into(), lookup("dendriform")?.check(&alg, &b, None)?));
            let s = op_sum(&alg, &sc, &pr)?;
            checks.push(("sum: associative".into(), lookup("associative")?.check(&s, &adend_core::structures::binding(&[("mul", "sum")]), None)?));
            let star = assoc_pre_lie(&alg, &sc, &pr)?;
            checks.push(("star: pre-lie".into(), lookup("pre-lie")?.check(&star, &Binding::new(), None)?));
            out.set_op("sum", s.op("sum")?.clone())?;
            out.set_op("star", star.op("star")?.clone())?;
        }
        other => bail!("--from must be `anti-dendriform` or `dendriform`, got `{other}`"),
    }
    let holds = checks.iter().all(|(_, v)| v.holds);
    let mut text: Vec<String> = checks.iter().map(|(k, v)| verdict_text(k, v, &basis)).collect();
    let mut doc = json!({
        "holds": holds,
        "checks": checks.iter().map(|(k, v)| { let mut d = verdict_json(v, &basis); d["name"] = json!(k); d }).collect::<Vec<_>>(),
    });
    if let Some(path) = &a.output {
        emit(algebra_json(&out), Some(path), "derived algebra")?;
        text.push(format!("wrote derived algebra to {}", path.display()));
        doc["output"] = json!(path.display().to_string());
    } else {
        doc["algebra"] = algebra_json(&out);
    }
    Ok(Outcome::new(holds, text.join("\n"), doc))
}

// ---- transform ----

fn transform(a: &TransformArgs, err: &mut dyn Write) -> Result<Outcome> {
    let kind = TransformKind::from_name(&a.kind).ok_or_else(|| {
        anyhow!("unknown transform `{}`; expected sum, commutator, pre-lie, anti-pre-lie, q-pair, q-pair-alt or q-single", a.kind)
    })?;
    let alg = load_algebra(&a.file)?;
    let q = parse_q(a.q.as_ref())?;
    if kind.needs_q() && q.is_none() {
        bail!("{} needs --q", kind.name());
    }
    if !kind.needs_q() && q.is_some() {
        bail!("{} takes no --q", kind.name());
    }
    if let Some(w) = q.as_ref().and_then(transforms::q_warning) {
        let _ = writeln!(err, "warning: {w}");
    }
    let sources = if a.ops.is_empty() {
        kind.default_sources(&alg).ok_or_else(|| anyhow!("no default source operations for {}; pass --ops", kind.name()))?
    } else {
        a.ops.clone()
    };
    let src: Vec<&str> = sources.iter().map(String::as_str).collect();
    let mut spec = TransformSpec::new(kind, &src, q);
    if !a.into.is_empty() {
        let t: Vec<&str> = a.into.iter().map(String::as_str).collect();
        spec = spec.with_targets(&t);
    }
    let result = transforms::apply(&alg, &spec)?;
    emit(algebra_json(&result), a.output.as_ref(), "transformed algebra")
}

// ---- construct ----

fn construct(c: &ConstructCmd) -> Result<Outcome> {
    match c {
        ConstructCmd::Module { file, ops, output } => {
            let alg = load_algebra(file)?;
            let (r, l) = two_ops(ops, ["rop", "lop"])?;
            emit(bimodule_json(&Bimodule::anti_dendriform(&alg, &r, &l)?), output.as_ref(), "bimodule")
        }
        ConstructCmd::Regular { file, op, output } => {
            let alg = load_algebra(file)?;
            emit(bimodule_json(&Bimodule::regular(&alg, op)?), output.as_ref(), "bimodule")
        }
        ConstructCmd::Dual { file, output } => emit(bimodule_json(&load_bimodule(file)?.dual()), output.as_ref(), "dual bimodule"),
        ConstructCmd::Semidirect { file, output } => {
            emit(algebra_json(&load_bimodule(file)?.semidirect()?), output.as_ref(), "semidirect product")
        }
        ConstructCmd::Double { file, ops, output } => {
            let alg = load_algebra(file)?;
            let (r, l) = two_ops(ops, ["rop", "lop"])?;
            emit(algebra_json(&double_space(&alg, &r, &l)?), output.as_ref(), "double space")
        }
        ConstructCmd::EmbedHat { file, map, output } => {
            let m = load_bimodule(file)?;
            let t = parse_map(map, m.base().dim())?;
            let (alg, hat) = m.embed_hat(&t)?;
            emit(json!({ "algebra": algebra_json(&alg), "map": matrix_json(&hat) }), output.as_ref(), "embedded operator")
        }
    }
}

// ---- op ----

fn op(c: &OpCmd) -> Result<Outcome> {
    match c {
        OpCmd::AntiO { file, map } => {
            let m = load_bimodule(file)?;
            let t = parse_map(map, m.base().dim())?;
            let rep = m.check_anti_o(&t)?;
            Ok(Outcome::new(rep.is_operator, operator_text("anti-O-operator", &rep, m.names()), operator_json(&rep, m.names())))
        }
        OpCmd::AntiRb { file, op, map } => {
            let alg = load_algebra(file)?;
            let p = parse_map(map, alg.dim())?;
            let rep = check_anti_rb(&p, &alg, op)?;
            Ok(Outcome::new(rep.is_operator, operator_text("anti-Rota-Baxter operator", &rep, alg.basis()), operator_json(&rep, alg.basis())))
        }
        OpCmd::Cocycle { file, map } => {
            let m = load_bimodule(file)?;
            let d = parse_map(map, m.space_dim())?;
            let v = m.check_anti_1_cocycle(&d)?;
            Ok(verdict_outcome("anti-1-cocycle", &v, m.base().basis()))
        }
        OpCmd::Induce { file, map, output } => {
            let m = load_bimodule(file)?;
            let t = parse_map(map, m.base().dim())?;
            emit(algebra_json(&m.induced_ops(&t)?), output.as_ref(), "induced algebra")
        }
    }
}

// ---- form ----

fn form_report_json(r: &FormReport) -> Value {
    json!({
        "symmetric": r.symmetric,
        "antisymmetric": r.antisymmetric,
        "nondegenerate": r.nondegenerate,
        "connes": r.connes,
        "commutative_connes": r.commutative_connes,
        "commutative_2cocycle": r.commutative_2cocycle,
    })
}

fn form(c: &FormCmd) -> Result<Outcome> {
    match c {
        FormCmd::Classify { file, form, op } => {
            let alg = load_algebra(file)?;
            let rep = classify_form(alg.form(form)?, &alg, op)?;
            Ok(Outcome::ok(format!("{form} on {op}: {}", describe(&rep)), form_report_json(&rep)))
        }
        FormCmd::Invariance { file, form, ops, circ } => {
            let alg = load_algebra(file)?;
            let b = alg.form(form)?;
            if let Some(circ) = circ {
                let v = check_invariance_anti_pre_lie(b, &alg, circ)?;
                return Ok(verdict_outcome("invariant on the anti-pre-Lie algebra", &v, alg.basis()));
            }
            let (r, l) = two_ops(ops, ["rop", "lop"])?;
            let rep = check_invariance_anti_dendriform(b, &alg, &r, &l)?;
            let mut out = verdict_outcome("invariant", &rep.invariant, alg.basis());
            out.text.push('\n');
            out.text.push_str(&verdict_text("B(x◁y,z) = B(z▷x,y)", &rep.lemma, alg.basis()));
            out.json["lemma"] = verdict_json(&rep.lemma, alg.basis());
            Ok(out)
        }
        FormCmd::Reconstruct { file, form, op, output } => {
            let alg = load_algebra(file)?;
            emit(algebra_json(&reconstruct_anti_dendriform(alg.form(form)?, &alg, op)?), output.as_ref(), "anti-dendriform algebra")
        }
        FormCmd::AntiPreLie { file, form, op, output } => {
            let alg = load_algebra(file)?;
            emit(algebra_json(&compatible_anti_pre_lie(alg.form(form)?, &alg, op)?), output.as_ref(), "anti-pre-Lie algebra")
        }
        FormCmd::Semidirect { file, ops, output } => {
            let alg = load_algebra(file)?;
            let (r, l) = two_ops(ops, ["rop", "lop"])?;
            let (s, b) = form_on_semidirect(&alg, &r, &l)?;
            emit(algebra_json(&s.with_form("B", b)?), output.as_ref(), "semidirect product")
        }
        FormCmd::Equivalence { file, form, ops } => {
            let alg = load_algebra(file)?;
            let (r, l) = two_ops(ops, ["rop", "lop"])?;
            let v = form_equivalence_check(alg.form(form)?, &alg, &r, &l)?;
            Ok(verdict_outcome("bimodule equivalence", &v, alg.basis()))
        }
    }
}

// ---- solve ----

fn ideal_doc(ideal: &SolutionIdeal, samples: usize, grid: &[Rational]) -> Result<(Value, String)> {
    let groebner: Vec<String> = ideal.basis.generators().iter().map(|g| g.to_string()).collect();
    let points = if ideal.consistent { ideal.sample_points(grid, samples)? } else { Vec::new() };
    let maps: Vec<BTreeMap<String, Rational>> = points.iter().map(|p| ideal.point_map(p)).collect();
    let doc = json!({
        "consistent": ideal.consistent,
        "groebner": groebner,
        "free_vars": ideal.free_vars,
        "sample_points": maps.iter().map(|m| m.iter().map(|(k, v)| (k.clone(), json!(rat_str(v)))).collect::<serde_json::Map<_, _>>()).collect::<Vec<_>>(),
    });
    let mut text = vec![format!("consistent: {}", ideal.consistent), format!("groebner basis ({}):", groebner.len())];
    text.extend(groebner.iter().map(|g| format!("  {g}")));
    text.push(format!("free variables: {}", if ideal.free_vars.is_empty() { "none".to_string() } else { ideal.free_vars.join(", ") }));
    if !maps.is_empty() {
        text.push("sample points:".into());
        for m in &maps {
            let kv: Vec<String> = m.iter().map(|(k, v)| format!("{k}={v}")).collect();
            text.push(format!("  {}", kv.join(", ")));
        }
    }
    Ok((doc, text.join("\n")))
}

fn solve(c: &SolveCmd) -> Result<Outcome> {
    match c {
        SolveCmd::Compatible { file, op, opts } => {
            let lim = limits(opts)?;
            let ideal = solve_compatible_anti_dendriform(&load_algebra(file)?, op)?;
            let (doc, text) = ideal_doc(&ideal, opts.samples, &lim.grid)?;
            Ok(Outcome::new(ideal.consistent, text, doc))
        }
        SolveCmd::AntiRb { file, op, opts } => {
            let lim = limits(opts)?;
            let ideal = solve_anti_rb(&load_algebra(file)?, op)?;
            let (doc, text) = ideal_doc(&ideal, opts.samples, &lim.grid)?;
            Ok(Outcome::new(ideal.consistent, text, doc))
        }
        SolveCmd::Free { dim, pin, opts } => {
            let lim = limits(opts)?;
            let pins = parse_assignments(pin, "pin")?;
            let ideal = solve_anti_dendriform_free(*dim, &pins, &lim)?;
            let (mut doc, mut text) = ideal_doc(&ideal, opts.samples, &lim.grid)?;
            if !pins.is_empty() {
                doc["pinned"] = pins.iter().map(|(k, v)| (k.clone(), json!(rat_str(v)))).collect::<serde_json::Map<_, _>>().into();
                let kv: Vec<String> = pins.iter().map(|(k, v)| format!("{k}={v}")).collect();
                text = format!("pinned: {}\n{text}", kv.join(", "));
            }
            Ok(Outcome::new(ideal.consistent, text, doc))
        }
        SolveCmd::Iso { a, b, ops, opts } => {
            let lim = limits(opts)?;
            let (aa, bb) = (load_algebra(a)?, load_algebra(b)?);
            let names = op_list(ops, &aa);
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let rep = iso_search(&aa, &bb, &refs, &lim)?;
            let (mut doc, mut text) = ideal_doc(&rep.ideal, opts.samples, &lim.grid)?;
            doc["witness"] = rep.witness.as_ref().map(matrix_json).unwrap_or(Value::Null);
            text.push_str(&match &rep.witness {
                Some(w) => format!("\nrational isomorphism found:\n{w}"),
                None if rep.ideal.consistent => "\nno rational isomorphism found on the sampling grid".to_string(),
                None => "\nnot isomorphic".to_string(),
            });
            Ok(Outcome::new(rep.ideal.consistent, text, doc))
        }
        SolveCmd::Invariants { file, ops } => {
            let alg = load_algebra(file)?;
            let names = op_list(ops, &alg);
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let inv = iso_invariants(&alg, &refs)?;
            Ok(Outcome::ok(invariants_text(&inv), invariants_json(&inv)))
        }
    }
}

fn invariants_json(inv: &InvariantVector) -> Value {
    json!({
        "dim": inv.dim,
        "annihilators": inv.annihilators.iter().map(|(op, d)| json!({ "op": op, "left": d.left, "right": d.right, "image": d.image })).collect::<Vec<_>>(),
        "product_span": inv.product_span,
        "triple_span": inv.triple_span,
        "sum_commutative": inv.sum_commutative,
    })
}

fn invariants_text(inv: &InvariantVector) -> String {
    let mut lines = vec![format!("dim: {}", inv.dim)];
    for (op, d) in &inv.annihilators {
        lines.push(format!("{op}: left annihilator {}, right annihilator {}, image {}", d.left, d.right, d.image));
    }
    lines.push(format!("product span: {}", inv.product_span));
    lines.push(format!("triple product span: {}", inv.triple_span));
    lines.push(format!("sum commutative: {}", inv.sum_commutative));
    lines.join("\n")
}

// ---- catalog ----

fn catalog_cmd(c: &CatalogCmd) -> Result<Outcome> {
    match c {
        CatalogCmd::List => {
            let mut lines = Vec::new();
            let mut docs = Vec::new();
            for e in catalog::list() {
                let ps: Vec<String> = e.params.iter().map(|(n, d)| format!("{n}={d}")).collect();
                let shown = if ps.is_empty() { String::new() } else { format!(" [{}]", ps.join(", ")) };
                lines.push(format!("{:<14}{}{}", e.id, e.description, shown));
                docs.push(json!({ "id": e.id, "description": e.description, "params": e.params.iter().map(|(n, d)| json!({ "name": n, "default": d })).collect::<Vec<_>>() }));
            }
            Ok(Outcome::ok(lines.join("\n"), Value::Array(docs)))
        }
        CatalogCmd::Show { id, param } => {
            let e = catalog::load(id, &parse_assignments(param, "param")?)?;
            let label = catalog::label(&e.id, &e.params);
            let mut lines = vec![format!("{label}: {}", e.description)];
            for x in &e.expected {
                lines.push(format!("  expects {} {}", x.bundle, if x.holds { "to hold" } else { "to fail" }));
            }
            lines.push(serde_json::to_string_pretty(&algebra_json(&e.algebra))?);
            let doc = json!({
                "id": e.id,
                "label": label,
                "description": e.description,
                "params": e.params.iter().map(|(k, v)| (k.clone(), json!(rat_str(v)))).collect::<serde_json::Map<_, _>>(),
                "expected": e.expected.iter().map(|x| json!({ "bundle": x.bundle, "binding": x.binding, "holds": x.holds })).collect::<Vec<_>>(),
                "algebra": algebra_json(&e.algebra),
            });
            Ok(Outcome::ok(lines.join("\n"), doc))
        }
        CatalogCmd::Export { id, param, output } => {
            let e = catalog::load(id, &parse_assignments(param, "param")?)?;
            emit(algebra_json(&e.algebra), output.as_ref(), &catalog::label(&e.id, &e.params))
        }
        CatalogCmd::SelfTest => {
            let lines = catalog::self_test()?;
            let mut text = Vec::new();
            let mut docs = Vec::new();
            let mut failed = 0;
            for l in &lines {
                let label = catalog::label(&l.entry, &l.params);
                let status = if l.passed() { "ok" } else { "MISMATCH" };
                failed += !l.passed() as usize;
                text.push(format!("{status:<9}{label}: {} expected {}, got {}", l.bundle, l.expected, l.got));
                if let (false, Some(f)) = (l.passed(), &l.failure) {
                    text.push(failure_text(f, &[]));
                }
                docs.push(json!({
                    "entry": label,
                    "bundle": l.bundle,
                    "expected": l.expected,
                    "got": l.got,
                    "witness": l.failure.as_ref().map(|f| failure_json(f, &[])),
                }));
            }
            text.push(format!("{} of {} expectations met", lines.len() - failed, lines.len()));
            Ok(Outcome::new(failed == 0, text.join("\n"), json!({ "passed": failed == 0, "results": docs })))
        }
    }
}

// ---- validate ----

fn validate(files: &[PathBuf], kind: Option<&str>) -> Result<Outcome> {
    if files.is_empty() {
        bail!("no files given");
    }
    let kind = match kind {
        None => None,
        Some("algebra") => Some(Kind::Algebra),
        Some("bimodule") => Some(Kind::Bimodule),
        Some("bundle") => Some(Kind::Bundle),
        Some(other) => bail!("--kind must be algebra, bimodule or bundle, got `{other}`"),
    };
    let mut lines = Vec::new();
    let mut docs = Vec::new();
    let mut bad = false;
    for f in files {
        match format::validate(f, kind) {
            Ok(k) => {
                lines.push(format!("{}: ok ({})", f.display(), k.name()));
                docs.push(json!({ "file": f.display().to_string(), "valid": true, "kind": k.name() }));
            }
            Err(e) => {
                bad = true;
                lines.push(e.to_string());
                let mut d = e.to_json();
                d["valid"] = json!(false);
                docs.push(d);
            }
        }
    }
    Ok(Outcome { code: if bad { EXIT_INPUT } else { EXIT_HOLDS }, text: lines.join("\n"), json: Value::Array(docs) })
}
