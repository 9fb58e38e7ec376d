//! JSON file formats for algebras, bimodules, custom bundles and linear maps.
//!
//! Rationals are strings `"p/q"` or `"p"`; plain JSON integers are accepted on
//! input. Omitted structure constants are zero.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use adend_core::arith::{int, parse_rational, Rational};
use adend_core::{AlgebraSpace, BilinForm, Bimodule, Matrix, StructTensor, StructureDef};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Map, Value};

/// A malformed or unreadable input file. Always exit code 2.
#[derive(Debug)]
pub struct InputError {
    pub file: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    /// JSON path of the offending field, like `ops.mul.e1,e2`.
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.file)?;
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, ":{l}:{c}")?;
        }
        if let Some(field) = &self.field {
            write!(f, ": field `{field}`")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for InputError {}

impl InputError {
    fn at(file: &str, field: impl Into<String>, message: impl Into<String>) -> Self {
        InputError { file: file.to_string(), line: None, column: None, field: Some(field.into()), message: message.into() }
    }

    /// Fills in line and column for errors found after parsing by finding
    /// the keys of `field` in order in the source text.
    fn locate(mut self, text: &str) -> Self {
        if self.line.is_some() {
            return self;
        }
        let Some(field) = &self.field else { return self };
        let mut pos = 0;
        for key in field.split('.').map(|k| k.split('[').next().unwrap_or(k)).filter(|k| !k.is_empty()) {
            match text[pos..].find(&format!("\"{key}\"")) {
                Some(off) => pos += off,
                None => return self,
            }
        }
        let before = &text[..pos];
        self.line = Some(before.matches('\n').count() + 1);
        self.column = Some(before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1);
        self
    }

    pub fn to_json(&self) -> Value {
        json!({ "file": self.file, "line": self.line, "column": self.column, "field": self.field, "message": self.message })
    }
}

#[derive(Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum RatValue {
    Text(String),
    Int(i64),
}

impl RatValue {
    fn get(&self) -> Result<Rational, String> {
        match self {
            RatValue::Text(s) => parse_rational(s).map_err(|e| e.to_string()),
            RatValue::Int(n) => Ok(int(*n)),
        }
    }
}

pub fn rat_str(r: &Rational) -> String {
    r.to_string()
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    #[serde(default)]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub ops: BTreeMap<String, BTreeMap<String, BTreeMap<String, RatValue>>>,
    #[serde(default)]
    pub forms: BTreeMap<String, BTreeMap<String, RatValue>>,
}

#[derive(Deserialize, Debug)]
#[serde(untagged)]
pub enum BaseRef {
    Path(String),
    Inline(Box<AlgebraFile>),
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct BimoduleFile {
    pub base: BaseRef,
    pub op: String,
    pub space_dim: usize,
    #[serde(default)]
    pub names: Option<Vec<String>>,
    #[serde(default)]
    pub l: BTreeMap<String, Vec<Vec<RatValue>>>,
    #[serde(default)]
    pub r: BTreeMap<String, Vec<Vec<RatValue>>>,
}

#[derive(Deserialize, Debug)]
#[serde(untagged)]
pub enum SlotSpec {
    Name(String),
    Full { name: String, symbol: String },
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct BundleFile {
    pub name: String,
    pub slots: Vec<SlotSpec>,
    pub identities: Vec<String>,
    /// Derived operations in dependency order: symbol → `"x,y: expr"`.
    #[serde(default)]
    pub derived: Map<String, Value>,
}

/// What kind of document a file holds, guessed from its top-level keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Algebra,
    Bimodule,
    Bundle,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Algebra => "algebra",
            Kind::Bimodule => "bimodule",
            Kind::Bundle => "bundle",
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError {
        file: path.display().to_string(),
        line: None,
        column: None,
        field: None,
        message: e.to_string(),
    })
}

/// Strict deserialization with line, column and field path on failure.
fn parse_doc<T: DeserializeOwned>(file: &str, text: &str) -> Result<T, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        InputError {
            file: file.to_string(),
            line: Some(inner.line()),
            column: Some(inner.column()),
            field: if path == "." || path == "?" { None } else { Some(path) },
            message: inner.to_string(),
        }
    })
}

pub fn detect_kind(file: &str, text: &str) -> Result<Kind, InputError> {
    let v: Value = parse_doc(file, text)?;
    let obj = v.as_object().ok_or_else(|| InputError::at(file, ".", "top level must be an object"))?;
    Ok(if obj.contains_key("identities") {
        Kind::Bundle
    } else if obj.contains_key("base") {
        Kind::Bimodule
    } else {
        Kind::Algebra
    })
}

fn default_basis(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

fn split_pair<'a>(file: &str, field: &str, key: &'a str) -> Result<(&'a str, &'a str), InputError> {
    key.split_once(',')
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| InputError::at(file, field, format!("key `{key}` must be `ei,ej`")))
}

fn index(file: &str, field: &str, alg: &AlgebraSpace, name: &str) -> Result<usize, InputError> {
    alg.basis_index(name).ok_or_else(|| InputError::at(file, field, format!("unknown basis element `{name}`")))
}

fn rat(file: &str, field: &str, v: &RatValue) -> Result<Rational, InputError> {
    v.get().map_err(|m| InputError::at(file, field, m))
}

pub fn algebra_from_file(file: &str, a: &AlgebraFile) -> Result<AlgebraSpace, InputError> {
    let basis = a.basis.clone().unwrap_or_else(|| default_basis(a.dim));
    if basis.len() != a.dim {
        return Err(InputError::at(file, "basis", format!("{} names for dim {}", basis.len(), a.dim)));
    }
    let mut alg = AlgebraSpace::new(basis).map_err(|e| InputError::at(file, "basis", e.to_string()))?;
    for (op, table) in &a.ops {
        let mut t = StructTensor::zero(a.dim);
        for (key, out) in table {
            let field = format!("ops.{op}.{key}");
            let (x, y) = split_pair(file, &field, key)?;
            let (i, j) = (index(file, &field, &alg, x)?, index(file, &field, &alg, y)?);
            for (kname, c) in out {
                let f = format!("{field}.{kname}");
                let k = index(file, &f, &alg, kname)?;
                t.set(i, j, k, rat(file, &f, c)?);
            }
        }
        alg.add_op(op, t).map_err(|e| InputError::at(file, format!("ops.{op}"), e.to_string()))?;
    }
    for (name, entries) in &a.forms {
        let mut g = Matrix::zeros(a.dim, a.dim);
        for (key, c) in entries {
            let field = format!("forms.{name}.{key}");
            let (x, y) = split_pair(file, &field, key)?;
            let (i, j) = (index(file, &field, &alg, x)?, index(file, &field, &alg, y)?);
            g.set(i, j, rat(file, &field, c)?);
        }
        let b = BilinForm::new(g).map_err(|e| InputError::at(file, format!("forms.{name}"), e.to_string()))?;
        alg.add_form(name, b).map_err(|e| InputError::at(file, format!("forms.{name}"), e.to_string()))?;
    }
    Ok(alg)
}

pub fn load_algebra(path: &Path) -> Result<AlgebraSpace, InputError> {
    let file = path.display().to_string();
    let text = read_text(path)?;
    let doc: AlgebraFile = parse_doc(&file, &text)?;
    algebra_from_file(&file, &doc).map_err(|e| e.locate(&text))
}

fn matrix(file: &str, field: &str, rows: &[Vec<RatValue>], m: usize) -> Result<Matrix, InputError> {
    if rows.len() != m || rows.iter().any(|r| r.len() != m) {
        return Err(InputError::at(file, field, format!("expected a {m}x{m} matrix")));
    }
    let mut out = Matrix::zeros(m, m);
    for (i, row) in rows.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            out.set(i, j, rat(file, &format!("{field}[{i}][{j}]"), c)?);
        }
    }
    Ok(out)
}

pub fn load_bimodule(path: &Path) -> Result<Bimodule, InputError> {
    let file = path.display().to_string();
    let text = read_text(path)?;
    let doc: BimoduleFile = parse_doc(&file, &text)?;
    bimodule_from_file(path, &file, &doc).map_err(|e| if e.file == file { e.locate(&text) } else { e })
}

fn bimodule_from_file(path: &Path, file: &str, doc: &BimoduleFile) -> Result<Bimodule, InputError> {
    let base = match &doc.base {
        BaseRef::Inline(a) => algebra_from_file(file, a).map_err(|mut e| {
            e.field = e.field.map(|f| format!("base.{f}"));
            e
        })?,
        BaseRef::Path(p) => load_algebra(&relative_to(path, p))?,
    };
    let m = doc.space_dim;
    let names = doc.names.clone().unwrap_or_else(|| (1..=m).map(|i| format!("v{i}")).collect());
    let mut l = vec![Matrix::zeros(m, m); base.dim()];
    let mut r = vec![Matrix::zeros(m, m); base.dim()];
    for (side, table, out) in [("l", &doc.l, &mut l), ("r", &doc.r, &mut r)] {
        for (name, rows) in table {
            let field = format!("{side}.{name}");
            let i = index(file, &field, &base, name)?;
            out[i] = matrix(file, &field, rows, m)?;
        }
    }
    Bimodule::new(base, &doc.op, names, l, r).map_err(|e| InputError::at(file, "op", e.to_string()))
}

pub fn load_bundle(path: &Path) -> Result<StructureDef, InputError> {
    let file = path.display().to_string();
    let text = read_text(path)?;
    let doc: BundleFile = parse_doc(&file, &text)?;
    bundle_from_file(&file, &doc).map_err(|e| e.locate(&text))
}

fn bundle_from_file(file: &str, doc: &BundleFile) -> Result<StructureDef, InputError> {
    let slots: Vec<(String, String)> = doc
        .slots
        .iter()
        .map(|s| match s {
            SlotSpec::Name(n) => (n.clone(), n.clone()),
            SlotSpec::Full { name, symbol } => (name.clone(), symbol.clone()),
        })
        .collect();
    let mut derived = Vec::new();
    for (sym, def) in &doc.derived {
        let d = def.as_str().ok_or_else(|| InputError::at(file, format!("derived.{sym}"), "definition must be a string"))?;
        derived.push((sym.clone(), d.to_string()));
    }
    let slot_refs: Vec<(&str, &str)> = slots.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let derived_refs: Vec<(&str, &str)> = derived.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let ids: Vec<&str> = doc.identities.iter().map(String::as_str).collect();
    StructureDef::new(&doc.name, &slot_refs, &derived_refs, &ids).map_err(|e| InputError::at(file, "identities", e.to_string()))
}

/// Full structural validation of a file of any kind.
pub fn validate(path: &Path, kind: Option<Kind>) -> Result<Kind, InputError> {
    let file = path.display().to_string();
    let text = read_text(path)?;
    let kind = match kind {
        Some(k) => k,
        None => detect_kind(&file, &text)?,
    };
    match kind {
        Kind::Algebra => load_algebra(path).map(|_| ()),
        Kind::Bimodule => load_bimodule(path).map(|_| ()),
        Kind::Bundle => load_bundle(path).map(|_| ()),
    }?;
    Ok(kind)
}

fn relative_to(doc: &Path, p: &str) -> PathBuf {
    let candidate = Path::new(p);
    if candidate.is_absolute() {
        return candidate.to_path_buf();
    }
    doc.parent().map(|d| d.join(candidate)).unwrap_or_else(|| candidate.to_path_buf())
}

/// A linear map given inline as JSON rows, as `id`, or as a path to a JSON file of rows.
pub fn parse_map(src: &str, n: usize) -> Result<Matrix, InputError> {
    if src == "id" {
        return Ok(Matrix::identity(n));
    }
    let (file, text) = if src.trim_start().starts_with('[') {
        ("--map".to_string(), src.to_string())
    } else {
        (src.to_string(), read_text(Path::new(src))?)
    };
    let rows: Vec<Vec<RatValue>> = parse_doc(&file, &text)?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.len() != n || rows.iter().any(|r| r.len() != cols) {
        return Err(InputError::at(&file, ".", format!("expected {n} rows of equal length")));
    }
    let mut m = Matrix::zeros(rows.len(), cols);
    for (i, row) in rows.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            m.set(i, j, rat(&file, &format!("[{i}][{j}]"), c)?);
        }
    }
    Ok(m)
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(|c| Value::String(rat_str(c))).collect())).collect())
}

pub fn algebra_json(alg: &AlgebraSpace) -> Value {
    let basis = alg.basis();
    let mut ops = Map::new();
    for (name, t) in alg.ops() {
        let mut table = Map::new();
        for ((i, j, k), c) in t.entries() {
            if *c == int(0) {
                continue;
            }
            let key = format!("{},{}", basis[i], basis[j]);
            let slot = table.entry(key).or_insert_with(|| Value::Object(Map::new()));
            slot.as_object_mut().expect("object").insert(basis[k].clone(), Value::String(rat_str(c)));
        }
        ops.insert(name.clone(), Value::Object(table));
    }
    let mut out = json!({ "dim": alg.dim(), "basis": basis, "ops": ops });
    if !alg.forms().is_empty() {
        let mut forms = Map::new();
        for (name, b) in alg.forms() {
            let mut entries = Map::new();
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    let c = b.gram().get(i, j);
                    if *c != int(0) {
                        entries.insert(format!("{},{}", basis[i], basis[j]), Value::String(rat_str(c)));
                    }
                }
            }
            forms.insert(name.clone(), Value::Object(entries));
        }
        out["forms"] = Value::Object(forms);
    }
    out
}

pub fn bimodule_json(m: &Bimodule) -> Value {
    let basis = m.base().basis();
    let side = |ms: &[Matrix]| -> Map<String, Value> {
        ms.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(i, a)| (basis[i].clone(), matrix_json(a))).collect()
    };
    json!({
        "base": algebra_json(m.base()),
        "op": m.op(),
        "space_dim": m.space_dim(),
        "names": m.names(),
        "l": side(m.l()),
        "r": side(m.r()),
    })
}
