//! JSON file formats for algebras, characters and modules, and report output.
//!
//! Coefficients are strings in the field element encoding ("2", "1,2"), or the
//! name of a parameter declared under "params", optionally negated ("-alpha").
//! All objects serialize with sorted keys.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::classify::{ClassificationReport, IsoClass};
use crate::gfp::{Embedding, Fe, Field, GfError, Matrix, Subspace};
use crate::liealg::{LieAlgebra, LieElement, LieError};
use crate::pstruct::{PError, PMapping};
use crate::repmod::{restrict_pmap, RepError, Representation};
use crate::uenv::Character;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    PMap(#[from] PError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

fn schema(msg: impl Into<String>) -> IoError {
    IoError::Schema(msg.into())
}

type LinearMap = BTreeMap<String, String>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    #[allow(dead_code)]
    description: Option<String>,
    p: u32,
    #[serde(default = "one")]
    field_degree: u32,
    #[serde(default)]
    modulus: Option<Vec<u32>>,
    basis: Vec<String>,
    #[serde(default)]
    brackets: BTreeMap<String, LinearMap>,
    #[serde(default)]
    pmap: Option<BTreeMap<String, LinearMap>>,
    #[serde(default)]
    params: BTreeMap<String, String>,
}

fn one() -> u32 {
    1
}

/// Options applied while loading an algebra file.
#[derive(Clone, Debug, Default)]
pub struct LoadOptions {
    /// Rerun in GF(p^d); must be a multiple of the file's degree.
    pub field_degree: Option<u32>,
    /// Parameter overrides, parsed in the working field.
    pub params: BTreeMap<String, String>,
}

/// A parsed algebra file in its working field.
#[derive(Clone, Debug)]
pub struct LoadedAlgebra {
    pub name: Option<String>,
    pub field: Field,
    /// The field the file is written in; differs from `field` under an override.
    pub source: Field,
    pub embedding: Option<Embedding>,
    pub alg: LieAlgebra,
    pub pmap: Option<PMapping>,
    pub params: BTreeMap<String, Fe>,
}

/// Coefficient parser for one working field and parameter set.
pub struct Coeffs<'a> {
    pub field: &'a Field,
    pub params: &'a BTreeMap<String, Fe>,
    /// Maps values written in the file's field into the working field.
    pub embed: Option<&'a Embedding>,
    pub source: Option<&'a Field>,
}

impl<'a> Coeffs<'a> {
    pub fn plain(field: &'a Field, params: &'a BTreeMap<String, Fe>) -> Self {
        Coeffs { field, params, embed: None, source: None }
    }

    pub fn parse(&self, s: &str) -> Result<Fe, IoError> {
        let t = s.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) if !rest.trim().is_empty() && !rest.trim().starts_with(|c: char| c.is_ascii_digit()) => {
                (true, rest.trim())
            }
            _ => (false, t),
        };
        let v = if let Some(&v) = self.params.get(body) {
            v
        } else {
            match (self.embed, self.source) {
                (Some(e), Some(src)) => e.apply(src.parse(body)?),
                _ => self.field.parse(body)?,
            }
        };
        Ok(if neg { self.field.neg(v) } else { v })
    }

    fn linear(&self, labels: &[String], map: &LinearMap, what: &str) -> Result<Vec<Fe>, IoError> {
        let mut v = self.field.vzero(labels.len());
        for (k, c) in map {
            let i = labels.iter().position(|l| l == k).ok_or_else(|| schema(format!("{what}: unknown label {k:?}")))?;
            v[i] = self.parse(c)?;
        }
        Ok(v)
    }
}

fn parse_json(text: &str) -> Result<Value, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
}

fn from_value<T: for<'de> Deserialize<'de>>(v: Value) -> Result<T, IoError> {
    serde_json::from_value(v).map_err(|e| schema(e.to_string()))
}

/// Parses an algebra file. The bracket table and p-map are validated by the
/// library constructors (Jacobi identity, consistency, p-map axioms).
pub fn load_algebra(text: &str, opts: &LoadOptions) -> Result<LoadedAlgebra, IoError> {
    let file: AlgebraFile = from_value(parse_json(text)?)?;
    let src = Field::new(file.p, file.field_degree, file.modulus.as_deref())?;
    let field = match opts.field_degree {
        Some(d) if d != file.field_degree => {
            if d % file.field_degree != 0 {
                return Err(schema(format!("--field-degree {d} is not a multiple of {}", file.field_degree)));
            }
            Field::new(file.p, d, None)?
        }
        _ => src.clone(),
    };
    let embedding = if field == src { None } else { field.embedding_from(&src) };
    let empty = BTreeMap::new();
    let base = Coeffs { field: &field, params: &empty, embed: embedding.as_ref(), source: Some(&src) };
    let mut params = BTreeMap::new();
    for (k, v) in &file.params {
        if file.basis.contains(k) {
            return Err(schema(format!("parameter {k:?} shadows a basis label")));
        }
        params.insert(k.clone(), base.parse(v)?);
    }
    for (k, v) in &opts.params {
        if !file.params.contains_key(k) {
            return Err(schema(format!("unknown parameter {k:?}")));
        }
        params.insert(k.clone(), field.parse(v)?);
    }
    let coeffs = Coeffs { field: &field, params: &params, embed: embedding.as_ref(), source: Some(&src) };
    let labels = file.basis.clone();
    let mut table = Vec::new();
    for (key, val) in &file.brackets {
        let (a, b) = key.split_once('|').ok_or_else(|| schema(format!("bracket key {key:?} is not \"a|b\"")))?;
        let i = labels.iter().position(|l| l == a.trim()).ok_or_else(|| schema(format!("unknown label {a:?}")))?;
        let j = labels.iter().position(|l| l == b.trim()).ok_or_else(|| schema(format!("unknown label {b:?}")))?;
        table.push((i, j, coeffs.linear(&labels, val, key)?));
    }
    let alg = LieAlgebra::new(&field, labels.clone(), &table)?;
    let pmap = match &file.pmap {
        None => None,
        Some(pm) => {
            let mut images = vec![alg.zero(); labels.len()];
            for (k, v) in pm {
                let i = labels.iter().position(|l| l == k).ok_or_else(|| schema(format!("pmap: unknown label {k:?}")))?;
                images[i] = coeffs.linear(&labels, v, k)?;
            }
            Some(PMapping::new_unchecked(&alg, images)?)
        }
    };
    Ok(LoadedAlgebra { name: file.name, field, source: src, embedding, alg, pmap, params })
}

impl LoadedAlgebra {
    /// Parser for further files written in the same field as the algebra file.
    pub fn coeffs(&self) -> Coeffs<'_> {
        Coeffs { field: &self.field, params: &self.params, embed: self.embedding.as_ref(), source: Some(&self.source) }
    }
}

/// An algebra (and optional p-map) in the algebra file format.
pub fn algebra_json(alg: &LieAlgebra, pmap: Option<&PMapping>) -> Value {
    let f = &alg.field;
    let sparse = |v: &[Fe]| -> Value {
        let mut m = Map::new();
        for (l, &c) in alg.labels.iter().zip(v) {
            if !c.is_zero() {
                m.insert(l.clone(), fe_json(f, c));
            }
        }
        Value::Object(m)
    };
    let mut brackets = Map::new();
    for i in 0..alg.dim() {
        for j in i + 1..alg.dim() {
            let b = alg.bracket_basis(i, j);
            if b.iter().any(|c| !c.is_zero()) {
                brackets.insert(format!("{}|{}", alg.labels[i], alg.labels[j]), sparse(b));
            }
        }
    }
    let desc = f.desc();
    let mut out = json!({
        "p": desc.p,
        "field_degree": desc.m,
        "modulus": desc.modulus,
        "basis": alg.labels,
        "brackets": brackets,
    });
    if let Some(pm) = pmap {
        let mut images = Map::new();
        for (l, v) in alg.labels.iter().zip(&pm.images) {
            if v.iter().any(|c| !c.is_zero()) {
                images.insert(l.clone(), sparse(v));
            }
        }
        out["pmap"] = Value::Object(images);
    }
    out
}

/// Parses `"c*label + c*label"`, `"(1,2)*x"`, `"-x"`, `"alpha*y"` into a vector.
pub fn parse_element(alg: &LieAlgebra, coeffs: &Coeffs, s: &str) -> Result<LieElement, IoError> {
    let f = &alg.field;
    let mut v = f.vzero(alg.dim());
    let mut depth = 0i32;
    let mut terms = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if (ch == '+' || ch == '-') && depth == 0 && !cur.trim().is_empty() && !cur.trim_end().ends_with('*') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let bad = || schema(format!("cannot parse element {s:?}"));
    for term in terms {
        let mut t = term.trim().trim_start_matches('+').trim().to_string();
        if t.is_empty() {
            return Err(bad());
        }
        let mut c = Fe::ONE;
        if let Some(rest) = t.strip_prefix('-') {
            c = f.neg(c);
            t = rest.trim().to_string();
        }
        let label = match t.rsplit_once('*') {
            Some((coef, label)) => {
                let coef = coef.trim();
                let coef = coef.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(coef);
                c = f.mul(c, coeffs.parse(coef)?);
                label.trim().to_string()
            }
            None => t,
        };
        if label == "0" && c == Fe::ONE {
            continue;
        }
        let i = alg.index_of(&label).map_err(|_| bad())?;
        v[i] = f.add(v[i], c);
    }
    Ok(v)
}

/// Characters from a flat `{label: coeff}` object (missing labels are zero) or
/// an array of such objects.
pub fn parse_characters(text: &str, labels: &[String], coeffs: &Coeffs) -> Result<Vec<Character>, IoError> {
    let v = parse_json(text)?;
    let one = |obj: Value| -> Result<Character, IoError> {
        let map: LinearMap = from_value(obj)?;
        Ok(Character::new(coeffs.linear(labels, &map, "character")?))
    };
    match v {
        Value::Array(items) => items.into_iter().map(one).collect(),
        obj @ Value::Object(_) => Ok(vec![one(obj)?]),
        _ => Err(schema("character file must be an object or an array of objects")),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    dim: usize,
    action: BTreeMap<String, Vec<Vec<String>>>,
}

fn module_from(alg: &LieAlgebra, coeffs: &Coeffs, file: ModuleFile) -> Result<Representation, IoError> {
    let f = &alg.field;
    let d = file.dim;
    let mut mats = vec![Matrix::zeros(f, d, d); alg.dim()];
    for (label, rows) in &file.action {
        let i = alg.index_of(label).map_err(|_| schema(format!("module: unknown label {label:?}")))?;
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(schema(format!("module: action of {label} is not {d}x{d}")));
        }
        for (r, row) in rows.iter().enumerate() {
            for (c, s) in row.iter().enumerate() {
                mats[i].set(r, c, coeffs.parse(s)?);
            }
        }
    }
    Ok(Representation::new(alg, mats)?)
}

/// `{"dim": d, "action": {label: [[coeff, ...], ...]}}`; missing labels act by 0.
pub fn parse_module(text: &str, alg: &LieAlgebra, coeffs: &Coeffs) -> Result<Representation, IoError> {
    module_from(alg, coeffs, from_value(parse_json(text)?)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InduceFile {
    subalgebra: Vec<String>,
    module: Value,
}

/// `{"subalgebra": [element, ...], "module": {...}}`. The module is written on
/// the subalgebra's echelon basis, whose labels are the original labels for unit
/// vectors and the element text otherwise.
pub fn parse_induce_request(
    text: &str,
    pmap: &PMapping,
    coeffs: &Coeffs,
) -> Result<(Subspace, Representation), IoError> {
    let file: InduceFile = from_value(parse_json(text)?)?;
    let alg = &pmap.alg;
    let gens = file.subalgebra.iter().map(|s| parse_element(alg, coeffs, s)).collect::<Result<Vec<_>, _>>()?;
    let h = alg.span(&gens);
    let (sub, _) = restrict_pmap(pmap, &h)?;
    let module = module_from(&sub, coeffs, from_value(file.module)?)?;
    Ok((h, module))
}

pub fn fe_json(f: &Field, a: Fe) -> Value {
    Value::String(f.format(a))
}

pub fn vector_json(f: &Field, v: &[Fe]) -> Value {
    Value::Array(v.iter().map(|&a| fe_json(f, a)).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    let f = &m.field;
    Value::Array(m.row_vecs().iter().map(|r| vector_json(f, r)).collect())
}

/// `{label: coeff}` with zero values kept, for a fixed label list.
pub fn labelled_json(f: &Field, labels: &[String], values: &[Fe]) -> Value {
    let mut m = Map::new();
    for (l, &v) in labels.iter().zip(values) {
        m.insert(l.clone(), fe_json(f, v));
    }
    Value::Object(m)
}

pub fn module_json(rep: &Representation) -> Value {
    let mut action = Map::new();
    for (l, m) in rep.alg.labels.iter().zip(&rep.mats) {
        action.insert(l.clone(), matrix_json(m));
    }
    json!({"dim": rep.dim, "action": action})
}

fn class_json(c: &IsoClass) -> Value {
    let mut v = json!({
        "dim": c.dim,
        "label": c.label,
        "case": c.case,
        "params": c.params,
        "matrices": module_json(&c.rep)["action"].clone(),
    });
    if let Some(r) = &c.restriction {
        v["restriction"] = module_json(r)["action"].clone();
    }
    v
}

/// The classification report object.
pub fn report_json(r: &ClassificationReport, labels: &[String]) -> Value {
    let f = Field::from_desc(&r.field).expect("report field");
    json!({
        "algebra": r.algebra,
        "p": r.field.p,
        "field_degree": r.field.m,
        "character": labelled_json(&f, labels, &r.character.values),
        "case": r.case,
        "classes": r.classes.iter().map(class_json).collect::<Vec<_>>(),
        "count": r.count(),
        "expected_count": r.expected_count,
        "notes": r.notes,
        "verified": {
            "irreducible": r.verified.irreducible,
            "character": r.verified.character,
            "pairwise_noniso": r.verified.pairwise_noniso,
            "oracle_agreement": r.verified.oracle_agreement,
        },
    })
}
