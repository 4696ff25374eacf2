//! JSON model documents.
//!
//! ```json
//! {
//!   "format_version": "1",
//!   "alphabet": ["a", "b"],
//!   "n": 2,
//!   "alpha": [1, -2],
//!   "beta": [1, -1],
//!   "transitions": { "a": [[1, -1], [-2, 3]], "b": [[0, -2], [0, 5]] },
//!   "metadata": { "name": "...", "provenance": "..." },
//!   "sva": { "sigmas": [...] }
//! }
//! ```
//!
//! `metadata` and `sva` are optional. Numbers are written with the shortest
//! representation that parses back to the same double, so a document
//! survives a read/write cycle bit for bit.

use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::numerics::{Matrix, Vector};
use crate::wfa::{Alphabet, Wfa};

pub const FORMAT_VERSION: &str = "1";

const KNOWN_FIELDS: [&str; 8] = ["format_version", "alphabet", "n", "alpha", "beta", "transitions", "metadata", "sva"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Unknown fields are an error.
    #[default]
    Strict,
    /// Unknown top-level fields are kept in [`ModelDocument::extra`].
    Lenient,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Metadata {
    pub name: Option<String>,
    pub provenance: Option<String>,
}

#[derive(Debug, Clone)]
pub struct ModelDocument {
    pub wfa: Wfa,
    pub metadata: Option<Metadata>,
    /// Hankel singular values when the automaton is stored in balanced form.
    pub sigmas: Option<Vec<f64>>,
    pub extra: Map<String, Value>,
}

impl ModelDocument {
    pub fn new(wfa: Wfa) -> Self {
        ModelDocument { wfa, metadata: None, sigmas: None, extra: Map::new() }
    }

    pub fn with_name(mut self, name: &str, provenance: Option<&str>) -> Self {
        self.metadata = Some(Metadata {
            name: Some(name.to_string()),
            provenance: provenance.map(str::to_string),
        });
        self
    }
}

fn err(path: &str, message: impl Into<String>) -> Error {
    Error::Parse { path: path.to_string(), message: message.into() }
}

fn number(v: &Value, path: &str) -> Result<f64> {
    let x = v.as_f64().ok_or_else(|| err(path, format!("expected a number, found {}", kind(v))))?;
    if !x.is_finite() {
        return Err(err(path, "non-finite number"));
    }
    Ok(x)
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, format!("expected an array, found {}", kind(v))))
}

fn vector(v: &Value, n: usize, path: &str) -> Result<Vector> {
    let items = array(v, path)?;
    if items.len() != n {
        return Err(err(path, format!("expected {n} entries, found {}", items.len())));
    }
    let xs = items
        .iter()
        .enumerate()
        .map(|(i, x)| number(x, &format!("{path}[{i}]")))
        .collect::<Result<Vec<f64>>>()?;
    Ok(Vector::from_vec(xs))
}

fn matrix(v: &Value, n: usize, path: &str) -> Result<Matrix> {
    let rows = array(v, path)?;
    if rows.len() != n {
        return Err(err(path, format!("expected {n}x{n} matrix, found {} rows", rows.len())));
    }
    let mut m = Matrix::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        let cells = array(row, &rp)?;
        if cells.len() != n {
            return Err(err(path, format!("expected {n}x{n} matrix, row {i} has {} entries", cells.len())));
        }
        for (j, c) in cells.iter().enumerate() {
            m[(i, j)] = number(c, &format!("{rp}[{j}]"))?;
        }
    }
    Ok(m)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| err(key, "missing field"))
}

fn optional_string(obj: &Map<String, Value>, key: &str, path: &str) -> Result<Option<String>> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(v) => Err(err(&format!("{path}.{key}"), format!("expected a string, found {}", kind(v)))),
    }
}

fn parse_metadata(v: &Value, mode: Mode) -> Result<Metadata> {
    let obj = v.as_object().ok_or_else(|| err("metadata", format!("expected an object, found {}", kind(v))))?;
    if mode == Mode::Strict {
        if let Some(k) = obj.keys().find(|k| *k != "name" && *k != "provenance") {
            return Err(err(&format!("metadata.{k}"), "unknown field"));
        }
    }
    Ok(Metadata {
        name: optional_string(obj, "name", "metadata")?,
        provenance: optional_string(obj, "provenance", "metadata")?,
    })
}

fn parse_sigmas(v: &Value, n: usize, mode: Mode) -> Result<Vec<f64>> {
    let obj = v.as_object().ok_or_else(|| err("sva", format!("expected an object, found {}", kind(v))))?;
    if mode == Mode::Strict {
        if let Some(k) = obj.keys().find(|k| *k != "sigmas") {
            return Err(err(&format!("sva.{k}"), "unknown field"));
        }
    }
    let sig = vector(obj.get("sigmas").ok_or_else(|| err("sva.sigmas", "missing field"))?, n, "sva.sigmas")?;
    Ok(sig.iter().copied().collect())
}

/// Parses a model document.
pub fn parse_document(text: &str, mode: Mode) -> Result<ModelDocument> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| err("$", format!("invalid JSON at line {} column {}: {e}", e.line(), e.column())))?;
    let obj = root.as_object().ok_or_else(|| err("$", format!("expected an object, found {}", kind(&root))))?;
    let mut extra = Map::new();
    for (k, v) in obj {
        if !KNOWN_FIELDS.contains(&k.as_str()) {
            if mode == Mode::Strict {
                return Err(err(k, "unknown field"));
            }
            extra.insert(k.clone(), v.clone());
        }
    }
    match field(obj, "format_version")? {
        Value::String(s) if s == FORMAT_VERSION => {}
        v => return Err(err("format_version", format!("unsupported version {v}"))),
    }
    let symbols = array(field(obj, "alphabet")?, "alphabet")?
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.as_str()
                .map(str::to_string)
                .ok_or_else(|| err(&format!("alphabet[{i}]"), "expected a string"))
        })
        .collect::<Result<Vec<String>>>()?;
    let alphabet = Alphabet::new(symbols).map_err(|e| err("alphabet", e.to_string()))?;
    let n = field(obj, "n")?
        .as_u64()
        .filter(|&n| n >= 1)
        .ok_or_else(|| err("n", "expected a positive integer"))? as usize;
    let alpha = vector(field(obj, "alpha")?, n, "alpha")?;
    let beta = vector(field(obj, "beta")?, n, "beta")?;
    let tobj = field(obj, "transitions")?
        .as_object()
        .ok_or_else(|| err("transitions", "expected an object"))?;
    if let Some(k) = tobj.keys().find(|k| alphabet.index_of(k).is_none()) {
        return Err(err(&format!("transitions.{k}"), "symbol not in alphabet"));
    }
    let trans = alphabet
        .symbols()
        .iter()
        .map(|s| {
            let path = format!("transitions.{s}");
            matrix(tobj.get(s).ok_or_else(|| err(&path, "missing matrix"))?, n, &path)
        })
        .collect::<Result<Vec<Matrix>>>()?;
    let metadata = match obj.get("metadata") {
        None | Some(Value::Null) => None,
        Some(v) => Some(parse_metadata(v, mode)?),
    };
    let sigmas = match obj.get("sva") {
        None | Some(Value::Null) => None,
        Some(v) => Some(parse_sigmas(v, n, mode)?),
    };
    let wfa = Wfa::new(alphabet, alpha, beta, trans).map_err(|e| err("$", e.to_string()))?;
    Ok(ModelDocument { wfa, metadata, sigmas, extra })
}

/// Parses a model in strict mode.
pub fn parse(text: &str) -> Result<Wfa> {
    Ok(parse_document(text, Mode::Strict)?.wfa)
}

fn json_number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

fn json_vector<'a>(xs: impl IntoIterator<Item = &'a f64>) -> Value {
    Value::Array(xs.into_iter().map(|&x| json_number(x)).collect())
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(m.row_iter().map(|r| json_vector(r.iter())).collect())
}

/// The document as a JSON value, fields in canonical order.
pub fn document_to_value(doc: &ModelDocument) -> Value {
    let a = &doc.wfa;
    let mut obj = Map::new();
    obj.insert("format_version".into(), Value::String(FORMAT_VERSION.into()));
    obj.insert(
        "alphabet".into(),
        Value::Array(a.alphabet().symbols().iter().cloned().map(Value::String).collect()),
    );
    obj.insert("n".into(), Value::from(a.states()));
    obj.insert("alpha".into(), json_vector(a.alpha().iter()));
    obj.insert("beta".into(), json_vector(a.beta().iter()));
    let mut t = Map::new();
    for (s, m) in a.alphabet().symbols().iter().zip(a.transitions()) {
        t.insert(s.clone(), matrix_to_json(m));
    }
    obj.insert("transitions".into(), Value::Object(t));
    if let Some(md) = &doc.metadata {
        let mut m = Map::new();
        if let Some(name) = &md.name {
            m.insert("name".into(), Value::String(name.clone()));
        }
        if let Some(p) = &md.provenance {
            m.insert("provenance".into(), Value::String(p.clone()));
        }
        obj.insert("metadata".into(), Value::Object(m));
    }
    if let Some(sig) = &doc.sigmas {
        let mut m = Map::new();
        m.insert("sigmas".into(), json_vector(sig));
        obj.insert("sva".into(), Value::Object(m));
    }
    for (k, v) in &doc.extra {
        obj.insert(k.clone(), v.clone());
    }
    Value::Object(obj)
}

pub fn serialize_document(doc: &ModelDocument) -> String {
    let mut s = serde_json::to_string_pretty(&document_to_value(doc)).expect("values are serializable");
    s.push('\n');
    s
}

pub fn serialize(a: &Wfa) -> String {
    serialize_document(&ModelDocument::new(a.clone()))
}

pub fn read_document(path: &Path, mode: Mode) -> Result<ModelDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| err("$", format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text, mode)
}

pub fn write_document(path: &Path, doc: &ModelDocument) -> Result<()> {
    std::fs::write(path, serialize_document(doc))
        .map_err(|e| Error::InvalidModel(format!("cannot write {}: {e}", path.display())))
}
