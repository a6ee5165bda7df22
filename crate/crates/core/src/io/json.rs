use serde_json::{Map, Value};
use thiserror::Error;

use super::{ordered_faces, ComplexDocument};
use crate::complex::FaceComplex;

/// A malformed JSON document, located by a dotted path such as `target.f`.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{}: {message}", if .path.is_empty() { "<root>" } else { .path.as_str() })]
pub struct JsonShapeError {
    pub path: String,
    pub message: String,
}

fn shape(path: impl Into<String>, message: impl Into<String>) -> JsonShapeError {
    JsonShapeError { path: path.into(), message: message.into() }
}

fn object<'v>(v: &'v Value, path: &str) -> Result<&'v Map<String, Value>, JsonShapeError> {
    v.as_object().ok_or_else(|| shape(path, "expected an object"))
}

fn string<'v>(v: &'v Value, path: &str) -> Result<&'v str, JsonShapeError> {
    v.as_str().ok_or_else(|| shape(path, "expected a string"))
}

/// Parses `{"faces": {id: dim}, "target": {id: id}, "sources": {id: [id]}}`
/// with optional `"name"` and `"description"` strings.
pub fn parse_json(text: &str) -> Result<ComplexDocument, JsonShapeError> {
    let root: Value = serde_json::from_str(text).map_err(|e| shape("", e.to_string()))?;
    let root = object(&root, "")?;
    for key in root.keys() {
        if !matches!(key.as_str(), "faces" | "target" | "sources" | "name" | "description") {
            return Err(shape(key.as_str(), "unknown key"));
        }
    }
    let empty = Value::Object(Map::new());
    let faces = object(root.get("faces").ok_or_else(|| shape("faces", "missing"))?, "faces")?;
    let target = object(root.get("target").unwrap_or(&empty), "target")?;
    let sources = object(root.get("sources").unwrap_or(&empty), "sources")?;

    let mut doc = ComplexDocument::default();
    for key in ["name", "description"] {
        if let Some(v) = root.get(key) {
            let s = Some(string(v, key)?.to_string());
            if key == "name" {
                doc.name = s;
            } else {
                doc.description = s;
            }
        }
    }
    for (face, dim) in faces {
        let path = format!("faces.{face}");
        let dim = dim.as_u64().ok_or_else(|| shape(&path, "expected a non-negative integer"))?;
        let dim = usize::try_from(dim).map_err(|_| shape(&path, "dimension too large"))?;
        doc.faces.push((face.clone(), dim));
    }
    for (face, dim) in &doc.faces {
        let (t, s) = (format!("target.{face}"), format!("sources.{face}"));
        if *dim == 0 {
            if target.contains_key(face) {
                return Err(shape(t, "a point has no target"));
            }
            if sources.contains_key(face) {
                return Err(shape(s, "a point has no sources"));
            }
        } else {
            if !target.contains_key(face) {
                return Err(shape(t, "missing"));
            }
            if !sources.contains_key(face) {
                return Err(shape(s, "missing"));
            }
        }
    }
    for (face, t) in target {
        let path = format!("target.{face}");
        doc.targets.push((face.clone(), string(t, &path)?.to_string()));
    }
    for (face, list) in sources {
        let path = format!("sources.{face}");
        let arr = list.as_array().ok_or_else(|| shape(&path, "expected an array"))?;
        let names = arr
            .iter()
            .enumerate()
            .map(|(i, v)| string(v, &format!("{path}.{i}")).map(str::to_string))
            .collect::<Result<Vec<_>, _>>()?;
        doc.sources.push((face.clone(), names));
    }
    Ok(doc)
}

/// Compact JSON with lexicographically sorted keys and source arrays.
pub fn emit_json(c: &FaceComplex) -> String {
    let mut faces = Map::new();
    let mut target = Map::new();
    let mut sources = Map::new();
    for i in ordered_faces(c) {
        let name = c.name(i).to_string();
        faces.insert(name.clone(), Value::from(c.dim_of(i)));
        if let Some(t) = c.tgt(i) {
            target.insert(name.clone(), Value::from(c.name(t)));
            sources.insert(name, Value::from(c.src(i).iter().map(|&y| c.name(y)).collect::<Vec<_>>()));
        }
    }
    let mut root = Map::new();
    root.insert("faces".into(), Value::Object(faces));
    root.insert("sources".into(), Value::Object(sources));
    root.insert("target".into(), Value::Object(target));
    Value::Object(root).to_string()
}
