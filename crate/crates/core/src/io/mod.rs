//! Text formats: a line-oriented DSL, JSON, and Graphviz DOT exports.

mod dot;
mod dsl;
mod json;

pub use dot::{emit_dot_hasse, emit_dot_tree};
pub use dsl::{emit_dsl, parse_dsl, parse_map, DslError, EmitError, MapError};
pub use json::{emit_json, parse_json, JsonShapeError};

use crate::complex::{build_complex, FaceComplex, InvalidComplex};

/// Parsed but not yet validated face data.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComplexDocument {
    pub name: Option<String>,
    pub description: Option<String>,
    pub faces: Vec<(String, usize)>,
    pub targets: Vec<(String, String)>,
    pub sources: Vec<(String, Vec<String>)>,
}

impl ComplexDocument {
    pub fn build(&self) -> Result<FaceComplex, InvalidComplex> {
        build_complex(self.faces.clone(), self.targets.clone(), self.sources.clone())
    }

    pub fn from_complex(c: &FaceComplex) -> ComplexDocument {
        let mut doc = ComplexDocument::default();
        for i in 0..c.len() {
            doc.faces.push((c.name(i).to_string(), c.dim_of(i)));
            if let Some(t) = c.tgt(i) {
                doc.targets.push((c.name(i).to_string(), c.name(t).to_string()));
                doc.sources.push((c.name(i).to_string(), c.names_of(c.src(i).iter().copied())));
            }
        }
        doc
    }
}

// Positive faces in (dimension, name) order.
fn ordered_faces(c: &FaceComplex) -> Vec<usize> {
    (0..=c.dim()).flat_map(|k| c.stratum_ids(k).iter().copied()).collect()
}
