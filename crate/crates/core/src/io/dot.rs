use std::fmt::Write;

use super::ordered_faces;
use crate::complex::{FaceComplex, Sign};
use crate::dfc::{face_tree, TreeError};

/// Hasse diagram: one node `name:dim` per face, ranked by dimension, and an
/// edge `y -> x` per cover, solid for `-` and dashed for `+`.
pub fn emit_dot_hasse(c: &FaceComplex) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
    for k in 0..=c.dim() {
        let ids: Vec<String> = c.stratum_ids(k).iter().map(|&i| format!("\"{}\";", c.name(i))).collect();
        writeln!(out, "  {{ rank=same; {} }}", ids.join(" ")).unwrap();
    }
    let order = ordered_faces(c);
    for &i in &order {
        writeln!(out, "  \"{0}\" [label=\"{0}:{1}\"];", c.name(i), c.dim_of(i)).unwrap();
    }
    for &x in &order {
        let mut covers: Vec<(usize, Sign)> = c.faces_of(x).collect();
        covers.sort_by(|a, b| c.name(a.0).cmp(c.name(b.0)));
        for (y, s) in covers {
            let style = if s == Sign::Minus { "solid" } else { "dashed" };
            writeln!(out, "  \"{}\" -> \"{}\" [sign=\"{}\", style={}];", c.name(y), c.name(x), s, style).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// The rooted tree on `δ(x)`: nodes are the sources (root drawn bold), and
/// each triplet gives an edge child -> parent labelled by its slot.
pub fn emit_dot_tree(c: &FaceComplex, face: &str) -> Result<String, TreeError> {
    let tree = face_tree(c, face)?;
    let mut out = format!("digraph \"tree_{face}\" {{\n");
    let mut nodes: Vec<&String> = tree.nodes().iter().collect();
    nodes.sort();
    for n in nodes {
        if n == tree.root() {
            writeln!(out, "  \"{n}\" [label=\"{n}\", style=bold];").unwrap();
        } else {
            writeln!(out, "  \"{n}\" [label=\"{n}\"];").unwrap();
        }
    }
    let mut triplets = tree.triplets().to_vec();
    triplets.sort_by(|a, b| (&a.child, &a.parent).cmp(&(&b.child, &b.parent)));
    for t in triplets {
        writeln!(out, "  \"{}\" -> \"{}\" [label=\"{}\"];", t.child, t.parent, t.slot).unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}
