//! Constructors for the standard small opetopes.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::complex::{ComplexBuilder, FaceComplex, InvalidComplex};
use crate::tree::{validate_rooted_tree, RootedTree};
use crate::zpo::is_positive_opetope;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("a 2-cell needs at least one source, got arity {0}")]
    InvalidArity(usize),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),
}

/// The single point `x`.
pub fn point() -> FaceComplex {
    ComplexBuilder::new().face("x", 0).build().expect("point is a valid complex")
}

/// `f : x → y`.
pub fn arrow() -> FaceComplex {
    ComplexBuilder::new()
        .face("x", 0)
        .face("y", 0)
        .cell("f", 1, "y", ["x"])
        .build()
        .expect("arrow is a valid complex")
}

/// The `n`-ary 2-cell `alpha : f1, …, fn ⇒ h` on the points `x0 … xn`.
pub fn two_cell(n: usize) -> Result<FaceComplex, BuildError> {
    if n == 0 {
        return Err(BuildError::InvalidArity(0));
    }
    let mut b = ComplexBuilder::new();
    for i in 0..=n {
        b.add_face(format!("x{i}"), 0);
    }
    for i in 1..=n {
        b = b.cell(format!("f{i}"), 1, format!("x{i}"), [format!("x{}", i - 1)]);
    }
    b = b.cell("h", 1, format!("x{n}"), ["x0"]);
    b = b.cell("alpha", 2, "h", (1..=n).map(|i| format!("f{i}")));
    b.build().map_err(|e| BuildError::InternalInvariantBroken(e.to_string()))
}

/// The 3-cell `A : alpha ⇛ beta` between two parallel binary 2-cells.
pub fn three1() -> FaceComplex {
    ComplexBuilder::new()
        .face("x0", 0)
        .face("x1", 0)
        .face("x2", 0)
        .cell("f1", 1, "x1", ["x0"])
        .cell("f2", 1, "x2", ["x1"])
        .cell("h", 1, "x2", ["x0"])
        .cell("alpha", 2, "h", ["f1", "f2"])
        .cell("beta", 2, "h", ["f1", "f2"])
        .cell("A", 3, "beta", ["alpha"])
        .build()
        .expect("three1 is a valid complex")
}

/// The 3-opetope whose source 2-faces are the nodes of `t`.
///
/// Each node becomes a 2-face with one source 1-face per slot; a slot filled
/// by a triplet is the target 1-face of the child. Leaves are laid out on the
/// points `x0 … xL` in planar order, the root's target is `h : x0 → xL`, the
/// target 2-face is `beta` with the leaves as sources, and the 3-face is `A`.
pub fn three_cell_from_tree(t: &RootedTree) -> Result<FaceComplex, BuildError> {
    let report = validate_rooted_tree(t);
    if !report.passed() {
        return Err(BuildError::InvalidTree(report.to_string()));
    }
    let mut slots = BTreeSet::new();
    for n in t.nodes() {
        if t.arity(n).is_empty() {
            return Err(BuildError::InvalidTree(format!("node `{n}` has no slots")));
        }
        for s in t.arity(n) {
            if !slots.insert(s.as_str()) {
                return Err(BuildError::InvalidTree(format!("slot `{s}` appears twice")));
            }
        }
    }

    let leaves = t.planar_leaves();
    let mut b = ComplexBuilder::new();
    for i in 0..=leaves.len() {
        b.add_face(format!("x{i}"), 0);
    }
    for (i, (_, slot)) in leaves.iter().enumerate() {
        b = b.cell(*slot, 1, format!("x{}", i + 1), [format!("x{i}")]);
    }
    let mut next_leaf = 0;
    b = lay_out(t, t.root(), "h", &mut next_leaf, b);
    b = b.cell("beta", 2, "h", leaves.iter().map(|(_, s)| *s));
    b = b.cell("A", 3, "beta", t.nodes().iter().map(String::as_str));

    let c = b.build().map_err(|e: InvalidComplex| BuildError::InvalidTree(e.to_string()))?;
    let check = is_positive_opetope(&c);
    if !check.passed() {
        return Err(BuildError::InternalInvariantBroken(format!("tree did not yield an opetope: {check}")));
    }
    Ok(c)
}

// Adds the 2-face for `node` with target 1-face `target`, after its children.
fn lay_out(t: &RootedTree, node: &str, target: &str, next_leaf: &mut usize, mut b: ComplexBuilder) -> ComplexBuilder {
    let first = *next_leaf;
    for slot in t.arity(node) {
        match t.child_at(node, slot) {
            Some(child) => b = lay_out(t, child, slot, next_leaf, b),
            None => *next_leaf += 1,
        }
    }
    b.cell(target, 1, format!("x{next_leaf}"), [format!("x{first}")]).cell(node, 2, target, t.arity(node).to_vec())
}

/// The first 3-opetope of the introduction: `alpha3` at the root with
/// `alpha2` on its first slot and `alpha1` on the second slot of `alpha2`.
pub fn intro_tree_1() -> RootedTree {
    RootedTree::new("alpha3")
        .node("alpha3", ["f7", "f5"])
        .node("alpha2", ["f1", "f6"])
        .node("alpha1", ["f2", "f3", "f4"])
        .attach("alpha3", "f7", "alpha2")
        .attach("alpha2", "f6", "alpha1")
}

/// The second 3-opetope of the introduction: `alpha3` at the root carrying
/// `alpha1` and `alpha2` side by side.
pub fn intro_tree_2() -> RootedTree {
    RootedTree::new("alpha3")
        .node("alpha3", ["f6", "f7"])
        .node("alpha1", ["f1", "f2"])
        .node("alpha2", ["f3", "f4", "f5"])
        .attach("alpha3", "f6", "alpha1")
        .attach("alpha3", "f7", "alpha2")
}
