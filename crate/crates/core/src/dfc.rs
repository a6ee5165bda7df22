//! Dendritic face complex axioms (greatest element, oriented thinness,
//! acyclicity), half-lozenge completion and the rooted-tree structure on
//! `δ(x)`.

use thiserror::Error;

use crate::complex::{FaceComplex, QueryError, Sign};
use crate::report::{Axiom, AxiomReport, Violation};
use crate::tree::{validate_rooted_tree, RootedTree};

/// A completed lozenge `z ≺^β y ≺^α x`, `z ≺^{β'} y' ≺^{α'} x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lozenge {
    pub top: String,
    pub left: String,
    pub right: String,
    pub bottom: String,
    /// `(α, β, α', β')`
    pub signs: (Sign, Sign, Sign, Sign),
}

impl Lozenge {
    /// `αβ = −α'β'`.
    pub fn satisfies_sign_rule(&self) -> bool {
        let (a, b, a2, b2) = self.signs;
        a.mul(b) == a2.mul(b2).flip()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LozengeError {
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error("`{z}` ≺ `{y}` ≺ `{x}` is not a chain of covers")]
    NotAChain { z: String, y: String, x: String },
    #[error("no face completes the half lozenge `{z}` ≺ `{y}` ≺ `{x}`")]
    NoCompletion { z: String, y: String, x: String },
    #[error("half lozenge `{z}` ≺ `{y}` ≺ `{x}` has several completions: {candidates:?}")]
    AmbiguousCompletion { z: String, y: String, x: String, candidates: Vec<String> },
    #[error("completion of `{}` ≺ `{}` ≺ `{}` by `{}` breaks the sign rule", .0.bottom, .0.left, .0.top, .0.right)]
    SignRuleViolation(Lozenge),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),
}

/// The greatest element of the face poset, if there is one.
pub fn greatest_element(c: &FaceComplex) -> Result<&str, String> {
    greatest_ix(c).map(|i| c.name(i)).map_err(|i| c.name(i).to_string())
}

/// `Ok(ω)`, or `Err(w)` with the lexicographically first face not below the
/// first top-dimensional face.
pub(crate) fn greatest_ix(c: &FaceComplex) -> Result<usize, usize> {
    let top = c.stratum_ids(c.dim())[0];
    let below = c.downward_closure(top);
    match (0..c.len()).find(|&i| !below[i]) {
        None => Ok(top),
        Some(w) => Err(w),
    }
}

/// Candidates `y' ≠ y` with `z ≺ y' ≺ x`, sorted.
fn completions(c: &FaceComplex, z: usize, y: usize, x: usize) -> Vec<usize> {
    let mut out: Vec<usize> = c.faces_of(x).map(|(w, _)| w).filter(|&w| w != y && c.sign(z, w).is_some()).collect();
    out.sort_unstable();
    out
}

pub(crate) fn complete_ix(c: &FaceComplex, z: usize, y: usize, x: usize) -> Result<(usize, Lozenge), LozengeError> {
    let names = || (c.name(z).to_string(), c.name(y).to_string(), c.name(x).to_string());
    let (Some(beta), Some(alpha)) = (c.sign(z, y), c.sign(y, x)) else {
        let (z, y, x) = names();
        return Err(LozengeError::NotAChain { z, y, x });
    };
    let cands = completions(c, z, y, x);
    match cands.as_slice() {
        [] => {
            let (z, y, x) = names();
            Err(LozengeError::NoCompletion { z, y, x })
        }
        [y2] => {
            let lozenge = Lozenge {
                top: c.name(x).to_string(),
                left: c.name(y).to_string(),
                right: c.name(*y2).to_string(),
                bottom: c.name(z).to_string(),
                signs: (alpha, beta, c.sign(*y2, x).expect("cover"), c.sign(z, *y2).expect("cover")),
            };
            if lozenge.satisfies_sign_rule() {
                Ok((*y2, lozenge))
            } else {
                Err(LozengeError::SignRuleViolation(lozenge))
            }
        }
        many => {
            let (z, y, x) = names();
            Err(LozengeError::AmbiguousCompletion { z, y, x, candidates: c.names_of(many.iter().copied()) })
        }
    }
}

/// Completes the half lozenge `z ≺ y ≺ x` to the unique `y' ≠ y` with
/// `z ≺ y' ≺ x`. Errors double as oriented-thinness witnesses.
pub fn complete_half_lozenge(c: &FaceComplex, z: &str, y: &str, x: &str) -> Result<Lozenge, LozengeError> {
    let (z, y, x) = (c.id(z)?, c.id(y)?, c.id(x)?);
    complete_ix(c, z, y, x).map(|(_, l)| l)
}

/// Every chain `z ≺ y ≺ x` completes uniquely and obeys the sign rule.
pub fn check_oriented_thinness(c: &FaceComplex) -> AxiomReport {
    let mut violations = Vec::new();
    for x in (0..c.len()).filter(|&x| c.dim_of(x) >= 2) {
        let mut ys: Vec<usize> = c.faces_of(x).map(|(y, _)| y).collect();
        ys.sort_unstable();
        for y in ys {
            let mut zs: Vec<usize> = c.faces_of(y).map(|(z, _)| z).collect();
            zs.sort_unstable();
            for z in zs {
                if let Err(e) = complete_ix(c, z, y, x) {
                    violations.push(Violation::new(Axiom::OrientedThinness, c.names_of([z, y, x]), e.to_string()));
                }
            }
        }
    }
    AxiomReport::for_axiom(Axiom::OrientedThinness, violations)
}

/// A directed cycle `y₁ → y₂ → ⋯ → y₁` inside `δ(x)` where `a → b` means
/// `γ(b) ∈ δ(a)`. Returns the cycle starting at its smallest face.
pub(crate) fn source_cycle(c: &FaceComplex, x: usize) -> Option<Vec<usize>> {
    let nodes = c.src(x);
    let succ = |a: usize| -> Vec<usize> {
        nodes.iter().copied().filter(|&b| b != a && c.src(a).contains(&c.tgt(b).expect("positive dimension"))).collect()
    };
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; nodes.len()];
    let pos = |a: usize| nodes.binary_search(&a).expect("node");
    for start in 0..nodes.len() {
        if state[start] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>, usize)> = vec![(nodes[start], succ(nodes[start]), 0)];
        state[start] = 1;
        while let Some((v, next, i)) = stack.last_mut() {
            if *i < next.len() {
                let w = next[*i];
                *i += 1;
                match state[pos(w)] {
                    0 => {
                        state[pos(w)] = 1;
                        let s = succ(w);
                        stack.push((w, s, 0));
                    }
                    1 => {
                        let from = stack.iter().position(|(u, _, _)| *u == w).expect("on stack");
                        let mut cycle: Vec<usize> = stack[from..].iter().map(|(u, _, _)| *u).collect();
                        let min = (0..cycle.len()).min_by_key(|&k| cycle[k]).expect("nonempty");
                        cycle.rotate_left(min);
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                state[pos(*v)] = 2;
                stack.pop();
            }
        }
    }
    None
}

/// Singleton sources in dimension 1, nonempty sources everywhere, and no
/// cycle `y₁ → ⋯ → y₁` in any `δ(x)` where `a → b` iff `γ(b) ∈ δ(a)`.
pub fn check_acyclicity(c: &FaceComplex) -> AxiomReport {
    let mut violations = Vec::new();
    for x in 0..c.len() {
        let d = c.dim_of(x);
        if d == 1 && c.src(x).len() != 1 {
            violations.push(Violation::new(Axiom::Acyclicity, c.names_of([x]), "1-face without a singleton source"));
        }
        if d >= 1 && c.src(x).is_empty() {
            violations.push(Violation::new(Axiom::Acyclicity, c.names_of([x]), "empty sources"));
        }
        if d >= 2 {
            if let Some(cycle) = source_cycle(c, x) {
                let mut witness = c.names_of(cycle);
                witness.push(c.name(x).to_string());
                violations.push(Violation::new(
                    Axiom::Acyclicity,
                    witness,
                    format!("cycle among the sources of `{}`", c.name(x)),
                ));
            }
        }
    }
    AxiomReport::for_axiom(Axiom::Acyclicity, violations)
}

pub fn check_greatest_element(c: &FaceComplex) -> AxiomReport {
    let violations = match greatest_ix(c) {
        Ok(_) => vec![],
        Err(w) => vec![Violation::new(Axiom::GreatestElement, c.names_of([w]), "not found")],
    };
    AxiomReport::for_axiom(Axiom::GreatestElement, violations)
}

/// Greatest element, oriented thinness and acyclicity.
pub fn is_dfc(c: &FaceComplex) -> AxiomReport {
    check_greatest_element(c).merged(check_oriented_thinness(c)).merged(check_acyclicity(c))
}

/// Index of `ρ(x)`: the source of `x` whose target is `γγ(x)`.
pub(crate) fn root_ix(c: &FaceComplex, x: usize) -> Result<usize, TreeError> {
    let gg = c.tgt(c.tgt(x).expect("positive dimension")).expect("dimension at least 2");
    let roots: Vec<usize> = c.src(x).iter().copied().filter(|&y| c.tgt(y) == Some(gg)).collect();
    match roots.as_slice() {
        [r] => Ok(*r),
        _ => Err(TreeError::InternalInvariantBroken(format!(
            "`{}` has {} sources targeting γγ",
            c.name(x),
            roots.len()
        ))),
    }
}

/// The rooted tree on `δ(x)`: arity `A(y) = δ(y)` (empty for points), a
/// triplet `y →_z y'` whenever `z ∈ δ(y)` and `γ(y') = z`, and root `ρ(x)`
/// (the only node when `dim(x) = 1`).
pub fn face_tree(c: &FaceComplex, face: &str) -> Result<RootedTree, TreeError> {
    let x = c.id(face)?;
    let d = c.dim_of(x);
    if d == 0 {
        return Err(QueryError::DimensionTooLow { face: face.to_string(), dim: 0, required: 1 }.into());
    }
    let nodes = c.src(x);
    let root = if d == 1 { nodes[0] } else { root_ix(c, x)? };
    let mut tree = RootedTree::new(c.name(root));
    for &y in nodes {
        tree = tree.node(c.name(y), c.src(y).iter().map(|&z| c.name(z)));
    }
    for &y in nodes {
        for &z in c.src(y) {
            for &y2 in nodes {
                if c.tgt(y2) == Some(z) {
                    tree = tree.attach(c.name(y), c.name(z), c.name(y2));
                }
            }
        }
    }
    let report = validate_rooted_tree(&tree);
    if !report.passed() {
        return Err(TreeError::InternalInvariantBroken(format!("δ({face}) is not a rooted tree: {report}")));
    }
    Ok(tree)
}
