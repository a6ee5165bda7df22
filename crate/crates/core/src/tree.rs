//! Rooted trees with named arity slots.
//!
//! A triplet `a →_b a'` attaches the node `a'` to the slot `b` of `a`; the
//! descending path of a node follows triplets backwards until the root.
//! Slots are kept in the order they were given, which is used as the planar
//! order when a tree is turned into a 3-dimensional opetope.

use std::collections::{BTreeMap, BTreeSet};

use crate::report::{Axiom, AxiomReport, Violation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triplet {
    pub parent: String,
    pub slot: String,
    pub child: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootedTree {
    nodes: Vec<String>,
    arity: BTreeMap<String, Vec<String>>,
    triplets: Vec<Triplet>,
    root: String,
}

impl RootedTree {
    pub fn new(root: impl Into<String>) -> Self {
        RootedTree { root: root.into(), ..Default::default() }
    }

    /// Adds a node with its ordered slots.
    pub fn node<I, S>(mut self, name: impl Into<String>, slots: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let name = name.into();
        self.nodes.push(name.clone());
        self.arity.insert(name, slots.into_iter().map(Into::into).collect());
        self
    }

    /// Adds the triplet `parent →_slot child`.
    pub fn attach(mut self, parent: impl Into<String>, slot: impl Into<String>, child: impl Into<String>) -> Self {
        self.triplets.push(Triplet { parent: parent.into(), slot: slot.into(), child: child.into() });
        self
    }

    pub fn root(&self) -> &str {
        &self.root
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn arity(&self, node: &str) -> &[String] {
        self.arity.get(node).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn triplets(&self) -> &[Triplet] {
        &self.triplets
    }

    /// The node plugged into `slot` of `node`, if any.
    pub fn child_at(&self, node: &str, slot: &str) -> Option<&str> {
        self.triplets.iter().find(|t| t.parent == node && t.slot == slot).map(|t| t.child.as_str())
    }

    /// The `(parent, slot)` under which `node` hangs, if any.
    pub fn parent_of(&self, node: &str) -> Option<(&str, &str)> {
        self.triplets.iter().find(|t| t.child == node).map(|t| (t.parent.as_str(), t.slot.as_str()))
    }

    /// Pairs `(node, slot)` with no triplet, in node then slot order.
    pub fn leaves(&self) -> Vec<(&str, &str)> {
        let used: BTreeSet<(&str, &str)> = self.triplets.iter().map(|t| (t.parent.as_str(), t.slot.as_str())).collect();
        self.nodes
            .iter()
            .flat_map(|n| self.arity(n).iter().map(move |s| (n.as_str(), s.as_str())))
            .filter(|p| !used.contains(p))
            .collect()
    }

    /// Leaves in planar order: a depth-first walk from the root visiting
    /// slots in their declared order. Assumes the tree is valid.
    pub fn planar_leaves(&self) -> Vec<(&str, &str)> {
        let mut out = Vec::new();
        self.walk_leaves(&self.root, &mut out);
        out
    }

    fn walk_leaves<'t>(&'t self, node: &'t str, out: &mut Vec<(&'t str, &'t str)>) {
        for slot in self.arity(node) {
            match self.child_at(node, slot) {
                Some(child) => self.walk_leaves(child, out),
                None => out.push((node, slot.as_str())),
            }
        }
    }

    /// The descending path `node, parent(node), …, root`, or `None` when the
    /// parents do not lead to the root. Assumes at most one parent per node.
    pub fn path_to_root(&self, node: &str) -> Option<Vec<&str>> {
        let mut path = vec![self.nodes.iter().find(|n| *n == node)?.as_str()];
        while *path.last().unwrap() != self.root {
            let (p, _) = self.parent_of(path.last().unwrap())?;
            if path.contains(&p) || path.len() > self.nodes.len() {
                return None;
            }
            path.push(p);
        }
        Some(path)
    }
}

/// Checks node and slot references, at most one triplet per `(node, slot)`,
/// and that every node has exactly one descending path to the root.
pub fn validate_rooted_tree(t: &RootedTree) -> AxiomReport {
    let mut uniq = Vec::new();
    let mut paths = Vec::new();

    let index: BTreeMap<&str, usize> = t.nodes.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    if index.len() != t.nodes.len() {
        uniq.push(Violation::new(Axiom::TripletUniqueness, vec![], "node listed twice"));
    }
    for n in &t.nodes {
        let slots = t.arity(n);
        if slots.iter().collect::<BTreeSet<_>>().len() != slots.len() {
            uniq.push(Violation::new(Axiom::TripletUniqueness, vec![n.clone()], "slot listed twice"));
        }
    }
    if !index.contains_key(t.root.as_str()) {
        paths.push(Violation::new(Axiom::UniquePathToRoot, vec![t.root.clone()], "root is not a node"));
    }

    let n = t.nodes.len();
    // parent edges: child -> parent
    let mut parents: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut seen_slots = BTreeSet::new();
    for tr in &t.triplets {
        let (Some(&p), Some(&c)) = (index.get(tr.parent.as_str()), index.get(tr.child.as_str())) else {
            uniq.push(Violation::new(
                Axiom::TripletUniqueness,
                vec![tr.parent.clone(), tr.child.clone()],
                "triplet mentions an unknown node",
            ));
            continue;
        };
        if !t.arity(&tr.parent).contains(&tr.slot) {
            uniq.push(Violation::new(
                Axiom::TripletUniqueness,
                vec![tr.parent.clone(), tr.slot.clone()],
                "triplet uses a slot outside the arity",
            ));
            continue;
        }
        if !seen_slots.insert((tr.parent.as_str(), tr.slot.as_str())) {
            uniq.push(Violation::new(
                Axiom::TripletUniqueness,
                vec![tr.parent.clone(), tr.slot.clone()],
                "more than one triplet at this slot",
            ));
            continue;
        }
        parents[c].push(p);
    }

    if let Some(&root) = index.get(t.root.as_str()) {
        // nodes from which the root is reachable through parent edges
        let mut reaches = vec![false; n];
        reaches[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for c in 0..n {
                if !reaches[c] && parents[c].contains(&v) {
                    reaches[c] = true;
                    stack.push(c);
                }
            }
        }
        let mut memo: Vec<Option<u8>> = vec![None; n];
        for (i, name) in t.nodes.iter().enumerate() {
            let count = count_paths(i, root, &parents, &reaches, &mut memo, &mut vec![false; n]);
            if count != 1 {
                let what = if count == 0 { "no descending path to the root" } else { "several descending paths to the root" };
                paths.push(Violation::new(Axiom::UniquePathToRoot, vec![name.clone()], what));
            }
        }
    }

    AxiomReport::for_axiom(Axiom::TripletUniqueness, uniq).merged(AxiomReport::for_axiom(Axiom::UniquePathToRoot, paths))
}

// Number of descending paths from `v` to `root`, saturated at 2. A cycle
// among nodes that reach the root yields infinitely many paths.
fn count_paths(
    v: usize,
    root: usize,
    parents: &[Vec<usize>],
    reaches: &[bool],
    memo: &mut [Option<u8>],
    on_stack: &mut [bool],
) -> u8 {
    if !reaches[v] {
        return 0;
    }
    if let Some(c) = memo[v] {
        return c;
    }
    if on_stack[v] {
        return 2;
    }
    on_stack[v] = true;
    let mut total = u8::from(v == root);
    for &p in &parents[v] {
        total = total.saturating_add(count_paths(p, root, parents, reaches, memo, on_stack)).min(2);
    }
    on_stack[v] = false;
    memo[v] = Some(total);
    total
}

/// The tree of the worked example: four nodes `a1..a4`, slots `b1..b8`, root `a1`.
pub fn example_tree() -> RootedTree {
    RootedTree::new("a1")
        .node("a1", ["b6", "b7"])
        .node("a2", ["b1", "b8"])
        .node("a3", ["b2", "b3"])
        .node("a4", ["b4", "b5"])
        .attach("a1", "b6", "a2")
        .attach("a1", "b7", "a4")
        .attach("a2", "b8", "a3")
}
