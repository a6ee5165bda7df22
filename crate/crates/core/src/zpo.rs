//! Axioms of opetopic cardinals and positive opetopes: globularity,
//! strictness, disjointness, pencil linearity and principality.

use std::collections::VecDeque;

use crate::complex::FaceComplex;
use crate::relations::{minus_closure, plus_closure, plus_steps, BitMatrix};
use crate::report::{Axiom, AxiomReport, Violation};

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

fn difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_err()).collect()
}

fn show(c: &FaceComplex, set: &[usize]) -> String {
    format!("{{{}}}", set.iter().map(|&i| c.name(i)).collect::<Vec<_>>().join(", "))
}

/// `γγ(x) = γδ(x) ∖ δδ(x)` and `δγ(x) = δδ(x) ∖ γδ(x)` for every face of
/// dimension at least 2.
pub fn check_globularity(c: &FaceComplex) -> AxiomReport {
    let mut violations = Vec::new();
    for x in (0..c.len()).filter(|&x| c.dim_of(x) >= 2) {
        let t = c.tgt(x).expect("positive dimension");
        let gg = vec![c.tgt(t).expect("positive dimension")];
        let dg = c.src(t).to_vec();
        let gd = sorted(c.src(x).iter().map(|&y| c.tgt(y).expect("positive dimension")).collect());
        let dd = sorted(c.src(x).iter().flat_map(|&y| c.src(y).iter().copied()).collect());
        let gd_minus_dd = difference(&gd, &dd);
        let dd_minus_gd = difference(&dd, &gd);
        if gg != gd_minus_dd {
            violations.push(Violation::new(
                Axiom::Globularity,
                vec![c.name(x).to_string()],
                format!("γγ = {} but γδ ∖ δδ = {}", show(c, &gg), show(c, &gd_minus_dd)),
            ));
        }
        if dg != dd_minus_gd {
            violations.push(Violation::new(
                Axiom::Globularity,
                vec![c.name(x).to_string()],
                format!("δγ = {} but δδ ∖ γδ = {}", show(c, &dg), show(c, &dd_minus_gd)),
            ));
        }
    }
    AxiomReport::for_axiom(Axiom::Globularity, violations)
}

/// Shortest `◁`-cycle through local index `start`, as local indices.
pub(crate) fn cycle_through(steps: &BitMatrix, start: usize) -> Vec<usize> {
    let n = steps.len();
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for w in steps.successors(v) {
            if w == start {
                let mut cycle = vec![v];
                let mut cur = v;
                while cur != start {
                    cur = prev[cur];
                    cycle.push(cur);
                }
                cycle.reverse();
                return cycle;
            }
            if prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    Vec::new()
}

fn strictness_with(c: &FaceComplex, plus: &[BitMatrix]) -> AxiomReport {
    let mut violations = Vec::new();
    for (k, closed) in plus.iter().enumerate() {
        let stratum = c.stratum_ids(k);
        if let Some(i) = (0..closed.len()).find(|&i| closed.get(i, i)) {
            let cycle = cycle_through(&plus_steps(c, k), i);
            violations.push(Violation::new(
                Axiom::Strictness,
                cycle.iter().map(|&l| c.name(stratum[l]).to_string()).collect(),
                format!("<+ on S{k} has a cycle"),
            ));
        }
    }
    let closed = &plus[0];
    let stratum = c.stratum_ids(0);
    'outer: for i in 0..closed.len() {
        for j in i + 1..closed.len() {
            if !closed.get(i, j) && !closed.get(j, i) {
                violations.push(Violation::new(
                    Axiom::Strictness,
                    c.names_of([stratum[i], stratum[j]]),
                    "<+ on S0 is not linear",
                ));
                break 'outer;
            }
        }
    }
    AxiomReport::for_axiom(Axiom::Strictness, violations)
}

fn disjointness_with(c: &FaceComplex, plus: &[BitMatrix]) -> AxiomReport {
    let mut violations = Vec::new();
    for k in 1..=c.dim() {
        let minus = minus_closure(c, k);
        let plus = &plus[k];
        let stratum = c.stratum_ids(k);
        for i in 0..stratum.len() {
            for j in i..stratum.len() {
                let m = minus.get(i, j) || minus.get(j, i);
                let p = plus.get(i, j) || plus.get(j, i);
                if m && p {
                    violations.push(Violation::new(
                        Axiom::Disjointness,
                        c.names_of([stratum[i], stratum[j]]),
                        format!("comparable under both <- and <+ on S{k}"),
                    ));
                }
            }
        }
    }
    AxiomReport::for_axiom(Axiom::Disjointness, violations)
}

fn first_incomparable(c: &FaceComplex, plus: &BitMatrix, pencil: &[usize]) -> Option<(usize, usize)> {
    for (a, &x) in pencil.iter().enumerate() {
        for &y in &pencil[a + 1..] {
            let (i, j) = (c.local_index(x), c.local_index(y));
            if !plus.get(i, j) && !plus.get(j, i) {
                return Some((x, y));
            }
        }
    }
    None
}

fn pencil_linearity_with(c: &FaceComplex, plus: &[BitMatrix]) -> AxiomReport {
    let mut violations = Vec::new();
    for k in 1..=c.dim() {
        for &y in c.stratum_ids(k - 1) {
            for (pencil, which) in [(c.target_of(y), "target"), (c.source_of(y), "source")] {
                if let Some((a, b)) = first_incomparable(c, &plus[k], pencil) {
                    violations.push(Violation::new(
                        Axiom::PencilLinearity,
                        c.names_of([y, a, b]),
                        format!("{which} pencil of `{}` is not linear under <+", c.name(y)),
                    ));
                }
            }
        }
    }
    AxiomReport::for_axiom(Axiom::PencilLinearity, violations)
}

fn plus_closures(c: &FaceComplex) -> Vec<BitMatrix> {
    (0..=c.dim()).map(|k| plus_closure(c, k)).collect()
}

/// Every `<^{S_k,+}` is irreflexive, and `<^{S_0,+}` relates any two distinct points.
pub fn check_strictness(c: &FaceComplex) -> AxiomReport {
    strictness_with(c, &plus_closures(c))
}

/// No two faces of positive dimension are comparable under both `<⁻` and `<⁺`.
pub fn check_disjointness(c: &FaceComplex) -> AxiomReport {
    disjointness_with(c, &plus_closures(c))
}

/// For every `(k-1)`-face `y`, the faces targeting `y` and the faces having
/// `y` as a source are each totally ordered by `<^{S_k,+}`.
pub fn check_pencil_linearity(c: &FaceComplex) -> AxiomReport {
    pencil_linearity_with(c, &plus_closures(c))
}

/// `|S_k ∖ δ(S_{k+1})| = 1` for every `0 ≤ k ≤ dim`.
pub fn check_principality(c: &FaceComplex) -> AxiomReport {
    let mut violations = Vec::new();
    for k in 0..=c.dim() {
        let leftover: Vec<usize> =
            c.stratum_ids(k).iter().copied().filter(|&i| c.source_of(i).is_empty()).collect();
        if leftover.len() != 1 {
            violations.push(Violation::new(
                Axiom::Principality,
                c.names_of(leftover.iter().copied()),
                format!("{} faces of S{k} are sources of no face", leftover.len()),
            ));
        }
    }
    AxiomReport::for_axiom(Axiom::Principality, violations)
}

/// Globularity, strictness, disjointness and pencil linearity.
pub fn is_opetopic_cardinal(c: &FaceComplex) -> AxiomReport {
    let plus = plus_closures(c);
    check_globularity(c)
        .merged(strictness_with(c, &plus))
        .merged(disjointness_with(c, &plus))
        .merged(pencil_linearity_with(c, &plus))
}

/// An opetopic cardinal that is also principal.
pub fn is_positive_opetope(c: &FaceComplex) -> AxiomReport {
    is_opetopic_cardinal(c).merged(check_principality(c))
}
