//! Canonical forms and isomorphism testing.
//!
//! Colour refinement starts from the dimension of each face and refines by
//! the colours of its target, its sources and its cofaces. Cells that stay
//! ambiguous are split by individualising one face at a time; automorphisms
//! discovered along the way prune equivalent branches. The least certificate
//! over all leaves is the canonical one.

use std::collections::BTreeMap;
use std::fmt;

use crate::complex::{FaceComplex, Sign};

/// A complete encoding of a complex in canonical face order: the face
/// count, then per face its dimension, target position plus one (zero for
/// none), source count and sorted source positions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Certificate(Vec<u32>);

impl Certificate {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// Certificate together with the canonical order of faces.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub certificate: Certificate,
    order: Vec<usize>,
}

impl CanonicalForm {
    pub fn of(c: &FaceComplex) -> CanonicalForm {
        let (cert, order) = canonize(c);
        CanonicalForm { certificate: Certificate(cert), order }
    }

    /// Face names in canonical order.
    pub fn order<'c>(&self, c: &'c FaceComplex) -> Vec<&'c str> {
        self.order.iter().map(|&i| c.name(i)).collect()
    }
}

pub fn certificate(c: &FaceComplex) -> Certificate {
    CanonicalForm::of(c).certificate
}

/// Name of the `idx`-th face of dimension `dim` in a canonical relabelling.
pub fn canonical_name(dim: usize, idx: usize) -> String {
    format!("c{dim}_{idx:02}")
}

/// `c` relabelled so that isomorphic complexes become equal.
pub fn canonical_relabel(c: &FaceComplex) -> FaceComplex {
    relabel(c, &CanonicalForm::of(c))
}

pub(crate) fn relabel(c: &FaceComplex, form: &CanonicalForm) -> FaceComplex {
    let n = c.len();
    let mut names = Vec::with_capacity(n);
    let mut per_dim = vec![0usize; c.dim() + 1];
    let mut pos = vec![0usize; n];
    for (p, &i) in form.order.iter().enumerate() {
        let d = c.dim_of(i);
        names.push(canonical_name(d, per_dim[d]));
        per_dim[d] += 1;
        pos[i] = p;
    }
    if names.windows(2).any(|w| w[0] >= w[1]) {
        // more than 100 faces in one dimension: fall back to a validated rebuild
        let by_name: BTreeMap<&str, &str> = form.order.iter().zip(&names).map(|(&i, s)| (c.name(i), s.as_str())).collect();
        return c.renamed(|x| by_name[x].to_string()).expect("relabelling keeps validity");
    }
    let dims = form.order.iter().map(|&i| c.dim_of(i)).collect();
    let targets = form.order.iter().map(|&i| c.tgt(i).map(|t| pos[t])).collect();
    let sources = form
        .order
        .iter()
        .map(|&i| {
            let mut s: Vec<usize> = c.src(i).iter().map(|&y| pos[y]).collect();
            s.sort_unstable();
            s
        })
        .collect();
    FaceComplex::from_parts(names, dims, targets, sources)
}

/// A structure-preserving bijection from the faces of `c` to those of `d`,
/// if one exists.
pub fn are_isomorphic(c: &FaceComplex, d: &FaceComplex) -> Option<BTreeMap<String, String>> {
    if c.len() != d.len() || c.dim() != d.dim() {
        return None;
    }
    let fc = CanonicalForm::of(c);
    let fd = CanonicalForm::of(d);
    if fc.certificate != fd.certificate {
        return None;
    }
    Some(fc.order.iter().zip(&fd.order).map(|(&a, &b)| (c.name(a).to_string(), d.name(b).to_string())).collect())
}

type Signature = (u32, Option<u32>, Vec<u32>, Vec<(Sign, u32)>);

// Refines `colours` to a stable partition. Colours are ranks, so the
// result depends only on the structure, not on face labels.
fn refine(c: &FaceComplex, colours: &mut Vec<u32>) {
    let mut classes = count_classes(colours);
    loop {
        let sigs: Vec<Signature> = (0..c.len())
            .map(|i| {
                let mut src: Vec<u32> = c.src(i).iter().map(|&y| colours[y]).collect();
                src.sort_unstable();
                let mut co: Vec<(Sign, u32)> = c.cofaces_of(i).map(|(x, s)| (s, colours[x])).collect();
                co.sort_unstable();
                (colours[i], c.tgt(i).map(|t| colours[t]), src, co)
            })
            .collect();
        let mut ranked: Vec<&Signature> = sigs.iter().collect();
        ranked.sort_unstable();
        ranked.dedup();
        let next: Vec<u32> = sigs.iter().map(|s| ranked.binary_search(&s).expect("present") as u32).collect();
        let next_classes = ranked.len();
        *colours = next;
        if next_classes == classes {
            return;
        }
        classes = next_classes;
    }
}

fn count_classes(colours: &[u32]) -> usize {
    let mut v = colours.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn encode(c: &FaceComplex, order: &[usize]) -> Vec<u32> {
    let mut pos = vec![0u32; c.len()];
    for (p, &i) in order.iter().enumerate() {
        pos[i] = p as u32;
    }
    let mut cert = Vec::with_capacity(1 + 4 * c.len());
    cert.push(c.len() as u32);
    for &i in order {
        cert.push(c.dim_of(i) as u32);
        cert.push(c.tgt(i).map_or(0, |t| pos[t] + 1));
        cert.push(c.src(i).len() as u32);
        let mut s: Vec<u32> = c.src(i).iter().map(|&y| pos[y]).collect();
        s.sort_unstable();
        cert.extend(s);
    }
    cert
}

struct Search<'c> {
    complex: &'c FaceComplex,
    best: Option<(Vec<u32>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn visit(&mut self, mut colours: Vec<u32>, prefix: &mut Vec<usize>) {
        let c = self.complex;
        refine(c, &mut colours);
        let n = c.len();
        let mut cells: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, &col) in colours.iter().enumerate() {
            cells.entry(col).or_default().push(i);
        }
        let Some(cell) = cells.values().find(|v| v.len() > 1).cloned() else {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_unstable_by_key(|&i| colours[i]);
            let cert = encode(c, &order);
            match &self.best {
                Some((b, _)) if cert > *b => {}
                Some((b, border)) if cert == *b => {
                    let mut g = vec![0; n];
                    for (p, &i) in border.iter().enumerate() {
                        g[i] = order[p];
                    }
                    self.automorphisms.push(g);
                }
                _ => self.best = Some((cert, order)),
            }
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if explored.iter().any(|&u| self.same_orbit(prefix, u, v)) {
                continue;
            }
            let individual: Vec<u32> =
                colours.iter().enumerate().map(|(i, &col)| 2 * col + u32::from(col == colours[v] && i != v)).collect();
            prefix.push(v);
            self.visit(individual, prefix);
            prefix.pop();
            explored.push(v);
        }
    }

    // Whether some product of known automorphisms fixing `prefix` maps `u` to `v`.
    fn same_orbit(&self, prefix: &[usize], u: usize, v: usize) -> bool {
        let gens: Vec<&Vec<usize>> =
            self.automorphisms.iter().filter(|g| prefix.iter().all(|&p| g[p] == p)).collect();
        if gens.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.complex.len()];
        seen[u] = true;
        let mut stack = vec![u];
        while let Some(w) = stack.pop() {
            if w == v {
                return true;
            }
            for g in &gens {
                if !seen[g[w]] {
                    seen[g[w]] = true;
                    stack.push(g[w]);
                }
            }
        }
        false
    }
}

fn canonize(c: &FaceComplex) -> (Vec<u32>, Vec<usize>) {
    let colours: Vec<u32> = (0..c.len()).map(|i| c.dim_of(i) as u32).collect();
    let mut search = Search { complex: c, best: None, automorphisms: Vec::new() };
    search.visit(colours, &mut Vec::new());
    search.best.expect("at least one leaf")
}
