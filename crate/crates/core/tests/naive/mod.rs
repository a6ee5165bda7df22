//! Brute-force reference generator.
//!
//! Walks every face-count vector within the budget and every choice of
//! target and source set for every face (no layer-by-layer reduction),
//! dropping faces whose target is among their sources and 1-faces without
//! exactly one source. Isomorphic results are identified by minimising an
//! encoding over all dimension-preserving relabellings. Shares no code with
//! the library's enumerator or canonical form.

#![allow(dead_code)]

use std::collections::BTreeMap;

use opetope_kit::{ComplexBuilder, FaceComplex};

/// A labelled complex: `dims[k]` faces per dimension, and for each face of
/// dimension `k >= 1` its target and sorted sources as indices into `S_{k-1}`.
#[derive(Clone, Debug)]
pub struct Raw {
    pub dims: Vec<usize>,
    pub faces: Vec<Vec<(usize, Vec<usize>)>>,
}

impl Raw {
    pub fn len(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn to_complex(&self) -> FaceComplex {
        let name = |k: usize, i: usize| format!("n{k}_{i}");
        let mut b = ComplexBuilder::new();
        for (k, &n) in self.dims.iter().enumerate() {
            for i in 0..n {
                b.add_face(name(k, i), k);
            }
        }
        for (k, layer) in self.faces.iter().enumerate().skip(1) {
            for (i, (t, s)) in layer.iter().enumerate() {
                b.add_target(name(k, i), name(k - 1, *t));
                b.add_sources(name(k, i), s.iter().map(|&j| name(k - 1, j)));
            }
        }
        b.build().expect("naive generator only keeps valid complexes")
    }

    /// Lexicographically least encoding over all relabellings.
    pub fn canonical(&self) -> Vec<usize> {
        let perms: Vec<Vec<Vec<usize>>> = self.dims.iter().map(|&n| permutations(n)).collect();
        let mut best: Option<Vec<usize>> = None;
        let mut choice = vec![0; self.dims.len()];
        loop {
            let code = self.encode(&choice.iter().enumerate().map(|(k, &c)| &perms[k][c]).collect::<Vec<_>>());
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
            // next combination of per-dimension permutations
            let mut k = 0;
            loop {
                if k == choice.len() {
                    return best.unwrap();
                }
                choice[k] += 1;
                if choice[k] < perms[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    // Face i of dimension k is renamed to p[k][i].
    fn encode(&self, p: &[&Vec<usize>]) -> Vec<usize> {
        let mut code = self.dims.clone();
        for (k, layer) in self.faces.iter().enumerate().skip(1) {
            let mut renamed = vec![(0, Vec::new()); layer.len()];
            for (i, (t, s)) in layer.iter().enumerate() {
                let mut s: Vec<usize> = s.iter().map(|&j| p[k - 1][j]).collect();
                s.sort_unstable();
                renamed[p[k][i]] = (p[k - 1][*t], s);
            }
            for (t, s) in renamed {
                code.push(t);
                code.push(s.len());
                code.extend(s);
            }
        }
        code
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn count_vectors(max_dim: usize, max_faces: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, left: usize, max_dim: usize, out: &mut Vec<Vec<usize>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        if prefix.len() > max_dim {
            return;
        }
        for n in 1..=left {
            prefix.push(n);
            go(prefix, left - n, max_dim, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), max_faces, max_dim, &mut out);
    out
}

// Every (target, nonempty source set) over a layer of `n` faces.
fn all_choices(n: usize) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for t in 0..n {
        for mask in 1usize..(1 << n) {
            out.push((t, (0..n).filter(|j| mask >> j & 1 == 1).collect()));
        }
    }
    out
}

// A face is acceptable when its target is not a source, and a 1-face has
// exactly one source.
fn acceptable(k: usize, (t, s): &(usize, Vec<usize>)) -> bool {
    !s.contains(t) && (k != 1 || s.len() == 1)
}

/// One labelled representative per isomorphism class of valid complexes
/// with dimension at most `max_dim` and at most `max_faces` faces, keyed by
/// the brute-force canonical encoding.
pub fn generate(max_dim: usize, max_faces: usize) -> BTreeMap<Vec<usize>, Raw> {
    let mut classes = BTreeMap::new();
    for dims in count_vectors(max_dim, max_faces) {
        let choices: Vec<Vec<(usize, Vec<usize>)>> = (1..dims.len())
            .map(|k| all_choices(dims[k - 1]).into_iter().filter(|c| acceptable(k, c)).collect())
            .collect();
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        // odometer over one choice per face of positive dimension
        let slots: Vec<usize> = (1..dims.len()).flat_map(|k| std::iter::repeat_n(k, dims[k])).collect();
        let mut idx = vec![0usize; slots.len()];
        'outer: loop {
            let mut faces = vec![Vec::new(); dims.len()];
            for (&k, &i) in slots.iter().zip(&idx) {
                faces[k].push(choices[k - 1][i].clone());
            }
            let raw = Raw { dims: dims.clone(), faces };
            classes.entry(raw.canonical()).or_insert(raw);
            // faces of one dimension are interchangeable, so only
            // nondecreasing choice sequences within a dimension are visited
            for j in 0..idx.len() {
                idx[j] += 1;
                if idx[j] < choices[slots[j] - 1].len() {
                    for i in (0..j).rev() {
                        if slots[i] == slots[j] {
                            idx[i] = idx[j];
                        }
                    }
                    continue 'outer;
                }
                idx[j] = 0;
            }
            break;
        }
    }
    classes
}

/// Brute-force isomorphism test on complexes of the library type, by
/// trying every dimension-preserving bijection.
pub fn brute_isomorphic(a: &FaceComplex, b: &FaceComplex) -> bool {
    raw_of(a).canonical() == raw_of(b).canonical()
}

/// Converts a library complex to the labelled form used here.
pub fn raw_of(c: &FaceComplex) -> Raw {
    let strata: Vec<Vec<&str>> = (0..=c.dim()).map(|k| c.stratum(k)).collect();
    let pos = |k: usize, f: &str| strata[k].iter().position(|&g| g == f).unwrap();
    let mut faces = vec![Vec::new(); strata.len()];
    for k in 1..strata.len() {
        for f in &strata[k] {
            let t = pos(k - 1, c.gamma(f).unwrap());
            let mut s: Vec<usize> = c.delta(f).unwrap().iter().map(|g| pos(k - 1, g)).collect();
            s.sort_unstable();
            faces[k].push((t, s));
        }
    }
    Raw { dims: strata.iter().map(Vec::len).collect(), faces }
}
