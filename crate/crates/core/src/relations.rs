//! Derived relations on a face complex: the one-step relations `◁⁻`/`◁⁺`
//! on each stratum, their transitive closures `<⁻`/`<⁺`, the sets `Λ_k`
//! and `Γ_k`, `ι(x)`, and the lower/upper path predicates.

use crate::complex::{FaceComplex, QueryError, Sign};

/// Dense square boolean matrix over stratum-local indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub(crate) fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix { n, words, bits: vec![0; n * words] }
    }

    pub(crate) fn len(&self) -> usize {
        self.n
    }

    pub(crate) fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub(crate) fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Warshall's algorithm, in place.
    pub(crate) fn close(&mut self) {
        for k in 0..self.n {
            for i in 0..self.n {
                if self.get(i, k) {
                    for w in 0..self.words {
                        let v = self.bits[k * self.words + w];
                        self.bits[i * self.words + w] |= v;
                    }
                }
            }
        }
    }

    pub(crate) fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| (0..self.n).filter(move |&j| self.get(i, j)).map(move |j| (i, j)))
    }

    pub(crate) fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.get(i, j))
    }
}

/// `x ◁⁻ x'` iff `γ(x) ∈ δ(x')`, over stratum-local indices of `S_k`.
pub(crate) fn minus_steps(c: &FaceComplex, k: usize) -> BitMatrix {
    let stratum = c.stratum_ids(k);
    let mut m = BitMatrix::new(stratum.len());
    if k == 0 {
        return m;
    }
    for &x in stratum {
        let t = c.tgt(x).expect("positive dimension");
        for &x2 in c.source_of(t) {
            m.set(c.local_index(x), c.local_index(x2));
        }
    }
    m
}

/// `x ◁⁺ x'` iff some `w ∈ S_{k+1}` has `x ∈ δ(w)` and `γ(w) = x'`.
pub(crate) fn plus_steps(c: &FaceComplex, k: usize) -> BitMatrix {
    let mut m = BitMatrix::new(c.stratum_ids(k).len());
    for &w in c.stratum_ids(k + 1) {
        let t = c.local_index(c.tgt(w).expect("positive dimension"));
        for &x in c.src(w) {
            m.set(c.local_index(x), t);
        }
    }
    m
}

pub(crate) fn plus_closure(c: &FaceComplex, k: usize) -> BitMatrix {
    let mut m = plus_steps(c, k);
    m.close();
    m
}

pub(crate) fn minus_closure(c: &FaceComplex, k: usize) -> BitMatrix {
    let mut m = minus_steps(c, k);
    m.close();
    m
}

fn pair_names<'c>(c: &'c FaceComplex, k: usize, m: &BitMatrix) -> Vec<(&'c str, &'c str)> {
    let stratum = c.stratum_ids(k);
    let mut out: Vec<_> = m.pairs().map(|(i, j)| (c.name(stratum[i]), c.name(stratum[j]))).collect();
    out.sort_unstable();
    out
}

fn local_of(c: &FaceComplex, k: usize, face: &str) -> Option<usize> {
    let i = c.id(face).ok()?;
    (c.dim_of(i) == k).then(|| c.local_index(i))
}

/// A one-step relation `◁^{S_k,±}` on stratum `k`.
#[derive(Clone, Debug)]
pub struct StepRelation<'c> {
    complex: &'c FaceComplex,
    dimension: usize,
    sign: Sign,
    matrix: BitMatrix,
}

impl<'c> StepRelation<'c> {
    /// An arbitrary relation on stratum `k` given by explicit pairs.
    pub fn from_pairs<'p>(
        complex: &'c FaceComplex,
        dimension: usize,
        sign: Sign,
        pairs: impl IntoIterator<Item = (&'p str, &'p str)>,
    ) -> Result<Self, QueryError> {
        let mut matrix = BitMatrix::new(complex.stratum_ids(dimension).len());
        for (a, b) in pairs {
            let missing = |f: &str| match complex.id(f) {
                Err(e) => e,
                Ok(i) => QueryError::DimensionOutOfRange { requested: complex.dim_of(i), max: dimension },
            };
            let i = local_of(complex, dimension, a).ok_or_else(|| missing(a))?;
            let j = local_of(complex, dimension, b).ok_or_else(|| missing(b))?;
            matrix.set(i, j);
        }
        Ok(StepRelation { complex, dimension, sign, matrix })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.is_empty()
    }

    pub fn contains(&self, a: &str, b: &str) -> bool {
        match (local_of(self.complex, self.dimension, a), local_of(self.complex, self.dimension, b)) {
            (Some(i), Some(j)) => self.matrix.get(i, j),
            _ => false,
        }
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(&'c str, &'c str)> {
        pair_names(self.complex, self.dimension, &self.matrix)
    }
}

/// The transitive closure `<^{S_k,±}` of a [`StepRelation`], with `⊥` and
/// `≤` available as queries.
#[derive(Clone, Debug)]
pub struct ClosedRelation<'c> {
    complex: &'c FaceComplex,
    dimension: usize,
    sign: Sign,
    matrix: BitMatrix,
}

impl<'c> ClosedRelation<'c> {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.is_empty()
    }

    /// `a < b`.
    pub fn less(&self, a: &str, b: &str) -> bool {
        match (local_of(self.complex, self.dimension, a), local_of(self.complex, self.dimension, b)) {
            (Some(i), Some(j)) => self.matrix.get(i, j),
            _ => false,
        }
    }

    /// `a ≤ b`: equal, or `a < b`.
    pub fn less_eq(&self, a: &str, b: &str) -> bool {
        a == b || self.less(a, b)
    }

    /// `a ⊥ b`: `a < b` or `b < a`.
    pub fn comparable(&self, a: &str, b: &str) -> bool {
        self.less(a, b) || self.less(b, a)
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.matrix.len()).all(|i| !self.matrix.get(i, i))
    }

    pub fn pairs(&self) -> Vec<(&'c str, &'c str)> {
        pair_names(self.complex, self.dimension, &self.matrix)
    }
}

/// `◁^{S_k,−}`; empty on `S_0`.
pub fn step_minus(c: &FaceComplex, k: usize) -> StepRelation<'_> {
    StepRelation { complex: c, dimension: k, sign: Sign::Minus, matrix: minus_steps(c, k) }
}

/// `◁^{S_k,+}`.
pub fn step_plus(c: &FaceComplex, k: usize) -> StepRelation<'_> {
    StepRelation { complex: c, dimension: k, sign: Sign::Plus, matrix: plus_steps(c, k) }
}

/// The least transitive relation containing `rel`.
pub fn closure<'c>(rel: &StepRelation<'c>) -> ClosedRelation<'c> {
    let mut matrix = rel.matrix.clone();
    matrix.close();
    ClosedRelation { complex: rel.complex, dimension: rel.dimension, sign: rel.sign, matrix }
}

fn check_range(c: &FaceComplex, k: usize) -> Result<(), QueryError> {
    if k > c.dim() {
        return Err(QueryError::DimensionOutOfRange { requested: k, max: c.dim() });
    }
    Ok(())
}

pub(crate) fn is_target_ix(c: &FaceComplex, i: usize) -> bool {
    !c.target_of(i).is_empty()
}

/// `Γ_k = γ(C_{k+1})`, sorted.
pub fn gamma_set(c: &FaceComplex, k: usize) -> Result<Vec<&str>, QueryError> {
    check_range(c, k)?;
    Ok(c.stratum_ids(k).iter().filter(|&&i| is_target_ix(c, i)).map(|&i| c.name(i)).collect())
}

/// `Λ_k = C_k ∖ γ(C_{k+1})`, sorted.
pub fn lambda_set(c: &FaceComplex, k: usize) -> Result<Vec<&str>, QueryError> {
    check_range(c, k)?;
    Ok(c.stratum_ids(k).iter().filter(|&&i| !is_target_ix(c, i)).map(|&i| c.name(i)).collect())
}

pub(crate) fn iota_ix(c: &FaceComplex, x: usize) -> Vec<usize> {
    let mut dd: Vec<usize> = c.src(x).iter().flat_map(|&y| c.src(y).iter().copied()).collect();
    dd.sort_unstable();
    dd.dedup();
    let mut gd: Vec<usize> = c.src(x).iter().map(|&y| c.tgt(y).expect("positive dimension")).collect();
    gd.sort_unstable();
    gd.dedup();
    dd.retain(|z| gd.binary_search(z).is_ok());
    dd
}

/// `ι(x) = δδ(x) ∩ γδ(x)`, sorted; requires `dim(x) ≥ 2`.
pub fn iota<'c>(c: &'c FaceComplex, face: &str) -> Result<Vec<&'c str>, QueryError> {
    let x = c.id(face)?;
    if c.dim_of(x) < 2 {
        return Err(QueryError::DimensionTooLow { face: face.to_string(), dim: c.dim_of(x), required: 2 });
    }
    Ok(iota_ix(c, x).into_iter().map(|i| c.name(i)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathKind {
    /// `x₀ ≻⁺ y₀ ≺⁻ x₁ ≻⁺ y₁ ≺⁻ ⋯ ≺⁻ x_p`
    Lower,
    /// `y₀ ≺⁻ x₁ ≻⁺ y₁ ≺⁻ ⋯ ≺⁻ x_p ≻⁺ y_p`
    Upper,
}

/// An alternating sequence of faces following one of the two path patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePath {
    pub kind: PathKind,
    pub faces: Vec<String>,
}

impl FacePath {
    pub fn is_valid_in(&self, c: &FaceComplex) -> Result<bool, QueryError> {
        let seq: Vec<&str> = self.faces.iter().map(String::as_str).collect();
        match self.kind {
            PathKind::Lower => is_lower_path(c, &seq),
            PathKind::Upper => is_upper_path(c, &seq),
        }
    }
}

fn ids(c: &FaceComplex, seq: &[&str]) -> Result<Vec<usize>, QueryError> {
    seq.iter().map(|f| c.id(f)).collect()
}

/// Whether `seq` reads `x₀ ≻⁺ y₀ ≺⁻ x₁ ≻⁺ ⋯ ≺⁻ x_p`: every `y_i = γ(x_i)` and
/// `y_i ∈ δ(x_{i+1})`. A single face is the trivial lower path.
pub fn is_lower_path(c: &FaceComplex, seq: &[&str]) -> Result<bool, QueryError> {
    let s = ids(c, seq)?;
    if s.len() % 2 == 0 {
        return Ok(false);
    }
    Ok(s.chunks(2).zip(s[1..].chunks(2)).all(|(xy, yx)| {
        let (x, y) = (xy[0], xy[1]);
        let next = yx[1];
        c.sign(y, x) == Some(Sign::Plus) && c.sign(y, next) == Some(Sign::Minus)
    }))
}

/// Whether `seq` reads `y₀ ≺⁻ x₁ ≻⁺ y₁ ≺⁻ ⋯ ≺⁻ x_p ≻⁺ y_p`: every
/// `y_{i-1} ∈ δ(x_i)` and `γ(x_i) = y_i`. A single face is the trivial
/// upper path.
pub fn is_upper_path(c: &FaceComplex, seq: &[&str]) -> Result<bool, QueryError> {
    let s = ids(c, seq)?;
    if s.len() % 2 == 0 {
        return Ok(false);
    }
    Ok(s.chunks(2).zip(s[1..].chunks(2)).all(|(yx, xy)| {
        let (y, x) = (yx[0], yx[1]);
        let next = xy[1];
        c.sign(y, x) == Some(Sign::Minus) && c.sign(next, x) == Some(Sign::Plus)
    }))
}
