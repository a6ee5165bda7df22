//! The face-complex data model.
//!
//! A [`FaceComplex`] is a finite graded set of named faces in which every
//! face of dimension `k >= 1` has exactly one target `γ(x)` and a nonempty
//! set of sources `δ(x)`, all of dimension `k - 1`. It is simultaneously a
//! positive-to-one poset (covers `y ≺⁻ x` iff `y ∈ δ(x)`, `y ≺⁺ x` iff
//! `y = γ(x)`) and a positive hypergraph (`γ_k`, `δ_k` tables). Values are
//! validated on construction and immutable afterwards.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::report::{Axiom, AxiomReport, Violation};

/// Orientation of a cover: `-` for a source, `+` for the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    /// Product in the group `{+1, -1}`.
    pub fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Returns true when `name` is a legal face identifier: nonempty, made of
/// letters, digits, `_` and `'`.
pub fn is_valid_face_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// One failed base axiom found while building a complex.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("face `{0}` declared more than once")]
    DuplicateFace(String),
    #[error("`{0}` is not a valid face name")]
    InvalidFaceName(String),
    #[error("reference to unknown face `{0}`")]
    UnknownFaceReference(String),
    #[error("{what} of `{face}` given more than once")]
    DuplicateEntry { face: String, what: &'static str },
    #[error("`{related}` cannot be a {role} of `{face}`: dimensions {related_dim} and {face_dim}")]
    GradingViolation { face: String, face_dim: usize, related: String, related_dim: usize, role: &'static str },
    #[error("`{target}` is both the target and a source of `{face}`")]
    SignClash { face: String, target: String },
    #[error("face `{0}` of positive dimension has no target")]
    MissingTarget(String),
    #[error("face `{0}` of positive dimension has no sources")]
    EmptySources(String),
    #[error("1-dimensional face `{face}` has {count} sources")]
    Delta0NotFunctional { face: String, count: usize },
    #[error("a complex needs at least one face")]
    EmptyComplex,
}

impl ComplexError {
    pub fn axiom(&self) -> Axiom {
        match self {
            ComplexError::DuplicateFace(_) => Axiom::DuplicateFace,
            ComplexError::InvalidFaceName(_) => Axiom::InvalidFaceName,
            ComplexError::UnknownFaceReference(_) => Axiom::UnknownFaceReference,
            ComplexError::DuplicateEntry { .. } => Axiom::DuplicateEntry,
            ComplexError::GradingViolation { .. } => Axiom::Grading,
            ComplexError::SignClash { .. } => Axiom::SignClash,
            ComplexError::MissingTarget(_) => Axiom::MissingTarget,
            ComplexError::EmptySources(_) => Axiom::EmptySources,
            ComplexError::Delta0NotFunctional { .. } => Axiom::Delta0NotFunctional,
            ComplexError::EmptyComplex => Axiom::EmptyComplex,
        }
    }

    pub fn witness(&self) -> Vec<String> {
        match self {
            ComplexError::DuplicateFace(f)
            | ComplexError::InvalidFaceName(f)
            | ComplexError::UnknownFaceReference(f)
            | ComplexError::MissingTarget(f)
            | ComplexError::EmptySources(f) => vec![f.clone()],
            ComplexError::DuplicateEntry { face, .. } | ComplexError::Delta0NotFunctional { face, .. } => {
                vec![face.clone()]
            }
            ComplexError::GradingViolation { face, related, .. } => vec![related.clone(), face.clone()],
            ComplexError::SignClash { face, target } => vec![target.clone(), face.clone()],
            ComplexError::EmptyComplex => vec![],
        }
    }
}

/// Every base-axiom failure found while building a complex.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid complex: {}", .errors.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
pub struct InvalidComplex {
    pub errors: Vec<ComplexError>,
}

impl InvalidComplex {
    pub fn report(&self) -> AxiomReport {
        let mut report = AxiomReport::base();
        for e in &self.errors {
            report.push(Violation::new(e.axiom(), e.witness(), e.to_string()));
        }
        report
    }

    pub fn has(&self, axiom: Axiom) -> bool {
        self.errors.iter().any(|e| e.axiom() == axiom)
    }
}

/// Errors of point queries on a complex.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("unknown face `{0}`")]
    UnknownFace(String),
    #[error("face `{0}` has dimension 0")]
    ZeroDimensionalFace(String),
    #[error("face `{face}` has dimension {dim}, below {required}")]
    DimensionTooLow { face: String, dim: usize, required: usize },
    #[error("requested dimension {requested} exceeds dimension {dim} of `{face}`")]
    DimensionTooHigh { face: String, dim: usize, requested: usize },
    #[error("dimension {requested} is outside 0..={max}")]
    DimensionOutOfRange { requested: usize, max: usize },
}

/// Collects face declarations and relation entries, then validates them
/// into a [`FaceComplex`].
#[derive(Clone, Debug, Default)]
pub struct ComplexBuilder {
    faces: Vec<(String, usize)>,
    targets: Vec<(String, String)>,
    sources: Vec<(String, Vec<String>)>,
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn face(mut self, name: impl Into<String>, dim: usize) -> Self {
        self.add_face(name, dim);
        self
    }

    pub fn target(mut self, face: impl Into<String>, target: impl Into<String>) -> Self {
        self.add_target(face, target);
        self
    }

    pub fn sources<I, S>(mut self, face: impl Into<String>, sources: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.add_sources(face, sources);
        self
    }

    /// Declares a face of positive dimension with its target and sources.
    pub fn cell<I, S>(self, name: impl Into<String>, dim: usize, target: impl Into<String>, sources: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let name = name.into();
        self.face(name.clone(), dim).target(name.clone(), target).sources(name, sources)
    }

    pub fn add_face(&mut self, name: impl Into<String>, dim: usize) {
        self.faces.push((name.into(), dim));
    }

    pub fn add_target(&mut self, face: impl Into<String>, target: impl Into<String>) {
        self.targets.push((face.into(), target.into()));
    }

    pub fn add_sources<I, S>(&mut self, face: impl Into<String>, sources: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.sources.push((face.into(), sources.into_iter().map(Into::into).collect()));
    }

    pub fn build(self) -> Result<FaceComplex, InvalidComplex> {
        build_complex(self.faces, self.targets, self.sources)
    }
}

/// Validates raw face data into a [`FaceComplex`], reporting every failed
/// base axiom.
pub fn build_complex(
    faces: Vec<(String, usize)>,
    targets: Vec<(String, String)>,
    sources: Vec<(String, Vec<String>)>,
) -> Result<FaceComplex, InvalidComplex> {
    let mut errors = Vec::new();
    if faces.is_empty() {
        errors.push(ComplexError::EmptyComplex);
        return Err(InvalidComplex { errors });
    }

    let mut dims: BTreeMap<String, usize> = BTreeMap::new();
    for (name, dim) in faces {
        if !is_valid_face_name(&name) {
            errors.push(ComplexError::InvalidFaceName(name.clone()));
        }
        if dims.contains_key(&name) {
            errors.push(ComplexError::DuplicateFace(name));
        } else {
            dims.insert(name, dim);
        }
    }

    let names: Vec<String> = dims.keys().cloned().collect();
    let index: HashMap<String, usize> = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
    let dim_of: Vec<usize> = dims.values().copied().collect();
    let n = names.len();

    let mut target: Vec<Option<usize>> = vec![None; n];
    let mut srcs: Vec<Option<Vec<usize>>> = vec![None; n];
    // entries that were given but mention unknown faces
    let mut dangling = vec![false; n];

    let mut unknown = BTreeSet::new();
    let lookup = |name: &str, unknown: &mut BTreeSet<String>| -> Option<usize> {
        let i = index.get(name).copied();
        if i.is_none() {
            unknown.insert(name.to_string());
        }
        i
    };

    for (face, tgt) in &targets {
        let (Some(x), Some(y)) = (lookup(face, &mut unknown), lookup(tgt, &mut unknown)) else {
            if let Some(&x) = index.get(face.as_str()) {
                dangling[x] = true;
            }
            continue;
        };
        if target[x].is_some() {
            errors.push(ComplexError::DuplicateEntry { face: face.clone(), what: "target" });
            continue;
        }
        if dim_of[x] != dim_of[y] + 1 {
            errors.push(ComplexError::GradingViolation {
                face: face.clone(),
                face_dim: dim_of[x],
                related: tgt.clone(),
                related_dim: dim_of[y],
                role: "target",
            });
        }
        target[x] = Some(y);
    }

    for (face, list) in &sources {
        let Some(x) = lookup(face, &mut unknown) else {
            for s in list {
                lookup(s, &mut unknown);
            }
            continue;
        };
        if srcs[x].is_some() {
            errors.push(ComplexError::DuplicateEntry { face: face.clone(), what: "sources" });
            continue;
        }
        let mut set = Vec::with_capacity(list.len());
        for s in list {
            let Some(y) = lookup(s, &mut unknown) else {
                dangling[x] = true;
                continue;
            };
            if set.contains(&y) {
                errors.push(ComplexError::DuplicateEntry { face: face.clone(), what: "source entry" });
                continue;
            }
            if dim_of[x] != dim_of[y] + 1 {
                errors.push(ComplexError::GradingViolation {
                    face: face.clone(),
                    face_dim: dim_of[x],
                    related: s.clone(),
                    related_dim: dim_of[y],
                    role: "source",
                });
            }
            set.push(y);
        }
        set.sort_unstable();
        srcs[x] = Some(set);
    }
    errors.extend(unknown.into_iter().map(ComplexError::UnknownFaceReference));

    for x in 0..n {
        if dim_of[x] == 0 || dangling[x] {
            continue;
        }
        match target[x] {
            None => errors.push(ComplexError::MissingTarget(names[x].clone())),
            Some(t) => {
                if srcs[x].as_ref().is_some_and(|s| s.contains(&t)) {
                    errors.push(ComplexError::SignClash { face: names[x].clone(), target: names[t].clone() });
                }
            }
        }
        match &srcs[x] {
            None => errors.push(ComplexError::EmptySources(names[x].clone())),
            Some(s) if s.is_empty() => errors.push(ComplexError::EmptySources(names[x].clone())),
            Some(s) if dim_of[x] == 1 && s.len() != 1 => {
                errors.push(ComplexError::Delta0NotFunctional { face: names[x].clone(), count: s.len() })
            }
            _ => {}
        }
    }
    // dimension-0 faces with relation entries are caught by the grading check
    // unless the referenced face is also missing, so report them explicitly
    for x in 0..n {
        if dim_of[x] == 0 && (target[x].is_some() || srcs[x].as_ref().is_some_and(|s| !s.is_empty())) {
            let already = errors.iter().any(|e| matches!(e, ComplexError::GradingViolation { face, .. } if *face == names[x]));
            if !already {
                errors.push(ComplexError::GradingViolation {
                    face: names[x].clone(),
                    face_dim: 0,
                    related: names[x].clone(),
                    related_dim: 0,
                    role: "relation subject",
                });
            }
        }
    }

    if !errors.is_empty() {
        return Err(InvalidComplex { errors });
    }

    let sources: Vec<Vec<usize>> = srcs.into_iter().map(Option::unwrap_or_default).collect();
    Ok(FaceComplex::from_parts(names, dim_of, target, sources))
}

/// A validated, immutable complex of named faces.
///
/// Faces are stored in lexicographic name order; that order is used for all
/// iteration so that reports and serializations are reproducible.
#[derive(Clone)]
pub struct FaceComplex {
    names: Vec<String>,
    index: HashMap<String, usize>,
    dims: Vec<usize>,
    targets: Vec<Option<usize>>,
    sources: Vec<Vec<usize>>,
    strata: Vec<Vec<usize>>,
    // position of each face inside its stratum
    local: Vec<usize>,
    // faces of which this one is a target
    target_of: Vec<Vec<usize>>,
    // faces of which this one is a source
    source_of: Vec<Vec<usize>>,
}

impl PartialEq for FaceComplex {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.dims == other.dims
            && self.targets == other.targets
            && self.sources == other.sources
    }
}

impl Eq for FaceComplex {}

impl fmt::Debug for FaceComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("FaceComplex");
        for i in 0..self.len() {
            let desc = match self.targets[i] {
                None => "dim 0".to_string(),
                Some(t) => format!(
                    "dim {}, {} <- [{}]",
                    self.dims[i],
                    self.names[t],
                    self.sources[i].iter().map(|&s| self.names[s].as_str()).collect::<Vec<_>>().join(", ")
                ),
            };
            s.field(&self.names[i], &format_args!("{desc}"));
        }
        s.finish()
    }
}

impl FaceComplex {
    /// Assembles a complex from already-validated index data. Names must be
    /// sorted and unique, and sources sorted.
    pub(crate) fn from_parts(
        names: Vec<String>,
        dims: Vec<usize>,
        targets: Vec<Option<usize>>,
        sources: Vec<Vec<usize>>,
    ) -> Self {
        let n = names.len();
        debug_assert!(names.windows(2).all(|w| w[0] < w[1]));
        let index = names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let top = dims.iter().copied().max().unwrap_or(0);
        let mut strata = vec![Vec::new(); top + 1];
        let mut local = vec![0; n];
        for i in 0..n {
            local[i] = strata[dims[i]].len();
            strata[dims[i]].push(i);
        }
        let mut target_of = vec![Vec::new(); n];
        let mut source_of = vec![Vec::new(); n];
        for x in 0..n {
            if let Some(t) = targets[x] {
                target_of[t].push(x);
            }
            for &s in &sources[x] {
                source_of[s].push(x);
            }
        }
        FaceComplex { names, index, dims, targets, sources, strata, local, target_of, source_of }
    }

    pub fn builder() -> ComplexBuilder {
        ComplexBuilder::new()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// The largest face dimension.
    pub fn dim(&self) -> usize {
        self.strata.len() - 1
    }

    /// Face names in lexicographic order.
    pub fn faces(&self) -> impl Iterator<Item = &str> + '_ {
        self.names.iter().map(String::as_str)
    }

    pub fn contains(&self, face: &str) -> bool {
        self.index.contains_key(face)
    }

    pub fn face_dim(&self, face: &str) -> Result<usize, QueryError> {
        Ok(self.dims[self.id(face)?])
    }

    /// The `k`-dimensional faces in lexicographic order (empty above the top dimension).
    pub fn stratum(&self, k: usize) -> Vec<&str> {
        self.stratum_ids(k).iter().map(|&i| self.name(i)).collect()
    }

    /// `δ(x)`, sorted.
    pub fn delta(&self, face: &str) -> Result<Vec<&str>, QueryError> {
        let x = self.positive_face(face)?;
        Ok(self.sources[x].iter().map(|&s| self.name(s)).collect())
    }

    /// `γ(x)`.
    pub fn gamma(&self, face: &str) -> Result<&str, QueryError> {
        let x = self.positive_face(face)?;
        Ok(self.name(self.targets[x].expect("validated")))
    }

    /// `γ` applied `dim(x) - k` times to `x`.
    pub fn iterated_target(&self, face: &str, k: usize) -> Result<&str, QueryError> {
        let x = self.id(face)?;
        if k > self.dims[x] {
            return Err(QueryError::DimensionTooHigh { face: face.to_string(), dim: self.dims[x], requested: k });
        }
        Ok(self.name(self.iter_target(x, k)))
    }

    /// The cover sign of `y ≺ x`, or `None` when `y` is not covered by `x`.
    pub fn cover_sign(&self, y: &str, x: &str) -> Result<Option<Sign>, QueryError> {
        Ok(self.sign(self.id(y)?, self.id(x)?))
    }

    /// Every cover `(y, x, sign)` in lexicographic order of `(x, y)`.
    pub fn covers(&self) -> Vec<(&str, &str, Sign)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for (y, s) in self.faces_of(x) {
                out.push((self.name(y), self.name(x), s));
            }
        }
        out
    }

    /// Whether `y ≤ x` in the reflexive-transitive closure of `≺`.
    pub fn is_below(&self, y: &str, x: &str) -> Result<bool, QueryError> {
        let (y, x) = (self.id(y)?, self.id(x)?);
        Ok(self.downward_closure(x)[y])
    }

    /// Faces below `x` (including `x`), in lexicographic order.
    pub fn down_set(&self, face: &str) -> Result<Vec<&str>, QueryError> {
        let closure = self.downward_closure(self.id(face)?);
        Ok((0..self.len()).filter(|&i| closure[i]).map(|i| self.name(i)).collect())
    }

    /// A rebuildable builder holding exactly this complex.
    pub fn to_builder(&self) -> ComplexBuilder {
        let mut b = ComplexBuilder::new();
        for i in 0..self.len() {
            b.add_face(self.names[i].clone(), self.dims[i]);
        }
        for i in 0..self.len() {
            if let Some(t) = self.targets[i] {
                b.add_target(self.names[i].clone(), self.names[t].clone());
                b.add_sources(self.names[i].clone(), self.sources[i].iter().map(|&s| self.names[s].clone()));
            }
        }
        b
    }

    /// Returns a copy with faces renamed by `rename` (which must be injective
    /// and produce valid names).
    pub fn renamed(&self, rename: impl Fn(&str) -> String) -> Result<FaceComplex, InvalidComplex> {
        let new: Vec<String> = self.names.iter().map(|n| rename(n)).collect();
        let mut b = ComplexBuilder::new();
        for i in 0..self.len() {
            b.add_face(new[i].clone(), self.dims[i]);
            if let Some(t) = self.targets[i] {
                b.add_target(new[i].clone(), new[t].clone());
                b.add_sources(new[i].clone(), self.sources[i].iter().map(|&s| new[s].clone()));
            }
        }
        b.build()
    }

    // ---- index-level accessors used by the analysis modules ----

    pub(crate) fn id(&self, face: &str) -> Result<usize, QueryError> {
        self.index.get(face).copied().ok_or_else(|| QueryError::UnknownFace(face.to_string()))
    }

    fn positive_face(&self, face: &str) -> Result<usize, QueryError> {
        let x = self.id(face)?;
        if self.dims[x] == 0 {
            return Err(QueryError::ZeroDimensionalFace(face.to_string()));
        }
        Ok(x)
    }

    pub(crate) fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub(crate) fn names_of(&self, ids: impl IntoIterator<Item = usize>) -> Vec<String> {
        ids.into_iter().map(|i| self.names[i].clone()).collect()
    }

    pub(crate) fn dim_of(&self, i: usize) -> usize {
        self.dims[i]
    }

    pub(crate) fn tgt(&self, i: usize) -> Option<usize> {
        self.targets[i]
    }

    pub(crate) fn src(&self, i: usize) -> &[usize] {
        &self.sources[i]
    }

    pub(crate) fn stratum_ids(&self, k: usize) -> &[usize] {
        self.strata.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub(crate) fn local_index(&self, i: usize) -> usize {
        self.local[i]
    }

    pub(crate) fn target_of(&self, i: usize) -> &[usize] {
        &self.target_of[i]
    }

    pub(crate) fn source_of(&self, i: usize) -> &[usize] {
        &self.source_of[i]
    }

    /// Faces covered by `x` with their signs: the target first, then the sources.
    pub(crate) fn faces_of(&self, x: usize) -> impl Iterator<Item = (usize, Sign)> + '_ {
        self.targets[x]
            .map(|t| (t, Sign::Plus))
            .into_iter()
            .chain(self.sources[x].iter().map(|&s| (s, Sign::Minus)))
    }

    /// Faces covering `y` with their signs.
    pub(crate) fn cofaces_of(&self, y: usize) -> impl Iterator<Item = (usize, Sign)> + '_ {
        self.target_of[y]
            .iter()
            .map(|&x| (x, Sign::Plus))
            .chain(self.source_of[y].iter().map(|&x| (x, Sign::Minus)))
    }

    pub(crate) fn sign(&self, y: usize, x: usize) -> Option<Sign> {
        if self.targets[x] == Some(y) {
            Some(Sign::Plus)
        } else if self.sources[x].binary_search(&y).is_ok() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub(crate) fn iter_target(&self, mut x: usize, k: usize) -> usize {
        while self.dims[x] > k {
            x = self.targets[x].expect("validated");
        }
        x
    }

    pub(crate) fn downward_closure(&self, x: usize) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![x];
        seen[x] = true;
        while let Some(v) = stack.pop() {
            for (y, _) in self.faces_of(v) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}

/// Per-dimension `γ_k` and `δ_k` tables: the positive-hypergraph
/// presentation of a complex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HypergraphView {
    /// `S_k` for each `k`.
    pub faces: Vec<BTreeSet<String>>,
    /// `gamma[k]` is `γ_k : S_{k+1} → S_k`.
    pub gamma: Vec<BTreeMap<String, String>>,
    /// `delta[k]` is `δ_k : S_{k+1} → P(S_k)`.
    pub delta: Vec<BTreeMap<String, BTreeSet<String>>>,
}

/// The positive-hypergraph tables of `c`.
pub fn to_hypergraph_view(c: &FaceComplex) -> HypergraphView {
    let top = c.dim();
    let mut view = HypergraphView {
        faces: vec![BTreeSet::new(); top + 1],
        gamma: vec![BTreeMap::new(); top],
        delta: vec![BTreeMap::new(); top],
    };
    for i in 0..c.len() {
        let k = c.dim_of(i);
        view.faces[k].insert(c.name(i).to_string());
        if k >= 1 {
            view.gamma[k - 1].insert(c.name(i).to_string(), c.name(c.tgt(i).expect("validated")).to_string());
            view.delta[k - 1]
                .insert(c.name(i).to_string(), c.src(i).iter().map(|&s| c.name(s).to_string()).collect());
        }
    }
    view
}

/// Rebuilds a complex from positive-hypergraph tables, re-running full
/// validation.
pub fn from_hypergraph_view(view: &HypergraphView) -> Result<FaceComplex, InvalidComplex> {
    let mut b = ComplexBuilder::new();
    for (k, faces) in view.faces.iter().enumerate() {
        for f in faces {
            b.add_face(f.clone(), k);
        }
    }
    for table in &view.gamma {
        for (x, y) in table {
            b.add_target(x.clone(), y.clone());
        }
    }
    for table in &view.delta {
        for (x, ys) in table {
            b.add_sources(x.clone(), ys.iter().cloned());
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{arrow, point, two_cell};

    fn two2() -> FaceComplex {
        two_cell(2).unwrap()
    }

    #[test]
    fn point_and_arrow_build() {
        let p = FaceComplex::builder().face("x", 0).build().unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(p, point());
        let a = FaceComplex::builder()
            .face("x", 0)
            .face("y", 0)
            .cell("f", 1, "y", ["x"])
            .build()
            .unwrap();
        assert_eq!(a, arrow());
        assert_eq!(a.dim(), 1);
    }

    #[test]
    fn delta0_must_be_functional() {
        let err = FaceComplex::builder().face("x", 0).face("y", 0).cell("f", 1, "y", ["x", "y"]).build().unwrap_err();
        assert!(err.has(Axiom::Delta0NotFunctional));
    }

    #[test]
    fn target_among_sources_is_a_sign_clash() {
        let err = FaceComplex::builder()
            .face("x0", 0)
            .face("x1", 0)
            .face("x2", 0)
            .cell("f1", 1, "x1", ["x0"])
            .cell("f2", 1, "x2", ["x1"])
            .cell("h", 1, "x2", ["x0"])
            .cell("alpha", 2, "h", ["f1", "f2", "h"])
            .build()
            .unwrap_err();
        assert_eq!(
            err.errors,
            vec![ComplexError::SignClash { face: "alpha".into(), target: "h".into() }]
        );
    }

    #[test]
    fn base_axiom_errors() {
        assert_eq!(ComplexBuilder::new().build().unwrap_err().errors, vec![ComplexError::EmptyComplex]);

        let err = FaceComplex::builder().face("x", 0).face("x", 0).build().unwrap_err();
        assert!(err.has(Axiom::DuplicateFace));

        let err = FaceComplex::builder().face("x", 0).face("f", 1).target("f", "y").sources("f", ["x"]).build().unwrap_err();
        assert_eq!(err.errors, vec![ComplexError::UnknownFaceReference("y".into())]);

        let err = FaceComplex::builder().face("x", 0).face("y", 0).face("f", 1).sources("f", ["x"]).build().unwrap_err();
        assert_eq!(err.errors, vec![ComplexError::MissingTarget("f".into())]);

        let err = FaceComplex::builder().face("x", 0).face("y", 0).face("f", 1).target("f", "y").build().unwrap_err();
        assert_eq!(err.errors, vec![ComplexError::EmptySources("f".into())]);

        let err = FaceComplex::builder()
            .face("x", 0)
            .face("y", 0)
            .cell("f", 1, "y", Vec::<String>::new())
            .build()
            .unwrap_err();
        assert_eq!(err.errors, vec![ComplexError::EmptySources("f".into())]);

        // a 2-face whose target is a point
        let err = FaceComplex::builder()
            .face("x", 0)
            .face("y", 0)
            .cell("f", 1, "y", ["x"])
            .cell("a", 2, "x", ["f"])
            .build()
            .unwrap_err();
        assert!(err.has(Axiom::Grading));

        // duplicate source listing is reported, not deduplicated
        let err = FaceComplex::builder()
            .face("x", 0)
            .face("y", 0)
            .cell("f", 1, "y", ["x", "x"])
            .build()
            .unwrap_err();
        assert!(err.has(Axiom::DuplicateEntry));

        // a target entry on a point
        let err = FaceComplex::builder().face("x", 0).face("y", 0).target("x", "y").build().unwrap_err();
        assert!(err.has(Axiom::Grading));

        let err = FaceComplex::builder().face("", 0).build().unwrap_err();
        assert!(err.has(Axiom::InvalidFaceName));
    }

    #[test]
    fn reports_every_failure() {
        let err = FaceComplex::builder()
            .face("x", 0)
            .face("y", 0)
            .face("f", 1)
            .face("g", 1)
            .target("g", "y")
            .sources("g", ["x", "y"])
            .build()
            .unwrap_err();
        let axioms: Vec<_> = err.errors.iter().map(ComplexError::axiom).collect();
        assert!(axioms.contains(&Axiom::MissingTarget));
        assert!(axioms.contains(&Axiom::EmptySources));
        assert!(axioms.contains(&Axiom::SignClash));
        assert!(axioms.contains(&Axiom::Delta0NotFunctional));
        assert!(!err.report().passed());
    }

    #[test]
    fn delta_gamma_queries() {
        let c = two2();
        assert_eq!(c.delta("alpha").unwrap(), vec!["f1", "f2"]);
        assert_eq!(c.gamma("alpha").unwrap(), "h");
        assert_eq!(c.delta("x0"), Err(QueryError::ZeroDimensionalFace("x0".into())));
        assert_eq!(c.gamma("x0"), Err(QueryError::ZeroDimensionalFace("x0".into())));
        assert_eq!(c.delta("nope"), Err(QueryError::UnknownFace("nope".into())));
    }

    #[test]
    fn iterated_targets() {
        let c = two2();
        assert_eq!(c.iterated_target("alpha", 0).unwrap(), "x2");
        assert_eq!(c.iterated_target("alpha", 1).unwrap(), "h");
        assert_eq!(c.iterated_target("alpha", 2).unwrap(), "alpha");
        assert_eq!(c.iterated_target("f1", 0).unwrap(), "x1");
        assert!(matches!(c.iterated_target("f1", 2), Err(QueryError::DimensionTooHigh { .. })));
    }

    #[test]
    fn covers_and_order() {
        let c = two2();
        assert_eq!(c.cover_sign("h", "alpha").unwrap(), Some(Sign::Plus));
        assert_eq!(c.cover_sign("f1", "alpha").unwrap(), Some(Sign::Minus));
        assert_eq!(c.cover_sign("x0", "alpha").unwrap(), None);
        assert!(c.is_below("x0", "alpha").unwrap());
        assert!(!c.is_below("alpha", "x0").unwrap());
        assert_eq!(c.down_set("f2").unwrap(), vec!["f2", "x1", "x2"]);
        assert_eq!(c.covers().len(), 3 * 2 + 3);
    }

    #[test]
    fn hypergraph_view_of_arrow() {
        let v = to_hypergraph_view(&arrow());
        assert_eq!(v.gamma[0], BTreeMap::from([("f".to_string(), "y".to_string())]));
        assert_eq!(v.delta[0], BTreeMap::from([("f".to_string(), BTreeSet::from(["x".to_string()]))]));
    }

    #[test]
    fn hypergraph_round_trip() {
        let c = two2();
        let v = to_hypergraph_view(&c);
        let back = from_hypergraph_view(&v).unwrap();
        assert_eq!(back, c);
        assert_eq!(to_hypergraph_view(&back), v);
    }

    #[test]
    fn hypergraph_missing_gamma_entry() {
        let mut v = to_hypergraph_view(&two2());
        v.gamma[0].remove("f1");
        let err = from_hypergraph_view(&v).unwrap_err();
        assert_eq!(err.errors, vec![ComplexError::MissingTarget("f1".into())]);
    }

    #[test]
    fn sign_arithmetic() {
        assert_eq!(Sign::Minus.mul(Sign::Minus), Sign::Plus);
        assert_eq!(Sign::Minus.mul(Sign::Plus), Sign::Minus);
        assert_eq!(Sign::Plus.flip(), Sign::Minus);
    }

    #[test]
    fn renaming_preserves_structure() {
        let c = two2();
        let r = c.renamed(|n| format!("{n}'")).unwrap();
        assert_eq!(r.gamma("alpha'").unwrap(), "h'");
        assert_eq!(r.len(), c.len());
    }
}
