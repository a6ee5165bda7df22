//! Face maps between complexes and their validation.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::complex::FaceComplex;
use crate::report::{Axiom, AxiomReport, Violation};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("map mentions `{face}`, which is not a face of the {side} complex")]
    UnknownFaceReference { face: String, side: &'static str },
    #[error("map is not defined on `{0}`")]
    NotTotal(String),
    #[error("cannot compose: middle complexes differ")]
    NotComposable,
}

/// A dimension-indexed face map `f : S → T`.
#[derive(Clone, Debug)]
pub struct Morphism<'a> {
    source: &'a FaceComplex,
    target: &'a FaceComplex,
    map: BTreeMap<String, String>,
}

impl<'a> Morphism<'a> {
    /// Checks that `map` is total on `source` and lands in `target`.
    pub fn new(
        source: &'a FaceComplex,
        target: &'a FaceComplex,
        map: BTreeMap<String, String>,
    ) -> Result<Self, MorphismError> {
        for (a, b) in &map {
            if !source.contains(a) {
                return Err(MorphismError::UnknownFaceReference { face: a.clone(), side: "source" });
            }
            if !target.contains(b) {
                return Err(MorphismError::UnknownFaceReference { face: b.clone(), side: "target" });
            }
        }
        if let Some(missing) = source.faces().find(|f| !map.contains_key(*f)) {
            return Err(MorphismError::NotTotal(missing.to_string()));
        }
        Ok(Morphism { source, target, map })
    }

    pub fn from_pairs<I, A, B>(source: &'a FaceComplex, target: &'a FaceComplex, pairs: I) -> Result<Self, MorphismError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        Self::new(source, target, pairs.into_iter().map(|(a, b)| (a.into(), b.into())).collect())
    }

    pub fn identity(c: &'a FaceComplex) -> Self {
        let map = c.faces().map(|f| (f.to_string(), f.to_string())).collect();
        Morphism { source: c, target: c, map }
    }

    pub fn source(&self) -> &'a FaceComplex {
        self.source
    }

    pub fn target(&self) -> &'a FaceComplex {
        self.target
    }

    pub fn map(&self) -> &BTreeMap<String, String> {
        &self.map
    }

    pub fn apply(&self, face: &str) -> Option<&str> {
        self.map.get(face).map(String::as_str)
    }

    /// `next ∘ self`. The target of `self` must be the source of `next`
    /// (compared structurally).
    pub fn then<'b>(&self, next: &Morphism<'b>) -> Result<Morphism<'b>, MorphismError>
    where
        'a: 'b,
    {
        if self.target != next.source {
            return Err(MorphismError::NotComposable);
        }
        let map = self.map.iter().map(|(a, b)| (a.clone(), next.map[b].clone())).collect();
        Ok(Morphism { source: self.source, target: next.target, map })
    }

    pub fn is_injective(&self) -> bool {
        self.map.values().collect::<BTreeSet<_>>().len() == self.map.len()
    }

    /// Image of the map, sorted.
    pub fn image(&self) -> BTreeSet<&str> {
        self.map.values().map(String::as_str).collect()
    }
}

/// Checks dimension preservation, target commutation and bijectivity of
/// `f|δ(x) : δ(x) → δ(f(x))`. Violations are listed in lexicographic order
/// of the offending source face.
pub fn validate_morphism(m: &Morphism<'_>) -> AxiomReport {
    let (s, t) = (m.source, m.target);
    let mut dims = Vec::new();
    let mut commute = Vec::new();
    let mut bij = Vec::new();
    for x in s.faces() {
        let fx = &m.map[x];
        let dx = s.face_dim(x).expect("known face");
        let dfx = t.face_dim(fx).expect("checked on construction");
        if dx != dfx {
            dims.push(Violation::new(
                Axiom::DimensionPreserving,
                vec![x.to_string()],
                format!("`{x}` has dimension {dx} but its image `{fx}` has dimension {dfx}"),
            ));
            continue;
        }
        if dx == 0 {
            continue;
        }
        let gx = s.gamma(x).expect("positive dimension");
        let f_gx = &m.map[gx];
        let g_fx = t.gamma(fx).expect("positive dimension");
        if f_gx != g_fx {
            commute.push(Violation::new(
                Axiom::TargetCommuting,
                vec![x.to_string()],
                format!("f(γ({x})) = {f_gx} but γ(f({x})) = {g_fx}"),
            ));
        }
        let image: Vec<&str> = s.delta(x).expect("positive dimension").iter().map(|y| m.map[*y].as_str()).collect();
        let image_set: BTreeSet<&str> = image.iter().copied().collect();
        let expected: BTreeSet<&str> = t.delta(fx).expect("positive dimension").into_iter().collect();
        if image_set.len() != image.len() || image_set != expected {
            bij.push(Violation::new(
                Axiom::SourceBijective,
                vec![x.to_string()],
                format!(
                    "f maps δ({x}) to [{}], but δ({fx}) = [{}]",
                    image.join(", "),
                    expected.into_iter().collect::<Vec<_>>().join(", ")
                ),
            ));
        }
    }
    AxiomReport::for_axiom(Axiom::DimensionPreserving, dims)
        .merged(AxiomReport::for_axiom(Axiom::TargetCommuting, commute))
        .merged(AxiomReport::for_axiom(Axiom::SourceBijective, bij))
}

/// Every valid morphism `s → t`, found by backtracking from the top
/// dimension down. Intended for small complexes.
pub fn all_morphisms<'a>(s: &'a FaceComplex, t: &'a FaceComplex) -> Vec<Morphism<'a>> {
    let faces: Vec<&str> = (0..=s.dim()).rev().flat_map(|k| s.stratum(k)).collect();
    let mut out = Vec::new();
    let mut current: BTreeMap<String, String> = BTreeMap::new();
    search(s, t, &faces, 0, &mut current, &mut out);
    out
}

fn search<'a>(
    s: &'a FaceComplex,
    t: &'a FaceComplex,
    faces: &[&str],
    at: usize,
    current: &mut BTreeMap<String, String>,
    out: &mut Vec<Morphism<'a>>,
) {
    if at == faces.len() {
        let m = Morphism { source: s, target: t, map: current.clone() };
        if validate_morphism(&m).passed() {
            out.push(m);
        }
        return;
    }
    let x = faces[at];
    let d = s.face_dim(x).expect("known face");
    // faces of higher dimension are already mapped; if x is covered by one of
    // them its image is constrained to the matching cover of that image
    for candidate in t.stratum(d) {
        if !consistent(s, t, current, x, candidate) {
            continue;
        }
        current.insert(x.to_string(), candidate.to_string());
        search(s, t, faces, at + 1, current, out);
        current.remove(x);
    }
}

fn consistent(s: &FaceComplex, t: &FaceComplex, current: &BTreeMap<String, String>, x: &str, fx: &str) -> bool {
    let ix = s.id(x).expect("known");
    for &w in s.target_of(ix) {
        if let Some(fw) = current.get(s.name(w)) {
            if t.gamma(fw).ok() != Some(fx) {
                return false;
            }
        }
    }
    for &w in s.source_of(ix) {
        if let Some(fw) = current.get(s.name(w)) {
            if !t.delta(fw).map(|d| d.contains(&fx)).unwrap_or(false) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{arrow, two_cell};

    #[test]
    fn identity_validates() {
        let c = two_cell(2).unwrap();
        assert!(validate_morphism(&Morphism::identity(&c)).passed());
    }

    #[test]
    fn arrow_into_two2() {
        let a = arrow();
        let c = two_cell(2).unwrap();
        let good = Morphism::from_pairs(&a, &c, [("x", "x0"), ("y", "x1"), ("f", "f1")]).unwrap();
        assert!(validate_morphism(&good).passed());

        let bad = Morphism::from_pairs(&a, &c, [("x", "x0"), ("y", "x2"), ("f", "f1")]).unwrap();
        let report = validate_morphism(&bad);
        assert!(!report.passed());
        let v: Vec<_> = report.violations_of(Axiom::TargetCommuting).collect();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].witness, vec!["f".to_string()]);
        assert!(report.axiom_passed(Axiom::DimensionPreserving));
        assert!(report.axiom_passed(Axiom::SourceBijective));
    }

    #[test]
    fn dimension_violation() {
        let a = arrow();
        let c = two_cell(2).unwrap();
        let m = Morphism::from_pairs(&a, &c, [("x", "x0"), ("y", "x1"), ("f", "x2")]).unwrap();
        assert!(!validate_morphism(&m).axiom_passed(Axiom::DimensionPreserving));
    }

    #[test]
    fn construction_errors() {
        let a = arrow();
        let c = two_cell(2).unwrap();
        assert_eq!(
            Morphism::from_pairs(&a, &c, [("x", "x0"), ("y", "x1")]).unwrap_err(),
            MorphismError::NotTotal("f".into())
        );
        assert!(matches!(
            Morphism::from_pairs(&a, &c, [("x", "x0"), ("y", "x1"), ("f", "zz")]),
            Err(MorphismError::UnknownFaceReference { side: "target", .. })
        ));
        assert!(matches!(
            Morphism::from_pairs(&a, &c, [("x", "x0"), ("y", "x1"), ("f", "f1"), ("q", "x0")]),
            Err(MorphismError::UnknownFaceReference { side: "source", .. })
        ));
    }

    #[test]
    fn enumerated_morphisms_arrow_to_two2() {
        let a = arrow();
        let c = two_cell(2).unwrap();
        let ms = all_morphisms(&a, &c);
        let images: Vec<&str> = ms.iter().map(|m| m.apply("f").unwrap()).collect();
        assert_eq!(images, vec!["f1", "f2", "h"]);
    }

    #[test]
    fn composition() {
        let a = arrow();
        let c = two_cell(2).unwrap();
        let m = Morphism::from_pairs(&a, &c, [("x", "x0"), ("y", "x1"), ("f", "f1")]).unwrap();
        let id = Morphism::identity(&c);
        let comp = m.then(&id).unwrap();
        assert_eq!(comp.map(), m.map());
        assert!(validate_morphism(&comp).passed());
        assert_eq!(id.then(&m).unwrap_err(), MorphismError::NotComposable);
    }
}
