//! Structured pass/fail results for axiom checks.

use std::fmt;

use serde::Serialize;

/// Names of every check that can appear in an [`AxiomReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(into = "&'static str")]
pub enum Axiom {
    // positive-to-one poset / positive hypergraph base axioms
    DuplicateFace,
    InvalidFaceName,
    UnknownFaceReference,
    DuplicateEntry,
    Grading,
    SignClash,
    MissingTarget,
    EmptySources,
    Delta0NotFunctional,
    EmptyComplex,
    HypergraphRoundTrip,
    // opetopic cardinal / positive opetope
    Globularity,
    Strictness,
    Disjointness,
    PencilLinearity,
    Principality,
    // dendritic face complex
    GreatestElement,
    OrientedThinness,
    Acyclicity,
    // morphisms
    DimensionPreserving,
    TargetCommuting,
    SourceBijective,
    // rooted trees
    TripletUniqueness,
    UniquePathToRoot,
}

impl Axiom {
    /// Checks performed whenever a complex is built.
    pub const BASE: [Axiom; 10] = [
        Axiom::DuplicateFace,
        Axiom::InvalidFaceName,
        Axiom::UnknownFaceReference,
        Axiom::DuplicateEntry,
        Axiom::Grading,
        Axiom::SignClash,
        Axiom::MissingTarget,
        Axiom::EmptySources,
        Axiom::Delta0NotFunctional,
        Axiom::EmptyComplex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::DuplicateFace => "duplicate face",
            Axiom::InvalidFaceName => "invalid face name",
            Axiom::UnknownFaceReference => "unknown face reference",
            Axiom::DuplicateEntry => "duplicate entry",
            Axiom::Grading => "grading",
            Axiom::SignClash => "sign clash",
            Axiom::MissingTarget => "missing target",
            Axiom::EmptySources => "empty sources",
            Axiom::Delta0NotFunctional => "delta0 not functional",
            Axiom::EmptyComplex => "empty complex",
            Axiom::HypergraphRoundTrip => "hypergraph round trip",
            Axiom::Globularity => "globularity",
            Axiom::Strictness => "strictness",
            Axiom::Disjointness => "disjointness",
            Axiom::PencilLinearity => "pencil linearity",
            Axiom::Principality => "principality",
            Axiom::GreatestElement => "greatest element",
            Axiom::OrientedThinness => "oriented thinness",
            Axiom::Acyclicity => "acyclicity",
            Axiom::DimensionPreserving => "dimension preserving",
            Axiom::TargetCommuting => "target commuting",
            Axiom::SourceBijective => "source bijective",
            Axiom::TripletUniqueness => "triplet uniqueness",
            Axiom::UniquePathToRoot => "unique path to root",
        }
    }
}

impl From<Axiom> for &'static str {
    fn from(a: Axiom) -> Self {
        a.name()
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A single failed axiom instance with the faces that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<String>,
    pub detail: String,
}

impl Violation {
    pub fn new(axiom: Axiom, witness: Vec<String>, detail: impl Into<String>) -> Self {
        Violation { axiom, witness, detail: detail.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.axiom, self.detail)?;
        if !self.witness.is_empty() {
            write!(f, " [{}]", self.witness.join(", "))?;
        }
        Ok(())
    }
}

/// Outcome of running one or more axiom checks.
///
/// The verdict is derived: a report passes exactly when it holds no
/// violations. `checked` records which axioms were examined, so that an
/// aggregate report can still say which individual checks passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    checked: Vec<Axiom>,
    violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// A passing report on the base axioms checked when building a complex.
    pub fn base() -> Self {
        AxiomReport { checked: Axiom::BASE.to_vec(), violations: Vec::new() }
    }

    /// A report for a single axiom with the given violations.
    pub fn for_axiom(axiom: Axiom, violations: Vec<Violation>) -> Self {
        AxiomReport { checked: vec![axiom], violations }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn checked(&self) -> &[Axiom] {
        &self.checked
    }

    pub fn axiom_passed(&self, axiom: Axiom) -> bool {
        self.checked.contains(&axiom) && self.violations.iter().all(|v| v.axiom != axiom)
    }

    pub fn violations_of(&self, axiom: Axiom) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.axiom == axiom)
    }

    pub fn push(&mut self, violation: Violation) {
        if !self.checked.contains(&violation.axiom) {
            self.checked.push(violation.axiom);
        }
        self.violations.push(violation);
    }

    /// Appends the checks and violations of `other`.
    pub fn merge(&mut self, other: AxiomReport) {
        for a in other.checked {
            if !self.checked.contains(&a) {
                self.checked.push(a);
            }
        }
        self.violations.extend(other.violations);
    }

    pub fn merged(mut self, other: AxiomReport) -> Self {
        self.merge(other);
        self
    }

    /// JSON rendering: `{"verdict": "pass"|"fail", "checked": [...], "violations": [...]}`.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "verdict": if self.passed() { "pass" } else { "fail" },
            "checked": self.checked,
            "violations": self.violations,
        })
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("pass");
        }
        f.write_str("fail")?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_tracks_violations() {
        let mut r = AxiomReport::for_axiom(Axiom::Globularity, vec![]);
        assert!(r.passed());
        assert!(r.axiom_passed(Axiom::Globularity));
        assert!(!r.axiom_passed(Axiom::Strictness));
        r.push(Violation::new(Axiom::Strictness, vec!["a".into()], "cycle"));
        assert!(!r.passed());
        assert!(r.axiom_passed(Axiom::Globularity));
        assert_eq!(r.to_string(), "fail\n  strictness: cycle [a]");
    }

    #[test]
    fn json_shape() {
        let r = AxiomReport::for_axiom(
            Axiom::GreatestElement,
            vec![Violation::new(Axiom::GreatestElement, vec!["y".into()], "not found")],
        );
        assert_eq!(
            r.to_json_value().to_string(),
            r#"{"checked":["greatest element"],"verdict":"fail","violations":[{"axiom":"greatest element","detail":"not found","witness":["y"]}]}"#
        );
    }
}
