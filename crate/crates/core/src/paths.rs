//! Certificates built from the structure of a dendritic face complex:
//! paths to the root of a face tree, simple zig-zags between sources,
//! the linear order on points and the partition of each stratum by the
//! sources of non-target faces.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::complex::{FaceComplex, QueryError, Sign};
use crate::dfc::{complete_ix, face_tree, greatest_ix, TreeError};
use crate::relations::is_target_ix;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),
}

impl From<TreeError> for CertificateError {
    fn from(e: TreeError) -> Self {
        match e {
            TreeError::Query(q) => CertificateError::Query(q),
            TreeError::InternalInvariantBroken(s) => CertificateError::InternalInvariantBroken(s),
        }
    }
}

/// `c₀ ≻^{α₀} d₀ ≺^{−α₀} c₁ ≻^{α₁} ⋯ ≺ c_p` with every `c_i ∈ δ(anchor)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigZag {
    pub anchor: String,
    /// `c₀, …, c_p`
    pub cells: Vec<String>,
    /// `d₀, …, d_{p−1}`
    pub joints: Vec<String>,
    /// `α₀, …, α_{p−1}`
    pub signs: Vec<Sign>,
}

impl ZigZag {
    pub fn len(&self) -> usize {
        self.joints.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.joints.is_empty()
    }

    pub fn is_simple(&self) -> bool {
        self.joints.windows(2).all(|w| w[0] != w[1])
    }

    pub fn reversed(&self) -> ZigZag {
        ZigZag {
            anchor: self.anchor.clone(),
            cells: self.cells.iter().rev().cloned().collect(),
            joints: self.joints.iter().rev().cloned().collect(),
            signs: self.signs.iter().rev().map(|s| s.flip()).collect(),
        }
    }

    /// Checks the junction signs and membership in `δ(anchor)`.
    pub fn is_valid_in(&self, c: &FaceComplex) -> bool {
        let Ok(sources) = c.delta(&self.anchor) else { return false };
        if self.cells.len() != self.joints.len() + 1 || self.signs.len() != self.joints.len() {
            return false;
        }
        if !self.cells.iter().all(|x| sources.contains(&x.as_str())) {
            return false;
        }
        (0..self.joints.len()).all(|i| {
            let d = &self.joints[i];
            c.cover_sign(d, &self.cells[i]).ok().flatten() == Some(self.signs[i])
                && c.cover_sign(d, &self.cells[i + 1]).ok().flatten() == Some(self.signs[i].flip())
        })
    }
}

impl fmt::Display for ZigZag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cells[0])?;
        for i in 0..self.joints.len() {
            write!(f, " >{} {} <{} {}", self.signs[i], self.joints[i], self.signs[i].flip(), self.cells[i + 1])?;
        }
        Ok(())
    }
}

/// The unique `d = d₁ ◁⁻ d₂ ◁⁻ ⋯ ◁⁻ d_q = ρ(c)` inside `δ(c)`, found by
/// completing the half lozenges `γ(d_i) ≺⁺ d_i ≺⁻ c` until the completion
/// is `γ(c)`.
pub fn path_to_root<'c>(c: &'c FaceComplex, cell: &str, source: &str) -> Result<Vec<&'c str>, CertificateError> {
    let x = c.id(cell)?;
    let d = c.id(source)?;
    if c.sign(d, x) != Some(Sign::Minus) {
        return Err(CertificateError::PreconditionViolation(format!("`{source}` is not a source of `{cell}`")));
    }
    if c.dim_of(x) == 1 {
        return Ok(vec![c.name(d)]);
    }
    let mut path = vec![d];
    loop {
        let cur = *path.last().unwrap();
        let t = c.tgt(cur).expect("positive dimension");
        let (next, _) = complete_ix(c, t, cur, x)
            .map_err(|e| CertificateError::PreconditionViolation(format!("not a dendritic face complex: {e}")))?;
        if c.sign(next, x) == Some(Sign::Plus) {
            break;
        }
        if path.contains(&next) || path.len() > c.src(x).len() {
            return Err(CertificateError::InternalInvariantBroken(format!("path from `{source}` in δ({cell}) loops")));
        }
        path.push(next);
    }
    Ok(path.into_iter().map(|i| c.name(i)).collect())
}

/// The unique simple `δ(b)`-zig-zag from `from` to `to`: up the face tree of
/// `b` to the meet of the two nodes, then down.
pub fn simple_zigzag(c: &FaceComplex, anchor: &str, from: &str, to: &str) -> Result<ZigZag, CertificateError> {
    let sources = c.delta(anchor)?;
    for f in [from, to] {
        if !sources.contains(&f) {
            return Err(CertificateError::PreconditionViolation(format!("`{f}` is not a source of `{anchor}`")));
        }
    }
    let tree = face_tree(c, anchor)?;
    let up = tree.path_to_root(from).ok_or_else(|| CertificateError::InternalInvariantBroken("no path".into()))?;
    let down = tree.path_to_root(to).ok_or_else(|| CertificateError::InternalInvariantBroken("no path".into()))?;
    // strip the common suffix, keeping the meet
    let mut i = up.len();
    let mut j = down.len();
    while i > 1 && j > 1 && up[i - 2] == down[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut zz = ZigZag { anchor: anchor.to_string(), cells: vec![from.to_string()], joints: vec![], signs: vec![] };
    for w in up[..i].windows(2) {
        // child ≻⁺ γ(child) ≺⁻ parent
        zz.joints.push(c.gamma(w[0])?.to_string());
        zz.signs.push(Sign::Plus);
        zz.cells.push(w[1].to_string());
    }
    for w in down[..j].windows(2).rev() {
        // parent ≻⁻ γ(child) ≺⁺ child
        zz.joints.push(c.gamma(w[0])?.to_string());
        zz.signs.push(Sign::Minus);
        zz.cells.push(w[0].to_string());
    }
    Ok(zz)
}

/// The points in increasing `<⁺` order, walking from the point that is no
/// face's target along the unique `w ∈ Λ₁` having the current point as
/// source.
pub fn linear_order_s0(c: &FaceComplex) -> Result<Vec<&str>, CertificateError> {
    let omega = greatest_ix(c)
        .map_err(|_| CertificateError::PreconditionViolation("no greatest element".into()))?;
    let starts: Vec<usize> = c.stratum_ids(0).iter().copied().filter(|&p| !is_target_ix(c, p)).collect();
    let [start] = starts.as_slice() else {
        return Err(CertificateError::InternalInvariantBroken(format!(
            "{} points are no face's target",
            starts.len()
        )));
    };
    let mut order = vec![*start];
    loop {
        let cur = *order.last().unwrap();
        let steps: Vec<usize> = c.source_of(cur).iter().copied().filter(|&w| !is_target_ix(c, w)).collect();
        match steps.as_slice() {
            [] => break,
            [w] => {
                let next = c.tgt(*w).expect("positive dimension");
                if order.contains(&next) {
                    return Err(CertificateError::InternalInvariantBroken("walk on points loops".into()));
                }
                order.push(next);
            }
            _ => {
                return Err(CertificateError::InternalInvariantBroken(format!(
                    "`{}` is a source of several faces of Λ1",
                    c.name(cur)
                )))
            }
        }
    }
    if order.len() != c.stratum_ids(0).len() || *order.last().unwrap() != c.iter_target(omega, 0) {
        return Err(CertificateError::InternalInvariantBroken("walk does not cover the points".into()));
    }
    Ok(order.into_iter().map(|i| c.name(i)).collect())
}

/// `C_k ∖ {γ^{(k)}ω}` split into the blocks `δ(c)` for `c ∈ Λ_{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourcesPartition {
    pub dimension: usize,
    pub blocks: BTreeMap<String, Vec<String>>,
    /// `γ^{(k)}ω`
    pub leftover: String,
}

/// The partition of stratum `k` (`k < dim`) by the sources of the faces of
/// `Λ_{k+1}`, checked for disjointness and coverage.
pub fn sources_partition(c: &FaceComplex, k: usize) -> Result<SourcesPartition, CertificateError> {
    if k >= c.dim() {
        return Err(QueryError::DimensionOutOfRange { requested: k, max: c.dim().saturating_sub(1) }.into());
    }
    let omega = greatest_ix(c)
        .map_err(|_| CertificateError::PreconditionViolation("no greatest element".into()))?;
    let leftover = c.iter_target(omega, k);
    let mut owner: Vec<Option<usize>> = vec![None; c.len()];
    let mut blocks = BTreeMap::new();
    for &w in c.stratum_ids(k + 1).iter().filter(|&&w| !is_target_ix(c, w)) {
        for &d in c.src(w) {
            if let Some(prev) = owner[d] {
                return Err(CertificateError::InternalInvariantBroken(format!(
                    "`{}` is a source of both `{}` and `{}`",
                    c.name(d),
                    c.name(prev),
                    c.name(w)
                )));
            }
            owner[d] = Some(w);
        }
        blocks.insert(c.name(w).to_string(), c.names_of(c.src(w).iter().copied()));
    }
    for &d in c.stratum_ids(k) {
        let covered = owner[d].is_some();
        if covered == (d == leftover) {
            return Err(CertificateError::InternalInvariantBroken(format!(
                "`{}` {} a block",
                c.name(d),
                if covered { "is γ^(k)ω but lies in" } else { "lies in no" }
            )));
        }
    }
    Ok(SourcesPartition { dimension: k, blocks, leftover: c.name(leftover).to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{arrow, point, three1, two_cell};

    #[test]
    fn paths_to_root() {
        let c = two_cell(2).unwrap();
        assert_eq!(path_to_root(&c, "alpha", "f1").unwrap(), vec!["f1", "f2"]);
        assert_eq!(path_to_root(&c, "alpha", "f2").unwrap(), vec!["f2"]);
        assert_eq!(path_to_root(&three1(), "A", "alpha").unwrap(), vec!["alpha"]);
        assert!(matches!(path_to_root(&c, "alpha", "h"), Err(CertificateError::PreconditionViolation(_))));
        assert_eq!(path_to_root(&arrow(), "f", "x").unwrap(), vec!["x"]);
    }

    #[test]
    fn zigzags() {
        let c = two_cell(2).unwrap();
        let z = simple_zigzag(&c, "alpha", "f1", "f2").unwrap();
        assert_eq!(z.to_string(), "f1 >+ x1 <- f2");
        assert!(z.is_valid_in(&c) && z.is_simple() && !z.is_trivial());

        let t = simple_zigzag(&c, "alpha", "f1", "f1").unwrap();
        assert!(t.is_trivial());
        assert_eq!(t.to_string(), "f1");

        let r = simple_zigzag(&c, "alpha", "f2", "f1").unwrap();
        assert_eq!(r.to_string(), "f2 >- x1 <+ f1");
        assert_eq!(r, z.reversed());
        assert!(r.is_valid_in(&c));

        assert!(matches!(simple_zigzag(&c, "alpha", "h", "f1"), Err(CertificateError::PreconditionViolation(_))));
    }

    #[test]
    fn zigzag_across_siblings() {
        let c = two_cell(3).unwrap();
        // f1 -> f2 -> f3 is a chain in the tree of alpha
        let z = simple_zigzag(&c, "alpha", "f1", "f3").unwrap();
        assert_eq!(z.to_string(), "f1 >+ x1 <- f2 >+ x2 <- f3");
        assert!(z.is_valid_in(&c));
    }

    #[test]
    fn point_orders() {
        assert_eq!(linear_order_s0(&two_cell(2).unwrap()).unwrap(), vec!["x0", "x1", "x2"]);
        assert_eq!(linear_order_s0(&point()).unwrap(), vec!["x"]);
        assert_eq!(linear_order_s0(&arrow()).unwrap(), vec!["x", "y"]);
        assert_eq!(linear_order_s0(&three1()).unwrap(), vec!["x0", "x1", "x2"]);
    }

    #[test]
    fn partitions() {
        let c = two_cell(2).unwrap();
        let p = sources_partition(&c, 1).unwrap();
        assert_eq!(p.blocks, BTreeMap::from([("alpha".to_string(), vec!["f1".to_string(), "f2".to_string()])]));
        assert_eq!(p.leftover, "h");

        let p = sources_partition(&c, 0).unwrap();
        assert_eq!(
            p.blocks,
            BTreeMap::from([("f1".to_string(), vec!["x0".to_string()]), ("f2".to_string(), vec!["x1".to_string()])])
        );
        assert_eq!(p.leftover, "x2");

        let p = sources_partition(&three1(), 2).unwrap();
        assert_eq!(p.blocks, BTreeMap::from([("A".to_string(), vec!["alpha".to_string()])]));
        assert_eq!(p.leftover, "beta");

        assert!(matches!(sources_partition(&c, 2), Err(CertificateError::Query(QueryError::DimensionOutOfRange { .. }))));
    }
}
