//! Exhaustive enumeration of small complexes up to isomorphism.
//!
//! Complexes are grown one dimension at a time. Every canonical complex of
//! dimension `k` is extended by each multiset of new `(k+1)`-faces, where a
//! new face is a target in `S_k` plus a nonempty set of other `k`-faces as
//! sources (exactly one source when `k = 0`). Each layer is deduplicated by
//! certificate before the next is built, so the grading and single-target
//! constraints never produce invalid candidates. Output is sorted by
//! certificate and does not depend on the execution mode.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::canon::{canonical_name, relabel, CanonicalForm, Certificate};
use crate::complex::FaceComplex;
use crate::zpo::is_positive_opetope;

/// Environment variable overriding [`DEFAULT_WORK_LIMIT`].
pub const WORK_LIMIT_ENV: &str = "OPETOPE_KIT_WORK_LIMIT";

/// Default bound on the number of candidate complexes examined.
pub const DEFAULT_WORK_LIMIT: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("budget needs about {estimate} candidates, above the work limit {limit}")]
    BudgetTooLarge { estimate: u128, limit: u64 },
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_dim: usize,
    pub max_faces_total: usize,
    /// `per_dim[k]` caps the size of `S_k`; missing entries are uncapped.
    pub per_dim: Vec<usize>,
    pub work_limit: u64,
}

impl EnumerationBudget {
    pub fn new(max_dim: usize, max_faces_total: usize) -> Self {
        EnumerationBudget { max_dim, max_faces_total, per_dim: Vec::new(), work_limit: DEFAULT_WORK_LIMIT }
    }

    pub fn with_caps(mut self, per_dim: Vec<usize>) -> Self {
        self.per_dim = per_dim;
        self
    }

    pub fn with_work_limit(mut self, limit: u64) -> Self {
        self.work_limit = limit;
        self
    }

    fn cap(&self, k: usize) -> usize {
        self.per_dim.get(k).copied().unwrap_or(usize::MAX).min(self.max_faces_total)
    }

    pub fn validate(&self) -> Result<(), EnumerationError> {
        if self.max_faces_total == 0 {
            return Err(EnumerationError::InvalidBudget("max_faces_total must be at least 1".into()));
        }
        if self.per_dim.first() == Some(&0) {
            return Err(EnumerationError::InvalidBudget("a complex needs at least one point".into()));
        }
        if self.per_dim.len() > self.max_dim + 1 {
            return Err(EnumerationError::InvalidBudget(format!(
                "{} per-dimension caps for max_dim {}",
                self.per_dim.len(),
                self.max_dim
            )));
        }
        Ok(())
    }
}

/// Reads [`WORK_LIMIT_ENV`]; `Ok(None)` when unset.
pub fn work_limit_from_env() -> Result<Option<u64>, EnumerationError> {
    match std::env::var(WORK_LIMIT_ENV) {
        Err(_) => Ok(None),
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| EnumerationError::InvalidBudget(format!("{WORK_LIMIT_ENV}={v} is not a count"))),
    }
}

/// How data-parallel work is scheduled. `Parallel` degrades to sequential
/// when the crate is built without the `parallel` feature.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// Applies `f` to every item, keeping order.
pub fn map_items<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Every valid complex within `budget`, once per isomorphism class, in
/// canonical labelling and sorted by certificate.
pub fn enumerate_pops(budget: &EnumerationBudget) -> Result<Vec<FaceComplex>, EnumerationError> {
    enumerate_pops_with(budget, Execution::default())
}

/// The positive opetopes among [`enumerate_pops`].
pub fn enumerate_positive_opetopes(budget: &EnumerationBudget) -> Result<Vec<FaceComplex>, EnumerationError> {
    enumerate_positive_opetopes_with(budget, Execution::default())
}

pub fn enumerate_positive_opetopes_with(
    budget: &EnumerationBudget,
    exec: Execution,
) -> Result<Vec<FaceComplex>, EnumerationError> {
    let all = enumerate_pops_with(budget, exec)?;
    let keep = map_items(exec, &all, |c| is_positive_opetope(c).passed());
    Ok(all.into_iter().zip(keep).filter_map(|(c, k)| k.then_some(c)).collect())
}

pub fn enumerate_pops_with(budget: &EnumerationBudget, exec: Execution) -> Result<Vec<FaceComplex>, EnumerationError> {
    budget.validate()?;
    let mut found: Vec<(Certificate, FaceComplex)> = Vec::new();
    let mut level: Vec<FaceComplex> = (1..=budget.cap(0)).map(points).collect();
    found.extend(level.iter().map(|c| (CanonicalForm::of(c).certificate, c.clone())));
    let mut work: u128 = 0;

    for k in 0..budget.max_dim {
        if level.is_empty() {
            break;
        }
        work += level.iter().map(|r| extension_count(r, k, budget)).sum::<u128>();
        if work > u128::from(budget.work_limit) {
            return Err(EnumerationError::BudgetTooLarge { estimate: work, limit: budget.work_limit });
        }
        let batches = map_items(exec, &level, |r| {
            extensions(r, k, budget)
                .into_iter()
                .map(|c| {
                    let form = CanonicalForm::of(&c);
                    (form.certificate.clone(), relabel(&c, &form))
                })
                .collect::<Vec<_>>()
        });
        let mut next: BTreeMap<Certificate, FaceComplex> = BTreeMap::new();
        for (cert, c) in batches.into_iter().flatten() {
            next.entry(cert).or_insert(c);
        }
        level = next.values().cloned().collect();
        found.extend(next);
    }

    found.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(found.into_iter().map(|(_, c)| c).collect())
}

fn points(n: usize) -> FaceComplex {
    FaceComplex::from_parts((0..n).map(|i| canonical_name(0, i)).collect(), vec![0; n], vec![None; n], vec![Vec::new(); n])
}

// (target, sources) choices for a new (k+1)-face on top of `c`.
fn descriptors(c: &FaceComplex, k: usize) -> Vec<(usize, Vec<usize>)> {
    let layer = c.stratum_ids(k);
    let mut out = Vec::new();
    for &t in layer {
        let others: Vec<usize> = layer.iter().copied().filter(|&s| s != t).collect();
        if k == 0 {
            out.extend(others.iter().map(|&s| (t, vec![s])));
            continue;
        }
        for mask in 1u64..(1 << others.len()) {
            let s = others.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &s)| s).collect();
            out.push((t, s));
        }
    }
    out
}

fn room(c: &FaceComplex, k: usize, budget: &EnumerationBudget) -> usize {
    budget.max_faces_total.saturating_sub(c.len()).min(budget.cap(k + 1))
}

fn descriptor_count(c: &FaceComplex, k: usize) -> u128 {
    let s = c.stratum_ids(k).len() as u128;
    if k == 0 {
        s * s.saturating_sub(1)
    } else {
        let subsets = 1u128.checked_shl(s.saturating_sub(1) as u32).unwrap_or(u128::MAX).saturating_sub(1);
        s.saturating_mul(subsets)
    }
}

// Number of nonempty multisets of size at most `room` drawn from the descriptors.
fn extension_count(c: &FaceComplex, k: usize, budget: &EnumerationBudget) -> u128 {
    let d = descriptor_count(c, k);
    let mut total: u128 = 0;
    let mut term: u128 = 1; // C(d + m - 1, m)
    for m in 1..=room(c, k, budget) as u128 {
        term = term.saturating_mul(d + m - 1) / m;
        total = total.saturating_add(term);
    }
    total
}

fn extensions(c: &FaceComplex, k: usize, budget: &EnumerationBudget) -> Vec<FaceComplex> {
    let room = room(c, k, budget);
    if c.dim() != k || room == 0 {
        return Vec::new();
    }
    let desc = descriptors(c, k);
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    multisets(desc.len(), room, 0, &mut chosen, &mut |pick| out.push(extend(c, k, &desc, pick)));
    out
}

fn multisets(n: usize, room: usize, from: usize, chosen: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if chosen.len() == room {
        return;
    }
    for d in from..n {
        chosen.push(d);
        emit(chosen);
        multisets(n, room, d, chosen, emit);
        chosen.pop();
    }
}

fn extend(c: &FaceComplex, k: usize, desc: &[(usize, Vec<usize>)], pick: &[usize]) -> FaceComplex {
    let n = c.len();
    let mut names: Vec<String> = (0..n).map(|i| c.name(i).to_string()).collect();
    let mut dims: Vec<usize> = (0..n).map(|i| c.dim_of(i)).collect();
    let mut targets: Vec<Option<usize>> = (0..n).map(|i| c.tgt(i)).collect();
    let mut sources: Vec<Vec<usize>> = (0..n).map(|i| c.src(i).to_vec()).collect();
    for (j, &d) in pick.iter().enumerate() {
        names.push(canonical_name(k + 1, j));
        dims.push(k + 1);
        targets.push(Some(desc[d].0));
        sources.push(desc[d].1.clone());
    }
    FaceComplex::from_parts(names, dims, targets, sources)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{arrow, point, three1, two_cell};
    use crate::canon::are_isomorphic;

    fn count(max_dim: usize, max_faces: usize) -> usize {
        enumerate_pops(&EnumerationBudget::new(max_dim, max_faces)).unwrap().len()
    }

    #[test]
    fn points_only() {
        let all = enumerate_pops(&EnumerationBudget::new(0, 2)).unwrap();
        assert_eq!(all.len(), 2);
        assert!(are_isomorphic(&all[0], &point()).is_some());
    }

    #[test]
    fn up_to_arrows() {
        // 1, 2, 3 points and the arrow
        assert_eq!(count(1, 3), 4);
        let ops = enumerate_positive_opetopes(&EnumerationBudget::new(1, 3)).unwrap();
        assert_eq!(ops.len(), 2);
        assert!(ops.iter().any(|c| are_isomorphic(c, &arrow()).is_some()));
    }

    #[test]
    fn opetopes_up_to_dimension_two() {
        let ops = enumerate_positive_opetopes(&EnumerationBudget::new(2, 7)).unwrap();
        assert_eq!(ops.len(), 4);
        let ops = enumerate_positive_opetopes(&EnumerationBudget::new(2, 9)).unwrap();
        assert_eq!(ops.len(), 5);
        assert!(ops.iter().any(|c| are_isomorphic(c, &two_cell(3).unwrap()).is_some()));
    }

    #[test]
    fn three1_is_found() {
        let ops = enumerate_positive_opetopes(&EnumerationBudget::new(3, 9)).unwrap();
        assert!(ops.iter().any(|c| are_isomorphic(c, &three1()).is_some()));
    }

    #[test]
    fn modes_agree() {
        let b = EnumerationBudget::new(2, 6);
        assert_eq!(enumerate_pops_with(&b, Execution::Sequential), enumerate_pops_with(&b, Execution::Parallel));
    }

    #[test]
    fn work_limit() {
        let b = EnumerationBudget::new(3, 12).with_work_limit(1000);
        assert!(matches!(enumerate_pops(&b), Err(EnumerationError::BudgetTooLarge { .. })));
        assert!(matches!(
            enumerate_pops(&EnumerationBudget::new(1, 0)),
            Err(EnumerationError::InvalidBudget(_))
        ));
    }

    #[test]
    fn caps() {
        let b = EnumerationBudget::new(1, 5).with_caps(vec![2, 1]);
        // 1 point, 2 points, arrow
        assert_eq!(enumerate_pops(&b).unwrap().len(), 3);
    }
}
