//! Exhaustive backtracking over grid tilings. Cells are assigned in
//! row-major order with the origin cell fixed at translation 0; after each
//! assignment the integer points of the new cell's differences against every
//! assigned cell are checked, so a branch dies at the first bad point.
//!
//! Two questions are asked: whether some tiling has a difference set confined
//! to a family of lines, and whether some tiling has a prescribed difference
//! set. Both answers are relative to the bound on translation coordinates.

mod engine;
mod symmetry;

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::lattice_core::{
    difference_set_tiling, is_confined, is_valid_target, GridTiling, LatticeSet, LatticeVector,
    LineFamily,
};

pub use symmetry::{
    canonical_form, for_each_symmetry, permutations, serial_key, signed_permutations,
    transform_tiling, SignedPermutation,
};

use engine::{PredicateKind, Problem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("dimension and resolution must be positive")]
    EmptyShape,
    #[error("bound must be at least 1, got {0}")]
    BadBound(i64),
    #[error("target must be symmetric, contain 0 and generate Z^n")]
    InvalidTarget,
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("this operation needs a {0} search")]
    WrongMode(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Confined(LineFamily),
    Realize(LatticeSet),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub n: usize,
    pub m: usize,
    pub mode: SearchMode,
    /// Largest absolute translation coordinate.
    pub bound: i64,
    pub threads: usize,
    /// Lex-leader pruning under coordinate permutations that preserve the
    /// mode's predicate.
    pub symmetry: bool,
}

impl SearchSpec {
    pub fn confined(n: usize, m: usize, bound: i64) -> Self {
        SearchSpec {
            n,
            m,
            mode: SearchMode::Confined(LineFamily::axes(n)),
            bound,
            threads: 1,
            symmetry: true,
        }
    }

    pub fn realize(target: LatticeSet, m: usize, bound: i64) -> Self {
        SearchSpec {
            n: target.dim(),
            m,
            mode: SearchMode::Realize(target),
            bound,
            threads: 1,
            symmetry: true,
        }
    }

    pub fn with_lines(mut self, lines: LineFamily) -> Self {
        self.mode = SearchMode::Confined(lines);
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_symmetry(mut self, on: bool) -> Self {
        self.symmetry = on;
        self
    }

    /// Range actually searched per coordinate. Realize mode clips the bound to
    /// maxcoord(target) + 1.
    pub fn value_range(&self) -> i64 {
        match &self.mode {
            SearchMode::Confined(_) => self.bound,
            SearchMode::Realize(t) => self.bound.min(t.max_coord() + 1),
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.n == 0 || self.m == 0 {
            return Err(SearchError::EmptyShape);
        }
        if self.bound < 1 {
            return Err(SearchError::BadBound(self.bound));
        }
        let found = match &self.mode {
            SearchMode::Confined(lines) => lines.dim(),
            SearchMode::Realize(target) => {
                if !is_valid_target(target) {
                    return Err(SearchError::InvalidTarget);
                }
                target.dim()
            }
        };
        if found != self.n {
            return Err(SearchError::DimensionMismatch {
                expected: self.n,
                found,
            });
        }
        let cells = (self.m as u128)
            .checked_pow(self.n as u32)
            .filter(|&c| c <= 4096);
        let max_coord = match &self.mode {
            SearchMode::Realize(t) => t.max_coord(),
            SearchMode::Confined(_) => 0,
        };
        let side = 2 * (2 * self.value_range() + 1).max(max_coord) as u128 + 1;
        if cells.is_none() || side.checked_pow(self.n as u32).is_none_or(|t| t > 1 << 26) {
            return Err(SearchError::TooLarge(format!(
                "n={}, m={}, bound={}",
                self.n, self.m, self.bound
            )));
        }
        Ok(())
    }

    /// Coordinate permutations under which the predicate is invariant.
    fn predicate_symmetries(&self) -> Vec<Vec<usize>> {
        if !self.symmetry {
            return Vec::new();
        }
        permutations(self.n)
            .into_iter()
            .skip(1)
            .filter(|perm| match &self.mode {
                SearchMode::Confined(lines) => lines.map(|d| d.permute(perm)).same_lines(lines),
                SearchMode::Realize(target) => &target.map(|p| p.permute(perm)) == target,
            })
            .collect()
    }

    fn problem(&self) -> Problem {
        let range = self.value_range();
        let syms = self.predicate_symmetries();
        match &self.mode {
            SearchMode::Confined(lines) => Problem::new(
                self.n,
                self.m,
                range,
                0,
                |p| lines.contains(p),
                PredicateKind::Allowed,
                &syms,
            ),
            SearchMode::Realize(target) => Problem::new(
                self.n,
                self.m,
                range,
                target.max_coord(),
                |p| target.contains(p),
                PredicateKind::Exact,
                &syms,
            ),
        }
    }
}

/// A difference point outside the predicate, from the pair of cells that
/// produced it (the later-assigned cell first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub cells: (usize, usize),
    pub point: LatticeVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Witness(GridTiling),
    ExhaustedUnsat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub n: usize,
    pub m: usize,
    pub outcome: Outcome,
    /// Values tried, one per (cell, translation) visit.
    pub nodes: u64,
    /// Branches cut by a bad difference point, a symmetry constraint, or an
    /// incomplete leaf.
    pub pruned: u64,
    pub elapsed: Duration,
    pub bound: i64,
    pub value_range: i64,
    /// True when every translation within `bound` was covered, so the verdict
    /// is exact relative to the bound. False when realize mode clipped the
    /// range below the bound.
    pub bound_complete: bool,
    /// First violation met in search order.
    pub first_violation: Option<Violation>,
}

impl SearchReport {
    pub fn witness(&self) -> Option<&GridTiling> {
        match &self.outcome {
            Outcome::Witness(t) => Some(t),
            Outcome::ExhaustedUnsat => None,
        }
    }

    pub fn is_unsat(&self) -> bool {
        self.outcome == Outcome::ExhaustedUnsat
    }
}

/// Runs either mode.
pub fn search(spec: &SearchSpec) -> Result<SearchReport, SearchError> {
    spec.validate()?;
    let start = Instant::now();
    let problem = spec.problem();
    let out = engine::run(&problem, spec.threads.max(1));
    let outcome = match out.witness {
        Some(u) => {
            let u = u.into_iter().map(LatticeVector::new).collect();
            let t = GridTiling::new(spec.n, spec.m, u).expect("search builds full tilings");
            debug_assert!(satisfies(&spec.mode, &t));
            Outcome::Witness(t)
        }
        None => Outcome::ExhaustedUnsat,
    };
    let value_range = spec.value_range();
    Ok(SearchReport {
        n: spec.n,
        m: spec.m,
        bound_complete: matches!(outcome, Outcome::Witness(_)) || value_range == spec.bound,
        outcome,
        nodes: out.tally.nodes,
        pruned: out.tally.pruned,
        elapsed: start.elapsed(),
        bound: spec.bound,
        value_range,
        first_violation: out.tally.first_violation,
    })
}

/// Looks for a tiling whose difference set is confined to its line family.
pub fn search_confined(spec: &SearchSpec) -> Result<SearchReport, SearchError> {
    match spec.mode {
        SearchMode::Confined(_) => search(spec),
        SearchMode::Realize(_) => Err(SearchError::WrongMode("confined")),
    }
}

/// Looks for a tiling whose difference set equals the target.
pub fn search_realize(spec: &SearchSpec) -> Result<SearchReport, SearchError> {
    match spec.mode {
        SearchMode::Realize(_) => search(spec),
        SearchMode::Confined(_) => Err(SearchError::WrongMode("realize")),
    }
}

/// Realize searches for m = 1, 2, ..., max_m, stopping at the first witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizeSweep {
    pub reports: Vec<SearchReport>,
}

impl RealizeSweep {
    pub fn witness(&self) -> Option<&GridTiling> {
        self.reports.last().and_then(|r| r.witness())
    }

    pub fn nodes(&self) -> u64 {
        self.reports.iter().map(|r| r.nodes).sum()
    }

    pub fn bound_complete(&self) -> bool {
        self.witness().is_some() || self.reports.iter().all(|r| r.bound_complete)
    }
}

pub fn realize_up_to(
    target: &LatticeSet,
    max_m: usize,
    bound: i64,
    threads: usize,
    symmetry: bool,
) -> Result<RealizeSweep, SearchError> {
    let mut reports = Vec::new();
    for m in 1..=max_m {
        let spec = SearchSpec::realize(target.clone(), m, bound)
            .with_threads(threads)
            .with_symmetry(symmetry);
        let report = search_realize(&spec)?;
        let done = report.witness().is_some();
        reports.push(report);
        if done {
            break;
        }
    }
    Ok(RealizeSweep { reports })
}

/// Whether a tiling's difference set meets the mode's requirement, computed
/// from scratch.
pub fn satisfies(mode: &SearchMode, t: &GridTiling) -> bool {
    let d = difference_set_tiling(t);
    match mode {
        SearchMode::Confined(lines) => is_confined(&d, lines),
        SearchMode::Realize(target) => &d == target,
    }
}

/// Calls `f` on every tiling with u_0 = 0 and translations in
/// [-bound, bound]^n, in lexicographic order. Returns the count.
pub fn enumerate_tilings<F>(n: usize, m: usize, bound: i64, mut f: F) -> Result<u64, SearchError>
where
    F: FnMut(&GridTiling),
{
    let spec = SearchSpec::confined(n, m, bound);
    spec.validate()?;
    let problem = Problem::new(n, m, bound, 0, |_| true, PredicateKind::All, &[]);
    let mut count = 0;
    engine::for_each_leaf(&problem, |u| {
        count += 1;
        let u = u.iter().map(|c| LatticeVector::new(c.clone())).collect();
        f(&GridTiling::new(n, m, u).expect("full assignment"));
    });
    Ok(count)
}

/// Every tiling that passes the search's pruning, including the symmetry
/// constraints when enabled. Exposed for cross-checking the DFS.
pub fn surviving_tilings(spec: &SearchSpec) -> Result<Vec<GridTiling>, SearchError> {
    spec.validate()?;
    let problem = spec.problem();
    let mut out = Vec::new();
    engine::for_each_leaf(&problem, |u| {
        let u = u.iter().map(|c| LatticeVector::new(c.clone())).collect();
        out.push(GridTiling::new(spec.n, spec.m, u).expect("full assignment"));
    });
    Ok(out)
}
