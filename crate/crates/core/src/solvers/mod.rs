//! Deciders for every reuse flavor.
//!
//! The exhaustive solvers are ground truth at desk scale; the BFS-based ones
//! (`solve_casemod_fpt_a`, `solve_casemod_fpt_vd`, `solve_infix_general`,
//! `solve_kstep_bfs`) only ever explore states reachable through glue actions.
//! All of them search applicable actions only: a skipped step never changes
//! the state, so any witness containing one shrinks to a witness without it.
//!
//! Every YES comes with a certificate that the matching verifier in
//! [`crate::reuse`] accepts. Ties are broken by shortest glue, then
//! lexicographically by action id, then by smallest split.

mod bfs;
mod casemod;
mod infix;
mod kstep;
mod planmod;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::Serialize;

pub use bfs::{ordered_subset_bound, reachable_states, ReachabilityTable};
pub use casemod::{
    solve_casemod_brute, solve_casemod_fpt_a, solve_casemod_fpt_vd, solve_casemod_star,
    CaseModSolver,
};
pub use infix::solve_infix_general;
pub use kstep::solve_kstep_bfs;
pub use planmod::solve_planmod_brute;

use crate::error::{Error, Result};
use crate::reuse::{Certificate, Flavor, ReuseInstance};
use crate::sas::{ActionId, PlanningInstance};

pub const DEFAULT_WORK_LIMIT: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Cap on expanded search nodes (states or sequence prefixes).
    pub work_limit: u64,
    /// Restrict exhaustive search to steps whose precondition holds.
    pub applicable_only: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            work_limit: DEFAULT_WORK_LIMIT,
            applicable_only: true,
        }
    }
}

impl SolverConfig {
    pub fn with_limit(limit: u64) -> Self {
        SolverConfig {
            work_limit: limit,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    /// Distinct states stored across all searches of the run.
    pub states_visited: usize,
    /// Candidate glue sequences, prefixes included, examined by exhaustive
    /// search.
    pub sequences_tried: u64,
    /// Visit count of each breadth-first search, in the order they ran.
    pub bfs_visits: Vec<usize>,
    pub elapsed: Duration,
}

impl SolveStats {
    fn absorb(&mut self, other: &SolveStats) {
        self.states_visited += other.states_visited;
        self.sequences_tried += other.sequences_tried;
        self.bfs_visits.extend_from_slice(&other.bfs_visits);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub answer: bool,
    pub certificate: Option<Certificate>,
    pub stats: SolveStats,
}

impl SolveResult {
    fn yes(certificate: Certificate, stats: SolveStats) -> Self {
        SolveResult {
            answer: true,
            certificate: Some(certificate),
            stats,
        }
    }

    fn no(stats: SolveStats) -> Self {
        SolveResult {
            answer: false,
            certificate: None,
            stats,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Brute,
    FptA,
    FptVd,
    Auto,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Brute => "brute",
            Algorithm::FptA => "fpt-a",
            Algorithm::FptVd => "fpt-vd",
            Algorithm::Auto => "auto",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Algorithm::Brute,
            Algorithm::FptA,
            Algorithm::FptVd,
            Algorithm::Auto,
        ]
        .into_iter()
        .find(|a| a.as_str() == s)
        .ok_or_else(|| Error::invalid_arg(format!("unknown algorithm `{s}`")))
    }
}

/// Decides `r` according to its flavor. `auto` picks the deduplicating
/// fixed-parameter search for `casemod`/`casemod-star` and the exhaustive
/// search otherwise.
pub fn solve(r: &ReuseInstance, algo: Algorithm, config: &SolverConfig) -> Result<SolveResult> {
    let flavor = r.flavor();
    let inner: CaseModSolver = match algo {
        Algorithm::Brute => solve_casemod_brute,
        Algorithm::FptA => solve_casemod_fpt_a,
        Algorithm::FptVd | Algorithm::Auto => solve_casemod_fpt_vd,
    };
    if matches!(algo, Algorithm::FptA | Algorithm::FptVd)
        && !matches!(flavor, Flavor::CaseMod | Flavor::CaseModStar)
    {
        return Err(Error::invalid_arg(format!(
            "algorithm {algo} only applies to casemod and casemod-star, not {flavor}"
        )));
    }
    match flavor {
        Flavor::CaseMod => inner(r, config),
        Flavor::CaseModStar => solve_casemod_star(r, inner, config),
        Flavor::InfixGeneral => solve_infix_general(r, config),
        Flavor::PlanMod => solve_planmod_brute(r, config),
        Flavor::KStep => solve_kstep_bfs(r.instance(), r.budget(), config),
    }
}

/// One representative per structural `(pre, post)` class, first occurrence
/// wins.
pub fn dedupe_actions(pi: &PlanningInstance, actions: &[ActionId]) -> Vec<ActionId> {
    let mut kept: Vec<ActionId> = Vec::new();
    for &a in actions {
        let action = pi.action(a);
        if !kept.iter().any(|&k| pi.action(k).same_effect(action)) {
            kept.push(a);
        }
    }
    kept
}

pub(crate) struct Work {
    limit: u64,
    used: u64,
}

impl Work {
    pub(crate) fn new(limit: u64) -> Self {
        Work { limit, used: 0 }
    }

    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::ResourceLimit { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

/// `A'` in ascending id order, which fixes the lexicographic tie-break.
pub(crate) fn sorted_glue(r: &ReuseInstance) -> Vec<ActionId> {
    let mut glue = r.glue_actions().to_vec();
    glue.sort();
    glue
}
