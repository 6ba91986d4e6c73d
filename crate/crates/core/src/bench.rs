//! Benchmark suites that probe how solver effort depends on the parameters.
//!
//! Rows go to CSV with a fixed header, one row per solver run.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::reductions::{gen_random_source, reduce_pclique_to_lv, SizeParams, SourceInstance, SourceKind};
use crate::reuse::{compute_parameters, Case, Flavor, ReuseInstance, ReuseQuery};
use crate::sas::{Action, ActionId, PartialState, Plan, PlanningInstance, State, Variable};
use crate::solvers::{solve, Algorithm, SolveResult, SolverConfig};

/// Work limit for the brute-force runs of the hard-flavors suite.
pub const HARD_FLAVORS_LIMIT: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    FptAScaling,
    VdDedupe,
    HardFlavors,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::FptAScaling, Suite::VdDedupe, Suite::HardFlavors];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::FptAScaling => "fpt-a-scaling",
            Suite::VdDedupe => "vd-dedupe",
            Suite::HardFlavors => "hard-flavors",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::invalid_arg(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub suite: String,
    pub seed: u64,
    pub algorithm: String,
    /// `|V|` for the scaling suites, the clique size `k` for hard-flavors.
    pub instance_size: usize,
    /// The parameter held fixed or grown: `k_A` or `k_A` after dedupe, or
    /// the budget `M`.
    pub parameter_value: usize,
    pub num_actions: usize,
    pub states_visited: usize,
    pub max_bfs_visits: usize,
    pub sequences_tried: Option<u64>,
    pub limit_hit: bool,
    pub answer: Option<bool>,
    pub elapsed_us: u128,
}

fn row(suite: Suite, seed: u64, algo: Algorithm, r: &ReuseInstance, size: usize, param: usize) -> Result<BenchRow> {
    let config = match algo {
        Algorithm::Brute => SolverConfig::with_limit(HARD_FLAVORS_LIMIT),
        _ => SolverConfig::default(),
    };
    let started = Instant::now();
    let outcome = solve(r, algo, &config);
    let elapsed_us = started.elapsed().as_micros();
    let (result, limit_hit): (Option<SolveResult>, bool) = match outcome {
        Ok(res) => (Some(res), false),
        Err(Error::ResourceLimit { .. }) => (None, true),
        Err(e) => return Err(e),
    };
    let stats = result.as_ref().map(|r| r.stats.clone()).unwrap_or_default();
    Ok(BenchRow {
        suite: suite.to_string(),
        seed,
        algorithm: algo.to_string(),
        instance_size: size,
        parameter_value: param,
        num_actions: r.instance().actions().len(),
        states_visited: stats.states_visited,
        max_bfs_visits: stats.bfs_visits.iter().copied().max().unwrap_or(0),
        // At the limit every unit of work was one candidate.
        sequences_tried: match (algo, limit_hit) {
            (Algorithm::Brute, true) => Some(HARD_FLAVORS_LIMIT),
            (Algorithm::Brute, false) => Some(stats.sequences_tried),
            _ => None,
        },
        limit_hit,
        answer: result.map(|r| r.answer),
        elapsed_us,
    })
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<Vec<BenchRow>> {
    match suite {
        Suite::FptAScaling => [10, 20, 40]
            .into_iter()
            .map(|n| {
                let r = scaling_instance(n, seed)?;
                row(suite, seed, Algorithm::FptA, &r, n, r.glue_actions().len())
            })
            .collect(),
        Suite::VdDedupe => {
            let mut rows = Vec::new();
            let params = SizeParams { size: 4, ..SizeParams::default() };
            for offset in 0..10 {
                let SourceInstance::Reuse(r) = gen_random_source(SourceKind::CaseMod, seed + offset, &params)? else {
                    unreachable!("casemod kind yields a reuse instance")
                };
                let r = with_duplicated_glue(&r, 3)?;
                let report = compute_parameters(&r);
                let n = r.instance().num_vars();
                rows.push(row(suite, seed + offset, Algorithm::FptA, &r, n, report.k_a)?);
                rows.push(row(suite, seed + offset, Algorithm::FptVd, &r, n, report.k_a_distinct)?);
            }
            Ok(rows)
        }
        Suite::HardFlavors => {
            let mut rows = Vec::new();
            for k in [2, 3, 4] {
                let params = SizeParams { k, size: 2, density: 0.5, ..SizeParams::default() };
                let SourceInstance::PClique(g) = gen_random_source(SourceKind::PClique, seed, &params)? else {
                    unreachable!("pclique kind yields a graph")
                };
                let r = reduce_pclique_to_lv(&g)?;
                rows.push(row(suite, seed, Algorithm::Brute, &r, k, r.budget())?);
                rows.push(row(suite, seed, Algorithm::FptA, &r, k, r.budget())?);
            }
            Ok(rows)
        }
    }
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)
            .map_err(|e| Error::invalid_arg(format!("writing csv: {e}")))?;
    }
    w.flush()
        .map_err(|e| Error::invalid_arg(format!("writing csv: {e}")))?;
    Ok(())
}

/// `n` Boolean variables, `2n` actions of which only the first two are glue:
/// `on.1` sets `b1`, `on.2` needs `b1` and sets `b2`. The stored plan walks
/// from `J = {b1}` over the other actions.
pub fn scaling_instance(n: usize, seed: u64) -> Result<ReuseInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
    let vars: Vec<Variable> = (0..n).map(|i| Variable::new(format!("b{}", i + 1), 2)).collect();
    let one = |v: usize| PartialState::from_pairs([(v, 1)]).expect("single binding");
    let mut actions = vec![
        Action::new("on.1", PartialState::new(), one(0)),
        Action::new("on.2", one(0), one(1)),
    ];
    for i in 2..2 * n {
        let mut vs: Vec<usize> = (2..n).collect();
        vs.shuffle(&mut rng);
        let pre = vs[..2].iter().map(|&v| (v, rng.gen_range(0..2))).collect();
        let post = vs[2..4].iter().map(|&v| (v, rng.gen_range(0..2))).collect();
        actions.push(Action::new(format!("x.{}", i + 1), pre, post));
    }
    let initial = State::new(vec![0; n]);
    let mut j = initial.clone();
    j.step(&actions[0]);
    let mut s = j.clone();
    let mut plan = Vec::new();
    for a in 2..actions.len() {
        if plan.len() == 3 {
            break;
        }
        if s.step(&actions[a]) {
            plan.push(ActionId(a));
        }
    }
    let pi = PlanningInstance::new(vars, initial, one(1), actions)?;
    ReuseInstance::new(
        pi,
        Case::new(j, PartialState::new(), Plan(plan)),
        ReuseQuery::new(vec![ActionId(0), ActionId(1)], 4, Flavor::CaseMod),
    )
}

/// Adds `copies` renamed copies of every glue action to both `A` and `A'`.
pub fn with_duplicated_glue(r: &ReuseInstance, copies: usize) -> Result<ReuseInstance> {
    let pi = r.instance();
    let mut actions = pi.actions().to_vec();
    let mut glue = r.glue_actions().to_vec();
    for copy in 1..=copies {
        for &a in r.glue_actions() {
            let mut dup = pi.action(a).clone();
            dup.name = format!("{}.copy{copy}", dup.name);
            glue.push(ActionId(actions.len()));
            actions.push(dup);
        }
    }
    let inst = PlanningInstance::new(
        pi.variables().to_vec(),
        pi.initial().clone(),
        pi.goal().clone(),
        actions,
    )?;
    let mut query = r.query().clone();
    query.glue_actions = glue;
    ReuseInstance::new(inst, r.case().clone(), query)
}
