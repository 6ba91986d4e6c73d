use std::time::Instant;

use super::bfs::{path, search};
use super::{SolveResult, SolveStats, SolverConfig, Work};
use crate::error::Result;
use crate::reuse::Certificate;
use crate::sas::{Plan, PlanningInstance};

/// Is there a plan of at most `k` steps? Breadth-first over applicable actions
/// of `A` from `I`.
pub fn solve_kstep_bfs(pi: &PlanningInstance, k: usize, config: &SolverConfig) -> Result<SolveResult> {
    let started = Instant::now();
    let actions: Vec<_> = pi.action_ids().collect();
    let mut work = Work::new(config.work_limit);
    let goal = pi.goal();
    let (table, hit) = search(pi, pi.initial(), &actions, k, |s| s.holds(goal), &mut work)?;
    let stats = SolveStats {
        states_visited: table.visit_count(),
        bfs_visits: vec![table.visit_count()],
        elapsed: started.elapsed(),
        ..Default::default()
    };
    Ok(match hit {
        Some(idx) => SolveResult::yes(
            Certificate::KStep {
                plan: Plan(path(&table, idx)),
            },
            stats,
        ),
        None => SolveResult::no(stats),
    })
}
