use std::collections::HashSet;
use std::time::Instant;

use super::{sorted_glue, SolveResult, SolveStats, SolverConfig, Work};
use crate::error::{Error, Result};
use crate::reuse::{Certificate, Flavor, ReuseInstance};
use crate::sas::{ActionId, Plan, State};

/// Iterative deepening over the number of glue steps. For each bound the
/// search walks the stored plan step by step and, before every step and at
/// the end, may insert an applicable glue action. Dead `(state, position,
/// remaining glue)` triples are remembered within one bound.
pub fn solve_planmod_brute(r: &ReuseInstance, config: &SolverConfig) -> Result<SolveResult> {
    if r.flavor() != Flavor::PlanMod {
        return Err(Error::invalid_arg(format!(
            "expected a planmod instance, got {}",
            r.flavor()
        )));
    }
    let started = Instant::now();
    let mut search = Interleaving {
        r,
        glue: sorted_glue(r),
        applicable_only: config.applicable_only,
        work: Work::new(config.work_limit),
        tried: 0,
        dead: HashSet::new(),
        inserted: Vec::new(),
    };
    let mut found = false;
    for bound in 0..=r.budget() {
        search.dead.clear();
        search.inserted.clear();
        if search.extend(r.instance().initial().clone(), 0, bound)? {
            found = true;
            break;
        }
    }
    let stats = SolveStats {
        states_visited: search.dead.len(),
        sequences_tried: search.tried,
        elapsed: started.elapsed(),
        ..Default::default()
    };
    if !found {
        return Ok(SolveResult::no(stats));
    }
    let (glue, positions) = search.inserted.iter().copied().unzip::<_, _, Vec<_>, Vec<_>>();
    Ok(SolveResult::yes(
        Certificate::PlanMod {
            glue: Plan(glue),
            positions,
        },
        stats,
    ))
}

struct Interleaving<'a> {
    r: &'a ReuseInstance,
    glue: Vec<ActionId>,
    applicable_only: bool,
    work: Work,
    tried: u64,
    dead: HashSet<(State, usize, usize)>,
    inserted: Vec<(ActionId, usize)>,
}

impl Interleaving<'_> {
    fn extend(&mut self, state: State, pos: usize, remaining: usize) -> Result<bool> {
        self.work.tick()?;
        self.tried += 1;
        let inst = self.r.instance();
        let c = self.r.case().plan.steps();
        if pos == c.len() && state.holds(inst.goal()) {
            return Ok(true);
        }
        let key = (state, pos, remaining);
        if self.dead.contains(&key) {
            return Ok(false);
        }
        let state = &key.0;
        if remaining > 0 {
            for idx in 0..self.glue.len() {
                let a = self.glue[idx];
                let mut next = state.clone();
                if !next.step(inst.action(a)) && self.applicable_only {
                    continue;
                }
                self.inserted.push((a, pos));
                if self.extend(next, pos, remaining - 1)? {
                    return Ok(true);
                }
                self.inserted.pop();
            }
        }
        if pos < c.len() {
            let mut next = state.clone();
            next.step(inst.action(c[pos]));
            if self.extend(next, pos + 1, remaining)? {
                return Ok(true);
            }
        }
        self.dead.insert(key);
        Ok(false)
    }
}
