use std::time::Instant;

use super::bfs::{path, search};
use super::{dedupe_actions, sorted_glue, SolveResult, SolveStats, SolverConfig, Work};
use crate::error::{Error, Result};
use crate::reuse::{Case, Certificate, Flavor, Infix, ReuseInstance};
use crate::sas::{ActionId, Plan, State};

/// Signature shared by the `casemod` deciders, so `casemod-star` can run any
/// of them per infix.
pub type CaseModSolver = fn(&ReuseInstance, &SolverConfig) -> Result<SolveResult>;

fn expect_flavor(r: &ReuseInstance, flavor: Flavor) -> Result<()> {
    if r.flavor() != flavor {
        return Err(Error::invalid_arg(format!(
            "expected a {flavor} instance, got {}",
            r.flavor()
        )));
    }
    Ok(())
}

/// Two glue searches: `I` to `J` via `A'`, then `J[c]` to any goal state with
/// the remaining budget. Only states reachable through `A'` are touched, so
/// the work depends on `|A'|`, not on the size of `Π`.
pub fn solve_casemod_fpt_a(r: &ReuseInstance, config: &SolverConfig) -> Result<SolveResult> {
    expect_flavor(r, Flavor::CaseMod)?;
    fpt_with_glue(r, &sorted_glue(r), config)
}

/// Deduplicates `A'` structurally, then runs the same search as
/// [`solve_casemod_fpt_a`].
pub fn solve_casemod_fpt_vd(r: &ReuseInstance, config: &SolverConfig) -> Result<SolveResult> {
    expect_flavor(r, Flavor::CaseMod)?;
    let mut glue = dedupe_actions(r.instance(), r.glue_actions());
    glue.sort();
    fpt_with_glue(r, &glue, config)
}

fn fpt_with_glue(r: &ReuseInstance, glue: &[ActionId], config: &SolverConfig) -> Result<SolveResult> {
    let started = Instant::now();
    let inst = r.instance();
    let budget = r.budget();
    let mut work = Work::new(config.work_limit);
    let mut stats = SolveStats::default();

    let j = &r.case().stored_initial;
    let (to_case, hit) = search(inst, inst.initial(), glue, budget, |s| s == j, &mut work)?;
    stats.bfs_visits.push(to_case.visit_count());
    stats.states_visited += to_case.visit_count();
    let Some(hit) = hit else {
        stats.elapsed = started.elapsed();
        return Ok(SolveResult::no(stats));
    };
    let prefix = path(&to_case, hit);

    let after_case = r.case_end_state();
    let goal = inst.goal();
    let remaining = budget - prefix.len();
    let (to_goal, hit) = search(inst, &after_case, glue, remaining, |s| s.holds(goal), &mut work)?;
    stats.bfs_visits.push(to_goal.visit_count());
    stats.states_visited += to_goal.visit_count();
    stats.elapsed = started.elapsed();
    let Some(hit) = hit else {
        return Ok(SolveResult::no(stats));
    };
    let suffix = path(&to_goal, hit);
    let split = prefix.len();
    let glue = Plan::concat(&[&prefix, &suffix]);
    Ok(SolveResult::yes(Certificate::CaseMod { glue, split }, stats))
}

/// Enumerates every glue sequence over `A'` of length `m ≤ M` (shortest
/// first) and every split `i`, checking each spliced plan directly. With
/// `applicable_only`, branches that apply a step whose precondition fails are
/// pruned.
pub fn solve_casemod_brute(r: &ReuseInstance, config: &SolverConfig) -> Result<SolveResult> {
    expect_flavor(r, Flavor::CaseMod)?;
    let started = Instant::now();
    let mut search = BruteSearch {
        r,
        glue: sorted_glue(r),
        after_case: r.case_end_state(),
        applicable_only: config.applicable_only,
        work: Work::new(config.work_limit),
        tried: 0,
        seq: Vec::new(),
    };
    let mut found = None;
    for m in 0..=r.budget() {
        let mut best: Option<(Vec<ActionId>, usize)> = None;
        for split in 0..=m {
            if let Some(seq) = search.run(m, split)? {
                if best.as_ref().is_none_or(|(b, _)| seq < *b) {
                    best = Some((seq, split));
                }
            }
        }
        if best.is_some() {
            found = best;
            break;
        }
    }
    let stats = SolveStats {
        sequences_tried: search.tried,
        elapsed: started.elapsed(),
        ..Default::default()
    };
    Ok(match found {
        Some((glue, split)) => SolveResult::yes(
            Certificate::CaseMod {
                glue: Plan(glue),
                split,
            },
            stats,
        ),
        None => SolveResult::no(stats),
    })
}

struct BruteSearch<'a> {
    r: &'a ReuseInstance,
    glue: Vec<ActionId>,
    after_case: State,
    applicable_only: bool,
    work: Work,
    tried: u64,
    seq: Vec<ActionId>,
}

impl BruteSearch<'_> {
    /// Lexicographically first sequence of exactly `m` glue steps that works
    /// with the case plan after step `split`.
    fn run(&mut self, m: usize, split: usize) -> Result<Option<Vec<ActionId>>> {
        self.seq.clear();
        let start = self.r.instance().initial().clone();
        Ok(self
            .extend(start, false, m, split)?
            .then(|| self.seq.clone()))
    }

    fn extend(&mut self, state: State, crossed: bool, m: usize, split: usize) -> Result<bool> {
        self.work.tick()?;
        self.tried += 1;
        let (state, crossed) = if !crossed && self.seq.len() == split {
            if state != self.r.case().stored_initial {
                return Ok(false);
            }
            (self.after_case.clone(), true)
        } else {
            (state, crossed)
        };
        if self.seq.len() == m {
            return Ok(state.holds(self.r.instance().goal()));
        }
        for idx in 0..self.glue.len() {
            let a = self.glue[idx];
            let action = self.r.instance().action(a);
            let mut next = state.clone();
            if !next.step(action) && self.applicable_only {
                continue;
            }
            self.seq.push(a);
            if self.extend(next, crossed, m, split)? {
                return Ok(true);
            }
            self.seq.pop();
        }
        Ok(false)
    }
}

/// Tries every infix `c[start..end]` of the stored plan (the empty ones too,
/// unless the query is strict) as a `casemod` instance whose stored initial
/// state is `J[c[..start]]`, and keeps the answer with the shortest glue.
pub fn solve_casemod_star(
    r: &ReuseInstance,
    inner: CaseModSolver,
    config: &SolverConfig,
) -> Result<SolveResult> {
    expect_flavor(r, Flavor::CaseModStar)?;
    let started = Instant::now();
    let inst = r.instance();
    let c = r.case().plan.steps();
    let base = r.with_flavor(Flavor::CaseMod);
    let mut stats = SolveStats::default();
    let mut best: Option<(Plan, usize, Infix)> = None;

    let mut landing = r.case().stored_initial.clone();
    for start in 0..=c.len() {
        if start > 0 {
            landing.step(inst.action(c[start - 1]));
        }
        for end in start..=c.len() {
            if start == end && r.query().strict_infix && !c.is_empty() {
                continue;
            }
            let case = Case::new(
                landing.clone(),
                r.case().stored_goal.clone(),
                Plan(c[start..end].to_vec()),
            );
            let derived = base.with_case(case)?;
            let result = inner(&derived, config)?;
            stats.absorb(&result.stats);
            if let Some(Certificate::CaseMod { glue, split }) = result.certificate {
                if best.as_ref().is_none_or(|(g, _, _)| glue.len() < g.len()) {
                    best = Some((glue, split, Infix::new(start, end)));
                }
            }
        }
    }
    stats.elapsed = started.elapsed();
    Ok(match best {
        Some((glue, split, infix)) => {
            SolveResult::yes(Certificate::CaseModStar { glue, split, infix }, stats)
        }
        None => SolveResult::no(stats),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::running_reuse;
    use crate::reuse::{verify, Case};
    use crate::sas::PartialState;

    fn ids(v: &[usize]) -> Plan {
        Plan(v.iter().map(|&i| ActionId(i)).collect())
    }

    #[test]
    fn running_example_all_solvers() {
        let r = running_reuse(Flavor::CaseMod);
        let expected = Certificate::CaseMod { glue: ids(&[2, 3]), split: 2 };
        for solver in [solve_casemod_fpt_a, solve_casemod_fpt_vd, solve_casemod_brute] {
            let res = solver(&r, &SolverConfig::default()).unwrap();
            assert!(res.answer);
            assert_eq!(res.certificate.as_ref(), Some(&expected));
            assert!(verify(&r, &expected).unwrap());
        }
        let fpt = solve_casemod_fpt_a(&r, &SolverConfig::default()).unwrap();
        // d1 = 2, J[c] = (2,1,0) is already a goal state
        assert_eq!(fpt.stats.bfs_visits, vec![3, 1]);
    }

    #[test]
    fn budget_one_is_no() {
        let r = running_reuse(Flavor::CaseMod).with_budget(1);
        for solver in [solve_casemod_fpt_a, solve_casemod_fpt_vd, solve_casemod_brute] {
            assert!(!solver(&r, &SolverConfig::default()).unwrap().answer);
        }
    }

    #[test]
    fn empty_glue_and_mismatched_case_is_no() {
        let r = running_reuse(Flavor::CaseMod).with_glue(vec![]).unwrap();
        for solver in [solve_casemod_fpt_a, solve_casemod_brute] {
            assert!(!solver(&r, &SolverConfig::default()).unwrap().answer);
        }
    }

    #[test]
    fn trivially_solved_with_zero_budget() {
        let r = running_reuse(Flavor::CaseMod);
        let pi = r
            .instance()
            .with_initial_and_goal(State::new(vec![2, 0, 0]), r.instance().goal().clone())
            .unwrap();
        let r = crate::reuse::ReuseInstance::new(
            pi.clone(),
            Case::empty_at(pi.initial().clone()),
            crate::reuse::ReuseQuery::new(vec![], 0, Flavor::CaseMod),
        )
        .unwrap();
        let res = solve_casemod_fpt_a(&r, &SolverConfig::default()).unwrap();
        assert_eq!(
            res.certificate,
            Some(Certificate::CaseMod { glue: Plan::empty(), split: 0 })
        );
    }

    #[test]
    fn brute_hits_work_limit() {
        let r = running_reuse(Flavor::CaseMod).with_glue((0..4).map(ActionId).collect()).unwrap();
        let r = r.with_case(Case::new(State::new(vec![1, 1, 1]), PartialState::new(), Plan::empty())).unwrap();
        let err = solve_casemod_brute(&r.with_budget(3), &SolverConfig::with_limit(5)).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { limit: 5 }));
    }

    #[test]
    fn casemod_star_prefers_the_full_infix() {
        let r = running_reuse(Flavor::CaseModStar);
        for inner in [solve_casemod_brute as CaseModSolver, solve_casemod_fpt_a, solve_casemod_fpt_vd] {
            let res = solve_casemod_star(&r, inner, &SolverConfig::default()).unwrap();
            let cert = res.certificate.unwrap();
            assert_eq!(
                cert,
                Certificate::CaseModStar { glue: ids(&[2, 3]), split: 2, infix: Infix::full(2) }
            );
            assert!(verify(&r, &cert).unwrap());
        }
    }

    #[test]
    fn flavor_mismatch_is_an_error() {
        let r = running_reuse(Flavor::PlanMod);
        assert!(solve_casemod_fpt_a(&r, &SolverConfig::default()).is_err());
        assert!(solve_casemod_star(&r, solve_casemod_brute, &SolverConfig::default()).is_err());
    }
}
