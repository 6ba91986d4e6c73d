mod common;

use casemod_core::examples::running_reuse;
use casemod_core::reuse::verify_kstep;
use casemod_core::solvers::{dedupe_actions, ordered_subset_bound, reachable_states, solve_kstep_bfs};
use casemod_core::{
    compute_parameters, solve, verify, Action, ActionId, Algorithm, Case, Certificate, Flavor, Infix,
    PartialState, Plan, PlanningInstance, ReuseInstance, ReuseQuery, SolverConfig, State, Variable,
};
use proptest::prelude::*;

use common::{casemod_suite, random_casemod, small_params};

fn answer(r: &ReuseInstance, algo: Algorithm) -> bool {
    solve(r, algo, &SolverConfig::default()).unwrap().answer
}

/// All sequences over `alphabet` of length at most `max`.
fn sequences(alphabet: &[ActionId], max: usize) -> Vec<Vec<ActionId>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for seq in &frontier {
            for &a in alphabet {
                let mut s: Vec<ActionId> = seq.clone();
                s.push(a);
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Non-decreasing insertion points in `0..=l`, one per glue step.
fn positions(len: usize, l: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in positions(len - 1, l) {
        let lo = rest.last().copied().unwrap_or(0);
        for p in lo..=l {
            let mut v = rest.clone();
            v.push(p);
            out.push(v);
        }
    }
    out
}

/// Decides `r` by enumerating every certificate and asking the verifier.
fn certificate_oracle(r: &ReuseInstance) -> bool {
    let l = r.case().plan.len();
    let glue_set = r.glue_actions().to_vec();
    for g in sequences(&glue_set, r.budget()) {
        let glue = Plan(g.clone());
        let found = match r.flavor() {
            Flavor::CaseMod => (0..=g.len()).any(|split| {
                verify(r, &Certificate::CaseMod { glue: glue.clone(), split }).unwrap()
            }),
            Flavor::CaseModStar | Flavor::InfixGeneral => (0..=g.len()).any(|split| {
                (0..=l).any(|start| {
                    (start..=l).any(|end| {
                        let infix = Infix::new(start, end);
                        let cert = if r.flavor() == Flavor::CaseModStar {
                            Certificate::CaseModStar { glue: glue.clone(), split, infix }
                        } else {
                            Certificate::InfixGeneral { glue: glue.clone(), split, infix }
                        };
                        verify(r, &cert).unwrap()
                    })
                })
            }),
            Flavor::PlanMod => positions(g.len(), l).into_iter().any(|positions| {
                verify(r, &Certificate::PlanMod { glue: glue.clone(), positions }).unwrap()
            }),
            Flavor::KStep => unreachable!("k-step is checked separately"),
        };
        if found {
            return true;
        }
    }
    false
}

#[test]
fn every_flavor_matches_certificate_enumeration() {
    let params = casemod_core::reductions::SizeParams { budget: 3, ..small_params() };
    for seed in 0..150 {
        let r = random_casemod(seed, &params);
        for flavor in [Flavor::CaseMod, Flavor::CaseModStar, Flavor::InfixGeneral, Flavor::PlanMod] {
            let r = r.with_flavor(flavor);
            assert_eq!(answer(&r, Algorithm::Auto), certificate_oracle(&r), "seed {seed}, {flavor}");
            if flavor == Flavor::CaseModStar {
                let strict = r.with_strict_infix(true);
                assert_eq!(answer(&strict, Algorithm::Auto), certificate_oracle(&strict), "seed {seed}, strict");
            }
        }
    }
}

#[test]
fn kstep_matches_plan_enumeration() {
    for r in casemod_suite(0..200) {
        let pi = r.instance();
        let all: Vec<ActionId> = pi.action_ids().collect();
        let k = r.budget().min(3);
        let expected = sequences(&all, k)
            .into_iter()
            .any(|p| verify_kstep(pi, &Plan(p), k).unwrap());
        let res = solve_kstep_bfs(pi, k, &SolverConfig::default()).unwrap();
        assert_eq!(res.answer, expected);
        if let Some(Certificate::KStep { plan }) = &res.certificate {
            assert!(verify_kstep(pi, plan, k).unwrap());
        }
    }
}

#[test]
fn fixed_parameter_search_ignores_inapplicable_steps() {
    let exhaustive = SolverConfig { applicable_only: false, ..SolverConfig::default() };
    for r in casemod_suite(0..200) {
        let pruned = solve(&r, Algorithm::Brute, &SolverConfig::default()).unwrap();
        let full = solve(&r, Algorithm::Brute, &exhaustive).unwrap();
        assert_eq!(pruned.answer, full.answer);
        assert!(pruned.stats.sequences_tried <= full.stats.sequences_tried);
    }
}

#[test]
fn dedupe_respects_the_value_bound() {
    for r in casemod_suite(0..300) {
        let p = compute_parameters(&r);
        assert!(p.k_a_distinct as u128 <= p.distinct_action_bound());
        assert!(p.k_a_distinct <= p.k_a);
        assert!(p.k_v <= r.instance().num_vars());
    }
}

#[test]
fn reachable_sets_respect_the_ordered_subset_bound() {
    for r in casemod_suite(0..300) {
        let pi = r.instance();
        let glue = r.glue_actions();
        let k = dedupe_actions(pi, glue).len();
        let table = reachable_states(pi, pi.initial(), glue, r.budget());
        assert!(table.visit_count() as u128 <= ordered_subset_bound(k));
        for (s, d) in table.entries() {
            let path = table.path_to(s).unwrap();
            assert_eq!(path.len(), d);
            assert_eq!(&pi.run(pi.initial(), &path), s);
        }
    }
}

#[test]
fn ordered_subset_bound_small_values() {
    let expected = [1u128, 2, 5, 16, 65, 326];
    for (k, &e) in expected.iter().enumerate() {
        assert_eq!(ordered_subset_bound(k), e);
    }
}

/// `G = {v=0}`, stored plan `(∅ ⇒ v=1)`, no glue, budget 0. Dropping the
/// whole stored plan solves it; executing it cannot.
fn dropped_plan_instance() -> ReuseInstance {
    let pi = PlanningInstance::new(
        vec![Variable::new("v", 2)],
        State::new(vec![0]),
        PartialState::from_pairs([(0, 0)]).unwrap(),
        vec![Action::new("set", PartialState::new(), PartialState::from_pairs([(0, 1)]).unwrap())],
    )
    .unwrap();
    ReuseInstance::new(
        pi,
        Case::new(State::new(vec![0]), PartialState::new(), Plan(vec![ActionId(0)])),
        ReuseQuery::new(Vec::new(), 0, Flavor::InfixGeneral),
    )
    .unwrap()
}

#[test]
fn infix_general_does_not_imply_planmod() {
    let r = dropped_plan_instance();
    let res = solve(&r, Algorithm::Auto, &SolverConfig::default()).unwrap();
    let Some(Certificate::InfixGeneral { glue, infix, .. }) = res.certificate else {
        panic!("expected an infix certificate, got {res:?}");
    };
    assert!(glue.is_empty() && infix.is_empty());
    assert!(!answer(&r.with_flavor(Flavor::PlanMod), Algorithm::Auto));
    assert!(answer(&r.with_flavor(Flavor::CaseModStar), Algorithm::Auto));
    assert!(!answer(&r.with_flavor(Flavor::CaseModStar).with_strict_infix(true), Algorithm::Auto));
}

#[test]
fn certificates_from_every_algorithm_verify() {
    for r in casemod_suite(0..300) {
        for algo in [Algorithm::Brute, Algorithm::FptA, Algorithm::FptVd] {
            let res = solve(&r, algo, &SolverConfig::default()).unwrap();
            match &res.certificate {
                Some(c) => {
                    assert!(res.answer);
                    assert!(verify(&r, c).unwrap());
                    assert!(c.glue().len() <= r.budget());
                }
                None => assert!(!res.answer),
            }
        }
    }
}

#[test]
fn work_limit_is_reported() {
    let r = running_reuse(Flavor::PlanMod).with_budget(6);
    let err = solve(&r, Algorithm::Brute, &SolverConfig::with_limit(3)).unwrap_err();
    assert!(matches!(err, casemod_core::Error::ResourceLimit { .. }));
}

#[test]
fn fixed_parameter_algorithms_reject_other_flavors() {
    let r = running_reuse(Flavor::PlanMod);
    assert!(solve(&r, Algorithm::FptA, &SolverConfig::default()).is_err());
    assert!(solve(&r, Algorithm::FptVd, &SolverConfig::default()).is_err());
    assert!(answer(&r, Algorithm::Brute));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn larger_budget_never_hurts(seed in 0u64..100_000) {
        let r = random_casemod(seed, &small_params());
        if answer(&r, Algorithm::FptVd) {
            prop_assert!(answer(&r.with_budget(r.budget() + 1), Algorithm::FptVd));
        }
    }

    #[test]
    fn more_glue_actions_never_hurt(seed in 0u64..100_000) {
        let r = random_casemod(seed, &small_params());
        let all: Vec<ActionId> = r.instance().action_ids().collect();
        let wider = r.with_glue(all).unwrap();
        if answer(&r, Algorithm::FptA) {
            prop_assert!(answer(&wider, Algorithm::FptA));
        }
    }

    #[test]
    fn casemod_certificates_carry_over(seed in 0u64..100_000) {
        let r = random_casemod(seed, &small_params());
        let res = solve(&r, Algorithm::Brute, &SolverConfig::default()).unwrap();
        if let Some(Certificate::CaseMod { glue, split }) = res.certificate {
            let l = r.case().plan.len();
            let star = Certificate::CaseModStar { glue: glue.clone(), split, infix: Infix::full(l) };
            let same = Certificate::CaseMod { glue, split };
            let star_ok = verify(&r.with_flavor(Flavor::CaseModStar), &star).unwrap();
            let wider_ok = verify(&r.with_budget(r.budget() + 1), &same).unwrap();
            prop_assert!(star_ok);
            prop_assert!(wider_ok);
        }
    }

    #[test]
    fn solvers_agree(seed in 0u64..100_000) {
        let r = random_casemod(seed, &small_params());
        let brute = answer(&r, Algorithm::Brute);
        prop_assert_eq!(brute, answer(&r, Algorithm::FptA));
        prop_assert_eq!(brute, answer(&r, Algorithm::FptVd));
    }
}
