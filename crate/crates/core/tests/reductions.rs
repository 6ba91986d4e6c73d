mod common;

use std::collections::HashSet;

use casemod_core::examples::{running_example, running_reuse};
use casemod_core::reductions::{
    gen_random_source, oracle_lcs, oracle_pclique, oracle_wsat, reduce_bool_to_d, reduce_kstep_to_l,
    reduce_l_to_kstep, reduce_lcs_to_v, reduce_pclique_to_lv, reduce_wsat_to_planmod, CircuitInstance,
    LcsInstance, PartitionedCliqueInstance, SizeParams, SourceInstance, SourceKind, DEFAULT_LCS_CAP,
};
use casemod_core::solvers::solve_kstep_bfs;
use casemod_core::{
    compute_parameters, serialize_instance, solve, Algorithm, Flavor, PartialState, SolverConfig, State,
};

fn yes(r: &casemod_core::ReuseInstance) -> bool {
    solve(r, Algorithm::Auto, &SolverConfig::default()).unwrap().answer
}

fn golden(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn edge_graph(with_edge: bool) -> PartitionedCliqueInstance {
    let edges = if with_edge { vec![(0, 1)] } else { Vec::new() };
    PartitionedCliqueInstance::new(vec!["u".into(), "w".into()], vec![vec![0], vec![1]], edges).unwrap()
}

#[test]
fn pclique_single_edge() {
    let r = reduce_pclique_to_lv(&edge_graph(true)).unwrap();
    assert_eq!(r.budget(), 5);
    assert!(yes(&r));
    assert_eq!(serialize_instance(&r), golden("gadget_pclique_edge.cm"));
    assert!(!yes(&reduce_pclique_to_lv(&edge_graph(false)).unwrap()));
}

#[test]
fn pclique_triangle_in_singleton_parts() {
    let g = PartitionedCliqueInstance::parse("part a\npart b\npart c\nedge a b\nedge b c\nedge a c\n").unwrap();
    assert!(oracle_pclique(&g));
    let r = reduce_pclique_to_lv(&g).unwrap();
    assert_eq!(r.budget(), 2 * 3 + 3);
    assert!(yes(&r));
    let names: Vec<&str> = r.instance().variables().iter().map(|v| v.name.as_str()).collect();
    assert_eq!(names, ["x.1", "x.2", "x.3", "y.1.2", "y.1.3", "y.2.3"]);
    assert!(r.instance().action_by_name("check.2.3.b.c").is_some());
    assert!(r.instance().action_by_name("guess.1.a").is_some());
}

#[test]
fn lcs_two_strings() {
    let l = LcsInstance::from_strs(&["ab", "ba"], 1).unwrap();
    let r = reduce_lcs_to_v(&l).unwrap();
    assert_eq!(r.instance().num_vars(), 7);
    // M = sum |X_i| + (k+1) m + k
    assert_eq!(r.budget(), 4 + 3 + 2);
    assert!(yes(&r));
    assert_eq!(serialize_instance(&r), golden("gadget_lcs_ab_ba.cm"));
    for name in ["skip.1.0.none", "skip.2.1.used", "read.1.1", "check.0.a", "finish.2"] {
        assert!(r.instance().action_by_name(name).is_some(), "{name}");
    }
}

#[test]
fn lcs_edge_cases() {
    let zero = LcsInstance::from_strs(&["abc", "cab"], 0).unwrap();
    assert!(yes(&reduce_lcs_to_v(&zero).unwrap()));
    let disjoint = LcsInstance::from_strs(&["aa", "bb"], 1).unwrap();
    assert!(!oracle_lcs(&disjoint, DEFAULT_LCS_CAP).unwrap());
    assert!(!yes(&reduce_lcs_to_v(&disjoint).unwrap()));
    let single = LcsInstance::from_strs(&["abca"], 3).unwrap();
    assert!(yes(&reduce_lcs_to_v(&single).unwrap()));
}

#[test]
fn lcs_oracle_reports_oversized_lattices() {
    let l = LcsInstance::from_strs(&["abab", "baba", "abba"], 2).unwrap();
    assert!(matches!(oracle_lcs(&l, 10), Err(casemod_core::Error::ResourceLimit { .. })));
    assert!(oracle_lcs(&l, DEFAULT_LCS_CAP).unwrap());
}

#[test]
fn wsat_unary_and() {
    let c = CircuitInstance::parse("input x1\nand z x1\noutput z\nweight 1\n").unwrap();
    assert!(oracle_wsat(&c));
    let r = reduce_wsat_to_planmod(&c).unwrap();
    assert_eq!(r.flavor(), Flavor::PlanMod);
    assert!(yes(&r));
    assert_eq!(serialize_instance(&r), golden("gadget_wsat_and.cm"));

    let no_weight = CircuitInstance::parse("input x1\nand z x1\noutput z\nweight 0\n").unwrap();
    assert!(!yes(&reduce_wsat_to_planmod(&no_weight).unwrap()));
}

#[test]
fn wsat_contradiction_is_never_satisfied() {
    let c = CircuitInstance::parse("input x1\nnot n x1\nand z x1 n\noutput z\nweight 1\n").unwrap();
    assert!(!oracle_wsat(&c));
    assert!(!yes(&reduce_wsat_to_planmod(&c).unwrap()));
}

#[test]
fn kstep_to_l_on_the_completed_example() {
    let pi = running_example();
    let full = PartialState::from_pairs([(0, 2), (1, 1), (2, 1)]).unwrap();
    let pi = pi.with_initial_and_goal(pi.initial().clone(), full).unwrap();
    let r = reduce_kstep_to_l(&pi, 3).unwrap();
    assert!(r.case().plan.is_empty());
    assert_eq!(r.glue_actions().len(), 4);
    assert!(yes(&r));
    assert_eq!(yes(&r.with_budget(2)), solve_kstep_bfs(&pi, 2, &SolverConfig::default()).unwrap().answer);

    let solved = pi.with_initial_and_goal(State::new(vec![2, 1, 1]), pi.goal().clone()).unwrap();
    assert!(yes(&reduce_kstep_to_l(&solved, 0).unwrap()));
    assert!(reduce_kstep_to_l(&running_example(), 3).is_err());
}

#[test]
fn l_to_kstep_on_the_example() {
    let (pi, k) = reduce_l_to_kstep(&running_reuse(Flavor::CaseMod)).unwrap();
    assert_eq!(k, 4);
    assert_eq!(pi.num_vars(), 4);
    assert!(solve_kstep_bfs(&pi, k, &SolverConfig::default()).unwrap().answer);
    assert!(reduce_l_to_kstep(&running_reuse(Flavor::PlanMod)).is_err());
}

#[test]
fn bool_gadget_bookkeeping() {
    for seed in 0..100 {
        let params = SizeParams { size: 3, actions: 4, ..SizeParams::default() };
        let SourceInstance::Planning(pi) = gen_random_source(SourceKind::BoolPlanning, seed, &params).unwrap() else {
            unreachable!()
        };
        let r = reduce_bool_to_d(&pi, None).unwrap();
        assert_eq!(r.budget(), 1 << pi.num_vars());
        let report = compute_parameters(&r);
        assert!(report.k_d <= 2);
        let values: HashSet<u32> = pi.actions().iter().flat_map(|a| a.mentioned_values()).collect();
        assert_eq!(report.k_d, values.len());
        let expected = solve_kstep_bfs(&pi, r.budget(), &SolverConfig::default()).unwrap().answer;
        assert_eq!(yes(&r), expected, "seed {seed}");
    }
    assert!(reduce_bool_to_d(&running_example(), None).is_err());
}

#[test]
fn generators_are_deterministic() {
    let p = SizeParams::default();
    for kind in SourceKind::ALL {
        for seed in [0, 7, 42] {
            let a = gen_random_source(kind, seed, &p).unwrap().to_text();
            let b = gen_random_source(kind, seed, &p).unwrap().to_text();
            assert_eq!(a, b);
        }
    }
    let g = |seed| match gen_random_source(SourceKind::PClique, seed, &p).unwrap() {
        SourceInstance::PClique(g) => serialize_instance(&reduce_pclique_to_lv(&g).unwrap()),
        _ => unreachable!(),
    };
    assert_eq!(g(3), g(3));
}

#[test]
fn distinct_seeds_rarely_collide() {
    let p = SizeParams { k: 2, size: 3, ..SizeParams::default() };
    for kind in [SourceKind::PClique, SourceKind::Lcs, SourceKind::CaseMod, SourceKind::BoolPlanning] {
        let texts: HashSet<String> = (0..100).map(|s| gen_random_source(kind, s, &p).unwrap().to_text()).collect();
        assert!(texts.len() >= 90, "{kind}: {} distinct of 100", texts.len());
    }
}

#[test]
fn sources_round_trip_through_text() {
    let p = SizeParams::default();
    for seed in 0..50 {
        match gen_random_source(SourceKind::PClique, seed, &p).unwrap() {
            SourceInstance::PClique(g) => assert_eq!(PartitionedCliqueInstance::parse(&g.to_text()).unwrap(), g),
            _ => unreachable!(),
        }
        match gen_random_source(SourceKind::Lcs, seed, &p).unwrap() {
            SourceInstance::Lcs(l) => assert_eq!(LcsInstance::parse(&l.to_text()).unwrap(), l),
            _ => unreachable!(),
        }
        match gen_random_source(SourceKind::Circuit, seed, &p).unwrap() {
            SourceInstance::Circuit(c) => assert_eq!(CircuitInstance::parse(&c.to_text()).unwrap(), c),
            _ => unreachable!(),
        }
    }
}

#[test]
fn malformed_sources_are_rejected() {
    assert!(CircuitInstance::parse("input x\nand g g\noutput g\nweight 1\n").is_err());
    assert!(CircuitInstance::parse("input x\noutput y\nweight 1\n").is_err());
    assert!(LcsInstance::parse("string a-b\ntarget 1\n").is_err());
    assert!(PartitionedCliqueInstance::parse("part a\nedge a b\n").is_err());
}
