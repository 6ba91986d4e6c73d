use super::{CircuitInstance, LcsInstance, NodeKind, PartitionedCliqueInstance};
use crate::error::{Error, Result};
use crate::reuse::{Case, Flavor, ReuseInstance, ReuseQuery};
use crate::sas::{Action, ActionId, PartialState, Plan, PlanningInstance, State, Value, Variable};

fn partial(pairs: impl IntoIterator<Item = (usize, Value)>) -> PartialState {
    PartialState::from_pairs(pairs).expect("gadget bindings are consistent")
}

fn full_state(pi_vars: usize, goal: &PartialState) -> State {
    let mut values = vec![0; pi_vars];
    for (v, x) in goal.iter() {
        values[v] = x;
    }
    State::new(values)
}

/// `(c, J) = (ε, G)` with every action as glue.
fn empty_case_over_goal(pi: PlanningInstance, budget: usize) -> Result<ReuseInstance> {
    let j = full_state(pi.num_vars(), pi.goal());
    let glue = pi.action_ids().collect();
    ReuseInstance::new(
        pi,
        Case::new(j, PartialState::new(), Plan::empty()),
        ReuseQuery::new(glue, budget, Flavor::CaseMod),
    )
}

/// k-step planning as `casemod` with an empty stored plan whose initial state
/// is the goal. Needs a goal that fixes every variable.
pub fn reduce_kstep_to_l(pi: &PlanningInstance, k: usize) -> Result<ReuseInstance> {
    if !pi.has_complete_goal() {
        return Err(Error::invalid_arg("the goal must assign every variable"));
    }
    empty_case_over_goal(pi.clone(), k)
}

/// `casemod` as k-step planning: a fresh Boolean `star` and one `jump` action
/// that moves from exactly `J` to `J[c]`. Only the glue actions and `jump` are
/// kept. Returns the instance and the step bound `M + 1`.
pub fn reduce_l_to_kstep(r: &ReuseInstance) -> Result<(PlanningInstance, usize)> {
    if r.flavor() != Flavor::CaseMod {
        return Err(Error::invalid_arg(format!("expected a casemod instance, got {}", r.flavor())));
    }
    let pi = r.instance();
    let mut star_name = String::from("star");
    while pi.var_by_name(&star_name).is_some() {
        star_name.push('_');
    }
    let mut jump_name = String::from("jump");
    while r.glue_actions().iter().any(|&a| pi.action(a).name == jump_name) {
        jump_name.push('_');
    }
    let star = pi.num_vars();
    let mut vars = pi.variables().to_vec();
    vars.push(Variable::new(star_name, 2));

    let with_star = |s: &State, x: Value| {
        let mut p = s.to_partial();
        p.insert(star, x);
        p
    };
    let mut initial = pi.initial().values().to_vec();
    initial.push(0);
    let mut goal = pi.goal().clone();
    goal.insert(star, 1);
    let mut actions: Vec<Action> = r.glue_actions().iter().map(|&a| pi.action(a).clone()).collect();
    actions.push(Action::new(
        jump_name,
        with_star(&r.case().stored_initial, 0),
        with_star(&r.case_end_state(), 1),
    ));
    let out = PlanningInstance::new(vars, State::new(initial), goal, actions)?;
    Ok((out, r.budget() + 1))
}

/// Boolean planning as `casemod` with `(c, J) = (ε, G)` and `A' = A`. The
/// budget defaults to `2^|V|`, enough for any shortest plan.
pub fn reduce_bool_to_d(pi: &PlanningInstance, budget: Option<usize>) -> Result<ReuseInstance> {
    if !pi.is_boolean() {
        return Err(Error::invalid_arg("every variable must be Boolean"));
    }
    if !pi.has_complete_goal() {
        return Err(Error::invalid_arg("the goal must assign every variable"));
    }
    let budget = budget.unwrap_or_else(|| {
        u32::try_from(pi.num_vars())
            .ok()
            .and_then(|n| 1usize.checked_shl(n))
            .unwrap_or(usize::MAX)
    });
    empty_case_over_goal(pi.clone(), budget)
}

/// Reading heads over each string. `v.i` is the head position, `s.i` the
/// symbol last read (0 is `*`, then the alphabet in order), `t.i` is
/// none/read/used, `w` counts matched symbols. The budget is
/// `Σ|X_i| + (k+1)m + k`.
pub fn reduce_lcs_to_v(l: &LcsInstance) -> Result<ReuseInstance> {
    const NONE: Value = 0;
    const READ: Value = 1;
    const USED: Value = 2;
    let k = l.k();
    let m = l.target_length();
    let alphabet = l.alphabet();
    let symbol = |c: char| alphabet.binary_search(&c).expect("symbol in alphabet") as Value + 1;
    let lens: Vec<usize> = l.strings().iter().map(Vec::len).collect();
    let (v, s, t, w) = (|i: usize| i, |i: usize| k + i, |i: usize| 2 * k + i, 3 * k);

    let mut vars = Vec::with_capacity(3 * k + 1);
    for (i, &len) in lens.iter().enumerate() {
        vars.push(Variable::new(format!("v.{}", i + 1), len as u32 + 1));
    }
    let letters_only = alphabet.iter().all(|c| c.is_ascii_alphabetic());
    for i in 0..k {
        let var = Variable::new(format!("s.{}", i + 1), alphabet.len() as u32 + 1);
        vars.push(if letters_only {
            var.with_labels(
                std::iter::once("*".to_string())
                    .chain(alphabet.iter().map(char::to_string))
                    .collect(),
            )
        } else {
            var
        });
    }
    for i in 0..k {
        vars.push(
            Variable::new(format!("t.{}", i + 1), 3)
                .with_labels(vec!["none".into(), "read".into(), "used".into()]),
        );
    }
    vars.push(Variable::new("w", m as u32 + 1));

    let mut actions = Vec::new();
    for i in 0..k {
        for u in 0..lens[i] {
            let (uu, next) = (u as Value, u as Value + 1);
            actions.push(Action::new(
                format!("skip.{}.{u}.none", i + 1),
                partial([(v(i), uu), (t(i), NONE)]),
                partial([(v(i), next), (t(i), NONE)]),
            ));
            actions.push(Action::new(
                format!("skip.{}.{u}.used", i + 1),
                partial([(v(i), uu), (t(i), USED)]),
                partial([(v(i), next), (t(i), NONE)]),
            ));
        }
    }
    for i in 0..k {
        for u in 0..lens[i] {
            actions.push(Action::new(
                format!("read.{}.{u}", i + 1),
                partial([(v(i), u as Value), (t(i), NONE)]),
                partial([(s(i), symbol(l.strings()[i][u])), (t(i), READ)]),
            ));
        }
    }
    for u in 0..m {
        for &sigma in &alphabet {
            let mut pre: Vec<_> = (0..k).map(|i| (t(i), READ)).collect();
            pre.extend((0..k).map(|i| (s(i), symbol(sigma))));
            pre.push((w, u as Value));
            let mut post: Vec<_> = (0..k).map(|i| (t(i), USED)).collect();
            post.push((w, u as Value + 1));
            actions.push(Action::new(format!("check.{u}.{sigma}"), partial(pre), partial(post)));
        }
    }
    for i in 0..k {
        actions.push(Action::new(
            format!("finish.{}", i + 1),
            partial([(v(i), lens[i] as Value)]),
            partial([(t(i), NONE), (s(i), 0)]),
        ));
    }

    let mut initial = vec![0; 3 * k + 1];
    let mut goal = PartialState::new();
    for i in 0..k {
        initial[t(i)] = NONE;
        goal.insert(v(i), lens[i] as Value);
        goal.insert(s(i), 0);
        goal.insert(t(i), NONE);
    }
    goal.insert(w, m as Value);
    let pi = PlanningInstance::new(vars, State::new(initial), goal, actions)?;
    let budget = lens.iter().sum::<usize>() + (k + 1) * m + k;
    let r = empty_case_over_goal(pi, budget)?;
    debug_assert_eq!(r.instance().num_vars(), 3 * k + 1);
    Ok(r)
}

/// `x.i` holds the guessed vertex of part `i` (0 is `*`, then the part's
/// vertices in order), `y.i.j` records a checked edge. The budget is
/// `2k + k(k-1)/2`.
pub fn reduce_pclique_to_lv(g: &PartitionedCliqueInstance) -> Result<ReuseInstance> {
    let k = g.k();
    let mut vars: Vec<Variable> = g
        .parts()
        .iter()
        .enumerate()
        .map(|(i, part)| Variable::new(format!("x.{}", i + 1), part.len() as u32 + 1))
        .collect();
    let mut y = vec![vec![usize::MAX; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            y[i][j] = vars.len();
            vars.push(Variable::new(format!("y.{}.{}", i + 1, j + 1), 2));
        }
    }

    let mut actions = Vec::new();
    for (i, part) in g.parts().iter().enumerate() {
        for (d, &vertex) in part.iter().enumerate() {
            let name = g.vertex_name(vertex);
            actions.push(Action::new(
                format!("guess.{}.{name}", i + 1),
                PartialState::new(),
                partial([(i, d as Value + 1)]),
            ));
            actions.push(Action::new(
                format!("clear.{}.{name}", i + 1),
                PartialState::new(),
                partial([(i, 0)]),
            ));
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            for (dv, &a) in g.parts()[i].iter().enumerate() {
                for (dw, &b) in g.parts()[j].iter().enumerate() {
                    if !g.adjacent(a, b) {
                        continue;
                    }
                    actions.push(Action::new(
                        format!("check.{}.{}.{}.{}", i + 1, j + 1, g.vertex_name(a), g.vertex_name(b)),
                        partial([(i, dv as Value + 1), (j, dw as Value + 1)]),
                        partial([(y[i][j], 1)]),
                    ));
                }
            }
        }
    }

    let initial = State::new(vec![0; vars.len()]);
    let goal = partial(
        (0..k)
            .map(|i| (i, 0))
            .chain((k..vars.len()).map(|yv| (yv, 1))),
    );
    let pi = PlanningInstance::new(vars, initial, goal, actions)?;
    empty_case_over_goal(pi, 2 * k + k * k.saturating_sub(1) / 2)
}

/// Boolean variables for every node plus `sigma`. The stored plan switches
/// `sigma` off before each `set.x`, so an input only turns on if an `on` is
/// inserted right before it, then evaluates the gates in topological order.
/// The only glue action is `on`, with budget `k`.
pub fn reduce_wsat_to_planmod(c: &CircuitInstance) -> Result<ReuseInstance> {
    let nodes = c.nodes();
    let sigma = nodes.len();
    let mut vars: Vec<Variable> = nodes.iter().map(|n| Variable::new(n.name.clone(), 2)).collect();
    vars.push(Variable::new("sigma", 2));

    let mut actions = Vec::new();
    let inputs = c.inputs();
    for &x in &inputs {
        actions.push(Action::new(
            format!("set.{}", nodes[x].name),
            partial([(sigma, 1)]),
            partial([(x, 1)]),
        ));
    }
    let on = ActionId(actions.len());
    actions.push(Action::new("on", PartialState::new(), partial([(sigma, 1)])));
    let off = ActionId(actions.len());
    actions.push(Action::new("off", PartialState::new(), partial([(sigma, 0)])));

    let mut plan = Vec::new();
    for (n, _) in inputs.iter().enumerate() {
        plan.push(off);
        plan.push(ActionId(n));
    }
    for &g in c.topological_order() {
        let pre = match &nodes[g].kind {
            NodeKind::Input => continue,
            NodeKind::Not(y) => partial([(*y, 0)]),
            NodeKind::And(ins) => partial(ins.iter().map(|&y| (y, 1))),
        };
        plan.push(ActionId(actions.len()));
        actions.push(Action::new(format!("gate.{}", nodes[g].name), pre, partial([(g, 1)])));
    }

    let initial = State::new(vec![0; vars.len()]);
    let goal = partial([(c.output(), 1)]);
    let pi = PlanningInstance::new(vars, initial.clone(), goal, actions)?;
    ReuseInstance::new(
        pi,
        Case::new(initial, PartialState::new(), Plan(plan)),
        ReuseQuery::new(vec![on], c.weight(), Flavor::PlanMod),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{running_example, running_reuse};
    use crate::reuse::compute_parameters;
    use crate::solvers::{solve, solve_kstep_bfs, solve_planmod_brute, Algorithm, SolverConfig};

    fn decide(r: &ReuseInstance) -> bool {
        solve(r, Algorithm::Auto, &SolverConfig::default()).unwrap().answer
    }

    #[test]
    fn kstep_to_l_on_completed_goal() {
        let pi = running_example();
        let pi = pi
            .with_initial_and_goal(pi.initial().clone(), partial([(0, 2), (1, 1), (2, 1)]))
            .unwrap();
        let r = reduce_kstep_to_l(&pi, 3).unwrap();
        assert!(r.case().plan.is_empty());
        assert_eq!(r.case().stored_initial, State::new(vec![2, 1, 1]));
        assert_eq!(r.glue_actions().len(), 4);
        assert!(decide(&r));
        assert!(solve_kstep_bfs(&pi, 3, &SolverConfig::default()).unwrap().answer);
        assert!(reduce_kstep_to_l(&running_example(), 3).is_err());
    }

    #[test]
    fn l_to_kstep_on_the_running_example() {
        let (pi, k) = reduce_l_to_kstep(&running_reuse(Flavor::CaseMod)).unwrap();
        assert_eq!(k, 4);
        assert_eq!(pi.num_vars(), 4);
        assert_eq!(pi.actions().len(), 3);
        assert_eq!(pi.variables()[3].name, "star");
        // a3, a4 land on J, then the jump: the budget of 3 is not tight.
        let res = solve_kstep_bfs(&pi, k, &SolverConfig::default()).unwrap();
        assert_eq!(res.certificate.unwrap().glue().len(), 3);
        assert!(!solve_kstep_bfs(&pi, 2, &SolverConfig::default()).unwrap().answer);
    }

    #[test]
    fn lcs_gadget_shape() {
        let l = LcsInstance::from_strs(&["ab", "ba"], 1).unwrap();
        let r = reduce_lcs_to_v(&l).unwrap();
        assert_eq!(r.instance().num_vars(), 7);
        assert_eq!(r.budget(), 4 + 3 + 2);
        // 2 skip templates per position, one read per position, one check per symbol
        assert_eq!(r.instance().actions().len(), 2 * 4 + 4 + 2 + 2);
        assert!(r.instance().action_by_name("skip.1.0.used").is_some());
        assert!(r.instance().action_by_name("check.0.a").is_some());
        assert!(decide(&r));
        let zero = LcsInstance::from_strs(&["ab", "ba"], 0).unwrap();
        assert!(decide(&reduce_lcs_to_v(&zero).unwrap()));
        let none = LcsInstance::from_strs(&["aa", "bb"], 1).unwrap();
        assert!(!decide(&reduce_lcs_to_v(&none).unwrap()));
    }

    #[test]
    fn pclique_gadget_shape() {
        let g = PartitionedCliqueInstance::new(vec!["u".into(), "w".into()], vec![vec![0], vec![1]], [(0, 1)]).unwrap();
        let r = reduce_pclique_to_lv(&g).unwrap();
        assert_eq!(r.budget(), 5);
        let names: Vec<_> = r.instance().actions().iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["guess.1.u", "clear.1.u", "guess.2.w", "clear.2.w", "check.1.2.u.w"]);
        assert!(decide(&r));
        let no_edge = PartitionedCliqueInstance::new(vec!["u".into(), "w".into()], vec![vec![0], vec![1]], []).unwrap();
        assert!(!decide(&reduce_pclique_to_lv(&no_edge).unwrap()));
    }

    #[test]
    fn bool_gadget() {
        // two Boolean variables, set p then q
        let vars = vec![Variable::new("p", 2), Variable::new("q", 2)];
        let actions = vec![
            Action::new("set-p", PartialState::new(), partial([(0, 1)])),
            Action::new("set-q", partial([(0, 1), (1, 0)]), partial([(1, 1)])),
        ];
        let pi = PlanningInstance::new(vars, State::new(vec![0, 0]), partial([(0, 1), (1, 1)]), actions).unwrap();
        let r = reduce_bool_to_d(&pi, None).unwrap();
        assert_eq!(r.budget(), 4);
        assert_eq!(compute_parameters(&r).k_d, 2);
        assert!(decide(&r));
        assert!(!decide(&reduce_bool_to_d(&pi, Some(1)).unwrap()));
        assert!(reduce_bool_to_d(&running_example(), None).is_err());
    }

    #[test]
    fn wsat_gadget() {
        let c = CircuitInstance::parse("input x1\nand z x1\noutput z\nweight 1\n").unwrap();
        let r = reduce_wsat_to_planmod(&c).unwrap();
        let names: Vec<_> = r.case().plan.steps().iter().map(|&a| r.instance().action(a).name.as_str()).collect();
        assert_eq!(names, ["off", "set.x1", "gate.z"]);
        assert_eq!(r.glue_actions(), &[r.instance().action_by_name("on").unwrap()]);
        assert!(solve_planmod_brute(&r, &SolverConfig::default()).unwrap().answer);
        assert!(!solve_planmod_brute(&r.with_budget(0), &SolverConfig::default()).unwrap().answer);
    }
}
