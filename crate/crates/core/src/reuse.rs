//! Plan-reuse decision problems, their parameters, and certificate verifiers.
//!
//! Every flavor shares one planning instance `Π`, one stored case
//! `(J, H, c)`, a glue action set `A'` and a budget `M`. The flavors differ in
//! what the glue may do around the stored plan:
//!
//! - `casemod`: glue before and after the whole of `c`, the prefix must land
//!   exactly on `J`;
//! - `casemod-star`: any infix of `c`, the prefix must land on the state `c`
//!   was in when that infix started;
//! - `infix-general`: any infix of `c`, run from any state in which each of
//!   its steps is applicable;
//! - `planmod`: glue interleaved anywhere into `c`, only the goal matters;
//! - `kstep`: plain bounded planning, `M` is the plan-length bound.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sas::{ActionId, PartialState, Plan, PlanningInstance, State};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    #[serde(rename = "casemod")]
    CaseMod,
    #[serde(rename = "casemod-star")]
    CaseModStar,
    InfixGeneral,
    #[serde(rename = "planmod")]
    PlanMod,
    #[serde(rename = "kstep")]
    KStep,
}

impl Flavor {
    pub const ALL: [Flavor; 5] = [
        Flavor::CaseMod,
        Flavor::CaseModStar,
        Flavor::InfixGeneral,
        Flavor::PlanMod,
        Flavor::KStep,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::CaseMod => "casemod",
            Flavor::CaseModStar => "casemod-star",
            Flavor::InfixGeneral => "infix-general",
            Flavor::PlanMod => "planmod",
            Flavor::KStep => "kstep",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Flavor::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::invalid_arg(format!("unknown flavor `{s}`")))
    }
}

/// A stored case: initial state `J`, goal `H` (carried but never consulted by
/// any decision) and plan `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub stored_initial: State,
    pub stored_goal: PartialState,
    pub plan: Plan,
}

impl Case {
    pub fn new(stored_initial: State, stored_goal: PartialState, plan: Plan) -> Self {
        Case {
            stored_initial,
            stored_goal,
            plan,
        }
    }

    /// The case `(c, J) = (ε, s)` used by the hardness gadgets.
    pub fn empty_at(state: State) -> Self {
        let goal = state.to_partial();
        Case::new(state, goal, Plan::empty())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReuseQuery {
    pub glue_actions: Vec<ActionId>,
    pub budget: usize,
    pub flavor: Flavor,
    /// Only for `casemod-star`: forbid the empty infix when `c` is non-empty.
    #[serde(default)]
    pub strict_infix: bool,
}

impl ReuseQuery {
    pub fn new(glue_actions: Vec<ActionId>, budget: usize, flavor: Flavor) -> Self {
        ReuseQuery {
            glue_actions,
            budget,
            flavor,
            strict_infix: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReuseInstance {
    instance: PlanningInstance,
    case: Case,
    query: ReuseQuery,
    glue_mask: Vec<bool>,
}

impl ReuseInstance {
    pub fn new(instance: PlanningInstance, case: Case, query: ReuseQuery) -> Result<Self> {
        let bad = |what: &str, e: Error| Error::invalid_instance(format!("{what}: {e}"));
        instance
            .check_state(&case.stored_initial)
            .map_err(|e| bad("case initial state", e))?;
        instance
            .check_partial(&case.stored_goal)
            .map_err(|e| bad("case goal", e))?;
        instance
            .check_plan(&case.plan)
            .map_err(|e| bad("case plan", e))?;
        let mut glue_mask = vec![false; instance.actions().len()];
        for &a in &query.glue_actions {
            match glue_mask.get_mut(a.0) {
                None => {
                    return Err(Error::invalid_instance(format!(
                        "glue action {a} does not exist"
                    )))
                }
                Some(true) => {
                    return Err(Error::invalid_instance(format!(
                        "glue action `{}` listed twice",
                        instance.action(a).name
                    )))
                }
                Some(slot) => *slot = true,
            }
        }
        let r = ReuseInstance {
            instance,
            case,
            query,
            glue_mask,
        };
        if !r.case_is_consistent() {
            log::warn!("the stored plan does not reach the stored goal from the stored initial state");
        }
        Ok(r)
    }

    pub fn instance(&self) -> &PlanningInstance {
        &self.instance
    }

    pub fn case(&self) -> &Case {
        &self.case
    }

    pub fn query(&self) -> &ReuseQuery {
        &self.query
    }

    pub fn flavor(&self) -> Flavor {
        self.query.flavor
    }

    pub fn budget(&self) -> usize {
        self.query.budget
    }

    pub fn glue_actions(&self) -> &[ActionId] {
        &self.query.glue_actions
    }

    pub fn is_glue(&self, a: ActionId) -> bool {
        self.glue_mask.get(a.0).copied().unwrap_or(false)
    }

    /// Whether `J[c]` satisfies `H`. Informational only.
    pub fn case_is_consistent(&self) -> bool {
        self.instance
            .run(&self.case.stored_initial, self.case.plan.steps())
            .holds(&self.case.stored_goal)
    }

    /// `J[c]`.
    pub fn case_end_state(&self) -> State {
        self.instance
            .run(&self.case.stored_initial, self.case.plan.steps())
    }

    pub fn with_budget(&self, budget: usize) -> ReuseInstance {
        let mut r = self.clone();
        r.query.budget = budget;
        r
    }

    pub fn with_flavor(&self, flavor: Flavor) -> ReuseInstance {
        let mut r = self.clone();
        r.query.flavor = flavor;
        r
    }

    pub fn with_strict_infix(&self, strict: bool) -> ReuseInstance {
        let mut r = self.clone();
        r.query.strict_infix = strict;
        r
    }

    pub fn with_glue(&self, glue: Vec<ActionId>) -> Result<ReuseInstance> {
        let mut query = self.query.clone();
        query.glue_actions = glue;
        ReuseInstance::new(self.instance.clone(), self.case.clone(), query)
    }

    /// Same data with a different stored initial state and plan.
    pub fn with_case(&self, case: Case) -> Result<ReuseInstance> {
        ReuseInstance::new(self.instance.clone(), case, self.query.clone())
    }

    fn glue_ok(&self, glue: &Plan) -> Result<bool> {
        self.instance.check_plan(glue)?;
        Ok(glue.len() <= self.query.budget && glue.steps().iter().all(|&a| self.is_glue(a)))
    }
}

/// The L/A/V/D parameters of a reuse instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamReport {
    /// Budget `M`.
    pub k_l: usize,
    /// Number of actions in `A'`.
    pub k_a: usize,
    /// Number of variables mentioned by actions in `A'`.
    pub k_v: usize,
    /// Number of distinct value indices mentioned by actions in `A'`.
    pub k_d: usize,
    /// Number of structurally distinct actions in `A'`.
    pub k_a_distinct: usize,
}

impl ParamReport {
    /// `(k_d + 1)^(2 k_v)`, saturating: the most structurally distinct actions
    /// that can mention only `k_v` variables and `k_d` values.
    pub fn distinct_action_bound(&self) -> u128 {
        let exp = u32::try_from(2 * self.k_v).unwrap_or(u32::MAX);
        (self.k_d as u128 + 1).saturating_pow(exp)
    }
}

pub fn compute_parameters(r: &ReuseInstance) -> ParamReport {
    let inst = r.instance();
    let mut vars = HashSet::new();
    let mut values = HashSet::new();
    for &a in r.glue_actions() {
        let action = inst.action(a);
        vars.extend(action.mentioned_vars());
        values.extend(action.mentioned_values());
    }
    ParamReport {
        k_l: r.budget(),
        k_a: r.glue_actions().len(),
        k_v: vars.len(),
        k_d: values.len(),
        k_a_distinct: crate::solvers::dedupe_actions(inst, r.glue_actions()).len(),
    }
}

/// Half-open range `start..end` into the stored plan. `start == end` is the
/// empty infix; for `casemod-star` it still selects the prefix state
/// `J[c[..start]]` the glue must land on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Infix {
    pub start: usize,
    pub end: usize,
}

impl Infix {
    pub fn new(start: usize, end: usize) -> Self {
        Infix { start, end }
    }

    pub fn full(len: usize) -> Self {
        Infix { start: 0, end: len }
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    fn check(&self, plan_len: usize) -> Result<()> {
        if self.start > self.end || self.end > plan_len {
            return Err(Error::invalid_arg(format!(
                "infix {}..{} out of range for a plan of length {plan_len}",
                self.start, self.end
            )));
        }
        Ok(())
    }
}

/// Witness for a YES answer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "flavor", rename_all = "kebab-case")]
pub enum Certificate {
    #[serde(rename = "casemod")]
    CaseMod { glue: Plan, split: usize },
    #[serde(rename = "casemod-star")]
    CaseModStar {
        glue: Plan,
        split: usize,
        infix: Infix,
    },
    InfixGeneral {
        glue: Plan,
        split: usize,
        infix: Infix,
    },
    /// `positions[j]` is the number of case-plan steps executed before glue
    /// step `j`.
    #[serde(rename = "planmod")]
    PlanMod { glue: Plan, positions: Vec<usize> },
    #[serde(rename = "kstep")]
    KStep { plan: Plan },
}

impl Certificate {
    pub fn flavor(&self) -> Flavor {
        match self {
            Certificate::CaseMod { .. } => Flavor::CaseMod,
            Certificate::CaseModStar { .. } => Flavor::CaseModStar,
            Certificate::InfixGeneral { .. } => Flavor::InfixGeneral,
            Certificate::PlanMod { .. } => Flavor::PlanMod,
            Certificate::KStep { .. } => Flavor::KStep,
        }
    }

    /// The added steps (the whole plan for `kstep`).
    pub fn glue(&self) -> &Plan {
        match self {
            Certificate::CaseMod { glue, .. }
            | Certificate::CaseModStar { glue, .. }
            | Certificate::InfixGeneral { glue, .. }
            | Certificate::PlanMod { glue, .. } => glue,
            Certificate::KStep { plan } => plan,
        }
    }

    /// The full plan the certificate describes, given the stored plan.
    pub fn assembled_plan(&self, case_plan: &Plan) -> Plan {
        let c = case_plan.steps();
        match self {
            Certificate::CaseMod { glue, split } => splice(glue, *split, c),
            Certificate::CaseModStar { glue, split, infix }
            | Certificate::InfixGeneral { glue, split, infix } => {
                splice(glue, *split, &c[infix.start..infix.end])
            }
            Certificate::PlanMod { glue, positions } => interleave(c, glue, positions),
            Certificate::KStep { plan } => plan.clone(),
        }
    }
}

fn splice(glue: &Plan, split: usize, middle: &[crate::sas::ActionId]) -> Plan {
    let g = glue.steps();
    Plan::concat(&[&g[..split], middle, &g[split..]])
}

fn interleave(c: &[ActionId], glue: &Plan, positions: &[usize]) -> Plan {
    let mut out = Vec::with_capacity(c.len() + glue.len());
    let mut inserted = glue.steps().iter().zip(positions).peekable();
    for j in 0..=c.len() {
        while let Some((&g, _)) = inserted.next_if(|(_, &p)| p == j) {
            out.push(g);
        }
        if j < c.len() {
            out.push(c[j]);
        }
    }
    Plan(out)
}

fn mismatch(expected: Flavor, cert: &Certificate) -> Error {
    Error::invalid_arg(format!(
        "expected a {expected} certificate, got {}",
        cert.flavor()
    ))
}

pub fn verify_casemod(r: &ReuseInstance, cert: &Certificate) -> Result<bool> {
    let Certificate::CaseMod { glue, split } = cert else {
        return Err(mismatch(Flavor::CaseMod, cert));
    };
    if !r.glue_ok(glue)? || *split > glue.len() {
        return Ok(false);
    }
    let inst = r.instance();
    let prefix = inst.run(inst.initial(), &glue.steps()[..*split]);
    if prefix != r.case().stored_initial {
        return Ok(false);
    }
    let plan = cert.assembled_plan(&r.case().plan);
    Ok(inst.run(inst.initial(), plan.steps()).holds(inst.goal()))
}

pub fn verify_casemod_star(r: &ReuseInstance, cert: &Certificate) -> Result<bool> {
    let Certificate::CaseModStar { glue, split, infix } = cert else {
        return Err(mismatch(Flavor::CaseModStar, cert));
    };
    let c = r.case().plan.steps();
    infix.check(c.len())?;
    if !r.glue_ok(glue)? || *split > glue.len() {
        return Ok(false);
    }
    if r.query().strict_infix && infix.is_empty() && !c.is_empty() {
        return Ok(false);
    }
    let inst = r.instance();
    let landing = inst.run(&r.case().stored_initial, &c[..infix.start]);
    if inst.run(inst.initial(), &glue.steps()[..*split]) != landing {
        return Ok(false);
    }
    let plan = cert.assembled_plan(&r.case().plan);
    Ok(inst.run(inst.initial(), plan.steps()).holds(inst.goal()))
}

pub fn verify_infix_general(r: &ReuseInstance, cert: &Certificate) -> Result<bool> {
    let Certificate::InfixGeneral { glue, split, infix } = cert else {
        return Err(mismatch(Flavor::InfixGeneral, cert));
    };
    let c = r.case().plan.steps();
    infix.check(c.len())?;
    if !r.glue_ok(glue)? || *split > glue.len() {
        return Ok(false);
    }
    let inst = r.instance();
    let g = glue.steps();
    let mut s = inst.run(inst.initial(), &g[..*split]);
    for &step in &c[infix.start..infix.end] {
        if !s.step(inst.action(step)) {
            return Ok(false);
        }
    }
    Ok(inst.run(&s, &g[*split..]).holds(inst.goal()))
}

pub fn verify_planmod(r: &ReuseInstance, cert: &Certificate) -> Result<bool> {
    let Certificate::PlanMod { glue, positions } = cert else {
        return Err(mismatch(Flavor::PlanMod, cert));
    };
    let l = r.case().plan.len();
    if positions.len() != glue.len() {
        return Err(Error::invalid_arg(format!(
            "{} insertion positions for {} glue steps",
            positions.len(),
            glue.len()
        )));
    }
    if positions.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::invalid_arg("insertion positions must be non-decreasing"));
    }
    if let Some(p) = positions.iter().find(|&&p| p > l) {
        return Err(Error::invalid_arg(format!(
            "insertion position {p} beyond a plan of length {l}"
        )));
    }
    if !r.glue_ok(glue)? {
        return Ok(false);
    }
    let plan = cert.assembled_plan(&r.case().plan);
    r.instance().is_solution_plan(&plan)
}

/// `|p| ≤ k` and `p` solves `Π`.
pub fn verify_kstep(pi: &PlanningInstance, plan: &Plan, k: usize) -> Result<bool> {
    Ok(plan.len() <= k && pi.is_solution_plan(plan)?)
}

/// Dispatches on the certificate's flavor; `kstep` certificates are checked
/// against `Π` with `k = M`.
pub fn verify(r: &ReuseInstance, cert: &Certificate) -> Result<bool> {
    match cert {
        Certificate::CaseMod { .. } => verify_casemod(r, cert),
        Certificate::CaseModStar { .. } => verify_casemod_star(r, cert),
        Certificate::InfixGeneral { .. } => verify_infix_general(r, cert),
        Certificate::PlanMod { .. } => verify_planmod(r, cert),
        Certificate::KStep { plan } => verify_kstep(r.instance(), plan, r.budget()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{running_example, running_reuse};

    fn plan(ids: &[usize]) -> Plan {
        Plan(ids.iter().map(|&i| ActionId(i)).collect())
    }

    fn solved_trivially(flavor: Flavor) -> ReuseInstance {
        // I = J = (2,0,0) already satisfies G; c = ε; A' = ∅; M = 0.
        let pi = running_example()
            .with_initial_and_goal(State::new(vec![2, 0, 0]), running_example().goal().clone())
            .unwrap();
        let j = pi.initial().clone();
        ReuseInstance::new(pi, Case::empty_at(j), ReuseQuery::new(vec![], 0, flavor)).unwrap()
    }

    #[test]
    fn parameters() {
        let r = running_reuse(Flavor::CaseMod);
        let p = compute_parameters(&r);
        assert_eq!((p.k_l, p.k_a, p.k_v, p.k_d), (3, 2, 2, 2));

        let none = r.with_glue(vec![]).unwrap();
        let p = compute_parameters(&none);
        assert_eq!((p.k_a, p.k_v, p.k_d), (0, 0, 0));

        let all = r.with_glue((0..4).map(ActionId).collect()).unwrap();
        let p = compute_parameters(&all);
        assert_eq!((p.k_a, p.k_v, p.k_d), (4, 3, 3));
        assert!(p.k_a_distinct as u128 <= p.distinct_action_bound());
    }

    #[test]
    fn casemod_certificates() {
        let r = running_reuse(Flavor::CaseMod);
        let good = Certificate::CaseMod { glue: plan(&[2, 3]), split: 2 };
        assert!(verify_casemod(&r, &good).unwrap());
        let short = Certificate::CaseMod { glue: plan(&[2]), split: 1 };
        assert!(!verify_casemod(&r, &short).unwrap());
        let trivial = solved_trivially(Flavor::CaseMod);
        let empty = Certificate::CaseMod { glue: Plan::empty(), split: 0 };
        assert!(verify_casemod(&trivial, &empty).unwrap());
        // a1 is not in A'
        let off_glue = Certificate::CaseMod { glue: plan(&[2, 3, 0]), split: 2 };
        assert!(!verify_casemod(&r, &off_glue).unwrap());
        assert!(!verify_casemod(&r.with_budget(1), &good).unwrap());
        let wrong = Certificate::KStep { plan: Plan::empty() };
        assert!(matches!(verify_casemod(&r, &wrong), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn casemod_star_certificates() {
        let r = running_reuse(Flavor::CaseModStar);
        let full = Certificate::CaseModStar {
            glue: plan(&[2, 3]),
            split: 2,
            infix: Infix::full(2),
        };
        assert!(verify_casemod_star(&r, &full).unwrap());

        // Reusing only (a2): I[(a3,a1)] = (1,1,1) but J[(a1)] = (1,1,0).
        let mismatched = Certificate::CaseModStar {
            glue: plan(&[2, 0]),
            split: 2,
            infix: Infix::new(1, 2),
        };
        assert!(!verify_casemod_star(&r, &mismatched).unwrap());
        // a1 is not glue in the running query; widen A' to all actions.
        let wide = r.with_glue((0..4).map(ActionId).collect()).unwrap();
        assert!(!verify_casemod_star(&wide, &mismatched).unwrap());
        // (a3, a4, a1) lands on (1,1,0) = J[(a1)], then a2 reaches v1=2.
        let landed = Certificate::CaseModStar {
            glue: plan(&[2, 3, 0]),
            split: 3,
            infix: Infix::new(1, 2),
        };
        assert!(verify_casemod_star(&wide, &landed).unwrap());

        let trivial = solved_trivially(Flavor::CaseModStar);
        let empty = Certificate::CaseModStar {
            glue: Plan::empty(),
            split: 0,
            infix: Infix::new(0, 0),
        };
        assert!(verify_casemod_star(&trivial, &empty).unwrap());

        let out_of_range = Certificate::CaseModStar {
            glue: Plan::empty(),
            split: 0,
            infix: Infix::new(1, 3),
        };
        assert!(verify_casemod_star(&r, &out_of_range).is_err());
    }

    #[test]
    fn strict_infix_rejects_empty_reuse() {
        // Glue alone cannot reach v1=2 here, so use a case whose empty infix
        // is enough: I already satisfies G and J = I.
        let trivial = solved_trivially(Flavor::CaseModStar);
        let with_plan = trivial
            .with_case(Case::new(
                trivial.instance().initial().clone(),
                PartialState::new(),
                plan(&[3]),
            ))
            .unwrap();
        let empty = Certificate::CaseModStar {
            glue: Plan::empty(),
            split: 0,
            infix: Infix::new(0, 0),
        };
        assert!(verify_casemod_star(&with_plan, &empty).unwrap());
        assert!(!verify_casemod_star(&with_plan.with_strict_infix(true), &empty).unwrap());
    }

    #[test]
    fn infix_general_certificates() {
        let r = running_reuse(Flavor::InfixGeneral);
        let full = Certificate::InfixGeneral {
            glue: plan(&[2, 3]),
            split: 2,
            infix: Infix::full(2),
        };
        assert!(verify_infix_general(&r, &full).unwrap());
        let no_glue = Certificate::InfixGeneral {
            glue: Plan::empty(),
            split: 0,
            infix: Infix::full(2),
        };
        assert!(!verify_infix_general(&r, &no_glue).unwrap());
        let trivial = solved_trivially(Flavor::InfixGeneral)
            .with_case(Case::new(State::new(vec![0, 0, 0]), PartialState::new(), plan(&[0, 1])))
            .unwrap();
        let empty = Certificate::InfixGeneral {
            glue: Plan::empty(),
            split: 0,
            infix: Infix::new(1, 1),
        };
        assert!(verify_infix_general(&trivial, &empty).unwrap());
    }

    #[test]
    fn planmod_certificates() {
        let pi = running_example();
        let case = Case::new(pi.initial().clone(), PartialState::new(), plan(&[0, 1]));
        let r = ReuseInstance::new(pi, case, ReuseQuery::new(vec![ActionId(2)], 1, Flavor::PlanMod))
            .unwrap();
        let front = Certificate::PlanMod { glue: plan(&[2]), positions: vec![0] };
        assert_eq!(front.assembled_plan(&r.case().plan), plan(&[2, 0, 1]));
        assert!(verify_planmod(&r, &front).unwrap());

        let r4 = r.with_glue(vec![ActionId(3)]).unwrap();
        for p in 0..=2 {
            let cert = Certificate::PlanMod { glue: plan(&[3]), positions: vec![p] };
            assert!(!verify_planmod(&r4, &cert).unwrap());
        }
        let bad = Certificate::PlanMod { glue: plan(&[2, 2]), positions: vec![1, 0] };
        assert!(verify_planmod(&r.with_budget(2), &bad).is_err());

        let solved = ReuseInstance::new(
            running_example(),
            Case::new(State::new(vec![0, 0, 0]), PartialState::new(), plan(&[2, 0, 1])),
            ReuseQuery::new(vec![], 0, Flavor::PlanMod),
        )
        .unwrap();
        let none = Certificate::PlanMod { glue: Plan::empty(), positions: vec![] };
        assert!(verify_planmod(&solved, &none).unwrap());
    }

    #[test]
    fn kstep_certificates() {
        let pi = running_example();
        assert!(verify_kstep(&pi, &plan(&[2, 0, 1]), 3).unwrap());
        assert!(!verify_kstep(&pi, &plan(&[2, 0, 1]), 2).unwrap());
        let solved = pi
            .with_initial_and_goal(State::new(vec![2, 0, 0]), pi.goal().clone())
            .unwrap();
        assert!(verify_kstep(&solved, &Plan::empty(), 0).unwrap());
    }

    #[test]
    fn interleave_places_glue_before_indexed_step() {
        let c = [ActionId(0), ActionId(1)];
        let glue = plan(&[7, 8, 9]);
        assert_eq!(interleave(&c, &glue, &[0, 1, 2]), plan(&[7, 0, 8, 1, 9]));
        assert_eq!(interleave(&c, &glue, &[2, 2, 2]), plan(&[0, 1, 7, 8, 9]));
    }

    #[test]
    fn rejects_bad_queries() {
        let r = running_reuse(Flavor::CaseMod);
        assert!(r.with_glue(vec![ActionId(2), ActionId(2)]).is_err());
        assert!(r.with_glue(vec![ActionId(9)]).is_err());
        assert_eq!("infix-general".parse::<Flavor>().unwrap(), Flavor::InfixGeneral);
        assert!("nope".parse::<Flavor>().is_err());
    }
}
