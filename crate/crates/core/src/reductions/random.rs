use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CircuitInstance, CircuitNode, LcsInstance, NodeKind, PartitionedCliqueInstance};
use crate::error::{Error, Result};
use crate::reuse::{Case, Flavor, ReuseInstance, ReuseQuery};
use crate::sas::{Action, ActionId, PartialState, Plan, PlanningInstance, State, Variable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceKind {
    PClique,
    Lcs,
    Circuit,
    BoolPlanning,
    CaseMod,
}

impl SourceKind {
    pub const ALL: [SourceKind; 5] = [
        SourceKind::PClique,
        SourceKind::Lcs,
        SourceKind::Circuit,
        SourceKind::BoolPlanning,
        SourceKind::CaseMod,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SourceKind::PClique => "pclique",
            SourceKind::Lcs => "lcs",
            SourceKind::Circuit => "circuit",
            SourceKind::BoolPlanning => "bool-planning",
            SourceKind::CaseMod => "casemod",
        }
    }
}

impl fmt::Display for SourceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SourceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SourceKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::invalid_arg(format!("unknown source kind `{s}`")))
    }
}

/// Size knobs. Each kind reads only some of them:
///
/// - pclique: `k` parts of `size` vertices, edges with probability `density`;
/// - lcs: `k` strings of length `1..=size` over `alphabet` letters, target
///   `0..=size`;
/// - circuit: `size` nodes, about half inputs, weight `k`;
/// - bool-planning: `size` variables, `actions` actions;
/// - casemod: `size` variables with domains `1..=domain`, `actions`
///   actions, budget `0..=budget`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SizeParams {
    pub k: usize,
    pub size: usize,
    pub alphabet: usize,
    pub density: f64,
    pub domain: u32,
    pub actions: usize,
    pub budget: usize,
}

impl Default for SizeParams {
    fn default() -> Self {
        SizeParams {
            k: 2,
            size: 3,
            alphabet: 2,
            density: 0.5,
            domain: 3,
            actions: 5,
            budget: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SourceInstance {
    PClique(PartitionedCliqueInstance),
    Lcs(LcsInstance),
    Circuit(CircuitInstance),
    Planning(PlanningInstance),
    Reuse(ReuseInstance),
}

impl SourceInstance {
    /// Source text for the graph, string and circuit kinds, the instance
    /// format for the others.
    pub fn to_text(&self) -> String {
        match self {
            SourceInstance::PClique(g) => g.to_text(),
            SourceInstance::Lcs(l) => l.to_text(),
            SourceInstance::Circuit(c) => c.to_text(),
            SourceInstance::Planning(pi) => crate::io::serialize_planning(pi),
            SourceInstance::Reuse(r) => crate::io::serialize_instance(r),
        }
    }
}

/// Pseudo-random source instance, a pure function of `(kind, seed, params)`.
pub fn gen_random_source(kind: SourceKind, seed: u64, params: &SizeParams) -> Result<SourceInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match kind {
        SourceKind::PClique => SourceInstance::PClique(random_pclique(&mut rng, params)?),
        SourceKind::Lcs => SourceInstance::Lcs(random_lcs(&mut rng, params)?),
        SourceKind::Circuit => SourceInstance::Circuit(random_circuit(&mut rng, params)?),
        SourceKind::BoolPlanning => SourceInstance::Planning(random_bool_planning(&mut rng, params)?),
        SourceKind::CaseMod => SourceInstance::Reuse(random_casemod(&mut rng, params)?),
    })
}

fn random_pclique(rng: &mut ChaCha8Rng, p: &SizeParams) -> Result<PartitionedCliqueInstance> {
    let names: Vec<String> = (0..p.k * p.size).map(|v| format!("n{v}")).collect();
    let parts: Vec<Vec<usize>> = (0..p.k).map(|i| (i * p.size..(i + 1) * p.size).collect()).collect();
    let mut edges = Vec::new();
    for u in 0..names.len() {
        for w in u + 1..names.len() {
            if u / p.size.max(1) != w / p.size.max(1) && rng.gen_bool(p.density.clamp(0.0, 1.0)) {
                edges.push((u, w));
            }
        }
    }
    PartitionedCliqueInstance::new(names, parts, edges)
}

fn random_lcs(rng: &mut ChaCha8Rng, p: &SizeParams) -> Result<LcsInstance> {
    let letters: Vec<char> = ('a'..='z').take(p.alphabet.clamp(1, 26)).collect();
    let strings = (0..p.k.max(1))
        .map(|_| {
            let len = rng.gen_range(1..=p.size.max(1));
            (0..len).map(|_| *letters.choose(rng).expect("non-empty alphabet")).collect()
        })
        .collect();
    LcsInstance::new(strings, rng.gen_range(0..=p.size))
}

fn random_circuit(rng: &mut ChaCha8Rng, p: &SizeParams) -> Result<CircuitInstance> {
    let total = p.size.max(2);
    let inputs = rng.gen_range(1..=total / 2);
    let mut nodes: Vec<CircuitNode> = (0..inputs)
        .map(|i| CircuitNode {
            name: format!("x{}", i + 1),
            kind: NodeKind::Input,
        })
        .collect();
    for g in inputs..total {
        let kind = if rng.gen_bool(0.4) {
            NodeKind::Not(rng.gen_range(0..g))
        } else {
            let arity = rng.gen_range(1..=g.min(3));
            let mut pool: Vec<usize> = (0..g).collect();
            pool.shuffle(rng);
            pool.truncate(arity);
            pool.sort_unstable();
            NodeKind::And(pool)
        };
        nodes.push(CircuitNode {
            name: format!("g{}", g - inputs + 1),
            kind,
        });
    }
    CircuitInstance::new(nodes, total - 1, p.k)
}

fn random_partial(rng: &mut ChaCha8Rng, vars: &[Variable], prob: f64) -> PartialState {
    let mut p = PartialState::new();
    for (v, var) in vars.iter().enumerate() {
        if rng.gen_bool(prob) {
            p.insert(v, rng.gen_range(0..var.domain_size));
        }
    }
    p
}

fn random_state(rng: &mut ChaCha8Rng, vars: &[Variable]) -> State {
    State::new(vars.iter().map(|v| rng.gen_range(0..v.domain_size)).collect())
}

fn random_actions(rng: &mut ChaCha8Rng, vars: &[Variable], count: usize) -> Vec<Action> {
    (0..count)
        .map(|i| {
            let pre = random_partial(rng, vars, 0.35);
            let mut post = random_partial(rng, vars, 0.4);
            if post.is_empty() {
                let v = rng.gen_range(0..vars.len());
                post.insert(v, rng.gen_range(0..vars[v].domain_size));
            }
            Action::new(format!("a{}", i + 1), pre, post)
        })
        .collect()
}

/// End of a random walk of up to `steps` applicable actions.
fn random_walk(rng: &mut ChaCha8Rng, actions: &[Action], from: &State, steps: usize) -> (State, Vec<ActionId>) {
    let mut s = from.clone();
    let mut walk = Vec::new();
    for _ in 0..steps {
        let ready: Vec<usize> = (0..actions.len()).filter(|&a| actions[a].is_applicable(&s)).collect();
        let Some(&a) = ready.choose(rng) else { break };
        s.step(&actions[a]);
        walk.push(ActionId(a));
    }
    (s, walk)
}

fn random_bool_planning(rng: &mut ChaCha8Rng, p: &SizeParams) -> Result<PlanningInstance> {
    let vars: Vec<Variable> = (0..p.size.max(1)).map(|i| Variable::new(format!("p{}", i + 1), 2)).collect();
    let actions = random_actions(rng, &vars, p.actions.max(1));
    let initial = random_state(rng, &vars);
    let target = if rng.gen_bool(0.5) {
        let steps = rng.gen_range(0..=4);
        random_walk(rng, &actions, &initial, steps).0
    } else {
        random_state(rng, &vars)
    };
    PlanningInstance::new(vars, initial, target.to_partial(), actions)
}

/// Small casemod instance whose stored plan is a walk of applicable actions
/// from `J`, so the case is consistent for every flavor.
fn random_casemod(rng: &mut ChaCha8Rng, p: &SizeParams) -> Result<ReuseInstance> {
    let vars: Vec<Variable> = (0..rng.gen_range(1..=p.size.max(1)))
        .map(|i| Variable::new(format!("v{}", i + 1), rng.gen_range(1..=p.domain.max(1))))
        .collect();
    let count = rng.gen_range(1..=p.actions.max(1));
    let actions = random_actions(rng, &vars, count);
    let initial = random_state(rng, &vars);
    let j = if rng.gen_bool(0.5) {
        let steps = rng.gen_range(0..=2);
        random_walk(rng, &actions, &initial, steps).0
    } else {
        random_state(rng, &vars)
    };
    let case_len = rng.gen_range(0..=3);
    let (after, plan) = random_walk(rng, &actions, &j, case_len);
    let goal_source = match rng.gen_range(0..3) {
        0 => after,
        1 => {
            let steps = rng.gen_range(0..=2);
            random_walk(rng, &actions, &after, steps).0
        }
        _ => random_state(rng, &vars),
    };
    let mut goal = goal_source.to_partial().restrict(
        &(0..vars.len()).filter(|_| rng.gen_bool(0.5)).collect::<Vec<_>>(),
    );
    if goal.is_empty() && rng.gen_bool(0.5) {
        let v = rng.gen_range(0..vars.len());
        goal.insert(v, goal_source.get(v));
    }
    let glue: Vec<ActionId> = (0..actions.len())
        .filter(|_| rng.gen_bool(0.6))
        .map(ActionId)
        .collect();
    let budget = rng.gen_range(0..=p.budget);
    let stored_goal = goal.clone();
    let pi = PlanningInstance::new(vars, initial, goal, actions)?;
    ReuseInstance::new(
        pi,
        Case::new(j, stored_goal, Plan(plan)),
        ReuseQuery::new(glue, budget, Flavor::CaseMod),
    )
}
