//! SAS+ states, actions and plans.
//!
//! Variable values are dense indices `0..domain_size`. A plan is applied with
//! skip semantics: a step whose precondition does not hold leaves the state
//! untouched. The checked entry points (`State::satisfies`,
//! `State::apply_action`, `PlanningInstance::apply_plan`, ...) validate their
//! arguments; the unchecked ones (`holds`, `step`, `run`) are what the solvers
//! use once an instance has been validated.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VarId = usize;
pub type Value = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ActionId(pub usize);

impl ActionId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ActionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub domain_size: u32,
    /// Optional symbolic names for the domain values; ignored by the semantics.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

impl Variable {
    pub fn new(name: impl Into<String>, domain_size: u32) -> Self {
        Variable {
            name: name.into(),
            domain_size,
            labels: Vec::new(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = labels;
        self
    }
}

/// Assignment to a subset of the variables, kept sorted by variable id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartialState(Vec<(VarId, Value)>);

impl PartialState {
    pub fn new() -> Self {
        PartialState(Vec::new())
    }

    /// Builds a partial state from bindings. Repeating a variable with the same
    /// value is tolerated; conflicting values are an error.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, Value)>) -> Result<Self> {
        let mut out = PartialState::new();
        for (var, value) in pairs {
            if let Some(old) = out.insert(var, value) {
                if old != value {
                    return Err(Error::invalid_arg(format!(
                        "variable {var} bound to both {old} and {value}"
                    )));
                }
            }
        }
        Ok(out)
    }

    /// Sets `var` to `value`, returning the previous binding.
    pub fn insert(&mut self, var: VarId, value: Value) -> Option<Value> {
        match self.0.binary_search_by_key(&var, |&(v, _)| v) {
            Ok(i) => Some(std::mem::replace(&mut self.0[i].1, value)),
            Err(i) => {
                self.0.insert(i, (var, value));
                None
            }
        }
    }

    pub fn get(&self, var: VarId) -> Option<Value> {
        self.0
            .binary_search_by_key(&var, |&(v, _)| v)
            .ok()
            .map(|i| self.0[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, Value)> + '_ {
        self.0.iter().copied()
    }

    /// The bound variables, ascending.
    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Keeps only the bindings on variables in `vars`.
    pub fn restrict(&self, vars: &[VarId]) -> PartialState {
        PartialState(
            self.0
                .iter()
                .copied()
                .filter(|(v, _)| vars.contains(v))
                .collect(),
        )
    }

    /// `self` overridden by `other` on `other`'s variables.
    pub fn merged(&self, other: &PartialState) -> PartialState {
        let mut out = self.clone();
        for (v, x) in other.iter() {
            out.insert(v, x);
        }
        out
    }
}

impl FromIterator<(VarId, Value)> for PartialState {
    /// Later bindings win on conflicts.
    fn from_iter<I: IntoIterator<Item = (VarId, Value)>>(iter: I) -> Self {
        let mut out = PartialState::new();
        for (v, x) in iter {
            out.insert(v, x);
        }
        out
    }
}

/// A total assignment, one value per variable in id order. This vector is
/// also the canonical encoding used for hashing and deduplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct State(Vec<Value>);

impl State {
    pub fn new(values: Vec<Value>) -> Self {
        State(values)
    }

    pub fn values(&self) -> &[Value] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, var: VarId) -> Value {
        self.0[var]
    }

    /// Little-endian bytes of the value vector.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|v| v.to_le_bytes()).collect()
    }

    pub fn to_partial(&self) -> PartialState {
        PartialState(self.0.iter().copied().enumerate().collect())
    }

    pub fn restrict(&self, vars: &[VarId]) -> Result<PartialState> {
        let mut out = PartialState::new();
        for &v in vars {
            let value = *self
                .0
                .get(v)
                .ok_or_else(|| Error::invalid_arg(format!("unknown variable id {v}")))?;
            out.insert(v, value);
        }
        Ok(out)
    }

    /// True iff the state agrees with every binding of `p`.
    pub fn satisfies(&self, p: &PartialState) -> Result<bool> {
        self.check_universe(p)?;
        Ok(self.holds(p))
    }

    /// Unchecked `satisfies`: bindings outside the universe count as false.
    pub fn holds(&self, p: &PartialState) -> bool {
        p.iter().all(|(v, x)| self.0.get(v) == Some(&x))
    }

    /// Result of applying `action`; the state is returned unchanged when the
    /// precondition fails.
    pub fn apply_action(&self, action: &Action) -> Result<State> {
        self.check_universe(&action.pre)?;
        self.check_universe(&action.post)?;
        let mut next = self.clone();
        next.step(action);
        Ok(next)
    }

    /// Applies `action` in place with skip semantics. Returns whether the
    /// precondition held.
    pub fn step(&mut self, action: &Action) -> bool {
        if !self.holds(&action.pre) {
            return false;
        }
        self.overwrite(&action.post);
        true
    }

    /// Writes every binding of `p` into the state.
    pub fn overwrite(&mut self, p: &PartialState) {
        for (v, x) in p.iter() {
            self.0[v] = x;
        }
    }

    fn check_universe(&self, p: &PartialState) -> Result<()> {
        match p.vars().find(|&v| v >= self.0.len()) {
            Some(v) => Err(Error::invalid_arg(format!(
                "variable id {v} outside a universe of {} variables",
                self.0.len()
            ))),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Action {
    pub name: String,
    pub pre: PartialState,
    pub post: PartialState,
}

impl Action {
    pub fn new(name: impl Into<String>, pre: PartialState, post: PartialState) -> Self {
        Action {
            name: name.into(),
            pre,
            post,
        }
    }

    /// Actions with an empty postcondition never change a state.
    pub fn is_noop(&self) -> bool {
        self.post.is_empty()
    }

    pub fn is_applicable(&self, s: &State) -> bool {
        s.holds(&self.pre)
    }

    /// Structural equality on `(pre, post)`, ignoring the name.
    pub fn same_effect(&self, other: &Action) -> bool {
        self.pre == other.pre && self.post == other.post
    }

    pub fn mentioned_vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.pre.vars().chain(self.post.vars())
    }

    pub fn mentioned_values(&self) -> impl Iterator<Item = Value> + '_ {
        self.pre.iter().chain(self.post.iter()).map(|(_, x)| x)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Plan(pub Vec<ActionId>);

impl Plan {
    pub fn empty() -> Self {
        Plan(Vec::new())
    }

    pub fn steps(&self) -> &[ActionId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(parts: &[&[ActionId]]) -> Plan {
        Plan(parts.iter().flat_map(|p| p.iter().copied()).collect())
    }
}

impl From<Vec<ActionId>> for Plan {
    fn from(steps: Vec<ActionId>) -> Self {
        Plan(steps)
    }
}

/// `Π = (V, I, G, A)`, validated at construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanningInstance {
    variables: Vec<Variable>,
    initial: State,
    goal: PartialState,
    actions: Vec<Action>,
}

impl PlanningInstance {
    pub fn new(
        variables: Vec<Variable>,
        initial: State,
        goal: PartialState,
        actions: Vec<Action>,
    ) -> Result<Self> {
        let inst = PlanningInstance {
            variables,
            initial,
            goal,
            actions,
        };
        inst.validate()?;
        for a in inst.actions.iter().filter(|a| a.is_noop()) {
            log::warn!("action `{}` has an empty postcondition", a.name);
        }
        Ok(inst)
    }

    fn validate(&self) -> Result<()> {
        let mut names = HashSet::new();
        for v in &self.variables {
            if v.domain_size == 0 {
                return Err(Error::invalid_instance(format!(
                    "variable `{}` has an empty domain",
                    v.name
                )));
            }
            if !v.labels.is_empty() && v.labels.len() != v.domain_size as usize {
                return Err(Error::invalid_instance(format!(
                    "variable `{}` has {} labels for {} values",
                    v.name,
                    v.labels.len(),
                    v.domain_size
                )));
            }
            if !names.insert(v.name.as_str()) {
                return Err(Error::invalid_instance(format!(
                    "duplicate variable `{}`",
                    v.name
                )));
            }
        }
        self.check_state(&self.initial)
            .map_err(|e| Error::invalid_instance(format!("initial state: {e}")))?;
        self.check_partial(&self.goal)
            .map_err(|e| Error::invalid_instance(format!("goal: {e}")))?;
        let mut names = HashSet::new();
        for a in &self.actions {
            if !names.insert(a.name.as_str()) {
                return Err(Error::invalid_instance(format!(
                    "duplicate action `{}`",
                    a.name
                )));
            }
            self.check_partial(&a.pre)
                .and_then(|_| self.check_partial(&a.post))
                .map_err(|e| Error::invalid_instance(format!("action `{}`: {e}", a.name)))?;
        }
        Ok(())
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn initial(&self) -> &State {
        &self.initial
    }

    pub fn goal(&self) -> &PartialState {
        &self.goal
    }

    pub fn actions(&self) -> &[Action] {
        &self.actions
    }

    pub fn action(&self, id: ActionId) -> &Action {
        &self.actions[id.0]
    }

    pub fn action_ids(&self) -> impl Iterator<Item = ActionId> {
        (0..self.actions.len()).map(ActionId)
    }

    pub fn var_by_name(&self, name: &str) -> Option<VarId> {
        self.variables.iter().position(|v| v.name == name)
    }

    pub fn action_by_name(&self, name: &str) -> Option<ActionId> {
        self.actions.iter().position(|a| a.name == name).map(ActionId)
    }

    /// True when every variable's domain has at most two values.
    pub fn is_boolean(&self) -> bool {
        self.variables.iter().all(|v| v.domain_size <= 2)
    }

    /// True when the goal binds every variable.
    pub fn has_complete_goal(&self) -> bool {
        self.goal.len() == self.variables.len()
    }

    pub fn check_state(&self, s: &State) -> Result<()> {
        if s.len() != self.variables.len() {
            return Err(Error::invalid_arg(format!(
                "state has {} values, expected {}",
                s.len(),
                self.variables.len()
            )));
        }
        for (v, &x) in s.values().iter().enumerate() {
            self.check_binding(v, x)?;
        }
        Ok(())
    }

    pub fn check_partial(&self, p: &PartialState) -> Result<()> {
        p.iter().try_for_each(|(v, x)| self.check_binding(v, x))
    }

    fn check_binding(&self, v: VarId, x: Value) -> Result<()> {
        let var = self
            .variables
            .get(v)
            .ok_or_else(|| Error::invalid_arg(format!("unknown variable id {v}")))?;
        if x >= var.domain_size {
            return Err(Error::invalid_arg(format!(
                "value {x} out of range for `{}` (domain size {})",
                var.name, var.domain_size
            )));
        }
        Ok(())
    }

    pub fn check_plan(&self, plan: &Plan) -> Result<()> {
        match plan.steps().iter().find(|a| a.0 >= self.actions.len()) {
            Some(a) => Err(Error::invalid_arg(format!("unresolved action reference {a}"))),
            None => Ok(()),
        }
    }

    /// `s[p]`: left fold of skip-semantics application.
    pub fn apply_plan(&self, s: &State, plan: &Plan) -> Result<State> {
        self.check_state(s)?;
        self.check_plan(plan)?;
        Ok(self.run(s, plan.steps()))
    }

    /// Unchecked `apply_plan` over a slice of steps.
    pub fn run(&self, s: &State, steps: &[ActionId]) -> State {
        let mut out = s.clone();
        for &a in steps {
            out.step(self.action(a));
        }
        out
    }

    /// True iff `I[p]` satisfies the goal.
    pub fn is_solution_plan(&self, plan: &Plan) -> Result<bool> {
        Ok(self.apply_plan(&self.initial, plan)?.holds(&self.goal))
    }

    /// Rebuilds the instance with a different initial state and goal.
    pub fn with_initial_and_goal(&self, initial: State, goal: PartialState) -> Result<Self> {
        PlanningInstance::new(self.variables.clone(), initial, goal, self.actions.clone())
    }
}
