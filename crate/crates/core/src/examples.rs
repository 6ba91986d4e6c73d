//! The small three-variable instance used across the docs and tests, and the
//! reuse query built on top of it.

use crate::reuse::{Case, Flavor, ReuseInstance, ReuseQuery};
use crate::sas::{Action, ActionId, PartialState, Plan, PlanningInstance, State, Variable};

fn ps(pairs: &[(usize, u32)]) -> PartialState {
    pairs.iter().copied().collect()
}

/// `v1 ∈ {0,1,2}`, `v2, v3 ∈ {0,1}`, start all-zero, goal `v1=2`, with
///
/// - `a1 = ({v1=0, v2=1} ⇒ {v1=1})`
/// - `a2 = ({v1=1, v2=1} ⇒ {v1=2})`
/// - `a3 = (∅ ⇒ {v2=1, v3=1})`
/// - `a4 = (∅ ⇒ {v3=0})`
///
/// `(a3, a1, a2)` solves it.
pub fn running_example() -> PlanningInstance {
    PlanningInstance::new(
        vec![
            Variable::new("v1", 3),
            Variable::new("v2", 2),
            Variable::new("v3", 2),
        ],
        State::new(vec![0, 0, 0]),
        ps(&[(0, 2)]),
        vec![
            Action::new("a1", ps(&[(0, 0), (1, 1)]), ps(&[(0, 1)])),
            Action::new("a2", ps(&[(0, 1), (1, 1)]), ps(&[(0, 2)])),
            Action::new("a3", ps(&[]), ps(&[(1, 1), (2, 1)])),
            Action::new("a4", ps(&[]), ps(&[(2, 0)])),
        ],
    )
    .expect("running example is well formed")
}

/// The stored case: `J = (0,1,0)`, `H = {v1=2}`, `c = (a1, a2)`.
pub fn running_case() -> Case {
    Case::new(
        State::new(vec![0, 1, 0]),
        ps(&[(0, 2)]),
        Plan(vec![ActionId(0), ActionId(1)]),
    )
}

/// Reuse query over the running example with `A' = {a3, a4}` and `M = 3`.
/// It is a positive instance: glue `(a3, a4)` before the case plan.
pub fn running_reuse(flavor: Flavor) -> ReuseInstance {
    ReuseInstance::new(
        running_example(),
        running_case(),
        ReuseQuery::new(vec![ActionId(2), ActionId(3)], 3, flavor),
    )
    .expect("running reuse instance is well formed")
}
