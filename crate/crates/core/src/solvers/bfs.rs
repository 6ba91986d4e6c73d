use indexmap::IndexMap;

use super::Work;
use crate::error::Result;
use crate::sas::{ActionId, PlanningInstance, State};

#[derive(Clone, Copy, Debug)]
struct Link {
    parent: usize,
    action: Option<ActionId>,
    distance: usize,
}

/// States reachable from a source by applicable actions of a fixed set, with
/// shortest distances and a BFS tree for path reconstruction. Insertion order
/// is discovery order.
#[derive(Clone, Debug)]
pub struct ReachabilityTable {
    nodes: IndexMap<State, Link>,
}

impl ReachabilityTable {
    pub fn source(&self) -> &State {
        self.nodes.get_index(0).expect("table holds its source").0
    }

    pub fn distance(&self, s: &State) -> Option<usize> {
        self.nodes.get(s).map(|l| l.distance)
    }

    pub fn visit_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&State, usize)> {
        self.nodes.iter().map(|(s, l)| (s, l.distance))
    }

    pub fn path_to(&self, s: &State) -> Option<Vec<ActionId>> {
        self.nodes.get_index_of(s).map(|i| self.path_to_index(i))
    }

    fn path_to_index(&self, mut idx: usize) -> Vec<ActionId> {
        let mut path = Vec::new();
        while let Some(a) = self.nodes[idx].action {
            path.push(a);
            idx = self.nodes[idx].parent;
        }
        path.reverse();
        path
    }
}

/// `Σ_{j=0}^{k} k!/(k−j)!`, saturating. A state reached with `k` distinct
/// actions is fixed by the order in which their last occurrences happen, so
/// this bounds how many states any search over those actions can reach.
pub fn ordered_subset_bound(k: usize) -> u128 {
    let mut term: u128 = 1;
    let mut total: u128 = 1;
    for j in 1..=k {
        term = term.saturating_mul((k - j + 1) as u128);
        total = total.saturating_add(term);
    }
    total
}

/// Full breadth-first enumeration up to `depth_cap` steps.
pub fn reachable_states(
    pi: &PlanningInstance,
    source: &State,
    actions: &[ActionId],
    depth_cap: usize,
) -> ReachabilityTable {
    let mut sorted = actions.to_vec();
    sorted.sort();
    let mut work = Work::new(u64::MAX);
    search(pi, source, &sorted, depth_cap, |_| false, &mut work)
        .expect("unbounded work")
        .0
}

/// BFS from `source` that stops at the first state satisfying `target`
/// (checked on discovery, so its path is the lexicographically smallest
/// shortest one when `actions` is sorted). Returns the table and the index of
/// the target state if one was found within `depth_cap`.
pub(crate) fn search(
    pi: &PlanningInstance,
    source: &State,
    actions: &[ActionId],
    depth_cap: usize,
    target: impl Fn(&State) -> bool,
    work: &mut Work,
) -> Result<(ReachabilityTable, Option<usize>)> {
    let mut nodes = IndexMap::new();
    nodes.insert(
        source.clone(),
        Link {
            parent: usize::MAX,
            action: None,
            distance: 0,
        },
    );
    let mut found = target(source).then_some(0);
    let mut cursor = 0;
    'outer: while found.is_none() && cursor < nodes.len() {
        let (state, link) = nodes.get_index(cursor).expect("cursor in range");
        let distance = link.distance;
        if distance >= depth_cap {
            break;
        }
        let state = state.clone();
        work.tick()?;
        for &a in actions {
            let action = pi.action(a);
            if !action.is_applicable(&state) {
                continue;
            }
            let mut next = state.clone();
            next.overwrite(&action.post);
            if nodes.contains_key(&next) {
                continue;
            }
            let is_target = target(&next);
            let (idx, _) = nodes.insert_full(
                next,
                Link {
                    parent: cursor,
                    action: Some(a),
                    distance: distance + 1,
                },
            );
            if is_target {
                found = Some(idx);
                break 'outer;
            }
        }
        cursor += 1;
    }
    debug_assert!(
        nodes.len() as u128 <= ordered_subset_bound(super::dedupe_actions(pi, actions).len()),
        "BFS visited {} states with {} distinct actions",
        nodes.len(),
        super::dedupe_actions(pi, actions).len()
    );
    Ok((ReachabilityTable { nodes }, found))
}

/// Path to the `idx`-th discovered state.
pub(crate) fn path(table: &ReachabilityTable, idx: usize) -> Vec<ActionId> {
    table.path_to_index(idx)
}
