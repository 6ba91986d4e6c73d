use std::collections::VecDeque;
use std::time::Instant;

use indexmap::IndexMap;

use super::{sorted_glue, SolveResult, SolveStats, SolverConfig, Work};
use crate::error::{Error, Result};
use crate::reuse::{Certificate, Flavor, Infix, ReuseInstance};
use crate::sas::{ActionId, Plan, State};

/// Search node: before the reused infix, inside it (next case-plan index), or
/// after it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Before(State),
    Inside(State, usize),
    After(State),
}

impl Node {
    fn state(&self) -> &State {
        match self {
            Node::Before(s) | Node::Inside(s, _) | Node::After(s) => s,
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Move {
    Glue(ActionId),
    /// Start reusing the stored plan at this index.
    Enter(usize),
    /// Execute the next step of the stored plan.
    Case,
    Exit,
}

#[derive(Clone, Copy, Debug)]
struct Entry {
    cost: usize,
    parent: usize,
    via: Option<Move>,
}

/// Zero-one BFS over `(state, progress into the infix)`: glue steps cost one,
/// entering, advancing through and leaving the infix cost nothing. Infix
/// steps are only taken when applicable. Nodes are shared across infix start
/// points since the rest of the search only depends on the state and the next
/// plan index.
pub fn solve_infix_general(r: &ReuseInstance, config: &SolverConfig) -> Result<SolveResult> {
    if r.flavor() != Flavor::InfixGeneral {
        return Err(Error::invalid_arg(format!(
            "expected an infix-general instance, got {}",
            r.flavor()
        )));
    }
    let started = Instant::now();
    let inst = r.instance();
    let c = r.case().plan.steps();
    let glue = sorted_glue(r);
    let budget = r.budget();
    let mut work = Work::new(config.work_limit);

    let mut nodes: IndexMap<Node, Entry> = IndexMap::new();
    nodes.insert(
        Node::Before(inst.initial().clone()),
        Entry {
            cost: 0,
            parent: usize::MAX,
            via: None,
        },
    );
    let mut queue = VecDeque::from([0usize]);
    let mut done = vec![false];
    let mut found = None;

    while let Some(idx) = queue.pop_front() {
        if done[idx] {
            continue;
        }
        done[idx] = true;
        work.tick()?;
        let (node, entry) = nodes.get_index(idx).expect("queued nodes exist");
        let (node, cost) = (node.clone(), entry.cost);
        if let Node::After(s) = &node {
            if s.holds(inst.goal()) {
                found = Some(idx);
                break;
            }
        }

        let mut moves: Vec<(Node, Move, usize)> = Vec::new();
        match &node {
            Node::Before(s) => {
                for start in 0..=c.len() {
                    moves.push((Node::Inside(s.clone(), start), Move::Enter(start), 0));
                }
            }
            Node::Inside(s, next) => {
                if *next < c.len() {
                    let mut t = s.clone();
                    if t.step(inst.action(c[*next])) {
                        moves.push((Node::Inside(t, next + 1), Move::Case, 0));
                    }
                }
                moves.push((Node::After(s.clone()), Move::Exit, 0));
            }
            Node::After(_) => {}
        }
        if cost < budget && !matches!(node, Node::Inside(..)) {
            let s = node.state();
            for &a in &glue {
                let action = inst.action(a);
                if !action.is_applicable(s) {
                    continue;
                }
                let mut t = s.clone();
                t.overwrite(&action.post);
                let next = match node {
                    Node::Before(_) => Node::Before(t),
                    _ => Node::After(t),
                };
                moves.push((next, Move::Glue(a), 1));
            }
        }

        for (next, via, step_cost) in moves {
            let new_cost = cost + step_cost;
            let entry = Entry {
                cost: new_cost,
                parent: idx,
                via: Some(via),
            };
            let target = match nodes.get_index_of(&next) {
                Some(j) if nodes[j].cost <= new_cost => continue,
                Some(j) => {
                    nodes[j] = entry;
                    j
                }
                None => {
                    let (j, _) = nodes.insert_full(next, entry);
                    done.push(false);
                    j
                }
            };
            if step_cost == 0 {
                queue.push_front(target);
            } else {
                queue.push_back(target);
            }
        }
    }

    let stats = SolveStats {
        states_visited: nodes.len(),
        elapsed: started.elapsed(),
        ..Default::default()
    };
    let Some(goal_idx) = found else {
        return Ok(SolveResult::no(stats));
    };

    // Walk back: suffix glue, exit point, infix steps, entry, prefix glue.
    let mut prefix = Vec::new();
    let mut suffix = Vec::new();
    let mut end = None;
    let mut start = None;
    let mut idx = goal_idx;
    while let Some(via) = nodes[idx].via {
        let parent = nodes[idx].parent;
        match via {
            Move::Glue(a) => match nodes.get_index(idx).expect("node exists").0 {
                Node::Before(_) => prefix.push(a),
                _ => suffix.push(a),
            },
            Move::Exit => {
                if let Node::Inside(_, next) = nodes.get_index(parent).expect("node exists").0 {
                    end = Some(*next);
                }
            }
            Move::Enter(s) => start = Some(s),
            Move::Case => {}
        }
        idx = parent;
    }
    prefix.reverse();
    suffix.reverse();
    let infix = Infix::new(
        start.expect("goal path enters the infix"),
        end.expect("goal path leaves the infix"),
    );
    let split = prefix.len();
    let glue = Plan::concat(&[&prefix, &suffix]);
    Ok(SolveResult::yes(
        Certificate::InfixGeneral { glue, split, infix },
        stats,
    ))
}
