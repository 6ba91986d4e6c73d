//! Source problems, gadget constructions that map them to reuse instances, and
//! independent oracles for the source problems.
//!
//! Gadget names: pclique uses variables `x.i`, `y.i.j` and actions
//! `guess.i.d`, `clear.i.d`, `check.i.j.v.w`; lcs uses variables `v.i`, `s.i`,
//! `t.i`, `w` and actions `skip.i.u.none`, `skip.i.u.used`, `read.i.u`,
//! `check.u.σ`, `finish.i`; circuits use the node names, `sigma`, and actions
//! `set.x`, `on`, `off`, `gate.g`. Indices `i`, `j` are 1-based, `u` is a
//! 0-based string position.

mod gadgets;
mod oracles;
mod random;

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

pub use gadgets::{
    reduce_bool_to_d, reduce_kstep_to_l, reduce_l_to_kstep, reduce_lcs_to_v,
    reduce_pclique_to_lv, reduce_wsat_to_planmod,
};
pub use oracles::{evaluate_circuit, oracle_lcs, oracle_pclique, oracle_wsat, DEFAULT_LCS_CAP};
pub use random::{gen_random_source, SizeParams, SourceInstance, SourceKind};

use crate::error::{Error, Result};

fn check_ident(kind: &str, name: &str) -> Result<()> {
    if name.is_empty()
        || !name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
    {
        return Err(Error::invalid_arg(format!(
            "{kind} name `{name}` must be non-empty ASCII letters, digits, `_` or `-`"
        )));
    }
    Ok(())
}

/// Graph whose vertices are split into `k` parts. Vertices are dense indices
/// into `vertex_names`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedCliqueInstance {
    vertex_names: Vec<String>,
    parts: Vec<Vec<usize>>,
    edges: BTreeSet<(usize, usize)>,
}

impl PartitionedCliqueInstance {
    /// Every vertex must be in exactly one part. Edges are unordered; self
    /// loops are rejected.
    pub fn new(
        vertex_names: Vec<String>,
        parts: Vec<Vec<usize>>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let n = vertex_names.len();
        let mut seen = HashMap::new();
        for name in &vertex_names {
            check_ident("vertex", name)?;
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(Error::invalid_arg(format!("vertex `{name}` declared twice")));
            }
        }
        let mut owner = vec![None; n];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                match owner.get_mut(v) {
                    None => return Err(Error::invalid_arg(format!("vertex {v} does not exist"))),
                    Some(Some(_)) => {
                        return Err(Error::invalid_arg(format!(
                            "vertex `{}` is in two parts",
                            vertex_names[v]
                        )))
                    }
                    Some(o) => *o = Some(i),
                }
            }
        }
        if let Some(v) = owner.iter().position(Option::is_none) {
            return Err(Error::invalid_arg(format!("vertex `{}` is in no part", vertex_names[v])));
        }
        let mut norm = BTreeSet::new();
        for (u, w) in edges {
            if u >= n || w >= n {
                return Err(Error::invalid_arg(format!("edge ({u}, {w}) names an unknown vertex")));
            }
            if u == w {
                return Err(Error::invalid_arg(format!("self loop on `{}`", vertex_names[u])));
            }
            norm.insert((u.min(w), u.max(w)));
        }
        Ok(PartitionedCliqueInstance {
            vertex_names,
            parts,
            edges: norm,
        })
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn adjacent(&self, u: usize, w: usize) -> bool {
        self.edges.contains(&(u.min(w), u.max(w)))
    }

    /// ```text
    /// part u1 u2     # one line per part, may be empty
    /// part w1
    /// edge u1 w1
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut names = Vec::new();
        let mut index = HashMap::new();
        let mut parts = Vec::new();
        let mut edges = Vec::new();
        for (no, toks) in source_lines(text) {
            match toks[0] {
                "part" => {
                    let mut part = Vec::new();
                    for &name in &toks[1..] {
                        if index.insert(name.to_string(), names.len()).is_some() {
                            return Err(Error::invalid_arg(format!("line {no}: vertex `{name}` declared twice")));
                        }
                        part.push(names.len());
                        names.push(name.to_string());
                    }
                    parts.push(part);
                }
                "edge" => {
                    let [_, u, w] = toks[..] else {
                        return Err(Error::invalid_arg(format!("line {no}: expected `edge U W`")));
                    };
                    let look = |n: &str| {
                        index
                            .get(n)
                            .copied()
                            .ok_or_else(|| Error::invalid_arg(format!("line {no}: unknown vertex `{n}`")))
                    };
                    edges.push((look(u)?, look(w)?));
                }
                other => return Err(Error::invalid_arg(format!("line {no}: unknown keyword `{other}`"))),
            }
        }
        Self::new(names, parts, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for part in &self.parts {
            out.push_str("part");
            for &v in part {
                let _ = write!(out, " {}", self.vertex_names[v]);
            }
            out.push('\n');
        }
        for &(u, w) in &self.edges {
            let _ = writeln!(out, "edge {} {}", self.vertex_names[u], self.vertex_names[w]);
        }
        out
    }
}

/// Strings over single-character symbols and a target length `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcsInstance {
    strings: Vec<Vec<char>>,
    target_length: usize,
}

impl LcsInstance {
    /// Needs at least one string; symbols are ASCII letters and digits.
    pub fn new(strings: Vec<Vec<char>>, target_length: usize) -> Result<Self> {
        if strings.is_empty() {
            return Err(Error::invalid_arg("an lcs instance needs at least one string"));
        }
        if let Some(c) = strings.iter().flatten().find(|c| !c.is_ascii_alphanumeric()) {
            return Err(Error::invalid_arg(format!("symbol `{c}` is not an ASCII letter or digit")));
        }
        Ok(LcsInstance {
            strings,
            target_length,
        })
    }

    pub fn from_strs(strings: &[&str], target_length: usize) -> Result<Self> {
        Self::new(strings.iter().map(|s| s.chars().collect()).collect(), target_length)
    }

    pub fn strings(&self) -> &[Vec<char>] {
        &self.strings
    }

    pub fn k(&self) -> usize {
        self.strings.len()
    }

    pub fn target_length(&self) -> usize {
        self.target_length
    }

    /// Sorted union of the symbols in all strings.
    pub fn alphabet(&self) -> Vec<char> {
        let set: BTreeSet<char> = self.strings.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    /// ```text
    /// string ab      # one per line; a bare `string` is the empty string
    /// string ba
    /// target 1
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut strings = Vec::new();
        let mut target = None;
        for (no, toks) in source_lines(text) {
            match toks[..] {
                ["string"] => strings.push(Vec::new()),
                ["string", s] => strings.push(s.chars().collect()),
                ["target", m] => {
                    if target.is_some() {
                        return Err(Error::invalid_arg(format!("line {no}: second `target` line")));
                    }
                    target = Some(m.parse::<usize>().map_err(|_| {
                        Error::invalid_arg(format!("line {no}: expected a number, got `{m}`"))
                    })?);
                }
                _ => {
                    return Err(Error::invalid_arg(format!(
                        "line {no}: expected `string S` or `target N`"
                    )))
                }
            }
        }
        let target = target.ok_or_else(|| Error::invalid_arg("missing `target` line"))?;
        Self::new(strings, target)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.strings {
            out.push_str("string");
            if !s.is_empty() {
                out.push(' ');
                out.extend(s.iter());
            }
            out.push('\n');
        }
        let _ = writeln!(out, "target {}", self.target_length);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Input,
    And(Vec<usize>),
    Not(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitNode {
    pub name: String,
    pub kind: NodeKind,
}

/// Acyclic circuit of AND and NOT gates with one output and a weight bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitInstance {
    nodes: Vec<CircuitNode>,
    output: usize,
    weight: usize,
    order: Vec<usize>,
}

impl CircuitInstance {
    pub fn new(nodes: Vec<CircuitNode>, output: usize, weight: usize) -> Result<Self> {
        let mut names = HashMap::new();
        for (i, node) in nodes.iter().enumerate() {
            check_ident("node", &node.name)?;
            if node.name == "sigma" {
                return Err(Error::invalid_arg("`sigma` is reserved"));
            }
            if names.insert(node.name.as_str(), i).is_some() {
                return Err(Error::invalid_arg(format!("node `{}` declared twice", node.name)));
            }
            let inputs: &[usize] = match &node.kind {
                NodeKind::Input => &[],
                NodeKind::And(ins) if ins.is_empty() => {
                    return Err(Error::invalid_arg(format!("AND node `{}` has no inputs", node.name)))
                }
                NodeKind::And(ins) => ins,
                NodeKind::Not(y) => std::slice::from_ref(y),
            };
            if inputs.iter().any(|&y| y >= nodes.len()) {
                return Err(Error::invalid_arg(format!("node `{}` reads an unknown node", node.name)));
            }
        }
        if output >= nodes.len() {
            return Err(Error::invalid_arg("output is not a node"));
        }
        let order = topological_order(&nodes)
            .ok_or_else(|| Error::invalid_arg("circuit has a cycle"))?;
        Ok(CircuitInstance {
            nodes,
            output,
            weight,
            order,
        })
    }

    pub fn nodes(&self) -> &[CircuitNode] {
        &self.nodes
    }

    pub fn output(&self) -> usize {
        self.output
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn inputs(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.nodes[i].kind == NodeKind::Input)
            .collect()
    }

    /// All nodes, each after the nodes it reads.
    pub fn topological_order(&self) -> &[usize] {
        &self.order
    }

    /// ```text
    /// input x1
    /// not n1 x1
    /// and z x1 n1
    /// output z
    /// weight 1
    /// ```
    /// Nodes may be referenced before they are declared.
    pub fn parse(text: &str) -> Result<Self> {
        let mut decls: Vec<(usize, Vec<&str>)> = Vec::new();
        let mut output = None;
        let mut weight = None;
        for (no, toks) in source_lines(text) {
            match toks[..] {
                ["input", _] | ["not", _, _] => decls.push((no, toks)),
                ["and", _, _, ..] => decls.push((no, toks)),
                ["output", z] if output.is_none() => output = Some((no, z)),
                ["weight", k] if weight.is_none() => {
                    weight = Some(k.parse::<usize>().map_err(|_| {
                        Error::invalid_arg(format!("line {no}: expected a number, got `{k}`"))
                    })?)
                }
                _ => return Err(Error::invalid_arg(format!("line {no}: malformed circuit line"))),
            }
        }
        let index: HashMap<&str, usize> = decls
            .iter()
            .enumerate()
            .map(|(i, (_, toks))| (toks[1], i))
            .collect();
        let look = |no: usize, n: &str| {
            index
                .get(n)
                .copied()
                .ok_or_else(|| Error::invalid_arg(format!("line {no}: unknown node `{n}`")))
        };
        let mut nodes = Vec::new();
        for (no, toks) in &decls {
            let kind = match toks[0] {
                "input" => NodeKind::Input,
                "not" => NodeKind::Not(look(*no, toks[2])?),
                _ => NodeKind::And(
                    toks[2..]
                        .iter()
                        .map(|n| look(*no, n))
                        .collect::<Result<_>>()?,
                ),
            };
            nodes.push(CircuitNode {
                name: toks[1].to_string(),
                kind,
            });
        }
        let (no, z) = output.ok_or_else(|| Error::invalid_arg("missing `output` line"))?;
        let weight = weight.ok_or_else(|| Error::invalid_arg("missing `weight` line"))?;
        Self::new(nodes, look(no, z)?, weight)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for node in &self.nodes {
            match &node.kind {
                NodeKind::Input => {
                    let _ = writeln!(out, "input {}", node.name);
                }
                NodeKind::Not(y) => {
                    let _ = writeln!(out, "not {} {}", node.name, self.nodes[*y].name);
                }
                NodeKind::And(ins) => {
                    let _ = write!(out, "and {}", node.name);
                    for &y in ins {
                        let _ = write!(out, " {}", self.nodes[y].name);
                    }
                    out.push('\n');
                }
            }
        }
        let _ = writeln!(out, "output {}", self.nodes[self.output].name);
        let _ = writeln!(out, "weight {}", self.weight);
        out
    }
}

fn topological_order(nodes: &[CircuitNode]) -> Option<Vec<usize>> {
    let mut indegree = vec![0usize; nodes.len()];
    let mut readers = vec![Vec::new(); nodes.len()];
    for (g, node) in nodes.iter().enumerate() {
        let ins: Vec<usize> = match &node.kind {
            NodeKind::Input => vec![],
            NodeKind::And(ins) => ins.clone(),
            NodeKind::Not(y) => vec![*y],
        };
        for y in ins {
            indegree[g] += 1;
            readers[y].push(g);
        }
    }
    // Smallest ready index first, so declaration order survives when valid.
    let mut ready: BTreeSet<usize> = (0..nodes.len()).filter(|&g| indegree[g] == 0).collect();
    let mut order = Vec::with_capacity(nodes.len());
    while let Some(g) = ready.pop_first() {
        order.push(g);
        for &r in &readers[g] {
            indegree[r] -= 1;
            if indegree[r] == 0 {
                ready.insert(r);
            }
        }
    }
    (order.len() == nodes.len()).then_some(order)
}

/// Non-empty lines split into tokens, `#` comments removed, 1-based numbers.
fn source_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let toks: Vec<&str> = line.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}
