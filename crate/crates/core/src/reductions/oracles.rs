use super::{CircuitInstance, LcsInstance, NodeKind, PartitionedCliqueInstance};
use crate::error::{Error, Result};

/// Default cap on the number of cells in the lcs position lattice.
pub const DEFAULT_LCS_CAP: u64 = 10_000_000;

/// Does a common subsequence of length at least `m` exist? Dynamic
/// programming over all head-position vectors, filled from the string ends
/// backwards.
pub fn oracle_lcs(l: &LcsInstance, cap: u64) -> Result<bool> {
    if l.target_length() == 0 {
        return Ok(true);
    }
    let strings = l.strings();
    let dims: Vec<usize> = strings.iter().map(|s| s.len() + 1).collect();
    let cells = dims
        .iter()
        .try_fold(1u64, |acc, &d| acc.checked_mul(d as u64))
        .filter(|&c| c <= cap)
        .ok_or(Error::ResourceLimit { limit: cap })?;
    let cells = cells as usize;
    // stride[i] is the flat-index step for head i.
    let mut stride = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        stride[i] = stride[i + 1] * dims[i + 1];
    }
    let mut best = vec![0u32; cells];
    let mut pos = vec![0usize; dims.len()];
    for flat in (0..cells).rev() {
        let mut rest = flat;
        for i in 0..dims.len() {
            pos[i] = rest / stride[i];
            rest %= stride[i];
        }
        if pos.iter().zip(&dims).any(|(&p, &d)| p + 1 == d) {
            continue;
        }
        let mut value = 0;
        for i in 0..dims.len() {
            value = value.max(best[flat + stride[i]]);
        }
        let first = strings[0][pos[0]];
        if strings.iter().zip(&pos).all(|(s, &p)| s[p] == first) {
            value = value.max(1 + best[flat + stride.iter().sum::<usize>()]);
        }
        best[flat] = value;
    }
    Ok(best[0] as usize >= l.target_length())
}

/// Tries every choice of one vertex per part.
pub fn oracle_pclique(g: &PartitionedCliqueInstance) -> bool {
    fn extend(g: &PartitionedCliqueInstance, chosen: &mut Vec<usize>) -> bool {
        let i = chosen.len();
        if i == g.k() {
            return true;
        }
        for &v in &g.parts()[i] {
            if chosen.iter().all(|&u| g.adjacent(u, v)) {
                chosen.push(v);
                if extend(g, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    extend(g, &mut Vec::new())
}

/// Value of every node for the given truth value of each input node.
pub fn evaluate_circuit(c: &CircuitInstance, true_inputs: &[usize]) -> Vec<bool> {
    let mut value = vec![false; c.nodes().len()];
    for &g in c.topological_order() {
        value[g] = match &c.nodes()[g].kind {
            NodeKind::Input => true_inputs.contains(&g),
            NodeKind::Not(y) => !value[*y],
            NodeKind::And(ins) => ins.iter().all(|&y| value[y]),
        };
    }
    value
}

/// Is the output true under some assignment with at most `k` true inputs?
pub fn oracle_wsat(c: &CircuitInstance) -> bool {
    fn subsets(c: &CircuitInstance, inputs: &[usize], from: usize, left: usize, chosen: &mut Vec<usize>) -> bool {
        if evaluate_circuit(c, chosen)[c.output()] {
            return true;
        }
        if left == 0 {
            return false;
        }
        for i in from..inputs.len() {
            chosen.push(inputs[i]);
            if subsets(c, inputs, i + 1, left - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let inputs = c.inputs();
    subsets(c, &inputs, 0, c.weight(), &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lcs(strings: &[&str], m: usize) -> bool {
        oracle_lcs(&LcsInstance::from_strs(strings, m).unwrap(), DEFAULT_LCS_CAP).unwrap()
    }

    #[test]
    fn lcs_examples() {
        assert!(lcs(&["ab", "ba"], 1));
        assert!(!lcs(&["ab", "ba"], 2));
        assert!(lcs(&["aa", "bb"], 0));
        assert!(!lcs(&["aa", "bb"], 1));
        assert!(lcs(&["abcb", "bcab", "cbab"], 2));
        assert!(lcs(&["abc"], 3));
        assert!(!lcs(&["abc", ""], 1));
        let big = LcsInstance::from_strs(&["aaaa", "aaaa", "aaaa"], 1).unwrap();
        assert!(matches!(oracle_lcs(&big, 100), Err(Error::ResourceLimit { limit: 100 })));
    }

    #[test]
    fn pclique_examples() {
        let names = |n: usize| (0..n).map(|i| format!("v{i}")).collect::<Vec<_>>();
        let edge = PartitionedCliqueInstance::new(names(2), vec![vec![0], vec![1]], [(0, 1)]).unwrap();
        assert!(oracle_pclique(&edge));
        let empty = PartitionedCliqueInstance::new(names(1), vec![vec![0], vec![]], []).unwrap();
        assert!(!oracle_pclique(&empty));
        let triangle = PartitionedCliqueInstance::new(names(3), vec![vec![0], vec![1], vec![2]], [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(oracle_pclique(&triangle));
        let path = PartitionedCliqueInstance::new(names(3), vec![vec![0], vec![1], vec![2]], [(0, 1), (1, 2)]).unwrap();
        assert!(!oracle_pclique(&path));
    }

    #[test]
    fn wsat_examples() {
        let unary = CircuitInstance::parse("input x1\nand z x1\noutput z\nweight 1\n").unwrap();
        assert!(oracle_wsat(&unary));
        let zero = CircuitInstance::parse("input x1\nand z x1\noutput z\nweight 0\n").unwrap();
        assert!(!oracle_wsat(&zero));
        let contra = CircuitInstance::parse("input x1\nnot n x1\nand z x1 n\noutput z\nweight 1\n").unwrap();
        assert!(!oracle_wsat(&contra));
        let negated = CircuitInstance::parse("input x1\nnot z x1\noutput z\nweight 0\n").unwrap();
        assert!(oracle_wsat(&negated));
    }
}
