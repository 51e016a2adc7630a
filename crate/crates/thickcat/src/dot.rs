//! Graphviz emission for Hasse diagrams of finite lattices, ranked by
//! lattice height. Output is deterministic: nodes and edges are listed in
//! index order.

use crate::frames::FiniteLattice;

/// Cover relations of the lattice order: pairs (i, j) with i < j and nothing
/// strictly between.
pub fn covers(l: &FiniteLattice) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..l.n {
        for j in 0..l.n {
            if i == j || !l.leq[i][j] {
                continue;
            }
            let between = (0..l.n)
                .any(|k| k != i && k != j && l.leq[i][k] && l.leq[k][j]);
            if !between {
                out.push((i, j));
            }
        }
    }
    out
}

/// Height of each element: length of the longest chain up from the bottom.
pub fn heights(l: &FiniteLattice) -> Vec<usize> {
    let cov = covers(l);
    let mut h = vec![0usize; l.n];
    // relax along covers; the order has no cycles so n passes suffice
    for _ in 0..l.n {
        for &(a, b) in &cov {
            if h[b] < h[a] + 1 {
                h[b] = h[a] + 1;
            }
        }
    }
    h
}

/// DOT source for the Hasse diagram, one rank per height level.
pub fn hasse_dot(l: &FiniteLattice, labels: &[String], name: &str) -> String {
    assert_eq!(labels.len(), l.n);
    let h = heights(l);
    let max_h = h.iter().copied().max().unwrap_or(0);
    let mut out = String::new();
    out.push_str(&format!("digraph \"{name}\" {{\n"));
    out.push_str("  rankdir=BT;\n  node [shape=box];\n");
    for i in 0..l.n {
        out.push_str(&format!("  n{i} [label=\"{}\"];\n", labels[i]));
    }
    for level in 0..=max_h {
        let members: Vec<usize> = (0..l.n).filter(|&i| h[i] == level).collect();
        if !members.is_empty() {
            out.push_str("  { rank=same;");
            for i in members {
                out.push_str(&format!(" n{i};"));
            }
            out.push_str(" }\n");
        }
    }
    for (a, b) in covers(l) {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}
