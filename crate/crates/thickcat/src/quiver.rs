//! Quivers whose components are type-A paths, with any orientation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuiverError {
    #[error("quiver is not of type A: {0}")]
    NotTypeA(String),
    #[error("invalid arrow ({0}, {1}) for {2} vertices")]
    InvalidArrow(usize, usize, usize),
}

/// A finite quiver: `n` vertices (0-based) and a list of arrows.
///
/// Validation requires every connected component's underlying graph to be a
/// simple path (type A), which is the class where indecomposables are interval
/// modules and the noncrossing-partition oracle applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    n: usize,
    arrows: Vec<(usize, usize)>,
    components: Vec<Vec<usize>>,
}

impl Quiver {
    pub fn new(n: usize, arrows: Vec<(usize, usize)>) -> Result<Quiver, QuiverError> {
        for &(s, t) in &arrows {
            if s >= n || t >= n || s == t {
                return Err(QuiverError::InvalidArrow(s, t, n));
            }
        }
        let components = path_components(n, &arrows)?;
        Ok(Quiver { n, arrows, components })
    }

    /// Linear A_n quiver: arrows 0 -> 1 -> ... -> n-1.
    pub fn linear_a(n: usize) -> Quiver {
        let arrows = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Quiver::new(n, arrows).expect("linear A_n is valid")
    }

    /// Disjoint union of linear quivers, e.g. `[1, 1]` is A1 ⊔ A1.
    pub fn disjoint_linear(sizes: &[usize]) -> Quiver {
        let mut arrows = Vec::new();
        let mut off = 0;
        for &m in sizes {
            for i in 0..m.saturating_sub(1) {
                arrows.push((off + i, off + i + 1));
            }
            off += m;
        }
        Quiver::new(off, arrows).expect("disjoint linear quivers are valid")
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Connected components, each listed in path order (one endpoint to the
    /// other along the underlying graph).
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Is every arrow oriented forwards along the path order? (Used by the
    /// noncrossing-partition oracle, which needs the linear orientation.)
    pub fn is_linear(&self) -> bool {
        let mut pos = vec![0usize; self.n];
        for comp in &self.components {
            for (i, &v) in comp.iter().enumerate() {
                pos[v] = i;
            }
        }
        self.arrows.iter().all(|&(s, t)| {
            let same = self
                .components
                .iter()
                .any(|c| c.contains(&s) && c.contains(&t));
            same && pos[t] == pos[s] + 1
        })
    }

    /// All directed paths from `v` to `w`, as arrow-index sequences
    /// (empty sequence for `v == w`). Type A admits at most one.
    pub fn paths(&self, v: usize, w: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![(v, Vec::new())];
        while let Some((u, path)) = stack.pop() {
            if u == w {
                out.push(path.clone());
            }
            for (ai, &(s, t)) in self.arrows.iter().enumerate() {
                if s == u {
                    let mut p = path.clone();
                    p.push(ai);
                    stack.push((t, p));
                }
            }
        }
        out
    }
}

/// Decompose into components and verify each is a simple path; returns the
/// vertex list of each component in path order.
fn path_components(n: usize, arrows: &[(usize, usize)]) -> Result<Vec<Vec<usize>>, QuiverError> {
    let mut adj = vec![Vec::new(); n];
    for &(s, t) in arrows {
        adj[s].push(t);
        adj[t].push(s);
    }
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        // collect the component
        let mut comp = vec![start];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        // a path has max degree 2 and exactly |comp|-1 edges
        let mut edge_count = 0;
        for &(s, t) in arrows {
            if comp.contains(&s) && comp.contains(&t) {
                edge_count += 1;
            }
        }
        if edge_count + 1 != comp.len() {
            return Err(QuiverError::NotTypeA(format!(
                "component containing vertex {start} has a cycle or multiple edge"
            )));
        }
        for &v in &comp {
            if adj[v].len() > 2 {
                return Err(QuiverError::NotTypeA(format!("vertex {v} has degree > 2")));
            }
        }
        // order along the path from an endpoint
        let endpoint = *comp
            .iter()
            .find(|&&v| adj[v].len() <= 1)
            .expect("a path has an endpoint");
        let mut ordered = vec![endpoint];
        let mut prev = usize::MAX;
        let mut cur = endpoint;
        while ordered.len() < comp.len() {
            let next = *adj[cur]
                .iter()
                .find(|&&v| v != prev)
                .expect("path continues");
            ordered.push(next);
            prev = cur;
            cur = next;
        }
        comps.push(ordered);
    }
    Ok(comps)
}

/// On-disk quiver description (see the CLI).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuiverSpecFile {
    pub name: String,
    pub vertices: usize,
    /// 1-based arrow endpoints.
    pub arrows: Vec<[usize; 2]>,
    pub field: u64,
}

impl QuiverSpecFile {
    pub fn to_quiver(&self) -> Result<Quiver, QuiverError> {
        let arrows = self
            .arrows
            .iter()
            .map(|&[s, t]| (s.wrapping_sub(1), t.wrapping_sub(1)))
            .collect();
        Quiver::new(self.vertices, arrows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_quivers_validate() {
        let q = Quiver::linear_a(3);
        assert_eq!(q.num_vertices(), 3);
        assert_eq!(q.components().len(), 1);
        assert!(q.is_linear());
    }

    #[test]
    fn disjoint_union() {
        let q = Quiver::disjoint_linear(&[1, 1]);
        assert_eq!(q.num_vertices(), 2);
        assert_eq!(q.components().len(), 2);
    }

    #[test]
    fn zigzag_is_type_a_but_not_linear() {
        // 0 -> 1 <- 2
        let q = Quiver::new(3, vec![(0, 1), (2, 1)]).unwrap();
        assert!(!q.is_linear());
    }

    #[test]
    fn rejects_cycle_and_branching() {
        assert!(Quiver::new(3, vec![(0, 1), (1, 2), (2, 0)]).is_err());
        assert!(Quiver::new(4, vec![(0, 1), (0, 2), (0, 3)]).is_err());
    }

    #[test]
    fn unique_paths_in_type_a() {
        let q = Quiver::linear_a(4);
        assert_eq!(q.paths(0, 3).len(), 1);
        assert_eq!(q.paths(0, 3)[0], vec![0, 1, 2]);
        assert_eq!(q.paths(3, 0).len(), 0);
        assert_eq!(q.paths(2, 2), vec![Vec::<usize>::new()]);
    }
}
