//! Finite discrete domains (1D grids and small metric graphs) carrying a
//! Dirichlet Laplacian.

use crate::error::Error;
use crate::weyl::SparseOperator;
use crate::Result;

/// A connected finite grid or metric graph with uniform edge length
/// (spacing) and a Dirichlet Laplacian. Distances are graph distances.
#[derive(Debug, Clone)]
pub struct DiscreteDomain {
    spacing: f64,
    adjacency: Vec<Vec<usize>>,
    /// 1D coordinate of each node where meaningful (interval domains);
    /// BFS depth × h otherwise.
    positions: Vec<f64>,
    laplacian: SparseOperator,
}

impl DiscreteDomain {
    /// Interior grid of the interval (0, length): nodes at h, 2h, …, with
    /// Dirichlet walls at both ends.
    pub fn interval(length: f64, spacing: f64) -> Result<Self> {
        if !(spacing > 0.0) || !(length > 2.0 * spacing) {
            return Err(Error::invalid("interval needs 0 < spacing and length > 2·spacing"));
        }
        let n = (length / spacing).round() as usize - 1;
        if n < 3 {
            return Err(Error::invalid("interval grid too coarse"));
        }
        let adjacency: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                let mut nb = Vec::new();
                if i > 0 {
                    nb.push(i - 1);
                }
                if i + 1 < n {
                    nb.push(i + 1);
                }
                nb
            })
            .collect();
        let stencil = vec![2usize; n];
        let positions: Vec<f64> = (0..n).map(|i| (i + 1) as f64 * spacing).collect();
        let laplacian = build_laplacian(n, spacing, &adjacency, &stencil)?;
        Ok(DiscreteDomain { spacing, adjacency, positions, laplacian })
    }

    /// A star graph: a hub with `branches` arms of `arm_nodes` nodes each,
    /// Dirichlet at the arm tips.
    pub fn star(branches: usize, arm_nodes: usize, spacing: f64) -> Result<Self> {
        if branches < 2 || arm_nodes < 1 || !(spacing > 0.0) {
            return Err(Error::invalid("star needs ≥ 2 branches, ≥ 1 node per arm, spacing > 0"));
        }
        let n = 1 + branches * arm_nodes;
        let mut adjacency = vec![Vec::new(); n];
        let mut stencil = vec![0usize; n];
        stencil[0] = branches;
        for b in 0..branches {
            let first = 1 + b * arm_nodes;
            adjacency[0].push(first);
            adjacency[first].push(0);
            for j in 0..arm_nodes {
                let node = first + j;
                stencil[node] = 2; // tip gets a Dirichlet phantom
                if j + 1 < arm_nodes {
                    adjacency[node].push(node + 1);
                    adjacency[node + 1].push(node);
                }
            }
        }
        let positions = bfs_positions(&adjacency, 0, spacing);
        let laplacian = build_laplacian(n, spacing, &adjacency, &stencil)?;
        Ok(DiscreteDomain { spacing, adjacency, positions, laplacian })
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn position(&self, node: usize) -> f64 {
        self.positions[node]
    }

    pub fn laplacian(&self) -> &SparseOperator {
        &self.laplacian
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    /// Graph distance (hops × spacing) from one node to all nodes.
    pub fn distances_from(&self, node: usize) -> Vec<f64> {
        let n = self.node_count();
        let mut dist = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        dist[node] = 0;
        queue.push_back(node);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist.into_iter()
            .map(|d| {
                debug_assert!(d != usize::MAX, "domain must be connected");
                d as f64 * self.spacing
            })
            .collect()
    }

    /// Largest graph distance from a node (used for trivial-cover checks).
    pub fn eccentricity(&self, node: usize) -> f64 {
        self.distances_from(node)
            .into_iter()
            .fold(0.0f64, f64::max)
    }
}

fn bfs_positions(adjacency: &[Vec<usize>], root: usize, spacing: f64) -> Vec<f64> {
    let n = adjacency.len();
    let mut dist = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    dist[root] = 0;
    queue.push_back(root);
    while let Some(u) = queue.pop_front() {
        for &v in &adjacency[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist.into_iter().map(|d| d as f64 * spacing).collect()
}

fn build_laplacian(
    n: usize,
    spacing: f64,
    adjacency: &[Vec<usize>],
    stencil: &[usize],
) -> Result<SparseOperator> {
    // connectivity check
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in &adjacency[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    if count != n {
        return Err(Error::invalid("domain graph is not connected"));
    }
    let inv = 1.0 / (spacing * spacing);
    let mut triplets = Vec::new();
    for i in 0..n {
        debug_assert!(stencil[i] >= adjacency[i].len());
        triplets.push((i, i, stencil[i] as f64 * inv));
        for &j in &adjacency[i] {
            if j > i {
                triplets.push((i, j, -inv));
            }
        }
    }
    SparseOperator::from_triplets(n, &triplets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_bottom_matches_dirichlet_formula() {
        let d = DiscreteDomain::interval(10.0, 0.1).unwrap();
        let n = d.node_count();
        assert_eq!(n, 99);
        let exact = (2.0 - 2.0 * (std::f64::consts::PI * 0.1 / 10.0).cos()) / (0.1 * 0.1);
        let got = crate::weyl::smallest_eigenvalue(d.laplacian(), 1e-10, 300).unwrap();
        assert!((got - exact).abs() < 1e-8 * exact);
    }

    #[test]
    fn star_distances_run_through_hub() {
        let d = DiscreteDomain::star(3, 4, 1.0).unwrap();
        assert_eq!(d.node_count(), 13);
        let dist = d.distances_from(1); // first node of arm 0
        // to the first node of arm 1: via hub = 2 hops
        assert_eq!(dist[5], 2.0);
        assert_eq!(dist[0], 1.0);
    }
}
