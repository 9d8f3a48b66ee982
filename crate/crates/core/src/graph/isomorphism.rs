//! Pairwise isomorphism by refinement on the disjoint union.
//!
//! A vertex of the first graph and a candidate image in the second are
//! individualized together. Any isomorphism consistent with the pairings so
//! far preserves the refined partition of the union, so every cell must hold
//! as many vertices of one graph as of the other.

use super::automorphism::MAX_VERTICES;
use super::partition::Partition;
use super::{Graph, DEFAULT_SEARCH_BUDGET};
use crate::error::{Error, Result};

/// A verified isomorphism `x -> y` as an image list, or `None`.
pub fn is_isomorphic(x: &Graph, y: &Graph) -> Result<Option<Vec<usize>>> {
    is_isomorphic_with_budget(x, y, DEFAULT_SEARCH_BUDGET)
}

pub fn is_isomorphic_with_budget(x: &Graph, y: &Graph, budget: u64) -> Result<Option<Vec<usize>>> {
    is_isomorphic_bounded(x, y, budget, MAX_VERTICES)
}

/// [`is_isomorphic_with_budget`] with an explicit vertex limit.
pub fn is_isomorphic_bounded(
    x: &Graph,
    y: &Graph,
    budget: u64,
    max_vertices: usize,
) -> Result<Option<Vec<usize>>> {
    let n = x.n();
    if n.max(y.n()) > max_vertices {
        return Err(Error::ResourceLimit(format!(
            "graphs have {} and {} vertices, limit is {max_vertices}",
            n,
            y.n()
        )));
    }
    if n != y.n() || x.edge_count() != y.edge_count() {
        return Ok(None);
    }
    let mut dx: Vec<usize> = (0..n).map(|v| x.degree(v)).collect();
    let mut dy: Vec<usize> = (0..n).map(|v| y.degree(v)).collect();
    dx.sort_unstable();
    dy.sort_unstable();
    if dx != dy {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let union = x.disjoint_union(y);
    let mut root = Partition::unit(2 * n);
    root.refine(&union, &[0]);
    let mut search = IsoSearch { union: &union, n, budget, spent: 0 };
    let Some(map) = search.run(root)? else { return Ok(None) };
    if !x.is_isomorphism_to(y, &map) {
        return Err(Error::VerificationFailure("isomorphism search produced a non-isomorphism".into()));
    }
    Ok(Some(map))
}

struct IsoSearch<'a> {
    union: &'a Graph,
    n: usize,
    budget: u64,
    spent: u64,
}

impl IsoSearch<'_> {
    fn balanced(&self, p: &Partition) -> bool {
        p.cell_starts().into_iter().all(|s| {
            let members = p.cell_members(s);
            2 * members.iter().filter(|&&v| v < self.n).count() == members.len()
        })
    }

    fn run(&mut self, p: Partition) -> Result<Option<Vec<usize>>> {
        self.spent += 1;
        if self.spent > self.budget {
            return Err(Error::ResourceLimit(format!("isomorphism search exceeded {} nodes", self.budget)));
        }
        if !self.balanced(&p) {
            return Ok(None);
        }
        let Some(t) = p.target_cell(2) else {
            // every cell pairs one vertex of each graph
            let mut map = vec![0; self.n];
            for s in p.cell_starts() {
                let m = p.cell_members(s);
                let (a, b) = if m[0] < self.n { (m[0], m[1]) } else { (m[1], m[0]) };
                map[a] = b - self.n;
            }
            let ok = (0..self.n).all(|u| {
                self.union.neighbors(u).iter().all(|&v| self.union.has_edge(map[u] + self.n, map[v] + self.n))
            });
            return Ok(ok.then_some(map));
        };
        let members = p.cell_members(t).to_vec();
        let v = *members.iter().find(|&&u| u < self.n).expect("balanced cell");
        let n = self.n;
        for &w in members.iter().filter(|&&u| u >= n) {
            let mut child = p.clone();
            let s = child.individualize(&[v, w]);
            child.refine(self.union, &[s]);
            if let Some(map) = self.run(child)? {
                return Ok(Some(map));
            }
        }
        Ok(None)
    }
}
