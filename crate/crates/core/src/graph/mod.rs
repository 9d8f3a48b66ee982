//! Undirected simple graphs, automorphism groups and isomorphism testing.

mod automorphism;
pub mod io;
mod isomorphism;
mod partition;

pub use automorphism::{automorphism_group, automorphism_group_with_budget, MAX_VERTICES};
pub use isomorphism::{is_isomorphic, is_isomorphic_bounded, is_isomorphic_with_budget};

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default node budget shared by the automorphism and isomorphism searches.
pub const DEFAULT_SEARCH_BUDGET: u64 = 5_000_000;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    neighbors: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        Graph { n, words, bits: vec![0; n * words], neighbors: vec![Vec::new(); n], labels: None }
    }

    /// Builds a graph from an edge list; repeated edges are merged, loops rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        g.sort_neighbors();
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        if self.has_edge(u, v) {
            return;
        }
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
        self.neighbors[u].push(v);
        self.neighbors[v].push(u);
    }

    pub(crate) fn sort_neighbors(&mut self) {
        self.neighbors.iter_mut().for_each(|l| l.sort_unstable());
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.neighbors[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The common valency, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.neighbors.first().map_or(0, Vec::len);
        self.neighbors.iter().all(|l| l.len() == d).then_some(d)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut members = vec![s];
            let mut head = 0;
            while head < members.len() {
                let u = members[head];
                head += 1;
                for &v in &self.neighbors[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Two colour classes; the smallest vertex of each component gets class 0.
    /// Fails with an odd cycle as certificate.
    pub fn bipartition(&self) -> Result<(Vec<usize>, Vec<usize>)> {
        let mut side = vec![u8::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.neighbors[u] {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        parent[v] = u;
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return Err(Error::NotBipartite { cycle: odd_cycle(&parent, u, v) });
                    }
                }
            }
        }
        let zero = (0..self.n).filter(|&v| side[v] == 0).collect();
        let one = (0..self.n).filter(|&v| side[v] == 1).collect();
        Ok((zero, one))
    }

    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.n
            && (0..self.n).all(|u| {
                let pu = p.apply(u);
                self.degree(u) == self.degree(pu)
                    && self.neighbors[u].iter().all(|&v| self.has_edge(pu, p.apply(v)))
            })
    }

    /// `true` if `map` is an edge-preserving bijection onto `other`.
    pub fn is_isomorphism_to(&self, other: &Graph, map: &[usize]) -> bool {
        if self.n != other.n || map.len() != self.n || self.edge_count() != other.edge_count() {
            return false;
        }
        let mut hit = vec![false; self.n];
        for &y in map {
            if y >= self.n || std::mem::replace(&mut hit[y], true) {
                return false;
            }
        }
        self.edges().iter().all(|&(u, v)| other.has_edge(map[u], map[v]))
    }

    /// The graph with vertex `v` renamed to `p(v)`.
    pub fn relabel(&self, p: &Permutation) -> Graph {
        let edges: Vec<(usize, usize)> =
            self.edges().iter().map(|&(u, v)| (p.apply(u), p.apply(v))).collect();
        Graph::from_edges(self.n, &edges).expect("relabelling keeps edges valid")
    }

    /// Vertices of `self` first, then those of `other` shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        g.sort_neighbors();
        g
    }
}

fn odd_cycle(parent: &[usize], u: usize, v: usize) -> Vec<usize> {
    let path = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let pu = path(u);
    let pv = path(v);
    // strip the shared tail above the lowest common ancestor
    let mut i = pu.len();
    let mut j = pv.len();
    while i > 1 && j > 1 && pu[i - 2] == pv[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle: Vec<usize> = pu[..i].to_vec();
    cycle.extend(pv[..j - 1].iter().rev());
    cycle
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub(crate) fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    pub(crate) fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    #[test]
    fn basic_queries() {
        let g = cycle(6);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.regular_degree(), Some(2));
        assert!(g.is_connected());
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.components(), vec![vec![0, 1], vec![2, 3]]);
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(1, 3)]).is_err());
    }

    #[test]
    fn bipartition_and_odd_cycles() {
        assert_eq!(cycle(4).bipartition().unwrap(), (vec![0, 2], vec![1, 3]));
        for n in [3, 5, 7, 9] {
            match cycle(n).bipartition() {
                Err(Error::NotBipartite { cycle: c }) => {
                    assert_eq!(c.len() % 2, 1);
                    let g = cycle(n);
                    for k in 0..c.len() {
                        assert!(g.has_edge(c[k], c[(k + 1) % c.len()]));
                    }
                }
                other => panic!("{other:?}"),
            }
        }
        match petersen().bipartition() {
            Err(Error::NotBipartite { cycle: c }) => assert_eq!(c.len() % 2, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn automorphism_check() {
        let g = cycle(5);
        let rot = Permutation::from_images(vec![1, 2, 3, 4, 0]).unwrap();
        assert!(g.is_automorphism(&rot));
        let bad = Permutation::from_images(vec![1, 0, 2, 3, 4]).unwrap();
        assert!(!g.is_automorphism(&bad));
        let h = g.relabel(&bad);
        assert!(g.is_isomorphism_to(&h, bad.images()));
    }
}
