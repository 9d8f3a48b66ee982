//! Automorphism groups by individualization and refinement.
//!
//! The first path of the search tree is followed to a discrete leaf. Then,
//! from the deepest level up, every vertex of the target cell that is not yet
//! known to share an orbit with the first-path vertex gets its subtree
//! searched for a leaf equivalent to the first one. Leaves are only accepted
//! after an exact edge check.

use num_bigint::BigUint;

use super::partition::Partition;
use super::{Graph, DEFAULT_SEARCH_BUDGET};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// Largest graph accepted by the searches.
pub const MAX_VERTICES: usize = 1000;

/// Full automorphism group of `x`, restricted to colour-preserving maps when a
/// colouring is given.
pub fn automorphism_group(x: &Graph, coloring: Option<&[usize]>) -> Result<PermGroup> {
    automorphism_group_with_budget(x, coloring, DEFAULT_SEARCH_BUDGET)
}

pub fn automorphism_group_with_budget(
    x: &Graph,
    coloring: Option<&[usize]>,
    budget: u64,
) -> Result<PermGroup> {
    let n = x.n();
    if n > MAX_VERTICES {
        return Err(Error::ResourceLimit(format!("graph has {n} vertices, limit is {MAX_VERTICES}")));
    }
    if let Some(c) = coloring {
        if c.len() != n {
            return Err(Error::InvalidParameter(format!("colouring of length {} for {n} vertices", c.len())));
        }
    }
    let mut root = match coloring {
        Some(c) => Partition::from_colors(c),
        None => Partition::unit(n),
    };
    let all = root.cell_starts();
    let root_trace = root.refine(x, &all);

    // first path: partitions[l] is the node at depth l, vertex[l] the choice made there
    let mut partitions = vec![root];
    let mut traces = vec![root_trace];
    let mut targets = Vec::new();
    let mut chosen = Vec::new();
    loop {
        let p = partitions.last().expect("root");
        let Some(t) = p.target_cell(1) else { break };
        let v = p.cell_members(t)[0];
        let mut child = p.clone();
        let s = child.individualize(&[v]);
        traces.push(child.refine(x, &[s]));
        targets.push(t);
        chosen.push(v);
        partitions.push(child);
    }
    let leaf = partitions.last().expect("root").elems.clone();

    let mut search = Search { graph: x, traces: &traces, targets: &targets, leaf: &leaf, budget, spent: 0 };
    let mut generators: Vec<Permutation> = Vec::new();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut order = BigUint::from(1u32);
    for level in (0..targets.len()).rev() {
        let v = chosen[level];
        let cell = partitions[level].cell_members(targets[level]).to_vec();
        for &w in &cell {
            if find(&mut parent, w) == find(&mut parent, v) {
                continue;
            }
            let mut child = partitions[level].clone();
            let s = child.individualize(&[w]);
            if let Some(gamma) = search.subtree(child, s, level + 1)? {
                for p in 0..n {
                    let (a, b) = (find(&mut parent, p), find(&mut parent, gamma.apply(p)));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
                generators.push(gamma);
            }
        }
        let root_v = find(&mut parent, v);
        let orbit = cell.iter().filter(|&&w| find(&mut parent, w) == root_v).count();
        order *= BigUint::from(orbit);
    }
    let group = PermGroup::new(n, generators)?;
    Ok(group.with_base_prefix(chosen).with_known_order(order))
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

struct Search<'a> {
    graph: &'a Graph,
    traces: &'a [u64],
    targets: &'a [usize],
    leaf: &'a [usize],
    budget: u64,
    spent: u64,
}

impl Search<'_> {
    /// Explores the node at `depth` obtained by individualizing at cell `s`,
    /// returning an automorphism mapping the first leaf into this subtree.
    fn subtree(&mut self, mut p: Partition, s: usize, depth: usize) -> Result<Option<Permutation>> {
        self.spent += 1;
        if self.spent > self.budget {
            return Err(Error::ResourceLimit(format!(
                "automorphism search exceeded {} nodes",
                self.budget
            )));
        }
        if p.refine(self.graph, &[s]) != self.traces[depth] {
            return Ok(None);
        }
        if p.is_discrete() {
            let mut images = vec![0; p.len()];
            for (a, b) in self.leaf.iter().zip(&p.elems) {
                images[*a] = *b;
            }
            let gamma = Permutation::from_images(images)?;
            return Ok(self.graph.is_automorphism(&gamma).then_some(gamma));
        }
        let Some(&t) = self.targets.get(depth) else { return Ok(None) };
        if p.target_cell(1) != Some(t) {
            return Ok(None);
        }
        for &u in &p.cell_members(t).to_vec() {
            let mut child = p.clone();
            let cs = child.individualize(&[u]);
            if let Some(gamma) = self.subtree(child, cs, depth + 1)? {
                return Ok(Some(gamma));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{complete, cycle, petersen};
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn order(g: &Graph) -> u128 {
        automorphism_group(g, None).unwrap().order_u128().unwrap()
    }

    /// Counts automorphisms by trying every bijection.
    fn brute_force_count(g: &Graph) -> u128 {
        fn rec(g: &Graph, map: &mut Vec<usize>, used: &mut [bool]) -> u128 {
            let k = map.len();
            if k == g.n() {
                return 1;
            }
            let mut total = 0;
            for y in 0..g.n() {
                if used[y] {
                    continue;
                }
                if (0..k).any(|u| g.has_edge(u, k) != g.has_edge(map[u], y)) {
                    continue;
                }
                used[y] = true;
                map.push(y);
                total += rec(g, map, used);
                map.pop();
                used[y] = false;
            }
            total
        }
        rec(g, &mut Vec::new(), &mut vec![false; g.n()])
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn known_orders() {
        assert_eq!(order(&cycle(4)), 8);
        assert_eq!(brute_force_count(&cycle(4)), 8);
        assert_eq!(order(&complete(4)), 24);
        assert_eq!(order(&Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()), 2);
        assert_eq!(order(&petersen()), 120);
        assert_eq!(order(&cycle(17)), 34);
        assert_eq!(order(&Graph::empty(6)), 720);
        assert_eq!(order(&Graph::empty(0)), 1);
    }

    #[test]
    fn generators_are_automorphisms_and_orbits_match() {
        let g = petersen();
        let a = automorphism_group(&g, None).unwrap();
        for p in a.generators() {
            assert!(g.is_automorphism(p));
        }
        assert!(a.is_transitive());
        // a path plus an isolated vertex: orbits {0,2}, {1}, {3}
        let h = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(automorphism_group(&h, None).unwrap().orbits(), vec![vec![0, 2], vec![1], vec![3]]);
    }

    #[test]
    fn regular_subgroups_of_small_automorphism_groups() {
        use crate::perm::{find_regular_subgroup, RegularSearch};
        let c6 = automorphism_group(&cycle(6), None).unwrap();
        assert_eq!(c6.order_u128(), Some(12));
        assert!(find_regular_subgroup(&c6, 1_000_000).is_found());
        let pet = automorphism_group(&petersen(), None).unwrap();
        assert!(matches!(find_regular_subgroup(&pet, 1_000_000), RegularSearch::None));
    }

    #[test]
    fn colouring_restricts() {
        let c6 = cycle(6);
        let colors: Vec<usize> = (0..6).map(|v| v % 2).collect();
        let a = automorphism_group(&c6, Some(&colors)).unwrap();
        assert_eq!(a.order_u128(), Some(6));
        assert_eq!(a.orbits().len(), 2);
    }

    #[test]
    fn matches_brute_force_on_all_small_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=7);
            let density = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, density);
            assert_eq!(order(&g), brute_force_count(&g), "{g:?}");
        }
    }

    #[test]
    fn order_is_relabelling_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(5..=30);
            let density = rng.gen_range(0.05..0.5);
            let g = random_graph(&mut rng, n, density);
            let mut images: Vec<usize> = (0..n).collect();
            images.shuffle(&mut rng);
            let h = g.relabel(&Permutation::from_images(images).unwrap());
            assert_eq!(order(&g), order(&h));
        }
    }

    #[test]
    fn budget_and_size_limits() {
        assert!(matches!(
            automorphism_group_with_budget(&petersen(), None, 2),
            Err(Error::ResourceLimit(_))
        ));
        assert!(matches!(automorphism_group(&Graph::empty(1001), None), Err(Error::ResourceLimit(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn every_generator_preserves_edges(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(2..=20);
            let g = random_graph(&mut rng, n, 0.3);
            let a = automorphism_group(&g, None).unwrap();
            for p in a.generators() {
                prop_assert!(g.is_automorphism(p));
            }
        }
    }
}
