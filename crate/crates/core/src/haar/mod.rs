//! Haar graphs `H(G,S)` and the questions asked about them.
//!
//! Vertex `(x, i)` of `H(G,S)` has index `x` when `i = 0` and `|G| + x` when
//! `i = 1`. Edges join `(x,0)` and `(sx,1)` for `s` in `S`.

mod convert;
mod nonsplit;
mod witness;

pub use convert::haar_from_bipartite_cayley;
pub use nonsplit::{
    find_nonsplit_metacyclic, maximal_subgroup, nonsplit_family_graph, verify_nonsplit_example, NonsplitFamily,
    NonsplitReport,
};
pub use witness::{
    alg_cayley_witness, build_sigma, class_swapping_automorphism, quasi_cayley_family,
    AlgCayleyWitness, SigmaMap, WitnessSearch,
};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{automorphism_group, Graph};
use crate::group::{dsl::parse_group, subgroup_generated, FiniteGroup, GroupAutomorphism, GroupElem};
use crate::perm::{find_regular_subgroup_seeded, PermGroup, Permutation, RegularSearch};

/// Default node budget for regular-subgroup searches.
pub const DEFAULT_CAYLEY_BUDGET: u64 = 1_000_000;

/// A group together with a subset, standing for `H(G,S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HaarSpec {
    group: FiniteGroup,
    subset: Vec<GroupElem>,
}

impl HaarSpec {
    /// `subset` is sorted and deduplicated.
    pub fn new(group: FiniteGroup, mut subset: Vec<GroupElem>) -> Result<Self> {
        if let Some(&x) = subset.iter().find(|&&x| x >= group.order()) {
            return Err(Error::InvalidParameter(format!(
                "element {x} out of range for a group of order {}",
                group.order()
            )));
        }
        subset.sort_unstable();
        subset.dedup();
        Ok(HaarSpec { group, subset })
    }

    /// Parses `<group>|<elements>`, e.g. `dihedral:6|1,a,a^3,b,ab,a^3*b`.
    pub fn parse(text: &str) -> Result<Self> {
        let (g, s) = text
            .rsplit_once('|')
            .ok_or_else(|| Error::Parse(format!("expected '<group>|<elements>' in '{text}'")))?;
        let group = parse_group(g)?;
        let subset = group.parse_subset(s)?;
        HaarSpec::new(group, subset)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn subset(&self) -> &[GroupElem] {
        &self.subset
    }

    pub fn with_subset(&self, subset: Vec<GroupElem>) -> Result<Self> {
        HaarSpec::new(self.group.clone(), subset)
    }

    /// `H(G, G \ S)`.
    pub fn complement(&self) -> HaarSpec {
        let rest = self.group.elements().filter(|x| self.subset.binary_search(x).is_err()).collect();
        HaarSpec { group: self.group.clone(), subset: rest }
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Vertex index of `(x, side)`.
    pub fn vertex(&self, x: GroupElem, side: usize) -> usize {
        side * self.group.order() + x
    }
}

impl fmt::Display for HaarSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.group.label(), self.group.format_subset(&self.subset))
    }
}

pub fn haar_graph(spec: &HaarSpec) -> Graph {
    let g = &spec.group;
    let n = g.order();
    let mut x = Graph::empty(2 * n);
    for v in g.elements() {
        for &s in &spec.subset {
            x.add_edge(v, n + g.mul(s, v));
        }
    }
    x.sort_neighbors();
    let labels = (0..2 * n).map(|v| format!("({},{})", g.name(v % n), v / n)).collect();
    x.with_labels(labels).expect("one label per vertex")
}

/// `cay(G,S)`: edges `x ~ sx`. `S` must be inverse-closed and avoid the identity.
pub fn cayley_graph(group: &FiniteGroup, subset: &[GroupElem]) -> Result<Graph> {
    if subset.contains(&group.identity()) {
        return Err(Error::InvalidConnectionSet("connection set contains the identity".into()));
    }
    if let Some(&s) = subset.iter().find(|&&s| s >= group.order()) {
        return Err(Error::InvalidConnectionSet(format!("element {s} out of range")));
    }
    if let Some(&s) = subset.iter().find(|&&s| !subset.contains(&group.inv(s))) {
        return Err(Error::InvalidConnectionSet(format!(
            "connection set contains {} but not its inverse",
            group.name(s)
        )));
    }
    let mut x = Graph::empty(group.order());
    for v in group.elements() {
        for &s in subset {
            x.add_edge(v, group.mul(s, v));
        }
    }
    x.sort_neighbors();
    x.with_labels(group.names().to_vec())
}

/// Connectivity read off from `<S S^-1> = G`.
pub fn connectivity_criterion(spec: &HaarSpec) -> Result<bool> {
    if spec.subset.is_empty() {
        return Err(Error::InvalidParameter("the connectivity criterion needs a nonempty subset".into()));
    }
    let g = &spec.group;
    let mut diffs = Vec::new();
    for &s in &spec.subset {
        for &t in &spec.subset {
            diffs.push(g.mul(s, g.inv(t)));
        }
    }
    Ok(subgroup_generated(g, &diffs).order() == g.order())
}

/// The spec with `S` replaced by `g S^alpha h`.
pub fn translate(spec: &HaarSpec, g: GroupElem, alpha: &GroupAutomorphism, h: GroupElem) -> HaarSpec {
    let grp = &spec.group;
    let subset = spec.subset.iter().map(|&s| grp.mul(grp.mul(g, alpha.apply(s)), h)).collect();
    HaarSpec::new(grp.clone(), subset).expect("images stay in the group")
}

/// `h_R: (x,i) -> (xh,i)` on the Haar vertex set.
pub fn right_translation(group: &FiniteGroup, h: GroupElem) -> Permutation {
    let n = group.order();
    let images = (0..2 * n).map(|v| (v / n) * n + group.mul(v % n, h)).collect();
    Permutation::from_images(images).expect("right multiplication is a bijection")
}

/// The group `G_R` of right translations on `2|G|` points.
pub fn right_translations(group: &FiniteGroup) -> PermGroup {
    let gens = crate::group::generating_sequence(group)
        .into_iter()
        .map(|h| right_translation(group, h))
        .collect();
    PermGroup::new(2 * group.order(), gens).expect("degree matches")
}

/// `k -> S_k`: the elements written as `x y^-1` with `x, y` in `S` in exactly
/// `k` ways. Only nonempty classes are listed.
pub fn difference_multiset(spec: &HaarSpec) -> BTreeMap<usize, Vec<GroupElem>> {
    let g = &spec.group;
    let mut count = vec![0usize; g.order()];
    for &x in &spec.subset {
        for &y in &spec.subset {
            count[g.mul(x, g.inv(y))] += 1;
        }
    }
    let mut out: BTreeMap<usize, Vec<GroupElem>> = BTreeMap::new();
    for d in g.elements() {
        if count[d] > 0 {
            out.entry(count[d]).or_default().push(d);
        }
    }
    out
}

pub fn is_vertex_transitive(x: &Graph) -> Result<bool> {
    Ok(automorphism_group(x, None)?.is_transitive())
}

/// Outcome of a Cayley test.
#[derive(Debug, Clone)]
pub enum CayleyVerdict {
    /// A regular subgroup of the automorphism group, verified.
    Yes(PermGroup),
    No,
    Unknown,
}

impl CayleyVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            CayleyVerdict::Yes(_) => "yes",
            CayleyVerdict::No => "no",
            CayleyVerdict::Unknown => "unknown",
        }
    }
}

/// Decides whether `x` is a Cayley graph by looking for a regular subgroup of
/// its automorphism group. `seed` (e.g. `G_R` for a Haar graph) is tried as
/// the start of the search first.
pub fn is_cayley(x: &Graph, seed: Option<&PermGroup>, budget: u64) -> Result<CayleyVerdict> {
    is_cayley_with_aut(x, &automorphism_group(x, None)?, seed, budget)
}

/// [`is_cayley`] with `Aut(x)` already computed.
pub fn is_cayley_with_aut(
    x: &Graph,
    aut: &PermGroup,
    seed: Option<&PermGroup>,
    budget: u64,
) -> Result<CayleyVerdict> {
    if !aut.is_transitive() {
        return Ok(CayleyVerdict::No);
    }
    let seeds: Vec<Permutation> = seed.map(|s| s.generators().to_vec()).unwrap_or_default();
    Ok(match find_regular_subgroup_seeded(aut, &seeds, budget) {
        RegularSearch::Found(r) => {
            if !r.is_regular() || !r.generators().iter().all(|p| x.is_automorphism(p)) {
                return Err(Error::VerificationFailure("regular subgroup failed verification".into()));
            }
            CayleyVerdict::Yes(r)
        }
        RegularSearch::None => CayleyVerdict::No,
        RegularSearch::Unknown => CayleyVerdict::Unknown,
    })
}

/// [`is_cayley`] for a Haar graph, optionally seeded with `G_R`.
pub fn is_cayley_haar(spec: &HaarSpec, seed_with_gr: bool, budget: u64) -> Result<CayleyVerdict> {
    let gr = right_translations(&spec.group);
    is_cayley(&haar_graph(spec), seed_with_gr.then_some(&gr), budget)
}
