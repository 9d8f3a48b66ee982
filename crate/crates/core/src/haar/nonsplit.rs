//! Haar graphs over nonsplit metacyclic p-groups that are Cayley without being
//! algebraically Cayley.
//!
//! The family graph lives on `Z_2p x Z_q` with `q = p^(n-1)`; vertex `(i,j)`
//! has index `i*q + j`, and `(i1,j1) ~ (i1+1,j2)` iff `i1` is even or `j1 = j2`.

use super::witness::AlgCayleyWitness;
use super::{haar_graph, HaarSpec};
use crate::error::{Error, Result};
use super::witness::WitnessSearch;
use super::DEFAULT_CAYLEY_BUDGET;
use crate::graph::{is_isomorphic_bounded, Graph};
use crate::group::{
    build_metacyclic_bounded, is_nonsplit_metacyclic, subgroup_generated, FiniteGroup, GroupElem, Subgroup,
    GROUP_ORDER_CEILING,
};
use crate::perm::{PermGroup, Permutation};

#[derive(Debug, Clone)]
pub struct NonsplitFamily {
    pub graph: Graph,
    pub alpha: Permutation,
    pub beta: Permutation,
    pub gamma: Permutation,
    /// `<alpha, beta, gamma>`, regular on the vertices.
    pub group: PermGroup,
}

fn is_odd_prime(p: usize) -> bool {
    p > 2 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `Some(n)` if `order = p^n`.
fn log_exact(order: usize, p: usize) -> Option<u32> {
    let mut k = 0;
    let mut m = order;
    while m > 1 && m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some(k)
}

/// The family graph with its three maps; all stated relations are checked.
pub fn nonsplit_family_graph(p: usize, n: u32) -> Result<NonsplitFamily> {
    if !is_odd_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not an odd prime")));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n}, need n >= 2")));
    }
    let q = p
        .checked_pow(n - 1)
        .filter(|q| p * q <= GROUP_ORDER_CEILING)
        .ok_or_else(|| Error::ResourceLimit(format!("{p}^{n} exceeds {GROUP_ORDER_CEILING}")))?;
    let w = 2 * p;
    let idx = |i: usize, j: usize| (i % w) * q + j % q;
    let mut edges = Vec::new();
    for i in 0..w {
        for j1 in 0..q {
            if i % 2 == 0 {
                edges.extend((0..q).map(|j2| (idx(i, j1), idx(i + 1, j2))));
            } else {
                edges.push((idx(i, j1), idx(i + 1, j1)));
            }
        }
    }
    let graph = Graph::from_edges(w * q, &edges)?;
    let map = |f: &dyn Fn(usize, usize) -> usize| {
        Permutation::from_images((0..w * q).map(|v| f(v / q, v % q)).collect())
    };
    let alpha = map(&|i, j| idx(i, j + 1))?;
    let beta = map(&|i, j| idx(i + 2, j))?;
    let gamma = map(&|i, j| idx(w + 1 - i, j))?;

    let fail = |what: &str| Err(Error::VerificationFailure(format!("family ({p},{n}): {what}")));
    for (name, m) in [("alpha", &alpha), ("beta", &beta), ("gamma", &gamma)] {
        if !graph.is_automorphism(m) {
            return fail(&format!("{name} is not an automorphism"));
        }
    }
    if !gamma.then(&gamma).is_identity() {
        return fail("gamma is not an involution");
    }
    if alpha.then(&beta) != beta.then(&alpha) || alpha.then(&gamma) != gamma.then(&alpha) {
        return fail("alpha is not central");
    }
    if gamma.inverse().then(&beta).then(&gamma) != beta.inverse() {
        return fail("gamma does not invert beta");
    }
    let group = PermGroup::new(w * q, vec![alpha.clone(), beta.clone(), gamma.clone()])?;
    if group.order_u128() != Some((w * q) as u128) || !group.is_regular() {
        return fail("<alpha, beta, gamma> is not regular");
    }
    Ok(NonsplitFamily { graph, alpha, beta, gamma, group })
}

fn pow_mod(mut b: usize, mut e: usize, m: usize) -> usize {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// First `metacyclic:m,r,s,t` group of order `p^k <= max_order` that is
/// nonsplit metacyclic, searching `k` upwards, then `m`, `r`, `t`.
/// Parameters failing `r^s = 1` or `t(r-1) = 0` modulo `m` are skipped
/// without building a table.
pub fn find_nonsplit_metacyclic(p: usize, max_order: usize) -> Result<Option<FiniteGroup>> {
    if !is_odd_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not an odd prime")));
    }
    let max_order = max_order.min(GROUP_ORDER_CEILING);
    let mut order = p * p;
    while order <= max_order {
        let mut m = p;
        while m < order {
            let s = order / m;
            for r in (1..m).filter(|&r| r % p != 0 && pow_mod(r, s, m) == 1) {
                for t in (0..m).filter(|&t| t * (r - 1) % m == 0) {
                    let Ok(g) = build_metacyclic_bounded(m, r, s, t, max_order) else { continue };
                    if is_nonsplit_metacyclic(&g)? {
                        return Ok(Some(g));
                    }
                }
            }
            m *= p;
        }
        order *= p;
    }
    Ok(None)
}

/// A subgroup of index `p` in the `p`-group `g`: the Frattini subgroup
/// `<x^p, [x,y]>` extended by elements outside it until the index is `p`.
pub fn maximal_subgroup(g: &FiniteGroup, p: usize) -> Option<Subgroup> {
    if g.order() == 1 || log_exact(g.order(), p).is_none() {
        return None;
    }
    let mut gens: Vec<GroupElem> = g.elements().map(|x| g.pow(x, p as i64)).collect();
    for x in g.elements() {
        for y in g.elements() {
            gens.push(g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y)));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    let mut n = subgroup_generated(g, &gens);
    while n.order() * p < g.order() {
        let y = g.elements().find(|&y| !n.contains(y))?;
        gens.push(y);
        n = subgroup_generated(g, &gens);
    }
    Some(n)
}

#[derive(Debug, Clone)]
pub struct NonsplitReport {
    pub p: usize,
    pub n: u32,
    pub spec: HaarSpec,
    /// Vertex map from `H(G, N ∪ {x})` onto the family graph.
    pub isomorphism: Option<Vec<usize>>,
    /// `<alpha, beta, gamma>` carried back to `H(G, N ∪ {x})`.
    pub regular_group: Option<PermGroup>,
    pub witness: Option<AlgCayleyWitness>,
}

impl NonsplitReport {
    pub fn cayley(&self) -> bool {
        self.regular_group.is_some()
    }

    pub fn alg_cayley(&self) -> bool {
        self.witness.is_some()
    }
}

/// Checks both halves for `H(G, N ∪ {x})`: an isomorphism to the family graph
/// with a transported regular group, and the absence of a witness.
pub fn verify_nonsplit_example(group: &FiniteGroup, sub: &Subgroup, x: GroupElem) -> Result<NonsplitReport> {
    let order = group.order();
    if sub.order() == 0 || order % sub.order() != 0 {
        return Err(Error::InvalidParameter("N is not a subgroup of G".into()));
    }
    let p = order / sub.order();
    if !is_odd_prime(p) {
        return Err(Error::InvalidParameter(format!("|G:N| = {p} is not an odd prime")));
    }
    let n = log_exact(order, p)
        .filter(|&n| n >= 2)
        .ok_or_else(|| Error::InvalidParameter(format!("|G| = {order} is not a power of {p} with exponent >= 2")))?;
    if x >= order || sub.contains(x) {
        return Err(Error::InvalidParameter("x must lie outside N".into()));
    }
    if !is_nonsplit_metacyclic(group)? {
        return Err(Error::InvalidParameter(format!("{} is not nonsplit metacyclic", group.label())));
    }
    let mut subset = sub.members().to_vec();
    subset.push(x);
    let spec = HaarSpec::new(group.clone(), subset)?;
    let family = nonsplit_family_graph(p, n)?;
    let haar = haar_graph(&spec);
    let isomorphism = is_isomorphic_bounded(&haar, &family.graph, DEFAULT_CAYLEY_BUDGET, 2 * order)?;
    let regular_group = match &isomorphism {
        None => None,
        Some(phi) => {
            let mut phi_inv = vec![0; phi.len()];
            for (u, &v) in phi.iter().enumerate() {
                phi_inv[v] = u;
            }
            let mut gens = Vec::new();
            for m in [&family.alpha, &family.beta, &family.gamma] {
                let back = Permutation::from_images((0..phi.len()).map(|u| phi_inv[m.apply(phi[u])]).collect())?;
                if !haar.is_automorphism(&back) {
                    return Err(Error::VerificationFailure("transported map is not an automorphism".into()));
                }
                gens.push(back);
            }
            let k = PermGroup::new(phi.len(), gens)?;
            if !k.is_regular() {
                return Err(Error::VerificationFailure("transported group is not regular".into()));
            }
            Some(k)
        }
    };
    let witness = WitnessSearch::bounded(group, order)?.find(spec.subset());
    Ok(NonsplitReport { p, n, spec, isomorphism, regular_group, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_cyclic, build_dihedral, build_direct_product, find_isomorphism};

    /// Multiplication table of a regular permutation group, element `v` being
    /// the member sending 0 to `v`.
    fn regular_as_group(k: &PermGroup) -> FiniteGroup {
        let d = k.degree();
        let mut by_image = vec![None; d];
        for e in k.elements() {
            let v = e.apply(0);
            by_image[v] = Some(e);
        }
        let elems: Vec<Permutation> = by_image.into_iter().map(Option::unwrap).collect();
        let table = (0..d * d).map(|c| elems[c % d].apply(c / d)).collect();
        FiniteGroup::from_table(d, table, None).unwrap()
    }

    #[test]
    fn family_for_small_primes() {
        for (p, n) in [(3, 2), (5, 2), (3, 3)] {
            let f = nonsplit_family_graph(p, n).unwrap();
            let q = p.pow(n - 1);
            assert_eq!(f.graph.n(), 2 * p * q);
            assert_eq!(f.group.order_u128(), Some((2 * p * q) as u128));
            let expected = build_direct_product(&build_cyclic(q).unwrap(), &build_dihedral(p).unwrap()).unwrap();
            assert!(find_isomorphism(&regular_as_group(&f.group), &expected).is_some());
        }
        assert!(nonsplit_family_graph(4, 2).is_err());
        assert!(nonsplit_family_graph(2, 2).is_err());
        assert!(nonsplit_family_graph(3, 1).is_err());
        assert!(matches!(nonsplit_family_graph(3, 7), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn preconditions() {
        // split: trivial action
        let split = build_metacyclic_bounded(9, 1, 9, 0, 81).unwrap();
        let n = subgroup_generated(&split, &[1, 9 * 3]);
        assert_eq!(n.order(), 27);
        assert!(matches!(verify_nonsplit_example(&split, &n, 9), Err(Error::InvalidParameter(_))));
        let g = build_metacyclic_bounded(27, 4, 27, 9, 729).unwrap();
        let n = subgroup_generated(&g, &[1, 27 * 3]);
        assert_eq!(n.order(), 243);
        assert!(matches!(verify_nonsplit_example(&g, &n, 1), Err(Error::InvalidParameter(_))));
        assert!(matches!(verify_nonsplit_example(&g, &subgroup_generated(&g, &[1]), 27), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn maximal_subgroups_of_p_groups() {
        let g = build_metacyclic_bounded(27, 4, 27, 9, 729).unwrap();
        let n = maximal_subgroup(&g, 3).unwrap();
        assert_eq!(n.order(), 243);
        assert!(n.is_normal_in(&g));
        let z9 = build_cyclic(9).unwrap();
        assert_eq!(maximal_subgroup(&z9, 3).unwrap().members(), &[0, 3, 6]);
        assert!(maximal_subgroup(&z9, 5).is_none());
    }

    #[test]
    fn nothing_nonsplit_below_p6() {
        assert!(find_nonsplit_metacyclic(3, 243).unwrap().is_none());
        assert!(find_nonsplit_metacyclic(4, 243).is_err());
    }
}
