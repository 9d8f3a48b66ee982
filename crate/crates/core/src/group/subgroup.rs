use std::collections::BTreeSet;

use super::auto::{automorphisms, generating_sequence};
use super::{FiniteGroup, GroupElem, GROUP_ORDER_CEILING};
use crate::error::{Error, Result};

/// Cap on the number of subgroups produced by [`all_subgroups`].
const SUBGROUP_LIMIT: usize = 20_000;

/// A subgroup, as the sorted list of its members.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<GroupElem>,
}

impl Subgroup {
    /// Checks closure and wraps a member list.
    pub fn new(g: &FiniteGroup, mut members: Vec<GroupElem>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let mask = to_mask(g.order(), &members);
        let closed = mask[g.identity()]
            && members.iter().all(|&x| mask[g.inv(x)] && members.iter().all(|&y| mask[g.mul(x, y)]));
        if !closed {
            return Err(Error::InvalidParameter("element set is not a subgroup".into()));
        }
        Ok(Subgroup { members })
    }

    fn from_mask(mask: &[bool]) -> Self {
        Subgroup { members: mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect() }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Subgroup { members: vec![g.identity()] }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup { members: g.elements().collect() }
    }

    pub fn members(&self) -> &[GroupElem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: GroupElem) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_normal_in(&self, g: &FiniteGroup) -> bool {
        g.elements().all(|y| self.members.iter().all(|&x| self.contains(g.conjugate(x, y))))
    }

    fn mask(&self, n: usize) -> Vec<bool> {
        to_mask(n, &self.members)
    }
}

fn to_mask(n: usize, members: &[GroupElem]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &x in members {
        m[x] = true;
    }
    m
}

/// Membership mask of the subgroup generated by `gens`.
pub(crate) fn closure_mask(g: &FiniteGroup, gens: &[GroupElem]) -> Vec<bool> {
    let mut mask = vec![false; g.order()];
    mask[g.identity()] = true;
    let mut queue = vec![g.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !mask[y] {
                mask[y] = true;
                queue.push(y);
            }
        }
    }
    mask
}

/// `<T>`: the closure of `T` and the identity under products (inverses come
/// for free in a finite group).
pub fn subgroup_generated(g: &FiniteGroup, t: &[GroupElem]) -> Subgroup {
    Subgroup::from_mask(&closure_mask(g, t))
}

/// Does `n` (normal in `g`) have a complement? A complement is isomorphic to
/// `g/n`, so when the quotient is 2-generated a search over subgroups
/// generated by at most two elements outside `n` is complete. Otherwise all
/// subgroups are enumerated.
pub fn has_complement(g: &FiniteGroup, n: &Subgroup) -> Result<bool> {
    if !n.is_normal_in(g) {
        return Err(Error::InvalidParameter("subgroup is not normal".into()));
    }
    let index = g.order() / n.order();
    if index == 1 || n.order() == 1 {
        return Ok(true);
    }
    let nmask = n.mask(g.order());
    let is_complement = |h: &[bool]| {
        h.iter().filter(|&&b| b).count() == index
            && h.iter().zip(&nmask).filter(|(&a, &b)| a && b).count() == 1
    };
    let outside: Vec<GroupElem> = g.elements().filter(|&x| !nmask[x]).collect();
    let (q, _) = quotient_parts(g, n);
    if generating_sequence(&q).len() <= 2 {
        for (i, &x) in outside.iter().enumerate() {
            if index % g.element_order(x) != 0 {
                continue;
            }
            if is_complement(&closure_mask(g, &[x])) {
                return Ok(true);
            }
            for &y in &outside[i + 1..] {
                let h = closure_mask(g, &[x, y]);
                if is_complement(&h) {
                    return Ok(true);
                }
            }
        }
        return Ok(false);
    }
    Ok(all_subgroups(g)?.iter().any(|h| is_complement(&h.mask(g.order()))))
}

/// A factor group together with the natural projection.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[x]` is the coset index of `x`.
    pub projection: Vec<usize>,
}

fn quotient_parts(g: &FiniteGroup, n: &Subgroup) -> (FiniteGroup, Vec<usize>) {
    let mut projection = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if projection[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &m in n.members() {
            projection[g.mul(m, x)] = c;
        }
    }
    let k = reps.len();
    let mut table = vec![0; k * k];
    for (i, &x) in reps.iter().enumerate() {
        for (j, &y) in reps.iter().enumerate() {
            table[i * k + j] = projection[g.mul(x, y)];
        }
    }
    let names = reps.iter().map(|&x| format!("[{}]", g.name(x))).collect();
    let q = FiniteGroup::from_table_bounded(k, table, Some(names), GROUP_ORDER_CEILING)
        .expect("cosets of a normal subgroup form a group");
    (q, projection)
}

/// `g/n` on right cosets `n x`, cosets numbered by first appearance.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<Quotient> {
    if !n.is_normal_in(g) {
        return Err(Error::InvalidParameter("subgroup is not normal".into()));
    }
    let (group, projection) = quotient_parts(g, n);
    for a in g.elements() {
        for b in g.elements() {
            if projection[g.mul(a, b)] != group.mul(projection[a], projection[b]) {
                return Err(Error::VerificationFailure("projection is not a homomorphism".into()));
            }
        }
    }
    Ok(Quotient { group, projection })
}

/// Is `n` mapped onto itself by every automorphism of `g`?
pub fn is_characteristic(g: &FiniteGroup, n: &Subgroup) -> Result<bool> {
    Ok(automorphisms(g)?
        .iter()
        .all(|a| n.members().iter().all(|&x| n.contains(a.apply(x)))))
}

/// Every subgroup of `g`, sorted by (order, members). Built by closing the set
/// of cyclic subgroups under joins.
pub fn all_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let n = g.order();
    let mut known: BTreeSet<Vec<GroupElem>> = BTreeSet::new();
    let mut frontier: Vec<Vec<bool>> = Vec::new();
    for x in g.elements() {
        let m = closure_mask(g, &[x]);
        if known.insert(Subgroup::from_mask(&m).members) {
            frontier.push(m);
        }
    }
    let cyclic: Vec<Vec<bool>> = frontier.clone();
    while let Some(h) = frontier.pop() {
        for c in &cyclic {
            if c.iter().zip(&h).all(|(&a, &b)| !a || b) {
                continue;
            }
            let gens: Vec<GroupElem> = (0..n).filter(|&i| h[i] || c[i]).collect();
            let j = closure_mask(g, &gens);
            if known.insert(Subgroup::from_mask(&j).members) {
                if known.len() > SUBGROUP_LIMIT {
                    return Err(Error::ResourceLimit(format!(
                        "more than {SUBGROUP_LIMIT} subgroups"
                    )));
                }
                frontier.push(j);
            }
        }
    }
    let mut subs: Vec<Subgroup> = known.into_iter().map(|members| Subgroup { members }).collect();
    subs.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    Ok(subs)
}

/// The subgroup as a group in its own right; element `i` of the result is
/// `h.members()[i]` and keeps its name.
pub fn subgroup_as_group(g: &FiniteGroup, h: &Subgroup) -> FiniteGroup {
    let k = h.order();
    let index_of = |x: GroupElem| h.members().binary_search(&x).expect("subgroup is closed");
    let mut table = vec![0; k * k];
    for (i, &x) in h.members().iter().enumerate() {
        for (j, &y) in h.members().iter().enumerate() {
            table[i * k + j] = index_of(g.mul(x, y));
        }
    }
    let names = h.members().iter().map(|&x| g.name(x).to_string()).collect();
    let symbols = g
        .symbols()
        .iter()
        .filter(|(_, e)| h.contains(*e))
        .map(|(s, e)| (s.clone(), index_of(*e)))
        .collect();
    FiniteGroup::from_table_bounded(k, table, Some(names), GROUP_ORDER_CEILING)
        .expect("subgroup table is a group")
        .with_symbols(symbols)
}

/// True iff `g` is metacyclic (some cyclic normal `n` has cyclic `g/n`) and
/// no such `n` has a complement.
pub fn is_nonsplit_metacyclic(g: &FiniteGroup) -> Result<bool> {
    let mut metacyclic = false;
    let mut seen = BTreeSet::new();
    for x in g.elements() {
        let n = subgroup_generated(g, &[x]);
        if !seen.insert(n.members.clone()) || !n.is_normal_in(g) {
            continue;
        }
        let (q, _) = quotient_parts(g, &n);
        if !q.elements().any(|y| q.element_order(y) == q.order()) {
            continue;
        }
        metacyclic = true;
        if has_complement(g, &n)? {
            return Ok(false);
        }
    }
    Ok(metacyclic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{
        build_cyclic, build_dihedral, build_direct_product, build_metacyclic, build_quaternion,
        find_isomorphism, GroupAutomorphism,
    };

    #[test]
    fn generated_subgroups() {
        let d6 = build_dihedral(6).unwrap();
        assert_eq!(subgroup_generated(&d6, &[2]).order(), 3);
        assert_eq!(subgroup_generated(&d6, &[]).members(), &[0]);
        let z8 = build_cyclic(8).unwrap();
        let s = [0, 1, 3];
        let diffs: Vec<_> = s
            .iter()
            .flat_map(|&x| s.iter().map(move |&y| (x, y)))
            .map(|(x, y)| z8.mul(x, z8.inv(y)))
            .collect();
        assert_eq!(subgroup_generated(&z8, &diffs).order(), 8);
    }

    #[test]
    fn complements() {
        let z4 = build_cyclic(4).unwrap();
        let n = subgroup_generated(&z4, &[2]);
        assert!(!has_complement(&z4, &n).unwrap());
        let z2 = build_cyclic(2).unwrap();
        let k = build_direct_product(&z2, &z2).unwrap();
        let n = subgroup_generated(&k, &[2]);
        assert!(has_complement(&k, &n).unwrap());
        let q = build_quaternion();
        let n = subgroup_generated(&q, &[2]);
        assert!(!has_complement(&q, &n).unwrap());
        // dihedral splits over its rotations
        let d = build_dihedral(5).unwrap();
        assert!(has_complement(&d, &subgroup_generated(&d, &[1])).unwrap());
        let not_normal = subgroup_generated(&d, &[5]);
        assert!(has_complement(&d, &not_normal).is_err());
    }

    #[test]
    fn quotients() {
        let z8 = build_cyclic(8).unwrap();
        let q = quotient(&z8, &subgroup_generated(&z8, &[4])).unwrap();
        assert!(find_isomorphism(&q.group, &build_cyclic(4).unwrap()).is_some());
        let d = build_dihedral(7).unwrap();
        let q = quotient(&d, &subgroup_generated(&d, &[1])).unwrap();
        assert_eq!(q.group.order(), 2);
        let q = quotient(&d, &Subgroup::whole(&d)).unwrap();
        assert_eq!(q.group.order(), 1);
        for a in d.elements() {
            for b in d.elements() {
                assert_eq!(q.projection[d.mul(a, b)], q.group.mul(q.projection[a], q.projection[b]));
            }
        }
    }

    #[test]
    fn characteristic_subgroups() {
        for n in 3..=9 {
            let d = build_dihedral(n).unwrap();
            let c = subgroup_generated(&d, &[1]);
            assert!(is_characteristic(&d, &c).unwrap(), "n = {n}");
            assert!(is_characteristic(&d, &Subgroup::trivial(&d)).unwrap());
            assert!(is_characteristic(&d, &Subgroup::whole(&d)).unwrap());
        }
        let z2 = build_cyclic(2).unwrap();
        let k = build_direct_product(&z2, &z2).unwrap();
        // explicit automorphisms moving each involution
        let swap = GroupAutomorphism::new(&k, vec![0, 2, 1, 3]).unwrap();
        let other = GroupAutomorphism::new(&k, vec![0, 3, 2, 1]).unwrap();
        for x in 1..4 {
            assert!(swap.apply(x) != x || other.apply(x) != x);
            let h = subgroup_generated(&k, &[x]);
            assert!(!is_characteristic(&k, &h).unwrap());
        }
    }

    #[test]
    fn subgroup_lattice_sizes() {
        // D4 has 10 subgroups, Q8 has 6, Z2^2 has 5
        assert_eq!(all_subgroups(&build_dihedral(4).unwrap()).unwrap().len(), 10);
        assert_eq!(all_subgroups(&build_quaternion()).unwrap().len(), 6);
        let z2 = build_cyclic(2).unwrap();
        assert_eq!(all_subgroups(&build_direct_product(&z2, &z2).unwrap()).unwrap().len(), 5);
    }

    #[test]
    fn split_and_nonsplit_metacyclic() {
        assert!(!is_nonsplit_metacyclic(&build_dihedral(4).unwrap()).unwrap());
        assert!(is_nonsplit_metacyclic(&build_quaternion()).unwrap());
        assert!(!is_nonsplit_metacyclic(&build_metacyclic(9, 4, 3, 3).unwrap()).unwrap());
    }
}
