use super::subgroup::closure_mask;
use super::{FiniteGroup, GroupElem, MAX_GROUP_ORDER};
use crate::error::{Error, Result};

/// Backtracking nodes allowed per automorphism/isomorphism enumeration.
const NODE_BUDGET: u64 = 20_000_000;

/// An automorphism stored as its image table: `images[x]` is the image of `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAutomorphism {
    images: Vec<GroupElem>,
}

impl GroupAutomorphism {
    pub fn identity(order: usize) -> Self {
        GroupAutomorphism { images: (0..order).collect() }
    }

    /// Wraps an image table after checking it is a bijective homomorphism of `g`.
    pub fn new(g: &FiniteGroup, images: Vec<GroupElem>) -> Result<Self> {
        let a = GroupAutomorphism { images };
        if a.is_automorphism_of(g) {
            Ok(a)
        } else {
            Err(Error::InvalidParameter("map is not an automorphism".into()))
        }
    }

    /// The inner automorphism `x -> g^-1 x g`.
    pub fn inner(group: &FiniteGroup, g: GroupElem) -> Self {
        GroupAutomorphism { images: group.elements().map(|x| group.conjugate(x, g)).collect() }
    }

    pub fn images(&self) -> &[GroupElem] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: GroupElem) -> GroupElem {
        self.images[x]
    }

    /// `self` followed by `other` (exponent notation: `x^(self other)`).
    pub fn then(&self, other: &GroupAutomorphism) -> GroupAutomorphism {
        GroupAutomorphism { images: self.images.iter().map(|&y| other.images[y]).collect() }
    }

    pub fn inverse(&self) -> GroupAutomorphism {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        GroupAutomorphism { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn is_automorphism_of(&self, g: &FiniteGroup) -> bool {
        let n = g.order();
        if self.images.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &y in &self.images {
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return false;
            }
        }
        self.images[g.identity()] == g.identity()
            && (0..n).all(|a| (0..n).all(|b| self.images[g.mul(a, b)] == g.mul(self.images[a], self.images[b])))
    }

    /// Image of a subset, sorted.
    pub fn apply_set(&self, s: &[GroupElem]) -> Vec<GroupElem> {
        let mut out: Vec<_> = s.iter().map(|&x| self.images[x]).collect();
        out.sort_unstable();
        out
    }
}

/// A short generating sequence: a single generator if the group is cyclic,
/// otherwise the first generating pair, otherwise greedy extension by the
/// element that enlarges the generated subgroup most.
pub fn generating_sequence(g: &FiniteGroup) -> Vec<GroupElem> {
    let n = g.order();
    if n == 1 {
        return Vec::new();
    }
    if let Some(x) = g.elements().find(|&x| g.element_order(x) == n) {
        return vec![x];
    }
    for x in 1..n {
        for y in x + 1..n {
            if closure_mask(g, &[x, y]).iter().filter(|&&b| b).count() == n {
                return vec![x, y];
            }
        }
    }
    let mut gens: Vec<GroupElem> = Vec::new();
    let mut current = closure_mask(g, &gens);
    while current.iter().any(|&b| !b) {
        let (best, mask) = g
            .elements()
            .filter(|&x| !current[x])
            .map(|x| {
                let mut trial = gens.clone();
                trial.push(x);
                let m = closure_mask(g, &trial);
                (x, m)
            })
            .max_by(|(xa, ma), (xb, mb)| {
                let ca = ma.iter().filter(|&&b| b).count();
                let cb = mb.iter().filter(|&&b| b).count();
                ca.cmp(&cb).then(xb.cmp(xa))
            })
            .expect("some element lies outside a proper subgroup");
        gens.push(best);
        current = mask;
    }
    gens
}

/// Extends generator images to a map on the subgroup generated by `gens`,
/// returning `None` if the assignment is not a well-defined injective
/// homomorphism there.
fn extend_images(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[GroupElem],
    images: &[GroupElem],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used = vec![false; h.order()];
    map[g.identity()] = h.identity();
    used[h.identity()] = true;
    let mut queue = vec![g.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&gi, &hi) in gens.iter().zip(images) {
            let y = g.mul(x, gi);
            let img = h.mul(map[x], hi);
            if map[y] == usize::MAX {
                if used[img] {
                    return None;
                }
                used[img] = true;
                map[y] = img;
                queue.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    Some(map)
}

/// All injective homomorphisms `g -> h` that are onto (i.e. isomorphisms),
/// stopping after `limit` results. Candidates for each generator image are
/// restricted to elements of the same order.
fn search_isomorphisms(g: &FiniteGroup, h: &FiniteGroup, limit: usize) -> Result<Vec<Vec<usize>>> {
    let mut found = Vec::new();
    if g.order() != h.order() {
        return Ok(found);
    }
    let gens = generating_sequence(g);
    let candidates: Vec<Vec<GroupElem>> = gens
        .iter()
        .map(|&x| {
            let o = g.element_order(x);
            h.elements().filter(|&y| h.element_order(y) == o).collect()
        })
        .collect();
    let mut choice = Vec::with_capacity(gens.len());
    let mut nodes = 0u64;
    backtrack(g, h, &gens, &candidates, &mut choice, &mut found, limit, &mut nodes)?;
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[GroupElem],
    candidates: &[Vec<GroupElem>],
    choice: &mut Vec<GroupElem>,
    found: &mut Vec<Vec<usize>>,
    limit: usize,
    nodes: &mut u64,
) -> Result<()> {
    let depth = choice.len();
    if depth == gens.len() {
        if let Some(map) = extend_images(g, h, gens, choice) {
            if map.iter().all(|&y| y != usize::MAX) {
                found.push(map);
            }
        }
        return Ok(());
    }
    for &c in &candidates[depth] {
        *nodes += 1;
        if *nodes > NODE_BUDGET {
            return Err(Error::ResourceLimit(format!(
                "automorphism search exceeded {NODE_BUDGET} nodes"
            )));
        }
        choice.push(c);
        if extend_images(g, h, &gens[..=depth], choice).is_some() {
            backtrack(g, h, gens, candidates, choice, found, limit, nodes)?;
        }
        choice.pop();
        if found.len() >= limit {
            return Ok(());
        }
    }
    Ok(())
}

/// Every automorphism of `g`, sorted by image table. Errors if `|g|` exceeds
/// `max_order`.
pub fn automorphisms_bounded(g: &FiniteGroup, max_order: usize) -> Result<Vec<GroupAutomorphism>> {
    if g.order() > max_order {
        return Err(Error::ResourceLimit(format!(
            "automorphism enumeration limited to groups of order <= {max_order}"
        )));
    }
    let mut all: Vec<GroupAutomorphism> = search_isomorphisms(g, g, usize::MAX)?
        .into_iter()
        .map(|images| GroupAutomorphism { images })
        .collect();
    all.sort();
    Ok(all)
}

/// [`automorphisms_bounded`] with the default group-order cap.
pub fn automorphisms(g: &FiniteGroup) -> Result<Vec<GroupAutomorphism>> {
    automorphisms_bounded(g, MAX_GROUP_ORDER)
}

/// An isomorphism `g -> h` as an image table, if one exists.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    search_isomorphisms(g, h, 1).ok()?.into_iter().next()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_cyclic, build_dihedral, build_direct_product, build_quaternion};

    /// Counts automorphisms by testing every bijection fixing the identity.
    fn brute_force_count(g: &FiniteGroup) -> usize {
        fn rec(g: &FiniteGroup, map: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut usize) {
            let k = map.len();
            if k == g.order() {
                let ok = (0..k).all(|a| (0..k).all(|b| map[g.mul(a, b)] == g.mul(map[a], map[b])));
                *count += usize::from(ok);
                return;
            }
            for y in 0..g.order() {
                if !used[y] {
                    used[y] = true;
                    map.push(y);
                    rec(g, map, used, count);
                    map.pop();
                    used[y] = false;
                }
            }
        }
        let mut count = 0;
        rec(g, &mut Vec::new(), &mut vec![false; g.order()], &mut count);
        count
    }

    #[test]
    fn automorphism_counts_match_brute_force() {
        let z2 = build_cyclic(2).unwrap();
        let groups = [
            build_cyclic(8).unwrap(),
            build_direct_product(&z2, &z2).unwrap(),
            build_dihedral(4).unwrap(),
            build_dihedral(3).unwrap(),
            build_quaternion(),
        ];
        let expected = [4, 6, 8, 6, 24];
        for (g, &e) in groups.iter().zip(&expected) {
            assert_eq!(brute_force_count(g), e);
            assert_eq!(automorphisms(g).unwrap().len(), e);
        }
    }

    #[test]
    fn aut_is_a_group_containing_inner() {
        let g = build_dihedral(5).unwrap();
        let auts = automorphisms(&g).unwrap();
        assert_eq!(auts.len(), 20);
        for a in &auts {
            assert!(a.is_automorphism_of(&g));
            assert!(auts.binary_search(&a.inverse()).is_ok());
            for b in &auts {
                assert!(auts.binary_search(&a.then(b)).is_ok());
            }
        }
        for x in g.elements() {
            assert!(auts.binary_search(&GroupAutomorphism::inner(&g, x)).is_ok());
        }
        let mut sorted = auts.clone();
        sorted.sort();
        assert_eq!(sorted, auts);
    }

    #[test]
    fn inner_automorphisms() {
        let z6 = build_cyclic(6).unwrap();
        assert!(z6.elements().all(|g| GroupAutomorphism::inner(&z6, g).is_identity()));
        let d = build_dihedral(5).unwrap();
        for g in d.elements() {
            assert_eq!(GroupAutomorphism::inner(&d, g).apply(g), g);
        }
        // b^(iota_a) = a^-2 b
        let iota = GroupAutomorphism::inner(&d, 1);
        assert_eq!(iota.apply(5), 5 + 3);
    }

    #[test]
    fn order_cap() {
        let g = build_cyclic(100).unwrap();
        assert!(matches!(automorphisms_bounded(&g, 64), Err(Error::ResourceLimit(_))));
        assert_eq!(automorphisms(&g).unwrap().len(), 40);
    }
}
