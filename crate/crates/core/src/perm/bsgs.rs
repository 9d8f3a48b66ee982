use std::ops::ControlFlow;
use std::sync::OnceLock;

use num_bigint::BigUint;

use super::Permutation;
use crate::error::{Error, Result};

/// A permutation group given by generators. The base and strong generating
/// set is built on first use by deterministic Schreier–Sims.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    base_prefix: Vec<usize>,
    known_order: Option<BigUint>,
    bsgs: OnceLock<Bsgs>,
}

#[derive(Debug, Clone)]
struct Level {
    point: usize,
    /// indices into `Bsgs::strong` of generators fixing the earlier base points
    gens: Vec<usize>,
    orbit: Vec<usize>,
    /// `transversal[p]` maps `point` to `p`
    transversal: Vec<Option<Permutation>>,
}

#[derive(Debug, Clone)]
struct Bsgs {
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        Level { point, gens: Vec::new(), orbit: Vec::new(), transversal: vec![None; degree] }
    }

    fn recompute(&mut self, strong: &[Permutation]) {
        let degree = self.transversal.len();
        self.transversal.iter_mut().for_each(|t| *t = None);
        self.transversal[self.point] = Some(Permutation::identity(degree));
        self.orbit = vec![self.point];
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for &s in &self.gens {
                let q = strong[s].apply(p);
                if self.transversal[q].is_none() {
                    let u = self.transversal[p].as_ref().expect("orbit point").then(&strong[s]);
                    self.transversal[q] = Some(u);
                    self.orbit.push(q);
                }
            }
        }
    }
}

impl Bsgs {
    fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level at
    /// which sifting stopped (`levels.len()` if it passed every level).
    fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let p = g.apply(level.point);
            match &level.transversal[p] {
                Some(u) => g = g.then(&u.inverse()),
                None => return (g, i),
            }
        }
        let n = self.levels.len();
        (g, n)
    }

    fn add_level(&mut self, point: usize, degree: usize) {
        let mut level = Level::new(point, degree);
        let prefix: Vec<usize> = self.levels.iter().map(|l| l.point).collect();
        for (idx, s) in self.strong.iter().enumerate() {
            if prefix.iter().all(|&b| s.apply(b) == b) {
                level.gens.push(idx);
            }
        }
        level.recompute(&self.strong);
        self.levels.push(level);
    }

    fn build(degree: usize, gens: &[Permutation], prefix: &[usize], known: Option<&BigUint>) -> Bsgs {
        let mut bsgs = Bsgs { strong: Vec::new(), levels: Vec::new() };
        for g in gens {
            if !g.is_identity() && !bsgs.strong.contains(g) {
                bsgs.strong.push(g.clone());
            }
        }
        let mut base: Vec<usize> = Vec::new();
        for &b in prefix {
            if !base.contains(&b) {
                base.push(b);
            }
        }
        for s in &bsgs.strong {
            if base.iter().all(|&b| s.apply(b) == b) {
                base.push(s.first_moved_point().expect("non-identity"));
            }
        }
        for b in base {
            bsgs.add_level(b, degree);
        }
        if known.is_some_and(|k| &bsgs.order() == k) {
            return bsgs;
        }
        let mut i = bsgs.levels.len();
        while i > 0 {
            let lvl = i - 1;
            let mut jump = None;
            'check: for p in bsgs.levels[lvl].orbit.clone() {
                let up = bsgs.levels[lvl].transversal[p].clone().expect("orbit point");
                for s in bsgs.levels[lvl].gens.clone() {
                    let q = bsgs.strong[s].apply(p);
                    let uq = bsgs.levels[lvl].transversal[q].as_ref().expect("orbit is closed");
                    let schreier = up.then(&bsgs.strong[s]).then(&uq.inverse());
                    let (h, j) = bsgs.strip(schreier, lvl + 1);
                    if j < bsgs.levels.len() || !h.is_identity() {
                        if j == bsgs.levels.len() {
                            let b = h.first_moved_point().expect("non-identity residue");
                            bsgs.add_level(b, degree);
                        }
                        let idx = bsgs.strong.len();
                        bsgs.strong.push(h);
                        for l in lvl + 1..=j {
                            if !bsgs.levels[l].gens.contains(&idx) {
                                bsgs.levels[l].gens.push(idx);
                            }
                            let strong = std::mem::take(&mut bsgs.strong);
                            bsgs.levels[l].recompute(&strong);
                            bsgs.strong = strong;
                        }
                        jump = Some(j + 1);
                        break 'check;
                    }
                }
            }
            match jump {
                Some(next) => {
                    if known.is_some_and(|k| &bsgs.order() == k) {
                        break;
                    }
                    i = next;
                }
                None => i -= 1,
            }
        }
        bsgs
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidParameter(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
        Ok(PermGroup {
            degree,
            generators,
            base_prefix: Vec::new(),
            known_order: None,
            bsgs: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("no generators")
    }

    /// Requests that the base begin with `prefix`.
    pub fn with_base_prefix(mut self, prefix: Vec<usize>) -> Self {
        self.base_prefix = prefix;
        self.bsgs = OnceLock::new();
        self
    }

    /// Supplies the group order when it is already known (e.g. from an
    /// automorphism search), letting Schreier–Sims stop as soon as the
    /// basic orbits account for it.
    pub(crate) fn with_known_order(mut self, order: BigUint) -> Self {
        self.known_order = Some(order);
        self.bsgs = OnceLock::new();
        self
    }

    fn bsgs(&self) -> &Bsgs {
        self.bsgs.get_or_init(|| {
            Bsgs::build(self.degree, &self.generators, &self.base_prefix, self.known_order.as_ref())
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.bsgs().levels.iter().map(|l| l.point).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.bsgs().strong
    }

    pub fn order(&self) -> BigUint {
        self.bsgs().order()
    }

    /// The order when it fits in a `u128`.
    pub fn order_u128(&self) -> Option<u128> {
        u128::try_from(self.order()).ok()
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::InvalidParameter(format!(
                "permutation of degree {} tested against a group of degree {}",
                p.degree(),
                self.degree
            )));
        }
        let bsgs = self.bsgs();
        let (h, j) = bsgs.strip(p.clone(), 0);
        Ok(j == bsgs.levels.len() && h.is_identity())
    }

    /// Orbit partition: each orbit sorted, orbits ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// Every orbit has exactly `|G|` points.
    pub fn is_semiregular(&self) -> bool {
        let order = self.order();
        self.orbits().iter().all(|o| BigUint::from(o.len()) == order)
    }

    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.is_semiregular()
    }

    /// Visits every element fixing the first `level` base points, stopping
    /// early when the visitor breaks.
    pub fn for_each_in_stabilizer<F>(&self, level: usize, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(&Permutation) -> ControlFlow<()>,
    {
        // elements factor as u_last ... u_level, applied left to right
        fn rec<F: FnMut(&Permutation) -> ControlFlow<()>>(
            levels: &[&Level],
            acc: &Permutation,
            visit: &mut F,
        ) -> ControlFlow<()> {
            match levels.split_first() {
                None => visit(acc),
                Some((first, rest)) => {
                    for &p in &first.orbit {
                        let u = first.transversal[p].as_ref().expect("orbit point");
                        rec(rest, &acc.then(u), visit)?;
                    }
                    ControlFlow::Continue(())
                }
            }
        }
        let bsgs = self.bsgs();
        let level = level.min(bsgs.levels.len());
        let tail: Vec<&Level> = bsgs.levels[level..].iter().rev().collect();
        rec(&tail, &Permutation::identity(self.degree), &mut visit)
    }

    /// The transversal element at base level `level` mapping its base point to `p`.
    pub fn transversal(&self, level: usize, p: usize) -> Option<Permutation> {
        self.bsgs().levels.get(level)?.transversal[p].clone()
    }

    /// All elements; only sensible for small groups.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        let _ = self.for_each_in_stabilizer(0, |p| {
            out.push(p.clone());
            ControlFlow::Continue(())
        });
        out
    }
}

pub(crate) fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in gens {
        for x in 0..degree {
            let (a, b) = (find(&mut parent, x), find(&mut parent, g.apply(x)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; degree];
    for x in 0..degree {
        let r = find(&mut parent, x);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(x);
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn naive_closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue = vec![Permutation::identity(degree)];
        seen.insert(queue[0].clone());
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen
    }

    fn cyc(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, c).unwrap()
    }

    #[test]
    fn small_orders() {
        let z7 = PermGroup::new(7, vec![cyc(7, &[&[0, 1, 2, 3, 4, 5, 6]])]).unwrap();
        assert_eq!(z7.order_u128(), Some(7));
        assert!(z7.is_regular());
        let s3 = PermGroup::new(3, vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(s3.order_u128(), Some(6));
        assert!(s3.is_transitive() && !s3.is_semiregular());
        let s8 = PermGroup::new(8, vec![cyc(8, &[&[0, 1]]), cyc(8, &[&[0, 1, 2, 3, 4, 5, 6, 7]])])
            .unwrap();
        assert_eq!(s8.order_u128(), Some(40320));
        let a5 = PermGroup::new(5, vec![cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
        assert_eq!(a5.order_u128(), Some(60));
        assert!(a5.contains(&cyc(5, &[&[0, 1], &[2, 3]])).unwrap());
        assert!(!a5.contains(&cyc(5, &[&[0, 1]])).unwrap());
        assert!(a5.contains(&Permutation::identity(4)).is_err());
        assert_eq!(PermGroup::trivial(4).order_u128(), Some(1));
        assert_eq!(PermGroup::trivial(4).orbits().len(), 4);
    }

    #[test]
    fn right_regular_dihedral() {
        // D_n acting on itself by right multiplication, index i = a^i, n+i = a^i b
        for n in 3..10 {
            let a: Vec<usize> = (0..2 * n)
                .map(|x| if x < n { (x + 1) % n } else { n + (x - n + n - 1) % n })
                .collect();
            let b: Vec<usize> = (0..2 * n).map(|x| if x < n { x + n } else { x - n }).collect();
            let g = PermGroup::new(
                2 * n,
                vec![Permutation::from_images(a).unwrap(), Permutation::from_images(b).unwrap()],
            )
            .unwrap();
            assert_eq!(g.order_u128(), Some(2 * n as u128));
            assert!(g.is_regular());
            assert_eq!(g.elements().len(), 2 * n);
        }
    }

    #[test]
    fn base_prefix_and_known_order() {
        let s5 = PermGroup::new(5, vec![cyc(5, &[&[0, 1]]), cyc(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
        let g = s5.clone().with_base_prefix(vec![3]);
        assert_eq!(g.base()[0], 3);
        assert_eq!(g.order_u128(), Some(120));
        let mut count = 0;
        let _ = g.for_each_in_stabilizer(1, |p| {
            assert_eq!(p.apply(3), 3);
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 24);
        let k = s5.with_known_order(BigUint::from(120u32));
        assert_eq!(k.order_u128(), Some(120));
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn order_matches_closure(gens in prop::collection::vec(perm_strategy(7), 1..3)) {
            let g = PermGroup::new(7, gens.clone()).unwrap();
            let closure = naive_closure(7, &gens);
            prop_assert_eq!(g.order_u128(), Some(closure.len() as u128));
            let elems: HashSet<Permutation> = g.elements().into_iter().collect();
            prop_assert_eq!(&elems, &closure);
            for p in closure.iter().take(20) {
                prop_assert!(g.contains(p).unwrap());
            }
        }

        #[test]
        fn orbits_partition_points(gens in prop::collection::vec(perm_strategy(9), 0..3)) {
            let g = PermGroup::new(9, gens.clone()).unwrap();
            let orbits = g.orbits();
            let mut all: Vec<usize> = orbits.concat();
            all.sort();
            prop_assert_eq!(all, (0..9).collect::<Vec<_>>());
            for o in &orbits {
                for h in &gens {
                    prop_assert!(o.iter().all(|x| o.contains(&h.apply(*x))));
                }
            }
        }
    }
}
