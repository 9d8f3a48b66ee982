use std::collections::HashSet;
use std::ops::ControlFlow;

use super::{PermGroup, Permutation};

/// Outcome of a regular-subgroup search.
#[derive(Debug, Clone)]
pub enum RegularSearch {
    Found(PermGroup),
    /// The search space was exhausted: no regular subgroup exists.
    None,
    /// The node budget ran out first.
    Unknown,
}

impl RegularSearch {
    pub fn is_found(&self) -> bool {
        matches!(self, RegularSearch::Found(_))
    }
}

/// A semiregular subgroup stored by the image of point 0, which determines
/// each of its elements.
#[derive(Clone)]
struct Semiregular {
    gens: Vec<Permutation>,
    by_image: Vec<Option<Permutation>>,
    order: usize,
}

impl Semiregular {
    fn trivial(degree: usize) -> Self {
        let mut by_image = vec![None; degree];
        by_image[0] = Some(Permutation::identity(degree));
        Semiregular { gens: Vec::new(), by_image, order: 1 }
    }

    /// `<self, extra>` if it is semiregular with order dividing the degree.
    fn extend(&self, extra: &[Permutation]) -> Option<Semiregular> {
        let degree = self.by_image.len();
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        let mut by_image: Vec<Option<Permutation>> = vec![None; degree];
        let mut queue = vec![Permutation::identity(degree)];
        by_image[0] = Some(queue[0].clone());
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head].clone();
            head += 1;
            for s in &gens {
                let y = x.then(s);
                let key = y.apply(0);
                match &by_image[key] {
                    Some(existing) if *existing == y => {}
                    Some(_) => return None,
                    None => {
                        if y.has_fixed_point() {
                            return None;
                        }
                        by_image[key] = Some(y.clone());
                        queue.push(y);
                    }
                }
            }
        }
        let order = queue.len();
        if degree % order != 0 {
            return None;
        }
        Some(Semiregular { gens, by_image, order })
    }

    fn key(&self) -> Vec<usize> {
        self.by_image
            .iter()
            .flatten()
            .flat_map(|p| p.images().iter().copied())
            .collect()
    }
}

struct Search<'a> {
    group: &'a PermGroup,
    budget: u64,
    spent: u64,
    visited: HashSet<Vec<usize>>,
}

enum Step {
    Found(Semiregular),
    Exhausted,
    OutOfBudget,
}

impl Search<'_> {
    fn dfs(&mut self, h: Semiregular) -> Step {
        let degree = self.group.degree();
        if h.order == degree {
            return Step::Found(h);
        }
        let v = h.by_image.iter().position(Option::is_none).expect("not yet transitive");
        let u = match self.group.transversal(0, v) {
            Some(u) => u,
            None => return Step::Exhausted,
        };
        let mut outcome = Step::Exhausted;
        let mut candidates = Vec::new();
        // the elements mapping 0 to v form the coset G_0 u
        let _ = self.group.for_each_in_stabilizer(1, |s| {
            candidates.push(s.then(&u));
            if candidates.len() >= 4096 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        let mut truncated = candidates.len() >= 4096;
        let mut offset = 0usize;
        loop {
            for g in candidates.drain(..) {
                if self.spent >= self.budget {
                    return Step::OutOfBudget;
                }
                self.spent += 1;
                let Some(next) = h.extend(std::slice::from_ref(&g)) else { continue };
                if !self.visited.insert(next.key()) {
                    continue;
                }
                match self.dfs(next) {
                    Step::Exhausted => {}
                    Step::OutOfBudget => outcome = Step::OutOfBudget,
                    found @ Step::Found(_) => return found,
                }
            }
            if !truncated {
                break;
            }
            // refill the next chunk of the coset
            offset += 4096;
            let mut seen = 0usize;
            let _ = self.group.for_each_in_stabilizer(1, |s| {
                seen += 1;
                if seen > offset {
                    candidates.push(s.then(&u));
                }
                if candidates.len() >= 4096 {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            truncated = candidates.len() >= 4096;
            if candidates.is_empty() {
                break;
            }
        }
        outcome
    }
}

fn run(group: &PermGroup, start: Semiregular, budget: u64, spent: &mut u64) -> RegularSearch {
    let mut search = Search { group, budget, spent: *spent, visited: HashSet::new() };
    let step = search.dfs(start);
    *spent = search.spent;
    match step {
        Step::Found(h) => RegularSearch::Found(
            PermGroup::new(group.degree(), h.gens).expect("same degree"),
        ),
        Step::Exhausted => RegularSearch::None,
        Step::OutOfBudget => RegularSearch::Unknown,
    }
}

/// Searches for a subgroup of `group` acting regularly on its points,
/// spending at most `budget` candidate expansions.
pub fn find_regular_subgroup(group: &PermGroup, budget: u64) -> RegularSearch {
    find_regular_subgroup_seeded(group, &[], budget)
}

/// As [`find_regular_subgroup`], but first looks for a regular overgroup of
/// the semiregular subgroup generated by `seeds` (which must lie in `group`).
/// Only the unseeded search can prove that no regular subgroup exists.
pub fn find_regular_subgroup_seeded(
    group: &PermGroup,
    seeds: &[Permutation],
    budget: u64,
) -> RegularSearch {
    let degree = group.degree();
    if degree <= 1 {
        return RegularSearch::Found(PermGroup::trivial(degree));
    }
    if !group.is_transitive() {
        return RegularSearch::None;
    }
    let group = &group.clone().with_base_prefix(vec![0]);
    let mut spent = 0u64;
    if !seeds.is_empty() {
        if let Some(start) = Semiregular::trivial(degree).extend(seeds) {
            if let found @ RegularSearch::Found(_) = run(group, start, budget, &mut spent) {
                return found;
            }
        }
    }
    run(group, Semiregular::trivial(degree), budget, &mut spent)
}
