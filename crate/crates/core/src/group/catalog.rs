//! Small groups used by the sweeps, named by their description strings.

use super::dsl::parse_group;
use super::FiniteGroup;

/// One group of each isomorphism type of order at most 8.
pub const ORDER_AT_MOST_8: [&str; 14] = [
    "cyclic:1",
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "product:cyclic:2,cyclic:2",
    "cyclic:5",
    "cyclic:6",
    "dihedral:3",
    "cyclic:7",
    "cyclic:8",
    "product:cyclic:4,cyclic:2",
    "product:(product:cyclic:2,cyclic:2),cyclic:2",
    "dihedral:4",
    "quaternion",
];

/// A spread of groups of orders 9 to 16, abelian and not.
pub const ORDER_9_TO_16: [&str; 21] = [
    "cyclic:9",
    "product:cyclic:3,cyclic:3",
    "cyclic:10",
    "dihedral:5",
    "cyclic:11",
    "cyclic:12",
    "product:cyclic:6,cyclic:2",
    "dihedral:6",
    "metacyclic:6,5,2,3",
    "cyclic:13",
    "cyclic:14",
    "dihedral:7",
    "cyclic:15",
    "cyclic:16",
    "product:cyclic:4,cyclic:4",
    "dihedral:8",
    "metacyclic:8,5,2,0",
    "metacyclic:8,3,2,0",
    "metacyclic:8,7,2,4",
    "metacyclic:4,3,4,0",
    "product:quaternion,cyclic:2",
];

fn build(specs: &[&str]) -> Vec<FiniteGroup> {
    specs.iter().map(|s| parse_group(s).expect("catalogue entries are valid")).collect()
}

pub fn groups_of_order_at_most_8() -> Vec<FiniteGroup> {
    build(&ORDER_AT_MOST_8)
}

/// Every catalogue group of order at most 16.
pub fn groups_of_order_at_most_16() -> Vec<FiniteGroup> {
    let mut v = build(&ORDER_AT_MOST_8);
    v.extend(build(&ORDER_9_TO_16));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::find_isomorphism;

    #[test]
    fn order_8_list_is_complete_and_irredundant() {
        let gs = groups_of_order_at_most_8();
        let mut counts = [0usize; 9];
        for g in &gs {
            counts[g.order()] += 1;
        }
        // numbers of groups of order 1..8
        assert_eq!(&counts[1..], &[1, 1, 1, 2, 1, 2, 1, 5]);
        for (i, g) in gs.iter().enumerate() {
            for h in &gs[i + 1..] {
                if g.order() == h.order() {
                    assert!(find_isomorphism(g, h).is_none(), "{} ~ {}", g.label(), h.label());
                }
            }
        }
    }

    #[test]
    fn larger_entries_are_pairwise_distinct() {
        let gs = groups_of_order_at_most_16();
        assert!(gs.iter().all(|g| g.order() <= 16));
        for (i, g) in gs.iter().enumerate() {
            for h in &gs[i + 1..] {
                if g.order() == h.order() {
                    assert!(find_isomorphism(g, h).is_none(), "{} ~ {}", g.label(), h.label());
                }
            }
        }
    }
}
