//! Bipartite Cayley graphs rewritten as Haar graphs.

use super::{haar_graph, HaarSpec};
use crate::error::{Error, Result};
use crate::graph::is_isomorphic;
use crate::group::{
    build_cyclic, build_direct_product, subgroup_as_group, FiniteGroup, GroupElem, Subgroup,
};

use super::cayley_graph;

/// `(H, T)` with `H(H,T)` isomorphic to `cay(G,S)` and `|H| = |G|/2`.
///
/// With `K = <S>` and `K+` the even part of `K`, `H = K+ x Z_m` where
/// `m = |G:K|`, and `T = t0^-1 S` inside the first factor. The result is
/// checked by an isomorphism test before it is returned.
pub fn haar_from_bipartite_cayley(
    group: &FiniteGroup,
    subset: &[GroupElem],
) -> Result<(FiniteGroup, Vec<GroupElem>)> {
    let x = cayley_graph(group, subset)?;
    let (zero, one) = x.bipartition()?;
    let n = group.order();
    let (h, t) = if subset.is_empty() {
        if n % 2 == 1 {
            return Err(Error::InvalidParameter(format!(
                "edgeless graph on {n} vertices is not a Haar graph"
            )));
        }
        (build_cyclic(n / 2)?, Vec::new())
    } else {
        let e = group.identity();
        let component = x.components().into_iter().find(|c| c.contains(&e)).expect("identity has a component");
        let class = if zero.binary_search(&e).is_ok() { &zero } else { &one };
        let even: Vec<GroupElem> = component.into_iter().filter(|v| class.binary_search(v).is_ok()).collect();
        let k_plus = Subgroup::new(group, even)?;
        let m = n / (2 * k_plus.order());
        let t0_inv = group.inv(subset[0]);
        let mut t: Vec<GroupElem> = subset
            .iter()
            .map(|&s| {
                let y = group.mul(t0_inv, s);
                k_plus.members().binary_search(&y).expect("t0^-1 s is even")
            })
            .collect();
        let k_group = subgroup_as_group(group, &k_plus);
        let h = if m == 1 {
            k_group
        } else {
            t.iter_mut().for_each(|y| *y *= m);
            build_direct_product(&k_group, &build_cyclic(m)?)?
        };
        (h, t)
    };
    let spec = HaarSpec::new(h, t)?;
    if is_isomorphic(&haar_graph(&spec), &x)?.is_none() {
        return Err(Error::VerificationFailure(format!(
            "converted Haar graph {spec} is not isomorphic to the Cayley graph"
        )));
    }
    let HaarSpec { group: h, subset: t } = spec;
    Ok((h, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::dsl::parse_group;

    fn convert(dsl: &str, s: &str) -> Result<(FiniteGroup, Vec<GroupElem>)> {
        let g = parse_group(dsl).unwrap();
        let s = g.parse_subset(s).unwrap();
        haar_from_bipartite_cayley(&g, &s)
    }

    #[test]
    fn hexagon_and_k33() {
        let (h, t) = convert("cyclic:6", "1,5").unwrap();
        assert_eq!((h.order(), t.len()), (3, 2));
        let (h, t) = convert("dihedral:3", "b,ab,a^2b").unwrap();
        assert_eq!((h.order(), t.len()), (3, 3));
    }

    #[test]
    fn disconnected_and_degenerate() {
        // two hexagons
        let (h, t) = convert("cyclic:12", "2,10").unwrap();
        assert_eq!((h.order(), t.len()), (6, 2));
        let (h, t) = convert("cyclic:4", "").unwrap();
        assert_eq!((h.order(), t.len()), (2, 0));
        assert!(matches!(convert("cyclic:3", ""), Err(Error::InvalidParameter(_))));
        // perfect matching
        let (h, _) = convert("dihedral:4", "b").unwrap();
        assert_eq!(h.order(), 4);
    }

    #[test]
    fn odd_cycle_is_rejected() {
        assert!(matches!(convert("cyclic:5", "1,4"), Err(Error::NotBipartite { .. })));
        assert!(matches!(convert("cyclic:5", "1"), Err(Error::InvalidConnectionSet(_))));
    }
}
