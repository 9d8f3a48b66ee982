//! Algebraically-Cayley witnesses `(g, alpha)` and the automorphism `sigma`
//! they induce.
//!
//! A witness satisfies `g^alpha = g`, `alpha^2 = iota_g` and
//! `g S^alpha = S^-1`. Then `sigma: (x,0) -> (x^alpha,1), (x,1) -> (x^(alpha^-1) g, 0)`
//! is an automorphism with `sigma^2 = g_R`, and `<G_R, sigma>` is regular.

use super::{haar_graph, right_translation, right_translations, HaarSpec};
use crate::error::{Error, Result};
use crate::graph::automorphism_group;
use crate::group::{automorphisms_bounded, FiniteGroup, GroupAutomorphism, GroupElem, MAX_GROUP_ORDER};
use crate::perm::{PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgCayleyWitness {
    g: GroupElem,
    alpha: GroupAutomorphism,
}

fn check(spec: &HaarSpec, g: GroupElem, alpha: &GroupAutomorphism) -> Result<()> {
    let grp = spec.group();
    let fail = |why: &str| Err(Error::InvalidWitness(format!("({}, alpha): {why}", grp.name(g.min(grp.order() - 1)))));
    if g >= grp.order() || alpha.images().len() != grp.order() || !alpha.is_automorphism_of(grp) {
        return fail("not an element and an automorphism of the group");
    }
    if alpha.apply(g) != g {
        return fail("alpha does not fix g");
    }
    if alpha.then(alpha) != GroupAutomorphism::inner(grp, g) {
        return fail("alpha^2 is not conjugation by g");
    }
    let mut lhs: Vec<GroupElem> = spec.subset().iter().map(|&s| grp.mul(g, alpha.apply(s))).collect();
    let mut rhs: Vec<GroupElem> = spec.subset().iter().map(|&s| grp.inv(s)).collect();
    lhs.sort_unstable();
    rhs.sort_unstable();
    if lhs != rhs {
        return fail("g S^alpha differs from S^-1");
    }
    Ok(())
}

impl AlgCayleyWitness {
    /// Checks all three conditions against `spec`.
    pub fn new(spec: &HaarSpec, g: GroupElem, alpha: GroupAutomorphism) -> Result<Self> {
        check(spec, g, &alpha)?;
        Ok(AlgCayleyWitness { g, alpha })
    }

    pub fn verify(&self, spec: &HaarSpec) -> Result<()> {
        check(spec, self.g, &self.alpha)
    }

    pub fn g(&self) -> GroupElem {
        self.g
    }

    pub fn alpha(&self) -> &GroupAutomorphism {
        &self.alpha
    }

    /// `g=<name> alpha=[<image names>]`.
    pub fn describe(&self, group: &FiniteGroup) -> String {
        let images: Vec<&str> = self.alpha.images().iter().map(|&y| group.name(y)).collect();
        format!("g={} alpha=[{}]", group.name(self.g), images.join(" "))
    }
}

/// The pairs `(alpha, g)` with `g^alpha = g` and `alpha^2 = iota_g` for one
/// group, in search order (automorphisms sorted by image table, then `g`).
/// Reusable across subsets.
pub struct WitnessSearch {
    group: FiniteGroup,
    pairs: Vec<(GroupAutomorphism, GroupElem)>,
}

impl WitnessSearch {
    pub fn new(group: &FiniteGroup) -> Result<Self> {
        Self::bounded(group, MAX_GROUP_ORDER)
    }

    /// As [`WitnessSearch::new`], enumerating `Aut(G)` for groups up to `max_order`.
    pub fn bounded(group: &FiniteGroup, max_order: usize) -> Result<Self> {
        let auts = automorphisms_bounded(group, max_order)?;
        let inner: Vec<GroupAutomorphism> =
            group.elements().map(|g| GroupAutomorphism::inner(group, g)).collect();
        let mut pairs = Vec::new();
        for alpha in auts {
            let sq = alpha.then(&alpha);
            for g in group.elements() {
                if alpha.apply(g) == g && sq == inner[g] {
                    pairs.push((alpha.clone(), g));
                }
            }
        }
        Ok(WitnessSearch { group: group.clone(), pairs })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Number of `(alpha, g)` pairs meeting the first two conditions.
    pub fn candidate_count(&self) -> usize {
        self.pairs.len()
    }

    /// First witness for `subset`, or `None` after trying every pair.
    pub fn find(&self, subset: &[GroupElem]) -> Option<AlgCayleyWitness> {
        let grp = &self.group;
        let mut inverse = vec![false; grp.order()];
        for &s in subset {
            inverse[grp.inv(s)] = true;
        }
        self.pairs
            .iter()
            .find(|(alpha, g)| subset.iter().all(|&s| inverse[grp.mul(*g, alpha.apply(s))]))
            .map(|(alpha, g)| AlgCayleyWitness { g: *g, alpha: alpha.clone() })
    }
}

/// Complete search for a witness; `None` means `H(G,S)` is not algebraically Cayley.
pub fn alg_cayley_witness(spec: &HaarSpec) -> Result<Option<AlgCayleyWitness>> {
    Ok(WitnessSearch::new(spec.group())?.find(spec.subset()))
}

/// The class-swapping automorphism built from a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaMap {
    perm: Permutation,
}

impl SigmaMap {
    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn into_perm(self) -> Permutation {
        self.perm
    }
}

/// Builds `sigma` and checks that it is an automorphism, that
/// `sigma^2 = g_R`, and that `<G_R, sigma>` is regular of order `2|G|`.
pub fn build_sigma(spec: &HaarSpec, w: &AlgCayleyWitness) -> Result<SigmaMap> {
    w.verify(spec)?;
    let grp = spec.group();
    let n = grp.order();
    let alpha_inv = w.alpha.inverse();
    let mut images = vec![0; 2 * n];
    for x in grp.elements() {
        images[x] = n + w.alpha.apply(x);
        images[n + x] = grp.mul(alpha_inv.apply(x), w.g);
    }
    let sigma = Permutation::from_images(images)
        .map_err(|_| Error::VerificationFailure("sigma is not a bijection".into()))?;
    let x = haar_graph(spec);
    if !x.is_automorphism(&sigma) {
        return Err(Error::VerificationFailure("sigma is not an automorphism".into()));
    }
    if sigma.then(&sigma) != right_translation(grp, w.g) {
        return Err(Error::VerificationFailure("sigma^2 differs from g_R".into()));
    }
    let mut gens = right_translations(grp).generators().to_vec();
    gens.push(sigma.clone());
    let k = PermGroup::new(2 * n, gens)?;
    if k.order_u128() != Some(2 * n as u128) || !k.is_regular() {
        return Err(Error::VerificationFailure("<G_R, sigma> is not regular of order 2|G|".into()));
    }
    Ok(SigmaMap { perm: sigma })
}

/// Some automorphism of `H(G,S)` exchanging the two classes, if one exists.
///
/// On a disconnected graph an automorphism moving `(1,0)` across may flip only
/// some components, so one found on the identity's component is copied to the
/// others by right translations.
pub fn class_swapping_automorphism(spec: &HaarSpec) -> Result<Option<Permutation>> {
    let grp = spec.group();
    let n = grp.order();
    if spec.subset().is_empty() {
        let images = (0..2 * n).map(|v| (v + n) % (2 * n)).collect();
        return Ok(Some(Permutation::from_images(images)?));
    }
    let x = haar_graph(spec);
    let components = x.components();
    let aut = automorphism_group(&x, None)?.with_base_prefix(vec![0]);
    let home = components.iter().find(|c| c.contains(&0)).expect("0 is a vertex");
    let Some(tau) = home.iter().filter(|&&v| v >= n).find_map(|&v| aut.transversal(0, v)) else {
        return Ok(None);
    };
    let mut images = vec![0; 2 * n];
    for c in &components {
        let rep = *c.iter().find(|&&v| v < n).expect("every component meets both classes");
        let shift = right_translation(grp, rep);
        let local = shift.inverse().then(&tau).then(&shift);
        for &v in c {
            images[v] = local.apply(v);
        }
    }
    let sigma = Permutation::from_images(images)
        .map_err(|_| Error::VerificationFailure("class swap is not a bijection".into()))?;
    if !x.is_automorphism(&sigma) {
        return Err(Error::VerificationFailure("class swap is not an automorphism".into()));
    }
    Ok(Some(sigma))
}

/// The family `G_R ∪ sigma G_R`, checked to contain exactly one map sending
/// any vertex to any other.
pub fn quasi_cayley_family(spec: &HaarSpec, sigma: &Permutation) -> Result<Vec<Permutation>> {
    let grp = spec.group();
    let n = grp.order();
    let x = haar_graph(spec);
    if sigma.degree() != 2 * n || !x.is_automorphism(sigma) {
        return Err(Error::InvalidParameter("sigma is not an automorphism of the Haar graph".into()));
    }
    if (0..2 * n).any(|v| (v < n) == (sigma.apply(v) < n)) {
        return Err(Error::InvalidParameter("sigma does not swap the two classes".into()));
    }
    let translations: Vec<Permutation> = grp.elements().map(|h| right_translation(grp, h)).collect();
    let mut family = translations.clone();
    family.extend(translations.iter().map(|t| sigma.then(t)));
    for u in 0..2 * n {
        let mut hit = vec![false; 2 * n];
        for f in &family {
            if std::mem::replace(&mut hit[f.apply(u)], true) {
                return Err(Error::VerificationFailure(format!(
                    "two family members agree on vertex {u}"
                )));
            }
        }
    }
    Ok(family)
}
