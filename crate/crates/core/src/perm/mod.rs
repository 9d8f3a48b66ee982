//! Permutations and permutation groups.
//!
//! Permutations act on the right: `x^(pq) = (x^p)^q`, so [`Permutation::then`]
//! composes left to right.

mod bsgs;
mod regular;

pub use bsgs::PermGroup;
pub use regular::{find_regular_subgroup, find_regular_subgroup_seeded, RegularSearch};

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return Err(Error::InvalidParameter("image list is not a bijection".into()));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `0..degree` from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cyc in cycles {
            for (k, &x) in cyc.iter().enumerate() {
                let y = cyc[(k + 1) % cyc.len()];
                if x >= degree || y >= degree {
                    return Err(Error::InvalidParameter(format!("point out of range in cycle {cyc:?}")));
                }
                images[x] = y;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&y| other.images[y]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..k {
            acc = acc.then(self);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(x, &y)| *x != y).map(|(x, _)| x)
    }

    pub fn has_fixed_point(&self) -> bool {
        self.images.iter().enumerate().any(|(x, &y)| x == y)
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.images[x];
            }
            out.push(cyc);
        }
        out
    }

    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles().iter().fold(1, |acc, c| {
            let l = c.len() as u64;
            acc / gcd(acc, l) * l
        })
    }

    /// One-line image list, e.g. `[1 2 0]`.
    pub fn to_image_string(&self) -> String {
        let body: Vec<String> = self.images.iter().map(usize::to_string).collect();
        format!("[{}]", body.join(" "))
    }

    /// Parses either an image list `[1 2 0]` (brackets optional) or disjoint
    /// cycles `(0 1 2)(3 4)` on `degree` points.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('(') {
            let mut cycles: Vec<Vec<usize>> = Vec::new();
            for chunk in text.split(')') {
                let chunk = chunk.trim();
                if chunk.is_empty() {
                    continue;
                }
                let body = chunk
                    .strip_prefix('(')
                    .ok_or_else(|| Error::Parse(format!("bad cycle '{chunk}'")))?;
                let cyc = body
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad point '{t}'"))))
                    .collect::<Result<Vec<usize>>>()?;
                cycles.push(cyc);
            }
            let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
            Self::from_cycles(degree, &refs)
        } else {
            let body = text.trim_start_matches('[').trim_end_matches(']');
            let images = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad point '{t}'"))))
                .collect::<Result<Vec<usize>>>()?;
            if images.len() != degree {
                return Err(Error::Parse(format!(
                    "image list has {} entries, expected {degree}",
                    images.len()
                )));
            }
            Self::from_images(images)
        }
    }
}

/// Disjoint-cycle notation; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cycle_notation() {
        let p = Permutation::from_cycles(5, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(p.to_string(), "(0 1 2)(3 4)");
        assert_eq!(p.order(), 6);
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(Permutation::parse("(0 1 2)(3 4)", 5).unwrap(), p);
        assert_eq!(Permutation::parse("[1 2 0 4 3]", 5).unwrap(), p);
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::parse("[0 1]", 3).is_err());
    }

    #[test]
    fn composition_is_left_to_right() {
        let p = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let q = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -p-> 1 -q-> 2
        assert_eq!(p.then(&q).apply(0), 2);
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn text_forms_roundtrip(p in perm_strategy(9)) {
            prop_assert_eq!(Permutation::parse(&p.to_string(), 9).unwrap(), p.clone());
            prop_assert_eq!(Permutation::parse(&p.to_image_string(), 9).unwrap(), p.clone());
            prop_assert!(p.then(&p.inverse()).is_identity());
            prop_assert!(p.pow(p.order()).is_identity());
        }
    }
}
