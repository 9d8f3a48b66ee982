//! Finite groups as explicit multiplication tables.
//!
//! Every group in this crate is a closed Cayley table on the indices
//! `0..order`, together with display names and (optionally) a few named
//! generator symbols so that words such as `a^3*b` can be evaluated.

mod auto;
mod build;
pub mod catalog;
pub mod dsl;
mod subgroup;

pub use auto::{
    automorphisms, automorphisms_bounded, find_isomorphism, generating_sequence, GroupAutomorphism,
};
pub use build::{
    build_cyclic, build_dihedral, build_direct_product, build_generalized_dihedral,
    build_metacyclic, build_metacyclic_bounded, build_quaternion,
};
pub use subgroup::{
    all_subgroups, has_complement, is_characteristic, is_nonsplit_metacyclic, quotient,
    subgroup_as_group, subgroup_generated, Quotient, Subgroup,
};

use crate::error::{Error, Result};

/// Default cap on group order for constructors and automorphism enumeration.
pub const MAX_GROUP_ORDER: usize = 256;

/// Largest order accepted by the explicitly bounded constructors.
pub const GROUP_ORDER_CEILING: usize = 1024;

/// An element of a [`FiniteGroup`], identified by its table index.
pub type GroupElem = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    names: Vec<String>,
    symbols: Vec<(String, usize)>,
    label: String,
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table, auditing every
    /// group axiom. Missing names default to the element index.
    pub fn from_table(order: usize, table: Vec<usize>, names: Option<Vec<String>>) -> Result<Self> {
        Self::from_table_bounded(order, table, names, MAX_GROUP_ORDER)
    }

    /// [`FiniteGroup::from_table`] with an explicit order cap, itself at most
    /// [`GROUP_ORDER_CEILING`].
    pub fn from_table_bounded(
        order: usize,
        table: Vec<usize>,
        names: Option<Vec<String>>,
        max_order: usize,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter("group order must be positive".into()));
        }
        let cap = max_order.min(GROUP_ORDER_CEILING);
        if order > cap {
            return Err(Error::ResourceLimit(format!("group order {order} exceeds the cap of {cap}")));
        }
        if table.len() != order * order {
            return Err(Error::InvalidParameter(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(bad) = table.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidParameter(format!("table entry {bad} out of range")));
        }
        let names = match names {
            Some(n) if n.len() == order => n,
            Some(n) => {
                return Err(Error::InvalidParameter(format!(
                    "{} names supplied for a group of order {order}",
                    n.len()
                )))
            }
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        audit_table(order, &table)?;
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] == x && table[x * order + e] == x))
            .ok_or_else(|| Error::InvalidPresentation("no two-sided identity".into()))?;
        let inverses = (0..order)
            .map(|x| {
                (0..order)
                    .find(|&y| table[x * order + y] == identity)
                    .expect("latin square rows contain the identity")
            })
            .collect::<Vec<_>>();
        for x in 0..order {
            if table[inverses[x] * order + x] != identity {
                return Err(Error::InvalidPresentation(format!(
                    "element {x} has no two-sided inverse"
                )));
            }
        }
        Ok(FiniteGroup {
            order,
            table,
            identity,
            inverses,
            names,
            symbols: Vec::new(),
            label: String::new(),
        })
    }

    pub(crate) fn with_symbols(mut self, symbols: Vec<(String, usize)>) -> Self {
        self.symbols = symbols;
        self
    }

    /// Attaches a display label (normally the DSL string that built the group).
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> GroupElem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: GroupElem, b: GroupElem) -> GroupElem {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: GroupElem) -> GroupElem {
        self.inverses[a]
    }

    pub fn elements(&self) -> std::ops::Range<GroupElem> {
        0..self.order
    }

    pub fn name(&self, a: GroupElem) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Named generator symbols usable in element words.
    pub fn symbols(&self) -> &[(String, usize)] {
        &self.symbols
    }

    /// `x^k` for any integer `k`.
    pub fn pow(&self, x: GroupElem, k: i64) -> GroupElem {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, x: GroupElem) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// `g^{-1} x g`.
    pub fn conjugate(&self, x: GroupElem, g: GroupElem) -> GroupElem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Re-runs the full axiom audit (latin square, associativity, identity, inverses).
    pub fn audit(&self) -> Result<()> {
        audit_table(self.order, &self.table)?;
        for x in 0..self.order {
            if self.mul(self.identity, x) != x || self.mul(x, self.identity) != x {
                return Err(Error::InvalidPresentation("identity axiom fails".into()));
            }
            if self.mul(x, self.inverses[x]) != self.identity
                || self.mul(self.inverses[x], x) != self.identity
            {
                return Err(Error::InvalidPresentation("inverse axiom fails".into()));
            }
        }
        Ok(())
    }

    /// Resolves an element written as a display name, a word in the generator
    /// symbols (`a^-2*b`, `a^3b`), or a raw index.
    pub fn resolve(&self, text: &str) -> Result<GroupElem> {
        let key = normalize_name(text);
        if key.is_empty() {
            return Err(Error::Parse("empty element name".into()));
        }
        if let Some(i) = self.names.iter().position(|n| normalize_name(n) == key) {
            return Ok(i);
        }
        if let Some(x) = self.eval_word(&key) {
            return Ok(x);
        }
        if let Ok(i) = key.parse::<usize>() {
            if i < self.order {
                return Ok(i);
            }
        }
        Err(Error::Parse(format!("unknown element '{text}'")))
    }

    /// Parses a comma-separated list of elements; commas nested inside
    /// parentheses (product-group names) do not split.
    pub fn parse_subset(&self, text: &str) -> Result<Vec<GroupElem>> {
        let mut out = Vec::new();
        for item in split_top_level(text, ',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            out.push(self.resolve(item)?);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    fn eval_word(&self, word: &str) -> Option<GroupElem> {
        if self.symbols.is_empty() {
            return None;
        }
        let bytes = word.as_bytes();
        let mut pos = 0;
        let mut acc = self.identity;
        while pos < bytes.len() {
            let (sym, elem) = self
                .symbols
                .iter()
                .filter(|(s, _)| word[pos..].starts_with(s.as_str()))
                .max_by_key(|(s, _)| s.len())?;
            pos += sym.len();
            let mut exp: i64 = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let start = pos;
                if pos < bytes.len() && (bytes[pos] == b'-' || bytes[pos] == b'+') {
                    pos += 1;
                }
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                exp = word[start..pos].parse().ok()?;
            }
            acc = self.mul(acc, self.pow(*elem, exp));
        }
        Some(acc)
    }

    /// Names of a subset, in index order.
    pub fn format_subset(&self, s: &[GroupElem]) -> String {
        s.iter().map(|&x| self.names[x].as_str()).collect::<Vec<_>>().join(",")
    }
}

fn normalize_name(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect()
}

pub(crate) fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

fn audit_table(order: usize, table: &[usize]) -> Result<()> {
    let mut seen = vec![usize::MAX; order];
    for r in 0..order {
        for c in 0..order {
            let v = table[r * order + c];
            if seen[v] == r {
                return Err(Error::InvalidPresentation(format!(
                    "latin square fails: row {r} repeats {v}"
                )));
            }
            seen[v] = r;
        }
    }
    seen.fill(usize::MAX);
    for c in 0..order {
        for r in 0..order {
            let v = table[r * order + c];
            if seen[v] == c {
                return Err(Error::InvalidPresentation(format!(
                    "latin square fails: column {c} repeats {v}"
                )));
            }
            seen[v] = c;
        }
    }
    // Light's test: associativity for all middle factors in a generating set
    // of the magma suffices, since such middle factors are closed under products.
    for b in magma_generators(order, table) {
        for a in 0..order {
            let ab = table[a * order + b];
            for c in 0..order {
                if table[ab * order + c] != table[a * order + table[b * order + c]] {
                    return Err(Error::InvalidPresentation(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn magma_generators(order: usize, table: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; order];
    let mut members = Vec::new();
    let mut gens = Vec::new();
    for x in 0..order {
        if inside[x] {
            continue;
        }
        gens.push(x);
        inside[x] = true;
        members.push(x);
        let mut next = members.len() - 1;
        while next < members.len() {
            let u = members[next];
            next += 1;
            for i in 0..members.len() {
                let v = members[i];
                for w in [table[u * order + v], table[v * order + u]] {
                    if !inside[w] {
                        inside[w] = true;
                        members.push(w);
                    }
                }
            }
        }
    }
    gens
}
