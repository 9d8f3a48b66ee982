//! The group description language used on the command line:
//!
//! ```text
//! cyclic:N | dihedral:N | quaternion | metacyclic:M,R,S,T
//! gendih:<spec> | product:<spec>,<spec> | table:<path> | (<spec>)
//! ```
//!
//! `table:<path>` reads a plain-text file: the order, then `order^2`
//! whitespace-separated indices in row-major order, then an optional line of
//! element names.

use std::path::Path;

use super::{
    build_cyclic, build_dihedral, build_direct_product, build_generalized_dihedral,
    build_metacyclic, build_quaternion, FiniteGroup,
};
use crate::error::{Error, Result};

/// Parses a group description and builds the group, labelled with the input.
pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    let mut p = Parser { src: text.trim(), pos: 0 };
    let g = p.spec()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::Parse(format!("trailing input at '{}'", &p.src[p.pos..])));
    }
    Ok(g.with_label(text.trim()))
}

/// Reads a `table:` file.
pub fn read_table_file(path: &Path) -> Result<FiniteGroup> {
    let text = std::fs::read_to_string(path)?;
    let mut tokens = text.split_whitespace();
    let bad = |t: &str| Error::Parse(format!("bad table entry '{t}' in {}", path.display()));
    let first = tokens.next().ok_or_else(|| Error::Parse("empty table file".into()))?;
    let n: usize = first.parse().map_err(|_| bad(first))?;
    let mut table = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        let t = tokens
            .next()
            .ok_or_else(|| Error::Parse(format!("table file ends before {} entries", n * n)))?;
        table.push(t.parse().map_err(|_| bad(t))?);
    }
    let names: Vec<String> = tokens.map(str::to_string).collect();
    let names = if names.is_empty() { None } else { Some(names) };
    FiniteGroup::from_table(n, table, names)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += self.rest().chars().next().map_or(0, char::len_utf8);
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected '{tok}' at '{}'", self.rest())))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(Error::Parse(format!("expected a number at '{}'", self.rest())));
        }
        let v = self.rest()[..len]
            .parse()
            .map_err(|_| Error::Parse("number out of range".into()))?;
        self.pos += len;
        Ok(v)
    }

    fn spec(&mut self) -> Result<FiniteGroup> {
        if self.eat("(") {
            let g = self.spec()?;
            self.expect(")")?;
            return Ok(g);
        }
        self.skip_ws();
        let kw_len = self.rest().bytes().take_while(u8::is_ascii_alphabetic).count();
        let kw = &self.rest()[..kw_len];
        self.pos += kw_len;
        match kw {
            "cyclic" => {
                self.expect(":")?;
                build_cyclic(self.number()?)
            }
            "dihedral" => {
                self.expect(":")?;
                build_dihedral(self.number()?)
            }
            "quaternion" => Ok(build_quaternion()),
            "metacyclic" => {
                self.expect(":")?;
                let m = self.number()?;
                self.expect(",")?;
                let r = self.number()?;
                self.expect(",")?;
                let s = self.number()?;
                self.expect(",")?;
                let t = self.number()?;
                build_metacyclic(m, r, s, t)
            }
            "gendih" => {
                self.expect(":")?;
                build_generalized_dihedral(&self.spec()?)
            }
            "product" => {
                self.expect(":")?;
                let g = self.spec()?;
                self.expect(",")?;
                let h = self.spec()?;
                build_direct_product(&g, &h)
            }
            "table" => {
                self.expect(":")?;
                let path = self.rest().trim();
                self.pos = self.src.len();
                read_table_file(Path::new(path))
            }
            "" => Err(Error::Parse(format!("expected a group at '{}'", self.rest()))),
            other => Err(Error::Parse(format!("unknown group kind '{other}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn parses_every_kind() {
        assert_eq!(parse_group("cyclic:8").unwrap().order(), 8);
        assert_eq!(parse_group("dihedral:6").unwrap().order(), 12);
        assert_eq!(parse_group("quaternion").unwrap().order(), 8);
        assert_eq!(parse_group("metacyclic:9,4,3,3").unwrap().order(), 27);
        assert_eq!(parse_group("gendih:product:cyclic:3,cyclic:3").unwrap().order(), 18);
        assert_eq!(
            parse_group("product:product:cyclic:2,cyclic:2,cyclic:3").unwrap().order(),
            12
        );
        assert_eq!(
            parse_group("product:(metacyclic:4,3,2,2),(cyclic:2)").unwrap().order(),
            16
        );
        assert_eq!(parse_group(" dihedral:5 ").unwrap().label(), "dihedral:5");
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_group("cyclic"), Err(Error::Parse(_))));
        assert!(matches!(parse_group("foo:3"), Err(Error::Parse(_))));
        assert!(matches!(parse_group("cyclic:3x"), Err(Error::Parse(_))));
        assert!(matches!(parse_group("dihedral:1"), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn table_file() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "3\n0 1 2\n1 2 0\n2 0 1\ne x y").unwrap();
        let g = parse_group(&format!("table:{}", f.path().display())).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.resolve("y").unwrap(), 2);
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "2 0 1 1 0").unwrap();
        let g = parse_group(&format!("table:{}", f.path().display())).unwrap();
        assert_eq!(g.name(1), "1");
    }
}
