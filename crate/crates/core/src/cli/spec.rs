//! Semigroup expressions such as `product(builtin:cyclic:2,cayley:c3.tbl)`.
//!
//! ```text
//! spec   := builtin | cayley | ctor '(' spec (',' spec)* ')'
//! builtin:= 'builtin:' name (':' number)*
//! cayley := 'cayley:' path
//! ctor   := 'product' | 'adjoin0' | 'adjoin1' | 'semidirect'
//! ```
//!
//! Errors report the 1-based column within the expression on line 1.

use std::path::Path;

use crate::error::{Error, Result};
use crate::semigroup::catalog::catalog_entry;
use crate::semigroup::table::parse_cayley;
use crate::semigroup::Semigroup;

/// Tables larger than this are not checked for associativity when loaded.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 512;

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, at: usize, message: impl Into<String>) -> Error {
        Error::parse(1, at + 1, message)
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.rest().starts_with(ch) {
            self.pos += ch.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.err(self.pos, format!("expected `{ch}`")))
        }
    }

    /// Up to the next `,` or `)` when nested, else to the end.
    fn atom(&mut self) -> &'a str {
        let rest = self.rest();
        let len = if self.depth > 0 {
            rest.find([',', ')']).unwrap_or(rest.len())
        } else {
            rest.len()
        };
        self.pos += len;
        &rest[..len]
    }

    fn spec(&mut self) -> Result<Semigroup> {
        let start = self.pos;
        let rest = self.rest();
        if rest.starts_with("builtin:") {
            self.pos += "builtin:".len();
            let body_at = self.pos;
            let body = self.atom();
            return builtin(body).map_err(|e| match e {
                Error::Parse { column, message, .. } => self.err(body_at + column - 1, message),
                other => other,
            });
        }
        if rest.starts_with("cayley:") {
            self.pos += "cayley:".len();
            let path = self.atom();
            if path.is_empty() {
                return Err(self.err(self.pos, "missing table path"));
            }
            return load_cayley(path);
        }
        let name_len = rest.find(|c: char| !c.is_ascii_alphanumeric()).unwrap_or(rest.len());
        let name = &rest[..name_len];
        let arity = match name {
            "product" => 2,
            "adjoin0" | "adjoin1" | "semidirect" => 1,
            "" => return Err(self.err(start, "expected a semigroup expression")),
            _ => return Err(self.err(start, format!("unknown constructor `{name}`"))),
        };
        self.pos += name_len;
        self.expect('(')?;
        self.depth += 1;
        let mut args = Vec::with_capacity(arity);
        for i in 0..arity {
            if i > 0 {
                self.expect(',')?;
            }
            args.push(self.spec()?);
        }
        self.expect(')')?;
        self.depth -= 1;
        Ok(match name {
            "product" => Semigroup::product(&args[0], &args[1]),
            "adjoin0" => Semigroup::adjoin_zero(&args[0]),
            "adjoin1" => Semigroup::adjoin_identity(&args[0]),
            _ => Semigroup::semidirect_pm(&args[0]).map_err(|e| self.err(start, e.to_string()))?,
        })
    }
}

fn builtin(body: &str) -> Result<Semigroup> {
    let mut parts = body.split(':');
    let name = parts.next().unwrap_or("");
    const KNOWN: [&str; 12] = [
        "nat-plus",
        "int-plus",
        "zpm",
        "taimanov",
        "semilattice-omega",
        "trivial",
        "s3",
        "cyclic",
        "free",
        "semilattice",
        "left-zero",
        "catalog",
    ];
    if !KNOWN.contains(&name) {
        return Err(Error::parse(1, 1, format!("unknown builtin `{name}`")));
    }
    let mut column = name.len() + 2;
    let mut nums = Vec::new();
    for p in parts {
        let n: usize = p
            .parse()
            .map_err(|_| Error::parse(1, column, format!("expected a number, found `{p}`")))?;
        nums.push(n);
        column += p.len() + 1;
    }
    let arity = |k: usize| -> Result<()> {
        if nums.len() == k {
            Ok(())
        } else {
            Err(Error::parse(
                1,
                1,
                format!("`{name}` takes {k} numeric argument(s), found {}", nums.len()),
            ))
        }
    };
    let at = |e: Error| match e {
        Error::Parse { .. } => e,
        other => Error::parse(1, name.len() + 2, other.to_string()),
    };
    match name {
        "nat-plus" => arity(0).map(|_| Semigroup::nat_plus()),
        "int-plus" => arity(0).map(|_| Semigroup::int_plus()),
        "zpm" => arity(0).map(|_| Semigroup::zpm()),
        "taimanov" if nums.is_empty() => Ok(Semigroup::taimanov()),
        "taimanov" => arity(1).and_then(|_| Semigroup::taimanov_finite(nums[0]).map_err(at)),
        "semilattice-omega" => arity(0).map(|_| Semigroup::semilattice_omega()),
        "trivial" => arity(0).map(|_| Semigroup::trivial()),
        "s3" => arity(0).map(|_| Semigroup::symmetric3()),
        "cyclic" => arity(1).and_then(|_| Semigroup::cyclic(nums[0]).map_err(at)),
        "free" => arity(1).and_then(|_| Semigroup::free_monoid(nums[0]).map_err(at)),
        "semilattice" => arity(1).and_then(|_| Semigroup::semilattice(nums[0]).map_err(at)),
        "left-zero" => arity(1).and_then(|_| Semigroup::left_zero(nums[0]).map_err(at)),
        "catalog" => arity(2).and_then(|_| catalog_entry(nums[0], nums[1]).map_err(at)),
        _ => unreachable!("checked above"),
    }
}

/// Load a table file, rejecting non-associative tables up to
/// [`ASSOCIATIVITY_CHECK_LIMIT`].
pub fn load_cayley(path: &str) -> Result<Semigroup> {
    let text = std::fs::read_to_string(Path::new(path))?;
    let file = parse_cayley(&text)?;
    if file.table.order() <= ASSOCIATIVITY_CHECK_LIMIT {
        if let Some((a, b, c)) = file.table.associativity_violation() {
            return Err(Error::NotAssociative(a, b, c));
        }
    }
    Semigroup::from_table_named(format!("cayley:{path}"), file.table, file.identity, file.zero)
}

pub fn parse_spec(text: &str) -> Result<Semigroup> {
    let mut p = Parser { text, pos: 0, depth: 0 };
    let s = p.spec()?;
    if p.pos != text.len() {
        return Err(p.err(p.pos, format!("unexpected `{}`", p.rest())));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column(e: Error) -> usize {
        match e {
            Error::Parse { column, .. } => column,
            other => panic!("not a parse error: {other}"),
        }
    }

    #[test]
    fn builtins_and_constructors() {
        assert_eq!(parse_spec("builtin:cyclic:6").unwrap().order(), Some(6));
        assert_eq!(parse_spec("builtin:catalog:2:0").unwrap().order(), Some(2));
        let p = parse_spec("product(builtin:cyclic:2,adjoin0(builtin:s3))").unwrap();
        assert_eq!(p.order(), Some(14));
        assert!(!parse_spec("semidirect(builtin:int-plus)").unwrap().is_finite());
        assert_eq!(parse_spec("adjoin1(builtin:taimanov:5)").unwrap().order(), Some(6));
    }

    #[test]
    fn errors_point_at_the_problem() {
        assert_eq!(column(parse_spec("builtin:cyclic:x").unwrap_err()), 16);
        assert_eq!(column(parse_spec("product(builtin:zpm;builtin:zpm)").unwrap_err()), 17);
        assert_eq!(column(parse_spec("product(builtin:zpm,bogus(x))").unwrap_err()), 21);
        assert_eq!(column(parse_spec("builtin:zpm)").unwrap_err()), 9);
        assert_eq!(column(parse_spec("adjoin0(builtin:zpm)x").unwrap_err()), 21);
        assert!(parse_spec("builtin:cyclic:0").is_err());
    }

    #[test]
    fn cayley_files() {
        let dir = tempfile::tempdir().unwrap();
        let good = dir.path().join("c2.tbl");
        std::fs::write(&good, "2\n0 1\n1 0\n").unwrap();
        let bad = dir.path().join("bad.tbl");
        std::fs::write(&bad, "2\n1 0\n0 0\n").unwrap();
        let g = good.to_str().unwrap();
        let s = parse_spec(&format!("product(cayley:{g},cayley:{g})")).unwrap();
        assert_eq!(s.order(), Some(4));
        assert!(matches!(
            parse_spec(&format!("cayley:{}", bad.to_str().unwrap())),
            Err(Error::NotAssociative(..))
        ));
    }
}
