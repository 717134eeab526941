//! Semigroup polynomials `x ↦ a₀xa₁⋯xaₙ` with coefficients in X¹.
//!
//! Text syntax: factors separated by `.`, each factor being `x`, an element
//! index, `id` for the adjoined identity, or `(l,r)` for a componentwise
//! coefficient on a product handle. Adjacent coefficients are multiplied and
//! omitted slots are the identity, so `x . 3 . x` has coefficients `[id, 3, id]`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::semigroup::enumeration::index_to_int;
use crate::semigroup::{ElementRef, Semigroup, Structure};

/// A coefficient from X¹.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coeff {
    /// The adjoined identity of X¹; skipped during evaluation.
    One,
    Elem(usize),
    /// Componentwise coefficient on a product handle where a side is the identity.
    Pair(Box<Coeff>, Box<Coeff>),
}

impl Coeff {
    pub fn is_one(&self) -> bool {
        matches!(self, Coeff::One)
    }

    pub fn elem(&self) -> Option<usize> {
        match self {
            Coeff::Elem(i) => Some(*i),
            _ => None,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::One => f.write_str("id"),
            Coeff::Elem(i) => write!(f, "{i}"),
            Coeff::Pair(l, r) => write!(f, "({l},{r})"),
        }
    }
}

#[derive(Clone)]
pub struct PolyTerm {
    handle: Semigroup,
    coeffs: Vec<Coeff>,
}

impl fmt::Debug for PolyTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyTerm({self})")
    }
}

impl PartialEq for PolyTerm {
    fn eq(&self, other: &Self) -> bool {
        self.handle == other.handle && self.coeffs == other.coeffs
    }
}

impl Eq for PolyTerm {}

impl PartialOrd for PolyTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients lexicographically.
impl Ord for PolyTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for PolyTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                parts.push("x".to_string());
            }
            if !c.is_one() {
                parts.push(c.to_string());
            }
        }
        f.write_str(&parts.join(" . "))
    }
}

impl PolyTerm {
    pub fn new(handle: &Semigroup, coeffs: Vec<Coeff>) -> Result<PolyTerm> {
        if coeffs.len() < 2 {
            return Err(Error::ZeroDegree);
        }
        for c in &coeffs {
            handle.validate_coeff(c)?;
        }
        Ok(PolyTerm {
            handle: handle.clone(),
            coeffs,
        })
    }

    /// `f(x) = x`.
    pub fn identity(handle: &Semigroup) -> PolyTerm {
        PolyTerm {
            handle: handle.clone(),
            coeffs: vec![Coeff::One, Coeff::One],
        }
    }

    /// `f(x) = x^n`.
    pub fn monomial(handle: &Semigroup, n: usize) -> Result<PolyTerm> {
        PolyTerm::new(handle, vec![Coeff::One; n + 1])
    }

    pub fn handle(&self) -> &Semigroup {
        &self.handle
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_pruned(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[self.degree()].is_one()
    }

    fn has_pairs(&self) -> bool {
        self.coeffs.iter().any(|c| matches!(c, Coeff::Pair(..)))
    }

    /// Projections onto the factors of a product handle.
    pub fn split(&self) -> Option<(PolyTerm, PolyTerm)> {
        let (l, r) = self.handle.factors()?;
        let (lc, rc): (Vec<Coeff>, Vec<Coeff>) =
            self.coeffs.iter().map(|c| self.handle.split_coeff(c).unwrap()).unzip();
        Some((
            PolyTerm {
                handle: l.clone(),
                coeffs: lc,
            },
            PolyTerm {
                handle: r.clone(),
                coeffs: rc,
            },
        ))
    }

    /// `f(x)`, or `None` if an intermediate index overflows.
    pub fn try_eval(&self, x: usize) -> Option<usize> {
        if self.has_pairs() {
            let (fl, fr) = self.split()?;
            let (xl, xr) = self.handle.unpair(x)?;
            return self.handle.pair(fl.try_eval(xl)?, fr.try_eval(xr)?);
        }
        let s = &self.handle;
        let mut acc: Option<usize> = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                acc = Some(match acc {
                    None => x,
                    Some(v) => s.checked_mul(v, x)?,
                });
            }
            if let Coeff::Elem(e) = c {
                acc = Some(match acc {
                    None => *e,
                    Some(v) => s.checked_mul(v, *e)?,
                });
            }
        }
        acc
    }

    pub fn eval(&self, x: usize) -> usize {
        self.try_eval(x).expect("element index overflow during evaluation")
    }

    pub fn eval_ref(&self, x: &ElementRef) -> Result<ElementRef> {
        let i = self.handle.check(x)?;
        self.handle.element(self.eval(i))
    }

    /// `f(x) = a·g(x)·b` with `g` pruned.
    pub fn prune_decompose(&self) -> (Coeff, PolyTerm, Coeff) {
        let n = self.degree();
        let mut g = self.coeffs.clone();
        let a = std::mem::replace(&mut g[0], Coeff::One);
        let b = std::mem::replace(&mut g[n], Coeff::One);
        (
            a,
            PolyTerm {
                handle: self.handle.clone(),
                coeffs: g,
            },
            b,
        )
    }

    /// `x ↦ f(g(x))`.
    pub fn compose(&self, g: &PolyTerm) -> Result<PolyTerm> {
        if self.handle != g.handle {
            return Err(Error::HandleMismatch);
        }
        let s = &self.handle;
        let m = g.degree();
        let mut out: Vec<Coeff> = Vec::with_capacity(self.degree() * m + 1);
        out.push(self.coeffs[0].clone());
        for a in &self.coeffs[1..] {
            let last = out.pop().unwrap();
            out.push(s.coeff_mul(&last, &g.coeffs[0]));
            out.extend(g.coeffs[1..m].iter().cloned());
            out.push(s.coeff_mul(&g.coeffs[m], a));
        }
        Ok(PolyTerm {
            handle: s.clone(),
            coeffs: out,
        })
    }

    /// `x ↦ f(x)^k` as a single polynomial of degree `k·deg f`.
    pub fn power(&self, k: usize) -> Result<PolyTerm> {
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        let s = &self.handle;
        let mut out = self.coeffs.clone();
        for _ in 1..k {
            let last = out.pop().unwrap();
            out.push(s.coeff_mul(&last, &self.coeffs[0]));
            out.extend(self.coeffs[1..].iter().cloned());
        }
        Ok(PolyTerm {
            handle: s.clone(),
            coeffs: out,
        })
    }

    /// Polynomial on `X × Y` acting as `self` on the first and `g` on the second
    /// coordinate. Both must have the same degree.
    pub fn pair_with(&self, g: &PolyTerm, product: &Semigroup) -> Result<PolyTerm> {
        let (l, r) = product
            .factors()
            .ok_or_else(|| Error::Invalid(format!("{} is not a product", product.name())))?;
        if *l != self.handle || *r != g.handle {
            return Err(Error::HandleMismatch);
        }
        if self.degree() != g.degree() {
            return Err(Error::Invalid("component polynomials must have equal degrees".into()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&g.coeffs)
            .map(|(a, b)| product.join_coeff(a.clone(), b.clone()))
            .collect();
        Ok(PolyTerm {
            handle: product.clone(),
            coeffs,
        })
    }

    /// Same coefficient list on another handle, mapped elementwise.
    pub fn map_coeffs(&self, target: &Semigroup, f: impl Fn(usize) -> usize) -> Result<PolyTerm> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| match c {
                Coeff::One => Ok(Coeff::One),
                Coeff::Elem(i) => Ok(Coeff::Elem(f(*i))),
                Coeff::Pair(..) => Err(Error::Unsupported("mapping pair coefficients".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        PolyTerm::new(target, coeffs)
    }

    /// Product of all coefficients, which equals `f(x)·x^{-n}` when the
    /// coefficients commute with `x`.
    pub fn coefficient_product(&self) -> Coeff {
        self.coeffs
            .iter()
            .fold(Coeff::One, |acc, c| self.handle.coeff_mul(&acc, c))
    }

    /// On (ℕ,+) and (ℤ,+): `f(x) = shift + slope·x` with `slope = deg f`.
    pub fn normalize_commutative(&self) -> Result<(i64, usize)> {
        let value: fn(usize) -> i64 = match self.handle.structure() {
            Structure::NatPlus => |i| i as i64,
            Structure::IntPlus => index_to_int,
            _ => return Err(Error::Unsupported(self.handle.name().to_string())),
        };
        let shift = self.coeffs.iter().filter_map(Coeff::elem).map(value).sum();
        Ok((shift, self.degree()))
    }
}

fn parse_coeff(handle: &Semigroup, tok: &str, line: usize, column: usize) -> Result<Coeff> {
    let tok = tok.trim();
    if tok == "id" {
        return Ok(Coeff::One);
    }
    if let Some(inner) = tok.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let (l, r) = handle
            .factors()
            .ok_or_else(|| Error::parse(line, column, "pair coefficient on a non-product semigroup"))?;
        let mut depth = 0usize;
        let split = inner.char_indices().find(|&(_, ch)| {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => return true,
                _ => {}
            }
            false
        });
        let (at, _) = split.ok_or_else(|| Error::parse(line, column, "expected `(left,right)`"))?;
        let left = parse_coeff(l, &inner[..at], line, column + 1)?;
        let right = parse_coeff(r, &inner[at + 1..], line, column + at + 2)?;
        return Ok(handle.join_coeff(left, right));
    }
    let index: usize = tok.parse().map_err(|_| {
        Error::parse(
            line,
            column,
            format!("expected `x`, `id`, an element index or a pair, found `{tok}`"),
        )
    })?;
    if !handle.contains_index(index) {
        return Err(Error::parse(
            line,
            column,
            format!("element {index} is outside the semigroup"),
        ));
    }
    Ok(Coeff::Elem(index))
}

/// Parse the text syntax; `line` is used for error positions.
pub fn parse_poly_at(handle: &Semigroup, text: &str, line: usize) -> Result<PolyTerm> {
    let mut coeffs = Vec::new();
    let mut current = Coeff::One;
    let mut column = 1;
    for tok in text.split('.') {
        let lead = tok.len() - tok.trim_start().len();
        let trimmed = tok.trim();
        let col = column + lead;
        if trimmed.is_empty() {
            return Err(Error::parse(line, col, "empty factor"));
        }
        if trimmed == "x" {
            coeffs.push(std::mem::replace(&mut current, Coeff::One));
        } else {
            let c = parse_coeff(handle, trimmed, line, col)?;
            current = handle.coeff_mul(&current, &c);
        }
        column += tok.len() + 1;
    }
    coeffs.push(current);
    if coeffs.len() < 2 {
        return Err(Error::parse(line, 1, "a polynomial needs at least one `x`"));
    }
    PolyTerm::new(handle, coeffs)
}

pub fn parse_poly(handle: &Semigroup, text: &str) -> Result<PolyTerm> {
    parse_poly_at(handle, text, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_polynomial_on_zpm() {
        let g = Semigroup::zpm();
        let a = g.zpm_index(0, -1);
        let f = parse_poly(&g, &format!("{a} . x . x . {a} . x . x")).unwrap();
        assert_eq!(f.degree(), 4);
        let x = g.zpm_index(5, 1);
        assert_eq!(f.eval(x), g.zpm_index(0, 1));
    }

    #[test]
    fn additive_evaluation_and_normal_form() {
        let n = Semigroup::nat_plus();
        let f = parse_poly(&n, "3 . x . x . 2").unwrap();
        assert_eq!(f.eval(4), 13);
        assert_eq!(f.normalize_commutative().unwrap(), (5, 2));
        let z = Semigroup::int_plus();
        let minus_one = crate::semigroup::enumeration::int_to_index(-1);
        let g = parse_poly(&z, &format!("{minus_one} . x . x . x . 1")).unwrap();
        assert_eq!(g.normalize_commutative().unwrap(), (0, 3));
        assert!(PolyTerm::identity(&Semigroup::cyclic(3).unwrap())
            .normalize_commutative()
            .is_err());
    }

    #[test]
    fn text_round_trip() {
        let s = Semigroup::symmetric3();
        for text in ["x", "2 . x", "x . 3 . x", "1 . x . 2 . x . 5"] {
            let f = parse_poly(&s, text).unwrap();
            assert_eq!(f.to_string(), text);
            assert_eq!(parse_poly(&s, &f.to_string()).unwrap(), f);
        }
        let f = parse_poly(&s, "id . x . id").unwrap();
        assert_eq!(f, PolyTerm::identity(&s));
        // adjacent coefficients multiply
        let g = parse_poly(&s, "1 . 1 . x").unwrap();
        assert_eq!(g.coeffs()[0], Coeff::Elem(s.mul(1, 1)));
    }

    #[test]
    fn parse_errors_are_positional() {
        let s = Semigroup::cyclic(3).unwrap();
        match parse_poly(&s, "x . 7") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly(&s, "2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&s, "x . . x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&s, "(1,2) . x"), Err(Error::Parse { .. })));
    }

    #[test]
    fn pair_coefficients() {
        let p = Semigroup::product(&Semigroup::cyclic(4).unwrap(), &Semigroup::cyclic(3).unwrap());
        let f = parse_poly(&p, "(1,id) . x . x").unwrap();
        let x = p.pair(2, 1).unwrap();
        assert_eq!(p.unpair(f.eval(x)), Some((1, 2)));
        assert_eq!(f.to_string(), "(1,id) . x . x");
        assert_eq!(parse_poly(&p, &f.to_string()).unwrap(), f);
    }

    #[test]
    fn pruning_and_composition() {
        let s = Semigroup::symmetric3();
        let f = parse_poly(&s, "1 . x . 3 . x . 4").unwrap();
        let (a, g, b) = f.prune_decompose();
        assert!(g.is_pruned() && !f.is_pruned());
        for x in 0..6 {
            assert_eq!(s.apply_coeffs(&a, g.eval(x), &b), f.eval(x));
        }
        let sq = PolyTerm::monomial(&s, 2).unwrap();
        assert_eq!(sq.compose(&sq).unwrap().degree(), 4);
        assert_eq!(f.compose(&PolyTerm::identity(&s)).unwrap(), f);
        let other = Semigroup::symmetric3();
        assert!(matches!(
            f.compose(&PolyTerm::identity(&other)),
            Err(Error::HandleMismatch)
        ));
    }
}
