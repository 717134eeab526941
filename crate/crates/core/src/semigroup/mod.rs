//! Semigroup handles: finite Cayley tables and enumerated countable families.
//!
//! Every semigroup is addressed through element *indices* in its canonical
//! enumeration. A [`Semigroup`] is a cheap, immutable, shareable handle; all
//! structural operations (products, 0-/1-extensions, quotients) build new
//! handles.

pub mod analysis;
pub mod catalog;
pub mod congruence;
pub mod enumeration;
mod families;
pub mod table;
pub mod window;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::polynomial::Coeff;
use enumeration::{index_to_int, int_to_index, DiagonalPairing, WordCode};
pub use table::CayleyTable;
pub use window::Window;

/// Finite handles up to this order get a materialized multiplication table.
const TABLE_CACHE_LIMIT: usize = 2048;

static NEXT_HANDLE: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cardinality {
    Finite(usize),
    Omega,
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Omega => f.write_str("omega"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Commutative,
    Monoid,
    Group,
    Cancellative,
    Band,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Commutative => "commutative",
            Tag::Monoid => "monoid",
            Tag::Group => "group",
            Tag::Cancellative => "cancellative",
            Tag::Band => "band",
        }
    }
}

/// What the built-in structure knows about shift fibers `{x : ax = b}`, `{x : xa = b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftOracle {
    /// All fibers are finite (finite carrier, or cancellative family).
    FiniteToOne,
    /// Some fiber is infinite.
    InfiniteFiber,
    Unknown,
}

/// A checked reference to an element of a particular handle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementRef {
    handle: u64,
    index: usize,
}

impl ElementRef {
    pub fn index(&self) -> usize {
        self.index
    }
}

#[derive(Debug)]
pub(crate) enum Structure {
    Table(CayleyTable),
    NatPlus,
    IntPlus,
    FreeMonoid(WordCode),
    Taimanov,
    SemilatticeOmega,
    /// `⟨x,i⟩*⟨y,j⟩ = ⟨x·y^i, ij⟩` over an abelian group; sign index 0 is +1.
    SemidirectPm(Semigroup, DiagonalPairing),
    Product(Semigroup, Semigroup, DiagonalPairing),
    /// Fresh identity at index 0, old element `i` at `i + 1`.
    WithIdentity(Semigroup),
    /// Fresh zero at index 0, old element `i` at `i + 1`.
    WithZero(Semigroup),
}

#[derive(Debug)]
struct Inner {
    id: u64,
    name: String,
    structure: Structure,
    cardinality: Cardinality,
    identity: Option<usize>,
    zero: Option<usize>,
    tags: BTreeSet<Tag>,
    cache: OnceLock<Option<Vec<usize>>>,
    inverses: OnceLock<Option<Vec<usize>>>,
}

/// Immutable, cheaply clonable semigroup handle.
#[derive(Clone)]
pub struct Semigroup(Arc<Inner>);

impl fmt::Debug for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Semigroup({} #{})", self.0.name, self.0.id)
    }
}

impl PartialEq for Semigroup {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Semigroup {}

impl Semigroup {
    pub(crate) fn build(
        name: String,
        structure: Structure,
        cardinality: Cardinality,
        identity: Option<usize>,
        zero: Option<usize>,
        tags: BTreeSet<Tag>,
    ) -> Semigroup {
        let mut tags = tags;
        if identity.is_some() {
            tags.insert(Tag::Monoid);
        }
        if tags.contains(&Tag::Group) {
            tags.insert(Tag::Cancellative);
        }
        Semigroup(Arc::new(Inner {
            id: NEXT_HANDLE.fetch_add(1, Ordering::Relaxed),
            name,
            structure,
            cardinality,
            identity,
            zero,
            tags,
            cache: OnceLock::new(),
            inverses: OnceLock::new(),
        }))
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    /// Expression that rebuilds this handle, e.g. `product(builtin:cyclic:2,builtin:nat-plus)`.
    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn cardinality(&self) -> Cardinality {
        self.0.cardinality
    }

    pub fn order(&self) -> Option<usize> {
        match self.0.cardinality {
            Cardinality::Finite(n) => Some(n),
            Cardinality::Omega => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn identity(&self) -> Option<usize> {
        self.0.identity
    }

    pub fn zero(&self) -> Option<usize> {
        self.0.zero
    }

    pub fn tags(&self) -> &BTreeSet<Tag> {
        &self.0.tags
    }

    pub fn has_tag(&self, tag: Tag) -> bool {
        self.0.tags.contains(&tag)
    }

    pub(crate) fn structure(&self) -> &Structure {
        &self.0.structure
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.order().is_none_or(|n| index < n)
    }

    pub fn element(&self, index: usize) -> Result<ElementRef> {
        match self.order() {
            Some(n) if index >= n => Err(Error::IndexOutOfRange { index, order: n }),
            _ => Ok(ElementRef {
                handle: self.0.id,
                index,
            }),
        }
    }

    pub fn check(&self, e: &ElementRef) -> Result<usize> {
        if e.handle != self.0.id {
            return Err(Error::ForeignElement);
        }
        Ok(e.index)
    }

    pub fn mul_ref(&self, a: &ElementRef, b: &ElementRef) -> Result<ElementRef> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(ElementRef {
            handle: self.0.id,
            index: self.mul(a, b),
        })
    }

    /// Underlying table when the handle is finite and small enough to materialize.
    pub fn table(&self) -> Option<&[usize]> {
        if let Structure::Table(t) = &self.0.structure {
            return Some(t.cells());
        }
        self.0
            .cache
            .get_or_init(|| match self.order() {
                Some(n) if n <= TABLE_CACHE_LIMIT => {
                    let mut cells = Vec::with_capacity(n * n);
                    for a in 0..n {
                        for b in 0..n {
                            cells.push(self.raw_mul(a, b).expect("finite products fit"));
                        }
                    }
                    Some(cells)
                }
                _ => None,
            })
            .as_deref()
    }

    /// Product of two element indices. Indices must belong to this handle.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        debug_assert!(self.contains_index(a) && self.contains_index(b));
        match &self.0.structure {
            Structure::Table(t) => t.get(a, b),
            _ if self.is_finite() => match self.table() {
                Some(cells) => cells[a * self.order().unwrap() + b],
                None => self.raw_mul(a, b).expect("finite products fit"),
            },
            _ => self.raw_mul(a, b).expect("element index overflow"),
        }
    }

    /// Product, or `None` when the index of the result does not fit in `usize`.
    pub fn checked_mul(&self, a: usize, b: usize) -> Option<usize> {
        match &self.0.structure {
            Structure::Table(t) => Some(t.get(a, b)),
            _ if self.is_finite() => Some(self.mul(a, b)),
            _ => self.raw_mul(a, b),
        }
    }

    fn raw_mul(&self, a: usize, b: usize) -> Option<usize> {
        Some(match &self.0.structure {
            Structure::Table(t) => t.get(a, b),
            Structure::NatPlus => a.checked_add(b)?,
            Structure::IntPlus => {
                let z = index_to_int(a).checked_add(index_to_int(b))?;
                if z.unsigned_abs() > (usize::MAX / 2) as u64 {
                    return None;
                }
                int_to_index(z)
            }
            Structure::FreeMonoid(code) => code.checked_concat(a, b)?,
            Structure::Taimanov => usize::from(a == b && a > 1),
            Structure::SemilatticeOmega => {
                if a == b {
                    a
                } else {
                    0
                }
            }
            Structure::SemidirectPm(base, pairing) => {
                let (x, i) = pairing.decode(a);
                let (y, j) = pairing.decode(b);
                let y = if i == 0 {
                    y
                } else {
                    base.inverse(y).expect("semidirect base must be a group")
                };
                pairing.checked_encode(base.checked_mul(x, y)?, i ^ j)?
            }
            Structure::Product(l, r, pairing) => {
                let (a1, a2) = pairing.decode(a);
                let (b1, b2) = pairing.decode(b);
                pairing.checked_encode(l.checked_mul(a1, b1)?, r.checked_mul(a2, b2)?)?
            }
            Structure::WithIdentity(s) => match (a, b) {
                (0, _) => b,
                (_, 0) => a,
                _ => s.checked_mul(a - 1, b - 1)?.checked_add(1)?,
            },
            Structure::WithZero(s) => match (a, b) {
                (0, _) | (_, 0) => 0,
                _ => s.checked_mul(a - 1, b - 1)?.checked_add(1)?,
            },
        })
    }

    /// `x^n` for `n >= 1`, or `None` on index overflow.
    pub fn checked_pow(&self, x: usize, n: usize) -> Option<usize> {
        assert!(n >= 1);
        let mut acc = x;
        for _ in 1..n {
            acc = self.checked_mul(acc, x)?;
        }
        Some(acc)
    }

    /// `x^n` for `n >= 1`.
    pub fn pow(&self, x: usize, n: usize) -> usize {
        assert!(n >= 1);
        let mut acc = x;
        for _ in 1..n {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn render(&self, index: usize) -> String {
        match &self.0.structure {
            Structure::Table(_) | Structure::NatPlus | Structure::Taimanov | Structure::SemilatticeOmega => {
                index.to_string()
            }
            Structure::IntPlus => index_to_int(index).to_string(),
            Structure::FreeMonoid(code) => {
                let w = code.decode(index);
                if w.is_empty() {
                    "ε".to_string()
                } else {
                    w.iter().map(|&d| letter(d)).collect()
                }
            }
            Structure::SemidirectPm(base, pairing) => {
                let (x, i) = pairing.decode(index);
                format!("<{},{}>", base.render(x), if i == 0 { "1" } else { "-1" })
            }
            Structure::Product(l, r, pairing) => {
                let (a, b) = pairing.decode(index);
                format!("({},{})", l.render(a), r.render(b))
            }
            Structure::WithIdentity(s) => {
                if index == 0 {
                    "[1]".to_string()
                } else {
                    s.render(index - 1)
                }
            }
            Structure::WithZero(s) => {
                if index == 0 {
                    "[0]".to_string()
                } else {
                    s.render(index - 1)
                }
            }
        }
    }

    /// Two-sided inverse relative to [`Semigroup::identity`], when one is known.
    pub fn inverse(&self, x: usize) -> Option<usize> {
        let e = self.identity()?;
        match &self.0.structure {
            Structure::Table(_) => self.finite_inverses().map(|inv| inv[x]),
            Structure::NatPlus => (x == 0).then_some(0),
            Structure::IntPlus => Some(int_to_index(-index_to_int(x))),
            Structure::FreeMonoid(_) => (x == 0).then_some(0),
            Structure::SemidirectPm(base, pairing) => {
                let (y, i) = pairing.decode(x);
                if i == 0 {
                    Some(pairing.encode(base.inverse(y)?, 0))
                } else {
                    Some(x)
                }
            }
            Structure::Product(l, r, pairing) => {
                let (a, b) = pairing.decode(x);
                Some(pairing.encode(l.inverse(a)?, r.inverse(b)?))
            }
            Structure::WithIdentity(_) | Structure::WithZero(_) => {
                if x == e {
                    return Some(e);
                }
                if self.is_finite() {
                    self.finite_inverses().map(|inv| inv[x])
                } else {
                    None
                }
            }
            Structure::Taimanov | Structure::SemilatticeOmega => None,
        }
    }

    fn finite_inverses(&self) -> Option<&Vec<usize>> {
        self.0
            .inverses
            .get_or_init(|| {
                let n = self.order()?;
                let e = self.identity()?;
                (0..n)
                    .map(|x| (0..n).find(|&y| self.mul(x, y) == e && self.mul(y, x) == e))
                    .collect()
            })
            .as_ref()
    }

    pub fn shift_oracle(&self) -> ShiftOracle {
        if self.is_finite() {
            return ShiftOracle::FiniteToOne;
        }
        match &self.0.structure {
            Structure::NatPlus | Structure::IntPlus | Structure::FreeMonoid(_) | Structure::SemidirectPm(..) => {
                ShiftOracle::FiniteToOne
            }
            Structure::Taimanov | Structure::SemilatticeOmega => ShiftOracle::InfiniteFiber,
            Structure::Product(l, r, _) => match (l.shift_oracle(), r.shift_oracle()) {
                (ShiftOracle::FiniteToOne, ShiftOracle::FiniteToOne) => ShiftOracle::FiniteToOne,
                (ShiftOracle::InfiniteFiber, _) | (_, ShiftOracle::InfiniteFiber) => ShiftOracle::InfiniteFiber,
                _ => ShiftOracle::Unknown,
            },
            Structure::WithIdentity(s) => s.shift_oracle(),
            // 0·x = 0 for every x
            Structure::WithZero(_) => ShiftOracle::InfiniteFiber,
            Structure::Table(_) => ShiftOracle::FiniteToOne,
        }
    }

    pub fn factors(&self) -> Option<(&Semigroup, &Semigroup)> {
        match &self.0.structure {
            Structure::Product(l, r, _) => Some((l, r)),
            _ => None,
        }
    }

    pub fn pair(&self, a: usize, b: usize) -> Option<usize> {
        match &self.0.structure {
            Structure::Product(_, _, p) => Some(p.encode(a, b)),
            _ => None,
        }
    }

    pub fn unpair(&self, x: usize) -> Option<(usize, usize)> {
        match &self.0.structure {
            Structure::Product(_, _, p) => Some(p.decode(x)),
            _ => None,
        }
    }

    /// Component coefficients of a coefficient on a product handle.
    pub fn split_coeff(&self, c: &Coeff) -> Option<(Coeff, Coeff)> {
        let (_, _) = self.factors()?;
        Some(match c {
            Coeff::One => (Coeff::One, Coeff::One),
            Coeff::Elem(i) => {
                let (a, b) = self.unpair(*i)?;
                (Coeff::Elem(a), Coeff::Elem(b))
            }
            Coeff::Pair(l, r) => ((**l).clone(), (**r).clone()),
        })
    }

    /// Inverse of [`Semigroup::split_coeff`], normalizing to `One`/`Elem` when possible.
    pub fn join_coeff(&self, l: Coeff, r: Coeff) -> Coeff {
        match (l, r) {
            (Coeff::One, Coeff::One) => Coeff::One,
            (Coeff::Elem(a), Coeff::Elem(b)) => Coeff::Elem(self.pair(a, b).expect("join_coeff on non-product")),
            (l, r) => Coeff::Pair(Box::new(l), Box::new(r)),
        }
    }

    /// Product of two coefficients of X¹ (or of the componentwise monoid on products).
    pub fn coeff_mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::One, c) | (c, Coeff::One) => c.clone(),
            (Coeff::Elem(x), Coeff::Elem(y)) => Coeff::Elem(self.mul(*x, *y)),
            _ => {
                let (l, r) = self.factors().expect("pair coefficient on non-product handle");
                let (a1, a2) = self.split_coeff(a).unwrap();
                let (b1, b2) = self.split_coeff(b).unwrap();
                self.join_coeff(l.coeff_mul(&a1, &b1), r.coeff_mul(&a2, &b2))
            }
        }
    }

    /// Checks that a coefficient is meaningful on this handle.
    pub fn validate_coeff(&self, c: &Coeff) -> Result<()> {
        match c {
            Coeff::One => Ok(()),
            Coeff::Elem(i) => self.element(*i).map(|_| ()),
            Coeff::Pair(l, r) => {
                let (a, b) = self
                    .factors()
                    .ok_or_else(|| Error::Invalid("pair coefficient on a non-product semigroup".into()))?;
                a.validate_coeff(l)?;
                b.validate_coeff(r)
            }
        }
    }

    pub fn render_coeff(&self, c: &Coeff) -> String {
        match c {
            Coeff::One => "1".to_string(),
            Coeff::Elem(i) => self.render(*i),
            Coeff::Pair(l, r) => {
                let (a, b) = self.factors().expect("pair on non-product");
                format!("({},{})", a.render_coeff(l), b.render_coeff(r))
            }
        }
    }

    /// All `t` with `a·t·b = c`, where `One` coefficients are skipped.
    ///
    /// Exhaustive for finite handles; structural for the cancellative
    /// families; an error when the fiber may be infinite or is not known.
    pub fn solve_shift(&self, a: &Coeff, b: &Coeff, c: usize) -> Result<Vec<usize>> {
        if let Some(n) = self.order() {
            let apply = |t: usize| self.apply_coeffs(a, t, b);
            return Ok((0..n).filter(|&t| apply(t) == c).collect());
        }
        let elem = |x: &Coeff| match x {
            Coeff::One => Ok(None),
            Coeff::Elem(i) => Ok(Some(*i)),
            Coeff::Pair(..) => Err(Error::Unsupported("pair coefficient here".into())),
        };
        match &self.0.structure {
            Structure::NatPlus => {
                let offset = elem(a)?.unwrap_or(0) + elem(b)?.unwrap_or(0);
                Ok(c.checked_sub(offset).into_iter().collect())
            }
            Structure::IntPlus => {
                let offset = elem(a)?.map_or(0, index_to_int) + elem(b)?.map_or(0, index_to_int);
                Ok(vec![int_to_index(index_to_int(c) - offset)])
            }
            Structure::FreeMonoid(code) => {
                let word = code.decode(c);
                let pre = elem(a)?.map(|i| code.decode(i)).unwrap_or_default();
                let suf = elem(b)?.map(|i| code.decode(i)).unwrap_or_default();
                if pre.len() + suf.len() <= word.len() && word.starts_with(&pre) && word.ends_with(&suf) {
                    Ok(vec![code.encode(&word[pre.len()..word.len() - suf.len()])])
                } else {
                    Ok(vec![])
                }
            }
            Structure::SemidirectPm(..) => {
                let left = match elem(a)? {
                    Some(i) => self.mul(self.inverse(i).ok_or(Error::MissingInverse(i))?, c),
                    None => c,
                };
                let t = match elem(b)? {
                    Some(j) => self.mul(left, self.inverse(j).ok_or(Error::MissingInverse(j))?),
                    None => left,
                };
                Ok(vec![t])
            }
            Structure::Product(l, r, pairing) => {
                let (a1, a2) = self.split_coeff(a).unwrap();
                let (b1, b2) = self.split_coeff(b).unwrap();
                let (c1, c2) = pairing.decode(c);
                let left = l.solve_shift(&a1, &b1, c1)?;
                let right = r.solve_shift(&a2, &b2, c2)?;
                let mut out: Vec<usize> = left
                    .iter()
                    .flat_map(|&x| right.iter().map(move |&y| pairing.encode(x, y)))
                    .collect();
                out.sort_unstable();
                Ok(out)
            }
            Structure::WithIdentity(s) => {
                let lower = |x: &Coeff| -> Result<Coeff> {
                    Ok(match elem(x)? {
                        None | Some(0) => Coeff::One,
                        Some(i) => Coeff::Elem(i - 1),
                    })
                };
                let (la, lb) = (lower(a)?, lower(b)?);
                let mut out = Vec::new();
                if self.apply_coeffs(a, 0, b) == c {
                    out.push(0);
                }
                if c > 0 {
                    out.extend(s.solve_shift(&la, &lb, c - 1)?.into_iter().map(|t| t + 1));
                }
                out.sort_unstable();
                Ok(out)
            }
            Structure::WithZero(s) => {
                if c == 0 {
                    return Err(Error::FiberNotFinite(format!("{} at the adjoined zero", self.name())));
                }
                let (ea, eb) = (elem(a)?, elem(b)?);
                if ea == Some(0) || eb == Some(0) {
                    return Ok(vec![]);
                }
                let la = ea.map_or(Coeff::One, |i| Coeff::Elem(i - 1));
                let lb = eb.map_or(Coeff::One, |i| Coeff::Elem(i - 1));
                Ok(s.solve_shift(&la, &lb, c - 1)?.into_iter().map(|t| t + 1).collect())
            }
            Structure::Taimanov | Structure::SemilatticeOmega | Structure::Table(_) => {
                Err(Error::FiberNotFinite(self.name().to_string()))
            }
        }
    }

    /// `a·t·b` with `One` coefficients skipped and pair coefficients applied componentwise.
    pub fn apply_coeffs(&self, a: &Coeff, t: usize, b: &Coeff) -> usize {
        let left = self.mul_coeff(Some(t), a, true).unwrap();
        self.mul_coeff(Some(left), b, false).unwrap()
    }

    /// Multiply an optional accumulator by a coefficient on the left or right.
    /// `None` stands for the empty product.
    pub(crate) fn mul_coeff(&self, acc: Option<usize>, c: &Coeff, on_left: bool) -> Option<usize> {
        match c {
            Coeff::One => acc,
            Coeff::Elem(e) => Some(match acc {
                None => *e,
                Some(v) if on_left => self.mul(*e, v),
                Some(v) => self.mul(v, *e),
            }),
            Coeff::Pair(l, r) => {
                let v = acc.expect("pair coefficient needs a product element to act on");
                let (f1, f2) = self.factors().expect("pair coefficient on non-product handle");
                let (v1, v2) = self.unpair(v).unwrap();
                let w1 = f1.mul_coeff(Some(v1), l, on_left).unwrap();
                let w2 = f2.mul_coeff(Some(v2), r, on_left).unwrap();
                self.pair(w1, w2)
            }
        }
    }
}

fn letter(d: usize) -> char {
    if d < 26 {
        (b'a' + d as u8) as char
    } else {
        '?'
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn taimanov_products() {
        let t = Semigroup::taimanov();
        assert_eq!(t.mul(3, 3), 1);
        assert_eq!(t.mul(3, 5), 0);
        assert_eq!(t.mul(1, 1), 0);
        assert_eq!(t.zero(), Some(0));
    }

    #[test]
    fn semidirect_product_by_hand() {
        let g = Semigroup::zpm();
        let p = |x: i64, i: i64| g.zpm_index(x, i);
        // ⟨2,−1⟩·⟨3,−1⟩ = ⟨2 + (−1)·3, 1⟩ = ⟨−1, 1⟩
        assert_eq!(g.mul(p(2, -1), p(3, -1)), p(-1, 1));
        assert_eq!(g.render(p(-1, 1)), "<-1,1>");
        assert_eq!(p(0, 1), 0);
        assert_eq!(p(0, -1), 2);
        assert_eq!(g.identity(), Some(0));
        for x in 0..40 {
            let inv = g.inverse(x).unwrap();
            assert_eq!(g.mul(x, inv), 0);
            assert_eq!(g.mul(inv, x), 0);
        }
    }

    #[test]
    fn foreign_elements_rejected() {
        let a = Semigroup::cyclic(3).unwrap();
        let b = Semigroup::cyclic(3).unwrap();
        let x = a.element(1).unwrap();
        let y = b.element(1).unwrap();
        assert!(matches!(a.mul_ref(&x, &y), Err(Error::ForeignElement)));
        assert_eq!(a.mul_ref(&x, &x).unwrap().index(), 2);
        assert!(matches!(a.element(3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn product_componentwise() {
        let n = Semigroup::nat_plus();
        let p = Semigroup::product(&n, &n);
        let a = p.pair(1, 2).unwrap();
        let b = p.pair(3, 4).unwrap();
        assert_eq!(p.unpair(p.mul(a, b)), Some((4, 6)));
    }

    #[test]
    fn shift_solutions_match_brute_force() {
        let cases = [
            Semigroup::nat_plus(),
            Semigroup::int_plus(),
            Semigroup::free_monoid(2).unwrap(),
            Semigroup::zpm(),
            Semigroup::product(&Semigroup::int_plus(), &Semigroup::cyclic(3).unwrap()),
            Semigroup::adjoin_identity(&Semigroup::nat_plus()),
        ];
        for s in cases {
            let coeffs = [Coeff::One, Coeff::Elem(0), Coeff::Elem(1), Coeff::Elem(3)];
            for a in &coeffs {
                for b in &coeffs {
                    for c in 0..12 {
                        let solved = s.solve_shift(a, b, c).unwrap();
                        for &t in &solved {
                            assert_eq!(s.apply_coeffs(a, t, b), c, "{s:?}");
                        }
                        // every solution inside a generous window is found
                        let brute: Vec<usize> = (0..400).filter(|&t| s.apply_coeffs(a, t, b) == c).collect();
                        for t in brute {
                            assert!(solved.contains(&t), "{s:?} a={a:?} b={b:?} c={c} missing {t}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coefficient_algebra_on_products() {
        let x = Semigroup::cyclic(4).unwrap();
        let y = Semigroup::cyclic(3).unwrap();
        let p = Semigroup::product(&x, &y);
        let half = p.join_coeff(Coeff::Elem(1), Coeff::One);
        assert!(matches!(half, Coeff::Pair(..)));
        let other = p.join_coeff(Coeff::One, Coeff::Elem(2));
        let full = p.coeff_mul(&half, &other);
        assert_eq!(full, Coeff::Elem(p.pair(1, 2).unwrap()));
        let v = p.pair(2, 1).unwrap();
        assert_eq!(p.apply_coeffs(&half, v, &Coeff::One), p.pair(3, 1).unwrap());
    }
}
