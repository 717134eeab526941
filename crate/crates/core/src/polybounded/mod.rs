//! Polybounded-cover certificates `A ⊆ ⋃ f_i⁻¹(b_i)`.
//!
//! Cover file format: one pair per line, `<polynomial> = <element index>`;
//! blank lines and `#` comments are ignored.

mod group;
mod normalize;
pub(crate) mod search;
mod transport;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::polynomial::{parse_poly_at, PolyTerm};
use crate::semigroup::{Semigroup, Window};
use crate::verdict::{Scope, Verdict};

pub use group::{
    center_bound_check, group_from_cover, normalize_group_cover, CenterBound, CenterWitness, GroupStructure,
};
pub use normalize::{prune_cover, regularize_cover};
pub use search::{search_cover, SearchBounds, SearchResult, SearchStats, DEFAULT_CANDIDATE_GUARD, DEFAULT_NODE_GUARD};
pub use transport::{product_cover, transport_quotient};

/// Elements a cover has to account for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    All,
    Set(BTreeSet<usize>),
}

impl Target {
    pub fn contains(&self, x: usize) -> bool {
        match self {
            Target::All => true,
            Target::Set(s) => s.contains(&x),
        }
    }

    /// Target elements inside the window, in index order.
    pub fn in_window(&self, w: &Window) -> Vec<usize> {
        match self {
            Target::All => w.elements().collect(),
            Target::Set(s) => s.iter().copied().filter(|&x| w.contains(x)).collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Cover {
    handle: Semigroup,
    pairs: Vec<(PolyTerm, usize)>,
}

impl fmt::Debug for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Cover[{}]",
            self.pairs
                .iter()
                .map(|(p, b)| format!("{p} = {b}"))
                .collect::<Vec<_>>()
                .join("; ")
        )
    }
}

impl Cover {
    pub fn new(handle: &Semigroup, pairs: Vec<(PolyTerm, usize)>) -> Result<Cover> {
        if pairs.is_empty() {
            return Err(Error::Invalid("a cover needs at least one pair".into()));
        }
        Cover::new_allow_empty(handle, pairs)
    }

    pub(crate) fn new_allow_empty(handle: &Semigroup, pairs: Vec<(PolyTerm, usize)>) -> Result<Cover> {
        for (f, b) in &pairs {
            if f.handle() != handle {
                return Err(Error::HandleMismatch);
            }
            handle.element(*b)?;
        }
        Ok(Cover {
            handle: handle.clone(),
            pairs,
        })
    }

    /// All pairs `(f, b)` with `f ∈ polys`, `b ∈ constants`.
    pub fn from_product(handle: &Semigroup, polys: &[PolyTerm], constants: &[usize]) -> Result<Cover> {
        let pairs = polys
            .iter()
            .flat_map(|f| constants.iter().map(move |&b| (f.clone(), b)))
            .collect();
        Cover::new(handle, pairs)
    }

    pub fn handle(&self) -> &Semigroup {
        &self.handle
    }

    pub fn pairs(&self) -> &[(PolyTerm, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Distinct polynomials in order of first appearance.
    pub fn polys(&self) -> Vec<PolyTerm> {
        let mut out: Vec<PolyTerm> = Vec::new();
        for (f, _) in &self.pairs {
            if !out.contains(f) {
                out.push(f.clone());
            }
        }
        out
    }

    /// Distinct constants in increasing order.
    pub fn constants(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.pairs.iter().map(|(_, b)| *b).collect();
        set.into_iter().collect()
    }

    pub fn total_degree(&self) -> usize {
        self.pairs.iter().map(|(f, _)| f.degree()).sum()
    }

    /// Index of the first pair with `f(x) = b`.
    pub fn covering_pair(&self, x: usize) -> Option<usize> {
        self.pairs.iter().position(|(f, b)| f.try_eval(x) == Some(*b))
    }

    pub fn covers(&self, x: usize) -> bool {
        self.covering_pair(x).is_some()
    }

    pub fn to_text(&self) -> String {
        self.pairs.iter().map(|(f, b)| format!("{f} = {b}\n")).collect()
    }
}

/// Parse the cover file format against a handle. Empty files give an empty
/// pair list, which only isolation certificates accept.
pub fn parse_pairs(handle: &Semigroup, text: &str, first_line: usize) -> Result<Vec<(PolyTerm, usize)>> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = first_line + i;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let (lhs, rhs) = line
            .rsplit_once('=')
            .ok_or_else(|| Error::parse(line_no, 1, "expected `<polynomial> = <element>`"))?;
        let f = parse_poly_at(handle, lhs, line_no)?;
        let col = lhs.len() + 2 + (rhs.len() - rhs.trim_start().len());
        let b: usize = rhs.trim().parse().map_err(|_| {
            Error::parse(
                line_no,
                col,
                format!("expected an element index, found `{}`", rhs.trim()),
            )
        })?;
        if !handle.contains_index(b) {
            return Err(Error::parse(
                line_no,
                col,
                format!("element {b} is outside the semigroup"),
            ));
        }
        pairs.push((f, b));
    }
    Ok(pairs)
}

pub fn parse_cover(handle: &Semigroup, text: &str) -> Result<Cover> {
    Cover::new(handle, parse_pairs(handle, text, 1)?)
}

/// Every target element of the window satisfies some `f_i(x) = b_i`.
/// Exhaustive only for the full window of a finite handle with target `All`.
pub fn verify_cover(w: &Window, target: &Target, c: &Cover) -> Result<Verdict<usize>> {
    if c.handle() != w.handle() {
        return Err(Error::HandleMismatch);
    }
    for x in w.elements() {
        if target.contains(x) && !c.covers(x) {
            return Ok(Verdict::Counterexample(x));
        }
    }
    let scope = if w.is_full() && *target == Target::All {
        Scope::Exhaustive
    } else {
        Scope::Window
    };
    Ok(Verdict::Verified(scope))
}

/// `{(x, b) : b ∈ S}` for a finite handle.
pub fn trivial_finite_cover(s: &Semigroup) -> Result<Cover> {
    let n = s.order().ok_or(Error::RequiresFinite {
        what: "the trivial cover",
    })?;
    let x = PolyTerm::identity(s);
    Cover::new(s, (0..n).map(|b| (x.clone(), b)).collect())
}

/// Fails with [`Error::Unverified`] unless the cover verifies on the full
/// window of a finite handle.
pub(crate) fn require_exhaustive(c: &Cover, what: &str) -> Result<Window> {
    let w = Window::full(c.handle())?;
    match verify_cover(&w, &Target::All, c)? {
        Verdict::Verified(_) => Ok(w),
        Verdict::Counterexample(x) => Err(Error::Unverified(format!("{what}: element {x} is not covered"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::parse_poly;

    #[test]
    fn example_cover_on_zpm() {
        let g = Semigroup::zpm();
        let a = g.zpm_index(0, -1);
        let e = g.zpm_index(0, 1);
        let c = parse_cover(&g, &format!("{a} . x . x . {a} . x . x = {e}\n")).unwrap();
        let w = Window::new(&g, 2001).unwrap();
        assert_eq!(
            verify_cover(&w, &Target::All, &c).unwrap(),
            Verdict::Verified(Scope::Window)
        );
    }

    #[test]
    fn trivial_covers() {
        for s in [
            Semigroup::cyclic(2).unwrap(),
            Semigroup::trivial(),
            Semigroup::symmetric3(),
        ] {
            let c = trivial_finite_cover(&s).unwrap();
            assert_eq!(c.len(), s.order().unwrap());
            let w = Window::full(&s).unwrap();
            assert_eq!(
                verify_cover(&w, &Target::All, &c).unwrap(),
                Verdict::Verified(Scope::Exhaustive)
            );
        }
        assert!(trivial_finite_cover(&Semigroup::nat_plus()).is_err());
    }

    #[test]
    fn counterexample_on_naturals() {
        let n = Semigroup::nat_plus();
        let c = Cover::new(&n, vec![(parse_poly(&n, "x . x").unwrap(), 4)]).unwrap();
        let w = Window::new(&n, 50).unwrap();
        assert_eq!(verify_cover(&w, &Target::All, &c).unwrap(), Verdict::Counterexample(0));
    }

    #[test]
    fn zero_extension_is_covered_by_one_pair() {
        let s = Semigroup::adjoin_zero(&Semigroup::nat_plus());
        let c = parse_cover(&s, "0 . x = 0").unwrap();
        let w = Window::new(&s, 300).unwrap();
        assert!(verify_cover(&w, &Target::All, &c).unwrap().is_verified());
    }

    #[test]
    fn file_round_trip_and_errors() {
        let s = Semigroup::symmetric3();
        let text = "x . 2 . x = 0\n# comment\n\n3 . x = 5\n";
        let c = parse_cover(&s, text).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(parse_cover(&s, &c.to_text()).unwrap(), c);
        match parse_cover(&s, "x = 0\nx = 9\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_cover(&s, "").is_err());
    }
}
