//! Subbasic sets of the Zariski topologies and isolated-point certificates.
//!
//! Certificate file format: a first line `point=<index>` followed by cover
//! lines `<polynomial> = <index>`.

use std::fmt;

use crate::error::{Error, Result};
use crate::polybounded::search::search_cover_avoiding;
use crate::polybounded::{parse_pairs, verify_cover, Cover, SearchBounds, SearchStats, Target};
use crate::polynomial::PolyTerm;
use crate::semigroup::{Semigroup, ShiftOracle, Tag, Window};
use crate::verdict::{Scope, SearchOutcome, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubbasicSet {
    /// `{x : f(x) ≠ b}`
    NotEqualConst(PolyTerm, usize),
    /// `{x : f(x) ≠ g(x)}`
    NotEqualPoly(PolyTerm, PolyTerm),
}

impl SubbasicSet {
    pub fn handle(&self) -> &Semigroup {
        match self {
            SubbasicSet::NotEqualConst(f, _) | SubbasicSet::NotEqualPoly(f, _) => f.handle(),
        }
    }

    pub fn membership(&self, x: usize) -> bool {
        match self {
            SubbasicSet::NotEqualConst(f, b) => f.try_eval(x) != Some(*b),
            SubbasicSet::NotEqualPoly(f, g) => f.eval(x) != g.eval(x),
        }
    }
}

/// Claim: `{a} = X ∖ ⋃ f_i⁻¹(b_i)`.
#[derive(Clone, PartialEq, Eq)]
pub struct IsolationCertificate {
    handle: Semigroup,
    point: usize,
    pairs: Vec<(PolyTerm, usize)>,
}

impl fmt::Debug for IsolationCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Isolation[{}; {}]", self.point, self.pairs.len())
    }
}

impl IsolationCertificate {
    /// An empty pair list is allowed: it isolates the only point of a
    /// one-element semigroup.
    pub fn new(handle: &Semigroup, point: usize, pairs: Vec<(PolyTerm, usize)>) -> Result<Self> {
        handle.element(point)?;
        for (f, b) in &pairs {
            if f.handle() != handle {
                return Err(Error::HandleMismatch);
            }
            handle.element(*b)?;
        }
        Ok(IsolationCertificate {
            handle: handle.clone(),
            point,
            pairs,
        })
    }

    /// Pairs `(x, b)` for every `b ≠ a` of a finite handle.
    pub fn trivial(handle: &Semigroup, point: usize) -> Result<Self> {
        let n = handle.order().ok_or(Error::RequiresFinite {
            what: "the trivial certificate",
        })?;
        let x = PolyTerm::identity(handle);
        IsolationCertificate::new(
            handle,
            point,
            (0..n).filter(|&b| b != point).map(|b| (x.clone(), b)).collect(),
        )
    }

    pub fn handle(&self) -> &Semigroup {
        &self.handle
    }

    pub fn point(&self) -> usize {
        self.point
    }

    pub fn pairs(&self) -> &[(PolyTerm, usize)] {
        &self.pairs
    }

    fn in_union(&self, x: usize) -> bool {
        self.pairs.iter().any(|(f, b)| f.try_eval(x) == Some(*b))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("point={}\n", self.point);
        for (f, b) in &self.pairs {
            out.push_str(&format!("{f} = {b}\n"));
        }
        out
    }
}

pub fn parse_certificate(handle: &Semigroup, text: &str) -> Result<IsolationCertificate> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| {
        let t = l.split('#').next().unwrap_or("").trim();
        !t.is_empty()
    });
    let (i, first) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "missing `point=<index>` line"))?;
    let first = first.split('#').next().unwrap_or("").trim();
    let value = first
        .strip_prefix("point")
        .and_then(|r| r.trim_start().strip_prefix('='))
        .ok_or_else(|| Error::parse(i + 1, 1, "expected `point=<index>`"))?;
    let point: usize = value
        .trim()
        .parse()
        .map_err(|_| Error::parse(i + 1, 7, format!("bad point index `{}`", value.trim())))?;
    if !handle.contains_index(point) {
        return Err(Error::parse(
            i + 1,
            7,
            format!("point {point} is outside the semigroup"),
        ));
    }
    let rest: Vec<&str> = text.lines().skip(i + 1).collect();
    let pairs = parse_pairs(handle, &rest.join("\n"), i + 2)?;
    IsolationCertificate::new(handle, point, pairs)
}

/// Checks `a ∉ ⋃ f_i⁻¹(b_i)` and that every other window element lies in the
/// union. The counterexample is the offending element.
pub fn verify_isolation(w: &Window, cert: &IsolationCertificate) -> Result<Verdict<usize>> {
    if cert.handle() != w.handle() {
        return Err(Error::HandleMismatch);
    }
    let a = cert.point;
    if cert.in_union(a) {
        return Ok(Verdict::Counterexample(a));
    }
    for x in w.elements() {
        if x != a && !cert.in_union(x) {
            return Ok(Verdict::Counterexample(x));
        }
    }
    Ok(Verdict::Verified(w.scope()))
}

#[derive(Debug, Clone)]
pub struct IsolationSearch {
    pub outcome: SearchOutcome<IsolationCertificate>,
    pub stats: SearchStats,
}

/// Least certificate isolating `a` on the window, in the cover search order.
pub fn search_isolation(w: &Window, a: usize, bounds: &SearchBounds) -> Result<IsolationSearch> {
    let s = w.handle();
    if !w.contains(a) {
        return Err(Error::Invalid(format!("point {a} is outside the window")));
    }
    if w.size() == 1 {
        return Ok(IsolationSearch {
            outcome: SearchOutcome::Found(IsolationCertificate::new(s, a, Vec::new())?),
            stats: SearchStats::default(),
        });
    }
    let r = search_cover_avoiding(w, &Target::All, Some(a), bounds)?;
    let outcome = match r.outcome {
        SearchOutcome::Found(c) => SearchOutcome::Found(IsolationCertificate::new(s, a, c.pairs().to_vec())?),
        SearchOutcome::NoneWithinBounds => SearchOutcome::NoneWithinBounds,
    };
    Ok(IsolationSearch {
        outcome,
        stats: r.stats,
    })
}

/// The certificate's pairs plus `(x, a)`.
pub fn isolation_to_cover(w: &Window, cert: &IsolationCertificate) -> Result<Cover> {
    if let Verdict::Counterexample(x) = verify_isolation(w, cert)? {
        return Err(Error::Unverified(format!("isolation certificate fails at {x}")));
    }
    let mut pairs = cert.pairs.clone();
    pairs.push((PolyTerm::identity(&cert.handle), cert.point));
    let c = Cover::new(&cert.handle, pairs)?;
    if let Verdict::Counterexample(x) = verify_cover(w, &Target::All, &c)? {
        return Err(Error::Unverified(format!("derived cover misses {x}")));
    }
    Ok(c)
}

#[derive(Debug, Clone)]
pub struct PointReport {
    pub point: usize,
    /// `None` means unknown within the bounds, never "not isolated".
    pub certificate: Option<IsolationCertificate>,
}

#[derive(Debug, Clone)]
pub struct DiscretenessReport {
    pub points: Vec<PointReport>,
    pub scope: Scope,
    pub all_isolated: bool,
    pub note: String,
}

/// Isolation status of every window element. Finite handles use the trivial
/// certificates; symbolic handles run [`search_isolation`] per point.
pub fn discreteness_report(w: &Window, bounds: &SearchBounds) -> Result<DiscretenessReport> {
    let s = w.handle();
    let mut points = Vec::with_capacity(w.size());
    for a in w.elements() {
        let certificate = if s.is_finite() {
            Some(IsolationCertificate::trivial(s, a)?)
        } else {
            match search_isolation(w, a, bounds)?.outcome {
                SearchOutcome::Found(c) => Some(c),
                SearchOutcome::NoneWithinBounds => None,
            }
        };
        points.push(PointReport { point: a, certificate });
    }
    let isolated = points.iter().filter(|p| p.certificate.is_some()).count();
    let all_isolated = isolated == points.len();
    let note = if s.is_finite() {
        "finite semigroup: every point is isolated, so the T1 Zariski topology is discrete; \
         this is consistent with T1S-nontopologizability and injective T1S-closedness"
            .to_string()
    } else if all_isolated {
        let shifts = if s.shift_oracle() == ShiftOracle::FiniteToOne {
            " and, with finite-to-one shifts, injective T1S-closedness"
        } else {
            ""
        };
        format!(
            "every window point is isolated within the bounds (window scope only): \
             consistent with T1S-nontopologizability{shifts}"
        )
    } else {
        let mut note = format!(
            "{} of {} window points have no certificate within the bounds: inconclusive, \
             not a proof that they are non-isolated",
            points.len() - isolated,
            points.len()
        );
        if isolated == 0 && s.has_tag(Tag::Commutative) && s.shift_oracle() == ShiftOracle::FiniteToOne {
            note.push_str("; consistent with a cofinite Zariski topology, since every f⁻¹(b) is finite");
        }
        note
    };
    Ok(DiscretenessReport {
        points,
        scope: w.scope(),
        all_isolated,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::parse_poly;

    #[test]
    fn subbasic_membership() {
        let z = Semigroup::int_plus();
        let two = crate::semigroup::enumeration::int_to_index(2);
        let three = crate::semigroup::enumeration::int_to_index(3);
        let four = crate::semigroup::enumeration::int_to_index(4);
        let set = SubbasicSet::NotEqualConst(parse_poly(&z, "x . x").unwrap(), four);
        assert!(!set.membership(two));
        assert!(set.membership(three));
        let f = parse_poly(&z, "x . 5 . x").unwrap();
        let same = SubbasicSet::NotEqualPoly(f.clone(), f);
        assert!((0..50).all(|x| !same.membership(x)));
    }

    #[test]
    fn finite_certificates() {
        let s = Semigroup::symmetric3();
        let w = Window::full(&s).unwrap();
        for a in 0..6 {
            let c = IsolationCertificate::trivial(&s, a).unwrap();
            assert_eq!(verify_isolation(&w, &c).unwrap(), Verdict::Verified(Scope::Exhaustive));
            let cover = isolation_to_cover(&w, &c).unwrap();
            assert_eq!(cover.len(), 6);
            let found = search_isolation(&w, a, &SearchBounds::new(1, vec![], 5)).unwrap();
            assert!(matches!(found.outcome, SearchOutcome::Found(_)));
        }
    }

    #[test]
    fn integers_escape() {
        let z = Semigroup::int_plus();
        let w = Window::new(&z, 100).unwrap();
        let x2 = parse_poly(&z, "x . x").unwrap();
        let pairs = (1..=5)
            .map(|k| (x2.clone(), crate::semigroup::enumeration::int_to_index(2 * k)))
            .collect();
        let c = IsolationCertificate::new(&z, 0, pairs).unwrap();
        assert!(matches!(verify_isolation(&w, &c).unwrap(), Verdict::Counterexample(_)));
    }

    #[test]
    fn one_element() {
        let t = Semigroup::trivial();
        let w = Window::full(&t).unwrap();
        let r = search_isolation(&w, 0, &SearchBounds::new(1, vec![], 1)).unwrap();
        let SearchOutcome::Found(c) = r.outcome else { panic!() };
        assert!(c.pairs().is_empty());
        assert!(verify_isolation(&w, &c).unwrap().is_verified());
        assert_eq!(isolation_to_cover(&w, &c).unwrap().len(), 1);
    }

    #[test]
    fn certificate_text_round_trip() {
        let s = Semigroup::cyclic(4).unwrap();
        let c = IsolationCertificate::trivial(&s, 2).unwrap();
        assert_eq!(parse_certificate(&s, &c.to_text()).unwrap(), c);
        assert!(parse_certificate(&s, "x = 1\n").is_err());
        assert!(parse_certificate(&s, "point=9\n").is_err());
    }

    #[test]
    fn report_on_finite_and_integers() {
        let s = Semigroup::cyclic(3).unwrap();
        let r = discreteness_report(&Window::full(&s).unwrap(), &SearchBounds::new(1, vec![], 2)).unwrap();
        assert!(r.all_isolated);
        assert_eq!(r.scope, Scope::Exhaustive);

        let z = Semigroup::int_plus();
        let w = Window::new(&z, 20).unwrap();
        let r = discreteness_report(&w, &SearchBounds::new(2, (0..5).collect(), 3)).unwrap();
        assert!(r.points.iter().all(|p| p.certificate.is_none()));
        assert!(r.note.contains("cofinite"));
    }
}
