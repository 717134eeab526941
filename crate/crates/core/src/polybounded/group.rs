use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{prune_cover, regularize_cover, verify_cover, Cover, Target};
use crate::error::{Error, Result};
use crate::polynomial::{Coeff, PolyTerm};
use crate::semigroup::analysis::{center, idempotents, is_cancellative, regular_witness};
use crate::semigroup::{Semigroup, ShiftOracle, Tag, Window};
use crate::verdict::{Scope, Verdict};

/// Unit and inverse map read off a cover of a cancellative semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupStructure {
    pub handle: Semigroup,
    pub identity: usize,
    pub inverse: BTreeMap<usize, usize>,
}

impl GroupStructure {
    pub fn inverse_of(&self, x: usize) -> Option<usize> {
        self.inverse.get(&x).copied()
    }
}

/// `b⁻¹` with `b·b⁻¹·b = b`: the handle's own inverse if it has one, else the
/// least witness in the window.
fn regular_inverse(w: &Window, b: usize) -> Option<usize> {
    let s = w.handle();
    if let Some(y) = s.inverse(b) {
        if s.checked_mul(b, y).and_then(|v| s.checked_mul(v, b)) == Some(b) {
            return Some(y);
        }
    }
    regular_witness(w, b)
}

/// `y` with `f(x) = x·y` for a pruned `f`; `None` when `deg f = 1`.
fn right_cofactor(f: &PolyTerm, x: usize) -> Result<Option<usize>> {
    if f.degree() == 1 {
        return Ok(None);
    }
    let tail = PolyTerm::new(f.handle(), f.coeffs()[1..].to_vec())?;
    tail.try_eval(x)
        .map(Some)
        .ok_or_else(|| Error::Unverified(format!("evaluation of `{tail}` at {x} overflows")))
}

/// Extracts the group structure of a cancellative semigroup from a cover.
///
/// The cover is pruned (and, for finite handles, regularized) first. Every
/// constant `b` then has `b⁻¹`; `bb⁻¹` and `b⁻¹b` must all be one idempotent
/// `e`, which has to act as the unit. For `f(x) = x·y = b` the element
/// `y·b⁻¹` is the inverse of `x`.
pub fn group_from_cover(w: &Window, c: &Cover) -> Result<GroupStructure> {
    let s = w.handle();
    if c.handle() != s {
        return Err(Error::HandleMismatch);
    }
    if let Verdict::Counterexample(x) = verify_cover(w, &Target::All, c)? {
        return Err(Error::Unverified(format!("element {x} is not covered")));
    }
    if let Verdict::Counterexample(cw) = is_cancellative(w) {
        return Err(Error::Invalid(format!(
            "not cancellative: {}·{} = {}·{} with {} ≠ {}",
            cw.a, cw.x, cw.b, cw.y, cw.x, cw.y
        )));
    }
    let pruned = prune_cover(c, w)?;
    let normal = if s.is_finite() {
        regularize_cover(&pruned, &Window::full(s)?)?
    } else {
        pruned
    };

    let mut inv_b: BTreeMap<usize, usize> = BTreeMap::new();
    for b in normal.constants() {
        if let Some(y) = regular_inverse(w, b) {
            inv_b.insert(b, y);
        }
    }
    let mut units: BTreeSet<usize> = BTreeSet::new();
    for (&b, &y) in &inv_b {
        units.insert(s.mul(b, y));
        units.insert(s.mul(y, b));
    }
    let e = match units.len() {
        0 => {
            return Err(Error::NoIdempotent(
                "no constant of the normalized cover is regular".into(),
            ))
        }
        1 => *units.iter().next().unwrap(),
        _ => {
            return Err(Error::GroupLaw(format!(
                "distinct idempotents {:?} in a cancellative semigroup",
                units
            )))
        }
    };
    if s.mul(e, e) != e {
        return Err(Error::GroupLaw(format!("{e} is not idempotent")));
    }
    let window_idem = idempotents(w);
    if window_idem.iter().any(|&f| f != e) {
        return Err(Error::GroupLaw(format!("idempotents {window_idem:?} differ from {e}")));
    }
    for x in w.elements() {
        if s.checked_mul(e, x) != Some(x) || s.checked_mul(x, e) != Some(x) {
            return Err(Error::GroupLaw(format!("{e} is not a unit for {x}")));
        }
    }

    let mut inverse = BTreeMap::new();
    for x in w.elements() {
        let mut found = None;
        for (f, b) in normal.pairs() {
            let Some(&bi) = inv_b.get(b) else { continue };
            if f.try_eval(x) != Some(*b) {
                continue;
            }
            let z = match right_cofactor(f, x)? {
                Some(y) => s.checked_mul(y, bi),
                None => Some(bi),
            };
            if let Some(z) = z {
                if s.checked_mul(x, z) == Some(e) && s.checked_mul(z, x) == Some(e) {
                    found = Some(z);
                    break;
                }
            }
        }
        match found {
            Some(z) => {
                inverse.insert(x, z);
            }
            None => return Err(Error::GroupLaw(format!("no inverse for {x} from the cover"))),
        }
    }
    Ok(GroupStructure {
        handle: s.clone(),
        identity: e,
        inverse,
    })
}

fn coeff_inverse(s: &Semigroup, c: &Coeff) -> Result<Coeff> {
    match c {
        Coeff::One => Ok(Coeff::One),
        Coeff::Elem(a) => s.inverse(*a).map(Coeff::Elem).ok_or(Error::MissingInverse(*a)),
        Coeff::Pair(l, r) => {
            let (x, y) = s
                .factors()
                .ok_or_else(|| Error::Invalid("pair coefficient on a non-product".into()))?;
            Ok(s.join_coeff(coeff_inverse(x, l)?, coeff_inverse(y, r)?))
        }
    }
}

/// Rewrites `(a₀xa₁⋯xaₙ, b)` to `(xa₁⋯x·aₙb⁻¹a₀, e)`, so every polynomial has
/// the shape `x·g(x)` and every constant is the unit. Both covers are checked
/// on the window.
pub fn normalize_group_cover(w: &Window, c: &Cover) -> Result<Cover> {
    let s = w.handle();
    if c.handle() != s {
        return Err(Error::HandleMismatch);
    }
    if let Verdict::Counterexample(x) = verify_cover(w, &Target::All, c)? {
        return Err(Error::Unverified(format!("element {x} is not covered")));
    }
    let e = s
        .identity()
        .ok_or_else(|| Error::Invalid(format!("{} has no identity", s.name())))?;
    let mut pairs: Vec<(PolyTerm, usize)> = Vec::new();
    for (f, b) in c.pairs() {
        let n = f.degree();
        let mut coeffs = f.coeffs().to_vec();
        let a0 = std::mem::replace(&mut coeffs[0], Coeff::One);
        let mut last = coeffs[n].clone();
        if *b != e {
            let bi = s.inverse(*b).ok_or(Error::MissingInverse(*b))?;
            last = s.coeff_mul(&last, &Coeff::Elem(bi));
        }
        if a0 != Coeff::One && a0 != Coeff::Elem(e) {
            last = s.coeff_mul(&last, &a0);
        }
        // the rewrite is only an equivalence when a₀ is invertible
        coeff_inverse(s, &a0)?;
        coeffs[n] = last;
        let pair = (PolyTerm::new(s, coeffs)?, e);
        if !pairs.contains(&pair) {
            pairs.push(pair);
        }
    }
    let out = Cover::new(s, pairs)?;
    if let Verdict::Counterexample(x) = verify_cover(w, &Target::All, &out)? {
        return Err(Error::Unverified(format!("normalized cover misses element {x}")));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterWitness {
    pub z: usize,
    /// Least `m < m'` with `z^m = z^{m'}`.
    pub m: usize,
    pub m_prime: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterBound {
    pub center: Vec<usize>,
    /// Largest degree among the pairs.
    pub p: usize,
    /// `⋃ {x ∈ Z : a_i·x = b_i}` with `a_i` the coefficient product of `f_i`.
    pub fiber: Vec<usize>,
    /// `(1 + n|F|)·p`
    pub bound: usize,
    pub witnesses: Vec<CenterWitness>,
    /// `Counterexample(z)` names a central element whose powers up to the
    /// bound are pairwise distinct.
    pub verdict: Verdict<usize>,
    /// The cover itself checked against the window center.
    pub cover_verdict: Verdict<usize>,
}

pub const CENTER_BOUND_GUARD: usize = 1 << 22;

fn first_repeat(s: &Semigroup, z: usize, bound: usize) -> Option<(usize, usize)> {
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut p = z;
    for k in 1..=bound {
        if let Some(&m) = seen.get(&p) {
            return Some((m, k));
        }
        seen.insert(p, k);
        p = s.checked_mul(p, z)?;
    }
    None
}

/// On central elements every `f_i` acts as `a_i·x^{p_i}`. With
/// `p = max p_i` and `F` the union of the fibers `{x ∈ Z : a_i x = b_i}`,
/// each central `z` must repeat a power within `(1 + n|F|)·p`.
pub fn center_bound_check(w: &Window, c: &Cover) -> Result<CenterBound> {
    let s = w.handle();
    if c.handle() != s {
        return Err(Error::HandleMismatch);
    }
    if !s.is_finite() && s.shift_oracle() != ShiftOracle::FiniteToOne {
        return Err(Error::FiberNotFinite(s.name().to_string()));
    }
    let z_set = if s.has_tag(Tag::Commutative) {
        w.elements().collect()
    } else {
        center(w)
    };
    let central: BTreeSet<usize> = z_set.iter().copied().collect();
    let is_central = |x: usize| {
        if s.has_tag(Tag::Commutative) || central.contains(&x) {
            return true;
        }
        !s.is_finite() && !w.contains(x) && w.elements().all(|y| s.checked_mul(x, y) == s.checked_mul(y, x))
    };

    let p = c.pairs().iter().map(|(f, _)| f.degree()).max().unwrap_or(1);
    let mut fiber: BTreeSet<usize> = BTreeSet::new();
    for (f, b) in c.pairs() {
        let a = f.coefficient_product();
        for x in s.solve_shift(&a, &Coeff::One, *b)? {
            if is_central(x) {
                fiber.insert(x);
            }
        }
    }
    let n = c.len();
    let bound = n
        .checked_mul(fiber.len())
        .and_then(|v| v.checked_add(1))
        .and_then(|v| v.checked_mul(p))
        .ok_or_else(|| Error::guard("center exponent bound", u128::MAX, CENTER_BOUND_GUARD as u128))?;
    if bound > CENTER_BOUND_GUARD {
        return Err(Error::guard(
            "center exponent bound",
            bound as u128,
            CENTER_BOUND_GUARD as u128,
        ));
    }

    let mut witnesses = Vec::new();
    let mut violation = None;
    for &z in &z_set {
        match first_repeat(s, z, bound) {
            Some((m, m_prime)) => witnesses.push(CenterWitness { z, m, m_prime }),
            None => {
                violation = Some(z);
                break;
            }
        }
    }
    let scope = if w.is_full() { Scope::Exhaustive } else { Scope::Window };
    let verdict = match violation {
        Some(z) => Verdict::Counterexample(z),
        None => Verdict::Verified(scope),
    };
    let cover_verdict = verify_cover(w, &Target::Set(central.clone()), c)?;
    let cover_verdict = match cover_verdict {
        Verdict::Verified(_) => Verdict::Verified(scope),
        other => other,
    };
    Ok(CenterBound {
        center: z_set,
        p,
        fiber: fiber.into_iter().collect(),
        bound,
        witnesses,
        verdict,
        cover_verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polybounded::{parse_cover, trivial_finite_cover};

    fn brute_inverse(s: &Semigroup, e: usize) -> Vec<usize> {
        let n = s.order().unwrap();
        (0..n)
            .map(|x| (0..n).find(|&y| s.mul(x, y) == e && s.mul(y, x) == e).unwrap())
            .collect()
    }

    #[test]
    fn cyclic_six() {
        let s = Semigroup::cyclic(6).unwrap();
        let w = Window::full(&s).unwrap();
        let g = group_from_cover(&w, &trivial_finite_cover(&s).unwrap()).unwrap();
        assert_eq!(g.identity, 0);
        for k in 0..6 {
            assert_eq!(g.inverse_of(k), Some((6 - k) % 6));
        }
    }

    #[test]
    fn trivial_and_s3() {
        let t = Semigroup::trivial();
        let g = group_from_cover(&Window::full(&t).unwrap(), &trivial_finite_cover(&t).unwrap()).unwrap();
        assert_eq!((g.identity, g.inverse_of(0)), (0, Some(0)));

        let s = Semigroup::symmetric3();
        let w = Window::full(&s).unwrap();
        let g = group_from_cover(&w, &trivial_finite_cover(&s).unwrap()).unwrap();
        let brute = brute_inverse(&s, g.identity);
        assert_eq!(g.inverse.values().copied().collect::<Vec<_>>(), brute);
        assert_eq!(idempotents(&w), vec![g.identity]);
    }

    #[test]
    fn non_cancellative_rejected() {
        let s = Semigroup::semilattice(3).unwrap();
        let w = Window::full(&s).unwrap();
        assert!(group_from_cover(&w, &trivial_finite_cover(&s).unwrap()).is_err());
    }

    #[test]
    fn zpm_window_group() {
        let g = Semigroup::zpm();
        let a = g.zpm_index(0, -1);
        let e = g.zpm_index(0, 1);
        let w = Window::new(&g, 200).unwrap();
        let c = parse_cover(&g, &format!("{a} . x . x . {a} . x . x = {e}\n")).unwrap();
        let gs = group_from_cover(&w, &c).unwrap();
        assert_eq!(gs.identity, e);
        for (x, z) in &gs.inverse {
            assert_eq!(g.inverse(*x), Some(*z));
        }
    }

    #[test]
    fn normalize_examples() {
        let g = Semigroup::zpm();
        let a = g.zpm_index(0, -1);
        let e = g.zpm_index(0, 1);
        let w = Window::new(&g, 300).unwrap();
        let c = parse_cover(&g, &format!("{a} . x . x . {a} . x . x = {e}\n")).unwrap();
        let out = normalize_group_cover(&w, &c).unwrap();
        let (f, b) = &out.pairs()[0];
        assert_eq!(*b, e);
        assert_eq!(f.to_string(), format!("x . x . {a} . x . x . {a}"));

        assert_eq!(normalize_group_cover(&w, &out).unwrap(), out);

        let c4 = Semigroup::cyclic(4).unwrap();
        let mut text = String::from("1 . x . x . 3 = 1\n");
        for b in 0..4 {
            text.push_str(&format!("x = {b}\n"));
        }
        let out = normalize_group_cover(&Window::full(&c4).unwrap(), &parse_cover(&c4, &text).unwrap()).unwrap();
        assert!(out.constants() == vec![0]);
        assert_eq!(out.pairs()[0].0.to_string(), "x . x . 3");
    }

    #[test]
    fn normalize_needs_inverses() {
        let n = Semigroup::nat_plus();
        let w = Window::new(&n, 20).unwrap();
        let mut text = String::new();
        for b in 0..20 {
            text.push_str(&format!("x = {b}\n"));
        }
        assert!(matches!(
            normalize_group_cover(&w, &parse_cover(&n, &text).unwrap()),
            Err(Error::MissingInverse(1))
        ));
    }

    #[test]
    fn center_bounds() {
        let s = Semigroup::cyclic(6).unwrap();
        let r = center_bound_check(&Window::full(&s).unwrap(), &trivial_finite_cover(&s).unwrap()).unwrap();
        assert!(r.verdict.is_verified());
        // p = 1, |F| = 6
        assert_eq!(r.bound, 1 + 6 * 6);
        assert!(r.witnesses.iter().all(|w| w.m_prime <= r.bound));

        let l = Semigroup::semilattice(4).unwrap();
        let r = center_bound_check(&Window::full(&l).unwrap(), &trivial_finite_cover(&l).unwrap()).unwrap();
        assert!(r.witnesses.iter().all(|w| (w.m, w.m_prime) == (1, 2)));

        let n = Semigroup::nat_plus();
        let w = Window::new(&n, 100).unwrap();
        let r = center_bound_check(&w, &parse_cover(&n, "x = 0\nx . x = 7\n").unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::Counterexample(1));

        let t = Semigroup::taimanov();
        let r = center_bound_check(&Window::new(&t, 10).unwrap(), &parse_cover(&t, "x = 0").unwrap());
        assert!(matches!(r, Err(Error::FiberNotFinite(_))), "{r:?}");
    }
}
