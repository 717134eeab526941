use std::collections::BTreeSet;

use super::{require_exhaustive, verify_cover, Cover, Target};
use crate::error::{Error, Result};
use crate::polynomial::PolyTerm;
use crate::semigroup::analysis::{boundedness_exponent, regular_witness, Boundedness};
use crate::semigroup::Window;
use crate::verdict::Verdict;

/// Rewrites a cover into the form `F × B` with every polynomial pruned:
/// each `p = c·f·d` contributes `f` to `F` and the fiber `{t : c·t·d = a}` to `B`.
pub fn prune_cover(c: &Cover, w: &Window) -> Result<Cover> {
    let s = c.handle();
    if let Verdict::Counterexample(x) = verify_cover(w, &Target::All, c)? {
        return Err(Error::Unverified(format!("element {x} is not covered")));
    }
    let mut polys: Vec<PolyTerm> = Vec::new();
    let mut constants: BTreeSet<usize> = BTreeSet::new();
    for (p, a) in c.pairs() {
        let (left, f, right) = p.prune_decompose();
        constants.extend(s.solve_shift(&left, &right, *a)?);
        if !polys.contains(&f) {
            polys.push(f);
        }
    }
    let constants: Vec<usize> = constants.into_iter().collect();
    let out = Cover::from_product(s, &polys, &constants)?;
    if let Verdict::Counterexample(x) = verify_cover(w, &Target::All, &out)? {
        return Err(Error::Unverified(format!("pruned cover misses element {x}")));
    }
    Ok(out)
}

struct Values {
    /// `values[f][x] = f(x)`
    values: Vec<Vec<usize>>,
}

impl Values {
    fn of(polys: &[PolyTerm], n: usize) -> Values {
        Values {
            values: polys.iter().map(|f| (0..n).map(|x| f.eval(x)).collect()).collect(),
        }
    }

    fn covers(&self, constants: &BTreeSet<usize>, n: usize) -> bool {
        (0..n).all(|x| self.values.iter().any(|v| constants.contains(&v[x])))
    }
}

/// Drives the constants of a pruned cover to regular elements.
///
/// Only constants that are not yet regular are touched. Repeats until nothing
/// changes: drop such a constant outright when the rest still covers;
/// otherwise, for a constant `b` with some `φ ∈ F` and
/// `φ(b²) ∈ B∖{b}`, try `F ∪ {φ∘s∘φ}` with `B∖{b}` where `s(x) = x²`.
/// Constants that are still not regular afterwards are lifted through the
/// boundedness exponent: `(f, b)` becomes `(fⁿ, bⁿ)` with `bⁿ` idempotent.
pub fn regularize_cover(c: &Cover, w: &Window) -> Result<Cover> {
    let s = c.handle();
    let n = s.order().ok_or(Error::RequiresFinite {
        what: "regularize_cover",
    })?;
    if !w.is_full() || w.handle() != s {
        return Err(Error::Invalid(
            "regularize_cover needs the full window of the cover's semigroup".into(),
        ));
    }
    if let Some((f, _)) = c.pairs().iter().find(|(f, _)| !f.is_pruned()) {
        return Err(Error::Invalid(format!("polynomial `{f}` is not pruned")));
    }
    require_exhaustive(c, "regularize_cover input")?;

    let square = PolyTerm::monomial(s, 2)?;
    let mut polys = c.polys();
    let mut constants: BTreeSet<usize> = c.constants().into_iter().collect();
    let mut values = Values::of(&polys, n);
    let whole = Window::full(s)?;
    'outer: loop {
        for &b in &constants {
            if regular_witness(&whole, b).is_some() {
                continue;
            }
            let mut fewer = constants.clone();
            fewer.remove(&b);
            if fewer.is_empty() {
                continue;
            }
            if values.covers(&fewer, n) {
                constants = fewer;
                continue 'outer;
            }
            let b2 = s.mul(b, b);
            for (i, phi) in polys.iter().enumerate() {
                let v = values.values[i][b2];
                if v == b || !constants.contains(&v) {
                    continue;
                }
                let lifted = phi.compose(&square.compose(phi)?)?;
                if polys.contains(&lifted) {
                    continue;
                }
                let mut trial = Values {
                    values: values.values.clone(),
                };
                trial.values.push((0..n).map(|x| lifted.eval(x)).collect());
                if trial.covers(&fewer, n) {
                    polys.push(lifted);
                    constants = fewer;
                    values = trial;
                    continue 'outer;
                }
            }
        }
        break;
    }

    let irregular: Vec<usize> = constants
        .iter()
        .copied()
        .filter(|&b| regular_witness(&whole, b).is_none())
        .collect();
    let mut pairs: Vec<(PolyTerm, usize)> = Vec::new();
    let exponent = match boundedness_exponent(&whole) {
        Boundedness::Exponent(e) => e,
        Boundedness::NotBoundedWithin(_) => unreachable!("finite semigroups are bounded"),
    };
    for f in &polys {
        for &b in &constants {
            if irregular.contains(&b) {
                let pair = (f.power(exponent)?, s.pow(b, exponent));
                if !pairs.contains(&pair) {
                    pairs.push(pair);
                }
            } else {
                pairs.push((f.clone(), b));
            }
        }
    }
    let out = Cover::new(s, pairs)?;
    require_exhaustive(&out, "regularized cover")?;
    for &b in &out.constants() {
        if regular_witness(&whole, b).is_none() {
            return Err(Error::Unverified(format!("constant {b} is not regular")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polybounded::{parse_cover, trivial_finite_cover};
    use crate::semigroup::Semigroup;

    #[test]
    fn prune_single_pair() {
        let s = Semigroup::symmetric3();
        let w = Window::full(&s).unwrap();
        // (1 . x . 2 = 0) with a covering companion so the cover verifies
        let mut text = String::from("1 . x . 2 = 0\n");
        for b in 0..6 {
            text.push_str(&format!("x = {b}\n"));
        }
        let c = parse_cover(&s, &text).unwrap();
        let p = prune_cover(&c, &w).unwrap();
        assert!(p.pairs().iter().all(|(f, _)| f.is_pruned()));
        assert_eq!(p.constants(), (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn prune_on_zpm_uses_structural_fibers() {
        let g = Semigroup::zpm();
        let a = g.zpm_index(0, -1);
        let e = g.zpm_index(0, 1);
        let w = Window::new(&g, 300).unwrap();
        let c = parse_cover(&g, &format!("{a} . x . x . {a} . x . x = {e}\n")).unwrap();
        let p = prune_cover(&c, &w).unwrap();
        assert_eq!(p.constants(), vec![a]);
        assert!(p.pairs()[0].0.is_pruned());
        let n = Semigroup::nat_plus();
        let bad = parse_cover(&n, "0 . x = 0\n").unwrap();
        assert!(matches!(
            prune_cover(&bad, &Window::new(&n, 50).unwrap()),
            Err(Error::Unverified(_))
        ));
    }

    #[test]
    fn group_constants_stay() {
        let s = Semigroup::cyclic(5).unwrap();
        let w = Window::full(&s).unwrap();
        let c = trivial_finite_cover(&s).unwrap();
        assert_eq!(regularize_cover(&c, &w).unwrap(), c);
    }

    #[test]
    fn finite_semilattice_trivial_cover() {
        let s = Semigroup::semilattice(5).unwrap();
        let w = Window::full(&s).unwrap();
        let r = regularize_cover(&trivial_finite_cover(&s).unwrap(), &w).unwrap();
        for b in r.constants() {
            assert_eq!(s.mul(b, b), b);
        }
    }

    #[test]
    fn rejects_unpruned_input() {
        let s = Semigroup::cyclic(3).unwrap();
        let w = Window::full(&s).unwrap();
        let c = parse_cover(&s, "1 . x = 0\n1 . x = 1\n1 . x = 2\n").unwrap();
        assert!(matches!(regularize_cover(&c, &w), Err(Error::Invalid(_))));
    }
}
