//! Structural predicates evaluated on windows.

use std::collections::HashMap;

use super::{ShiftOracle, Window};
use crate::polynomial::Coeff;
use crate::verdict::{Scope, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `a·x = b`
    Left,
    /// `x·a = b`
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "a*x=b",
            Side::Right => "x*a=b",
        }
    }
}

/// `a·x·b = a·y·b` with `x ≠ y`; `a`, `b` range over the window plus the identity of X¹.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancelWitness {
    pub a: Coeff,
    pub b: Coeff,
    pub x: usize,
    pub y: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    pub a: usize,
    pub b: usize,
    pub side: Side,
    /// Number of window elements in the fiber.
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShiftReport {
    Verified(Scope),
    /// No oracle: the largest fiber seen inside the window.
    WindowReport(Fiber),
    /// The built-in oracle knows some fiber is infinite; the largest window fiber is shown.
    Counterexample(Fiber),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundedness {
    Exponent(usize),
    NotBoundedWithin(usize),
}

pub fn check_associative(w: &Window) -> Verdict<(usize, usize, usize)> {
    let s = w.handle();
    for a in w.elements() {
        for b in w.elements() {
            let ab = s.mul(a, b);
            for c in w.elements() {
                if s.mul(ab, c) != s.mul(a, s.mul(b, c)) {
                    return Verdict::Counterexample((a, b, c));
                }
            }
        }
    }
    Verdict::Verified(w.scope())
}

/// Injectivity of every shift `x ↦ axb` with `a, b ∈ E_N ∪ {1}` on the window.
pub fn is_cancellative(w: &Window) -> Verdict<CancelWitness> {
    let s = w.handle();
    let coeffs: Vec<Coeff> = std::iter::once(Coeff::One)
        .chain(w.elements().map(Coeff::Elem))
        .collect();
    let mut seen: HashMap<usize, usize> = HashMap::with_capacity(w.size());
    for a in &coeffs {
        for b in &coeffs {
            seen.clear();
            for x in w.elements() {
                let v = s.apply_coeffs(a, x, b);
                if let Some(&first) = seen.get(&v) {
                    return Verdict::Counterexample(CancelWitness {
                        a: a.clone(),
                        b: b.clone(),
                        x: first,
                        y: x,
                    });
                }
                seen.insert(v, x);
            }
        }
    }
    Verdict::Verified(w.scope())
}

/// Largest fiber `{x ∈ E_N : ax = b}` or `{x ∈ E_N : xa = b}` with `a` in the window.
pub fn largest_fiber(w: &Window) -> Fiber {
    let s = w.handle();
    let mut best = Fiber {
        a: 0,
        b: s.mul(0, 0),
        side: Side::Left,
        size: 0,
    };
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for side in [Side::Left, Side::Right] {
        for a in w.elements() {
            counts.clear();
            for x in w.elements() {
                let v = match side {
                    Side::Left => s.mul(a, x),
                    Side::Right => s.mul(x, a),
                };
                *counts.entry(v).or_default() += 1;
            }
            // least b among the largest counts, for determinism
            let (b, size) = counts
                .iter()
                .map(|(&b, &c)| (b, c))
                .max_by(|p, q| p.1.cmp(&q.1).then(q.0.cmp(&p.0)))
                .unwrap();
            if size > best.size {
                best = Fiber { a, b, side, size };
            }
        }
    }
    best
}

pub fn has_finite_to_one_shifts(w: &Window) -> ShiftReport {
    let s = w.handle();
    if s.is_finite() {
        return ShiftReport::Verified(Scope::Exhaustive);
    }
    match s.shift_oracle() {
        ShiftOracle::FiniteToOne => ShiftReport::Verified(Scope::Structural),
        ShiftOracle::InfiniteFiber => ShiftReport::Counterexample(largest_fiber(w)),
        ShiftOracle::Unknown => ShiftReport::WindowReport(largest_fiber(w)),
    }
}

pub fn idempotents(w: &Window) -> Vec<usize> {
    let s = w.handle();
    w.elements().filter(|&x| s.mul(x, x) == x).collect()
}

pub fn center(w: &Window) -> Vec<usize> {
    let s = w.handle();
    w.elements()
        .filter(|&z| w.elements().all(|x| s.mul(x, z) == s.mul(z, x)))
        .collect()
}

/// Least window witness `y` with `x·y·x = x`, if any.
pub fn regular_witness(w: &Window, x: usize) -> Option<usize> {
    let s = w.handle();
    w.elements().find(|&y| s.mul(s.mul(x, y), x) == x)
}

pub fn regular_elements(w: &Window) -> Vec<(usize, usize)> {
    w.elements()
        .filter_map(|x| regular_witness(w, x).map(|y| (x, y)))
        .collect()
}

/// Index and period of the cyclic subsemigroup of `x`, if the powers repeat
/// within `cap` steps.
pub fn index_and_period(w: &Window, x: usize, cap: usize) -> Option<(usize, usize)> {
    let s = w.handle();
    let mut first_seen: HashMap<usize, usize> = HashMap::new();
    let mut p = x;
    for k in 1..=cap {
        if let Some(&i) = first_seen.get(&p) {
            return Some((i, k - i));
        }
        first_seen.insert(p, k);
        p = s.checked_mul(p, x)?;
    }
    None
}

/// Least `n` with `xⁿ` idempotent for every window element.
///
/// Powers are followed up to `max(window, order)` steps; a longer tail or a
/// longer cycle is reported as `NotBoundedWithin`.
pub fn boundedness_exponent(w: &Window) -> Boundedness {
    let cap = w.handle().order().unwrap_or(w.size()).max(w.size()) + 1;
    let mut max_index = 1usize;
    let mut lcm: u128 = 1;
    for x in w.elements() {
        match index_and_period(w, x, cap) {
            Some((i, p)) => {
                max_index = max_index.max(i);
                lcm = lcm / gcd(lcm, p as u128) * p as u128;
                if lcm > cap as u128 * cap as u128 {
                    return Boundedness::NotBoundedWithin(cap);
                }
            }
            None => return Boundedness::NotBoundedWithin(cap),
        }
    }
    let n = (max_index as u128).div_ceil(lcm) * lcm;
    Boundedness::Exponent(n as usize)
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{CayleyTable, Semigroup};

    fn win(s: &Semigroup, n: usize) -> Window {
        Window::new(s, n).unwrap()
    }

    #[test]
    fn associativity_on_builtins() {
        for s in [
            Semigroup::nat_plus(),
            Semigroup::int_plus(),
            Semigroup::zpm(),
            Semigroup::taimanov(),
            Semigroup::semilattice_omega(),
            Semigroup::free_monoid(2).unwrap(),
        ] {
            assert_eq!(check_associative(&win(&s, 60)), Verdict::Verified(Scope::Window));
        }
        let c = Semigroup::cyclic(5).unwrap();
        assert_eq!(
            check_associative(&Window::full(&c).unwrap()),
            Verdict::Verified(Scope::Exhaustive)
        );
    }

    #[test]
    fn corrupted_cell_is_caught() {
        let mut t = CayleyTable::from_fn(4, |a, b| (a + b) % 4).unwrap();
        t.set(1, 1, 3);
        let s = Semigroup::from_table(t, None, None).unwrap();
        let v = check_associative(&Window::full(&s).unwrap());
        let (a, b, c) = *v.counterexample().unwrap();
        assert_ne!(s.mul(s.mul(a, b), c), s.mul(a, s.mul(b, c)));
    }

    #[test]
    fn cancellativity() {
        assert_eq!(
            is_cancellative(&win(&Semigroup::int_plus(), 100)),
            Verdict::Verified(Scope::Window)
        );
        let t = is_cancellative(&win(&Semigroup::taimanov(), 10));
        let w = t.counterexample().unwrap();
        let s = Semigroup::taimanov();
        assert_eq!(s.apply_coeffs(&w.a, w.x, &w.b), s.apply_coeffs(&w.a, w.y, &w.b));
        assert!(!is_cancellative(&win(&Semigroup::semilattice_omega(), 10)).is_verified());
    }

    #[test]
    fn shift_reports() {
        assert_eq!(
            has_finite_to_one_shifts(&Window::full(&Semigroup::symmetric3()).unwrap()),
            ShiftReport::Verified(Scope::Exhaustive)
        );
        assert_eq!(
            has_finite_to_one_shifts(&win(&Semigroup::nat_plus(), 50)),
            ShiftReport::Verified(Scope::Structural)
        );
        match has_finite_to_one_shifts(&win(&Semigroup::semilattice_omega(), 10)) {
            ShiftReport::Counterexample(f) => assert!(f.size >= 9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn idempotents_and_center() {
        assert_eq!(
            idempotents(&Window::full(&Semigroup::cyclic(3).unwrap()).unwrap()),
            vec![0]
        );
        assert_eq!(idempotents(&win(&Semigroup::taimanov(), 10)), vec![0]);
        assert_eq!(idempotents(&win(&Semigroup::semilattice_omega(), 10)).len(), 10);
        assert_eq!(center(&Window::full(&Semigroup::symmetric3()).unwrap()), vec![0]);
        let g = Semigroup::zpm();
        assert_eq!(center(&win(&g, 60)), vec![g.zpm_index(0, 1)]);
    }

    #[test]
    fn regularity() {
        let n = regular_elements(&win(&Semigroup::nat_plus(), 30));
        assert_eq!(n, vec![(0, 0)]);
        let sl = regular_elements(&win(&Semigroup::semilattice_omega(), 8));
        assert!(sl.iter().all(|&(x, y)| x == y || x == 0));
        let s3 = Semigroup::symmetric3();
        for (x, y) in regular_elements(&Window::full(&s3).unwrap()) {
            assert_eq!(s3.inverse(x), Some(y));
        }
    }

    #[test]
    fn exponents() {
        let c6 = Window::full(&Semigroup::cyclic(6).unwrap()).unwrap();
        assert_eq!(boundedness_exponent(&c6), Boundedness::Exponent(6));
        assert_eq!(
            boundedness_exponent(&win(&Semigroup::semilattice_omega(), 20)),
            Boundedness::Exponent(1)
        );
        assert!(matches!(
            boundedness_exponent(&win(&Semigroup::nat_plus(), 50)),
            Boundedness::NotBoundedWithin(_)
        ));
        // free monoid powers overflow the index range without panicking
        assert!(matches!(
            boundedness_exponent(&win(&Semigroup::free_monoid(2).unwrap(), 100)),
            Boundedness::NotBoundedWithin(_)
        ));
    }
}
