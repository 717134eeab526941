//! Filter bases on a window and their products `a_0 F a_1 F ⋯ F a_m`.
//!
//! Scenario file format, one base set per line:
//! `cofinite exclude 3 5 7`, `singleton 4`, `explicit 1 2 3`. Numbers may be
//! ranges `a..b` (exclusive) or `a..=b`.

use std::ops::Range;

use fixedbitset::FixedBitSet;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polynomial::Coeff;
use crate::semigroup::{Semigroup, Window};

/// Limit on the number of sets produced by a shifted product.
pub const PRODUCT_GUARD: usize = 250_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterBase {
    handle: Semigroup,
    window: usize,
    sets: Vec<FixedBitSet>,
}

impl FilterBase {
    /// Checks that every set is nonempty and every two sets meet.
    pub fn new(w: &Window, sets: Vec<FixedBitSet>) -> Result<FilterBase> {
        FilterBase::from_parts(w.handle(), w.size(), sets)
    }

    fn from_parts(handle: &Semigroup, window: usize, sets: Vec<FixedBitSet>) -> Result<FilterBase> {
        if sets.is_empty() {
            return Err(Error::Invalid("a filter base needs at least one set".into()));
        }
        for (i, s) in sets.iter().enumerate() {
            if s.len() != window {
                return Err(Error::Invalid(format!("set {i} is not a subset of the window")));
            }
            if s.is_clear() {
                return Err(Error::Invalid(format!("set {i} is empty")));
            }
        }
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if sets[i].is_disjoint(&sets[j]) {
                    return Err(Error::Invalid(format!("sets {i} and {j} are disjoint")));
                }
            }
        }
        Ok(FilterBase {
            handle: handle.clone(),
            window,
            sets,
        })
    }

    pub fn handle(&self) -> &Semigroup {
        &self.handle
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn sets(&self) -> &[FixedBitSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// `N − |F|` for each base set.
    pub fn deficits(&self) -> Vec<usize> {
        self.sets.iter().map(|s| self.window - s.count_ones(..)).collect()
    }
}

fn full_set(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

pub fn principal_base(w: &Window, x: usize) -> Result<FilterBase> {
    if !w.contains(x) {
        return Err(Error::Invalid(format!("{x} is outside the window")));
    }
    let mut s = FixedBitSet::with_capacity(w.size());
    s.insert(x);
    FilterBase::new(w, vec![s])
}

/// Window minus consecutive blocks of `threshold` elements. The sets
/// together exclude every window element, so the base is free on the window.
pub fn cofinite_blocks_base(w: &Window, threshold: usize) -> Result<FilterBase> {
    let n = w.size();
    let t = threshold.max(1);
    if 2 * t >= n {
        return Err(Error::Invalid(format!("threshold {t} is too large for window {n}")));
    }
    let sets = (0..n)
        .step_by(t)
        .map(|start| {
            let mut s = full_set(n);
            s.set_range(start..(start + t).min(n), false);
            s
        })
        .collect();
    FilterBase::new(w, sets)
}

/// `count` sets, each missing a seeded random choice of at most `threshold` elements.
pub fn random_cofinite_base(w: &Window, count: usize, threshold: usize, seed: u64) -> Result<FilterBase> {
    let n = w.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sets = (0..count)
        .map(|_| {
            let k = rng.gen_range(0..=threshold.min(n - 1));
            let mut s = full_set(n);
            for x in sample(&mut rng, n, k) {
                s.set(x, false);
            }
            s
        })
        .collect();
    FilterBase::new(w, sets)
}

/// `7`, `a..b` or `a..=b`.
pub(crate) fn parse_range(word: &str) -> Option<Range<usize>> {
    match word.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.parse().ok()?;
            let end = match b.strip_prefix('=') {
                Some(b) => b.parse::<usize>().ok()?.checked_add(1)?,
                None => b.parse().ok()?,
            };
            Some(a..end)
        }
        None => {
            let x: usize = word.parse().ok()?;
            Some(x..x + 1)
        }
    }
}

fn parse_numbers(line_no: usize, words: &[&str], n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for word in words {
        let r = parse_range(word).ok_or_else(|| Error::parse(line_no, 1, format!("bad element `{word}`")))?;
        if r.end > n {
            return Err(Error::parse(line_no, 1, format!("`{word}` reaches outside the window")));
        }
        out.extend(r);
    }
    Ok(out)
}

pub fn parse_scenario(w: &Window, text: &str) -> Result<FilterBase> {
    let n = w.size();
    let mut sets = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let set = match words.as_slice() {
            ["cofinite", "exclude", rest @ ..] => {
                let mut s = full_set(n);
                for x in parse_numbers(line_no, rest, n)? {
                    s.set(x, false);
                }
                s
            }
            ["cofinite"] => full_set(n),
            ["singleton", x] => {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(parse_numbers(line_no, &[x], n)?[0]);
                s
            }
            ["explicit", rest @ ..] => {
                let mut s = FixedBitSet::with_capacity(n);
                for x in parse_numbers(line_no, rest, n)? {
                    s.insert(x);
                }
                s
            }
            _ => {
                return Err(Error::parse(
                    line_no,
                    1,
                    "expected `cofinite exclude …`, `singleton <x>` or `explicit …`",
                ))
            }
        };
        sets.push(set);
    }
    FilterBase::new(w, sets)
}

fn set_times(s: &Semigroup, n: usize, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(n);
    let bs: Vec<usize> = b.ones().collect();
    for x in a.ones() {
        for &y in &bs {
            if let Some(v) = s.checked_mul(x, y) {
                if v < n {
                    out.insert(v);
                }
            }
        }
    }
    out
}

fn set_shift(s: &Semigroup, n: usize, set: &FixedBitSet, c: &Coeff, on_left: bool) -> FixedBitSet {
    match c {
        Coeff::One => set.clone(),
        _ => {
            let mut out = FixedBitSet::with_capacity(n);
            for x in set.ones() {
                if let Some(v) = s.mul_coeff(Some(x), c, on_left) {
                    if v < n {
                        out.insert(v);
                    }
                }
            }
            out
        }
    }
}

/// Base `{EF : E ∈ ℰ, F ∈ ℱ}`; products outside the window are dropped.
pub fn filter_product(e: &FilterBase, f: &FilterBase) -> Result<FilterBase> {
    if e.handle != f.handle || e.window != f.window {
        return Err(Error::HandleMismatch);
    }
    let n = e.window;
    let mut sets = Vec::with_capacity(e.len() * f.len());
    for a in &e.sets {
        for b in &f.sets {
            sets.push(set_times(&e.handle, n, a, b));
        }
    }
    FilterBase::from_parts(&e.handle, n, sets)
}

/// Base of `a_0 ℱ a_1 ℱ ⋯ ℱ a_m` with `m = shifts.len() − 1` factors, every
/// factor ranging independently over the base.
pub fn shifted_product(f: &FilterBase, shifts: &[Coeff]) -> Result<FilterBase> {
    if shifts.len() < 2 {
        return Err(Error::Invalid("need at least two shifts (one filter factor)".into()));
    }
    for c in shifts {
        f.handle.validate_coeff(c)?;
    }
    let m = shifts.len() - 1;
    let count = (f.len() as u128).saturating_pow(m as u32);
    if count > PRODUCT_GUARD as u128 {
        return Err(Error::guard("shifted product sets", count, PRODUCT_GUARD as u128));
    }
    let s = &f.handle;
    let n = f.window;
    // partial products a_0 F_1 a_1 ⋯ F_j a_j
    let mut partial: Vec<Option<FixedBitSet>> = vec![None];
    for j in 1..=m {
        let mut next = Vec::with_capacity(partial.len() * f.len());
        for p in &partial {
            for b in &f.sets {
                let left = match p {
                    None => set_shift(s, n, b, &shifts[0], true),
                    Some(p) => set_times(s, n, p, b),
                };
                next.push(Some(set_shift(s, n, &left, &shifts[j], false)));
            }
        }
        partial = next;
    }
    FilterBase::from_parts(s, n, partial.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterClass {
    pub free_on_window: bool,
    pub principal_on_window: bool,
    /// Window elements in every base set.
    pub intersection: Vec<usize>,
    pub smallest_set: usize,
}

impl FilterClass {
    pub fn neither(&self) -> bool {
        !self.free_on_window && !self.principal_on_window
    }
}

pub fn filter_classify(f: &FilterBase) -> FilterClass {
    let mut meet = full_set(f.window);
    for s in &f.sets {
        meet.intersect_with(s);
    }
    let sizes: Vec<usize> = f.sets.iter().map(|s| s.count_ones(..)).collect();
    FilterClass {
        free_on_window: meet.is_clear(),
        principal_on_window: sizes.contains(&1),
        intersection: meet.ones().collect(),
        smallest_set: sizes.iter().copied().min().unwrap_or(0),
    }
}

/// Classifies `a_0 ℱ a_1 ⋯ ℱ a_m`; `neither()` on the result is the
/// sufficient condition for T1S-closedness at this filter.
pub fn t1_witness_check(f: &FilterBase, shifts: &[Coeff]) -> Result<FilterClass> {
    Ok(filter_classify(&shifted_product(f, shifts)?))
}

/// Least pair `u < v` lying in every set of `a_0 ℱ a_1 ⋯ ℱ a_m`.
pub fn it1_witness_check(f: &FilterBase, shifts: &[Coeff]) -> Result<Option<(usize, usize)>> {
    let c = t1_witness_check(f, shifts)?;
    Ok(match c.intersection.as_slice() {
        [u, v, ..] => Some((*u, *v)),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(n: usize) -> Vec<Coeff> {
        vec![Coeff::One; n]
    }

    #[test]
    fn taimanov_pair() {
        let t = Semigroup::taimanov();
        let w = Window::new(&t, 500).unwrap();
        let f = cofinite_blocks_base(&w, 50).unwrap();
        assert!(filter_classify(&f).free_on_window);
        assert_eq!(it1_witness_check(&f, &ones(3)).unwrap(), Some((0, 1)));
    }

    #[test]
    fn principal_products() {
        let s = Semigroup::cyclic(7).unwrap();
        let w = Window::full(&s).unwrap();
        let p = filter_product(&principal_base(&w, 3).unwrap(), &principal_base(&w, 5).unwrap()).unwrap();
        assert_eq!(p.sets()[0].ones().collect::<Vec<_>>(), vec![1]);
        let c = t1_witness_check(&principal_base(&w, 2).unwrap(), &ones(3)).unwrap();
        assert!(c.principal_on_window);
        assert_eq!(
            it1_witness_check(&principal_base(&w, 2).unwrap(), &ones(3)).unwrap(),
            None
        );
    }

    #[test]
    fn semilattice_square() {
        let s = Semigroup::semilattice_omega();
        let w = Window::new(&s, 500).unwrap();
        let f = cofinite_blocks_base(&w, 50).unwrap();
        let c = t1_witness_check(&f, &ones(3)).unwrap();
        assert!(c.neither(), "{c:?}");
        assert_eq!(c.intersection, vec![0]);
        // C·C = C ∪ {0}
        let one = parse_scenario(&w, "cofinite exclude 0..10 77\n").unwrap();
        let sq = filter_product(&one, &one).unwrap();
        let mut expect = one.sets()[0].clone();
        expect.insert(0);
        assert_eq!(sq.sets()[0], expect);
    }

    #[test]
    fn naturals_products_move_up() {
        let n = Semigroup::nat_plus();
        let w = Window::new(&n, 200).unwrap();
        let text: String = (1..10).map(|j| format!("cofinite exclude 0..{}\n", 10 * j)).collect();
        let f = parse_scenario(&w, &text).unwrap();
        let c = t1_witness_check(&f, &[Coeff::Elem(3), Coeff::One, Coeff::Elem(1)]).unwrap();
        // 3 + F + F' + 1 misses everything below 4 + 2·90; only the window's top survives
        assert_eq!(c.intersection.first(), Some(&184));
        assert!(!c.principal_on_window);
    }

    #[test]
    fn scenario_errors_and_law() {
        let s = Semigroup::taimanov();
        let w = Window::new(&s, 20).unwrap();
        assert!(parse_scenario(&w, "singleton 3\nsingleton 4\n").is_err());
        assert!(matches!(
            parse_scenario(&w, "bogus 1"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_scenario(&w, "explicit 1 25").is_err());
        let f = parse_scenario(&w, "# base\ncofinite exclude 1..=3\nexplicit 5 6 7\n").unwrap();
        assert_eq!(f.deficits(), vec![3, 17]);
    }

    #[test]
    fn random_bases_are_seeded() {
        let s = Semigroup::taimanov();
        let w = Window::new(&s, 100).unwrap();
        let a = random_cofinite_base(&w, 5, 10, 7).unwrap();
        let b = random_cofinite_base(&w, 5, 10, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.deficits().iter().all(|&d| d <= 10));
    }
}
