//! The family `K = {a_0 A a_1 ⋯ A a_n}` over a finite base set `A`, the
//! four closure/fiber conditions checked on a window, and the `τ⁰`
//! neighborhood oracle for the adjoined zero.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::polynomial::Coeff;
use crate::semigroup::{Semigroup, Window};

/// Limit on the size of a single entry's expansion.
pub const EXPANSION_GUARD: usize = 2_000_000;

#[derive(Debug, Clone)]
pub struct FamilyEntry {
    /// `a_0, …, a_n`; the entry has `n` blocks.
    pub tuple: Vec<Coeff>,
    /// Every value of `a_0 x_1 a_1 ⋯ x_n a_n` with `x_i ∈ A` (overflowing
    /// products are dropped).
    pub expansion: BTreeSet<usize>,
}

impl FamilyEntry {
    pub fn blocks(&self) -> usize {
        self.tuple.len() - 1
    }

    pub fn in_window(&self, w: &Window) -> BTreeSet<usize> {
        self.expansion.iter().copied().filter(|&x| w.contains(x)).collect()
    }
}

#[derive(Debug, Clone)]
pub struct FamilyK {
    pub handle: Semigroup,
    pub base: Vec<usize>,
    pub pool: Vec<usize>,
    pub max_blocks: usize,
    pub entries: Vec<FamilyEntry>,
}

fn times(s: &Semigroup, v: Option<usize>, c: &Coeff) -> Option<Option<usize>> {
    match (v, c) {
        (v, Coeff::One) => Some(v),
        (None, Coeff::Elem(e)) => Some(Some(*e)),
        (Some(v), Coeff::Elem(e)) => s.checked_mul(v, *e).map(Some),
        (_, Coeff::Pair(..)) => None,
    }
}

fn expand(s: &Semigroup, base: &[usize], tuple: &[Coeff]) -> Result<BTreeSet<usize>> {
    let mut cur: BTreeSet<Option<usize>> = BTreeSet::new();
    if let Some(v) = times(s, None, &tuple[0]) {
        cur.insert(v);
    }
    for c in &tuple[1..] {
        let mut next = BTreeSet::new();
        for &v in &cur {
            for &x in base {
                let vx = match v {
                    None => Some(x),
                    Some(v) => s.checked_mul(v, x),
                };
                if let Some(r) = vx.and_then(|vx| times(s, Some(vx), c)) {
                    next.insert(r);
                }
            }
            if next.len() > EXPANSION_GUARD {
                return Err(Error::guard(
                    "family expansion",
                    next.len() as u128,
                    EXPANSION_GUARD as u128,
                ));
            }
        }
        cur = next;
    }
    Ok(cur.into_iter().flatten().collect())
}

impl FamilyK {
    pub fn from_tuples(handle: &Semigroup, base: &[usize], tuples: Vec<Vec<Coeff>>) -> Result<FamilyK> {
        let mut seen = BTreeSet::new();
        let mut entries = Vec::new();
        let mut max_blocks = 0;
        let mut pool = BTreeSet::new();
        for t in tuples {
            if t.len() < 2 {
                return Err(Error::ZeroDegree);
            }
            for c in &t {
                handle.validate_coeff(c)?;
                pool.extend(c.elem());
            }
            if seen.insert(t.clone()) {
                max_blocks = max_blocks.max(t.len() - 1);
                let expansion = expand(handle, base, &t)?;
                entries.push(FamilyEntry { tuple: t, expansion });
            }
        }
        Ok(FamilyK {
            handle: handle.clone(),
            base: base.to_vec(),
            pool: pool.into_iter().collect(),
            max_blocks,
            entries,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, tuple: &[Coeff]) -> Option<usize> {
        self.entries.iter().position(|e| e.tuple == tuple)
    }

    /// `U = ⋃ K` inside the window.
    /// Whether `gen_family_k` with this family's block bound and pool, and no
    /// entry limit, would produce the tuple.
    pub fn within_bounds(&self, tuple: &[Coeff]) -> bool {
        tuple.len() >= 2
            && tuple.len() - 1 <= self.max_blocks
            && tuple.iter().all(|c| match c {
                Coeff::One => true,
                Coeff::Elem(p) => self.pool.binary_search(p).is_ok(),
                Coeff::Pair(..) => false,
            })
    }

    pub fn union_in_window(&self, w: &Window) -> BTreeSet<usize> {
        self.entries.iter().flat_map(|e| e.in_window(w)).collect()
    }
}

/// All tuples with `1..=max_blocks` blocks and coefficients from `{1} ∪ pool`,
/// ordered by block count then lexicographically (`1` first, then the pool in
/// increasing order), truncated at `max_entries`.
pub fn gen_family_k(
    handle: &Semigroup,
    base: &[usize],
    pool: &[usize],
    max_blocks: usize,
    max_entries: usize,
) -> Result<FamilyK> {
    if max_blocks == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut letters: Vec<Coeff> = vec![Coeff::One];
    let mut sorted = pool.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    letters.extend(sorted.iter().map(|&p| Coeff::Elem(p)));
    let mut tuples = Vec::new();
    'outer: for blocks in 1..=max_blocks {
        let slots = blocks + 1;
        let mut digits = vec![0usize; slots];
        loop {
            if tuples.len() >= max_entries {
                break 'outer;
            }
            tuples.push(digits.iter().map(|&d| letters[d].clone()).collect());
            let mut i = slots;
            loop {
                if i == 0 {
                    continue 'outer;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < letters.len() {
                    break;
                }
                digits[i] = 0;
            }
        }
    }
    let mut k = FamilyK::from_tuples(handle, base, tuples)?;
    k.pool = sorted;
    k.max_blocks = max_blocks;
    Ok(k)
}

#[derive(Debug, Clone)]
pub struct ClosureReport {
    pub checked: usize,
    pub by_tuple: usize,
    pub by_inclusion: usize,
    /// Unwitnessed cases whose tuple lies outside the block bound or the
    /// pool, so a truncated family cannot be expected to contain it.
    pub beyond_bounds: usize,
    /// Unwitnessed cases within bounds, as entry indices (and coefficient pair for shifts).
    pub unwitnessed: Vec<String>,
}

impl ClosureReport {
    pub fn holds(&self) -> bool {
        self.unwitnessed.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct FiberReport {
    pub largest: usize,
    /// Where the largest fiber occurs, human readable.
    pub at: String,
    pub bound: usize,
}

impl FiberReport {
    pub fn holds(&self) -> bool {
        self.largest <= self.bound
    }
}

#[derive(Debug, Clone)]
pub struct L0Report {
    pub window: usize,
    pub entries: usize,
    pub products: ClosureReport,
    pub shifts: ClosureReport,
    pub shift_fibers: FiberReport,
    /// Taken over `U × U`, which bounds every `K × L`.
    pub pair_fibers: FiberReport,
    /// Elements of `U` involved in a largest pair fiber (the projection `P`).
    pub pair_projection: Vec<usize>,
}

impl L0Report {
    pub fn holds(&self) -> bool {
        self.products.holds() && self.shifts.holds() && self.shift_fibers.holds() && self.pair_fibers.holds()
    }
}

fn find_inclusion(k: &FamilyK, w: &Window, set: &BTreeSet<usize>) -> Option<usize> {
    k.entries
        .iter()
        .position(|e| set.iter().all(|x| e.expansion.contains(x) || !w.contains(*x)))
}

fn set_product(s: &Semigroup, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for &x in a {
        for &y in b {
            if let Some(v) = s.checked_mul(x, y) {
                out.insert(v);
            }
        }
    }
    out
}

/// Conditions (1)–(4) on the window, with `a, b, c` drawn from `{1} ∪ pool`
/// for the shift conditions.
pub fn check_l0_conditions(k: &FamilyK, w: &Window, fiber_bound: usize) -> Result<L0Report> {
    let s = &k.handle;
    if w.handle() != s {
        return Err(Error::HandleMismatch);
    }
    let shift_coeffs: Vec<Coeff> = std::iter::once(Coeff::One)
        .chain(k.pool.iter().map(|&p| Coeff::Elem(p)))
        .collect();

    let mut products = ClosureReport {
        checked: 0,
        by_tuple: 0,
        by_inclusion: 0,
        beyond_bounds: 0,
        unwitnessed: Vec::new(),
    };
    for (i, ki) in k.entries.iter().enumerate() {
        for (j, kj) in k.entries.iter().enumerate() {
            products.checked += 1;
            let n = ki.tuple.len() - 1;
            let mut joined: Vec<Coeff> = ki.tuple[..n].to_vec();
            joined.push(s.coeff_mul(&ki.tuple[n], &kj.tuple[0]));
            joined.extend(kj.tuple[1..].iter().cloned());
            if k.position(&joined).is_some() {
                products.by_tuple += 1;
                continue;
            }
            let prod = set_product(s, &ki.expansion, &kj.expansion);
            if find_inclusion(k, w, &prod).is_some() {
                products.by_inclusion += 1;
            } else if !k.within_bounds(&joined) {
                products.beyond_bounds += 1;
            } else {
                products.unwitnessed.push(format!("K{i}·K{j}"));
            }
        }
    }

    let mut shifts = ClosureReport {
        checked: 0,
        by_tuple: 0,
        by_inclusion: 0,
        beyond_bounds: 0,
        unwitnessed: Vec::new(),
    };
    for (i, ki) in k.entries.iter().enumerate() {
        for a in &shift_coeffs {
            for b in &shift_coeffs {
                shifts.checked += 1;
                let mut t = ki.tuple.clone();
                let last = t.len() - 1;
                t[0] = s.coeff_mul(a, &t[0]);
                t[last] = s.coeff_mul(&t[last], b);
                if k.position(&t).is_some() {
                    shifts.by_tuple += 1;
                    continue;
                }
                let shifted: BTreeSet<usize> = ki
                    .expansion
                    .iter()
                    .filter_map(|&x| {
                        s.mul_coeff(Some(x), a, true)
                            .and_then(|v| s.mul_coeff(Some(v), b, false))
                    })
                    .collect();
                if find_inclusion(k, w, &shifted).is_some() {
                    shifts.by_inclusion += 1;
                } else if !k.within_bounds(&t) {
                    shifts.beyond_bounds += 1;
                } else {
                    shifts.unwitnessed.push(format!("{a}·K{i}·{b}"));
                }
            }
        }
    }

    let mut shift_fibers = FiberReport {
        largest: 0,
        at: String::new(),
        bound: fiber_bound,
    };
    for (i, ki) in k.entries.iter().enumerate() {
        let members = ki.in_window(w);
        for a in &shift_coeffs {
            for b in &shift_coeffs {
                let mut counts: HashMap<usize, usize> = HashMap::new();
                for &x in &members {
                    let v = s
                        .mul_coeff(Some(x), a, true)
                        .and_then(|v| s.mul_coeff(Some(v), b, false));
                    if let Some(v) = v {
                        *counts.entry(v).or_default() += 1;
                    }
                }
                if let Some((&c, &size)) = counts.iter().max_by_key(|(c, n)| (**n, std::cmp::Reverse(**c))) {
                    if size > shift_fibers.largest {
                        shift_fibers.largest = size;
                        shift_fibers.at = format!("{{x ∈ K{i} : {a}·x·{b} = {c}}}");
                    }
                }
            }
        }
    }

    let u: Vec<usize> = k.union_in_window(w).into_iter().collect();
    let mut pair_counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &x in &u {
        for &y in &u {
            if let Some(v) = s.checked_mul(x, y) {
                *pair_counts.entry(v).or_default() += 1;
            }
        }
    }
    let worst = pair_counts.iter().max_by_key(|(c, n)| (**n, std::cmp::Reverse(**c)));
    let (pair_fibers, pair_projection) = match worst {
        Some((&c, &size)) => {
            let mut proj = BTreeSet::new();
            for &x in &u {
                for &y in &u {
                    if s.checked_mul(x, y) == Some(c) {
                        proj.insert(x);
                        proj.insert(y);
                    }
                }
            }
            (
                FiberReport {
                    largest: size,
                    at: format!("{{(x, y) ∈ U × U : x·y = {c}}}"),
                    bound: fiber_bound,
                },
                proj.into_iter().collect(),
            )
        }
        None => (
            FiberReport {
                largest: 0,
                at: String::new(),
                bound: fiber_bound,
            },
            Vec::new(),
        ),
    };

    Ok(L0Report {
        window: w.size(),
        entries: k.len(),
        products,
        shifts,
        shift_fibers,
        pair_fibers,
        pair_projection,
    })
}

/// Membership oracle for neighborhoods of the adjoined zero:
/// `V ∋ 0` is a neighborhood iff `|K ∖ V|` is window-finite for every entry.
#[derive(Debug, Clone)]
pub struct TauZeroOracle {
    pub family: FamilyK,
    pub window: Window,
    /// A window set counts as finite when its size is at most this.
    pub threshold: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tau0Answer {
    pub neighborhood: bool,
    pub deficits: Vec<usize>,
    pub threshold: usize,
}

/// `⌈N/10⌉`
pub fn default_threshold(window: usize) -> usize {
    window.div_ceil(10)
}

impl TauZeroOracle {
    pub fn new(family: FamilyK, window: Window, threshold: Option<usize>) -> Result<TauZeroOracle> {
        if family.handle != *window.handle() {
            return Err(Error::HandleMismatch);
        }
        let threshold = threshold.unwrap_or_else(|| default_threshold(window.size()));
        Ok(TauZeroOracle {
            family,
            window,
            threshold,
        })
    }

    /// `v` lists the nonzero members of `V`; the zero is implicit.
    pub fn is_neighborhood(&self, v: &BTreeSet<usize>) -> Tau0Answer {
        let deficits: Vec<usize> = self
            .family
            .entries
            .iter()
            .map(|e| e.in_window(&self.window).iter().filter(|x| !v.contains(x)).count())
            .collect();
        Tau0Answer {
            neighborhood: deficits.iter().all(|&d| d <= self.threshold),
            deficits,
            threshold: self.threshold,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_enumeration() {
        let n = Semigroup::nat_plus();
        let a = [0, 1, 3, 10];
        let k = gen_family_k(&n, &a, &[], 1, 100).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k.entries[0].expansion, a.iter().copied().collect());
        let k = gen_family_k(&n, &a, &[], 2, 100).unwrap();
        assert_eq!(k.len(), 2);
        assert_eq!(k.entries[1].tuple, vec![Coeff::One; 3]);
        let k = gen_family_k(&n, &a, &[5], 2, 100).unwrap();
        assert_eq!(k.len(), 4 + 8);
        assert_eq!(gen_family_k(&n, &a, &[5], 2, 7).unwrap().len(), 7);
        // A + A by hand
        let aa: BTreeSet<usize> = a.iter().flat_map(|x| a.iter().map(move |y| x + y)).collect();
        assert_eq!(gen_family_k(&n, &a, &[], 2, 100).unwrap().entries[1].expansion, aa);
    }

    #[test]
    fn subgroup_closed_under_products() {
        let c6 = Semigroup::cyclic(6).unwrap();
        let k = gen_family_k(&c6, &[0, 2, 4], &[], 1, 10).unwrap();
        let r = check_l0_conditions(&k, &Window::full(&c6).unwrap(), 10).unwrap();
        assert!(r.products.holds());
    }

    #[test]
    fn truncation_breaks_condition_one() {
        let n = Semigroup::nat_plus();
        // two blocks allowed, but the entry limit drops AA
        let k = gen_family_k(&n, &[0, 1, 3, 10], &[], 2, 1).unwrap();
        let r = check_l0_conditions(&k, &Window::new(&n, 100).unwrap(), 10).unwrap();
        assert!(!r.products.holds());
        assert_eq!(r.products.unwitnessed, vec!["K0·K0".to_string()]);
    }

    #[test]
    fn naturals_family_conditions() {
        let n = Semigroup::nat_plus();
        let a = [0, 1, 3, 10, 41, 206];
        let k = gen_family_k(&n, &a, &[0, 1], 2, 100).unwrap();
        let r = check_l0_conditions(&k, &Window::new(&n, 500).unwrap(), 10).unwrap();
        // cancellative: a + x + b = c has at most one solution
        assert_eq!(r.shift_fibers.largest, 1);
        // K0·K0 concatenates to a two-block tuple; longer ones are found by inclusion or not at all
        assert!(r.products.by_tuple > 0);
    }

    #[test]
    fn tau0_examples() {
        let n = Semigroup::nat_plus();
        let w = Window::new(&n, 100).unwrap();
        let k = gen_family_k(&n, &(0..40).collect::<Vec<_>>(), &[], 2, 10).unwrap();
        let o = TauZeroOracle::new(k, w.clone(), None).unwrap();
        assert_eq!(o.threshold, 10);
        let all: BTreeSet<usize> = w.elements().collect();
        let r = o.is_neighborhood(&all);
        assert!(r.neighborhood && r.deficits.iter().all(|&d| d == 0));
        assert!(!o.is_neighborhood(&BTreeSet::new()).neighborhood);
        let holes: BTreeSet<usize> = [3, 7, 11, 50].into_iter().collect();
        let v: BTreeSet<usize> = w.elements().filter(|x| !holes.contains(x)).collect();
        let r = o.is_neighborhood(&v);
        assert!(r.deficits.iter().all(|&d| d <= holes.len()));
        assert!(r.neighborhood);
    }
}
