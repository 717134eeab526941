//! Bounded search for the least cover.
//!
//! Pairs `(f, b)` are ordered by degree, then coefficients, then constant;
//! covers by total degree, then by their sorted pair sequence.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use super::{Cover, Target};
use crate::error::{Error, Result};
use crate::polynomial::{Coeff, PolyTerm};
use crate::semigroup::{Semigroup, Window};
use crate::verdict::SearchOutcome;

pub const DEFAULT_CANDIDATE_GUARD: u128 = 500_000;
pub const DEFAULT_NODE_GUARD: u64 = 20_000_000;

#[derive(Debug, Clone)]
pub struct SearchBounds {
    pub degree: usize,
    pub pool: Vec<usize>,
    pub size: usize,
    /// Limit on the nominal number of candidate polynomials.
    pub candidate_guard: u128,
    /// Limit on set-cover search nodes.
    pub node_guard: u64,
}

impl SearchBounds {
    pub fn new(degree: usize, pool: Vec<usize>, size: usize) -> SearchBounds {
        SearchBounds {
            degree,
            pool,
            size,
            candidate_guard: DEFAULT_CANDIDATE_GUARD,
            node_guard: DEFAULT_NODE_GUARD,
        }
    }

    /// Σ_{k=1..d} (|pool|+1)^{k+1}
    pub fn nominal_candidates(&self) -> u128 {
        let slots = self.pool.len() as u128 + 1;
        (1..=self.degree as u32)
            .map(|k| slots.saturating_pow(k + 1))
            .fold(0u128, |a, b| a.saturating_add(b))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub polynomials: u128,
    pub functions: usize,
    pub pairs: usize,
    pub nodes: u64,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub outcome: SearchOutcome<Cover>,
    pub stats: SearchStats,
}

const EMPTY: usize = usize::MAX;
const OVER: usize = usize::MAX - 1;

struct Candidate {
    bits: FixedBitSet,
    degree: usize,
    func: usize,
    constant: usize,
}

fn inter_count(a: &FixedBitSet, b: &FixedBitSet) -> usize {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

struct Enumerator<'a> {
    s: &'a Semigroup,
    points: &'a [usize],
    slots: Vec<Coeff>,
    seen_funcs: HashSet<Vec<usize>>,
    funcs: Vec<(Vec<Coeff>, Vec<usize>)>,
}

impl Enumerator<'_> {
    fn times(&self, v: usize, y: usize) -> usize {
        match v {
            EMPTY => y,
            OVER => OVER,
            _ => self.s.checked_mul(v, y).unwrap_or(OVER),
        }
    }

    fn run(&mut self, degree: usize) {
        let mut seen: Vec<HashSet<Vec<usize>>> = vec![HashSet::new(); degree];
        let start = vec![EMPTY; self.points.len()];
        let mut coeffs = Vec::with_capacity(degree + 1);
        self.dfs(degree, 0, &start, &mut coeffs, &mut seen);
    }

    fn dfs(
        &mut self,
        degree: usize,
        depth: usize,
        prev: &[usize],
        coeffs: &mut Vec<Coeff>,
        seen: &mut [HashSet<Vec<usize>>],
    ) {
        let base: Vec<usize> = if depth == 0 {
            prev.to_vec()
        } else {
            prev.iter().zip(self.points).map(|(&v, &x)| self.times(v, x)).collect()
        };
        for si in 0..self.slots.len() {
            let c = self.slots[si].clone();
            let vals: Vec<usize> = match c {
                Coeff::Elem(e) => base.iter().map(|&v| self.times(v, e)).collect(),
                _ => base.clone(),
            };
            coeffs.push(c);
            if depth == degree {
                if self.seen_funcs.insert(vals.clone()) {
                    self.funcs.push((coeffs.clone(), vals));
                }
            } else if seen[depth].insert(vals.clone()) {
                self.dfs(degree, depth + 1, &vals, coeffs, seen);
            }
            coeffs.pop();
        }
    }
}

struct CoverSearch<'a> {
    cands: &'a [Candidate],
    by_elem: Vec<Vec<usize>>,
    size: usize,
    nodes: u64,
    node_guard: u64,
}

impl CoverSearch<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_guard {
            return Err(Error::guard("search nodes", self.nodes, self.node_guard));
        }
        Ok(())
    }

    fn max_gain(&self, from: usize, uncovered: &FixedBitSet) -> usize {
        self.cands[from..]
            .iter()
            .map(|c| inter_count(&c.bits, uncovered))
            .max()
            .unwrap_or(0)
    }

    /// Any cover with at most `r` more candidates, using only `usable` ones.
    fn exists(&mut self, usable: &[usize], uncovered: &FixedBitSet, r: usize) -> Result<bool> {
        self.tick()?;
        let Some(e) = uncovered.ones().next() else {
            return Ok(true);
        };
        if r == 0 {
            return Ok(false);
        }
        let gains: Vec<(usize, usize)> = usable
            .iter()
            .map(|&i| (inter_count(&self.cands[i].bits, uncovered), i))
            .collect();
        let best = gains.iter().map(|g| g.0).max().unwrap_or(0);
        if best * r < uncovered.count_ones(..) {
            return Ok(false);
        }
        let mut branch: Vec<(usize, usize)> = gains
            .into_iter()
            .filter(|&(_, i)| self.cands[i].bits.contains(e))
            .collect();
        branch.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, i) in branch {
            let mut rest = uncovered.clone();
            rest.difference_with(&self.cands[i].bits);
            if self.exists(usable, &rest, r - 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Least sorted candidate sequence with total degree at most `budget`.
    fn least(&mut self, next: usize, uncovered: &FixedBitSet, chosen: &mut Vec<usize>, budget: usize) -> Result<bool> {
        self.tick()?;
        let Some(e) = uncovered.ones().next() else {
            return Ok(true);
        };
        let r = (self.size - chosen.len()).min(budget);
        if r == 0 {
            return Ok(false);
        }
        let Some(&last) = self.by_elem[e].last() else {
            return Ok(false);
        };
        if last < next {
            return Ok(false);
        }
        if self.max_gain(next, uncovered) * r < uncovered.count_ones(..) {
            return Ok(false);
        }
        for i in next..=last {
            let c = &self.cands[i];
            if c.degree > budget || c.bits.is_disjoint(uncovered) {
                continue;
            }
            let mut rest = uncovered.clone();
            rest.difference_with(&c.bits);
            let deg = c.degree;
            chosen.push(i);
            if self.least(i + 1, &rest, chosen, budget - deg)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}

/// Drop candidates whose set is contained in another's; only used to decide existence.
fn undominated(cands: &[Candidate]) -> Vec<usize> {
    const LIMIT: usize = 4000;
    if cands.len() > LIMIT {
        return (0..cands.len()).collect();
    }
    let mut order: Vec<usize> = (0..cands.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(cands[i].bits.count_ones(..)));
    let mut kept: Vec<usize> = Vec::new();
    for i in order {
        if !kept.iter().any(|&k| cands[i].bits.is_subset(&cands[k].bits)) {
            kept.push(i);
        }
    }
    kept.sort_unstable();
    kept
}

pub fn search_cover(w: &Window, target: &Target, bounds: &SearchBounds) -> Result<SearchResult> {
    search_cover_avoiding(w, target, None, bounds)
}

/// Least cover of `target ∩ E_N` whose pairs all miss `avoid`.
pub(crate) fn search_cover_avoiding(
    w: &Window,
    target: &Target,
    avoid: Option<usize>,
    bounds: &SearchBounds,
) -> Result<SearchResult> {
    let s = w.handle();
    if bounds.degree == 0 {
        return Err(Error::ZeroDegree);
    }
    if bounds.size == 0 {
        return Err(Error::Invalid("size bound must be at least 1".into()));
    }
    let mut pool = bounds.pool.clone();
    pool.sort_unstable();
    pool.dedup();
    for &p in &pool {
        s.element(p)?;
    }
    let nominal = bounds.nominal_candidates();
    if nominal > bounds.candidate_guard {
        return Err(Error::guard("candidate polynomials", nominal, bounds.candidate_guard));
    }
    let universe: Vec<usize> = target.in_window(w).into_iter().filter(|&x| Some(x) != avoid).collect();
    let mut points = universe.clone();
    if let Some(a) = avoid {
        points.push(a);
    }
    let m = universe.len();
    let mut stats = SearchStats {
        polynomials: nominal,
        ..SearchStats::default()
    };
    if m == 0 {
        return Err(Error::Invalid("nothing to cover in this window".into()));
    }

    let mut en = Enumerator {
        s,
        points: &points,
        slots: std::iter::once(Coeff::One)
            .chain(pool.iter().map(|&p| Coeff::Elem(p)))
            .collect(),
        seen_funcs: HashSet::new(),
        funcs: Vec::new(),
    };
    for d in 1..=bounds.degree {
        en.run(d);
    }
    let funcs = en.funcs;
    stats.functions = funcs.len();

    let mut cands: Vec<Candidate> = Vec::new();
    let mut seen_sets: HashSet<FixedBitSet> = HashSet::new();
    for (fi, (coeffs, vals)) in funcs.iter().enumerate() {
        let mut groups: HashMap<usize, FixedBitSet> = HashMap::new();
        for (pos, &v) in vals[..m].iter().enumerate() {
            if v == OVER || v == EMPTY {
                continue;
            }
            groups
                .entry(v)
                .or_insert_with(|| FixedBitSet::with_capacity(m))
                .insert(pos);
        }
        let mut constants: Vec<usize> = groups.keys().copied().collect();
        constants.sort_unstable();
        for b in constants {
            if avoid.is_some() && vals[m] == b {
                continue;
            }
            let bits = groups.remove(&b).unwrap();
            if seen_sets.insert(bits.clone()) {
                cands.push(Candidate {
                    bits,
                    degree: coeffs.len() - 1,
                    func: fi,
                    constant: b,
                });
            }
        }
    }
    stats.pairs = cands.len();

    let mut by_elem: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, c) in cands.iter().enumerate() {
        for pos in c.bits.ones() {
            by_elem[pos].push(i);
        }
    }
    let mut all = FixedBitSet::with_capacity(m);
    all.insert_range(..);
    let mut search = CoverSearch {
        cands: &cands,
        by_elem,
        size: bounds.size,
        nodes: 0,
        node_guard: bounds.node_guard,
    };
    let usable = undominated(&cands);
    if !search.exists(&usable, &all, bounds.size)? {
        stats.nodes = search.nodes;
        return Ok(SearchResult {
            outcome: SearchOutcome::NoneWithinBounds,
            stats,
        });
    }
    for budget in 1..=bounds.size * bounds.degree {
        let mut chosen = Vec::new();
        if search.least(0, &all, &mut chosen, budget)? {
            stats.nodes = search.nodes;
            let pairs = chosen
                .iter()
                .map(|&i| {
                    let c = &cands[i];
                    (PolyTerm::new(s, funcs[c.func].0.clone()).unwrap(), c.constant)
                })
                .collect();
            return Ok(SearchResult {
                outcome: SearchOutcome::Found(Cover::new(s, pairs)?),
                stats,
            });
        }
    }
    unreachable!("a cover within the size bound exists, so some degree budget admits it")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polybounded::verify_cover;
    use crate::polynomial::parse_poly;

    #[test]
    fn c2_trivial() {
        let c2 = Semigroup::cyclic(2).unwrap();
        let w = Window::full(&c2).unwrap();
        let r = search_cover(&w, &Target::All, &SearchBounds::new(1, vec![], 2)).unwrap();
        let cover = r.outcome.found().unwrap();
        let x = PolyTerm::identity(&c2);
        assert_eq!(cover.pairs(), &[(x.clone(), 0), (x, 1)]);
    }

    #[test]
    fn naturals_have_no_small_cover() {
        let n = Semigroup::nat_plus();
        let w = Window::new(&n, 200).unwrap();
        let r = search_cover(&w, &Target::All, &SearchBounds::new(3, (0..=10).collect(), 5)).unwrap();
        assert_eq!(r.outcome, SearchOutcome::NoneWithinBounds);
    }

    #[test]
    fn finds_a_one_pair_cover_on_zpm() {
        let g = Semigroup::zpm();
        let a = g.zpm_index(0, -1);
        let e = g.zpm_index(0, 1);
        let w = Window::new(&g, 200).unwrap();
        let r = search_cover(&w, &Target::All, &SearchBounds::new(4, vec![a, e], 1)).unwrap();
        let cover = r.outcome.found().unwrap();
        assert_eq!(cover.len(), 1);
        assert!(verify_cover(&w, &Target::All, &cover).unwrap().is_verified());
        let example = parse_poly(&g, &format!("{a} . x . x . {a} . x . x")).unwrap();
        assert!(cover.pairs()[0].0 <= example);
    }

    #[test]
    fn guard_trips() {
        let n = Semigroup::nat_plus();
        let w = Window::new(&n, 20).unwrap();
        let mut b = SearchBounds::new(6, (0..30).collect(), 2);
        b.candidate_guard = 1000;
        assert!(matches!(
            search_cover(&w, &Target::All, &b),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn least_cover_prefers_lower_degree() {
        // on C3 the pair list must start with degree-1 pairs
        let c3 = Semigroup::cyclic(3).unwrap();
        let w = Window::full(&c3).unwrap();
        let r = search_cover(&w, &Target::All, &SearchBounds::new(2, vec![0, 1, 2], 3)).unwrap();
        let cover = r.outcome.found().unwrap();
        assert_eq!(cover.total_degree(), 3);
        assert!(verify_cover(&w, &Target::All, &cover).unwrap().is_verified());
    }
}
