//! Congruences, ideals and quotient semigroups of finite handles.

use std::collections::{BTreeSet, HashSet, VecDeque};

use super::{CayleyTable, Semigroup, Window};
use crate::error::{Error, Result};

/// A congruence stored as a label per element: the least index of its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    handle: Semigroup,
    labels: Vec<usize>,
}

fn canonical(parent: &mut [usize]) -> Vec<usize> {
    let n = parent.len();
    let mut least = vec![usize::MAX; n];
    let roots: Vec<usize> = (0..n).map(|x| find(parent, x)).collect();
    for (x, &r) in roots.iter().enumerate() {
        least[r] = least[r].min(x);
    }
    roots.iter().map(|&r| least[r]).collect()
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) -> bool {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra == rb {
        return false;
    }
    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
    parent[hi] = lo;
    true
}

/// Smallest congruence containing the relation encoded by `parent`.
fn close(s: &Semigroup, parent: &mut [usize]) {
    let n = parent.len();
    loop {
        let mut changed = false;
        for x in 0..n {
            let r = find(parent, x);
            if r == x {
                continue;
            }
            for z in 0..n {
                changed |= union(parent, s.mul(x, z), s.mul(r, z));
                changed |= union(parent, s.mul(z, x), s.mul(z, r));
            }
        }
        if !changed {
            break;
        }
    }
}

impl Congruence {
    fn order_of(s: &Semigroup, what: &'static str) -> Result<usize> {
        s.order().ok_or(Error::RequiresFinite { what })
    }

    /// Validate a partition given as explicit classes.
    pub fn from_classes(s: &Semigroup, classes: &[Vec<usize>]) -> Result<Congruence> {
        let n = Congruence::order_of(s, "a congruence")?;
        let mut labels = vec![usize::MAX; n];
        for class in classes {
            let least = *class
                .iter()
                .min()
                .ok_or_else(|| Error::NotCongruence("empty class".into()))?;
            for &x in class {
                if x >= n {
                    return Err(Error::IndexOutOfRange { index: x, order: n });
                }
                if labels[x] != usize::MAX {
                    return Err(Error::NotCongruence(format!("element {x} appears in two classes")));
                }
                labels[x] = least;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::NotCongruence(format!("element {x} is in no class")));
        }
        Congruence::from_labels(s, labels)
    }

    /// Validate a partition given as a class label per element (labels are arbitrary).
    pub fn from_labels(s: &Semigroup, labels: Vec<usize>) -> Result<Congruence> {
        let n = Congruence::order_of(s, "a congruence")?;
        if labels.len() != n {
            return Err(Error::NotCongruence(format!(
                "{} labels for {n} elements",
                labels.len()
            )));
        }
        let mut least = std::collections::HashMap::new();
        for (x, &l) in labels.iter().enumerate() {
            least.entry(l).or_insert(x);
        }
        let labels: Vec<usize> = labels.iter().map(|l| least[l]).collect();
        for x in 0..n {
            for y in (x + 1)..n {
                if labels[x] != labels[y] {
                    continue;
                }
                for z in 0..n {
                    if labels[s.mul(x, z)] != labels[s.mul(y, z)] {
                        return Err(Error::NotCongruence(format!(
                            "{x}~{y} but {x}*{z} and {y}*{z} are in different classes"
                        )));
                    }
                    if labels[s.mul(z, x)] != labels[s.mul(z, y)] {
                        return Err(Error::NotCongruence(format!(
                            "{x}~{y} but {z}*{x} and {z}*{y} are in different classes"
                        )));
                    }
                }
            }
        }
        Ok(Congruence {
            handle: s.clone(),
            labels,
        })
    }

    pub fn identity(s: &Semigroup) -> Result<Congruence> {
        let n = Congruence::order_of(s, "a congruence")?;
        Ok(Congruence {
            handle: s.clone(),
            labels: (0..n).collect(),
        })
    }

    pub fn universal(s: &Semigroup) -> Result<Congruence> {
        let n = Congruence::order_of(s, "a congruence")?;
        Ok(Congruence {
            handle: s.clone(),
            labels: vec![0; n],
        })
    }

    /// Congruence generated by the given pairs.
    pub fn generated(s: &Semigroup, pairs: &[(usize, usize)]) -> Result<Congruence> {
        let n = Congruence::order_of(s, "a congruence")?;
        let mut parent: Vec<usize> = (0..n).collect();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange {
                    index: a.max(b),
                    order: n,
                });
            }
            union(&mut parent, a, b);
        }
        close(s, &mut parent);
        Ok(Congruence {
            handle: s.clone(),
            labels: canonical(&mut parent),
        })
    }

    pub fn handle(&self) -> &Semigroup {
        &self.handle
    }

    /// Least member of the class of each element.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let reps: BTreeSet<usize> = self.labels.iter().copied().collect();
        reps.iter()
            .map(|&r| (0..self.labels.len()).filter(|&x| self.labels[x] == r).collect())
            .collect()
    }

    pub fn class_count(&self) -> usize {
        self.labels.iter().enumerate().filter(|&(x, &l)| x == l).count()
    }
}

/// A two-sided ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSet {
    handle: Semigroup,
    members: BTreeSet<usize>,
}

impl IdealSet {
    /// Exhaustively checked ideal of a finite handle.
    pub fn new(s: &Semigroup, members: impl IntoIterator<Item = usize>) -> Result<IdealSet> {
        let w = Window::full(s)?;
        IdealSet::checked_on(&w, members)
    }

    /// Ideal law checked for every window element `y`; exhaustive when the window is full.
    pub fn checked_on(w: &Window, members: impl IntoIterator<Item = usize>) -> Result<IdealSet> {
        let s = w.handle();
        let members: BTreeSet<usize> = members.into_iter().collect();
        if members.is_empty() {
            return Err(Error::NotIdeal("empty set".into()));
        }
        for &x in &members {
            if !s.contains_index(x) {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    order: s.order().unwrap_or(usize::MAX),
                });
            }
            for y in w.elements() {
                for p in [s.mul(x, y), s.mul(y, x)] {
                    if !members.contains(&p) {
                        return Err(Error::NotIdeal(format!("{x} times {y} gives {p}, outside the set")));
                    }
                }
            }
        }
        Ok(IdealSet {
            handle: s.clone(),
            members,
        })
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    /// The Rees congruence `(I×I) ∪ Δ`.
    pub fn rees_congruence(&self) -> Result<Congruence> {
        let n = self.handle.order().ok_or(Error::RequiresFinite {
            what: "a Rees quotient",
        })?;
        let least = *self.members.iter().next().unwrap();
        let labels = (0..n)
            .map(|x| if self.members.contains(&x) { least } else { x })
            .collect();
        Ok(Congruence {
            handle: self.handle.clone(),
            labels,
        })
    }
}

/// Checks `q(xy) = q(x)q(y)` for all pairs and surjectivity.
pub fn check_homomorphism(from: &Semigroup, to: &Semigroup, q: &[usize]) -> Result<()> {
    let n = from.order().ok_or(Error::RequiresFinite {
        what: "a homomorphism check",
    })?;
    let m = to.order().ok_or(Error::RequiresFinite {
        what: "a homomorphism check",
    })?;
    if q.len() != n {
        return Err(Error::NotHomomorphism(format!(
            "map has {} entries for {n} elements",
            q.len()
        )));
    }
    if let Some(&bad) = q.iter().find(|&&y| y >= m) {
        return Err(Error::NotHomomorphism(format!("image {bad} outside the codomain")));
    }
    for x in 0..n {
        for y in 0..n {
            if q[from.mul(x, y)] != to.mul(q[x], q[y]) {
                return Err(Error::NotHomomorphism(format!("q({x}*{y}) != q({x})*q({y})")));
            }
        }
    }
    let image: HashSet<usize> = q.iter().copied().collect();
    if image.len() != m {
        let missing = (0..m).find(|y| !image.contains(y)).unwrap();
        return Err(Error::NotHomomorphism(format!("{missing} is not in the image")));
    }
    Ok(())
}

/// Quotient table with classes numbered by their least member, plus the quotient map.
pub fn quotient_by_congruence(c: &Congruence) -> Result<(Semigroup, Vec<usize>)> {
    let s = &c.handle;
    let reps: Vec<usize> = c
        .labels
        .iter()
        .enumerate()
        .filter(|&(x, &l)| x == l)
        .map(|(x, _)| x)
        .collect();
    let mut number = vec![usize::MAX; c.labels.len()];
    for (i, &r) in reps.iter().enumerate() {
        number[r] = i;
    }
    let q: Vec<usize> = c.labels.iter().map(|&l| number[l]).collect();
    let k = reps.len();
    let table = CayleyTable::from_fn(k, |i, j| q[s.mul(reps[i], reps[j])])?;
    let quotient = Semigroup::from_table_named(format!("quotient({})", s.name()), table, None, None)?;
    check_homomorphism(s, &quotient, &q)?;
    Ok((quotient, q))
}

pub fn quotient_by_ideal(i: &IdealSet) -> Result<(Semigroup, Vec<usize>)> {
    quotient_by_congruence(&i.rees_congruence()?)
}

/// Every congruence of a finite handle exactly once, in breadth-first join order
/// starting from the identity congruence.
pub fn enumerate_congruences(s: &Semigroup, guard: usize) -> Result<Vec<Congruence>> {
    let n = s.order().ok_or(Error::RequiresFinite {
        what: "congruence enumeration",
    })?;
    if n > guard {
        return Err(Error::guard("semigroup order", n as u64, guard as u64));
    }
    let principal: Vec<Vec<usize>> = (0..n)
        .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
        .map(|(a, b)| Congruence::generated(s, &[(a, b)]).unwrap().labels)
        .collect();
    let start: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        for p in &principal {
            if (0..n).all(|x| cur[x] == cur[p[x]]) {
                continue;
            }
            let mut parent = cur.clone();
            for (x, &y) in p.iter().enumerate() {
                union(&mut parent, x, y);
            }
            close(s, &mut parent);
            let joined = canonical(&mut parent);
            if seen.insert(joined.clone()) {
                order.push(joined.clone());
                queue.push_back(joined);
            }
        }
    }
    Ok(order
        .into_iter()
        .map(|labels| Congruence {
            handle: s.clone(),
            labels,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_for_small_cyclic_groups() {
        let count = |n| enumerate_congruences(&Semigroup::cyclic(n).unwrap(), 10).unwrap().len();
        assert_eq!(count(1), 1);
        assert_eq!(count(2), 2);
        assert_eq!(count(4), 3);
        assert_eq!(count(6), 4);
    }

    #[test]
    fn c4_mod_2() {
        let c4 = Semigroup::cyclic(4).unwrap();
        let c = Congruence::from_classes(&c4, &[vec![0, 2], vec![1, 3]]).unwrap();
        let (q, map) = quotient_by_congruence(&c).unwrap();
        assert_eq!(q.order(), Some(2));
        assert_eq!(map, vec![0, 1, 0, 1]);
        assert_eq!(q.table().unwrap(), &[0, 1, 1, 0]);
        assert!(Congruence::from_classes(&c4, &[vec![0, 1], vec![2, 3]]).is_err());
    }

    #[test]
    fn trivial_and_total_quotients() {
        let s3 = Semigroup::symmetric3();
        let (q, _) = quotient_by_congruence(&Congruence::identity(&s3).unwrap()).unwrap();
        assert_eq!(q.table().unwrap(), s3.table().unwrap());
        let (q, _) = quotient_by_congruence(&Congruence::universal(&s3).unwrap()).unwrap();
        assert_eq!(q.order(), Some(1));
    }

    #[test]
    fn taimanov_rees_quotient_is_null() {
        let t = Semigroup::taimanov_finite(4).unwrap();
        let j = IdealSet::new(&t, [0, 1]).unwrap();
        let (q, map) = quotient_by_ideal(&j).unwrap();
        assert_eq!(q.order(), Some(3));
        let z = map[0];
        assert!(q.table().unwrap().iter().all(|&v| v == z));
        assert!(IdealSet::new(&t, [2]).is_err());
    }

    #[test]
    fn guard_is_enforced() {
        let c = Semigroup::cyclic(12).unwrap();
        assert!(matches!(
            enumerate_congruences(&c, 10),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
