//! All semigroups of order at most 4 up to isomorphism, plus a few larger groups.

use std::collections::BTreeSet;

use super::{CayleyTable, Semigroup};
use crate::error::{Error, Result};

/// Largest order the backtracking enumerator accepts.
pub const MAX_ENUMERATED_ORDER: usize = 4;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Least relabelling of the table in lexicographic cell order.
pub fn canonical_form(t: &CayleyTable, perms: &[Vec<usize>]) -> Vec<usize> {
    perms
        .iter()
        .map(|p| t.relabel(p).cells().to_vec())
        .min()
        .expect("at least one permutation")
}

const UNSET: usize = usize::MAX;

fn consistent(cells: &[usize], n: usize) -> bool {
    for x in 0..n {
        for y in 0..n {
            let xy = cells[x * n + y];
            if xy == UNSET {
                continue;
            }
            for z in 0..n {
                let yz = cells[y * n + z];
                if yz == UNSET {
                    continue;
                }
                let (l, r) = (cells[xy * n + z], cells[x * n + yz]);
                if l != UNSET && r != UNSET && l != r {
                    return false;
                }
            }
        }
    }
    true
}

fn fill(cells: &mut Vec<usize>, n: usize, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cells.len() {
        out.push(cells.clone());
        return;
    }
    for v in 0..n {
        cells[k] = v;
        if consistent(cells, n) {
            fill(cells, n, k + 1, out);
        }
    }
    cells[k] = UNSET;
}

/// Every associative table on {0,…,n−1} (labelled, not up to isomorphism).
pub fn labelled_semigroups(n: usize) -> Result<Vec<CayleyTable>> {
    if n == 0 {
        return Err(Error::EmptySemigroup);
    }
    if n > MAX_ENUMERATED_ORDER {
        return Err(Error::guard("catalog order", n as u64, MAX_ENUMERATED_ORDER as u64));
    }
    let mut out = Vec::new();
    fill(&mut vec![UNSET; n * n], n, 0, &mut out);
    Ok(out
        .into_iter()
        .map(|cells| CayleyTable::new(n, cells).expect("filled table"))
        .collect())
}

/// Representatives of the isomorphism classes of semigroups of order `n`,
/// each in canonical form, sorted.
pub fn semigroups_of_order(n: usize) -> Result<Vec<CayleyTable>> {
    let perms = permutations(n);
    let classes: BTreeSet<Vec<usize>> = labelled_semigroups(n)?
        .iter()
        .map(|t| canonical_form(t, &perms))
        .collect();
    Ok(classes
        .into_iter()
        .map(|cells| CayleyTable::new(n, cells).unwrap())
        .collect())
}

/// Semigroup of order `n` number `k` (0-based) in canonical order.
pub fn catalog_entry(n: usize, k: usize) -> Result<Semigroup> {
    let all = semigroups_of_order(n)?;
    let count = all.len();
    let t = all
        .into_iter()
        .nth(k)
        .ok_or_else(|| Error::Invalid(format!("catalog has {count} semigroups of order {n}, no entry {k}")))?;
    Semigroup::from_table_named(format!("builtin:catalog:{n}:{k}"), t, None, None)
}

/// The bundled catalog: all semigroups of order ≤ 4 up to isomorphism, then C₅, C₆ and S₃.
pub fn catalog() -> Vec<Semigroup> {
    let mut out = Vec::new();
    for n in 1..=MAX_ENUMERATED_ORDER {
        for (k, t) in semigroups_of_order(n).unwrap().into_iter().enumerate() {
            out.push(Semigroup::from_table_named(format!("builtin:catalog:{n}:{k}"), t, None, None).unwrap());
        }
    }
    out.push(Semigroup::cyclic(5).unwrap());
    out.push(Semigroup::cyclic(6).unwrap());
    out.push(Semigroup::symmetric3());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        // labelled: 1, 8, 113, 3492; up to isomorphism: 1, 5, 24, 188
        let labelled: Vec<usize> = (1..=4).map(|n| labelled_semigroups(n).unwrap().len()).collect();
        assert_eq!(labelled, vec![1, 8, 113, 3492]);
        let classes: Vec<usize> = (1..=4).map(|n| semigroups_of_order(n).unwrap().len()).collect();
        assert_eq!(classes, vec![1, 5, 24, 188]);
    }

    #[test]
    fn catalog_tables_are_associative() {
        for s in catalog() {
            let t = CayleyTable::new(s.order().unwrap(), s.table().unwrap().to_vec()).unwrap();
            assert_eq!(t.associativity_violation(), None, "{}", s.name());
        }
        assert_eq!(catalog().len(), 1 + 5 + 24 + 188 + 3);
    }
}
