//! Canonical enumerations used to turn countable carriers into index streams.
//!
//! ℕ is enumerated as 0,1,2,…; ℤ as 0,1,−1,2,−2,…; products walk the
//! anti-diagonals `a + b = s` for increasing `s`, `b` ascending inside a
//! diagonal, skipping pairs outside finite factors.

use super::Cardinality;

pub fn int_to_index(z: i64) -> usize {
    if z > 0 {
        (2 * z - 1) as usize
    } else {
        (-2 * z) as usize
    }
}

pub fn index_to_int(i: usize) -> i64 {
    let i = i as i64;
    if i % 2 == 1 {
        (i + 1) / 2
    } else {
        -(i / 2)
    }
}

/// Bijection between pairs of indices and a single index by anti-diagonals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagonalPairing {
    left: Cardinality,
    right: Cardinality,
}

fn cap(c: Cardinality) -> u128 {
    match c {
        Cardinality::Finite(n) => n as u128,
        Cardinality::Omega => u128::MAX,
    }
}

impl DiagonalPairing {
    pub fn new(left: Cardinality, right: Cardinality) -> Self {
        DiagonalPairing { left, right }
    }

    pub fn cardinality(&self) -> Cardinality {
        match (self.left, self.right) {
            (Cardinality::Finite(a), Cardinality::Finite(b)) => Cardinality::Finite(a * b),
            _ => Cardinality::Omega,
        }
    }

    /// Number of pairs with `a + b < s`.
    fn before(&self, s: u128) -> u128 {
        let l = cap(self.left);
        let r = cap(self.right);
        let bmax = r.min(s);
        // pairs with b <= s - l contribute a full run of l values
        let full = if l != u128::MAX && s >= l {
            bmax.min(s - l + 1)
        } else {
            0
        };
        let tail_lo = full;
        let tail = if bmax > tail_lo {
            let count = bmax - tail_lo;
            // sum over b in [tail_lo, bmax) of (s - b)
            count * s - (bmax * (bmax - 1) / 2 - if tail_lo > 0 { tail_lo * (tail_lo - 1) / 2 } else { 0 })
        } else {
            0
        };
        full.saturating_mul(if l == u128::MAX { 0 } else { l }) + tail
    }

    fn max_diagonal(&self) -> u128 {
        match (self.left, self.right) {
            (Cardinality::Finite(a), Cardinality::Finite(b)) => (a + b - 1) as u128,
            _ => u64::MAX as u128,
        }
    }

    pub fn encode(&self, a: usize, b: usize) -> usize {
        self.checked_encode(a, b).expect("pair index overflow")
    }

    pub fn checked_encode(&self, a: usize, b: usize) -> Option<usize> {
        let s = a as u128 + b as u128;
        if s > u64::MAX as u128 / 2 {
            return None;
        }
        let l = cap(self.left);
        let b_lo = if l != u128::MAX && s + 1 > l { s + 1 - l } else { 0 };
        usize::try_from(self.before(s) + (b as u128 - b_lo)).ok()
    }

    pub fn decode(&self, index: usize) -> (usize, usize) {
        let idx = index as u128;
        // largest s with before(s) <= idx
        let (mut lo, mut hi) = (0u128, self.max_diagonal());
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if self.before(mid) <= idx {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let s = lo;
        let l = cap(self.left);
        let b_lo = if l != u128::MAX && s + 1 > l { s + 1 - l } else { 0 };
        let b = b_lo + (idx - self.before(s));
        ((s - b) as usize, b as usize)
    }
}

/// Words over `k` letters in shortlex order via bijective base-`k` numerals.
/// Index 0 is the empty word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordCode {
    letters: usize,
}

impl WordCode {
    pub fn new(letters: usize) -> Self {
        assert!(letters >= 1);
        WordCode { letters }
    }

    pub fn len_of(&self, index: usize) -> usize {
        if self.letters == 1 {
            return index;
        }
        let mut n = index;
        let mut len = 0;
        while n > 0 {
            n = (n - 1) / self.letters;
            len += 1;
        }
        len
    }

    pub fn decode(&self, index: usize) -> Vec<usize> {
        if self.letters == 1 {
            return vec![0; index];
        }
        let mut out = Vec::new();
        let mut n = index;
        while n > 0 {
            let d = (n - 1) % self.letters;
            out.push(d);
            n = (n - 1) / self.letters;
        }
        out.reverse();
        out
    }

    pub fn encode(&self, word: &[usize]) -> usize {
        if self.letters == 1 {
            return word.len();
        }
        word.iter().fold(0usize, |acc, &d| {
            acc.checked_mul(self.letters)
                .and_then(|v| v.checked_add(d + 1))
                .expect("free monoid index overflow")
        })
    }

    pub fn concat(&self, u: usize, v: usize) -> usize {
        self.checked_concat(u, v).expect("free monoid index overflow")
    }

    pub fn checked_concat(&self, u: usize, v: usize) -> Option<usize> {
        if self.letters == 1 {
            return u.checked_add(v);
        }
        let shift = self.letters.checked_pow(self.len_of(v) as u32)?;
        u.checked_mul(shift)?.checked_add(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_zigzag() {
        let firsts: Vec<i64> = (0..7).map(index_to_int).collect();
        assert_eq!(firsts, vec![0, 1, -1, 2, -2, 3, -3]);
        for z in -50..50 {
            assert_eq!(index_to_int(int_to_index(z)), z);
        }
    }

    #[test]
    fn pairing_infinite_matches_walk() {
        let p = DiagonalPairing::new(Cardinality::Omega, Cardinality::Omega);
        let mut idx = 0;
        for s in 0..30usize {
            for b in 0..=s {
                assert_eq!(p.encode(s - b, b), idx);
                assert_eq!(p.decode(idx), (s - b, b));
                idx += 1;
            }
        }
    }

    #[test]
    fn pairing_with_finite_factors_is_a_bijection() {
        let cases = [
            (Cardinality::Omega, Cardinality::Finite(2)),
            (Cardinality::Finite(3), Cardinality::Omega),
            (Cardinality::Finite(4), Cardinality::Finite(3)),
            (Cardinality::Finite(1), Cardinality::Finite(5)),
        ];
        for (l, r) in cases {
            let p = DiagonalPairing::new(l, r);
            // independent walk over diagonals
            let mut walk = Vec::new();
            for s in 0..60usize {
                for b in 0..=s {
                    let a = s - b;
                    let ok_a = matches!(l, Cardinality::Omega) || a < cap(l) as usize;
                    let ok_b = matches!(r, Cardinality::Omega) || b < cap(r) as usize;
                    if ok_a && ok_b {
                        walk.push((a, b));
                    }
                }
            }
            let limit = match p.cardinality() {
                Cardinality::Finite(n) => n,
                Cardinality::Omega => 50,
            };
            for (i, &(a, b)) in walk.iter().take(limit).enumerate() {
                assert_eq!(p.encode(a, b), i, "{l:?} {r:?}");
                assert_eq!(p.decode(i), (a, b), "{l:?} {r:?}");
            }
        }
    }

    #[test]
    fn words_shortlex() {
        let w = WordCode::new(2);
        assert_eq!(w.decode(0), Vec::<usize>::new());
        assert_eq!(w.decode(1), vec![0]);
        assert_eq!(w.decode(2), vec![1]);
        assert_eq!(w.decode(3), vec![0, 0]);
        assert_eq!(w.decode(6), vec![1, 1]);
        for u in 0..40 {
            for v in 0..40 {
                let mut word = w.decode(u);
                word.extend(w.decode(v));
                assert_eq!(w.concat(u, v), w.encode(&word));
            }
        }
    }
}
