use std::collections::BTreeSet;

use super::enumeration::{int_to_index, DiagonalPairing, WordCode};
use super::{Cardinality, CayleyTable, Semigroup, Structure, Tag};
use crate::error::{Error, Result};

fn tags(list: &[Tag]) -> BTreeSet<Tag> {
    list.iter().copied().collect()
}

fn table_tags(t: &CayleyTable, identity: Option<usize>) -> BTreeSet<Tag> {
    let n = t.order();
    let mut out = BTreeSet::new();
    if (0..n).all(|a| (0..n).all(|b| t.get(a, b) == t.get(b, a))) {
        out.insert(Tag::Commutative);
    }
    if (0..n).all(|a| t.get(a, a) == a) {
        out.insert(Tag::Band);
    }
    if let Some(e) = identity {
        let group = (0..n).all(|x| (0..n).any(|y| t.get(x, y) == e && t.get(y, x) == e));
        if group {
            out.insert(Tag::Group);
        }
    }
    out
}

impl Semigroup {
    pub fn nat_plus() -> Semigroup {
        Semigroup::build(
            "builtin:nat-plus".into(),
            Structure::NatPlus,
            Cardinality::Omega,
            Some(0),
            None,
            tags(&[Tag::Commutative, Tag::Cancellative]),
        )
    }

    pub fn int_plus() -> Semigroup {
        Semigroup::build(
            "builtin:int-plus".into(),
            Structure::IntPlus,
            Cardinality::Omega,
            Some(0),
            None,
            tags(&[Tag::Commutative, Tag::Group]),
        )
    }

    pub fn free_monoid(letters: usize) -> Result<Semigroup> {
        if letters == 0 {
            return Err(Error::Invalid("free monoid needs at least one letter".into()));
        }
        let mut t = tags(&[Tag::Cancellative]);
        if letters == 1 {
            t.insert(Tag::Commutative);
        }
        Ok(Semigroup::build(
            format!("builtin:free:{letters}"),
            Structure::FreeMonoid(WordCode::new(letters)),
            Cardinality::Omega,
            Some(0),
            None,
            t,
        ))
    }

    pub fn taimanov() -> Semigroup {
        Semigroup::build(
            "builtin:taimanov".into(),
            Structure::Taimanov,
            Cardinality::Omega,
            None,
            Some(0),
            tags(&[Tag::Commutative]),
        )
    }

    pub fn semilattice_omega() -> Semigroup {
        Semigroup::build(
            "builtin:semilattice-omega".into(),
            Structure::SemilatticeOmega,
            Cardinality::Omega,
            None,
            Some(0),
            tags(&[Tag::Commutative, Tag::Band]),
        )
    }

    /// `⟨x,i⟩*⟨y,j⟩ = ⟨x·y^i, ij⟩` over an abelian group `base`.
    pub fn semidirect_pm(base: &Semigroup) -> Result<Semigroup> {
        if !base.has_tag(Tag::Group) || !base.has_tag(Tag::Commutative) {
            return Err(Error::Invalid(format!("{} is not an abelian group", base.name())));
        }
        let pairing = DiagonalPairing::new(base.cardinality(), Cardinality::Finite(2));
        let e = base.identity().expect("groups carry an identity");
        let name = if base.name() == "builtin:int-plus" {
            "builtin:zpm".to_string()
        } else {
            format!("semidirect({})", base.name())
        };
        // the product is commutative iff every element is its own inverse
        let elementary = base.order().is_some_and(|n| (0..n).all(|x| base.inverse(x) == Some(x)));
        let mut t = tags(&[Tag::Group]);
        if elementary {
            t.insert(Tag::Commutative);
        }
        Ok(Semigroup::build(
            name,
            Structure::SemidirectPm(base.clone(), pairing),
            pairing.cardinality(),
            Some(pairing.encode(e, 0)),
            None,
            t,
        ))
    }

    /// ℤ⋊{±1}.
    pub fn zpm() -> Semigroup {
        Semigroup::semidirect_pm(&Semigroup::int_plus()).expect("ℤ is an abelian group")
    }

    /// Index of `⟨x, sign⟩` in ℤ⋊{±1}.
    pub fn zpm_index(&self, x: i64, sign: i64) -> usize {
        match self.structure() {
            Structure::SemidirectPm(_, p) => p.encode(int_to_index(x), usize::from(sign < 0)),
            _ => panic!("zpm_index on {}", self.name()),
        }
    }

    pub fn from_table(table: CayleyTable, identity: Option<usize>, zero: Option<usize>) -> Result<Semigroup> {
        Semigroup::from_table_named("table".into(), table, identity, zero)
    }

    pub fn from_table_named(
        name: String,
        table: CayleyTable,
        identity: Option<usize>,
        zero: Option<usize>,
    ) -> Result<Semigroup> {
        let n = table.order();
        let identity = match identity {
            Some(e) => {
                if e >= n || !(0..n).all(|x| table.get(e, x) == x && table.get(x, e) == x) {
                    return Err(Error::BadDistinguished {
                        what: "identity",
                        index: e,
                    });
                }
                Some(e)
            }
            None => table.find_identity(),
        };
        let zero = match zero {
            Some(z) => {
                if z >= n || !(0..n).all(|x| table.get(z, x) == z && table.get(x, z) == z) {
                    return Err(Error::BadDistinguished { what: "zero", index: z });
                }
                Some(z)
            }
            None => table.find_zero(),
        };
        let t = table_tags(&table, identity);
        Ok(Semigroup::build(
            name,
            Structure::Table(table),
            Cardinality::Finite(n),
            identity,
            zero,
            t,
        ))
    }

    pub fn cyclic(n: usize) -> Result<Semigroup> {
        if n == 0 {
            return Err(Error::EmptySemigroup);
        }
        let t = CayleyTable::from_fn(n, |a, b| (a + b) % n)?;
        Semigroup::from_table_named(format!("builtin:cyclic:{n}"), t, Some(0), None)
    }

    pub fn trivial() -> Semigroup {
        let t = CayleyTable::new(1, vec![0]).unwrap();
        Semigroup::from_table_named("builtin:trivial".into(), t, Some(0), Some(0)).unwrap()
    }

    /// S₃ with permutations of {0,1,2} in lexicographic order; index 0 is the identity.
    /// The product `p*q` is the composition `i ↦ p(q(i))`.
    pub fn symmetric3() -> Semigroup {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let t = CayleyTable::from_fn(6, |a, b| {
            let comp = [perms[a][perms[b][0]], perms[a][perms[b][1]], perms[a][perms[b][2]]];
            perms.iter().position(|p| *p == comp).unwrap()
        })
        .unwrap();
        Semigroup::from_table_named("builtin:s3".into(), t, Some(0), None).unwrap()
    }

    /// Finite analogue of the ω-semilattice on {0,…,n−1}: `x*y = x` if `x = y`, else 0.
    pub fn semilattice(n: usize) -> Result<Semigroup> {
        let t = CayleyTable::from_fn(n, |a, b| if a == b { a } else { 0 })?;
        Semigroup::from_table_named(format!("builtin:semilattice:{n}"), t, None, None)
    }

    /// Finite Taimanov-style table on {0,…,n−1}: `x*y = 1` if `x = y > 1`, else 0.
    pub fn taimanov_finite(n: usize) -> Result<Semigroup> {
        if n < 2 {
            return Err(Error::Invalid(
                "the Taimanov table needs at least the elements 0 and 1".into(),
            ));
        }
        let t = CayleyTable::from_fn(n, |a, b| usize::from(a == b && a > 1))?;
        Semigroup::from_table_named(format!("builtin:taimanov:{n}"), t, None, None)
    }

    /// `x*y = x`.
    pub fn left_zero(n: usize) -> Result<Semigroup> {
        let t = CayleyTable::from_fn(n, |a, _| a)?;
        Semigroup::from_table_named(format!("builtin:left-zero:{n}"), t, None, None)
    }

    pub fn product(s: &Semigroup, t: &Semigroup) -> Semigroup {
        let pairing = DiagonalPairing::new(s.cardinality(), t.cardinality());
        let both = |f: fn(&Semigroup) -> Option<usize>| match (f(s), f(t)) {
            (Some(a), Some(b)) => Some(pairing.encode(a, b)),
            _ => None,
        };
        let identity = both(Semigroup::identity);
        let zero = both(Semigroup::zero);
        let shared: BTreeSet<Tag> = s
            .tags()
            .intersection(t.tags())
            .copied()
            .filter(|t| *t != Tag::Monoid)
            .collect();
        Semigroup::build(
            format!("product({},{})", s.name(), t.name()),
            Structure::Product(s.clone(), t.clone(), pairing),
            pairing.cardinality(),
            identity,
            zero,
            shared,
        )
    }

    fn grown(c: Cardinality) -> Cardinality {
        match c {
            Cardinality::Finite(n) => Cardinality::Finite(n + 1),
            Cardinality::Omega => Cardinality::Omega,
        }
    }

    /// X¹: always adjoins a fresh identity at index 0.
    pub fn adjoin_identity(s: &Semigroup) -> Semigroup {
        let kept: BTreeSet<Tag> = s
            .tags()
            .iter()
            .copied()
            .filter(|t| matches!(t, Tag::Commutative | Tag::Band))
            .collect();
        Semigroup::build(
            format!("adjoin1({})", s.name()),
            Structure::WithIdentity(s.clone()),
            Semigroup::grown(s.cardinality()),
            Some(0),
            s.zero().map(|z| z + 1),
            kept,
        )
    }

    /// X⁰: always adjoins a fresh zero at index 0.
    pub fn adjoin_zero(s: &Semigroup) -> Semigroup {
        let kept: BTreeSet<Tag> = s
            .tags()
            .iter()
            .copied()
            .filter(|t| matches!(t, Tag::Commutative | Tag::Band))
            .collect();
        Semigroup::build(
            format!("adjoin0({})", s.name()),
            Structure::WithZero(s.clone()),
            Semigroup::grown(s.cardinality()),
            s.identity().map(|e| e + 1),
            Some(0),
            kept,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_nonabelian_group() {
        let s = Semigroup::symmetric3();
        assert!(s.has_tag(Tag::Group));
        assert!(!s.has_tag(Tag::Commutative));
        assert_eq!(s.identity(), Some(0));
    }

    #[test]
    fn adjoin_identity_to_c3() {
        let c = Semigroup::cyclic(3).unwrap();
        let m = Semigroup::adjoin_identity(&c);
        assert_eq!(m.order(), Some(4));
        assert_eq!(m.identity(), Some(0));
        // old identity survives as an idempotent that is not the identity
        assert_eq!(m.mul(1, 1), 1);
        assert_eq!(m.mul(1, 0), 1);
        assert_eq!(m.mul(2, 3), 1);
        let twice = Semigroup::adjoin_identity(&m);
        assert_eq!(twice.identity(), Some(0));
        assert_eq!(twice.mul(1, 3), 3);
        assert_ne!(twice.mul(0, 1), 0);
    }

    #[test]
    fn adjoin_zero_to_c2() {
        let s = Semigroup::adjoin_zero(&Semigroup::cyclic(2).unwrap());
        let expected = [0, 0, 0, 0, 1, 2, 0, 2, 1];
        assert_eq!(s.table().unwrap(), &expected);
        assert_eq!(s.zero(), Some(0));
        assert_eq!(s.identity(), Some(1));
    }

    #[test]
    fn klein_group() {
        let c2 = Semigroup::cyclic(2).unwrap();
        let k = Semigroup::product(&c2, &c2);
        assert_eq!(k.order(), Some(4));
        for x in 0..4 {
            assert_eq!(k.mul(x, x), k.identity().unwrap());
        }
        assert!(k.has_tag(Tag::Group) && k.has_tag(Tag::Commutative));
    }

    #[test]
    fn declared_identity_is_checked() {
        let t = CayleyTable::from_fn(3, |a, b| (a + b) % 3).unwrap();
        assert!(matches!(
            Semigroup::from_table(t, Some(1), None),
            Err(Error::BadDistinguished {
                what: "identity",
                index: 1
            })
        ));
    }
}
