use super::{require_exhaustive, verify_cover, Cover, Target};
use crate::error::{Error, Result};
use crate::polynomial::PolyTerm;
use crate::semigroup::congruence::check_homomorphism;
use crate::semigroup::{Semigroup, Window};
use crate::verdict::Verdict;

fn push_unique(pairs: &mut Vec<(PolyTerm, usize)>, pair: (PolyTerm, usize)) {
    if !pairs.contains(&pair) {
        pairs.push(pair);
    }
}

/// Pushes a cover of a finite `X` through a surjective homomorphism `q: X → Y`.
pub fn transport_quotient(c: &Cover, target: &Semigroup, q: &[usize]) -> Result<Cover> {
    require_exhaustive(c, "transport_quotient input")?;
    check_homomorphism(c.handle(), target, q)?;
    let mut pairs = Vec::new();
    for (f, b) in c.pairs() {
        push_unique(&mut pairs, (f.map_coeffs(target, |i| q[i])?, q[*b]));
    }
    let out = Cover::new(target, pairs)?;
    require_exhaustive(&out, "transported cover")?;
    Ok(out)
}

fn check_input(c: &Cover, window: usize, which: &str) -> Result<()> {
    let w = Window::clamped(c.handle(), window)?;
    match verify_cover(&w, &Target::All, c)? {
        Verdict::Verified(_) => Ok(()),
        Verdict::Counterexample(x) => Err(Error::Unverified(format!("{which} cover misses element {x}"))),
    }
}

/// Cover of `X × Y` from covers of the factors: every pair of pairs gives
/// `p_{f,g}(x,y) = (f(x)^{deg g}, g(y)^{deg f})` with constant
/// `(b_X^{deg g}, b_Y^{deg f})`.
///
/// Inputs are verified on their first `window` elements (all of a finite factor).
pub fn product_cover(product: &Semigroup, cx: &Cover, cy: &Cover, window: usize) -> Result<Cover> {
    let (x, y) = product
        .factors()
        .ok_or_else(|| Error::Invalid(format!("{} is not a product", product.name())))?;
    if cx.handle() != x || cy.handle() != y {
        return Err(Error::HandleMismatch);
    }
    check_input(cx, window, "first")?;
    check_input(cy, window, "second")?;
    let mut pairs = Vec::new();
    for (f, bx) in cx.pairs() {
        for (g, by) in cy.pairs() {
            let (df, dg) = (f.degree(), g.degree());
            let p = f.power(dg)?.pair_with(&g.power(df)?, product)?;
            let b = product.pair(x.pow(*bx, dg), y.pow(*by, df)).unwrap();
            push_unique(&mut pairs, (p, b));
        }
    }
    Cover::new(product, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polybounded::{parse_cover, trivial_finite_cover};
    use crate::semigroup::congruence::{quotient_by_congruence, Congruence};
    use crate::verdict::Scope;

    #[test]
    fn c4_to_c2() {
        let c4 = Semigroup::cyclic(4).unwrap();
        let cong = Congruence::from_classes(&c4, &[vec![0, 2], vec![1, 3]]).unwrap();
        let (c2, q) = quotient_by_congruence(&cong).unwrap();
        let out = transport_quotient(&trivial_finite_cover(&c4).unwrap(), &c2, &q).unwrap();
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let c4 = Semigroup::cyclic(4).unwrap();
        let c2 = Semigroup::cyclic(2).unwrap();
        let bad = [0, 0, 1, 1];
        assert!(matches!(
            transport_quotient(&trivial_finite_cover(&c4).unwrap(), &c2, &bad),
            Err(Error::NotHomomorphism(_))
        ));
    }

    #[test]
    fn klein_product() {
        let c2 = Semigroup::cyclic(2).unwrap();
        let k = Semigroup::product(&c2, &c2);
        let t = trivial_finite_cover(&c2).unwrap();
        let out = product_cover(&k, &t, &t, 100).unwrap();
        assert_eq!(out.len(), 4);
        assert!(out.pairs().iter().all(|(p, _)| p.degree() == 1));
        let w = Window::full(&k).unwrap();
        assert_eq!(
            verify_cover(&w, &Target::All, &out).unwrap(),
            Verdict::Verified(Scope::Exhaustive)
        );
    }

    #[test]
    fn zpm_times_c2() {
        let g = Semigroup::zpm();
        let c2 = Semigroup::cyclic(2).unwrap();
        let p = Semigroup::product(&g, &c2);
        let a = g.zpm_index(0, -1);
        let e = g.zpm_index(0, 1);
        let cg = parse_cover(&g, &format!("{a} . x . x . {a} . x . x = {e}\n")).unwrap();
        let out = product_cover(&p, &cg, &trivial_finite_cover(&c2).unwrap(), 400).unwrap();
        assert!(out.pairs().iter().all(|(f, _)| f.degree() == 4));
        let w = Window::new(&p, 400).unwrap();
        assert_eq!(
            verify_cover(&w, &Target::All, &out).unwrap(),
            Verdict::Verified(Scope::Window)
        );
    }
}
