//! Steenrod squares on the Borel ring.

use crate::borel_ring::{BorelElement, M2Element, MonomialD};
use crate::error::AlgebraError;
use crate::span::binomial_mod2;

/// `Sq¹` on the Borel ring.
///
/// `Sq¹ζ = ζ²`; on a diagonal class `z^k ⊗ z^k` it vanishes for even `k` and
/// is `ζ(z^k⊗z^k) + z^{k+1}⊗z^k + z^k⊗z^{k+1}` for odd `k`; on `N` it is the
/// Cartan formula in `H*((P^m)²)` with `Sq¹ z^k = k z^{k+1}`.
pub fn sq1_borel(x: &BorelElement) -> BorelElement {
    let m = x.ambient_m();
    let mut out = BorelElement::zero(m);
    for d in x.d_part() {
        let (i, k) = (d.zeta_exp, d.diag_exp);
        if i % 2 == 1 {
            out = &out + &BorelElement::from_d(m, MonomialD::new(i + 1, k));
        }
        if k % 2 == 1 {
            out = &out + &BorelElement::from_d(m, MonomialD::new(i + 1, k));
            if i == 0 {
                out = &out + &BorelElement::from_n(m, k, k + 1);
            }
        }
    }
    for n in x.n_part() {
        if n.lo % 2 == 1 {
            out = &out + &BorelElement::from_n(m, n.lo + 1, n.hi);
        }
        if n.hi % 2 == 1 {
            out = &out + &BorelElement::from_n(m, n.lo, n.hi + 1);
        }
    }
    out
}

/// `Sq^i` on an element of `N`, computed in `H*((P^m)²)` by the Cartan
/// formula. Experimental: only symmetric off-diagonal inputs are accepted.
pub fn sq_symmetric(i: usize, x: &BorelElement) -> Result<BorelElement, AlgebraError> {
    if !x.d_part().is_empty() {
        return Err(AlgebraError::NotSymmetricPart);
    }
    let m = x.ambient_m();
    let mut image = M2Element::zero(m);
    for n in x.n_part() {
        for (a, b) in [(n.lo, n.hi), (n.hi, n.lo)] {
            for k in 0..=i {
                if binomial_mod2(a, k) && binomial_mod2(b, i - k) {
                    image.toggle((a + k, b + i - k));
                }
            }
        }
    }
    let terms = image.to_symmetric().ok_or(AlgebraError::NotSymmetricPart)?;
    Ok(terms
        .into_iter()
        .fold(BorelElement::zero(m), |acc, n| &acc + &BorelElement::from_n(m, n.lo, n.hi)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sq1_on_generators() {
        let m = 3;
        let zeta = BorelElement::zeta(m);
        let eta = BorelElement::eta(m);
        let lambda = BorelElement::lambda(m);
        assert_eq!(sq1_borel(&zeta), zeta.pow(2));
        assert_eq!(sq1_borel(&eta), eta.pow(2));
        assert_eq!(sq1_borel(&lambda), &lambda * &(&zeta + &eta));
        assert!(sq1_borel(&BorelElement::one(m)).is_zero());
    }

    #[test]
    fn sq_symmetric_agrees_with_sq1() {
        for m in 1..6 {
            for b in 1..=m {
                for a in 0..b {
                    let x = BorelElement::from_n(m, a, b);
                    assert_eq!(sq_symmetric(1, &x).unwrap(), sq1_borel(&x));
                    assert_eq!(sq_symmetric(0, &x).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn sq_symmetric_rejects_diagonal() {
        assert_eq!(
            sq_symmetric(2, &BorelElement::lambda(3)),
            Err(AlgebraError::NotSymmetricPart)
        );
    }

    #[test]
    fn sq2_of_eta_squared() {
        // Sq²(1⊗z² + z²⊗1) = 1⊗z⁴ + z⁴⊗1
        let x = BorelElement::from_n(5, 0, 2);
        assert_eq!(sq_symmetric(2, &x).unwrap(), BorelElement::from_n(5, 0, 4));
    }
}
