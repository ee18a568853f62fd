//! The comparison maps around the Borel ring: `Δ*`, `φ`, `Δ_!`, `r₁`, `r₂`.

use std::fmt;

use super::{BorelElement, MonomialN};
use crate::span::{binomial_mod2, F2Span};

/// An element of `H*(P^∞ × P^m; F₂)`: a sum of `z^p ⊗ z^q` with `q ≤ m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProdInfinityElement {
    m: usize,
    terms: F2Span<(usize, usize)>,
}

impl ProdInfinityElement {
    pub fn zero(m: usize) -> Self {
        Self {
            m,
            terms: F2Span::new(),
        }
    }

    /// Sum of the given `z^p ⊗ z^q`; terms with `q > m` vanish.
    pub fn from_terms(m: usize, terms: &[(usize, usize)]) -> Self {
        let mut x = Self::zero(m);
        for &t in terms {
            x.toggle(t);
        }
        x
    }

    pub fn ambient_m(&self) -> usize {
        self.m
    }

    pub fn toggle(&mut self, (p, q): (usize, usize)) {
        if q <= self.m {
            self.terms.toggle((p, q));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.terms.iter().copied()
    }

    pub fn contains(&self, term: (usize, usize)) -> bool {
        self.terms.contains(&term)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "ambient mismatch");
        let mut out = self.clone();
        out.terms.add_assign(&other.terms);
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "ambient mismatch");
        let mut out = Self::zero(self.m);
        for (p, q) in self.terms() {
            for (r, s) in other.terms() {
                out.toggle((p + r, q + s));
            }
        }
        out
    }
}

impl fmt::Display for ProdInfinityElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tensor_sum(f, self.terms())
    }
}

/// An element of `H*(P^m × P^m; F₂)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct M2Element {
    m: usize,
    terms: F2Span<(usize, usize)>,
}

impl M2Element {
    pub fn zero(m: usize) -> Self {
        Self {
            m,
            terms: F2Span::new(),
        }
    }

    pub fn from_terms(m: usize, terms: &[(usize, usize)]) -> Self {
        let mut x = Self::zero(m);
        for &t in terms {
            x.toggle(t);
        }
        x
    }

    pub fn ambient_m(&self) -> usize {
        self.m
    }

    pub fn toggle(&mut self, (a, b): (usize, usize)) {
        if a <= self.m && b <= self.m {
            self.terms.toggle((a, b));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.terms.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "ambient mismatch");
        let mut out = self.clone();
        out.terms.add_assign(&other.terms);
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "ambient mismatch");
        let mut out = Self::zero(self.m);
        for (a, b) in self.terms() {
            for (c, d) in other.terms() {
                out.toggle((a + c, b + d));
            }
        }
        out
    }

    /// The factor swap `x ⊗ y ↦ y ⊗ x`.
    pub fn swap(&self) -> Self {
        Self::from_terms(self.m, &self.terms().map(|(a, b)| (b, a)).collect::<Vec<_>>())
    }

    /// Rewrites a swap-invariant element without diagonal terms as a sum of
    /// symmetric basis classes; `None` if the element is not of that form.
    pub fn to_symmetric(&self) -> Option<Vec<MonomialN>> {
        if self.swap() != *self {
            return None;
        }
        let mut out = Vec::new();
        for (a, b) in self.terms() {
            if a == b {
                return None;
            }
            if a < b {
                out.push(MonomialN { lo: a, hi: b });
            }
        }
        Some(out)
    }
}

impl fmt::Display for M2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tensor_sum(f, self.terms())
    }
}

/// An element of `H*(P^m; F₂) = F₂[z]/z^{m+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedPoly {
    m: usize,
    terms: F2Span<usize>,
}

impl TruncatedPoly {
    pub fn zero(m: usize) -> Self {
        Self {
            m,
            terms: F2Span::new(),
        }
    }

    pub fn from_exponents(m: usize, exps: &[usize]) -> Self {
        let mut x = Self::zero(m);
        for &e in exps {
            x.toggle(e);
        }
        x
    }

    pub fn toggle(&mut self, e: usize) {
        if e <= self.m {
            self.terms.toggle(e);
        }
    }

    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

fn fmt_tensor_sum(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (usize, usize)>) -> fmt::Result {
    let parts: Vec<String> = terms.map(|(p, q)| format!("z^{p}⊗z^{q}")).collect();
    if parts.is_empty() {
        write!(f, "0")
    } else {
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Δ*`: kills `N`, and sends `ζ^i (z^k ⊗ z^k)` to
/// `(z^i ⊗ z^k)(1 ⊗ z + z ⊗ 1)^k`.
pub fn delta_star(x: &BorelElement) -> ProdInfinityElement {
    let m = x.ambient_m();
    let mut out = ProdInfinityElement::zero(m);
    for d in x.d_part() {
        let (i, k) = (d.zeta_exp, d.diag_exp);
        for l in (0..=k).filter(|&l| binomial_mod2(k, l)) {
            out.toggle((i + k - l, k + l));
        }
    }
    out
}

/// The degree-`m` class `Σ_i C(m+1, i) z^{m−i} ⊗ z^i`, i.e. the sum of
/// `z^{m−i} ⊗ w_i` over the Stiefel-Whitney classes of `P^m`.
pub fn phi_multiplier(m: usize) -> ProdInfinityElement {
    let terms: Vec<(usize, usize)> = (0..=m)
        .filter(|&i| binomial_mod2(m + 1, i))
        .map(|i| (m - i, i))
        .collect();
    ProdInfinityElement::from_terms(m, &terms)
}

/// `φ`: multiplication by [`phi_multiplier`].
pub fn phi(b: &ProdInfinityElement) -> ProdInfinityElement {
    b.mul(&phi_multiplier(b.ambient_m()))
}

/// `δ = Σ_{i=0}^{m} z^i ⊗ z^{m−i}`.
pub fn diagonal_class(m: usize) -> M2Element {
    M2Element::from_terms(m, &(0..=m).map(|i| (i, m - i)).collect::<Vec<_>>())
}

/// `Δ_!(x) = (1 ⊗ x) · δ`.
pub fn delta_shriek(x: &TruncatedPoly) -> M2Element {
    let lifted = M2Element::from_terms(x.m, &x.exponents().map(|q| (0, q)).collect::<Vec<_>>());
    lifted.mul(&diagonal_class(x.m))
}

/// Restriction to the fiber `P^m`: `z^p ⊗ z^q ↦ z^q` when `p = 0`, else 0.
pub fn r1(b: &ProdInfinityElement) -> TruncatedPoly {
    let exps: Vec<usize> = b.terms().filter(|&(p, _)| p == 0).map(|(_, q)| q).collect();
    TruncatedPoly::from_exponents(b.ambient_m(), &exps)
}

/// Restriction to the fiber `(P^m)²`: identity on `D` and `N`, zero on every
/// positive power of `ζ`.
pub fn r2(x: &BorelElement) -> M2Element {
    let m = x.ambient_m();
    let mut out = M2Element::zero(m);
    for d in x.d_part().iter().filter(|d| d.zeta_exp == 0) {
        out.toggle((d.diag_exp, d.diag_exp));
    }
    for n in x.n_part() {
        out.toggle((n.lo, n.hi));
        out.toggle((n.hi, n.lo));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::MonomialD;
    use super::*;

    #[test]
    fn delta_star_of_lambda() {
        let x = BorelElement::lambda(3);
        assert_eq!(delta_star(&x), ProdInfinityElement::from_terms(3, &[(0, 2), (1, 1)]));
    }

    #[test]
    fn delta_star_kills_n() {
        for m in 1..5 {
            for b in 1..=m {
                for a in 0..b {
                    assert!(delta_star(&BorelElement::from_n(m, a, b)).is_zero());
                }
            }
        }
    }

    #[test]
    fn delta_star_top_diagonal_m3() {
        // (1⊗z³)(1⊗z + z⊗1)³ with 1⊗z^q = 0 for q > 3: only z³⊗z³ survives.
        let x = BorelElement::from_d(3, MonomialD::new(0, 3));
        assert_eq!(delta_star(&x), ProdInfinityElement::from_terms(3, &[(3, 3)]));
    }

    #[test]
    fn phi_multiplier_m2() {
        let expected = ProdInfinityElement::from_terms(2, &[(2, 0), (1, 1), (0, 2)]);
        assert_eq!(phi_multiplier(2), expected);
        assert_eq!(phi(&ProdInfinityElement::from_terms(2, &[(0, 0)])), expected);
        assert!(phi(&ProdInfinityElement::zero(2)).is_zero());
    }

    #[test]
    fn diagonal_classes() {
        assert_eq!(
            diagonal_class(3),
            M2Element::from_terms(3, &[(3, 0), (2, 1), (1, 2), (0, 3)])
        );
        assert_eq!(diagonal_class(1), M2Element::from_terms(1, &[(1, 0), (0, 1)]));
    }

    #[test]
    fn diagonal_class_pairs_dual_bases() {
        // Coefficient of z^i ⊗ z^{m-i} is what pairs z^i against its dual z^{m-i}.
        for m in 1..8 {
            let delta = diagonal_class(m);
            for i in 0..=m {
                let paired: Vec<_> = delta.terms().filter(|&(a, _)| a == i).collect();
                assert_eq!(paired, vec![(i, m - i)]);
                assert_eq!(i + (m - i), m);
            }
        }
    }

    #[test]
    fn delta_shriek_examples() {
        assert_eq!(
            delta_shriek(&TruncatedPoly::from_exponents(2, &[0])),
            M2Element::from_terms(2, &[(2, 0), (1, 1), (0, 2)])
        );
        assert_eq!(
            delta_shriek(&TruncatedPoly::from_exponents(2, &[2])),
            M2Element::from_terms(2, &[(2, 2)])
        );
        assert!(delta_shriek(&TruncatedPoly::zero(2)).is_zero());
    }

    #[test]
    fn delta_shriek_is_symmetric_in_factor() {
        // (1⊗x)δ = (x⊗1)δ
        for m in 1..7 {
            for q in 0..=m {
                let x = TruncatedPoly::from_exponents(m, &[q]);
                let left = M2Element::from_terms(m, &[(q, 0)]).mul(&diagonal_class(m));
                assert_eq!(delta_shriek(&x), left);
            }
        }
    }

    #[test]
    fn r1_examples() {
        for k in 0..4 {
            assert_eq!(
                r1(&ProdInfinityElement::from_terms(3, &[(0, k)])),
                TruncatedPoly::from_exponents(3, &[k])
            );
            assert!(r1(&ProdInfinityElement::from_terms(3, &[(1, k)])).is_zero());
        }
    }

    #[test]
    fn r2_examples() {
        let m = 4;
        assert!(r2(&BorelElement::from_d(m, MonomialD::new(1, 2))).is_zero());
        assert_eq!(
            r2(&BorelElement::from_d(m, MonomialD::new(0, 2))),
            M2Element::from_terms(m, &[(2, 2)])
        );
        assert_eq!(r2(&BorelElement::eta(m)), M2Element::from_terms(m, &[(0, 1), (1, 0)]));
    }
}
