//! The Borel construction `S^∞ ×_{Σ₂} (P^m)²` and its mod-2 cohomology.
//!
//! As an `F₂[ζ]`-algebra the cohomology splits as `(F₂[ζ] ⊗ D) ⊕ N`:
//!
//! * `D` has basis the diagonal classes `z^j ⊗ z^j = λ^j` (`0 ≤ j ≤ m`) and
//!   `ζ` acts freely on it;
//! * `N` has basis the symmetric sums `z^a ⊗ z^b + z^b ⊗ z^a` (`a < b`) and is
//!   killed by `ζ`.
//!
//! Elements are stored directly in this monomial basis. Products are expanded
//! in `H*(P^m × P^m)` with exponents truncated at `m`; no normal forms over
//! `F₂[ζ, λ, η]` are ever needed.

mod kernel;
mod maps;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::span::{binomial_mod2, F2Span};

pub use kernel::{
    borel_basis, kernel_jstar, kernel_space, m2_basis, mu, prod_infinity_basis,
    solves_kernel_system, structural_kernel_dim, BorelMonomial, KernelSpace,
};
pub use maps::{
    delta_shriek, delta_star, diagonal_class, phi, phi_multiplier, r1, r2, M2Element,
    ProdInfinityElement, TruncatedPoly,
};

/// `ζ^zeta_exp · λ^diag_exp`, of degree `zeta_exp + 2·diag_exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialD {
    pub zeta_exp: usize,
    pub diag_exp: usize,
}

impl MonomialD {
    pub fn new(zeta_exp: usize, diag_exp: usize) -> Self {
        Self { zeta_exp, diag_exp }
    }

    pub fn degree(&self) -> usize {
        self.zeta_exp + 2 * self.diag_exp
    }
}

/// `z^lo ⊗ z^hi + z^hi ⊗ z^lo` with `lo < hi`, of degree `lo + hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialN {
    pub lo: usize,
    pub hi: usize,
}

impl MonomialN {
    /// Orders the exponents; returns `None` on the diagonal, where the
    /// symmetric sum is `2·(z^a ⊗ z^a) = 0`.
    pub fn symmetric(a: usize, b: usize) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Self { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Some(Self { lo: b, hi: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn degree(&self) -> usize {
        self.lo + self.hi
    }
}

impl fmt::Display for MonomialD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("zeta", self.zeta_exp), ("lambda", self.diag_exp)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl fmt::Display for MonomialN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N({},{})", self.lo, self.hi)
    }
}

/// An element of `H*(S^∞ ×_{Σ₂} (P^m)²; F₂)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BorelElement {
    m: usize,
    d_part: F2Span<MonomialD>,
    n_part: F2Span<MonomialN>,
}

impl BorelElement {
    pub fn zero(m: usize) -> Self {
        Self {
            m,
            d_part: F2Span::new(),
            n_part: F2Span::new(),
        }
    }

    pub fn one(m: usize) -> Self {
        Self::from_d(m, MonomialD::new(0, 0))
    }

    /// `ζ = z ⊗ 1 ⊗ 1`.
    pub fn zeta(m: usize) -> Self {
        Self::from_d(m, MonomialD::new(1, 0))
    }

    /// `λ = z ⊗ z`.
    pub fn lambda(m: usize) -> Self {
        Self::from_d(m, MonomialD::new(0, 1))
    }

    /// `η = 1 ⊗ z + z ⊗ 1`.
    pub fn eta(m: usize) -> Self {
        Self::from_n(m, 0, 1)
    }

    /// `ζ^i λ^j`, zero when `j > m`.
    pub fn from_d(m: usize, mono: MonomialD) -> Self {
        let mut x = Self::zero(m);
        if mono.diag_exp <= m {
            x.d_part.toggle(mono);
        }
        x
    }

    /// `z^a ⊗ z^b + z^b ⊗ z^a`, zero on the diagonal or past the truncation.
    pub fn from_n(m: usize, a: usize, b: usize) -> Self {
        let mut x = Self::zero(m);
        if let Some(n) = MonomialN::symmetric(a, b) {
            if n.hi <= m {
                x.n_part.toggle(n);
            }
        }
        x
    }

    pub fn from_monomial(m: usize, mono: BorelMonomial) -> Self {
        match mono {
            BorelMonomial::D(d) => Self::from_d(m, d),
            BorelMonomial::N(n) => Self::from_n(m, n.lo, n.hi),
        }
    }

    pub fn ambient_m(&self) -> usize {
        self.m
    }

    pub fn d_part(&self) -> &F2Span<MonomialD> {
        &self.d_part
    }

    pub fn n_part(&self) -> &F2Span<MonomialN> {
        &self.n_part
    }

    pub fn is_zero(&self) -> bool {
        self.d_part.is_empty() && self.n_part.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = BorelMonomial> + '_ {
        self.d_part
            .iter()
            .map(|d| BorelMonomial::D(*d))
            .chain(self.n_part.iter().map(|n| BorelMonomial::N(*n)))
    }

    /// The common degree of all terms; `Ok(None)` for zero.
    pub fn degree(&self) -> Result<Option<usize>, AlgebraError> {
        let mut degrees = self.monomials().map(|b| b.degree());
        let Some(first) = degrees.next() else {
            return Ok(None);
        };
        if degrees.all(|d| d == first) {
            Ok(Some(first))
        } else {
            Err(AlgebraError::NotHomogeneous)
        }
    }

    pub fn add(&self, other: &BorelElement) -> Result<BorelElement, AlgebraError> {
        check_ambient(self.m, other.m)?;
        let mut out = self.clone();
        out.d_part.add_assign(&other.d_part);
        out.n_part.add_assign(&other.n_part);
        Ok(out)
    }

    pub fn multiply(&self, other: &BorelElement) -> Result<BorelElement, AlgebraError> {
        check_ambient(self.m, other.m)?;
        let m = self.m;
        let mut out = Self::zero(m);
        for x in self.monomials() {
            for y in other.monomials() {
                multiply_monomials(m, x, y, &mut out);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> BorelElement {
        let mut out = Self::one(self.m);
        for _ in 0..e {
            out = out.multiply(self).expect("same ambient");
        }
        out
    }
}

impl fmt::Display for BorelElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.monomials().map(|b| b.to_string()).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl std::ops::Add for &BorelElement {
    type Output = BorelElement;

    /// Panics on an ambient mismatch; use [`BorelElement::add`] to handle it.
    fn add(self, rhs: &BorelElement) -> BorelElement {
        BorelElement::add(self, rhs).expect("ambient mismatch")
    }
}

impl std::ops::Mul for &BorelElement {
    type Output = BorelElement;

    /// Panics on an ambient mismatch; use [`BorelElement::multiply`] to handle it.
    fn mul(self, rhs: &BorelElement) -> BorelElement {
        self.multiply(rhs).expect("ambient mismatch")
    }
}

fn check_ambient(left: usize, right: usize) -> Result<(), AlgebraError> {
    if left == right {
        Ok(())
    } else {
        Err(AlgebraError::AmbientMismatch { left, right })
    }
}

fn multiply_monomials(m: usize, x: BorelMonomial, y: BorelMonomial, out: &mut BorelElement) {
    use BorelMonomial::{D, N};
    match (x, y) {
        (D(p), D(q)) => {
            let j = p.diag_exp + q.diag_exp;
            if j <= m {
                out.d_part.toggle(MonomialD::new(p.zeta_exp + q.zeta_exp, j));
            }
        }
        (D(p), N(n)) | (N(n), D(p)) => {
            // ζ annihilates N; otherwise (z^j⊗z^j)(z^a⊗z^b + z^b⊗z^a) stays in N.
            if p.zeta_exp == 0 && n.hi + p.diag_exp <= m {
                out.n_part.toggle(MonomialN {
                    lo: n.lo + p.diag_exp,
                    hi: n.hi + p.diag_exp,
                });
            }
        }
        (N(s), N(t)) => {
            // (a⊗b + b⊗a)(c⊗d + d⊗c) = [ac⊗bd + bd⊗ac] + [ad⊗bc + bc⊗ad]
            for (u, v) in [(s.lo + t.lo, s.hi + t.hi), (s.lo + t.hi, s.hi + t.lo)] {
                if u <= m && v <= m {
                    if let Some(n) = MonomialN::symmetric(u, v) {
                        out.n_part.toggle(n);
                    }
                }
            }
        }
    }
}

/// A formal polynomial in `λ` and `η` over F₂, independent of `m`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LambdaEtaPoly(F2Span<(usize, usize)>);

impl LambdaEtaPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Sum of `λ^l η^e` over the given `(l, e)` pairs.
    pub fn from_terms(terms: &[(usize, usize)]) -> Self {
        Self(terms.iter().copied().collect())
    }

    pub fn monomial(lambda_exp: usize, eta_exp: usize) -> Self {
        Self::from_terms(&[(lambda_exp, eta_exp)])
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &LambdaEtaPoly) -> LambdaEtaPoly {
        let mut out = self.clone();
        out.0.add_assign(&other.0);
        out
    }

    pub fn mul(&self, other: &LambdaEtaPoly) -> LambdaEtaPoly {
        let mut out = F2Span::new();
        for (a, b) in self.terms() {
            for (c, d) in other.terms() {
                out.toggle((a + c, b + d));
            }
        }
        Self(out)
    }

    /// Image in the Borel ring for `P^m`.
    pub fn evaluate(&self, m: usize) -> BorelElement {
        let lambda = BorelElement::lambda(m);
        let eta = BorelElement::eta(m);
        let mut out = BorelElement::zero(m);
        for (l, e) in self.terms() {
            let term = &lambda.pow(l) * &eta.pow(e);
            out = &out + &term;
        }
        out
    }
}

impl fmt::Display for LambdaEtaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms()
            .map(|(l, e)| {
                let mut s = String::new();
                for (name, k) in [("λ", l), ("η", e)] {
                    match k {
                        0 => {}
                        1 => s.push_str(name),
                        _ => s.push_str(&format!("{name}^{k}")),
                    }
                }
                if s.is_empty() {
                    s.push('1');
                }
                s
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `Q_0, …, Q_n` from the recursion
/// `Q_i = Σ_{1 ≤ k ≤ ⌊(i−1)/2⌋} C(i,k) λ^k (η^{i−2k} + Q_{i−2k})`.
pub fn q_polynomials_formal(n: usize) -> Vec<LambdaEtaPoly> {
    let mut qs: Vec<LambdaEtaPoly> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut q = LambdaEtaPoly::zero();
        if i >= 1 {
            for k in 1..=(i - 1) / 2 {
                if binomial_mod2(i, k) {
                    let inner = LambdaEtaPoly::monomial(0, i - 2 * k).add(&qs[i - 2 * k]);
                    q = q.add(&LambdaEtaPoly::monomial(k, 0).mul(&inner));
                }
            }
        }
        qs.push(q);
    }
    qs
}

pub fn q_polynomial_formal(i: usize) -> LambdaEtaPoly {
    q_polynomials_formal(i).pop().expect("non-empty")
}

/// `Q_i(λ, η)` as an element of the Borel ring for `P^m`.
pub fn q_polynomial(i: usize, m: usize) -> BorelElement {
    q_polynomial_formal(i).evaluate(m)
}

/// `R_i = λ^{m+1−i} (η^i + Q_i)` for `0 ≤ i ≤ m+1`, as a formal polynomial.
pub fn relation_r_formal(i: usize, m: usize) -> Result<LambdaEtaPoly, AlgebraError> {
    if i > m + 1 {
        return Err(AlgebraError::RelationIndexOutOfRange { i, max: m + 1 });
    }
    let q = q_polynomial_formal(i);
    let inner = LambdaEtaPoly::monomial(0, i).add(&q);
    Ok(LambdaEtaPoly::monomial(m + 1 - i, 0).mul(&inner))
}

/// `R_i` evaluated in the Borel ring; always zero, since the `R_i` are the
/// defining relations of the presentation.
pub fn relation_r(i: usize, m: usize) -> Result<BorelElement, AlgebraError> {
    Ok(relation_r_formal(i, m)?.evaluate(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam_eta(m: usize) -> BorelElement {
        &BorelElement::lambda(m) * &BorelElement::eta(m)
    }

    #[test]
    fn lambda_times_eta() {
        assert_eq!(lam_eta(3), BorelElement::from_n(3, 1, 2));
    }

    #[test]
    fn zeta_kills_eta() {
        for m in 1..5 {
            assert!((&BorelElement::zeta(m) * &BorelElement::eta(m)).is_zero());
        }
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let err = BorelElement::zeta(2).multiply(&BorelElement::zeta(3));
        assert_eq!(err, Err(AlgebraError::AmbientMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn printed_q_values() {
        let qs = q_polynomials_formal(8);
        for i in [0, 1, 2, 4, 8] {
            assert!(qs[i].is_zero(), "Q_{i} = {}", qs[i]);
        }
        assert_eq!(qs[3], LambdaEtaPoly::from_terms(&[(1, 1)]));
        assert_eq!(qs[5], LambdaEtaPoly::from_terms(&[(1, 3), (2, 1)]));
        assert_eq!(qs[6], LambdaEtaPoly::from_terms(&[(2, 2)]));
        assert_eq!(qs[7], LambdaEtaPoly::from_terms(&[(1, 5), (3, 1)]));
    }

    #[test]
    fn q_has_pure_n_support() {
        for m in 1..7 {
            for i in 0..12 {
                assert!(q_polynomial(i, m).d_part().is_empty());
            }
        }
    }

    #[test]
    fn small_relations() {
        assert_eq!(relation_r_formal(2, 1).unwrap(), LambdaEtaPoly::monomial(0, 2));
        assert_eq!(relation_r_formal(1, 1).unwrap(), LambdaEtaPoly::monomial(1, 1));
        assert_eq!(relation_r_formal(0, 1).unwrap(), LambdaEtaPoly::monomial(2, 0));
        assert!(matches!(
            relation_r_formal(3, 1),
            Err(AlgebraError::RelationIndexOutOfRange { i: 3, max: 2 })
        ));
    }

    #[test]
    fn display() {
        let x = &BorelElement::from_d(3, MonomialD::new(2, 1)) + &BorelElement::from_n(3, 0, 2);
        assert_eq!(x.to_string(), "zeta^2*lambda + N(0,2)");
        assert_eq!(q_polynomial_formal(5).to_string(), "λη^3 + λ^2η");
    }
}
