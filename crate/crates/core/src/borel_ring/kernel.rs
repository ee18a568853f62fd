//! Degree-wise bases and the computation of `ker j*`.
//!
//! An element `a` of the Borel ring lies in `ker j*` exactly when some `b`
//! in `H^{*−m}(P^∞ × P^m)` satisfies both `Δ*(a) = φ(b)` and
//! `r₂(a) = Δ_!(r₁(b))`. Both conditions are stacked into one F₂ system in
//! the unknowns `(a, b)` and the kernel is the projection of its solution
//! space onto the `a` coordinates.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::maps::{delta_shriek, delta_star, phi, r1, r2, M2Element, ProdInfinityElement};
use super::{BorelElement, MonomialD, MonomialN};
use crate::error::AlgebraError;
use crate::f2linalg::{kernel_basis, solve_affine_space, EchelonBasis, F2Matrix, F2Vector};

/// A basis monomial of the Borel ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BorelMonomial {
    D(MonomialD),
    N(MonomialN),
}

impl BorelMonomial {
    pub fn degree(&self) -> usize {
        match self {
            BorelMonomial::D(d) => d.degree(),
            BorelMonomial::N(n) => n.degree(),
        }
    }
}

impl fmt::Display for BorelMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BorelMonomial::D(d) => d.fmt(f),
            BorelMonomial::N(n) => n.fmt(f),
        }
    }
}

/// Basis of the Borel ring in degree `d`: the `ζ^i λ^j` in increasing `i`,
/// then the symmetric classes `N(a,b)` in increasing `a`.
pub fn borel_basis(m: usize, d: usize) -> Vec<BorelMonomial> {
    let diag = (0..=m.min(d / 2))
        .rev()
        .map(|j| BorelMonomial::D(MonomialD::new(d - 2 * j, j)));
    let sym = (0..=m)
        .filter_map(move |a| {
            let b = d.checked_sub(a)?;
            (a < b && b <= m).then_some(MonomialN { lo: a, hi: b })
        })
        .map(BorelMonomial::N);
    diag.chain(sym).collect()
}

/// Basis of `H^d(P^∞ × P^m)`: the `z^p ⊗ z^q`, in increasing `q`.
pub fn prod_infinity_basis(m: usize, d: usize) -> Vec<(usize, usize)> {
    (0..=m.min(d)).map(|q| (d - q, q)).collect()
}

/// Basis of `H^d((P^m)²)`, in increasing first exponent.
pub fn m2_basis(m: usize, d: usize) -> Vec<(usize, usize)> {
    (0..=m)
        .filter_map(|a| {
            let b = d.checked_sub(a)?;
            (b <= m).then_some((a, b))
        })
        .collect()
}

fn index_of<T: PartialEq>(basis: &[T], t: &T) -> usize {
    basis
        .iter()
        .position(|x| x == t)
        .expect("term of the expected degree is in the basis")
}

pub(crate) fn borel_coords(x: &BorelElement, basis: &[BorelMonomial]) -> F2Vector {
    let mut v = F2Vector::zeros(basis.len());
    for mono in x.monomials() {
        v.flip(index_of(basis, &mono));
    }
    v
}

pub(crate) fn borel_from_coords(m: usize, v: &F2Vector, basis: &[BorelMonomial]) -> BorelElement {
    v.ones().fold(BorelElement::zero(m), |acc, i| {
        &acc + &BorelElement::from_monomial(m, basis[i])
    })
}

fn pi_coords(x: &ProdInfinityElement, basis: &[(usize, usize)]) -> F2Vector {
    let mut v = F2Vector::zeros(basis.len());
    for t in x.terms() {
        v.flip(index_of(basis, &t));
    }
    v
}

fn m2_coords(x: &M2Element, basis: &[(usize, usize)]) -> F2Vector {
    let mut v = F2Vector::zeros(basis.len());
    for t in x.terms() {
        v.flip(index_of(basis, &t));
    }
    v
}

/// The two conditions characterising `ker j*`, for a candidate pair `(a, b)`.
pub fn solves_kernel_system(a: &BorelElement, b: &ProdInfinityElement) -> bool {
    assert_eq!(a.ambient_m(), b.ambient_m(), "ambient mismatch");
    delta_star(a) == phi(b) && r2(a) == delta_shriek(&r1(b))
}

/// The `(Δ*, r₂)` image of one Borel basis element, as a column of the joint system.
fn a_column(m: usize, mono: BorelMonomial, pi: &[(usize, usize)], m2: &[(usize, usize)]) -> F2Vector {
    let x = BorelElement::from_monomial(m, mono);
    pi_coords(&delta_star(&x), pi).concat(&m2_coords(&r2(&x), m2))
}

fn b_column(m: usize, term: (usize, usize), pi: &[(usize, usize)], m2: &[(usize, usize)]) -> F2Vector {
    let b = ProdInfinityElement::from_terms(m, &[term]);
    pi_coords(&phi(&b), pi).concat(&m2_coords(&delta_shriek(&r1(&b)), m2))
}

/// `ker j*` in one degree, together with the `b`-preimage of each basis vector.
#[derive(Clone, Debug)]
pub struct KernelSpace {
    pub m: usize,
    pub degree: usize,
    pub borel_basis: Vec<BorelMonomial>,
    /// Coordinates of the kernel basis in `borel_basis`.
    pub vectors: Vec<F2Vector>,
    /// `preimages[k]` is the `b` with `μ(b) = vectors[k]`.
    pub preimages: Vec<ProdInfinityElement>,
}

impl KernelSpace {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn echelon(&self) -> EchelonBasis {
        EchelonBasis::new(self.borel_basis.len(), &self.vectors)
    }

    pub fn elements(&self) -> Vec<BorelElement> {
        self.vectors
            .iter()
            .map(|v| borel_from_coords(self.m, v, &self.borel_basis))
            .collect()
    }

    pub fn contains(&self, x: &BorelElement) -> bool {
        if x.is_zero() {
            return true;
        }
        match x.degree() {
            Ok(Some(d)) if d == self.degree => self.echelon().contains(&borel_coords(x, &self.borel_basis)),
            _ => false,
        }
    }
}

pub fn kernel_space(m: usize, degree: usize) -> Result<KernelSpace, AlgebraError> {
    if m == 0 {
        return Err(AlgebraError::InvalidAmbient(m));
    }
    let basis = borel_basis(m, degree);
    let b_basis = degree
        .checked_sub(m)
        .map(|e| prod_infinity_basis(m, e))
        .unwrap_or_default();
    let pi = prod_infinity_basis(m, degree);
    let m2 = m2_basis(m, degree);

    let columns: Vec<F2Vector> = basis
        .iter()
        .map(|&mono| a_column(m, mono, &pi, &m2))
        .chain(b_basis.iter().map(|&t| b_column(m, t, &pi, &m2)))
        .collect();
    let system = F2Matrix::from_columns(pi.len() + m2.len(), &columns);
    let solutions = kernel_basis(&system);

    let na = basis.len();
    let projected: Vec<F2Vector> = solutions.iter().map(|s| s.slice(0..na)).collect();
    let independent = EchelonBasis::new(na, &projected).rank();
    // μ is injective, so the projection must have exactly dim H^{d−m}(P^∞×P^m) dimensions.
    if independent != b_basis.len() || solutions.len() != b_basis.len() {
        return Err(AlgebraError::KernelDimension {
            degree,
            found: independent,
            expected: b_basis.len(),
        });
    }
    let preimages = solutions
        .iter()
        .map(|s| {
            let terms: Vec<(usize, usize)> = s.slice(na..s.len()).ones().map(|k| b_basis[k]).collect();
            ProdInfinityElement::from_terms(m, &terms)
        })
        .collect();
    Ok(KernelSpace {
        m,
        degree,
        borel_basis: basis,
        vectors: projected,
        preimages,
    })
}

/// A basis of `ker j*` in the given degree.
pub fn kernel_jstar(m: usize, degree: usize) -> Result<Vec<BorelElement>, AlgebraError> {
    Ok(kernel_space(m, degree)?.elements())
}

/// `μ(b)`: the unique Borel element paired with `b` by the two kernel
/// conditions.
pub fn mu(b: &ProdInfinityElement) -> Result<BorelElement, AlgebraError> {
    let m = b.ambient_m();
    let Some(b_degree) = b.terms().map(|(p, q)| p + q).next() else {
        return Ok(BorelElement::zero(m));
    };
    if b.terms().any(|(p, q)| p + q != b_degree) {
        return Err(AlgebraError::NotHomogeneous);
    }
    let degree = b_degree + m;
    let basis = borel_basis(m, degree);
    let pi = prod_infinity_basis(m, degree);
    let m2 = m2_basis(m, degree);
    let columns: Vec<F2Vector> = basis.iter().map(|&mono| a_column(m, mono, &pi, &m2)).collect();
    let system = F2Matrix::from_columns(pi.len() + m2.len(), &columns);
    let target = pi_coords(&phi(b), &pi).concat(&m2_coords(&delta_shriek(&r1(b)), &m2));
    let (particular, kernel) =
        solve_affine_space(&system, &target).ok_or(AlgebraError::NoPreimage { degree })?;
    if !kernel.is_empty() {
        return Err(AlgebraError::KernelDimension {
            degree,
            found: kernel.len(),
            expected: 0,
        });
    }
    Ok(borel_from_coords(m, &particular, &basis))
}

/// `dim (ker Δ* ∩ ker r₂)` in one degree.
pub fn structural_kernel_dim(m: usize, degree: usize) -> usize {
    let basis = borel_basis(m, degree);
    let pi = prod_infinity_basis(m, degree);
    let m2 = m2_basis(m, degree);
    let columns: Vec<F2Vector> = basis.iter().map(|&mono| a_column(m, mono, &pi, &m2)).collect();
    kernel_basis(&F2Matrix::from_columns(pi.len() + m2.len(), &columns)).len()
}
