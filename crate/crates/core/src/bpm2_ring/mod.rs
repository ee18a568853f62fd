//! `H*(B(P^m, 2); F₂)` as the quotient of the Borel ring by `ker j*`.
//!
//! Each degree keeps the Borel basis, the kernel in reduced echelon form and
//! the complementary (non-pivot) monomials, which serve as the canonical
//! coset representatives.

mod presentations;
mod steenrod;

use serde::Serialize;

use crate::borel_ring::{kernel_space, BorelElement, BorelMonomial, KernelSpace};
use crate::error::AlgebraError;
use crate::f2linalg::{kernel_basis, rank, EchelonBasis, F2Matrix, F2Vector};

pub use presentations::{check_presentations, CheckOutcome, PresentationReport};
pub use steenrod::{sq1_borel, sq_symmetric};

/// `ζ^a λ^b η^c` in the Borel ring for `P^m`.
pub fn generator_monomial(m: usize, zeta: usize, lambda: usize, eta: usize) -> BorelElement {
    let x = &BorelElement::zeta(m).pow(zeta) * &BorelElement::lambda(m).pow(lambda);
    &x * &BorelElement::eta(m).pow(eta)
}

#[derive(Clone, Debug)]
struct DegreeData {
    kernel: KernelSpace,
    echelon: EchelonBasis,
    /// Indices into `kernel.borel_basis` of the coset representatives.
    reps: Vec<usize>,
}

impl DegreeData {
    fn new(kernel: KernelSpace) -> Self {
        let echelon = kernel.echelon();
        let reps = echelon.free_columns();
        Self {
            kernel,
            echelon,
            reps,
        }
    }

    fn basis(&self) -> &[BorelMonomial] {
        &self.kernel.borel_basis
    }
}

/// A homogeneous class, in coordinates over the canonical quotient basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingClass {
    degree: usize,
    coords: F2Vector,
}

impl RingClass {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &F2Vector {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct QuotientRing {
    m: usize,
    max_degree: usize,
    degrees: Vec<DegreeData>,
}

impl QuotientRing {
    pub fn build(m: usize, max_degree: usize) -> Result<Self, AlgebraError> {
        if m == 0 {
            return Err(AlgebraError::InvalidAmbient(m));
        }
        let degrees = (0..=max_degree)
            .map(|d| kernel_space(m, d).map(DegreeData::new))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            m,
            max_degree,
            degrees,
        })
    }

    /// The ring through degree `2m`, past which it vanishes.
    pub fn full(m: usize) -> Result<Self, AlgebraError> {
        Self::build(m, 2 * m)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn data(&self, degree: usize) -> Result<Option<&DegreeData>, AlgebraError> {
        match self.degrees.get(degree) {
            Some(d) => Ok(Some(d)),
            // In degrees ≥ 2m the Borel ring and the image of μ have the same
            // dimension, so the quotient is zero.
            None if degree >= 2 * self.m => Ok(None),
            None => Err(AlgebraError::DegreeNotComputed {
                degree,
                cap: self.max_degree,
            }),
        }
    }

    pub fn dim(&self, degree: usize) -> Result<usize, AlgebraError> {
        Ok(self.data(degree)?.map_or(0, |d| d.reps.len()))
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.reps.len()).collect()
    }

    pub fn borel_dim(&self, degree: usize) -> Result<usize, AlgebraError> {
        Ok(self.data(degree)?.map_or(0, |d| d.basis().len()))
    }

    pub fn kernel_dim(&self, degree: usize) -> Result<usize, AlgebraError> {
        Ok(self.data(degree)?.map_or(0, |d| d.kernel.dim()))
    }

    /// Borel monomials representing the quotient basis in this degree.
    pub fn basis(&self, degree: usize) -> Result<Vec<BorelMonomial>, AlgebraError> {
        Ok(self
            .data(degree)?
            .map(|d| d.reps.iter().map(|&i| d.basis()[i]).collect())
            .unwrap_or_default())
    }

    pub fn kernel(&self, degree: usize) -> Result<Vec<BorelElement>, AlgebraError> {
        Ok(self.data(degree)?.map(|d| d.kernel.elements()).unwrap_or_default())
    }

    pub fn zero_class(&self, degree: usize) -> Result<RingClass, AlgebraError> {
        Ok(RingClass {
            degree,
            coords: F2Vector::zeros(self.dim(degree)?),
        })
    }

    pub fn basis_class(&self, degree: usize, index: usize) -> Result<RingClass, AlgebraError> {
        Ok(RingClass {
            degree,
            coords: F2Vector::unit(self.dim(degree)?, index),
        })
    }

    /// `j*(x)` for a homogeneous Borel element `x`, in degree `degree`
    /// (needed when `x` is zero).
    pub fn class_in_degree(&self, x: &BorelElement, degree: usize) -> Result<RingClass, AlgebraError> {
        if x.ambient_m() != self.m {
            return Err(AlgebraError::AmbientMismatch {
                left: self.m,
                right: x.ambient_m(),
            });
        }
        match x.degree()? {
            None => return self.zero_class(degree),
            Some(d) if d != degree => return Err(AlgebraError::NotHomogeneous),
            Some(_) => {}
        }
        let Some(data) = self.data(degree)? else {
            return self.zero_class(degree);
        };
        let mut v = F2Vector::zeros(data.basis().len());
        for mono in x.monomials() {
            let i = data.basis().iter().position(|b| *b == mono).expect("degree checked");
            v.flip(i);
        }
        let reduced = data.echelon.reduce(&v);
        let bits: Vec<bool> = data.reps.iter().map(|&i| reduced.get(i)).collect();
        Ok(RingClass {
            degree,
            coords: F2Vector::from_bits(&bits),
        })
    }

    /// `j*(x)`; zero elements land in degree 0.
    pub fn class_of(&self, x: &BorelElement) -> Result<RingClass, AlgebraError> {
        let degree = x.degree()?.unwrap_or(0);
        self.class_in_degree(x, degree)
    }

    /// The canonical Borel representative of a class.
    pub fn representative(&self, c: &RingClass) -> BorelElement {
        let mut out = BorelElement::zero(self.m);
        if let Ok(Some(data)) = self.data(c.degree) {
            for k in c.coords.ones() {
                out = &out + &BorelElement::from_monomial(self.m, data.basis()[data.reps[k]]);
            }
        }
        out
    }

    pub fn add(&self, x: &RingClass, y: &RingClass) -> Result<RingClass, AlgebraError> {
        if x.degree != y.degree {
            return Err(AlgebraError::NotHomogeneous);
        }
        Ok(RingClass {
            degree: x.degree,
            coords: x.coords.add(&y.coords),
        })
    }

    pub fn mul(&self, x: &RingClass, y: &RingClass) -> Result<RingClass, AlgebraError> {
        let product = &self.representative(x) * &self.representative(y);
        self.class_in_degree(&product, x.degree + y.degree)
    }

    pub fn is_zero_element(&self, x: &BorelElement) -> Result<bool, AlgebraError> {
        Ok(self.class_of(x)?.is_zero())
    }

    pub fn zeta(&self) -> RingClass {
        self.class_of(&BorelElement::zeta(self.m)).expect("degree 1 is computed")
    }

    /// `Sq¹` on a class, computed on its canonical representative.
    pub fn sq1(&self, x: &RingClass) -> Result<RingClass, AlgebraError> {
        self.class_in_degree(&sq1_borel(&self.representative(x)), x.degree + 1)
    }

    /// Checks `Sq¹(ker j*) ⊆ ker j*` in every degree whose image is computed,
    /// which is what makes [`QuotientRing::sq1`] well defined.
    pub fn check_sq1_preserves_kernel(&self) -> Result<(), AlgebraError> {
        for (d, data) in self.degrees.iter().enumerate() {
            for k in data.kernel.elements() {
                let image = self.class_in_degree(&sq1_borel(&k), d + 1);
                match image {
                    Ok(c) if c.is_zero() => {}
                    Ok(_) => return Err(AlgebraError::Sq1NotWellDefined { degree: d }),
                    Err(AlgebraError::DegreeNotComputed { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(())
    }

    /// Matrix of `Sq¹: H^d → H^{d+1}` in the canonical bases.
    pub fn sq1_matrix(&self, degree: usize) -> Result<F2Matrix, AlgebraError> {
        let target = self.dim(degree + 1)?;
        let columns = (0..self.dim(degree)?)
            .map(|i| Ok(self.sq1(&self.basis_class(degree, i)?)?.coords))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        Ok(F2Matrix::from_columns(target, &columns))
    }

    /// Products of basis classes, one entry per unordered pair with a
    /// nonzero product.
    pub fn multiplication_table(&self) -> Vec<ProductEntry> {
        let mut out = Vec::new();
        for d1 in 0..=self.max_degree {
            for d2 in d1..=self.max_degree.saturating_sub(d1) {
                let (n1, n2) = (self.degrees[d1].reps.len(), self.degrees[d2].reps.len());
                for i in 0..n1 {
                    let start = if d1 == d2 { i } else { 0 };
                    for j in start..n2 {
                        let x = self.basis_class(d1, i).expect("computed");
                        let y = self.basis_class(d2, j).expect("computed");
                        let Ok(p) = self.mul(&x, &y) else { continue };
                        if !p.is_zero() {
                            out.push(ProductEntry {
                                left: (d1, i),
                                right: (d2, j),
                                product: p.coords.ones().collect(),
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

/// `basis[left] · basis[right] = Σ basis[product]` in degree `left.0 + right.0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductEntry {
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub product: Vec<usize>,
}

/// Largest `n` with `ζ^n ≠ 0` in `H*(B(P^m,2); F₂)`.
///
/// Every `n` in `1..2m` is tested, so the result does not rely on any
/// closed-form family pattern.
pub fn zeta_height(m: usize) -> Result<usize, AlgebraError> {
    zeta_height_in(&QuotientRing::full(m)?)
}

pub fn zeta_height_in(ring: &QuotientRing) -> Result<usize, AlgebraError> {
    let m = ring.m();
    let mut height = 0;
    for n in 1..2 * m {
        let zeta_n = BorelElement::zeta(m).pow(n);
        if !ring.is_zero_element(&zeta_n)? {
            height = n;
        }
    }
    Ok(height)
}

/// Lower bounds for `TC^S(P^m)` obtained from the `F₂` height of `ζ`,
/// as previously tabulated for `m ≤ 8`.
pub const REFERENCE_F2_BOUNDS: [usize; 8] = [2, 4, 4, 8, 8, 8, 8, 16];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub m: usize,
    pub zeta_height: usize,
    /// `zeta_height + 1`: a map `B(P^m,2) → P^{n−1}` classifying the double
    /// cover would force `ζ^n = 0`.
    pub tcs_lower_bound: usize,
    pub dims: Vec<usize>,
    pub reference_bound: Option<usize>,
    pub matches_reference: Option<bool>,
}

pub fn tcs_lower_bound_f2(m: usize) -> Result<BoundReport, AlgebraError> {
    let ring = QuotientRing::full(m)?;
    let zeta_height = zeta_height_in(&ring)?;
    let tcs_lower_bound = zeta_height + 1;
    let reference_bound = REFERENCE_F2_BOUNDS.get(m.wrapping_sub(1)).copied();
    Ok(BoundReport {
        m,
        zeta_height,
        tcs_lower_bound,
        dims: ring.dims(),
        reference_bound,
        matches_reference: reference_bound.map(|b| b == tcs_lower_bound),
    })
}

/// Dimensions of `ker Sq¹ / im Sq¹` in degrees `0..=2m`.
///
/// Fails if `Sq¹` does not preserve `ker j*` or `Sq¹ ∘ Sq¹ ≠ 0`; either
/// would signal a bug.
pub fn sq1_cohomology_dims(m: usize) -> Result<Vec<usize>, AlgebraError> {
    let ring = QuotientRing::build(m, 2 * m + 1)?;
    sq1_cohomology_dims_in(&ring)
}

pub fn sq1_cohomology_dims_in(ring: &QuotientRing) -> Result<Vec<usize>, AlgebraError> {
    ring.check_sq1_preserves_kernel()?;
    let top = 2 * ring.m();
    let matrices = (0..=top)
        .map(|d| ring.sq1_matrix(d))
        .collect::<Result<Vec<_>, _>>()?;
    for d in 0..top {
        if !matrices[d + 1].mul(&matrices[d]).is_zero() {
            return Err(AlgebraError::Sq1NotWellDefined { degree: d });
        }
    }
    Ok((0..=top)
        .map(|d| {
            let cycles = kernel_basis(&matrices[d]).len();
            let boundaries = if d == 0 { 0 } else { rank(&matrices[d - 1]) };
            cycles - boundaries
        })
        .collect())
}
