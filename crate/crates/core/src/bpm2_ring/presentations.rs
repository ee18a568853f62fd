//! Known small-`m` presentations of `H*(B(P^m,2); F₂)`, checked against the
//! computed rings.

use serde::Serialize;

use super::{generator_monomial as g, QuotientRing};
use crate::borel_ring::{mu, BorelElement, ProdInfinityElement};
use crate::error::AlgebraError;
use crate::f2linalg::{rank, F2Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub id: String,
    pub m: usize,
    pub description: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub checks: Vec<CheckOutcome>,
}

impl PresentationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Checker<'a> {
    ring: &'a QuotientRing,
    out: Vec<CheckOutcome>,
}

impl Checker<'_> {
    fn record(&mut self, id: &str, description: &str, passed: bool, detail: String) {
        self.out.push(CheckOutcome {
            id: id.to_string(),
            m: self.ring.m(),
            description: description.to_string(),
            passed,
            detail,
        });
    }

    fn vanishes(&mut self, id: &str, description: &str, x: &BorelElement) {
        let result = self.ring.is_zero_element(x);
        let detail = format!("{x} -> {result:?}");
        self.record(id, description, result == Ok(true), detail);
    }

    fn nonzero(&mut self, id: &str, description: &str, x: &BorelElement) {
        let result = self.ring.is_zero_element(x);
        let detail = format!("{x} -> zero: {result:?}");
        self.record(id, description, result == Ok(false), detail);
    }

    fn equal(&mut self, id: &str, description: &str, x: &BorelElement, y: &BorelElement) {
        self.vanishes(id, description, &(x + y));
    }

    /// The listed elements of each degree form a basis of the quotient there.
    fn spans_as_basis(&mut self, id: &str, description: &str, per_degree: &[Vec<BorelElement>]) {
        let mut problems = Vec::new();
        for (d, elems) in per_degree.iter().enumerate() {
            let dim = self.ring.dim(d).unwrap_or(usize::MAX);
            let coords: Result<Vec<_>, AlgebraError> = elems
                .iter()
                .map(|x| self.ring.class_in_degree(x, d).map(|c| c.coords().clone()))
                .collect();
            match coords {
                Ok(c) if elems.len() == dim && rank(&F2Matrix::new(dim, c.clone())) == dim => {}
                Ok(_) => problems.push(format!("degree {d}: {} elements, dim {dim}", elems.len())),
                Err(e) => problems.push(format!("degree {d}: {e}")),
            }
        }
        if self.ring.dim(per_degree.len()).unwrap_or(1) != 0 {
            problems.push(format!("degree {} is nonzero", per_degree.len()));
        }
        let passed = problems.is_empty();
        self.record(id, description, passed, problems.join("; "));
    }
}

fn check_m1(out: &mut Vec<CheckOutcome>) -> Result<(), AlgebraError> {
    let m = 1;
    let ring = QuotientRing::full(m)?;
    let mut c = Checker { ring: &ring, out: Vec::new() };
    c.record(
        "m1.dims",
        "B(P^1,2) is a circle: dims [1,1]",
        ring.dims() == [1, 1, 0],
        format!("{:?}", ring.dims()),
    );
    c.nonzero("m1.zeta", "zeta is nonzero", &g(m, 1, 0, 0));
    c.vanishes("m1.zeta2", "zeta^2 = 0", &g(m, 2, 0, 0));
    c.equal("m1.eta", "eta = zeta", &g(m, 0, 0, 1), &g(m, 1, 0, 0));
    c.vanishes("m1.lambda", "lambda = 0", &g(m, 0, 1, 0));
    out.append(&mut c.out);
    Ok(())
}

fn check_m2(out: &mut Vec<CheckOutcome>) -> Result<(), AlgebraError> {
    let m = 2;
    let ring = QuotientRing::full(m)?;
    let mut c = Checker { ring: &ring, out: Vec::new() };
    c.vanishes("m2.zeta_eta", "F2[zeta,eta]/(zeta*eta, zeta^3+eta^3): zeta*eta = 0", &g(m, 1, 0, 1));
    c.equal(
        "m2.zeta3_eta3",
        "F2[zeta,eta]/(zeta*eta, zeta^3+eta^3): zeta^3 = eta^3",
        &g(m, 3, 0, 0),
        &g(m, 0, 0, 3),
    );
    c.vanishes("m2.zeta4", "zeta^4 = 0", &g(m, 4, 0, 0));
    c.vanishes("m2.eta4", "eta^4 = 0", &g(m, 0, 0, 4));
    c.nonzero("m2.zeta3", "zeta^3 != 0 (height 3, TC^S(P^2) >= 4)", &g(m, 3, 0, 0));
    c.nonzero("m2.eta3", "eta^3 != 0", &g(m, 0, 0, 3));
    let generated: Vec<Vec<BorelElement>> = vec![
        vec![g(m, 0, 0, 0)],
        vec![g(m, 1, 0, 0), g(m, 0, 0, 1)],
        vec![g(m, 2, 0, 0), g(m, 0, 0, 2)],
        vec![g(m, 3, 0, 0)],
    ];
    c.spans_as_basis("m2.generators", "zeta and eta generate; basis 1, zeta, eta, zeta^2, eta^2, zeta^3", &generated);

    let mu_checks = [
        ("m2.mu_1", "mu(1⊗1) = zeta^2 + lambda + eta^2", 0, &g(m, 2, 0, 0) + &(&g(m, 0, 1, 0) + &g(m, 0, 0, 2))),
        ("m2.mu_z", "mu(1⊗z) = zeta*lambda + lambda*eta", 1, &g(m, 1, 1, 0) + &g(m, 0, 1, 1)),
        ("m2.mu_z2", "mu(1⊗z^2) = lambda^2", 2, g(m, 0, 2, 0)),
    ];
    for (id, description, q, expected) in mu_checks {
        let got = mu(&ProdInfinityElement::from_terms(m, &[(0, q)]));
        let passed = got.as_ref() == Ok(&expected);
        let detail = match &got {
            Ok(x) => format!("computed {x}"),
            Err(e) => e.to_string(),
        };
        c.record(id, description, passed, detail);
    }
    out.append(&mut c.out);
    Ok(())
}

fn check_m3(out: &mut Vec<CheckOutcome>) -> Result<(), AlgebraError> {
    let m = 3;
    let ring = QuotientRing::full(m)?;
    let mut c = Checker { ring: &ring, out: Vec::new() };
    c.record(
        "m3.dims",
        "dims of H*(B(P^3,2)) are [1,2,3,3,2,1]",
        ring.dims() == [1, 2, 3, 3, 2, 1, 0],
        format!("{:?}", ring.dims()),
    );
    let relations = [
        ("m3.rel.zeta_eta", "relation zeta*eta", g(m, 1, 0, 1)),
        ("m3.rel.lambda3", "relation lambda^3", g(m, 0, 3, 0)),
        ("m3.rel.zeta3_eta3", "relation zeta^3 + eta^3", &g(m, 3, 0, 0) + &g(m, 0, 0, 3)),
        ("m3.rel.zl2_l2e", "relation zeta*lambda^2 + lambda^2*eta", &g(m, 1, 2, 0) + &g(m, 0, 2, 1)),
        (
            "m3.rel.z2l_l2_le2",
            "relation zeta^2*lambda + lambda^2 + lambda*eta^2",
            &(&g(m, 2, 1, 0) + &g(m, 0, 2, 0)) + &g(m, 0, 1, 2),
        ),
    ];
    for (id, description, x) in &relations {
        c.vanishes(id, description, x);
    }
    let table: Vec<Vec<BorelElement>> = vec![
        vec![g(m, 0, 0, 0)],
        vec![g(m, 1, 0, 0), g(m, 0, 0, 1)],
        vec![g(m, 2, 0, 0), g(m, 0, 0, 2), g(m, 0, 1, 0)],
        vec![g(m, 3, 0, 0), g(m, 1, 1, 0), g(m, 0, 1, 1)],
        vec![g(m, 2, 1, 0), g(m, 0, 1, 2)],
        vec![g(m, 3, 1, 0)],
    ];
    c.spans_as_basis("m3.basis", "the 12 listed monomials form a basis of H*(B(P^3,2))", &table);
    c.nonzero("m3.zeta3", "zeta^3 != 0", &g(m, 3, 0, 0));
    c.vanishes("m3.zeta4", "zeta^4 = 0", &g(m, 4, 0, 0));
    out.append(&mut c.out);
    Ok(())
}

/// Checks the presentations for `m = 1, 2, 3`.
pub fn check_presentations() -> Result<PresentationReport, AlgebraError> {
    let mut checks = Vec::new();
    check_m1(&mut checks)?;
    check_m2(&mut checks)?;
    check_m3(&mut checks)?;
    Ok(PresentationReport { checks })
}
