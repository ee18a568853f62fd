use serde::{Deserialize, Serialize};

use super::quaternion::{ensure_distinct, Rotation};
use crate::error::PlannerError;

pub const EMBEDDING_DIM: usize = 5;

/// Number of local rules of the chart planner, one per coordinate of `H`.
pub const LITERAL_RULES: usize = EMBEDDING_DIM;

/// A point of `R⁵ = C × C × R`, laid out as
/// `(Re z0², Im z0², Re z1², Im z1², Re(z0 z1))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddedPoint(pub [f64; EMBEDDING_DIM]);

impl EmbeddedPoint {
    pub fn coords(&self) -> [f64; EMBEDDING_DIM] {
        self.0
    }

    pub fn distance(&self, other: &EmbeddedPoint) -> f64 {
        self.0.iter().zip(&other.0).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
    }
}

/// `√(1 − |z0 z1|²) − Im(z0 z1)`, bounded below by `√3/2 − 1/2`.
fn denominator(q: &[f64; 4]) -> f64 {
    let [q0, q1, q2, q3] = *q;
    let im_z0z1 = q0 * q3 + q1 * q2;
    let abs2 = (q0 * q0 + q1 * q1) * (q2 * q2 + q3 * q3);
    (1.0 - abs2).sqrt() - im_z0z1
}

/// The embedding `P³ → R⁵`.
pub fn embed_f(r: &Rotation) -> EmbeddedPoint {
    let q = r.quat();
    let [q0, q1, q2, q3] = q;
    let d = denominator(&q);
    EmbeddedPoint([
        (q0 * q0 - q1 * q1) / d,
        2.0 * q0 * q1 / d,
        (q2 * q2 - q3 * q3) / d,
        2.0 * q2 * q3 / d,
        (q0 * q2 - q1 * q3) / d,
    ])
}

/// Normalized difference `(f(a) − f(b)) / ‖f(a) − f(b)‖`.
pub fn haefliger_h(a: &Rotation, b: &Rotation) -> Result<[f64; EMBEDDING_DIM], PlannerError> {
    ensure_distinct(a, b)?;
    let (fa, fb) = (embed_f(a).0, embed_f(b).0);
    let diff: Vec<f64> = fa.iter().zip(&fb).map(|(x, y)| x - y).collect();
    let n = diff.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n == 0.0 || !n.is_finite() {
        return Err(PlannerError::DegenerateEmbedding);
    }
    let mut h = [0.0; EMBEDDING_DIM];
    for (slot, x) in h.iter_mut().zip(diff) {
        *slot = x / n;
    }
    Ok(h)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApplicableRule {
    pub index: usize,
    pub strength: f64,
}

/// Rules `i` with `H_i(a, b) ≠ 0`, in increasing index order.
pub fn applicable_rules(a: &Rotation, b: &Rotation) -> Result<Vec<ApplicableRule>, PlannerError> {
    let h = haefliger_h(a, b)?;
    Ok(h.iter()
        .enumerate()
        .filter(|(_, x)| **x != 0.0)
        .map(|(index, x)| ApplicableRule { index, strength: x.abs() })
        .collect())
}

/// Strongest rule, lowest index on ties.
pub fn strongest_rule(a: &Rotation, b: &Rotation) -> Result<ApplicableRule, PlannerError> {
    let rules = applicable_rules(a, b)?;
    let mut best = *rules.first().ok_or(PlannerError::DegenerateEmbedding)?;
    for r in &rules[1..] {
        if r.strength > best.strength {
            best = *r;
        }
    }
    Ok(best)
}

/// Left side of the chart-0 condition, with both denominators cleared.
/// Its sign is the sign of the first coordinate of `f(a) − f(b)`.
pub fn chart0_condition(a: &Rotation, b: &Rotation) -> f64 {
    let (p, w) = (a.quat(), b.quat());
    let re_z0_sq = p[0] * p[0] - p[1] * p[1];
    let re_w0_sq = w[0] * w[0] - w[1] * w[1];
    denominator(&w) * re_z0_sq - denominator(&p) * re_w0_sq
}

/// Orders the pair so that coordinate `i` of `H(first, second)` is positive.
pub fn sigma_order(i: usize, a: &Rotation, b: &Rotation) -> Result<(Rotation, Rotation), PlannerError> {
    if i >= EMBEDDING_DIM {
        return Err(PlannerError::RuleOutOfRange(i));
    }
    let h = haefliger_h(a, b)?;
    if h[i] > 0.0 {
        Ok((*a, *b))
    } else if h[i] < 0.0 {
        Ok((*b, *a))
    } else {
        Err(PlannerError::RuleNotApplicable { rule: i })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rot(q: [f64; 4]) -> Rotation {
        Rotation::new(q).unwrap()
    }

    #[test]
    fn embedding_of_coordinate_points() {
        assert_eq!(embed_f(&rot([1.0, 0.0, 0.0, 0.0])).0, [1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(embed_f(&rot([0.0, 0.0, 1.0, 0.0])).0, [0.0, 0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn embedding_is_sign_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let r = Rotation::random(&mut rng);
            let neg = Rotation::from_unit(r.lift().negated());
            assert_eq!(embed_f(&r), embed_f(&neg));
        }
    }

    #[test]
    fn h_of_coordinate_points() {
        let h = haefliger_h(&rot([1.0, 0.0, 0.0, 0.0]), &rot([0.0, 0.0, 1.0, 0.0])).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [s, 0.0, -s, 0.0, 0.0];
        for (x, y) in h.iter().zip(expected) {
            assert!((x - y).abs() < 1e-15);
        }
        let rules = applicable_rules(&rot([1.0, 0.0, 0.0, 0.0]), &rot([0.0, 0.0, 1.0, 0.0])).unwrap();
        assert_eq!(rules.iter().map(|r| r.index).collect::<Vec<_>>(), [0, 2]);
        assert!(rules.iter().all(|r| (r.strength - s).abs() < 1e-15));
    }

    #[test]
    fn h_is_antisymmetric_and_unit() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..2000 {
            let (a, b) = (Rotation::random(&mut rng), Rotation::random(&mut rng));
            let (hab, hba) = (haefliger_h(&a, &b).unwrap(), haefliger_h(&b, &a).unwrap());
            let n: f64 = hab.iter().map(|x| x * x).sum();
            assert!((n - 1.0).abs() < 1e-12);
            for (x, y) in hab.iter().zip(hba) {
                assert!((x + y).abs() < 1e-12);
            }
            let best = strongest_rule(&a, &b).unwrap();
            assert!(best.strength >= 5f64.powf(-0.5) - 1e-15);
            assert_eq!(best.index, strongest_rule(&b, &a).unwrap().index);
        }
    }

    #[test]
    fn chart0_condition_matches_first_coordinate() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..1000 {
            let (a, b) = (Rotation::random(&mut rng), Rotation::random(&mut rng));
            let h0 = haefliger_h(&a, &b).unwrap()[0];
            let lhs = chart0_condition(&a, &b);
            if h0.abs() > 1e-9 {
                assert_eq!(h0 > 0.0, lhs > 0.0);
            }
        }
    }

    #[test]
    fn sigma_order_is_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..500 {
            let (a, b) = (Rotation::random(&mut rng), Rotation::random(&mut rng));
            for i in 0..EMBEDDING_DIM {
                let (x, y) = sigma_order(i, &a, &b).unwrap();
                let (x2, y2) = sigma_order(i, &b, &a).unwrap();
                assert_eq!((x, y), (x2, y2));
            }
        }
        let a = rot([1.0, 0.0, 0.0, 0.0]);
        let b = rot([0.0, 0.0, 1.0, 0.0]);
        assert_eq!(sigma_order(0, &a, &b).unwrap(), (a, b));
        assert!(matches!(sigma_order(1, &a, &b), Err(PlannerError::RuleNotApplicable { rule: 1 })));
        assert!(matches!(sigma_order(7, &a, &b), Err(PlannerError::RuleOutOfRange(7))));
    }

    #[test]
    fn coincident_inputs_are_rejected() {
        let a = rot([0.5, 0.5, 0.5, 0.5]);
        let na = Rotation::from_unit(a.lift().negated());
        assert!(matches!(haefliger_h(&a, &na), Err(PlannerError::CoincidentStates { .. })));
    }

    #[test]
    fn embedding_separates_sampled_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..2000 {
            let (a, b) = (Rotation::random(&mut rng), Rotation::random(&mut rng));
            if a.distance(&b) > 1e-6 {
                assert!(embed_f(&a).distance(&embed_f(&b)) > 0.0);
            }
        }
    }
}
