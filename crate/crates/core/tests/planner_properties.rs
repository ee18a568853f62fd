use proptest::prelude::*;

use proptest::strategy::Strategy;
use symtc_core::so3_planner::Strategy as PlanStrategy;
use symtc_core::so3_planner::*;

fn quat() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(-1.0f64..1.0).prop_filter("away from zero", |q| q.iter().map(|x| x * x).sum::<f64>() > 1e-3)
}

fn pair() -> impl Strategy<Value = (Rotation, Rotation)> {
    (quat(), quat())
        .prop_map(|(a, b)| (Rotation::new(a).unwrap(), Rotation::new(b).unwrap()))
        .prop_filter("distinct", |(a, b)| a.distance(b) > 1e-6)
}

fn unit_norm(q: [f64; 4]) -> f64 {
    q.iter().map(|x| x * x).sum::<f64>().sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn h_is_antisymmetric((a, b) in pair()) {
        let (hab, hba) = (haefliger_h(&a, &b).unwrap(), haefliger_h(&b, &a).unwrap());
        for (x, y) in hab.iter().zip(hba) {
            prop_assert!((x + y).abs() < 1e-12);
        }
    }

    #[test]
    fn fallback_contracts((a, b) in pair()) {
        let p = plan(&a, &b, PlanStrategy::Fallback).unwrap();
        let q = plan(&b, &a, PlanStrategy::Fallback).unwrap();
        prop_assert!(p.endpoint_error() < 1e-9);
        prop_assert_eq!(p.rule, q.rule);
        prop_assert!(p.rule < FALLBACK_RULES);
        let ts = sample_parameters(64);
        for k in 0..64 {
            let s = p.sample(ts[k]);
            prop_assert!((unit_norm(s.quat()) - 1.0).abs() < 1e-12);
            prop_assert!(s.distance(&q.sample(ts[63 - k])) < 1e-9);
        }
    }

    #[test]
    fn fallback_ignores_lift_choice((a, b) in pair()) {
        let nb = Rotation::from_unit(b.lift().negated());
        let p = plan(&a, &b, PlanStrategy::Fallback).unwrap();
        let q = plan(&a, &nb, PlanStrategy::Fallback).unwrap();
        prop_assert_eq!(p.rule, q.rule);
        for t in sample_parameters(16) {
            prop_assert!(p.sample(t).distance(&q.sample(t)) < 1e-9);
        }
    }

    #[test]
    fn literal_paths_are_symmetric_and_lift_independent((a, b) in pair()) {
        let p = plan(&a, &b, PlanStrategy::Literal).unwrap();
        let q = plan(&b, &a, PlanStrategy::Literal).unwrap();
        prop_assert_eq!(p.rule, q.rule);
        prop_assert!(p.rule < LITERAL_RULES);
        let ts = sample_parameters(64);
        for k in 0..64 {
            prop_assert!(p.sample(ts[k]).distance(&q.sample(ts[63 - k])) < 1e-9);
        }
        let na = Rotation::from_unit(a.lift().negated());
        let r = plan(&na, &b, PlanStrategy::Literal).unwrap();
        for t in &ts {
            prop_assert!(p.sample(*t).distance(&r.sample(*t)) < 1e-9);
        }
    }

    #[test]
    fn psi_frames_are_orthonormal((a, b) in pair()) {
        let f = psi(&a, &b).unwrap();
        prop_assert!(f.orthogonality_defect() < 1e-12);
        prop_assert!((unit_norm(f.u) - 1.0).abs() < 1e-12);
        prop_assert!((unit_norm(f.v) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn strongest_rule_is_at_least_pigeonhole() {
    let a = Rotation::new([0.3, -0.2, 0.9, 0.1]).unwrap();
    let b = Rotation::new([0.1, 0.8, -0.2, 0.5]).unwrap();
    let best = strongest_rule(&a, &b).unwrap();
    assert!(best.strength >= 1.0 / 5f64.sqrt());
}
