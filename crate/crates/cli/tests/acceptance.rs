//! One line per acceptance criterion, each at its pinned tolerance.

use std::time::{Duration, Instant};

use symtc_cli::{commands, MRange, Status};
use symtc_core::borel_ring::{
    delta_star, phi, q_polynomial_formal, r1, solves_kernel_system, BorelElement, LambdaEtaPoly,
    ProdInfinityElement,
};
use symtc_core::bpm2_ring::{
    check_presentations, sq1_cohomology_dims, tcs_lower_bound_f2, QuotientRing, REFERENCE_F2_BOUNDS,
};
use symtc_core::integral_check::{b_so3_dataset, check, single_summand_mutations, Verdict};
use symtc_core::so3_planner::{verify_planner, Strategy, VerifyConfig};

/// Criteria that cannot be met as written; the reason is printed with the
/// FAIL line.
const KNOWN_RED: &[u32] = &[8];

struct Outcome {
    id: u32,
    name: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
}

fn criterion(id: u32, name: &'static str, f: impl FnOnce() -> Result<String, String>) -> Outcome {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    println!(
        "{} C{id:<2} {name}: {detail} [{:.3} s]",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    Outcome { id, name, passed, detail, elapsed }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: f64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit, || format!("took {:.3} s, limit {limit} s", elapsed.as_secs_f64()))
}

fn presentation_group(prefix: &str) -> Result<usize, String> {
    let report = check_presentations().map_err(|e| e.to_string())?;
    let group: Vec<_> = report.checks.iter().filter(|c| c.id.starts_with(prefix)).collect();
    ensure(!group.is_empty(), || format!("no checks under {prefix}"))?;
    for c in &group {
        ensure(c.passed, || format!("{} failed: {}", c.id, c.detail))?;
    }
    Ok(group.len())
}

fn c1() -> Result<String, String> {
    let start = Instant::now();
    let ring = QuotientRing::full(3).map_err(|e| e.to_string())?;
    let dims: Vec<usize> = (0..6).map(|d| ring.dim(d).unwrap()).collect();
    ensure(dims == [1, 2, 3, 3, 2, 1], || format!("dims {dims:?}"))?;
    let n = presentation_group("m3.")?;
    within(start.elapsed(), 1.0)?;
    Ok(format!("dims {dims:?}, {n} basis/relation checks hold"))
}

fn c2() -> Result<String, String> {
    let start = Instant::now();
    let n = presentation_group("m2.")?;
    within(start.elapsed(), 1.0)?;
    Ok(format!("{n} presentation and mu checks hold"))
}

fn c3() -> Result<String, String> {
    let table = [
        (3, LambdaEtaPoly::from_terms(&[(1, 1)])),
        (5, LambdaEtaPoly::from_terms(&[(1, 3), (2, 1)])),
        (6, LambdaEtaPoly::from_terms(&[(2, 2)])),
        (7, LambdaEtaPoly::from_terms(&[(1, 5), (3, 1)])),
        (0, LambdaEtaPoly::zero()),
        (1, LambdaEtaPoly::zero()),
        (2, LambdaEtaPoly::zero()),
        (4, LambdaEtaPoly::zero()),
        (8, LambdaEtaPoly::zero()),
    ];
    for (i, expected) in &table {
        let q = q_polynomial_formal(*i);
        ensure(&q == expected, || format!("Q_{i} = {q}, expected {expected}"))?;
    }
    Ok("Q_3, Q_5, Q_6, Q_7 and the five vanishing Q_i match".into())
}

fn c4() -> Result<String, String> {
    let bounds: Vec<usize> =
        (1..=8).map(|m| tcs_lower_bound_f2(m).map(|b| b.tcs_lower_bound)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    ensure(bounds == REFERENCE_F2_BOUNDS, || format!("bounds {bounds:?}"))?;
    for e in [2u32, 3] {
        let n = 1usize << (e + 1);
        for eps in 1..=3 {
            let m = (1usize << e) + eps;
            let ring = QuotientRing::full(m).map_err(|e| e.to_string())?;
            let z = BorelElement::zeta(m);
            ensure(ring.is_zero_element(&z.pow(n)).map_err(|e| e.to_string())?, || format!("m = {m}: zeta^{n} != 0"))?;
        }
    }
    Ok(format!("F2 bounds {bounds:?}; zeta^8 = 0 for m = 5,6,7 and zeta^16 = 0 for m = 9,10,11"))
}

fn c5() -> Result<String, String> {
    let mut cases = Vec::new();
    for e in [2u32, 3] {
        let plus_two = (1 << e) + 2;
        let mut terms = Vec::new();
        for k in 0..(1usize << (e - 2)) {
            terms.push(((1 << e) - 4 * k - 2, 4 * k));
            terms.push(((1 << e) - 4 * k - 3, 4 * k + 1));
        }
        cases.push((plus_two, e, ProdInfinityElement::from_terms(plus_two, &terms)));
        let plus_three = (1 << e) + 3;
        let terms: Vec<_> = (0..(1usize << (e - 2))).map(|k| ((1 << e) - 4 * k - 3, 4 * k)).collect();
        cases.push((plus_three, e, ProdInfinityElement::from_terms(plus_three, &terms)));
    }
    for (m, e, b) in &cases {
        let a = BorelElement::zeta(*m).pow(1 << (e + 1));
        ensure(delta_star(&a) == phi(b), || format!("m = {m}: Delta*(a) != phi(b)"))?;
        ensure(r1(b).is_zero(), || format!("m = {m}: r1(b) != 0"))?;
        ensure(solves_kernel_system(&a, b), || format!("m = {m}: kernel system"))?;
    }
    Ok("both conditions hold for m = 6, 7, 10, 11".into())
}

fn c6() -> Result<String, String> {
    let m = 3;
    let ring = QuotientRing::full(m).map_err(|e| e.to_string())?;
    let (z, l, e) = (BorelElement::zeta(m), BorelElement::lambda(m), BorelElement::eta(m));
    let c = |x: &BorelElement| ring.class_of(x).map_err(|e| e.to_string());
    let sq = |x: &BorelElement| ring.sq1(&c(x)?).map_err(|e| e.to_string());
    ensure(sq(&z)? == c(&z.pow(2))?, || "Sq1 zeta".into())?;
    ensure(sq(&e)? == c(&e.pow(2))?, || "Sq1 eta".into())?;
    ensure(sq(&l)? == c(&(&l * &(&z + &e)))?, || "Sq1 lambda".into())?;
    let h = sq1_cohomology_dims(3).map_err(|e| e.to_string())?;
    let nonzero: Vec<(usize, usize)> = h.iter().copied().enumerate().filter(|&(_, d)| d > 0).collect();
    ensure(nonzero == [(0, 1), (3, 2), (4, 1)], || format!("Sq1 cohomology {nonzero:?}"))?;
    let mut pairs = 0usize;
    for m in 1..=6 {
        let ring = QuotientRing::full(m).map_err(|e| e.to_string())?;
        for d1 in 0..2 * m {
            for i in 0..ring.dim(d1).unwrap() {
                let x = ring.basis_class(d1, i).unwrap();
                let sx = ring.sq1(&x).unwrap();
                ensure(ring.sq1(&sx).unwrap().is_zero(), || format!("m = {m}: Sq1 Sq1 on ({d1},{i})"))?;
                for d2 in 0..2 * m - d1 {
                    for j in 0..ring.dim(d2).unwrap() {
                        let y = ring.basis_class(d2, j).unwrap();
                        let lhs = ring.sq1(&ring.mul(&x, &y).unwrap()).unwrap();
                        let rhs = ring
                            .add(&ring.mul(&sx, &y).unwrap(), &ring.mul(&x, &ring.sq1(&y).unwrap()).unwrap())
                            .unwrap();
                        ensure(lhs == rhs, || format!("m = {m}: derivation fails on ({d1},{i}) ({d2},{j})"))?;
                        pairs += 1;
                    }
                }
            }
        }
    }
    Ok(format!("generators and {{0:1, 3:2, 4:1}} match; Sq1 Sq1 = 0 and Leibniz on {pairs} basis pairs, m <= 6"))
}

fn c7() -> Result<String, String> {
    for m in 1..=8 {
        let ring = QuotientRing::build(m, 2 * m + 3).map_err(|e| e.to_string())?;
        let dims: Vec<usize> = (0..=2 * m + 3).map(|d| ring.dim(d).unwrap()).collect();
        let head = &dims[..2 * m];
        ensure(head.iter().eq(head.iter().rev()), || format!("m = {m}: {head:?} is not palindromic"))?;
        ensure(dims[2 * m..].iter().all(|&d| d == 0), || format!("m = {m}: nonzero past degree 2m - 1"))?;
    }
    Ok("palindromic on 0..2m-1 and zero from 2m, m <= 8".into())
}

fn c8() -> Result<String, String> {
    let d = b_so3_dataset();
    let base = check(d.m, &d.groups).map_err(|e| e.to_string())?;
    ensure(base.verdict == Verdict::Pass, || format!("dataset verdict {:?}", base.verdict))?;
    let mutations = single_summand_mutations(&d.groups, 2 * d.m);
    let mut not_failing = Vec::new();
    let mut split_fails = false;
    for mutation in &mutations {
        let report = check(d.m, &mutation.groups).map_err(|e| e.to_string())?;
        if mutation.id == "H4: Z/4 -> (Z/2)^2" {
            split_fails = report.verdict == Verdict::Fail;
        }
        if report.verdict != Verdict::Fail {
            not_failing.push(format!("{} ({:?})", mutation.id, report.verdict));
        }
    }
    ensure(split_fails, || "Z/4 -> (Z/2)^2 is not rejected".into())?;
    let summary = format!(
        "dataset passes; Z/4 -> (Z/2)^2 fails; {} of {} mutations fail",
        mutations.len() - not_failing.len(),
        mutations.len()
    );
    ensure(not_failing.is_empty(), || {
        format!(
            "{summary}; not failing: {}. Z/4 and Z/8 agree on every mod-2 and first-Bockstein comparison, \
             so no check at this depth can reject the change",
            not_failing.join(", ")
        )
    })?;
    Ok(summary)
}

fn c9() -> Result<String, String> {
    let start = Instant::now();
    let config = VerifyConfig { trials: 100_000, strategy: Strategy::Fallback, ..VerifyConfig::default() };
    let report = verify_planner(&config);
    let elapsed = start.elapsed();
    ensure(report.covered == report.trials, || format!("coverage {}/{}", report.covered, report.trials))?;
    ensure(report.endpoint_error_max < 1e-9, || format!("endpoint error {:e}", report.endpoint_error_max))?;
    ensure(report.symmetry_deviation_max < 1e-9, || format!("symmetry {:e}", report.symmetry_deviation_max))?;
    ensure(report.swap_invariant == report.trials, || format!("swap invariance {}", report.swap_invariance_rate))?;
    ensure(report.distinct_rules <= 10, || format!("{} rules", report.distinct_rules))?;
    within(elapsed, 30.0)?;
    let first = serde_json::to_string(&report).map_err(|e| e.to_string())?;
    let second = serde_json::to_string(&verify_planner(&config)).map_err(|e| e.to_string())?;
    ensure(first == second, || "re-run differs".into())?;
    Ok(format!(
        "1e5 pairs, endpoint {:.1e}, symmetry {:.1e}, {} rules, re-run identical, {:.2} s",
        report.endpoint_error_max,
        report.symmetry_deviation_max,
        report.distinct_rules,
        elapsed.as_secs_f64()
    ))
}

fn c10() -> Result<String, String> {
    let config = VerifyConfig { trials: 10_000, strategy: Strategy::Literal, ..VerifyConfig::default() };
    let report = verify_planner(&config);
    ensure(report.covered == report.trials, || format!("coverage {}/{}", report.covered, report.trials))?;
    ensure(report.symmetry_deviation_max < 1e-9, || format!("symmetry {:e}", report.symmetry_deviation_max))?;
    let c = &report.continuity;
    ensure(c.max_ratio <= c.threshold, || format!("continuity ratio {} > {}", c.max_ratio, c.threshold))?;
    Ok(format!(
        "symmetry {:.1e}, continuity ratio {:.1} <= {}, endpoint-match rate {} (measured)",
        report.symmetry_deviation_max, c.max_ratio, c.threshold, report.endpoint_pass_rate
    ))
}

fn c11() -> Result<String, String> {
    let report = commands::bounds(MRange { start: 3, end: 3 }, false).map_err(|e| e.to_string())?;
    ensure(report.status == Status::Ok, || format!("status {:?}", report.status))?;
    let row = &report.result()["rows"][0];
    ensure(row["f2_bound"] == 4, || format!("F2 bound {}", row["f2_bound"]))?;
    ensure(row["integral"]["bound"] == 5, || format!("integral bound {}", row["integral"]["bound"]))?;
    let witness = &row["integral"]["upper_bound_witness"];
    ensure(witness == "5-rule construction target", || format!("witness {witness}"))?;
    Ok("F2 bound 4, integral bound 5, witness \"5-rule construction target\"".into())
}

#[test]
fn acceptance() {
    let outcomes = [
        criterion(1, "ring m=3", c1),
        criterion(2, "ring m=2", c2),
        criterion(3, "Q table", c3),
        criterion(4, "heights and F2 bounds", c4),
        criterion(5, "family preimages", c5),
        criterion(6, "Sq1 suite", c6),
        criterion(7, "Poincare duality", c7),
        criterion(8, "integral consistency", c8),
        criterion(9, "fallback planner contracts", c9),
        criterion(10, "literal planner measurement", c10),
        criterion(11, "SO(3) bounds narrative", c11),
    ];
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("{passed}/{} criteria pass", outcomes.len());
    let unexpected: Vec<String> = outcomes
        .iter()
        .filter(|o| o.passed == KNOWN_RED.contains(&o.id))
        .map(|o| format!("C{} {} ({}, {:?})", o.id, o.name, o.detail, o.elapsed))
        .collect();
    assert!(unexpected.is_empty(), "criteria off their recorded state: {unexpected:#?}");
}
