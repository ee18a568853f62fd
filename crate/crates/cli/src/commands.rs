use std::path::Path;

use serde_json::{json, Value};

use symtc_core::borel_ring::BorelElement;
use symtc_core::bpm2_ring::{
    check_presentations, tcs_lower_bound_f2, zeta_height_in, QuotientRing, REFERENCE_F2_BOUNDS,
};
use symtc_core::error::AlgebraError;
use symtc_core::f2linalg::F2Matrix;
use symtc_core::integral_check::{self, b_so3_dataset, parse_groups, Verdict};
use symtc_core::so3_planner::{self, Rotation, Strategy, VerifyConfig};
use symtc_core::PlannerError;

use crate::{envelope, CliError, MRange, Report, Status, DEFAULT_MAX_M};

pub const CITE_RING: &str =
    "H*(B(P^m,2); F2) as the quotient of the Borel-construction ring by ker j*";
pub const CITE_HEIGHT: &str =
    "a nonzero zeta^n in H*(B(P^m,2); F2) gives TC^S(P^m) >= n + 1 (Hopf-type F2 approach)";
pub const CITE_INTEGRAL: &str =
    "integral cohomology of B(SO(3),2) and its classifying map give TC^S(SO(3)) = 5";
pub const CITE_PLANNER: &str =
    "symmetric motion planners are Z/2-equivariant local sections of the end-point map on F(X,2)";
pub const CITE_EMBEDDING: &str = "explicit embedding P^3 -> R^5 and its normalized-difference map";

/// Witness recorded next to the integral bound for `m = 3`.
pub const UPPER_BOUND_WITNESS: &str = "5-rule construction target";

fn algebra_failure(e: AlgebraError) -> CliError {
    CliError { status: Status::CheckFailed, message: format!("internal consistency check failed: {e}") }
}

fn check_m(m: usize, allow_large: bool) -> Result<(), CliError> {
    if m == 0 {
        return Err(CliError::bad_args("m must be at least 1"));
    }
    if m > DEFAULT_MAX_M && !allow_large {
        return Err(CliError::bad_args(format!("m = {m} exceeds {DEFAULT_MAX_M}; pass --allow-large")));
    }
    Ok(())
}

fn matrix_rows(a: &F2Matrix) -> Vec<String> {
    (0..a.row_count())
        .map(|i| (0..a.col_count()).map(|j| if a.get(i, j) { '1' } else { '0' }).collect())
        .collect()
}

fn known_presentation(m: usize) -> Option<(&'static str, Vec<&'static str>)> {
    match m {
        1 => Some(("F2[zeta]", vec!["zeta^2"])),
        2 => Some(("F2[zeta,eta]", vec!["zeta*eta", "zeta^3 + eta^3"])),
        3 => Some((
            "F2[zeta,lambda,eta]",
            vec![
                "zeta*eta",
                "lambda^3",
                "zeta^3 + eta^3",
                "zeta*lambda^2 + lambda^2*eta",
                "zeta^2*lambda + lambda^2 + lambda*eta^2",
            ],
        )),
        _ => None,
    }
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8 input")
}

pub fn ring(m: usize, max_degree: Option<usize>, allow_large: bool) -> Result<Report, CliError> {
    check_m(m, allow_large)?;
    let max_degree = max_degree.unwrap_or(2 * m);
    let ring = QuotientRing::build(m, max_degree).map_err(algebra_failure)?;
    let name = |mono| BorelElement::from_monomial(m, mono).to_string();

    let mut degrees = Vec::new();
    let mut text = format!("H*(B(P^{m},2); F2), degrees 0..={max_degree}\n");
    let mut rows = Vec::new();
    for d in 0..=max_degree {
        let basis: Vec<String> = ring.basis(d).map_err(algebra_failure)?.into_iter().map(name).collect();
        let sq1 = ring.sq1_matrix(d).ok().map(|a| matrix_rows(&a));
        text.push_str(&format!("  H^{d}: dim {}  [{}]\n", basis.len(), basis.join(", ")));
        rows.push(vec![d.to_string(), basis.len().to_string(), basis.join(" ; ")]);
        degrees.push(json!({
            "degree": d,
            "dim": basis.len(),
            "borel_dim": ring.borel_dim(d).map_err(algebra_failure)?,
            "kernel_dim": ring.kernel_dim(d).map_err(algebra_failure)?,
            "basis": basis,
            "sq1_matrix": sq1,
        }));
    }
    let height = if max_degree + 1 >= 2 * m { Some(zeta_height_in(&ring).map_err(algebra_failure)?) } else { None };
    let presentation = known_presentation(m).map(|(gens, rels)| {
        let verified = check_presentations()
            .map(|r| r.checks.iter().filter(|c| c.m == m).all(|c| c.passed))
            .unwrap_or(false);
        text.push_str(&format!("  presentation: {gens}/({})\n", rels.join(", ")));
        json!({ "generators": gens, "relations": rels, "verified": verified })
    });
    if let Some(h) = height {
        text.push_str(&format!("  height of zeta: {h}, TC^S(P^{m}) >= {}\n", h + 1));
    }
    let table: Vec<Value> = ring
        .multiplication_table()
        .into_iter()
        .map(|e| json!({ "left": e.left, "right": e.right, "product": e.product }))
        .collect();
    let result = json!({
        "m": m,
        "max_degree": max_degree,
        "dims": ring.dims(),
        "degrees": degrees,
        "multiplication_table": table,
        "zeta_height": height,
        "tcs_lower_bound": height.map(|h| h + 1),
        "presentation": presentation,
    });
    let config = json!({ "m": m, "max_degree": max_degree });
    Ok(Report {
        command: "ring",
        document: envelope("ring", config, &[CITE_RING], result),
        text,
        csv: Some(csv_string(&["degree", "dim", "basis"], &rows)),
        warnings: Vec::new(),
        status: Status::Ok,
    })
}

/// The `m = 3` integral row: the bound stored with the dataset, reported
/// only alongside the outcome of checking that dataset.
fn integral_row() -> Result<Value, CliError> {
    let data = b_so3_dataset();
    let report = integral_check::check(data.m, &data.groups).map_err(algebra_failure)?;
    let fact = data.verified_metadata.as_ref();
    Ok(json!({
        "bound": fact.filter(|_| report.verdict == Verdict::Pass).map(|f| f.integral_tcs_lower_bound),
        "source": "dataset-derived",
        "dataset_verdict": report.verdict,
        "statement": fact.map(|f| f.statement.clone()),
        "provenance": data.provenance,
        "upper_bound_witness": UPPER_BOUND_WITNESS,
    }))
}

pub fn bounds(range: MRange, allow_large: bool) -> Result<Report, CliError> {
    if !range.is_empty() {
        check_m(range.start, allow_large)?;
        check_m(range.end, allow_large)?;
    }
    let mut rows = Vec::new();
    let mut csv_rows = Vec::new();
    let mut text = String::from("m  height  F2 bound  reference  integral\n");
    for m in range.values() {
        let b = tcs_lower_bound_f2(m).map_err(algebra_failure)?;
        let integral = if m == 3 { Some(integral_row()?) } else { None };
        let integral_bound = integral.as_ref().and_then(|v| v["bound"].as_u64());
        let fmt_opt = |x: Option<String>| x.unwrap_or_else(|| "-".to_string());
        text.push_str(&format!(
            "{:<2} {:>6}  {:>8}  {:>9}  {:>8}\n",
            m,
            b.zeta_height,
            b.tcs_lower_bound,
            fmt_opt(b.reference_bound.map(|r| r.to_string())),
            fmt_opt(integral_bound.map(|r| format!("{r} (dataset)"))),
        ));
        csv_rows.push(vec![
            m.to_string(),
            b.zeta_height.to_string(),
            b.tcs_lower_bound.to_string(),
            b.reference_bound.map(|r| r.to_string()).unwrap_or_default(),
            b.matches_reference.map(|r| r.to_string()).unwrap_or_default(),
            integral_bound.map(|r| r.to_string()).unwrap_or_default(),
            if integral.is_some() { UPPER_BOUND_WITNESS.to_string() } else { String::new() },
        ]);
        rows.push(json!({
            "m": m,
            "zeta_height": b.zeta_height,
            "f2_bound": b.tcs_lower_bound,
            "reference_f2_bound": b.reference_bound,
            "matches_reference": b.matches_reference,
            "dims": b.dims,
            "integral": integral,
        }));
    }
    if rows.iter().any(|r| r["integral"].is_object()) {
        text.push_str(&format!("m = 3 upper bound witness: {UPPER_BOUND_WITNESS}\n"));
    }
    let config = json!({
        "range": [range.start, range.end],
        "allow_large": allow_large,
        "reference_f2_bounds": REFERENCE_F2_BOUNDS,
    });
    Ok(Report {
        command: "bounds",
        document: envelope("bounds", config, &[CITE_HEIGHT, CITE_INTEGRAL], json!({ "rows": rows })),
        text,
        csv: Some(csv_string(
            &[
                "m",
                "zeta_height",
                "f2_bound",
                "reference_f2_bound",
                "matches_reference",
                "integral_bound",
                "upper_bound_witness",
            ],
            &csv_rows,
        )),
        warnings: Vec::new(),
        status: Status::Ok,
    })
}

fn planner_failure(e: PlannerError) -> CliError {
    match e {
        PlannerError::CoincidentStates { .. } => CliError { status: Status::CoincidentStates, message: e.to_string() },
        PlannerError::InvalidQuaternion(_) => CliError::bad_args(e.to_string()),
        _ => CliError { status: Status::CheckFailed, message: e.to_string() },
    }
}

fn rotation_arg(label: &str, q: [f64; 4], warnings: &mut Vec<String>) -> Result<Rotation, CliError> {
    let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let r = Rotation::new(q).map_err(planner_failure)?;
    if (norm - 1.0).abs() > 1e-6 {
        warnings.push(format!("--{label} has norm {norm}; normalized to {r}"));
    }
    Ok(r)
}

pub fn plan(from: [f64; 4], to: [f64; 4], strategy: Strategy, samples: usize) -> Result<Report, CliError> {
    if samples < 2 {
        return Err(CliError::bad_args("--samples must be at least 2"));
    }
    let mut warnings = Vec::new();
    let a = rotation_arg("from", from, &mut warnings)?;
    let b = rotation_arg("to", to, &mut warnings)?;
    let path = so3_planner::plan(&a, &b, strategy).map_err(planner_failure)?;
    let export = path.export(samples);
    let residual = path.endpoint_error();
    let mut text = format!(
        "strategy {strategy}, rule {}, endpoint residual {residual:e}, endpoint set match {}\n",
        path.rule, path.endpoint_set_match
    );
    for (t, q) in so3_planner::sample_parameters(samples).iter().zip(&export.samples) {
        text.push_str(&format!("{t:.6}  {:.9} {:.9} {:.9} {:.9}\n", q[0], q[1], q[2], q[3]));
    }
    let config = json!({ "from": from, "to": to, "strategy": strategy, "samples": samples });
    let result = json!({
        "rule": path.rule,
        "strategy": strategy,
        "endpoint_residual": residual,
        "endpoint_set_match": path.endpoint_set_match,
        "path": export,
    });
    Ok(Report {
        command: "plan",
        document: envelope("plan", config, &[CITE_PLANNER, CITE_EMBEDDING], result),
        text,
        csv: Some(export.to_csv()),
        warnings,
        status: Status::Ok,
    })
}

pub fn verify_planner(
    trials: usize,
    seed: u64,
    strategy: Strategy,
    samples: usize,
    lipschitz: f64,
    tolerance: f64,
) -> Result<Report, CliError> {
    if trials == 0 {
        return Err(CliError::bad_args("--trials must be at least 1"));
    }
    if samples < 2 {
        return Err(CliError::bad_args("--samples must be at least 2"));
    }
    if !(lipschitz > 0.0 && tolerance > 0.0) {
        return Err(CliError::bad_args("--lipschitz and --tolerance must be positive"));
    }
    let config = VerifyConfig {
        trials,
        seed,
        strategy,
        samples,
        lipschitz_threshold: lipschitz,
        tolerance,
        ..VerifyConfig::default()
    };
    let report = so3_planner::verify_planner(&config);
    let c = &report.contracts;
    let endpoints = match c.endpoints {
        Some(ok) => ok.to_string(),
        None => "measured only".to_string(),
    };
    let text = format!(
        "strategy {strategy}, {trials} trials, seed {seed}\n\
         coverage {:.6}\n\
         endpoint error max {:e} (contract: {endpoints})\n\
         endpoint set match rate {:.6}\n\
         symmetry deviation max {:e} ({})\n\
         swap invariance rate {:.6}\n\
         rules used {} of {} {:?}\n\
         continuity max ratio {:.3} over {} probes, {} skipped at domain changes ({})\n\
         contracts hold: {}\n",
        report.coverage_rate,
        report.endpoint_error_max,
        report.endpoint_pass_rate,
        report.symmetry_deviation_max,
        c.symmetry,
        report.swap_invariance_rate,
        report.distinct_rules,
        report.max_rules,
        report.rule_histogram,
        report.continuity.max_ratio,
        report.continuity.probes,
        report.continuity.skipped_domain_change,
        c.continuity,
        report.contracts_hold,
    );
    let csv_rows: Vec<Vec<String>> = report
        .rule_histogram
        .iter()
        .enumerate()
        .map(|(i, n)| vec![i.to_string(), n.to_string()])
        .collect();
    let status = if report.contracts_hold { Status::Ok } else { Status::CheckFailed };
    let config_echo = serde_json::to_value(&config).expect("config serializes");
    Ok(Report {
        command: "verify-planner",
        document: envelope(
            "verify-planner",
            config_echo,
            &[CITE_PLANNER],
            serde_json::to_value(&report).expect("report serializes"),
        ),
        text,
        csv: Some(csv_string(&["rule", "count"], &csv_rows)),
        warnings: Vec::new(),
        status,
    })
}

pub fn integral_check(m: usize, dataset: Option<&Path>) -> Result<Report, CliError> {
    check_m(m, false)?;
    let (groups, source) = match dataset {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::bad_args(format!("cannot read {}: {e}", path.display())))?;
            (parse_groups(&text).map_err(|e| CliError::bad_args(e.to_string()))?, path.display().to_string())
        }
        None if m == 3 => (b_so3_dataset().groups, "bundled B(SO(3),2) dataset".to_string()),
        None => return Err(CliError::bad_args("no bundled dataset for this m; pass --dataset")),
    };
    let report = integral_check::check(m, &groups).map_err(algebra_failure)?;
    let mut text = format!("m = {m}, groups from {source}: {:?}\n", report.verdict);
    for (name, list) in [("mod-2 dims", &report.mod2_dim_match), ("first Bockstein page", &report.bockstein_e2_match)] {
        let expected: Vec<usize> = list.iter().map(|c| c.expected).collect();
        let computed: Vec<usize> = list.iter().map(|c| c.computed).collect();
        text.push_str(&format!("  {name}: predicted {expected:?}, computed {computed:?}\n"));
    }
    let csv_rows: Vec<Vec<String>> = report
        .mod2_dim_match
        .iter()
        .zip(&report.bockstein_e2_match)
        .map(|(a, b)| {
            vec![
                a.degree.to_string(),
                a.expected.to_string(),
                a.computed.to_string(),
                b.expected.to_string(),
                b.computed.to_string(),
            ]
        })
        .collect();
    let status = if report.verdict == Verdict::Fail { Status::CheckFailed } else { Status::Ok };
    let config = json!({ "m": m, "dataset": source });
    Ok(Report {
        command: "integral-check",
        document: envelope(
            "integral-check",
            config,
            &[CITE_INTEGRAL, CITE_RING],
            serde_json::to_value(&report).expect("report serializes"),
        ),
        text,
        csv: Some(csv_string(
            &["degree", "mod2_predicted", "mod2_computed", "bockstein_predicted", "bockstein_computed"],
            &csv_rows,
        )),
        warnings: Vec::new(),
        status,
    })
}
