//! Per-instance suite runners producing check records.

use crate::report::{CheckRecord, InstanceReport};
use scheme_atlas::exact::{q_binomial, q_number_signed, q_pow, Rational};
use scheme_atlas::families::{verify_closed_forms, FamilyParams};
use scheme_atlas::leonard::{
    check_am_property, principal_module_from_parts, verify_leonard_pair, AmVerdict,
};
use scheme_atlas::oracle::{
    attenuated_concrete, build_idempotents, krein_by_hadamard, nbj_concrete, ConcreteScheme,
    OracleError, OracleOptions,
};
use scheme_atlas::orthopoly::{
    hahn_degree_one_shift_residual, hahn_recurrence_residual, q_hahn_degree_one_shift_residual,
    q_hahn_recurrence_residual,
};
use scheme_atlas::scheme::{
    check_p_polynomial, check_q_polynomial, intersection_from_spectral, krein_from_spectral,
    tensor_rule_violations, MonomialOrder, SpectralTable, Tensor3,
};

#[derive(Debug)]
pub enum SuiteError {
    Usage(String),
    Guard(String),
}

pub fn instance_report(
    family: Option<String>,
    params: Vec<(String, i64)>,
    checks: Vec<CheckRecord>,
) -> InstanceReport {
    let ok = checks.iter().all(|c| c.ok);
    InstanceReport { family, params, checks, ok }
}

/// Closed-form Krein values against the spectral sums (plus support, order
/// bound, raising coefficients, the grlex Q-polynomial verdict, and the
/// orthogonality/sum-rule sweep over the same table).
pub fn run_krein(params: &FamilyParams) -> Result<Vec<CheckRecord>, SuiteError> {
    let report = verify_closed_forms(params).map_err(|e| SuiteError::Usage(e.to_string()))?;
    let mut checks = run_rules(params)?;
    let push_mismatches = |id: &str, list: &[scheme_atlas::families::KreinMismatch],
                               checks: &mut Vec<CheckRecord>| {
        if list.is_empty() {
            checks.push(CheckRecord::group(id, report.comparisons, true));
        } else {
            for m in list {
                checks.push(CheckRecord::failure(
                    id,
                    format!("axis {} at {} -> {}", m.axis, m.alpha, m.beta),
                    m.closed.to_string(),
                    m.generic.to_string(),
                ));
            }
        }
    };
    push_mismatches("closed form = spectral sum", &report.mismatches, &mut checks);
    push_mismatches("support set", &report.support_violations, &mut checks);
    push_mismatches("grlex bound", &report.order_violations, &mut checks);
    if report.missing_raising.is_empty() {
        checks.push(CheckRecord::group("raising coefficients nonzero", report.comparisons, true));
    } else {
        for m in &report.missing_raising {
            checks.push(CheckRecord::failure(
                "raising coefficients nonzero",
                format!("axis {} at {}", m.axis, m.alpha),
                "nonzero".into(),
                "0".into(),
            ));
        }
    }
    checks.push(CheckRecord {
        id: "q-polynomial (grlex)".into(),
        indices: None,
        expected: Some("true".into()),
        got: Some(report.q_polynomial_grlex.to_string()),
        count: None,
        ok: report.q_polynomial_grlex,
    });
    Ok(checks)
}

fn poly_checks(report: &scheme_atlas::scheme::PolyCheckReport) -> Vec<CheckRecord> {
    let mut checks = vec![
        CheckRecord {
            id: "domain downward closed".into(),
            indices: None,
            expected: Some("true".into()),
            got: Some(report.downward_closed.to_string()),
            count: None,
            ok: report.downward_closed,
        },
        CheckRecord {
            id: "generators present".into(),
            indices: None,
            expected: Some("true".into()),
            got: Some(report.all_generators_present.to_string()),
            count: None,
            ok: report.all_generators_present,
        },
    ];
    if report.support_violations.is_empty() {
        checks.push(CheckRecord::group("support bounded by the order", 1, true));
    } else {
        for v in &report.support_violations {
            checks.push(CheckRecord::failure(
                "support bounded by the order",
                format!("axis {} at {} -> {}", v.axis, v.alpha, v.beta),
                "0 or below the bound".into(),
                v.value.to_string(),
            ));
        }
    }
    if report.missing_raising.is_empty() {
        checks.push(CheckRecord::group("raising coefficients nonzero", 1, true));
    } else {
        for v in &report.missing_raising {
            checks.push(CheckRecord::failure(
                "raising coefficients nonzero",
                format!("axis {} at {}", v.axis, v.alpha),
                "nonzero".into(),
                "0".into(),
            ));
        }
    }
    checks
}

pub fn run_qpoly(params: &FamilyParams, order: MonomialOrder) -> Result<Vec<CheckRecord>, SuiteError> {
    let t = params.table().map_err(|e| SuiteError::Usage(e.to_string()))?;
    let krein = Tensor3::krein(&t);
    Ok(poly_checks(&check_q_polynomial(&t, order, &krein)))
}

pub fn run_ppoly(params: &FamilyParams, order: MonomialOrder) -> Result<Vec<CheckRecord>, SuiteError> {
    let t = params.table().map_err(|e| SuiteError::Usage(e.to_string()))?;
    let inter = Tensor3::intersection(&t);
    Ok(poly_checks(&check_p_polynomial(&t, order, &inter)))
}

pub fn concrete_for(
    params: &FamilyParams,
    opts: OracleOptions,
) -> Result<ConcreteScheme, SuiteError> {
    let result = match *params {
        FamilyParams::NonbinaryJohnson { r, n, k } => nbj_concrete(r, n, k, opts),
        FamilyParams::Attenuated { n, m, l, q } => attenuated_concrete(n, m, l, q, opts),
        _ => {
            return Err(SuiteError::Usage(
                "the oracle builds nonbinary Johnson and attenuated instances only".into(),
            ))
        }
    };
    result.map_err(|e| match e {
        OracleError::TooLarge { .. } => SuiteError::Guard(e.to_string()),
        other => SuiteError::Usage(other.to_string()),
    })
}

/// Full matrix-level ground truth for one instance.
pub fn run_oracle(
    params: &FamilyParams,
    opts: OracleOptions,
) -> Result<Vec<CheckRecord>, SuiteError> {
    let t = params.table().map_err(|e| SuiteError::Usage(e.to_string()))?;
    let mut checks = Vec::new();
    let s = concrete_for(params, opts)?;
    checks.push(CheckRecord::group("axioms and relation domain", s.size * s.size, true));
    let n_classes = s.domain.len();
    // row sums equal the valencies
    let mut row_fail = false;
    for pos in 0..n_classes {
        for x in 0..s.size {
            if scheme_atlas::BigInt::from(s.neighbors(pos, x).len()) != t.valencies[pos] {
                checks.push(CheckRecord::failure(
                    "row sums = valencies",
                    format!("class {} row {x}", s.domain.index(pos)),
                    t.valencies[pos].to_string(),
                    s.neighbors(pos, x).len().to_string(),
                ));
                row_fail = true;
            }
        }
    }
    if !row_fail {
        checks.push(CheckRecord::group("row sums = valencies", n_classes * s.size, true));
    }
    // triple counts against the dual spectral sums
    let mut triple_fail = false;
    for i in 0..n_classes {
        for j in 0..n_classes {
            for k in 0..n_classes {
                let spectral = intersection_from_spectral(&t, i, j, k);
                if s.intersection.at(i, j, k) != &spectral {
                    triple_fail = true;
                    checks.push(CheckRecord::failure(
                        "triple counts = spectral intersection numbers",
                        format!(
                            "p^{}_{{{},{}}}",
                            s.domain.index(k),
                            s.domain.index(i),
                            s.domain.index(j)
                        ),
                        spectral.to_string(),
                        s.intersection.at(i, j, k).to_string(),
                    ));
                }
            }
        }
    }
    if !triple_fail {
        checks.push(CheckRecord::group(
            "triple counts = spectral intersection numbers",
            n_classes.pow(3),
            true,
        ));
    }
    // idempotent identities (all five plus A E = P E and the traces)
    match build_idempotents(&s, &t) {
        Ok(idem) => {
            checks.push(CheckRecord::group("idempotent matrix identities", n_classes * n_classes, true));
            match krein_by_hadamard(&s, &t, &idem) {
                Ok(tensor) => {
                    let mut fail = false;
                    for i in 0..n_classes {
                        for j in 0..n_classes {
                            for k in 0..n_classes {
                                let spectral = krein_from_spectral(&t, i, j, k);
                                if tensor.at(i, j, k) != &spectral {
                                    fail = true;
                                    checks.push(CheckRecord::failure(
                                        "Hadamard Krein = spectral Krein",
                                        format!(
                                            "q^{}_{{{},{}}}",
                                            s.domain.index(k),
                                            s.domain.index(i),
                                            s.domain.index(j)
                                        ),
                                        spectral.to_string(),
                                        tensor.at(i, j, k).to_string(),
                                    ));
                                }
                            }
                        }
                    }
                    if !fail {
                        checks.push(CheckRecord::group(
                            "Hadamard Krein = spectral Krein",
                            n_classes.pow(3),
                            true,
                        ));
                    }
                }
                Err(e) => checks.push(CheckRecord::failure(
                    "Hadamard Krein = spectral Krein",
                    String::new(),
                    "consistent expansion".into(),
                    e.to_string(),
                )),
            }
        }
        Err(e) => checks.push(CheckRecord::failure(
            "idempotent matrix identities",
            String::new(),
            "all identities hold".into(),
            e.to_string(),
        )),
    }
    Ok(checks)
}

/// The simplex-domain property and the Leonard-pair conditions on the
/// principal module at the requested base points.
pub fn run_leonard(
    params: &FamilyParams,
    opts: OracleOptions,
    base_points: &[usize],
) -> Result<Vec<CheckRecord>, SuiteError> {
    let t = params.table().map_err(|e| SuiteError::Usage(e.to_string()))?;
    let s = concrete_for(params, opts)?;
    let krein = Tensor3::krein(&t);
    let inter = Tensor3::intersection(&t);
    let mut checks = Vec::new();
    let am = check_am_property(&t, &inter, &krein, &MonomialOrder::ALL);
    checks.push(CheckRecord {
        id: "simplex-domain P- and Q-polynomial with adjacency support".into(),
        indices: Some(format!(
            "simplex degree {:?}; P orders {:?}; Q orders {:?}",
            am.simplex_degree, am.p_poly_orders, am.q_poly_orders
        )),
        expected: Some("holds".into()),
        got: Some(format!("{:?}", am.verdict)),
        count: None,
        ok: am.verdict == AmVerdict::Holds,
    });
    let idem = match build_idempotents(&s, &t) {
        Ok(i) => i,
        Err(e) => {
            checks.push(CheckRecord::failure(
                "idempotent matrix identities",
                String::new(),
                "all identities hold".into(),
                e.to_string(),
            ));
            return Ok(checks);
        }
    };
    for &x0 in base_points {
        match principal_module_from_parts(&s, &t, &idem, x0) {
            Ok(pm) => {
                checks.push(CheckRecord::group(&format!("module facts at base point {x0}"), 6, true));
                let report = verify_leonard_pair(&pm, &krein, &inter, &t);
                for c in &report.conditions {
                    checks.push(CheckRecord {
                        id: format!("x0={x0}: {}", c.name),
                        indices: c.witness.clone(),
                        expected: Some("holds".into()),
                        got: Some(c.ok.to_string()),
                        count: None,
                        ok: c.ok,
                    });
                }
            }
            Err(e) => checks.push(CheckRecord::failure(
                &format!("module facts at base point {x0}"),
                String::new(),
                "facts hold".into(),
                e.to_string(),
            )),
        }
    }
    Ok(checks)
}

/// Splitting recurrences and degree-one shift identities over their grids.
pub fn run_recurrences(n_max: i64, q_set: &[i64]) -> Vec<CheckRecord> {
    let mut checks = Vec::new();
    let mut count = 0usize;
    let mut failures = Vec::new();
    for n in 2..=n_max {
        for p in 1..n {
            for x in 0..=(p - 1).min(n - p) {
                for r in 0..=p.min(n - p) {
                    count += 1;
                    let res = hahn_recurrence_residual(n, p, r, x);
                    if !res.is_zero() {
                        failures.push((format!("hahn N={n} p={p} r={r} x={x}"), res));
                    }
                }
            }
        }
    }
    let q_n_max = (n_max - 2).max(2);
    for &q in q_set {
        for n in 2..=q_n_max {
            for p in 1..n {
                for x in 0..=(p - 1).min(n - p) {
                    for r in 0..=p.min(n - p) {
                        count += 1;
                        let res = q_hahn_recurrence_residual(n, p, q, r, x);
                        if !res.is_zero() {
                            failures.push((format!("q-hahn N={n} p={p} q={q} r={r} x={x}"), res));
                        }
                    }
                }
            }
        }
    }
    if failures.is_empty() {
        checks.push(CheckRecord::group("splitting recurrences", count, true));
    } else {
        for (indices, res) in failures {
            checks.push(CheckRecord::failure("splitting recurrences", indices, "0".into(), res.to_string()));
        }
    }
    let mut count = 0usize;
    let mut failures = Vec::new();
    for n in 2..=n_max {
        for k in 1..n {
            for i in 0..k {
                if n - i < 2 {
                    continue;
                }
                for y in 0..=(k - i).min(n - k) {
                    count += 1;
                    let res = hahn_degree_one_shift_residual(n, k, i, y);
                    if !res.is_zero() {
                        failures.push((format!("hahn shift n={n} k={k} i={i} y={y}"), res));
                    }
                }
            }
        }
    }
    for &q in q_set {
        for n in 2..=q_n_max {
            for m in 1..n {
                for i in 0..m {
                    for y in 0..=(m - i).min(n - m) {
                        count += 1;
                        let res = q_hahn_degree_one_shift_residual(n, m, q, i, y);
                        if !res.is_zero() {
                            failures.push((format!("q-hahn shift n={n} m={m} q={q} i={i} y={y}"), res));
                        }
                    }
                }
            }
        }
    }
    if failures.is_empty() {
        checks.push(CheckRecord::group("degree-one shift identities", count, true));
    } else {
        for (indices, res) in failures {
            checks.push(CheckRecord::failure(
                "degree-one shift identities",
                indices,
                "0".into(),
                res.to_string(),
            ));
        }
    }
    checks
}

/// The q-number and q-binomial identities over the desk grid.
pub fn run_identities(bound: i64, q_set: &[i64]) -> Vec<CheckRecord> {
    let mut checks = Vec::new();
    let mut count = 0usize;
    let mut failures: Vec<String> = Vec::new();
    for &q in q_set {
        let qs = |a: i64| q_number_signed(a, q);
        let qb = |n: i64, r: i64| Rational::from_bigint(q_binomial(n, r, q));
        for a in 1..=bound {
            for b in 1..a {
                count += 1;
                if qs(a) - qs(b) != q_pow(q, b) * qs(a - b) {
                    failures.push(format!("q-number shift at q={q} a={a} b={b}"));
                }
            }
        }
        for n in 1..=bound {
            for r in 1..=n {
                count += 4;
                if qb(n, r) != qs(n - r + 1) / qs(r) * qb(n, r - 1) {
                    failures.push(format!("column ratio (same row) at q={q} N={n} r={r}"));
                }
                if qb(n, r) != qs(n) / qs(r) * qb(n - 1, r - 1) {
                    failures.push(format!("diagonal ratio at q={q} N={n} r={r}"));
                }
                if r < n && qb(n, r) != qs(n) / qs(n - r) * qb(n - 1, r) {
                    failures.push(format!("row ratio at q={q} N={n} r={r}"));
                }
                let diff = qb(n, r) - qb(n, r - 1);
                if diff != (Rational::one() - qs(r) / qs(n - r + 1)) * qb(n, r)
                    || diff != q_pow(q, r) * qs(n - 2 * r + 1) / qs(n - r + 1) * qb(n, r)
                {
                    failures.push(format!("difference identity at q={q} N={n} r={r}"));
                }
            }
        }
    }
    if failures.is_empty() {
        checks.push(CheckRecord::group("q-identities", count, true));
    } else {
        for f in failures {
            checks.push(CheckRecord::failure("q-identities", f, "equality".into(), "mismatch".into()));
        }
    }
    checks
}

/// Orthogonality residuals, sum rules and nonnegativity for one table.
pub fn run_rules(params: &FamilyParams) -> Result<Vec<CheckRecord>, SuiteError> {
    let t: SpectralTable = params.table().map_err(|e| SuiteError::Usage(e.to_string()))?;
    let krein = Tensor3::krein(&t);
    let inter = Tensor3::intersection(&t);
    let violations = tensor_rule_violations(&t, &krein, &inter);
    let n = t.idempotents.len();
    if violations.is_empty() {
        Ok(vec![CheckRecord::group("orthogonality and sum rules", n * n, true)])
    } else {
        Ok(violations
            .into_iter()
            .map(|v| CheckRecord::failure("orthogonality and sum rules", v, "0".into(), "nonzero".into()))
            .collect())
    }
}
