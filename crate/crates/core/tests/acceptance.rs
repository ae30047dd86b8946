//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `cargo test --test acceptance -- --nocapture` to see them).
//!
//! All checks are exact rational equalities; there are no tolerances.

use num::BigInt;
use scheme_atlas::exact::{q_binomial, q_number, q_number_signed, q_pow, Rational};
use scheme_atlas::families::{
    attenuated_table, bilinear_table, hamming_table, johnson_table, nonbinary_johnson_table,
    verify_closed_forms, FamilyParams,
};
use scheme_atlas::leonard::{
    build_principal_module, check_am_property, verify_leonard_pair, AmVerdict,
};
use scheme_atlas::oracle::{
    attenuated_concrete, build_idempotents, krein_by_hadamard, nbj_concrete, OracleOptions,
};
use scheme_atlas::orthopoly::{
    hahn_degree_one_shift_residual, hahn_recurrence_residual, q_hahn_degree_one_shift_residual,
    q_hahn_recurrence_residual,
};
use scheme_atlas::scheme::{
    intersection_from_spectral, krein_from_spectral, tensor_rule_violations, MonomialOrder,
    SpectralTable, Tensor3,
};
use std::time::Instant;

fn finish(name: &str, started: Instant, failures: Vec<String>) {
    let secs = started.elapsed().as_secs_f64();
    if failures.is_empty() {
        println!("{name}: PASS ({secs:.1}s)");
    } else {
        println!("{name}: FAIL ({secs:.1}s)");
        panic!("{name}: {} failure(s), first: {}", failures.len(), failures[0]);
    }
}

fn nbj_grid() -> Vec<(i64, i64, i64)> {
    let mut grid = Vec::new();
    for r in [3i64, 4, 5, 7] {
        for n in 3..=8 {
            for k in 1..n {
                grid.push((r, n, k));
            }
        }
    }
    grid
}

fn attenuated_grid() -> Vec<(i64, i64, i64, i64)> {
    let mut grid = Vec::new();
    for q in [2i64, 3] {
        for n in 1..=5 {
            for m in 1..=n {
                for l in 1..=3 {
                    grid.push((q, n, m, l));
                }
            }
        }
    }
    grid
}

#[test]
fn criterion_1_nonbinary_johnson_closed_kreins() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for (r, n, k) in nbj_grid() {
        let params = FamilyParams::NonbinaryJohnson { r, n, k };
        match verify_closed_forms(&params) {
            Ok(report) => {
                if !report.ok {
                    failures.push(format!(
                        "{}: mismatches={} support={} order={} raising={} qpoly={}",
                        params.label(),
                        report.mismatches.len(),
                        report.support_violations.len(),
                        report.order_violations.len(),
                        report.missing_raising.len(),
                        report.q_polynomial_grlex
                    ));
                }
                if report.directions != vec![0, 1] {
                    failures.push(format!("{}: generator missing from domain", params.label()));
                }
            }
            Err(e) => failures.push(format!("{}: {e}", params.label())),
        }
    }
    finish("criterion 1 (nonbinary Johnson closed Krein forms, grlex Q-polynomial)", started, failures);
}

#[test]
fn criterion_2_attenuated_closed_kreins() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for (q, n, m, l) in attenuated_grid() {
        let params = FamilyParams::Attenuated { n, m, l, q };
        match verify_closed_forms(&params) {
            Ok(report) => {
                if !report.ok {
                    failures.push(format!(
                        "{}: mismatches={} support={} order={} raising={} qpoly={}",
                        params.label(),
                        report.mismatches.len(),
                        report.support_violations.len(),
                        report.order_violations.len(),
                        report.missing_raising.len(),
                        report.q_polynomial_grlex
                    ));
                }
                let expect_dirs: Vec<usize> = if m < n { vec![0, 1] } else { vec![0] };
                if report.directions != expect_dirs {
                    failures.push(format!(
                        "{}: directions {:?}, expected {:?}",
                        params.label(),
                        report.directions,
                        expect_dirs
                    ));
                }
            }
            Err(e) => failures.push(format!("{}: {e}", params.label())),
        }
    }
    finish("criterion 2 (attenuated closed Krein forms, grlex Q-polynomial)", started, failures);
}

#[test]
fn criterion_3_recurrence_suites() {
    let started = Instant::now();
    let mut failures = Vec::new();
    // Hahn splitting recurrence, full admissible grid N <= 10
    for n in 2..=10i64 {
        for p in 1..n {
            for x in 0..=(p - 1).min(n - p) {
                for r in 0..=p.min(n - p) {
                    let res = hahn_recurrence_residual(n, p, r, x);
                    if !res.is_zero() {
                        failures.push(format!("hahn recurrence N={n} p={p} r={r} x={x}: {res}"));
                    }
                }
            }
        }
    }
    // q-Hahn splitting recurrence, N <= 8, q in {2,3}
    for q in [2i64, 3] {
        for n in 2..=8i64 {
            for p in 1..n {
                for x in 0..=(p - 1).min(n - p) {
                    for r in 0..=p.min(n - p) {
                        let res = q_hahn_recurrence_residual(n, p, q, r, x);
                        if !res.is_zero() {
                            failures.push(format!(
                                "q-hahn recurrence N={n} p={p} q={q} r={r} x={x}: {res}"
                            ));
                        }
                    }
                }
            }
        }
    }
    // degree-one shift identities
    for n in 2..=10i64 {
        for k in 1..n {
            for i in 0..k {
                if n - i < 2 {
                    continue;
                }
                for y in 0..=(k - i).min(n - k) {
                    let res = hahn_degree_one_shift_residual(n, k, i, y);
                    if !res.is_zero() {
                        failures.push(format!("hahn shift n={n} k={k} i={i} y={y}: {res}"));
                    }
                }
            }
        }
    }
    for q in [2i64, 3] {
        for n in 2..=8i64 {
            for m in 1..n {
                for i in 0..m {
                    for y in 0..=(m - i).min(n - m) {
                        let res = q_hahn_degree_one_shift_residual(n, m, q, i, y);
                        if !res.is_zero() {
                            failures
                                .push(format!("q-hahn shift n={n} m={m} q={q} i={i} y={y}: {res}"));
                        }
                    }
                }
            }
        }
    }
    finish("criterion 3 (splitting recurrences and degree-one shifts)", started, failures);
}

#[test]
fn criterion_4_q_identities() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for q in [2i64, 3, 4] {
        let qs = |a: i64| q_number_signed(a, q);
        let qb = |n: i64, r: i64| Rational::from_bigint(q_binomial(n, r, q));
        // [a] - [b] = q^b [a-b] for b < a
        for a in 1..=12i64 {
            for b in 1..a {
                if qs(a) - qs(b) != q_pow(q, b) * qs(a - b) {
                    failures.push(format!("identity 1 fails at q={q} a={a} b={b}"));
                }
            }
        }
        for n in 1..=12i64 {
            for r in 1..=n {
                if qb(n, r) != qs(n - r + 1) / qs(r) * qb(n, r - 1) {
                    failures.push(format!("identity 2 fails at q={q} N={n} r={r}"));
                }
                if qb(n, r) != qs(n) / qs(r) * Rational::from_bigint(q_binomial(n - 1, r - 1, q)) {
                    failures.push(format!("identity 3 fails at q={q} N={n} r={r}"));
                }
                if r < n
                    && qb(n, r) != qs(n) / qs(n - r) * Rational::from_bigint(q_binomial(n - 1, r, q))
                {
                    failures.push(format!("identity 4 fails at q={q} N={n} r={r}"));
                }
                let diff = qb(n, r) - qb(n, r - 1);
                if diff != (Rational::one() - qs(r) / qs(n - r + 1)) * qb(n, r)
                    || diff != q_pow(q, r) * qs(n - 2 * r + 1) / qs(n - r + 1) * qb(n, r)
                {
                    failures.push(format!("identity 5 fails at q={q} N={n} r={r}"));
                }
            }
        }
    }
    finish("criterion 4 (q-identities)", started, failures);
}

/// The full matrix-level ground-truth suite for one instance.
fn oracle_suite(
    label: &str,
    s: &scheme_atlas::oracle::ConcreteScheme,
    t: &SpectralTable,
    failures: &mut Vec<String>,
) {
    let n_classes = s.domain.len();
    // row sums of each adjacency matrix equal the valency, on every row
    for pos in 0..n_classes {
        let expect = BigInt::from(s.neighbors(pos, 0).len());
        if expect != t.valencies[pos] {
            failures.push(format!("{label}: row sum of class {pos} differs from the valency"));
        }
        for x in 1..s.size {
            if s.neighbors(pos, x).len() != s.neighbors(pos, 0).len() {
                failures.push(format!("{label}: nonconstant row sums in class {pos}"));
            }
        }
    }
    // triple-counted intersection numbers equal the dual spectral sums
    for i in 0..n_classes {
        for j in 0..n_classes {
            for k in 0..n_classes {
                if s.intersection.at(i, j, k) != &intersection_from_spectral(t, i, j, k) {
                    failures.push(format!("{label}: p^{k}_{{{i},{j}}} differs"));
                }
            }
        }
    }
    // idempotents satisfy every matrix identity (errors carry the witness)
    let idempotents = match build_idempotents(s, t) {
        Ok(e) => e,
        Err(e) => {
            failures.push(format!("{label}: {e}"));
            return;
        }
    };
    // Hadamard-extracted Krein numbers equal the spectral sums
    match krein_by_hadamard(s, t, &idempotents) {
        Ok(tensor) => {
            for i in 0..n_classes {
                for j in 0..n_classes {
                    for k in 0..n_classes {
                        if tensor.at(i, j, k) != &krein_from_spectral(t, i, j, k) {
                            failures.push(format!("{label}: q^{k}_{{{i},{j}}} differs"));
                        }
                    }
                }
            }
        }
        Err(e) => failures.push(format!("{label}: {e}")),
    }
}

#[test]
fn criterion_5_oracle_ground_truth() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let opts = OracleOptions::default();
    let nbj_instances = [(3i64, 3i64, 2i64, 12usize), (3, 4, 2, 24), (4, 4, 2, 54)];
    for (r, n, k, points) in nbj_instances {
        let label = format!("nbj r={r} n={n} k={k}");
        match (nbj_concrete(r, n, k, opts), nonbinary_johnson_table(r, n, k)) {
            (Ok(s), Ok(t)) => {
                if s.size != points {
                    failures.push(format!("{label}: {} points, expected {points}", s.size));
                }
                oracle_suite(&label, &s, &t, &mut failures);
            }
            (a, b) => failures.push(format!("{label}: {:?} / {:?}", a.err(), b.err())),
        }
    }
    let attenuated_instances = [(2i64, 2i64, 1i64, 1i64), (2, 2, 1, 2), (2, 3, 2, 1), (2, 3, 1, 2)];
    for (q, n, m, l) in attenuated_instances {
        let label = format!("attenuated q={q} n={n} m={m} l={l}");
        match (attenuated_concrete(n, m, l, q, opts), attenuated_table(n, m, l, q)) {
            (Ok(s), Ok(t)) => oracle_suite(&label, &s, &t, &mut failures),
            (a, b) => failures.push(format!("{label}: {:?} / {:?}", a.err(), b.err())),
        }
    }
    finish("criterion 5 (matrix-level oracle ground truth)", started, failures);
}

#[test]
fn criterion_6_leonard_pairs() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let orders = MonomialOrder::ALL;
    let run = |label: &str,
                   s: &scheme_atlas::oracle::ConcreteScheme,
                   t: &SpectralTable,
                   expect_simplex: u32,
                   failures: &mut Vec<String>| {
        let krein = Tensor3::krein(t);
        let inter = Tensor3::intersection(t);
        let am = check_am_property(t, &inter, &krein, &orders);
        if am.verdict != AmVerdict::Holds || am.simplex_degree != Some(expect_simplex) {
            failures.push(format!("{label}: A_M property verdict {:?}", am.verdict));
        }
        match build_principal_module(s, t, 0) {
            Ok(pm) => {
                let report = verify_leonard_pair(&pm, &krein, &inter, t);
                if report.conditions.len() != 7 {
                    failures.push(format!("{label}: expected seven conditions"));
                }
                for c in &report.conditions {
                    if !c.ok {
                        failures.push(format!("{label}: condition '{}' fails: {:?}", c.name, c.witness));
                    }
                }
            }
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    };
    let opts = OracleOptions::default();
    match (nbj_concrete(3, 6, 2, opts), nonbinary_johnson_table(3, 6, 2)) {
        (Ok(s), Ok(t)) => {
            if s.size != 60 {
                failures.push(format!("nbj r=3 n=6 k=2: {} points, expected 60", s.size));
            }
            run("nbj r=3 n=6 k=2", &s, &t, 2, &mut failures);
        }
        (a, b) => failures.push(format!("nbj r=3 n=6 k=2: {:?} / {:?}", a.err(), b.err())),
    }
    match (attenuated_concrete(2, 1, 1, 2, opts), attenuated_table(2, 1, 1, 2)) {
        (Ok(s), Ok(t)) => {
            if s.size != 6 {
                failures.push(format!("attenuated 2,2,1,1: {} points, expected 6", s.size));
            }
            run("attenuated q=2 n=2 m=1 l=1", &s, &t, 1, &mut failures);
        }
        (a, b) => failures.push(format!("attenuated 2,2,1,1: {:?} / {:?}", a.err(), b.err())),
    }
    finish("criterion 6 (Leonard-pair structure on principal modules)", started, failures);
}

/// Compare two tables entry-by-entry under a relabeling of the first one's
/// two-coordinate indices onto the second's one-coordinate indices.
fn compare_reduced(
    label: &str,
    reduced: &SpectralTable,
    target: &SpectralTable,
    project: impl Fn((i64, i64)) -> i64,
    failures: &mut Vec<String>,
) {
    if reduced.size != target.size {
        failures.push(format!("{label}: sizes {} vs {}", reduced.size, target.size));
        return;
    }
    let n = reduced.relations.len();
    if n != target.relations.len() {
        failures.push(format!("{label}: class counts differ"));
        return;
    }
    // positions in the target, in the order of the reduced domain
    let mapped: Vec<usize> = reduced
        .relations
        .members()
        .iter()
        .map(|idx| {
            let flat = project(idx.as_pair());
            target
                .relations
                .position(&scheme_atlas::scheme::MultiIndex::single(flat as u32))
                .expect("projection lands in the target domain")
        })
        .collect();
    for a in 0..n {
        if reduced.valencies[a] != target.valencies[mapped[a]] {
            failures.push(format!("{label}: valency differs at position {a}"));
        }
        if reduced.multiplicities[a] != target.multiplicities[mapped[a]] {
            failures.push(format!("{label}: multiplicity differs at position {a}"));
        }
        for b in 0..n {
            if reduced.p[a][b] != target.p[mapped[a]][mapped[b]] {
                failures.push(format!("{label}: P differs at ({a},{b})"));
            }
            if reduced.q[a][b] != target.q[mapped[a]][mapped[b]] {
                failures.push(format!("{label}: Q differs at ({a},{b})"));
            }
        }
    }
}

#[test]
fn criterion_7_reduction_consistency() {
    let started = Instant::now();
    let mut failures = Vec::new();
    // r = 2 collapses to the Johnson scheme under (0,j) -> j
    for (n, k) in [(4i64, 2i64), (5, 2), (6, 3)] {
        let reduced = nonbinary_johnson_table(2, n, k).unwrap();
        let target = johnson_table(n, k).unwrap();
        if reduced.reduction.as_deref() != Some("johnson") {
            failures.push(format!("nbj r=2 n={n} k={k}: missing reduction flag"));
        }
        compare_reduced(
            &format!("nbj r=2 n={n} k={k} vs johnson"),
            &reduced,
            &target,
            |(_, j)| j,
            &mut failures,
        );
    }
    // n = k collapses to the Hamming scheme on the nonzero alphabet,
    // H(k, r-1), under (i,0) -> i
    for (r, k) in [(3i64, 2i64), (4, 3), (5, 2)] {
        let reduced = nonbinary_johnson_table(r, k, k).unwrap();
        let target = hamming_table(k, r - 1).unwrap();
        if reduced.reduction.as_deref() != Some("hamming") {
            failures.push(format!("nbj r={r} n=k={k}: missing reduction flag"));
        }
        compare_reduced(
            &format!("nbj r={r} n=k={k} vs hamming"),
            &reduced,
            &target,
            |(i, _)| i,
            &mut failures,
        );
    }
    // m = n collapses to the bilinear forms scheme under (i,0) -> i
    for (q, n, l) in [(2i64, 2i64, 1i64), (2, 3, 2), (3, 2, 2)] {
        let reduced = attenuated_table(n, n, l, q).unwrap();
        let target = bilinear_table(n, l, q).unwrap();
        if reduced.reduction.as_deref() != Some("bilinear") {
            failures.push(format!("attenuated m=n={n} l={l} q={q}: missing reduction flag"));
        }
        compare_reduced(
            &format!("attenuated m=n={n} l={l} q={q} vs bilinear"),
            &reduced,
            &target,
            |(i, _)| i,
            &mut failures,
        );
    }
    finish("criterion 7 (boundary reductions match the classical schemes)", started, failures);
}

#[test]
fn criterion_8_orthogonality_and_sum_rules() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut sweep = |label: String, t: &SpectralTable| {
        let krein = Tensor3::krein(t);
        let inter = Tensor3::intersection(t);
        for v in tensor_rule_violations(t, &krein, &inter) {
            failures.push(format!("{label}: {v}"));
        }
    };
    for (r, n, k) in nbj_grid() {
        let t = nonbinary_johnson_table(r, n, k).unwrap();
        sweep(format!("nbj r={r} n={n} k={k}"), &t);
    }
    for (q, n, m, l) in attenuated_grid() {
        let t = attenuated_table(n, m, l, q).unwrap();
        sweep(format!("attenuated q={q} n={n} m={m} l={l}"), &t);
    }
    finish("criterion 8 (orthogonality residuals, sum rules, nonnegativity)", started, failures);
}

#[test]
fn acceptance_example_values() {
    // a handful of named values pinned from the per-operation examples
    let started = Instant::now();
    let mut failures = Vec::new();
    // |S| and |X| examples
    let t = nonbinary_johnson_table(3, 3, 2).unwrap();
    if t.size != BigInt::from(12) {
        failures.push("J_3(3,2) size".into());
    }
    let t = attenuated_table(2, 1, 1, 2).unwrap();
    if t.size != BigInt::from(6) {
        failures.push("attenuated (2,2,1,1) size".into());
    }
    // Hamming q-number examples through the closed form of H(3,2)
    if q_number(3, 2) != BigInt::from(7) {
        failures.push("q-number [3]_2".into());
    }
    finish("example values", started, failures);
}
