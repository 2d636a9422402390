//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::time::{Duration, Instant};

use regcert::field::{Field, PrimeField, Rationals};
use regcert::groebner::IdealPresentation;
use regcert::harness::{
    parse_ideal_file, run_gtable, run_main_trials, run_poweli_trials, run_regbound_trials, verify_regbound, GRow,
    MainOptions, RandomIdealSpec,
};
use regcert::order::TermOrder;
use regcert::report::{Instance, Status, VerificationReport};
use regcert::resolution::{check_flat_betti, fraction, regularity, FlatComparison};
use serde_json::{json, Value};

const SEED: u64 = 2024;
const CUTOFF: u32 = 40;

struct Outcome {
    ok: bool,
    detail: String,
    /// Field-independent record of everything measured, compared across fields.
    record: Vec<String>,
}

fn ideal<F: Field>(field: F, text: &str) -> IdealPresentation<F> {
    parse_ideal_file(text).expect("valid ideal file").instantiate(field, TermOrder::Lex).expect("instantiates")
}

fn within(start: Instant, limit: Duration, detail: &mut String) -> bool {
    let elapsed = start.elapsed();
    detail.push_str(&format!(" [{:.2}s]", elapsed.as_secs_f64()));
    elapsed < limit
}

fn all_pass(reports: &[&VerificationReport]) -> bool {
    reports.iter().all(|r| r.status == Status::Pass && r.instances.iter().all(|i| i.status == Status::Pass))
}

fn first_witness(reports: &[&VerificationReport]) -> String {
    reports
        .iter()
        .flat_map(|r| r.instances.iter())
        .find_map(|i| i.witness.clone())
        .unwrap_or_default()
}

fn criterion_1<F: Field>(field: F) -> Outcome {
    let start = Instant::now();
    let j = ideal(field, "ring x1 x2; gens: x1^2, x2^2");
    let reg_j = regularity(&j, TermOrder::DegRevLex).unwrap();
    let report = verify_regbound(&j, 1, CUTOFF).unwrap();
    let values = &report.instances[0].values;
    let reg_i = values["reg(I)"].clone();
    let mut detail = format!("reg(J) = {reg_j}, reg(I) = {reg_i}, I = {}", values["I"]);
    let ok = reg_j == 3 && reg_i == json!(2) && values["I"] == json!(["x1^2"]) && all_pass(&[&report]);
    let ok = within(start, Duration::from_secs(1), &mut detail) && ok;
    let record = vec![reg_j.to_string(), reg_i.to_string(), values["I"].to_string()];
    Outcome { ok, detail, record }
}

fn criterion_2<F: Field>(field: F) -> Outcome {
    let start = Instant::now();
    let j = ideal(field, "ring x1 x2 x3; gens: x1*x2 + x2*x3, x1*x3, x3^2");
    let reg_j = regularity(&j, TermOrder::DegRevLex).unwrap();
    let report = verify_regbound(&j, 2, CUTOFF).unwrap();
    let values = &report.instances[0].values;
    let reg_i = values["reg(I)"].clone();
    let mut detail = format!("reg(J) = {reg_j}, reg(I) = {reg_i}, I = {}", values["I"]);
    let ok = reg_j == 2 && reg_i == json!(3) && values["I"] == json!(["x2*x1^2"]) && all_pass(&[&report]);
    let ok = within(start, Duration::from_secs(5), &mut detail) && ok;
    let record = vec![reg_j.to_string(), reg_i.to_string(), values["I"].to_string()];
    Outcome { ok, detail, record }
}

/// `x1^s, x2^s + x1*x2^(s-1) + x1^s, ...`: a complete intersection in `c`
/// variables that is not monomial.
fn triangular_ci(c: usize, s: u32) -> String {
    let names: Vec<String> = (1..=c).map(|i| format!("x{i}")).collect();
    let mut gens = vec![format!("x1^{s}")];
    for k in 2..=c {
        let (hi, lo) = (&names[k - 1], &names[k - 2]);
        gens.push(format!("{hi}^{s} + {lo}*{hi}^{} + {lo}^{s}", s - 1));
    }
    format!("ring {}; gens: {}", names.join(" "), gens.join(", "))
}

fn criterion_3<F: Field>(field: F) -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut record = Vec::new();
    let mut bad = Vec::new();
    for c in [2usize, 3] {
        for s in [2u32, 3] {
            let i = ideal(field.clone(), &triangular_ci(c, s));
            for d in [2u32, 3] {
                let cmp = FlatComparison::compute(&i, d, TermOrder::DegRevLex).unwrap();
                let (ci, si, di) = (c as i64, s as i64, d as i64);
                let expected_gap = fraction((ci - 1) * (di - 1), di);
                let here = cmp.reg == si * ci - (ci - 1)
                    && cmp.image_reg == di * si * ci - (ci - 1)
                    && cmp.gap() == expected_gap
                    && check_flat_betti(&i, d, TermOrder::DegRevLex).unwrap().passed();
                if !here {
                    bad.push(format!("(c,s,d) = ({c},{s},{d}): reg {} reg' {} gap {}", cmp.reg, cmp.image_reg, cmp.gap()));
                }
                ok &= here;
                record.push(format!("{c} {s} {d} {} {} {} {:?} {:?}", cmp.reg, cmp.image_reg, cmp.gap(), cmp.table, cmp.image_table));
            }
        }
    }
    let mut detail = if bad.is_empty() {
        "8 triples, reg(I) = sc-(c-1), reg(I') = dsc-(c-1), gap (c-1)(d-1)/d".to_string()
    } else {
        bad.join("; ")
    };
    let ok = within(start, Duration::from_secs(60), &mut detail) && ok;
    Outcome { ok, detail, record }
}

fn criterion_4<F: Field>(field: F) -> Outcome {
    let start = Instant::now();
    let i = ideal(field, "ring x1 x2 x3 x4 x5; gens: x1^2, x1*x2, x1*x3, x1*x4, x1*x5, x2^2, x3^2");
    let mut ok = true;
    let mut parts = Vec::new();
    let mut record = Vec::new();
    for d in [2u32, 3] {
        let cmp = FlatComparison::compute(&i, d, TermOrder::DegRevLex).unwrap();
        let di = d as i64;
        let lhs = cmp.image_reg;
        let rhs = cmp.reg * di + cmp.p as i64 * (di - 1);
        let boundary = if d == 2 { lhs == rhs } else { lhs > rhs };
        ok &= cmp.t == vec![2, 4, 5, 5, 6]
            && cmp.reg == 3
            && cmp.p == 2
            && cmp.image_reg == 6 * di - 4
            && boundary
            && check_flat_betti(&i, d, TermOrder::DegRevLex).unwrap().passed();
        parts.push(format!(
            "d={d}: t = {:?}, reg = {}, p = {}, reg(I') = {}, reg(I')/d = {} vs {}",
            cmp.t,
            cmp.reg,
            cmp.p,
            cmp.image_reg,
            fraction(lhs, di),
            cmp.lower_bound()
        ));
        record.push(format!("{d} {:?} {} {} {} {:?} {:?}", cmp.t, cmp.reg, cmp.p, cmp.image_reg, cmp.table, cmp.image_table));
    }
    let mut detail = parts.join("; ");
    let ok = within(start, Duration::from_secs(300), &mut detail) && ok;
    Outcome { ok, detail, record }
}

fn spec(nvars: usize) -> RandomIdealSpec {
    RandomIdealSpec { nvars, generators: 1..=3, degrees: 1..=3, max_terms: 4 }
}

fn criterion_5(field: &PrimeField) -> Outcome {
    let start = Instant::now();
    let report = run_poweli_trials(field, &spec(3), 3, 20, SEED).unwrap();
    let mut detail = format!("{} trials, {:?}", report.instances.len(), report.status);
    if !report.passed() {
        detail.push_str(&format!(": {}", first_witness(&[&report])));
    }
    let ok = report.instances.len() == 20 && all_pass(&[&report]);
    let ok = within(start, Duration::from_secs(300), &mut detail) && ok;
    Outcome { ok, detail, record: Vec::new() }
}

const CHAIN: [&str; 4] = [
    "check: reg(I) <= reg(in I)",
    "check: reg(in I) <= reg(in J)",
    "check: reg(in J) <= reg(Lex J)",
    "check: HF(J) = HF(in J)",
];

fn criterion_6(field: &PrimeField, reports: &mut Vec<VerificationReport>) -> Outcome {
    let start = Instant::now();
    let mut own = vec![
        verify_regbound(&ideal(*field, "ring x1 x2; gens: x1^2, x2^2"), 1, CUTOFF).unwrap(),
        verify_regbound(&ideal(*field, "ring x1 x2 x3; gens: x1*x2 + x2*x3, x1*x3, x3^2"), 2, CUTOFF).unwrap(),
        run_regbound_trials(field, &spec(3), 8, SEED, CUTOFF).unwrap(),
        run_regbound_trials(field, &spec(4), 7, SEED + 1, CUTOFF).unwrap(),
    ];
    let refs: Vec<&VerificationReport> = own.iter().collect();
    let instances: Vec<_> = refs.iter().flat_map(|r| r.instances.iter()).collect();
    let nonzero_i = instances.iter().filter(|i| i.values.contains_key(CHAIN[0])).count();
    let holds = |i: &&Instance, key: &str| i.values.get(key) == Some(&Value::Bool(true));
    let chain_ok = instances.iter().all(|i| {
        let needed = if i.values.contains_key("reg(I)") { &CHAIN[..] } else { &CHAIN[2..] };
        needed.iter().all(|key| holds(i, key))
    });
    let mut detail = format!("{} ideals, {nonzero_i} with I != 0", instances.len());
    let ok = instances.len() == 17 && chain_ok && all_pass(&refs);
    if !ok {
        detail.push_str(&format!(": {}", first_witness(&refs)));
    }
    let ok = within(start, Duration::from_secs(600), &mut detail) && ok;
    reports.append(&mut own);
    Outcome { ok, detail, record: Vec::new() }
}

fn criterion_7(field: &PrimeField, reports: &mut Vec<VerificationReport>) -> Outcome {
    let start = Instant::now();
    let report = run_regbound_trials(field, &spec(3), 10, SEED + 7, CUTOFF).unwrap();
    let key = "check: beta_ij(J) <= beta_ij(Lex J)";
    let compared = report.instances.iter().filter(|i| i.values.get(key) == Some(&Value::Bool(true))).count();
    let mut detail = format!("{compared} of {} Betti tables dominated entrywise", report.instances.len());
    let ok = compared == 10 && all_pass(&[&report]);
    if !ok {
        detail.push_str(&format!(": {}", first_witness(&[&report])));
    }
    let ok = within(start, Duration::from_secs(600), &mut detail) && ok;
    reports.push(report);
    Outcome { ok, detail, record: Vec::new() }
}

fn criterion_8(field: &PrimeField, reports: &mut Vec<VerificationReport>) -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, m, d) in [(2usize, 2usize, 2u32), (3, 2, 2), (2, 2, 3), (3, 1, 3)] {
        let report = run_main_trials(field, n, m, d, 5, SEED, MainOptions::default()).unwrap();
        let chain = report.instances.iter().all(|i| {
            let mut keys = vec!["check: P' = J' cap R and phi(G) is a Groebner basis", "check: G/d <= d^(n2^(m-1)-1)"];
            if i.values.contains_key("reg(P)") {
                keys.extend(["check: reg(P) <= reg(P')/d", "check: reg(P')/d <= G/d"]);
            }
            keys.iter().all(|k| i.values.get(*k) == Some(&Value::Bool(true)))
        });
        let regs: Vec<String> = report
            .instances
            .iter()
            .map(|i| i.values.get("reg(P)").map_or("P=0".to_string(), |v| v.to_string()))
            .collect();
        let g = &report.instances[0].values["G"];
        parts.push(format!("({n},{m},{d}) reg(P) {} G {g}", regs.join("/")));
        ok &= report.instances.len() == 5 && chain && all_pass(&[&report]);
        if !all_pass(&[&report]) {
            parts.push(first_witness(&[&report]));
        }
        reports.push(report);
    }
    let mut detail = parts.join("; ");
    let ok = within(start, Duration::from_secs(900), &mut detail) && ok;
    Outcome { ok, detail, record: Vec::new() }
}

fn criterion_9(field: &PrimeField, reports: &mut Vec<VerificationReport>) -> Outcome {
    let start = Instant::now();
    let (rows, report) = run_gtable(field, &[1, 2, 3], &[1, 2, 3], &[0, 1, 2], SEED, 2).unwrap();
    let (extra, extra_report) = run_gtable(field, &[1], &[4], &[1], SEED, 2).unwrap();
    let g = |n: usize, d: u32, m: usize| -> Option<u32> {
        rows.iter().chain(extra.iter()).find(|r: &&GRow| (r.n, r.d, r.m) == (n, d, m)).map(|r| r.g)
    };
    let small = (2..=4).all(|d| g(1, d, 1) == Some(d)) && g(1, 2, 2) == Some(2);
    let bounded = rows.iter().filter(|r| r.m >= 1).all(|r| r.bound.is_some_and(|b| r.g as u64 <= b));
    let agree = rows.iter().chain(extra.iter()).all(|r| !r.actual.is_empty() && r.actual.iter().all(|&a| a == r.g));
    let largest = rows.iter().map(|r| r.g).max().unwrap_or(0);
    let mut detail = format!(
        "{} cells, G(1,d,1) = d, G(1,2,2) = {:?}, largest G {largest}, bound {}, routes {}",
        rows.len() + extra.len(),
        g(1, 2, 2),
        if bounded { "holds" } else { "violated" },
        if agree { "agree" } else { "disagree" }
    );
    let ok = rows.len() == 27 && small && bounded && agree && all_pass(&[&report, &extra_report]);
    if !ok {
        detail.push_str(&format!(": {}", first_witness(&[&report, &extra_report])));
    }
    let ok = within(start, Duration::from_secs(600), &mut detail) && ok;
    reports.push(report);
    reports.push(extra_report);
    Outcome { ok, detail, record: Vec::new() }
}

fn criterion_10(reports: &[VerificationReport]) -> Outcome {
    let mut compared = 0;
    let mut mismatches = 0;
    for inst in reports.iter().flat_map(|r| r.instances.iter()) {
        for (key, value) in &inst.values {
            if key.starts_with("check: ") && key.contains("= Koszul reg(Lex") {
                compared += 1;
                if *value != Value::Bool(true) {
                    mismatches += 1;
                }
            }
        }
    }
    Outcome {
        ok: compared > 0 && mismatches == 0,
        detail: format!("{compared} lex ideals compared, {mismatches} mismatches"),
        record: Vec::new(),
    }
}

fn main() {
    let prime = PrimeField::default();
    let mut lines: Vec<(usize, Outcome)> = Vec::new();
    let mut over_q = Vec::new();

    type Generic = (fn(PrimeField) -> Outcome, fn(Rationals) -> Outcome);
    let generic: [Generic; 4] = [
        (criterion_1, criterion_1),
        (criterion_2, criterion_2),
        (criterion_3, criterion_3),
        (criterion_4, criterion_4),
    ];
    for (k, (over_p, over_rationals)) in generic.iter().enumerate() {
        let outcome = over_p(prime);
        let q = over_rationals(Rationals);
        report_line(k + 1, &outcome);
        over_q.push((outcome.record.clone(), q));
        lines.push((k + 1, outcome));
    }

    let mut lex_reports = Vec::new();
    let rest = [
        criterion_5(&prime),
        criterion_6(&prime, &mut lex_reports),
        criterion_7(&prime, &mut lex_reports),
        criterion_8(&prime, &mut lex_reports),
        criterion_9(&prime, &mut lex_reports),
    ];
    for (k, outcome) in rest.into_iter().enumerate() {
        report_line(k + 5, &outcome);
        lines.push((k + 5, outcome));
    }
    let ten = criterion_10(&lex_reports);
    report_line(10, &ten);
    lines.push((10, ten));

    let identical = over_q.iter().all(|(p_record, q)| q.ok && *p_record == q.record);
    let eleven = Outcome {
        ok: identical,
        detail: format!(
            "criteria 1-4 over {} and {}: {}",
            prime.name(),
            Rationals.name(),
            if identical { "identical" } else { "differ" }
        ),
        record: Vec::new(),
    };
    report_line(11, &eleven);
    lines.push((11, eleven));

    let failed: Vec<usize> = lines.iter().filter(|(_, o)| !o.ok).map(|(k, _)| *k).collect();
    println!("acceptance: {} of {} criteria pass", lines.len() - failed.len(), lines.len());
    if !failed.is_empty() {
        std::process::exit(1);
    }
}

fn report_line(k: usize, outcome: &Outcome) {
    println!("criterion {k:>2}: {} {}", if outcome.ok { "pass" } else { "FAIL" }, outcome.detail);
}
