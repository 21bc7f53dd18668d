//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line to the
//! real stdout, so the lines appear even when the harness captures output.

use std::io::Write;
use std::time::{Duration, Instant};

use delshadow_core::{count, delta, deletion_multidegree, full_deletion, Family, Sequence};
use delshadow_verify::{
    check_a_t, check_canonicalize, check_conjecture1, check_corollary11, check_degree_identity, check_lemma4,
    check_lemma7, check_lemma8, check_lemma9, check_prop10, check_theorem1, check_theorem2, SearchBudget,
    VerificationReport,
};

const SMALL: [(usize, u8); 6] = [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2)];
const LARGER: [(usize, u8); 5] = [(4, 2), (3, 3), (5, 1), (4, 3), (5, 2)];

fn verdict(id: u32, name: &str, ok: bool, started: Instant, limit: Option<Duration>, detail: &str) {
    let elapsed = started.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let pass = ok && in_time;
    let limit_text = limit.map(|l| format!(" limit={}s", l.as_secs())).unwrap_or_default();
    let line = format!(
        "{} criterion {id:02} {name}: {detail} elapsed={:.3}s{limit_text}\n",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
    assert!(ok, "criterion {id} ({name}) failed: {detail}");
    assert!(in_time, "criterion {id} ({name}) exceeded its time limit: {elapsed:?}");
}

fn summarize(reports: &[VerificationReport]) -> (bool, String) {
    let ok = reports.iter().all(VerificationReport::passed);
    let instances: u64 = reports.iter().map(|r| r.instances).sum();
    let violations: usize = reports.iter().map(|r| r.violations.len()).sum();
    let mut detail = format!("instances={instances} violations={violations}");
    for r in reports.iter().filter(|r| !r.passed()) {
        detail.push_str(&format!(" [{}: {}]", r.check, r.violations[0].note));
    }
    (ok, detail)
}

fn words(f: &Family) -> Vec<String> {
    f.iter().map(|x| x.to_string()).collect()
}

fn sorted(mut v: Vec<&str>) -> Vec<String> {
    v.sort();
    v.into_iter().map(String::from).collect()
}

#[test]
fn criterion_01_worked_examples() {
    let started = Instant::now();
    let mut failures = Vec::new();

    let a = Family::parse(1, &["00011", "00101"]).unwrap();
    let mut got = words(&delta(&a).unwrap());
    got.sort();
    if got != sorted(vec!["0011", "0101"]) {
        failures.push(format!("δ({{00011,00101}}) = {got:?}"));
    }

    let b = Family::parse(3, &["112", "113", "123"]).unwrap();
    if !delta(&b).unwrap().is_empty() {
        failures.push("δ({112,113,123}) is not empty".to_string());
    }

    let c = Family::parse(2, &["000", "001", "002", "121"]).unwrap();
    let mut got = words(&full_deletion(&c).unwrap());
    got.sort();
    if got != sorted(vec!["00", "01", "02", "12", "11", "21"]) {
        failures.push(format!("Δ({{000,001,002,121}}) = {got:?}"));
    }

    let x = Sequence::parse(2, "00121").unwrap();
    let y_words = ["0121", "0021", "0012"];
    let expected = [2, 1, 1];
    for (y, want) in y_words.iter().zip(expected) {
        let y = Sequence::parse(2, y).unwrap();
        let got = deletion_multidegree(&x, &y, 1);
        if got != want {
            failures.push(format!("δ_1 multidegree of {y} from 00121 is {got}, expected {want}"));
        }
    }
    // the listed words are the whole δ_1-shadow, with total multidegree 4
    let total: usize = delshadow_core::seq::all_sequences(4, 2)
        .unwrap()
        .map(|y| deletion_multidegree(&x, &y, 1))
        .sum();
    if total != 4 {
        failures.push(format!("total δ_1 multidegree of 00121 is {total}, expected 4"));
    }

    let detail = if failures.is_empty() {
        "all four examples match".to_string()
    } else {
        failures.join("; ")
    };
    verdict(1, "worked examples", failures.is_empty(), started, Some(Duration::from_secs(1)), &detail);
}

#[test]
fn criterion_02_theorem1_binary_exhaustive() {
    let started = Instant::now();
    let budget = SearchBudget::exhaustive();
    let reports: Vec<_> = (2..=4).map(|n| check_theorem1(n, 1, &budget).unwrap()).collect();
    let (mut ok, mut detail) = summarize(&reports);
    let want: u64 = [4u32, 8, 16].iter().map(|&u| 1u64 << u).sum();
    let got: u64 = reports.iter().map(|r| r.instances).sum();
    if got != want {
        ok = false;
        detail.push_str(&format!(" expected {want} families"));
    }
    verdict(2, "theorem 1, k=1, n in 2..=4, exhaustive", ok, started, Some(Duration::from_secs(60)), &detail);
}

#[test]
fn criterion_03_theorem1_ternary() {
    let started = Instant::now();
    let full = check_theorem1(2, 2, &SearchBudget::exhaustive()).unwrap();
    let bounded = SearchBudget::up_to_size(6, 100_000, 0x5eed);
    let partial = check_theorem1(3, 2, &bounded).unwrap();
    let (mut ok, mut detail) = summarize(&[full.clone(), partial.clone()]);
    // sizes ≤ 6 in full, then 10^5 samples for each of the sizes 7..=27
    let enumerated: u64 = (0..=6).map(|m| count::binomial(27, m)).sum();
    let want = enumerated + 21 * 100_000;
    if full.instances != 512 || partial.instances != want {
        ok = false;
        detail.push_str(&format!(" expected 512 + {want} families"));
    }
    verdict(3, "theorem 1, k=2, n=2 exhaustive, n=3 bounded", ok, started, Some(Duration::from_secs(600)), &detail);
}

#[test]
fn criterion_04_lemma4_sweep() {
    let started = Instant::now();
    let report = check_lemma4(10, &SearchBudget::exhaustive()).unwrap();
    let (mut ok, mut detail) = summarize(std::slice::from_ref(&report));
    let want: u64 = (1..=10u64).map(|n| (1 << n) + n + 1).sum();
    if report.instances != want {
        ok = false;
        detail.push_str(&format!(" expected {want} segments"));
    }
    verdict(4, "colex ones-count identity, n ≤ 10", ok, started, Some(Duration::from_secs(60)), &detail);
}

#[test]
fn criterion_05_compression_monotone() {
    let started = Instant::now();
    let budget = SearchBudget {
        samples: 10_000,
        ..SearchBudget::exhaustive()
    };
    let mut reports = Vec::new();
    for check in [check_lemma7, check_lemma8] {
        reports.push(check(&SMALL, &budget).unwrap());
    }
    let (ok, detail) = summarize(&reports);
    verdict(5, "compressions never grow the δ-shadow", ok, started, None, &detail);
}

#[test]
fn criterion_06_canonicalize() {
    let started = Instant::now();
    let budget = SearchBudget {
        samples: 10_000,
        ..SearchBudget::exhaustive()
    };
    let report = check_canonicalize(&SMALL, &budget).unwrap();
    let (ok, detail) = summarize(std::slice::from_ref(&report));
    verdict(6, "canonicalize reaches the initial segment", ok, started, None, &detail);
}

#[test]
fn criterion_07_lemma9_sweeps() {
    let started = Instant::now();
    let report = check_lemma9(8, &SearchBudget::exhaustive()).unwrap();
    let (ok, detail) = summarize(&[report]);
    verdict(7, "segment inequalities on [n]^(r), n ≤ 8", ok, started, None, &detail);
}

#[test]
fn criterion_08_averaging_bound() {
    let started = Instant::now();
    // 10^5 random families for each radius of the larger universes
    let budget = SearchBudget {
        samples: 100_000,
        ..SearchBudget::exhaustive()
    };
    let mut exhaustive = SMALL.to_vec();
    exhaustive.extend([(4, 1), (1, 3), (2, 3)]);
    let bound = check_prop10(&exhaustive, &LARGER[..2], &budget).unwrap();
    let equality = check_corollary11(5, 3, &[(2, 1), (2, 2), (3, 1)], &budget).unwrap();
    let (ok, detail) = summarize(&[bound, equality]);
    verdict(8, "averaging bound and its equality case", ok, started, None, &detail);
}

#[test]
fn criterion_09_degree_identity() {
    let started = Instant::now();
    let report = check_degree_identity(4, 3, &SearchBudget::exhaustive()).unwrap();
    let (mut ok, mut detail) = summarize(std::slice::from_ref(&report));
    // one instance per (n, k, r, y)
    let want: u64 = (1..=4u32)
        .flat_map(|n| (1..=3u64).map(move |k| (k + 1) * (k + 1).pow(n - 1)))
        .sum();
    if report.instances != want {
        ok = false;
        detail.push_str(&format!(" expected {want} instances"));
    }
    verdict(9, "total deletion multidegree is n(r+1)", ok, started, None, &detail);
}

#[test]
fn criterion_10_theorem2() {
    let started = Instant::now();
    let budget = SearchBudget::exhaustive();
    let reports: Vec<_> = (1..=4).map(|n| check_theorem2(n, &budget).unwrap()).collect();
    let (ok, detail) = summarize(&reports);
    verdict(10, "simplicial segments minimise Δ, k=1, n ≤ 4", ok, started, None, &detail);
}

#[test]
fn criterion_11_subcubes_and_bounded_zero_families() {
    let started = Instant::now();
    let budget = SearchBudget::exhaustive();
    let mut reports = Vec::new();
    for n in 1..=4 {
        for k in 1..=3 {
            reports.push(check_a_t(n, k, &budget).unwrap());
        }
    }
    let (mut ok, mut detail) = summarize(&reports);
    // reports run n-major over k in 1..=3
    let at22 = &reports[3 + 1];
    if at22.instances != 2 + 512 {
        ok = false;
        detail.push_str(" (2,2) minimality was not searched exhaustively");
    }
    for (n, k) in [(2, 2), (3, 2)] {
        let probe = check_conjecture1(n, k, &budget).unwrap();
        ok &= probe.passed();
        let last = probe.observations.last().cloned().unwrap_or_default();
        detail.push_str(&format!(" | B_(r,t) at ({n},{k}): {last}"));
        for w in probe.observations.iter().filter(|o| o.starts_with("WITNESS")) {
            detail.push_str(&format!(" | {w}"));
        }
    }
    verdict(11, "A_t subcubes and the B_(r,t) probe", ok, started, None, &detail);
}
