use std::process::{Command, Output};

use di4_core::pseudosphere::v1_homotopy;
use di4_core::report::{GroupJson, Report};
use di4_core::FinAbGroup2;

fn di4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_di4"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Report, String, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = di4(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let report = Report::from_json(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (report, text, out.status.code().unwrap())
}

fn value<'a>(r: &'a Report, name: &str) -> &'a str {
    &r.values
        .iter()
        .find(|v| v.name == name)
        .unwrap_or_else(|| panic!("no value {name}"))
        .value
}

fn check<'a>(r: &'a Report, name: &str) -> &'a di4_core::report::Check {
    r.checks
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn adams_verify_reports_fractions() {
    let (r, text, code) = json(&["adams-verify"]);
    assert_eq!(code, 0);
    assert!(r.passed());
    let gamma = r
        .entries
        .iter()
        .find(|e| e.matrix == "psi^3 (solved)" && e.row == 3 && e.col == 2)
        .unwrap();
    assert_eq!(
        (gamma.value.num.as_str(), gamma.value.den.as_str()),
        ("-9963", "17")
    );
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v["entries"][0]["value"]["num"].is_string());
}

#[test]
fn perturbed_entry_fails_with_witness() {
    let (r, _, code) = json(&["adams-verify", "--perturb", "3,1"]);
    assert_eq!(code, 1);
    let c = check(&r, "psi-commute");
    assert!(!c.pass);
    assert!(c.detail.as_deref().unwrap().starts_with("entry (3, 1)"));
    assert_eq!(
        di4(&["adams-verify", "--perturb", "0,1"]).status.code(),
        Some(2)
    );
}

#[test]
fn solve_l_values() {
    let (r, _, code) = json(&["solve-l"]);
    assert_eq!(code, 0);
    assert_eq!(value(&r, "L"), "90627");
    assert_eq!(value(&r, "L mod 2^3"), "3");
    assert_eq!(value(&r, "L mod 2^10"), "515");
    assert!(r.passed() && r.checks.len() == 4);

    let (low, _, code) = json(&["solve-l", "--prec", "4"]);
    assert_eq!(code, 0);
    assert_eq!(value(&low, "L"), "0");
    assert_eq!(value(&low, "L determined mod"), "2^0");
    assert_eq!(value(&low, "rhs mod 16"), "9");

    for bad in ["3", "41"] {
        assert_eq!(di4(&["solve-l", "--prec", bad]).status.code(), Some(2));
    }
}

#[test]
fn ko_phi1_table() {
    let (r, _, code) = json(&["ko-phi1"]);
    assert_eq!(code, 0);
    let ko: Vec<Vec<u32>> = r
        .tables
        .iter()
        .filter(|t| t.label.as_deref() == Some("KO"))
        .map(|t| t.group.cyclic_2_exponents.clone())
        .collect();
    assert_eq!(
        ko,
        vec![
            vec![],
            vec![],
            vec![],
            vec![21],
            vec![1],
            vec![1, 1],
            vec![1],
            vec![21]
        ]
    );
    let k1 = r
        .tables
        .iter()
        .find(|t| t.label.as_deref() == Some("K") && t.dim == 1)
        .unwrap();
    assert_eq!(k1.group.cyclic_2_exponents, vec![21]);
    assert!(r.tables[0].psi3.is_none());
    assert!(value(&r, "discriminator").starts_with("pseudosphere-like"));
}

#[test]
fn homotopy_rows_match_library() {
    let (r, text, code) = json(&["homotopy", "--min", "90626", "--max", "90628"]);
    assert_eq!(code, 0);
    assert_eq!(r.tables.len(), 24);
    for row in &r.tables {
        let (i, d) = ((row.dim - 1).div_euclid(8), (row.dim - 1).rem_euclid(8) + 1);
        assert_eq!(FinAbGroup2::from(&row.group), v1_homotopy(i, d).unwrap());
        assert!(row.psi3.is_none());
    }
    let row = |dim: i64| &r.tables.iter().find(|t| t.dim == dim).unwrap().group;
    assert_eq!(
        row(8 * 90627 + 1),
        &GroupJson {
            cyclic_2_exponents: vec![21, 1],
            free_rank: 0
        }
    );
    assert!(row(8 * 90626 + 4).cyclic_2_exponents.is_empty());
    assert_eq!(r.to_json(), text.trim_end());

    let md = String::from_utf8(di4(&["homotopy", "--min", "-1", "--max", "0"]).stdout).unwrap();
    assert!(md.contains("| i | d=1 |"));
    assert_eq!(
        di4(&["homotopy", "--min", "1", "--max", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn json_is_deterministic() {
    for args in [
        &["ko-phi1"][..],
        &["selftest"],
        &["match"],
        &["pseudosphere-pi"],
    ] {
        let (_, a, _) = json(args);
        let (_, b, _) = json(args);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn pseudosphere_pi_table() {
    let (r, _, code) = json(&["pseudosphere-pi"]);
    assert_eq!(code, 0);
    let g = |j: i64| r.tables.iter().find(|t| t.dim == j).unwrap().group.clone();
    assert_eq!(g(3).cyclic_2_exponents, vec![3]);
    assert_eq!(g(7).cyclic_2_exponents, vec![4]);
    assert_eq!(g(15).cyclic_2_exponents, vec![5]);
    assert_eq!(g(0).free_rank, 1);
    assert!(g(1).cyclic_2_exponents.is_empty());
}

#[test]
fn match_and_neighbours() {
    let (r, _, code) = json(&["match"]);
    assert_eq!(code, 0);
    assert_eq!(value(&r, "suspension"), "725019");
    for l in ["90626", "90628"] {
        let (r, _, code) = json(&["match", "--l", l]);
        assert_eq!(code, 1);
        assert!(check(&r, "adams-modules-match")
            .detail
            .as_deref()
            .unwrap()
            .starts_with("K^1"));
    }
}

#[test]
fn selftest_passes_and_fails_by_name() {
    let (r, _, code) = json(&["selftest"]);
    assert_eq!(code, 0);
    assert_eq!(r.checks.len(), 19);

    let out = di4(&["selftest", "--inject-fault", "gamma"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("psi3-gamma"));
    let (r, _, _) = json(&["selftest", "--inject-fault", "shift-l"]);
    assert_eq!(r.first_failure().unwrap().name, "solve-l");
    assert_eq!(r.checks.last().unwrap().name, "solve-l");

    let (listed, _, code) = json(&["selftest", "--list"]);
    assert_eq!(code, 0);
    assert!(listed.checks.is_empty());
    assert_eq!(listed.values.len(), 19);
}
