use std::fmt::Write as _;
use std::time::Instant;

use di4_core::adams::{
    commutator_solve, congruence_rhs, di4_psi_matrices, exactness_checks,
    ko_phi1 as compute_ko_phi1, psi_scalar, verify_commutation, Slot,
};
use di4_core::checks::{catalog, run_check, Expected, Fault};
use di4_core::padic::{lifting_trace, modpow2, solve_l as compute_l};
use di4_core::pseudosphere::{
    adams_table_t, match_adams_modules, pseudosphere_discriminator, reconstruct_pi_t,
    shifted_adams_table, v1_homotopy,
};
use di4_core::report::TableRow;
use di4_core::{Error, OddRational, Report, Result, MOORE_EXPONENT};
use num_bigint::BigInt;

use crate::Output;

const MAX_HOMOTOPY_ROWS: i64 = 1 << 20;

pub fn adams_verify(perturb: Option<(usize, usize)>) -> Result<Report> {
    let mut m = di4_psi_matrices();
    if let Some((r, c)) = perturb {
        if !(1..=m.rank()).contains(&r) || !(1..=m.rank()).contains(&c) {
            return Err(Error::Precondition(format!(
                "entry ({r}, {c}) is outside a {0}x{0} matrix",
                m.rank()
            )));
        }
        let bumped = m.psi3().get(r - 1, c - 1).clone() + OddRational::from(1);
        m = m.with_psi3_entry(r - 1, c - 1, bumped);
    }
    let psi2 = m
        .psi2()
        .to_integer()
        .ok_or_else(|| Error::Precondition("psi^2 must be integral".into()))?;
    let diag: Vec<OddRational> = (0..m.rank()).map(|i| m.psi3().get(i, i).clone()).collect();
    let solved = commutator_solve(&psi2, &diag)?;

    let mut report = Report::new("adams-verify");
    report
        .lower_triangle("psi^2", m.psi2())
        .lower_triangle("psi^3 (solved)", &solved)
        .lower_triangle("psi^3 (given)", m.psi3());
    let x = Expected::published();
    for (name, (i, j), want) in [
        ("psi3-alpha", (1, 0), &x.alpha),
        ("psi3-beta", (2, 0), &x.beta),
        ("psi3-gamma", (2, 1), &x.gamma),
    ] {
        let got = solved.get(i, j);
        report.check(name, got == want, format!("{got}, expected {want}"));
    }
    let c = verify_commutation(m.psi2(), m.psi3())?;
    let detail = match &c.witness {
        None => "psi^2 psi^3 = psi^3 psi^2".to_string(),
        Some((i, j, ab, ba)) => {
            format!(
                "entry ({}, {}): psi^2 psi^3 = {ab}, psi^3 psi^2 = {ba}",
                i + 1,
                j + 1
            )
        }
    };
    report.check("psi-commute", c.commutes, detail);
    report.check("psi3-given-is-solved", solved == *m.psi3(), "");
    Ok(report)
}

pub fn solve_l(prec: u32) -> Result<Report> {
    let rhs = congruence_rhs(prec)?;
    let s = compute_l(&rhs)?;
    let mut report = Report::new("solve-l");
    report
        .value("precision", prec)
        .value("rhs mod 2^P", rhs.value())
        .value("rhs mod 16", rhs.truncate(4)?.value())
        .value("L", &s.l)
        .value("L determined mod", format!("2^{}", s.modulus_bits));
    for bits in [3u32, 10, 17] {
        let shown = if bits <= s.modulus_bits {
            (&s.l % (BigInt::from(1) << bits)).to_string()
        } else {
            "undetermined".to_string()
        };
        report.value(format!("L mod 2^{bits}"), shown);
    }
    let lhs = modpow2(&BigInt::from(3), &(4 * &s.l + 2), prec)?;
    report.check(
        "congruence",
        lhs == rhs,
        format!("3^(4L+2) = {} mod 2^{prec}", lhs.value()),
    );
    if s.modulus_bits >= 17 {
        let t = lifting_trace(&s.l)?;
        report
            .check(
                "lifting-power",
                t.power_route == t.rational_route,
                t.power_route.to_string(),
            )
            .check(
                "lifting-binomial",
                t.binomial_route == t.rational_route,
                t.binomial_route.to_string(),
            )
            .check(
                "lifting-rational",
                t.all_equal(),
                t.rational_route.to_string(),
            );
    } else {
        report.value(
            "lifting trace",
            format!("needs L mod 2^17, have 2^{}", s.modulus_bits),
        );
    }
    Ok(report)
}

pub fn ko_phi1() -> Result<Report> {
    let t = compute_ko_phi1(&di4_psi_matrices())?;
    let mut report = Report::new("ko-phi1");
    for (i, g) in t.ko_groups().iter().enumerate() {
        let psi = psi_scalar(&t, 3, Slot::KO(i as i64)).ok();
        report.row(
            TableRow::new(i as i64, g)
                .with_psi3(psi.as_ref())
                .with_label("KO"),
        );
    }
    for (i, g) in t.k_groups().iter().enumerate() {
        let psi = psi_scalar(&t, 3, Slot::K(i as i64)).ok();
        report.row(
            TableRow::new(i as i64, g)
                .with_psi3(psi.as_ref())
                .with_label("K"),
        );
    }
    let images = |p: &di4_core::CokerPresentation| {
        p.gen_images
            .iter()
            .map(|v| v[0].to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    report
        .value(
            "theta",
            t.theta().to_string().trim_end().replace('\n', "; "),
        )
        .value("KO^7 generator images", images(t.ko7_presentation()))
        .value("KO^3 generator images", images(t.ko3_presentation()))
        .value("KO^5 splitting", t.ko5_certificate())
        .value("exponent", t.max_exponent());
    for c in exactness_checks(&t)? {
        report.check(
            format!("exact {}", c.segment),
            c.holds(),
            format!("alternating log2 = {}", c.alternating_log2),
        );
    }
    let d = pseudosphere_discriminator(&t, 0..16)?;
    report.value(
        "discriminator",
        format!(
            "{} (psi^3 = {} mod 16 in degree {})",
            d.class, d.psi3_mod16, d.probe
        ),
    );
    Ok(report)
}

pub fn homotopy(min: i64, max: i64) -> Result<Output> {
    if min > max {
        return Err(Error::Precondition(format!(
            "--min {min} exceeds --max {max}"
        )));
    }
    if (max - min + 1).saturating_mul(8) > MAX_HOMOTOPY_ROWS {
        return Err(Error::Precondition(format!(
            "at most {} rows of i",
            MAX_HOMOTOPY_ROWS / 8
        )));
    }
    let mut report = Report::new("homotopy");
    let mut md = String::from("# homotopy\n\n| i | d=1 | d=2 | d=3 | d=4 | d=5 | d=6 | d=7 | d=8 |\n|---|---|---|---|---|---|---|---|---|\n");
    for i in min..=max {
        let _ = write!(md, "| {i} |");
        for d in 1..=8 {
            let g = v1_homotopy(i, d)?;
            let _ = write!(md, " {g} |");
            report.row(TableRow::new(8 * i + d, &g));
        }
        md.push('\n');
    }
    Ok(Output {
        report,
        markdown: Some(md),
    })
}

pub fn pseudosphere_pi() -> Result<Report> {
    let r = reconstruct_pi_t()?;
    let mut report = Report::new("pseudosphere-pi");
    for (class, law) in r.table.laws.iter().enumerate() {
        report.value(format!("pi_(8k+{class})(T)"), law);
    }
    let certified = r
        .witnesses
        .iter()
        .filter(|w| w.certificate.is_some())
        .count();
    report
        .value("fit window", format!("|k| <= {}", r.fit_window))
        .value("exactness witnesses", r.witnesses.len())
        .value("split by certificate", certified);
    for j in -8..24 {
        report.row(TableRow::new(j, &r.table.group(j)).with_label("pi_j(T)"));
    }
    report.check("unique-table", true, "one minimal table fits and verifies");
    Ok(report)
}

pub fn match_l(l: i64) -> Result<Report> {
    let phi = compute_ko_phi1(&di4_psi_matrices())?;
    let shifted = shifted_adams_table(l, MOORE_EXPONENT)?;
    let m = match_adams_modules(&phi, &shifted, MOORE_EXPONENT)?;
    let mut report = Report::new("match");
    report
        .value("L", l)
        .value(
            "suspension",
            l.checked_mul(8)
                .and_then(|x| x.checked_add(3))
                .map_or("overflow".into(), |s| s.to_string()),
        )
        .value("slots compared", m.slots_checked);
    let detail = match &m.first_mismatch {
        None => format!(
            "{} and {} agree in degrees {:?}",
            m.left, m.right, m.degrees
        ),
        Some(x) => x.to_string(),
    };
    report.check("adams-modules-match", m.matched(), detail);
    for (name, d) in [
        ("Phi_1 DI(4)", pseudosphere_discriminator(&phi, 0..16)?),
        ("T", pseudosphere_discriminator(&adams_table_t(), 0..16)?),
    ] {
        report.value(
            format!("{name} discriminator"),
            format!("{} (degree {})", d.class, d.probe),
        );
    }
    Ok(report)
}

pub fn selftest(list: bool, fault: Option<Fault>) -> Result<Output> {
    let checks = catalog();
    let mut report = Report::new("selftest");
    if list {
        let mut md = String::from("# selftest\n\n");
        for c in &checks {
            report.value(c.name, format!("criterion {}", c.criterion));
            let _ = writeln!(md, "- {} (criterion {})", c.name, c.criterion);
        }
        return Ok(Output {
            report,
            markdown: Some(md),
        });
    }
    let expected = match fault {
        Some(f) => Expected::published().with_fault(f),
        None => Expected::published(),
    };
    let start = Instant::now();
    let mut timing = String::from("\n| check | ms |\n|---|---|\n");
    for c in &checks {
        let r = run_check(c, &expected);
        let _ = writeln!(
            timing,
            "| {} | {:.2} |",
            r.name,
            r.elapsed.as_secs_f64() * 1e3
        );
        report.check(r.name, r.outcome.pass, r.outcome.detail);
        if !r.outcome.pass {
            break;
        }
    }
    let _ = writeln!(
        timing,
        "| total | {:.2} |",
        start.elapsed().as_secs_f64() * 1e3
    );
    let md = report.to_markdown() + &timing;
    Ok(Output {
        report,
        markdown: Some(md),
    })
}
