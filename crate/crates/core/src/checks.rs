//! The end-to-end verification suite.
//!
//! Each check compares a computed quantity with an expected value held in
//! [`Expected`].  A [`Fault`] corrupts one expected value so that the suite
//! can be seen to fail on purpose.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adams::{
    commutator_solve, congruence_rhs, di4_psi_matrices, exponent_bound, ko_phi1, psi_scalar,
    theta_of, verify_commutation, Slot,
};
use crate::group::FinAbGroup2;
use crate::linalg::{adjugate, coker_presentation, snf, IntMatrix};
use crate::padic::{dlog3, lifting_trace, modpow2, rat_to_residue, solve_l, PadicResidue};
use crate::pseudosphere::{
    match_adams_modules, order_counting_certificate, shifted_adams_table, splitting_oracle,
    v1_homotopy, v1_homotopy_closed_form,
};
use crate::{Error, OddRational, Result, MOORE_EXPONENT, SHIFT_L, SUSPENSION_SHIFT};

/// A deliberately wrong expected value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fault {
    /// `gamma` off by one.
    Gamma,
    /// The suspension parameter off by one.
    ShiftL,
    /// The lifting residue off by one.
    Lifting,
    /// `KO^5` claimed cyclic.
    Ko5,
}

impl Fault {
    pub const ALL: [Fault; 4] = [Fault::Gamma, Fault::ShiftL, Fault::Lifting, Fault::Ko5];

    pub fn name(self) -> &'static str {
        match self {
            Fault::Gamma => "gamma",
            Fault::ShiftL => "shift-l",
            Fault::Lifting => "lifting",
            Fault::Ko5 => "ko5",
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Fault::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown fault {s:?}")))
    }
}

/// Published constants the suite checks against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expected {
    pub alpha: OddRational,
    pub beta: OddRational,
    pub gamma: OddRational,
    pub l: u64,
    pub l_mod_8: u64,
    pub l_mod_1024: u64,
    pub lifting: u64,
    pub ko: [Vec<u32>; 8],
    pub k: [Vec<u32>; 2],
    pub four_sequence_orders: [u32; 5],
    pub ko2_count: u32,
    pub exponent: u32,
}

impl Expected {
    pub fn published() -> Self {
        Expected {
            alpha: OddRational::from(-27),
            beta: OddRational::new(36, 527).expect("odd"),
            gamma: OddRational::new(-243 * 41, 17).expect("odd"),
            l: SHIFT_L,
            l_mod_8: 3,
            l_mod_1024: 515,
            lifting: 192725,
            ko: [
                vec![],
                vec![],
                vec![],
                vec![21],
                vec![1],
                vec![1, 1],
                vec![1],
                vec![21],
            ],
            k: [vec![], vec![21]],
            four_sequence_orders: [3, 5, 6, 5, 3],
            ko2_count: 3,
            exponent: 21,
        }
    }

    pub fn with_fault(mut self, fault: Fault) -> Self {
        match fault {
            Fault::Gamma => self.gamma = self.gamma + OddRational::from(1),
            Fault::ShiftL => self.l += 1,
            Fault::Lifting => self.lifting += 1,
            Fault::Ko5 => self.ko[5] = vec![2],
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub pass: bool,
    pub detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }

    fn eq<T: PartialEq + fmt::Display>(what: &str, got: T, want: T) -> Self {
        if got == want {
            Outcome::new(true, format!("{what} = {got}"))
        } else {
            Outcome::new(false, format!("{what} = {got}, expected {want}"))
        }
    }
}

/// One named check, tagged with the acceptance criterion it belongs to.
pub struct CheckSpec {
    pub name: &'static str,
    pub criterion: u8,
    pub run: fn(&Expected) -> Result<Outcome>,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub criterion: u8,
    pub outcome: Outcome,
    pub elapsed: Duration,
}

/// Run one check, turning library errors into failures.
pub fn run_check(spec: &CheckSpec, expected: &Expected) -> CheckResult {
    let start = Instant::now();
    let outcome =
        (spec.run)(expected).unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
    CheckResult {
        name: spec.name,
        criterion: spec.criterion,
        outcome,
        elapsed: start.elapsed(),
    }
}

pub fn catalog() -> Vec<CheckSpec> {
    let c = |name, criterion, run| CheckSpec {
        name,
        criterion,
        run,
    };
    vec![
        c("psi3-alpha", 1, check_alpha),
        c("psi3-gamma", 1, check_gamma),
        c("psi3-beta", 1, check_beta),
        c("psi-commute", 1, check_commute),
        c("coker-theta", 2, check_coker_theta),
        c("ko-phi1-table", 3, check_ko_table),
        c("psi3-mod16", 4, check_mod16),
        c("solve-l", 5, check_solve_l),
        c("lifting-trace", 5, check_lifting),
        c("congruence", 6, check_congruence),
        c("match-at-l", 7, check_match),
        c("mismatch-near-l", 7, check_mismatch),
        c("ko2-order-count", 8, check_ko2_count),
        c("four-sequence-orders", 8, check_four_sequences),
        c("v1-dual-route", 9, check_dual_route),
        c("snf-witnesses", 10, check_snf),
        c("coker-brute-force", 10, check_coker_brute),
        c("dlog-round-trip", 10, check_dlog),
        c("exponent-bound", 10, check_exponent),
    ]
}

fn solved_psi3() -> Result<crate::QMatrix> {
    let m = di4_psi_matrices();
    let p2 = m
        .psi2()
        .to_integer()
        .ok_or_else(|| Error::Precondition("psi^2 not integral".into()))?;
    let diag: Vec<OddRational> = (0..3).map(|i| m.psi3().get(i, i).clone()).collect();
    commutator_solve(&p2, &diag)
}

fn check_alpha(x: &Expected) -> Result<Outcome> {
    Ok(Outcome::eq(
        "alpha",
        solved_psi3()?.get(1, 0).clone(),
        x.alpha.clone(),
    ))
}

fn check_gamma(x: &Expected) -> Result<Outcome> {
    Ok(Outcome::eq(
        "gamma",
        solved_psi3()?.get(2, 1).clone(),
        x.gamma.clone(),
    ))
}

fn check_beta(x: &Expected) -> Result<Outcome> {
    Ok(Outcome::eq(
        "beta",
        solved_psi3()?.get(2, 0).clone(),
        x.beta.clone(),
    ))
}

fn check_commute(_: &Expected) -> Result<Outcome> {
    let m = di4_psi_matrices();
    let solved = solved_psi3()?;
    let c = verify_commutation(m.psi2(), &solved)?;
    Ok(Outcome::new(
        c.commutes && solved == *m.psi3(),
        "solved psi^3 commutes with psi^2 and equals the constants",
    ))
}

fn check_coker_theta(_: &Expected) -> Result<Outcome> {
    let theta = theta_of(&di4_psi_matrices())?;
    let p = coker_presentation(&theta)?;
    let images: Vec<BigInt> = p.gen_images.iter().map(|v| v[0].clone()).collect();
    let want: Vec<BigInt> = [1, 8, 256].into_iter().map(BigInt::from).collect();
    let pass = p.group == FinAbGroup2::cyclic(21) && images == want;
    let shown: Vec<String> = images.iter().map(|x| x.to_string()).collect();
    Ok(Outcome::new(
        pass,
        format!("coker = {}, g1, g2, g3 -> {}", p.group, shown.join(", ")),
    ))
}

fn check_ko_table(x: &Expected) -> Result<Outcome> {
    let t = ko_phi1(&di4_psi_matrices())?;
    let ko: Vec<FinAbGroup2> =
        x.ko.iter()
            .map(|e| FinAbGroup2::from_exponents(e.iter().copied()))
            .collect();
    let k: Vec<FinAbGroup2> =
        x.k.iter()
            .map(|e| FinAbGroup2::from_exponents(e.iter().copied()))
            .collect();
    let pass = t.ko_groups() == ko && t.k_groups() == k;
    let show = |v: &[FinAbGroup2]| {
        v.iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    Ok(Outcome::new(
        pass,
        format!("KO: {}; K: {}", show(&t.ko_groups()), show(&t.k_groups())),
    ))
}

fn check_mod16(_: &Expected) -> Result<Outcome> {
    let t = ko_phi1(&di4_psi_matrices())?;
    let direct = OddRational::from(81 - 216) + OddRational::new(36 * 256, 527)?;
    let a = rat_to_residue(&direct, 4)?;
    let b = rat_to_residue(&psi_scalar(&t, 3, Slot::K(-1))?, 4)?;
    Ok(Outcome::new(
        a.value() == &BigInt::from(9) && a == b,
        format!("3^4 - 6^3 + (36/527) 2^8 = {} mod 16", a.value()),
    ))
}

fn check_solve_l(x: &Expected) -> Result<Outcome> {
    let s = solve_l(&congruence_rhs(MOORE_EXPONENT)?)?;
    let l = &s.l;
    let pass = *l == BigInt::from(x.l)
        && s.modulus_bits == 17
        && l.mod_floor(&BigInt::from(8)) == BigInt::from(x.l_mod_8)
        && l.mod_floor(&BigInt::from(1024)) == BigInt::from(x.l_mod_1024);
    Ok(Outcome::new(
        pass,
        format!("L = {l} mod 2^{}, expected {}", s.modulus_bits, x.l),
    ))
}

fn check_lifting(x: &Expected) -> Result<Outcome> {
    let t = lifting_trace(&BigInt::from(SHIFT_L))?;
    let want = BigInt::from(x.lifting);
    let pass = t.all_equal() && t.rational_route == want;
    Ok(Outcome::new(
        pass,
        format!(
            "{} / {} / {} mod 2^18",
            t.power_route, t.binomial_route, t.rational_route
        ),
    ))
}

fn check_congruence(x: &Expected) -> Result<Outcome> {
    let lhs = modpow2(&BigInt::from(3), &BigInt::from(4 * x.l + 2), MOORE_EXPONENT)?;
    let rhs = congruence_rhs(MOORE_EXPONENT)?;
    Ok(Outcome::new(
        lhs == rhs,
        format!(
            "3^{} = {} vs {} mod 2^21",
            4 * x.l + 2,
            lhs.value(),
            rhs.value()
        ),
    ))
}

fn check_match(x: &Expected) -> Result<Outcome> {
    let phi = ko_phi1(&di4_psi_matrices())?;
    let l = x.l as i64;
    let r = match_adams_modules(
        &phi,
        &shifted_adams_table(l, MOORE_EXPONENT)?,
        MOORE_EXPONENT,
    )?;
    let detail = match &r.first_mismatch {
        None => format!("{} slots agree at L = {l}", r.slots_checked),
        Some(m) => format!("L = {l}: {m}"),
    };
    Ok(Outcome::new(
        r.matched() && 8 * l + 3 == SUSPENSION_SHIFT,
        detail,
    ))
}

fn check_mismatch(x: &Expected) -> Result<Outcome> {
    let phi = ko_phi1(&di4_psi_matrices())?;
    let mut notes = Vec::new();
    let mut pass = true;
    for l in [x.l as i64 - 1, x.l as i64 + 1] {
        let r = match_adams_modules(
            &phi,
            &shifted_adams_table(l, MOORE_EXPONENT)?,
            MOORE_EXPONENT,
        )?;
        match r.first_mismatch {
            Some(m) => notes.push(format!("L = {l}: {m}")),
            None => {
                pass = false;
                notes.push(format!("L = {l} matches"));
            }
        }
    }
    Ok(Outcome::new(pass, notes.join("; ")))
}

fn check_ko2_count(x: &Expected) -> Result<Outcome> {
    let mut pass = true;
    let mut detail = String::new();
    for e in [2, MOORE_EXPONENT] {
        let c = order_counting_certificate(e)?;
        pass &= c.resolved == FinAbGroup2::from_exponents([1, 1])
            && c.rejected == vec![FinAbGroup2::cyclic(2)]
            && c.evidence[0].log2_order == x.ko2_count;
        detail = c.to_string();
    }
    Ok(Outcome::new(pass, detail))
}

fn check_four_sequences(x: &Expected) -> Result<Outcome> {
    let mut all = Vec::new();
    for i in [-3i64, 0, 1, 8] {
        let orders: Vec<u32> = [2i64, 3, 4, 5, -2]
            .iter()
            .map(|&d| splitting_oracle(i, d).map(|c| c.evidence[0].log2_order))
            .collect::<Result<_>>()?;
        all.push(orders);
    }
    let pass = all.iter().all(|o| o[..] == x.four_sequence_orders[..]);
    Ok(Outcome::new(pass, format!("log2 orders {:?}", all[0])))
}

fn check_dual_route(_: &Expected) -> Result<Outcome> {
    let mut cases = 0;
    let mut max_e = 0;
    for i in -1024i64..1024 {
        for d in 1..=8 {
            let g = v1_homotopy(i, d)?;
            max_e = max_e.max(g.exponent());
            cases += 1;
        }
    }
    let top = v1_homotopy(SHIFT_L as i64, 1)?;
    let pass = cases == 16384
        && top == v1_homotopy_closed_form(SHIFT_L as i64, 1)?
        && top.exponent() == 21;
    Ok(Outcome::new(
        pass,
        format!("{cases} cases agree; max exponent in range {max_e}, at i = L {top}"),
    ))
}

/// A random `rows x cols` matrix with entries in `[-r, r]`.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, r: i64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-r..=r)))
}

/// A random square matrix with determinant `±2^bits` and entries in
/// `[-64, 64]`: a triangular matrix with 2-power diagonal, scrambled by
/// elementary row and column operations.
pub fn random_two_power_matrix(rng: &mut impl Rng, n: usize, bits: u32) -> IntMatrix {
    loop {
        let mut split = vec![0u32; n];
        for _ in 0..bits {
            split[rng.gen_range(0..n)] += 1;
        }
        let mut a = IntMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => BigInt::from(1i64 << split[i]),
            std::cmp::Ordering::Greater => BigInt::from(rng.gen_range(-3..=3)),
            std::cmp::Ordering::Less => BigInt::zero(),
        });
        for _ in 0..2 * n {
            let (i, k) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if i == k {
                continue;
            }
            let c = BigInt::from(rng.gen_range(-2..=2));
            if rng.gen_bool(0.5) {
                for j in 0..n {
                    let t = a.get(i, j) + &c * a.get(k, j);
                    a.set(i, j, t);
                }
            } else {
                for j in 0..n {
                    let t = a.get(j, i) + &c * a.get(j, k);
                    a.set(j, i, t);
                }
            }
        }
        if (0..n).all(|i| (0..n).all(|j| a.get(i, j).abs() <= BigInt::from(64))) {
            return a;
        }
    }
}

/// `|Z^n / A Z^n|` by walking the quotient.  The coset of `v` is keyed by
/// `adj(A) v mod det A`, which is injective on the quotient, and the walk
/// starts at `0` and steps along the unit vectors until it closes up.
pub fn brute_force_coker_order(a: &IntMatrix) -> Result<u64> {
    let n = a.rows();
    let det = a.det()?.abs();
    if det.is_zero() {
        return Err(Error::Infinite);
    }
    let adj = adjugate(a)?;
    let steps: Vec<Vec<BigInt>> = (0..n).map(|j| adj.column(j)).collect();
    let origin = vec![BigInt::zero(); n];
    let mut seen: HashSet<Vec<BigInt>> = HashSet::from([origin.clone()]);
    let mut queue = vec![origin];
    while let Some(v) = queue.pop() {
        for step in &steps {
            let w: Vec<BigInt> = v
                .iter()
                .zip(step)
                .map(|(x, y)| (x + y).mod_floor(&det))
                .collect();
            if seen.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    Ok(seen.len() as u64)
}

fn check_snf(_: &Expected) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for t in 0..1000 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let a = random_matrix(&mut rng, rows, cols, 9);
        if let Err(e) = snf(&a).verify(&a) {
            return Ok(Outcome::new(false, format!("matrix {t}: {e}\n{a}")));
        }
    }
    Ok(Outcome::new(true, "1000 random matrices up to 4x4"))
}

fn check_coker_brute(_: &Expected) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ce);
    let mut cases = 0;
    for bits in 0..=10u32 {
        for _ in 0..6 {
            let a = random_two_power_matrix(&mut rng, 3, bits);
            let fast = coker_presentation(&a)?.group.log2_order().expect("finite");
            let brute = brute_force_coker_order(&a)?;
            if brute != 1u64 << fast || fast != bits {
                return Ok(Outcome::new(false, format!("2^{fast} vs {brute} for\n{a}")));
            }
            cases += 1;
        }
    }
    Ok(Outcome::new(
        true,
        format!("{cases} matrices with |det| <= 2^10"),
    ))
}

fn check_dlog(_: &Expected) -> Result<Outcome> {
    let three = BigInt::from(3);
    for prec in 3..=12u32 {
        let m = 1u64 << prec;
        let mut u = 1u64;
        for x in 0..(m / 4) {
            let r = PadicResidue::new(u, prec)?;
            let dl = dlog3(&r)?;
            if dl.exponent != BigInt::from(x) || modpow2(&three, &dl.exponent, prec)? != r {
                return Ok(Outcome::new(
                    false,
                    format!("3^{x} = {u} mod 2^{prec}, got {}", dl.exponent),
                ));
            }
            for bad in [5u64, 7] {
                let w = PadicResidue::new((u * bad) % m, prec)?;
                if !matches!(dlog3(&w), Err(Error::NotInSubgroup { .. })) {
                    return Ok(Outcome::new(
                        false,
                        format!("{} mod 2^{prec} accepted", (u * bad) % m),
                    ));
                }
            }
            u = u * 3 % m;
        }
    }
    Ok(Outcome::new(true, "all powers of 3 mod 2^3 .. 2^12"))
}

fn check_exponent(x: &Expected) -> Result<Outcome> {
    Ok(Outcome::eq("exponent", exponent_bound(), x.exponent))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_oracle() {
        let a = IntMatrix::from_rows(&[&[2i64, 0], &[1, 4]]).unwrap();
        assert_eq!(brute_force_coker_order(&a).unwrap(), 8);
        let d = IntMatrix::from_rows(&[&[2i64, 0], &[0, 2]]).unwrap();
        assert_eq!(brute_force_coker_order(&d).unwrap(), 4);
    }

    #[test]
    fn faults_are_parsed() {
        for f in Fault::ALL {
            assert_eq!(f.name().parse::<Fault>().unwrap(), f);
        }
        assert!("nope".parse::<Fault>().is_err());
    }

    #[test]
    fn gamma_fault_fails_by_name() {
        let x = Expected::published().with_fault(Fault::Gamma);
        let failed: Vec<&str> = catalog()
            .iter()
            .filter(|c| c.criterion == 1)
            .map(|c| run_check(c, &x))
            .filter(|r| !r.outcome.pass)
            .map(|r| r.name)
            .collect();
        assert_eq!(failed, vec!["psi3-gamma"]);
    }
}
