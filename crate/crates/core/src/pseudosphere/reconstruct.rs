//! Recovering `pi_*(T)` from `pi_*(T /\ M(2^21))`.
//!
//! The sequence `-2^21-> pi_(j+1)(T) -> pi_j(Y) -> pi_j(T) -2^21->` gives
//! `0 -> G_(j+1) / 2^21 -> pi_j(Y) -> G_j[2^21] -> 0` with `G_j = pi_j(T)`.
//! Every such extension is either trivially split (one end is zero) or one of
//! the four certified ones, so `pi_j(Y)` is the disjoint union of the two
//! exponent multisets `A_j = G_(j+1) / 2^21` and `B_j = G_j[2^21]`, and
//! `G_j` is pinned down by `A_(j-1) = B_j + {21}^(free rank)`.
//!
//! A window of degrees is solved exactly by dynamic programming over these
//! splittings.  Degrees whose answer is forced are then fitted, per residue
//! class mod 8, by a law that depends on `k = floor(j / 8)` only through a
//! 2-adic valuation: a constant group plus at most one term
//! `Z/2^(nu(k - c) + a)`, read as `Z_2` when `k = c`; `a = infinity` gives a
//! lone `Z_2` in degree `8c + class`.  The simplest family of laws making
//! every sequence exact is the answer.

use std::fmt;

use crate::group::FinAbGroup2;
use crate::padic::val2_i64;
use crate::{Error, Result, Val2, MOORE_EXPONENT};

use super::homotopy::{pi_t_moore_at, sequence_at};

const E: u32 = MOORE_EXPONENT;

/// `Z/2^(nu(k - center) + offset)` for `k != center`, `Z_2` at `k = center`.
/// `offset = None` means the term vanishes away from the center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NuTerm {
    pub center: i64,
    pub offset: Option<u32>,
}

impl NuTerm {
    pub fn at(&self, k: i64) -> FinAbGroup2 {
        match (val2_i64(k - self.center), self.offset) {
            (Val2::Infinity, _) => FinAbGroup2::trivial().with_free_rank(1),
            (_, None) => FinAbGroup2::trivial(),
            (Val2::Finite(v), Some(a)) => FinAbGroup2::cyclic(v as u32 + a),
        }
    }
}

/// `pi_(8k + class)(T)` as a function of `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorsionLaw {
    pub constant: FinAbGroup2,
    pub nu: Option<NuTerm>,
}

impl TorsionLaw {
    pub fn at(&self, k: i64) -> FinAbGroup2 {
        match &self.nu {
            Some(t) => self.constant.direct_sum(&t.at(k)),
            None => self.constant.clone(),
        }
    }

    fn complexity(&self) -> usize {
        usize::from(self.nu.is_some())
    }
}

impl fmt::Display for TorsionLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = self.nu.map(|t| {
            let arg = match t.center {
                0 => "k".to_string(),
                c if c < 0 => format!("k+{}", -c),
                c => format!("k-{c}"),
            };
            match t.offset {
                Some(a) => format!("Z/2^(nu({arg})+{a})"),
                None => format!("Z_2 at {arg}=0"),
            }
        });
        match (self.constant.is_trivial(), term) {
            (_, None) => write!(f, "{}", self.constant),
            (true, Some(t)) => f.write_str(&t),
            (false, Some(t)) => write!(f, "{} + {t}", self.constant),
        }
    }
}

/// `pi_j(T)` for every integer `j`, one law per residue of `j` mod 8.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiTTable {
    pub laws: [TorsionLaw; 8],
}

impl PiTTable {
    pub fn group(&self, j: i64) -> FinAbGroup2 {
        self.laws[j.rem_euclid(8) as usize].at(j.div_euclid(8))
    }

    /// `pi_j(Y)` predicted by the sequence, with its two ends.
    fn predict(&self, j: i64) -> (FinAbGroup2, FinAbGroup2) {
        (
            self.group(j + 1).quotient_by_pow2(E),
            self.group(j).torsion_pow2(E),
        )
    }
}

/// Exactness of `0 -> A_j -> pi_j(Y) -> B_j -> 0` in one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessWitness {
    pub degree: i64,
    pub sub: FinAbGroup2,
    pub quotient: FinAbGroup2,
    pub middle: FinAbGroup2,
    /// Name of the split certificate used when both ends are nonzero.
    pub certificate: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructedPiT {
    pub table: PiTTable,
    /// `k` range used to solve for the laws.
    pub fit_window: i64,
    pub witnesses: Vec<ExactnessWitness>,
}

/// Solve on `|k| <= 32` and verify on `|k| <= 256` plus a few degrees of
/// large valuation.
pub fn reconstruct_pi_t() -> Result<ReconstructedPiT> {
    reconstruct_pi_t_with(32, 256, &pi_t_moore_at)
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// All ways of writing `p` as `A + B` (multisets), without repeats.
fn splittings(p: &[u32]) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    for mask in 0u32..(1 << p.len()) {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (idx, &e) in p.iter().enumerate() {
            if mask >> idx & 1 == 1 {
                a.push(e)
            } else {
                b.push(e)
            }
        }
        let pair = (sorted(a), sorted(b));
        if !out.contains(&pair) {
            out.push(pair);
        }
    }
    out
}

/// If `a = b + {21}^r`, the group `G` with `G[2^21] = b` and `G / 2^21 = a`.
fn glue(a: &[u32], b: &[u32]) -> Option<FinAbGroup2> {
    let mut rest = a.to_vec();
    for e in b {
        let pos = rest.iter().position(|x| x == e)?;
        rest.remove(pos);
    }
    rest.iter()
        .all(|&e| e == E)
        .then(|| FinAbGroup2::from_exponents(b.iter().copied()).with_free_rank(rest.len() as u32))
}

struct Window {
    lo: i64,
    states: Vec<Vec<(Vec<u32>, Vec<u32>)>>,
}

impl Window {
    fn new(k_max: i64, pi_y: &dyn Fn(i64) -> FinAbGroup2) -> Self {
        let lo = -8 * k_max - 2;
        let hi = 8 * k_max + 5;
        let states = (lo..=hi)
            .map(|j| {
                let p = pi_y(j);
                splittings(p.exponents())
                    .into_iter()
                    .filter(|(a, b)| a.is_empty() || b.is_empty() || sequence_at(j).is_some())
                    .collect()
            })
            .collect();
        Window { lo, states }
    }

    /// For each interior degree, the set of groups `G_j` occurring in some
    /// exact chain.
    #[allow(clippy::needless_range_loop)]
    fn candidates(&self) -> Result<Vec<(i64, Vec<FinAbGroup2>)>> {
        let n = self.states.len();
        let link =
            |j: usize, s: usize, t: usize| glue(&self.states[j - 1][s].0, &self.states[j][t].1);
        let mut fwd: Vec<Vec<bool>> = vec![vec![true; self.states[0].len()]];
        for j in 1..n {
            let row = (0..self.states[j].len())
                .map(|t| {
                    (0..self.states[j - 1].len()).any(|s| fwd[j - 1][s] && link(j, s, t).is_some())
                })
                .collect();
            fwd.push(row);
        }
        let mut bwd: Vec<Vec<bool>> = vec![Vec::new(); n];
        bwd[n - 1] = vec![true; self.states[n - 1].len()];
        for j in (0..n - 1).rev() {
            bwd[j] = (0..self.states[j].len())
                .map(|s| {
                    (0..self.states[j + 1].len())
                        .any(|t| bwd[j + 1][t] && link(j + 1, s, t).is_some())
                })
                .collect();
        }
        if !fwd[n - 1].iter().any(|&x| x) {
            return Err(Error::NoConsistentTable(
                "no exact chain in the solving window".into(),
            ));
        }
        let mut out = Vec::new();
        for j in 1..n {
            let mut groups: Vec<FinAbGroup2> = Vec::new();
            for s in 0..self.states[j - 1].len() {
                for t in 0..self.states[j].len() {
                    if fwd[j - 1][s] && bwd[j][t] {
                        if let Some(g) = link(j, s, t) {
                            if !groups.contains(&g) {
                                groups.push(g);
                            }
                        }
                    }
                }
            }
            out.push((self.lo + j as i64, groups));
        }
        Ok(out)
    }
}

/// `g` minus one copy of the summand `t` (a single cyclic or free summand).
fn remove_summand(g: &FinAbGroup2, t: &FinAbGroup2) -> Option<FinAbGroup2> {
    if t.is_trivial() {
        return Some(g.clone());
    }
    if t.free_rank() == 1 {
        return (g.free_rank() >= 1).then(|| g.torsion().with_free_rank(g.free_rank() - 1));
    }
    let e = t.exponent();
    let mut exps = g.exponents().to_vec();
    let pos = exps.iter().position(|&x| x == e)?;
    exps.remove(pos);
    Some(FinAbGroup2::from_exponents(exps).with_free_rank(g.free_rank()))
}

/// Every law of complexity at most one matching all observations `(k, G)`.
fn fit_class(obs: &[(i64, FinAbGroup2)], k_max: i64) -> Vec<TorsionLaw> {
    let mut fits = Vec::new();
    let Some((k0, g0)) = obs.first() else {
        return fits;
    };
    if obs.iter().all(|(_, g)| g == g0) {
        fits.push(TorsionLaw {
            constant: g0.clone(),
            nu: None,
        });
    }
    let offsets = std::iter::once(None).chain((1..=E).map(Some));
    for offset in offsets {
        for center in -k_max..=k_max {
            let term = NuTerm { center, offset };
            let Some(constant) = remove_summand(g0, &term.at(*k0)) else {
                continue;
            };
            let law = TorsionLaw {
                constant,
                nu: Some(term),
            };
            if obs.iter().all(|(k, g)| law.at(*k) == *g) {
                fits.push(law);
            }
        }
    }
    fits
}

fn check_degree(
    table: &PiTTable,
    j: i64,
    pi_y: &dyn Fn(i64) -> FinAbGroup2,
) -> std::result::Result<ExactnessWitness, String> {
    let (sub, quotient) = table.predict(j);
    let middle = pi_y(j);
    if sub.direct_sum(&quotient) != middle {
        return Err(format!(
            "degree {j}: {sub} and {quotient} do not assemble to {middle}"
        ));
    }
    let certificate = if sub.is_trivial() || quotient.is_trivial() {
        None
    } else {
        match sequence_at(j) {
            Some(seq) if seq.sub == sub && seq.quotient == quotient => {
                Some(format!("split-pi-{}", (j + 2).rem_euclid(8) - 2))
            }
            _ => {
                return Err(format!(
                    "degree {j}: extension of {quotient} by {sub} is not certified"
                ))
            }
        }
    };
    Ok(ExactnessWitness {
        degree: j,
        sub,
        quotient,
        middle,
        certificate,
    })
}

/// Degrees checked after fitting: `|k| <= verify` and a few `k` of high valuation.
fn verification_degrees(verify: i64) -> Vec<i64> {
    let mut ks: Vec<i64> = (-verify..=verify).collect();
    for big in [1i64 << 16, 1 << 17, 1 << 18, 3 << 20] {
        ks.extend([big - 1, big, -big - 1, -big]);
    }
    ks.sort_unstable();
    ks.dedup();
    ks.into_iter()
        .flat_map(|k| (0..8).map(move |c| 8 * k + c))
        .collect()
}

/// [`reconstruct_pi_t`] against an arbitrary `pi_*(Y)` table: solve on
/// `|k| <= k_max`, verify on `|k| <= verify`.
pub fn reconstruct_pi_t_with(
    k_max: i64,
    verify: i64,
    pi_y: &dyn Fn(i64) -> FinAbGroup2,
) -> Result<ReconstructedPiT> {
    if k_max < 2 || verify < k_max {
        return Err(Error::Precondition("window too small".into()));
    }
    let window = Window::new(k_max, pi_y);
    let candidates = window.candidates()?;

    // Forced groups, away from the two boundary degrees and ignoring anything
    // whose torsion reaches 2^21 (those only bound the exponent from below).
    let mut obs: Vec<Vec<(i64, FinAbGroup2)>> = vec![Vec::new(); 8];
    let (first, last) = (
        candidates.first().map(|c| c.0),
        candidates.last().map(|c| c.0),
    );
    for (j, groups) in &candidates {
        if Some(*j) == first || Some(*j) == last || groups.len() != 1 {
            continue;
        }
        let g = &groups[0];
        if g.exponent() < E {
            obs[j.rem_euclid(8) as usize].push((j.div_euclid(8), g.clone()));
        }
    }
    let mut options: Vec<Vec<TorsionLaw>> = Vec::with_capacity(8);
    for (class, o) in obs.iter().enumerate() {
        let fits = fit_class(o, k_max);
        if fits.is_empty() {
            return Err(Error::NoConsistentTable(format!(
                "no valuation law fits pi_(8k+{class})(T) on |k| <= {k_max}"
            )));
        }
        options.push(fits);
    }

    let fit_degrees: Vec<i64> = (-8 * k_max - 1..=8 * k_max + 4).collect();
    let check_degrees = verification_degrees(verify);
    let consistent = |table: &PiTTable| {
        fit_degrees
            .iter()
            .all(|&j| check_degree(table, j, pi_y).is_ok())
    };

    // Search assignments by total complexity.
    for budget in 0..=8usize {
        let mut found: Vec<PiTTable> = Vec::new();
        let mut choice = [0usize; 8];
        loop {
            let laws: Vec<TorsionLaw> = (0..8).map(|c| options[c][choice[c]].clone()).collect();
            if laws.iter().map(TorsionLaw::complexity).sum::<usize>() == budget {
                let table = PiTTable {
                    laws: laws.try_into().expect("8 laws"),
                };
                if consistent(&table) {
                    found.push(table);
                }
            }
            let mut c = 0;
            while c < 8 {
                choice[c] += 1;
                if choice[c] < options[c].len() {
                    break;
                }
                choice[c] = 0;
                c += 1;
            }
            if c == 8 {
                break;
            }
        }
        let Some(table) = found.first().cloned() else {
            continue;
        };
        if let Some(other) = found
            .iter()
            .find(|t| check_degrees.iter().any(|&j| t.group(j) != table.group(j)))
        {
            let j = check_degrees
                .iter()
                .copied()
                .find(|&j| other.group(j) != table.group(j))
                .expect("differs");
            return Err(Error::AmbiguousTable(format!(
                "pi_{j}(T) could be {} or {}",
                table.group(j),
                other.group(j)
            )));
        }
        let witnesses = check_degrees
            .iter()
            .map(|&j| check_degree(&table, j, pi_y))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(Error::NoConsistentTable)?;
        return Ok(ReconstructedPiT {
            table,
            fit_window: k_max,
            witnesses,
        });
    }
    Err(Error::NoConsistentTable(
        "no family of valuation laws makes the sequence exact".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(e: &[u32]) -> FinAbGroup2 {
        FinAbGroup2::from_exponents(e.iter().copied())
    }

    #[test]
    fn splitting_enumeration() {
        assert_eq!(splittings(&[1, 1, 1]).len(), 4);
        assert_eq!(splittings(&[3, 1]).len(), 4);
        assert_eq!(glue(&[21, 3], &[3]), Some(g(&[3]).with_free_rank(1)));
        assert_eq!(glue(&[3], &[21]), None);
    }

    #[test]
    fn pseudosphere_homotopy() {
        let r = reconstruct_pi_t().unwrap();
        let t = &r.table;
        for k in [-9i64, -2, 1, 5, 12] {
            assert_eq!(t.group(8 * k + 3), g(&[3]));
            assert_eq!(t.group(8 * k + 4), g(&[1]));
            assert_eq!(t.group(8 * k + 5), g(&[1, 1]));
            assert_eq!(t.group(8 * k + 6), g(&[1]));
            assert_eq!(
                t.group(8 * k + 7),
                g(&[val2_i64(k + 1).finite().unwrap() as u32 + 4])
            );
            for c in [0, 1, 2] {
                assert!(t.group(8 * k + c).is_trivial());
            }
        }
        let z = FinAbGroup2::trivial().with_free_rank(1);
        assert_eq!(t.group(-1), z);
        assert_eq!(t.group(0), z);
        assert_eq!(t.group(8 * ((1 << 20) - 1) + 7), g(&[24]));
        // pi_(8i)(T)[2^21] = 0, and pi_(8i+3)(T) / 2^21 = Z/8 feeds degree 8i+2.
        assert!(r
            .witnesses
            .iter()
            .filter(|w| w.degree.rem_euclid(8) == 0)
            .all(|w| w.quotient.is_trivial()));
        let w2 = r.witnesses.iter().find(|w| w.degree == 8 * 3 + 2).unwrap();
        assert_eq!(w2.sub, g(&[3]));
        assert!(
            r.witnesses
                .iter()
                .filter(|w| w.certificate.is_some())
                .count()
                > 0
        );
    }

    #[test]
    fn corrupted_input_is_rejected() {
        let bad = |n: i64| {
            if n == 8 * 5 + 2 {
                g(&[2])
            } else {
                pi_t_moore_at(n)
            }
        };
        assert!(reconstruct_pi_t_with(8, 16, &bad).is_err());
    }
}
