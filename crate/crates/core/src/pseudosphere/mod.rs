//! The K-theoretic pseudosphere `T` (the `K/2`-localization of
//! `S^0 u_eta e^2 u_2 e^3`), its smash products with Moore spectra, and the
//! identification of `Phi_1 DI(4)` with a suspension of `T /\ M(2^21)`.

mod homotopy;
mod matching;
mod reconstruct;

pub use homotopy::{
    four_sequences, moore_exponent_for, pi_m_k2, pi_t_moore, pi_t_moore_at, sequence_certificate,
    splitting_oracle, v1_homotopy, v1_homotopy_closed_form, ShortExact,
};
pub use matching::{
    match_adams_modules, pseudosphere_discriminator, shifted_adams_table, Classification,
    Discrimination, MatchReport, Mismatch, MismatchKind,
};
pub use reconstruct::{
    reconstruct_pi_t, reconstruct_pi_t_with, ExactnessWitness, NuTerm, PiTTable, ReconstructedPiT,
    TorsionLaw,
};

use crate::graded::{AdamsModuleView, Justification, KoSlot, OrderCount, PsiLaw, SplitCertificate};
use crate::group::FinAbGroup2;
use crate::{Error, OddRational, Result};

/// `KO`-type (period 8) or `K`-type (period 2) data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theory {
    KO,
    K,
}

impl Theory {
    pub fn period(self) -> i64 {
        match self {
            Theory::KO => 8,
            Theory::K => 2,
        }
    }
}

/// One periodic family of Adams-module slots, optionally suspended.
///
/// `slots[r]` describes degree `r` of the unsuspended spectrum; the table
/// reports degree `n` from `slots[(n - shift) mod period]` with its laws
/// re-anchored, so `KO^n(Sigma^shift X) = KO^(n - shift)(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdamsGradedTable {
    theory: Theory,
    slots: Vec<KoSlot>,
    shift: i64,
}

impl AdamsGradedTable {
    pub fn new(theory: Theory, slots: Vec<KoSlot>) -> Result<Self> {
        if slots.len() as i64 != theory.period() {
            return Err(Error::Shape(format!(
                "{theory:?} tables need {} slots, got {}",
                theory.period(),
                slots.len()
            )));
        }
        Ok(AdamsGradedTable {
            theory,
            slots,
            shift: 0,
        })
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn period(&self) -> i64 {
        self.theory.period()
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// The slot in absolute degree `n`.
    pub fn slot(&self, n: i64) -> KoSlot {
        let r = (n - self.shift).rem_euclid(self.period()) as usize;
        let s = &self.slots[r];
        KoSlot {
            group: s.group.clone(),
            psi3: s.psi3.as_ref().map(|l| l.suspended(self.shift)),
            psi_minus1: s.psi_minus1.as_ref().map(|l| l.suspended(self.shift)),
        }
    }

    pub fn group(&self, n: i64) -> FinAbGroup2 {
        self.slot(n).group
    }

    pub fn suspended(&self, s: i64) -> Self {
        AdamsGradedTable {
            shift: self.shift + s,
            ..self.clone()
        }
    }
}

/// `KO^*` and `K^*` of one spectrum, plus the certificates used to build them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAdamsModule {
    pub label: String,
    pub ko: AdamsGradedTable,
    pub k: AdamsGradedTable,
    pub certificates: Vec<SplitCertificate>,
}

impl GradedAdamsModule {
    pub fn suspended(&self, s: i64) -> Self {
        GradedAdamsModule {
            label: format!("Sigma^{s} {}", self.label),
            ko: self.ko.suspended(s),
            k: self.k.suspended(s),
            certificates: self.certificates.clone(),
        }
    }
}

impl AdamsModuleView for GradedAdamsModule {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn ko(&self, n: i64) -> KoSlot {
        self.ko.slot(n)
    }

    fn k(&self, n: i64) -> KoSlot {
        self.k.slot(n)
    }
}

/// `psi^k = k^(-i/2)` in degree `i`.
fn bott(k: i64) -> PsiLaw {
    PsiLaw::Bott {
        k,
        base: OddRational::from(1),
        anchor: 0,
    }
}

fn bott_slot(group: FinAbGroup2) -> KoSlot {
    KoSlot::new(group, bott(3), bott(-1))
}

fn z2() -> FinAbGroup2 {
    FinAbGroup2::cyclic(1)
}

fn free() -> FinAbGroup2 {
    FinAbGroup2::trivial().with_free_rank(1)
}

/// `K^*(T)` and `KO^*(T)`.
pub fn adams_table_t() -> GradedAdamsModule {
    let k = vec![bott_slot(free()), KoSlot::zero()];
    let ko = vec![
        bott_slot(free()),
        KoSlot::zero(),
        KoSlot::trivial_action(z2()),
        KoSlot::trivial_action(z2()),
        bott_slot(free()),
        KoSlot::zero(),
        KoSlot::zero(),
        KoSlot::zero(),
    ];
    GradedAdamsModule {
        label: "T".into(),
        ko: AdamsGradedTable::new(Theory::KO, ko).expect("8 slots"),
        k: AdamsGradedTable::new(Theory::K, k).expect("2 slots"),
        certificates: Vec::new(),
    }
}

/// `KO^j(M(2))` for `M(2) = S^-1 u_2 e^0`, `j = 0..7`; every `psi^k` is 1.
pub fn ko_moore2() -> Vec<FinAbGroup2> {
    let g = |e: &[u32]| FinAbGroup2::from_exponents(e.iter().copied());
    vec![
        g(&[1]),
        g(&[]),
        g(&[]),
        g(&[]),
        g(&[1]),
        g(&[1]),
        g(&[2]),
        g(&[1]),
    ]
}

/// Name of the certificate resolving `KO^2(T /\ M(2^e))`.
pub const KO2_SPLIT: &str = "KO2-split";

/// Name of the certificate for `T /\ M(2) = Sigma^4 M(2)` in K/2-local terms.
pub const MOORE_T_EQUIVALENCE: &str = "T-moore-2-equivalence";

/// `KO^i(Y)` from `0 -> KO^i(X)/2^e -> KO^i(Y) -> KO^(i+1)(X)[2^e] -> 0`
/// for `Y = X /\ M(2^e)`: the two ends and every extension between them.
fn moore_les(groups: &[FinAbGroup2], e: u32) -> Vec<(FinAbGroup2, FinAbGroup2, Vec<FinAbGroup2>)> {
    let p = groups.len();
    (0..p)
        .map(|i| {
            let sub = groups[i].quotient_by_pow2(e);
            let quot = groups[(i + 1) % p].torsion_pow2(e);
            let candidates = FinAbGroup2::extensions(&sub, &quot);
            (sub, quot, candidates)
        })
        .collect()
}

/// `KO^*` and `K^*` of `T /\ M(2^e)`.
///
/// For `e > 1` the groups come from the long exact sequence of `2^e` on
/// `KO^*(T)`; the only undetermined extension, in degree 2, is settled by
/// [`order_counting_certificate`].  For `e = 1` the table is `KO^(i-4)(M(2))`.
pub fn adams_table_t_moore(e: u32) -> Result<GradedAdamsModule> {
    if e == 0 {
        return Err(Error::Precondition(
            "Moore exponent must be at least 1".into(),
        ));
    }
    let t = adams_table_t();
    let ko_t: Vec<FinAbGroup2> = (0..8).map(|i| t.ko.group(i)).collect();
    let k_t: Vec<FinAbGroup2> = (0..2).map(|i| t.k.group(i)).collect();

    let k_slots: Vec<KoSlot> = moore_les(&k_t, e)
        .into_iter()
        .map(|(sub, quot, _)| {
            let g = sub.direct_sum(&quot);
            if g.is_trivial() {
                KoSlot::zero()
            } else {
                bott_slot(g)
            }
        })
        .collect();

    let mut certificates = Vec::new();
    let ko_slots: Vec<KoSlot> = if e == 1 {
        let ko_m = ko_moore2();
        certificates.push(SplitCertificate {
            name: MOORE_T_EQUIVALENCE.into(),
            location: "KO^i(T /\\ M(2)) = KO^(i-4)(M(2))".into(),
            justification: Justification::Cited,
            resolved: ko_m[6].clone(),
            rejected: vec![FinAbGroup2::from_exponents([1, 1])],
            evidence: Vec::new(),
        });
        (0..8)
            .map(|i| {
                let g = ko_m[(i + 4) % 8].clone();
                if g.is_trivial() {
                    KoSlot::zero()
                } else {
                    KoSlot::trivial_action(g)
                }
            })
            .collect()
    } else {
        let cert = order_counting_certificate(e)?;
        let mut slots = Vec::with_capacity(8);
        for (i, (sub, quot, candidates)) in moore_les(&ko_t, e).into_iter().enumerate() {
            let g = match candidates.len() {
                1 => candidates.into_iter().next().expect("one candidate"),
                _ if i == 2 => cert.resolved.clone(),
                _ => {
                    return Err(Error::InternalMismatch(format!(
                        "unresolved extension of {quot} by {sub} in degree {i}"
                    )))
                }
            };
            // Free summands of KO^*(T) reduce to Z/2^e with the Bott law; the
            // Z/2 classes carry psi^k = 1.
            let slot = if g.is_trivial() {
                KoSlot::zero()
            } else if ko_t[i].free_rank() > 0 {
                bott_slot(g)
            } else {
                KoSlot::trivial_action(g)
            };
            slots.push(slot);
        }
        certificates.push(cert);
        slots
    };
    Ok(GradedAdamsModule {
        label: format!("T /\\ M(2^{e})"),
        ko: AdamsGradedTable::new(Theory::KO, ko_slots)?,
        k: AdamsGradedTable::new(Theory::K, k_slots)?,
        certificates,
    })
}

/// Rules out `KO^2(T /\ M(2^e)) = Z/4` for `e > 1`.
///
/// With `Y = T /\ M(2^e)`, `M(2^e) /\ M(2) = Sigma^-1 M(2) v M(2)` gives
/// `|KO^2(Y /\ M(2))| = |KO^2(T /\ M(2))| * |KO^3(T /\ M(2))|`, while the mod 2
/// sequence `KO^2(Y) -2-> KO^2(Y) -> KO^2(Y /\ M(2)) -> KO^3(Y) -2->` gives
/// `|G / 2| * |KO^3(Y)[2]|` for each candidate `G`.
pub fn order_counting_certificate(e: u32) -> Result<SplitCertificate> {
    if e <= 1 {
        return Err(Error::Precondition(format!(
            "order counting needs e > 1, got {e}"
        )));
    }
    let t = adams_table_t();
    let ko_t: Vec<FinAbGroup2> = (0..8).map(|i| t.ko.group(i)).collect();
    let ko_tm2: Vec<FinAbGroup2> = (0..8).map(|i| ko_moore2()[(i + 4) % 8].clone()).collect();
    order_counting_from(&ko_t, &ko_tm2, e)
}

/// [`order_counting_certificate`] on explicit input tables.
pub fn order_counting_from(
    ko_t: &[FinAbGroup2],
    ko_t_m2: &[FinAbGroup2],
    e: u32,
) -> Result<SplitCertificate> {
    if ko_t.len() != 8 || ko_t_m2.len() != 8 {
        return Err(Error::Shape("KO tables need 8 slots".into()));
    }
    let log = |g: &FinAbGroup2| {
        g.log2_order()
            .ok_or_else(|| Error::ContradictionNotFound(format!("{g} is infinite")))
    };
    let les = moore_les(ko_t, e);
    let (sub, quot, candidates) = les[2].clone();
    let ko3_y = les[3].2.first().cloned().unwrap_or_default();
    let actual = log(&ko_t_m2[2])? + log(&ko_t_m2[3])?;
    let mut resolved = Vec::new();
    let mut rejected = Vec::new();
    for g in candidates {
        let predicted = log(&g.quotient_by_pow2(1))? + log(&ko3_y.torsion_pow2(1))?;
        if predicted == actual {
            resolved.push(g);
        } else {
            rejected.push(g);
        }
    }
    if resolved.len() != 1 || rejected.is_empty() {
        return Err(Error::ContradictionNotFound(format!(
            "counting |KO^2(Y /\\ M(2))| = 2^{actual} leaves {} of the extensions of {quot} by {sub}",
            resolved.len()
        )));
    }
    let resolved = resolved.pop().expect("one survivor");
    let mut evidence = vec![OrderCount {
        label: "|KO^2(T /\\ M(2))| * |KO^3(T /\\ M(2))|".into(),
        log2_order: actual,
    }];
    for g in &rejected {
        evidence.push(OrderCount {
            label: format!("|KO^2(Y /\\ M(2))| if KO^2(Y) = {g}"),
            log2_order: log(&g.quotient_by_pow2(1))? + log(&ko3_y.torsion_pow2(1))?,
        });
    }
    Ok(SplitCertificate {
        name: KO2_SPLIT.into(),
        location: format!("0 -> {sub} -> KO^2(T /\\ M(2^{e})) -> {quot} -> 0"),
        justification: Justification::OrderCounting,
        resolved,
        rejected,
        evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(e: &[u32]) -> FinAbGroup2 {
        FinAbGroup2::from_exponents(e.iter().copied())
    }

    #[test]
    fn pseudosphere_table() {
        let t = adams_table_t();
        assert_eq!(t.ko.group(2), g(&[1]));
        assert_eq!(t.ko(2).law(3).unwrap(), &PsiLaw::one());
        assert!(t.k.group(1).is_trivial());
        assert_eq!(t.ko.group(4), free());
        assert_eq!(t.ko(4).law(3).unwrap().exact(4).unwrap().to_string(), "1/9");
    }

    #[test]
    fn smash_with_moore() {
        let y = adams_table_t_moore(21).unwrap();
        let expect = [
            g(&[21]),
            g(&[1]),
            g(&[1, 1]),
            g(&[1]),
            g(&[21]),
            g(&[]),
            g(&[]),
            g(&[]),
        ];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(&y.ko.group(i as i64), e, "degree {i}");
        }
        assert_eq!(y.k.group(0), g(&[21]));
        assert!(y.k.group(1).is_trivial());
        assert_eq!(y.ko(2).law(3).unwrap(), &PsiLaw::one());
        let m2 = adams_table_t_moore(1).unwrap();
        assert_eq!(m2.ko.group(2), g(&[2]));
        assert_eq!(m2.ko.group(3), g(&[1]));
        assert!(m2.ko.group(5).is_trivial());
        assert!(adams_table_t_moore(0).is_err());
    }

    #[test]
    fn ko2_counting() {
        for e in [2, 3, 21] {
            let c = order_counting_certificate(e).unwrap();
            assert_eq!(c.name, KO2_SPLIT);
            assert_eq!(c.resolved, g(&[1, 1]));
            assert_eq!(c.rejected, vec![g(&[2])]);
            assert_eq!(c.evidence[0].log2_order, 3);
            assert_eq!(c.evidence[1].log2_order, 2);
        }
        assert!(order_counting_certificate(1).is_err());
        // A corrupted KO^2(T /\ M(2)) leaves no candidate standing.
        let t = adams_table_t();
        let ko_t: Vec<_> = (0..8).map(|i| t.ko.group(i)).collect();
        let mut bad: Vec<_> = (0..8).map(|i| ko_moore2()[(i + 4) % 8].clone()).collect();
        bad[2] = FinAbGroup2::trivial();
        assert!(matches!(
            order_counting_from(&ko_t, &bad, 21),
            Err(Error::ContradictionNotFound(_))
        ));
    }

    #[test]
    fn suspension_reindexes() {
        let y = adams_table_t_moore(21).unwrap().suspended(11);
        assert_eq!(y.ko.group(11 + 2), g(&[1, 1]));
        let law = y.ko(15).psi3.unwrap();
        assert_eq!(law.exact(15).unwrap().to_string(), "1/9");
    }
}
