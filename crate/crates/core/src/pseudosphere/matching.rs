//! Comparing Adams modules degree by degree, and telling pseudospheres from
//! spheres.

use std::fmt;
use std::ops::Range;

use crate::graded::{AdamsModuleView, KoSlot};
use crate::group::FinAbGroup2;
use crate::padic::PadicResidue;
use crate::{Error, Result};

use super::{adams_table_t_moore, GradedAdamsModule, Theory};

/// `Sigma^(8L+3) T /\ M(2^e)`.
pub fn shifted_adams_table(l: i64, e: u32) -> Result<GradedAdamsModule> {
    Ok(adams_table_t_moore(e)?.suspended(8 * l + 3))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MismatchKind {
    Group {
        left: FinAbGroup2,
        right: FinAbGroup2,
    },
    /// `psi^k` residues modulo `2^prec` (`None` where no scalar law is known).
    Psi {
        k: i64,
        prec: u32,
        left: Option<PadicResidue>,
        right: Option<PadicResidue>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub theory: Theory,
    pub degree: i64,
    pub kind: MismatchKind,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.theory {
            Theory::KO => "KO",
            Theory::K => "K",
        };
        match &self.kind {
            MismatchKind::Group { left, right } => {
                write!(f, "{name}^{}: groups {left} vs {right}", self.degree)
            }
            MismatchKind::Psi {
                k,
                prec,
                left,
                right,
            } => {
                let show = |r: &Option<PadicResidue>| {
                    r.as_ref()
                        .map_or("-".to_string(), |r| r.value().to_string())
                };
                write!(
                    f,
                    "{name}^{}: psi^{k} = {} vs {} mod 2^{prec}",
                    self.degree,
                    show(left),
                    show(right)
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchReport {
    pub left: String,
    pub right: String,
    pub prec: u32,
    pub degrees: Range<i64>,
    pub slots_checked: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl MatchReport {
    pub fn matched(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

fn law_residue(slot: &KoSlot, k: i64, degree: i64, prec: u32) -> Result<Option<PadicResidue>> {
    match slot.law(k) {
        Ok(law) => law.residue(degree, prec).map(Some),
        Err(Error::NotCyclic(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn compare_slot(
    theory: Theory,
    n: i64,
    a: &KoSlot,
    b: &KoSlot,
    prec: u32,
) -> Result<Option<Mismatch>> {
    if a.group != b.group {
        return Ok(Some(Mismatch {
            theory,
            degree: n,
            kind: MismatchKind::Group {
                left: a.group.clone(),
                right: b.group.clone(),
            },
        }));
    }
    if a.group.is_trivial() {
        return Ok(None);
    }
    // Scalars only matter modulo the exponent of the group; free summands are
    // compared at full precision.
    let p = if a.group.free_rank() > 0 {
        prec
    } else {
        a.group.exponent().min(prec)
    };
    for k in [3, -1] {
        let left = law_residue(a, k, n, p)?;
        let right = law_residue(b, k, n, p)?;
        if left != right {
            return Ok(Some(Mismatch {
                theory,
                degree: n,
                kind: MismatchKind::Psi {
                    k,
                    prec: p,
                    left,
                    right,
                },
            }));
        }
    }
    Ok(None)
}

/// Compare `KO^n` and `K^n` (groups, `psi^3`, `psi^-1` modulo the group
/// exponent capped at `2^prec`) for `n` in two full `KO` periods.
pub fn match_adams_modules(
    a: &dyn AdamsModuleView,
    b: &dyn AdamsModuleView,
    prec: u32,
) -> Result<MatchReport> {
    if prec == 0 {
        return Err(Error::InvalidPrecision(prec));
    }
    let degrees = 0..16;
    let mut slots_checked = 0;
    let mut first_mismatch = None;
    'outer: for n in degrees.clone() {
        for theory in [Theory::KO, Theory::K] {
            let (x, y) = match theory {
                Theory::KO => (a.ko(n), b.ko(n)),
                Theory::K => (a.k(n), b.k(n)),
            };
            slots_checked += 1;
            if let Some(m) = compare_slot(theory, n, &x, &y, prec)? {
                first_mismatch = Some(m);
                break 'outer;
            }
        }
    }
    Ok(MatchReport {
        left: a.label(),
        right: b.label(),
        prec,
        degrees,
        slots_checked,
        first_mismatch,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    SphereLike,
    PseudosphereLike,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::SphereLike => "sphere-like",
            Classification::PseudosphereLike => "pseudosphere-like",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrimination {
    pub class: Classification,
    /// Degrees of the run of elementary abelian `KO` groups.
    pub run: Range<i64>,
    /// Degree just above the run, where `psi^3` is read off.
    pub probe: i64,
    pub psi3_mod16: u32,
}

/// In `KO^*` of a sphere the `Z/2`'s sit just below a degree where
/// `psi^3 = 1 mod 16`; for a pseudosphere, `psi^3 = 9 mod 16` there.
///
/// Scans `window` for the first run of elementary abelian groups followed by
/// a slot carrying a `psi^3` scalar of exponent at least 4.
pub fn pseudosphere_discriminator(
    table: &dyn AdamsModuleView,
    window: Range<i64>,
) -> Result<Discrimination> {
    let mut n = window.start;
    while n < window.end {
        if !table.ko(n).group.is_elementary() {
            n += 1;
            continue;
        }
        let start = n;
        while n < window.end && table.ko(n).group.is_elementary() {
            n += 1;
        }
        let probe = table.ko(n);
        let wide = probe.group.free_rank() > 0 || probe.group.exponent() >= 4;
        if probe.group.is_trivial() || !wide {
            continue;
        }
        let r = probe.law(3)?.residue(n, 4)?;
        let value = r.value().to_u32_digits().1.first().copied().unwrap_or(0);
        let class = match value {
            1 => Classification::SphereLike,
            9 => Classification::PseudosphereLike,
            _ => {
                return Err(Error::Unclassifiable(format!(
                    "psi^3 = {value} mod 16 in degree {n}, above Z/2's in {start}..{n}"
                )))
            }
        };
        return Ok(Discrimination {
            class,
            run: start..n,
            probe: n,
            psi3_mod16: value,
        });
    }
    Err(Error::Unclassifiable(format!(
        "no Z/2 run followed by a psi^3 scalar in {window:?}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adams::{di4_psi_matrices, ko_phi1};
    use crate::graded::PsiLaw;
    use crate::pseudosphere::{adams_table_t, AdamsGradedTable};
    use crate::{OddRational, SHIFT_L};

    fn sphere() -> GradedAdamsModule {
        let bott = |g: FinAbGroup2| {
            KoSlot::new(
                g,
                PsiLaw::Bott {
                    k: 3,
                    base: OddRational::from(1),
                    anchor: 0,
                },
                PsiLaw::Bott {
                    k: -1,
                    base: OddRational::from(1),
                    anchor: 0,
                },
            )
        };
        let z = FinAbGroup2::trivial().with_free_rank(1);
        let z2 = KoSlot::trivial_action(FinAbGroup2::cyclic(1));
        let ko = vec![
            bott(z.clone()),
            KoSlot::zero(),
            KoSlot::zero(),
            KoSlot::zero(),
            bott(z.clone()),
            KoSlot::zero(),
            z2.clone(),
            z2,
        ];
        GradedAdamsModule {
            label: "S".into(),
            ko: AdamsGradedTable::new(Theory::KO, ko).unwrap(),
            k: AdamsGradedTable::new(Theory::K, vec![bott(z), KoSlot::zero()]).unwrap(),
            certificates: Vec::new(),
        }
    }

    #[test]
    fn match_and_neighbours() {
        let phi = ko_phi1(&di4_psi_matrices()).unwrap();
        let l = SHIFT_L as i64;
        for (shift, ok) in [
            (l, true),
            (l + 1, false),
            (l - 1, false),
            (l + (1 << 17), true),
        ] {
            let t = shifted_adams_table(shift, 21).unwrap();
            let r = match_adams_modules(&phi, &t, 21).unwrap();
            assert_eq!(r.matched(), ok, "L = {shift}: {:?}", r.first_mismatch);
        }
        let r = match_adams_modules(&phi, &shifted_adams_table(l + 1, 21).unwrap(), 21).unwrap();
        let m = r.first_mismatch.unwrap();
        assert_eq!((m.theory, m.degree), (Theory::K, 1));
        assert!(matches!(m.kind, MismatchKind::Psi { k: 3, prec: 21, .. }));
        assert!(match_adams_modules(&phi, &phi, 21).unwrap().matched());
    }

    #[test]
    fn shifted_laws() {
        let t = shifted_adams_table(0, 21).unwrap();
        // KO^(4t-1) carries 3^(-2(t-1)).
        for tt in [1i64, 2, 3] {
            let v = t.ko(4 * tt - 1).law(3).unwrap().exact(4 * tt - 1).unwrap();
            assert_eq!(v, OddRational::odd_pow(3, -2 * (tt - 1)).unwrap());
        }
        assert_eq!(t.ko(3).group, FinAbGroup2::cyclic(21));
    }

    #[test]
    fn discriminator() {
        let phi = ko_phi1(&di4_psi_matrices()).unwrap();
        let d = pseudosphere_discriminator(&phi, 0..16).unwrap();
        assert_eq!(
            (d.class, d.run.clone(), d.probe),
            (Classification::PseudosphereLike, 4..7, 7)
        );
        let t = pseudosphere_discriminator(&adams_table_t(), 0..16).unwrap();
        assert_eq!((t.class, t.probe), (Classification::PseudosphereLike, 4));
        let s = pseudosphere_discriminator(&sphere(), 0..16).unwrap();
        assert_eq!(
            (s.class, s.probe, s.psi3_mod16),
            (Classification::SphereLike, 8, 1)
        );
        let mut odd = sphere();
        odd.ko = AdamsGradedTable::new(
            Theory::KO,
            (0..8)
                .map(|i| match i {
                    0 => KoSlot::new(
                        FinAbGroup2::cyclic(5),
                        PsiLaw::Scalar(OddRational::from(3)),
                        PsiLaw::one(),
                    ),
                    6 | 7 => KoSlot::trivial_action(FinAbGroup2::cyclic(1)),
                    _ => KoSlot::zero(),
                })
                .collect(),
        )
        .unwrap();
        assert!(matches!(
            pseudosphere_discriminator(&odd, 0..16),
            Err(Error::Unclassifiable(_))
        ));
    }
}
