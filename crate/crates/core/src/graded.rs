//! Vocabulary shared by every graded Adams-module table: slots, the laws by
//! which `psi^k` acts on them, and certificates for resolved extensions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::group::FinAbGroup2;
use crate::padic::{inv_odd, modpow2, rat_to_residue, PadicResidue};
use crate::{Error, OddRational, Result};

/// How `psi^k` acts on a cyclic (or elementary) slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsiLaw {
    /// The same scalar in every degree of the residue class.
    Scalar(OddRational),
    /// `base * k^(-(n - anchor) / 2)` in degree `n`; `n - anchor` is even on
    /// every slot the law is attached to.
    Bott {
        k: i64,
        base: OddRational,
        anchor: i64,
    },
}

impl PsiLaw {
    pub fn one() -> Self {
        PsiLaw::Scalar(OddRational::from(1))
    }

    fn bott_exponent(degree: i64, anchor: i64) -> Result<i64> {
        let diff = degree - anchor;
        if diff % 2 != 0 {
            return Err(Error::Precondition(format!(
                "degree {degree} and anchor {anchor} differ by an odd number"
            )));
        }
        Ok(-diff / 2)
    }

    /// Exact value in degree `n`. Builds `k^|m|` in full, so keep `|n - anchor|`
    /// moderate; use [`PsiLaw::residue`] otherwise.
    pub fn exact(&self, degree: i64) -> Result<OddRational> {
        match self {
            PsiLaw::Scalar(q) => Ok(q.clone()),
            PsiLaw::Bott { k, base, anchor } => {
                let m = Self::bott_exponent(degree, *anchor)?;
                Ok(base * &OddRational::odd_pow(*k, m)?)
            }
        }
    }

    /// Value in degree `n` reduced mod `2^prec`, without forming `k^m`.
    pub fn residue(&self, degree: i64, prec: u32) -> Result<PadicResidue> {
        match self {
            PsiLaw::Scalar(q) => rat_to_residue(q, prec),
            PsiLaw::Bott { k, base, anchor } => {
                let m = Self::bott_exponent(degree, *anchor)?;
                let b = rat_to_residue(base, prec)?;
                let kb = BigInt::from(*k);
                if kb.is_even() {
                    return Err(Error::EvenArgument(k.to_string()));
                }
                let p = modpow2(&kb, &BigInt::from(m.unsigned_abs()), prec)?;
                let p = if m < 0 { inv_odd(p.value(), prec)? } else { p };
                Ok(b.mul(&p))
            }
        }
    }

    /// Same law after suspending the spectrum `shift` times:
    /// `KO^n(Sigma^s X) = KO^(n-s)(X)`.
    pub fn suspended(&self, shift: i64) -> Self {
        match self {
            PsiLaw::Scalar(q) => PsiLaw::Scalar(q.clone()),
            PsiLaw::Bott { k, base, anchor } => PsiLaw::Bott {
                k: *k,
                base: base.clone(),
                anchor: anchor + shift,
            },
        }
    }
}

impl fmt::Display for PsiLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PsiLaw::Scalar(q) => write!(f, "{q}"),
            PsiLaw::Bott { k, base, anchor } => {
                let k = if *k < 0 {
                    format!("({k})")
                } else {
                    k.to_string()
                };
                let shift = match anchor {
                    0 => "n".to_string(),
                    a if *a < 0 => format!("n+{}", -a),
                    a => format!("n-{a}"),
                };
                if *base == OddRational::from(1) {
                    write!(f, "{k}^(-({shift})/2)")
                } else {
                    write!(f, "{k}^(-({shift})/2) * {base}")
                }
            }
        }
    }
}

/// One graded piece of an Adams module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoSlot {
    pub group: FinAbGroup2,
    /// `None` when the group is zero or `psi^3` is not given by a scalar.
    pub psi3: Option<PsiLaw>,
    pub psi_minus1: Option<PsiLaw>,
}

impl KoSlot {
    pub fn zero() -> Self {
        KoSlot {
            group: FinAbGroup2::trivial(),
            psi3: None,
            psi_minus1: None,
        }
    }

    pub fn new(group: FinAbGroup2, psi3: PsiLaw, psi_minus1: PsiLaw) -> Self {
        if group.is_trivial() {
            return Self::zero();
        }
        KoSlot {
            group,
            psi3: Some(psi3),
            psi_minus1: Some(psi_minus1),
        }
    }

    /// A slot on which every Adams operation is the identity.
    pub fn trivial_action(group: FinAbGroup2) -> Self {
        Self::new(group, PsiLaw::one(), PsiLaw::one())
    }

    pub fn law(&self, k: i64) -> Result<&PsiLaw> {
        let law = match k {
            3 => self.psi3.as_ref(),
            -1 => self.psi_minus1.as_ref(),
            _ => {
                return Err(Error::Precondition(format!(
                    "only psi^3 and psi^-1 are tracked, not psi^{k}"
                )))
            }
        };
        if self.group.is_trivial() {
            return Err(Error::ZeroGroup(self.group.to_string()));
        }
        law.ok_or_else(|| Error::NotCyclic(self.group.to_string()))
    }
}

/// Anything that can report `KO^n` and `K^n` with their Adams operations in
/// every absolute degree `n`.
pub trait AdamsModuleView {
    fn label(&self) -> String;
    fn ko(&self, n: i64) -> KoSlot;
    fn k(&self, n: i64) -> KoSlot;
}

/// The kind of argument that resolved an extension question.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Justification {
    /// Group orders computed two ways only agree for one candidate.
    OrderCounting,
    /// A map from the bottom cell of the space provides a splitting.
    BottomCell,
    /// A geometric input taken as given (e.g. an equivalence of spectra).
    Cited,
}

/// `log2` of one group order entering a counting argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCount {
    pub label: String,
    pub log2_order: u32,
}

/// Record of how an ambiguous group (or action) was pinned down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCertificate {
    pub name: String,
    pub location: String,
    pub justification: Justification,
    pub resolved: FinAbGroup2,
    /// Candidates that were ruled out.
    pub rejected: Vec<FinAbGroup2>,
    pub evidence: Vec<OrderCount>,
}

impl fmt::Display for SplitCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: {} ({:?})",
            self.name, self.location, self.resolved, self.justification
        )?;
        for c in &self.evidence {
            write!(f, "; {} = 2^{}", c.label, c.log2_order)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bott_law_exact_and_residue_agree() {
        let law = PsiLaw::Bott {
            k: 3,
            base: OddRational::new(36, 527).unwrap(),
            anchor: -1,
        };
        for n in [-9i64, -1, 3, 7, 21] {
            let exact = law.exact(n).unwrap();
            assert_eq!(
                rat_to_residue(&exact, 21).unwrap(),
                law.residue(n, 21).unwrap()
            );
        }
        assert!(law.exact(0).is_err());
    }

    #[test]
    fn suspension_moves_anchor() {
        let law = PsiLaw::Bott {
            k: 3,
            base: OddRational::from(1),
            anchor: 0,
        };
        let s = law.suspended(11);
        assert_eq!(s.exact(11 + 4).unwrap(), law.exact(4).unwrap());
        assert_eq!(law.exact(4).unwrap().to_string(), "1/9");
        let m1 = PsiLaw::Bott {
            k: -1,
            base: OddRational::from(1),
            anchor: -1,
        };
        assert_eq!(m1.exact(1).unwrap(), OddRational::from(-1));
        assert_eq!(m1.exact(3).unwrap(), OddRational::from(1));
    }

    #[test]
    fn zero_slot_has_no_law() {
        assert!(matches!(KoSlot::zero().law(3), Err(Error::ZeroGroup(_))));
        let s = KoSlot::trivial_action(FinAbGroup2::cyclic(1));
        assert_eq!(s.law(-1).unwrap(), &PsiLaw::one());
        assert!(s.law(5).is_err());
    }
}
