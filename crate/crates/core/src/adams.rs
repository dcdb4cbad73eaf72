//! Adams operations on the indecomposables of `K^*(BDI(4))` and the
//! resulting Adams module `KO^*(Phi_1 DI(4))`.
//!
//! Matrices act on column vectors: column `j` of `Psi^k` is `psi^k` applied to
//! the `j`-th generator, written in the basis `(xi_8, xi_12, xi_24)`.
//! Decomposables are not represented at all; the module `M` is free on the
//! three generators.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::graded::{AdamsModuleView, Justification, KoSlot, OrderCount, PsiLaw, SplitCertificate};
use crate::group::FinAbGroup2;
use crate::linalg::{
    coker_2local, cokernel_mod2, kernel_mod2, restrict_to_sublattice, solve_in_span_f2,
    CokerPresentation, F2Matrix, IntMatrix, QMatrix,
};
use crate::{Error, OddRational, Result};

/// A free `Z_2`-module with commuting `psi^2`, `psi^3`; `psi^-1` is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdamsFreeModule {
    psi2: QMatrix,
    psi3: QMatrix,
}

impl AdamsFreeModule {
    pub fn new(psi2: QMatrix, psi3: QMatrix) -> Result<Self> {
        if !psi2.is_square() || psi2.rows() != psi3.rows() || psi2.cols() != psi3.cols() {
            return Err(Error::Shape(
                "psi^2 and psi^3 must be square of equal size".into(),
            ));
        }
        if psi2.rows() == 0 {
            return Err(Error::Shape("rank must be positive".into()));
        }
        Ok(AdamsFreeModule { psi2, psi3 })
    }

    pub fn rank(&self) -> usize {
        self.psi2.rows()
    }

    pub fn psi2(&self) -> &QMatrix {
        &self.psi2
    }

    pub fn psi3(&self) -> &QMatrix {
        &self.psi3
    }

    pub fn psi_minus1(&self) -> QMatrix {
        QMatrix::identity(self.rank())
    }

    /// Integral lower-triangular `psi^2` commuting with `psi^3`.
    pub fn check_invariants(&self) -> Result<()> {
        if self.psi2.to_integer().is_none() {
            return Err(Error::Precondition("psi^2 has a non-integral entry".into()));
        }
        if !self.psi2.is_lower_triangular() {
            return Err(Error::Precondition("psi^2 is not lower triangular".into()));
        }
        let check = verify_commutation(&self.psi2, &self.psi3)?;
        if let Some((i, j, _, _)) = check.witness {
            return Err(Error::Precondition(format!(
                "psi^2 and psi^3 differ at ({}, {})",
                i + 1,
                j + 1
            )));
        }
        Ok(())
    }

    /// Change of basis `g_i -> u_i g_i`, i.e. conjugation `D Psi D^-1`.
    pub fn rescale_basis(&self, units: &[OddRational]) -> Result<Self> {
        if units.len() != self.rank() {
            return Err(Error::Shape("one unit per generator".into()));
        }
        let inv: Vec<OddRational> = units.iter().map(|u| u.inv_unit()).collect::<Result<_>>()?;
        let conj = |m: &QMatrix| {
            QMatrix::from_fn(m.rows(), m.cols(), |i, j| {
                &(&units[i] * m.get(i, j)) * &inv[j]
            })
        };
        Self::new(conj(&self.psi2), conj(&self.psi3))
    }

    /// Replace one entry of `psi^3` (0-based indices).
    pub fn with_psi3_entry(&self, i: usize, j: usize, value: OddRational) -> Self {
        let mut out = self.clone();
        out.psi3.set(i, j, value);
        out
    }
}

fn q(n: i64, d: i64) -> OddRational {
    OddRational::new(n, d).expect("odd denominator")
}

/// The operations on `(xi_8, xi_12, xi_24)` modulo decomposables.
pub fn di4_psi_matrices() -> AdamsFreeModule {
    let p2 = |i: i64| num_traits::pow(2i64, i as usize);
    let p3 = |i: i64| num_traits::pow(3i64, i as usize);
    let psi2 = IntMatrix::from_rows(&[&[p2(4), 0, 0], &[-2, p2(6), 0], &[0, -2, p2(14)]])
        .expect("3x3")
        .to_rational();
    let psi3 = QMatrix::from_vec(
        3,
        3,
        vec![
            q(p3(4), 1),
            q(0, 1),
            q(0, 1),
            q(-p3(3), 1),
            q(p3(6), 1),
            q(0, 1),
            q(36, 527),
            q(-p3(5) * 41, 17),
            q(p3(14), 1),
        ],
    )
    .expect("3x3");
    AdamsFreeModule::new(psi2, psi3).expect("square")
}

/// The unique lower-triangular `Psi^3` with diagonal `diag3` commuting with
/// the lower-triangular `psi2`.
///
/// Comparing entry `(i, j)`, `i > j`, of `psi2 Psi3 = Psi3 psi2` gives
/// `(p_i - p_j) x_ij = sum_{j<k<=i} x_ik P_kj - sum_{j<=k<i} P_ik x_kj`,
/// which only involves entries to the right in the same row or above in the
/// same column.  Columns are therefore solved from the last one backwards,
/// top to bottom.
#[allow(clippy::needless_range_loop)]
pub fn commutator_solve(psi2: &IntMatrix, diag3: &[OddRational]) -> Result<QMatrix> {
    let n = psi2.rows();
    if !psi2.is_square() || diag3.len() != n {
        return Err(Error::Shape(
            "psi^2 must be square with one psi^3 eigenvalue per row".into(),
        ));
    }
    if !psi2.is_lower_triangular() {
        return Err(Error::Precondition("psi^2 must be lower triangular".into()));
    }
    for i in 0..n {
        for j in 0..i {
            if psi2.get(i, i) == psi2.get(j, j) {
                return Err(Error::SingularSolve { i: j + 1, j: i + 1 });
            }
        }
    }
    let p = |i: usize, j: usize| BigRational::from_integer(psi2.get(i, j).clone());
    let mut x: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
    for (i, d) in diag3.iter().enumerate() {
        x[i][i] = d.as_rational().clone();
    }
    for j in (0..n).rev() {
        for i in j + 1..n {
            let mut rhs = BigRational::zero();
            for k in j + 1..=i {
                rhs += &x[i][k] * p(k, j);
            }
            for k in j..i {
                rhs -= p(i, k) * &x[k][j];
            }
            let coeff = p(i, i) - p(j, j);
            x[i][j] = rhs / coeff;
        }
    }
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in x.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            let s = v.to_string();
            entries.push(
                OddRational::try_from(v).map_err(|_| Error::EvenDenominator {
                    row: i + 1,
                    col: j + 1,
                    value: s,
                })?,
            );
        }
    }
    QMatrix::from_vec(n, n, entries)
}

/// Result of comparing `AB` with `BA`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationCheck {
    pub commutes: bool,
    /// First differing entry in row-major order (0-based): `(i, j, (AB)_ij, (BA)_ij)`.
    pub witness: Option<(usize, usize, OddRational, OddRational)>,
}

pub fn verify_commutation(a: &QMatrix, b: &QMatrix) -> Result<CommutationCheck> {
    let ab = a.mul(b)?;
    let ba = b.mul(a)?;
    for i in 0..ab.rows() {
        for j in 0..ab.cols() {
            if ab.get(i, j) != ba.get(i, j) {
                return Ok(CommutationCheck {
                    commutes: false,
                    witness: Some((i, j, ab.get(i, j).clone(), ba.get(i, j).clone())),
                });
            }
        }
    }
    Ok(CommutationCheck {
        commutes: true,
        witness: None,
    })
}

/// `theta = psi^2 / 2` as an integer matrix.
pub fn theta_of(m: &AdamsFreeModule) -> Result<IntMatrix> {
    let psi2 = m.psi2();
    let mut out = IntMatrix::zeros(psi2.rows(), psi2.cols());
    for i in 0..psi2.rows() {
        for j in 0..psi2.cols() {
            let e = psi2.get(i, j);
            let two = BigInt::from(2);
            if !e.is_integer() || (e.num() % &two) != BigInt::zero() {
                return Err(Error::OddEntry {
                    row: i + 1,
                    col: j + 1,
                    value: e.to_string(),
                });
            }
            out.set(i, j, e.num() / two);
        }
    }
    Ok(out)
}

/// Name of the extension certificate for `KO^5`.
pub const BOTTOM_CELL_SPLIT: &str = "ko5-bottom-cell";

/// `KO^*(Phi_1 X)` and `K^*(Phi_1 X)` for the module `M` of `X`, one slot per
/// residue class (8 for `KO`, 2 for `K`).
#[derive(Debug, Clone)]
pub struct KOPhiTable {
    ko: Vec<KoSlot>,
    k: Vec<KoSlot>,
    theta: IntMatrix,
    ko7: CokerPresentation,
    ko3: CokerPresentation,
    ko5_split: SplitCertificate,
}

impl KOPhiTable {
    pub fn ko_slot(&self, i: i64) -> &KoSlot {
        &self.ko[i.rem_euclid(8) as usize]
    }

    pub fn k_slot(&self, i: i64) -> &KoSlot {
        &self.k[i.rem_euclid(2) as usize]
    }

    pub fn ko_groups(&self) -> Vec<FinAbGroup2> {
        self.ko.iter().map(|s| s.group.clone()).collect()
    }

    pub fn k_groups(&self) -> Vec<FinAbGroup2> {
        self.k.iter().map(|s| s.group.clone()).collect()
    }

    pub fn theta(&self) -> &IntMatrix {
        &self.theta
    }

    /// Presentation of `KO^7 = coker(theta | M)`.
    pub fn ko7_presentation(&self) -> &CokerPresentation {
        &self.ko7
    }

    /// Presentation of `KO^3 = coker(theta | 2M)`, in the basis `2 g_i`.
    pub fn ko3_presentation(&self) -> &CokerPresentation {
        &self.ko3
    }

    pub fn ko5_certificate(&self) -> &SplitCertificate {
        &self.ko5_split
    }

    /// Largest cyclic exponent over all slots.
    pub fn max_exponent(&self) -> u32 {
        self.ko
            .iter()
            .chain(&self.k)
            .map(|s| s.group.exponent())
            .max()
            .unwrap_or(0)
    }
}

impl AdamsModuleView for KOPhiTable {
    fn label(&self) -> String {
        "KO*(Phi_1 X)".into()
    }

    fn ko(&self, n: i64) -> KoSlot {
        self.ko_slot(n).clone()
    }

    fn k(&self, n: i64) -> KoSlot {
        self.k_slot(n).clone()
    }
}

/// Scalar by which a matrix acts on a cyclic cokernel.
fn cyclic_scalar(pres: &CokerPresentation, psi: &QMatrix) -> Result<OddRational> {
    if pres.group.exponents().len() != 1 || pres.group.free_rank() != 0 {
        return Err(Error::NotCyclic(pres.group.to_string()));
    }
    let coeff: Vec<BigInt> = pres.gen_images.iter().map(|v| v[0].clone()).collect();
    // After normalization the first basis vector with a unit image maps to 1.
    let b = coeff
        .iter()
        .position(|c| c.bit(0))
        .ok_or_else(|| Error::NotCyclic(pres.group.to_string()))?;
    let mut acc = OddRational::from(0);
    for (k, c) in coeff.iter().enumerate() {
        acc = acc + psi.get(k, b) * &OddRational::from(c.clone());
    }
    Ok(acc * OddRational::from(coeff[b].clone()).inv_unit()?)
}

/// `B^-1 Psi B` for an integral basis `B` of a `Psi`-stable sublattice.
fn restrict_rational(psi: &QMatrix, basis: &IntMatrix) -> Result<QMatrix> {
    let n = psi.rows();
    let to_q = |m: &IntMatrix| m.map(|x| BigRational::from_integer(x.clone()));
    let bq = to_q(basis);
    let det = BigRational::from_integer(basis.det()?);
    let adj = to_q(&crate::linalg::adjugate(basis)?);
    let pq = psi.map(|x| x.as_rational().clone());
    let prod = adj.mul(&pq)?.mul(&bq)?;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(OddRational::try_from(prod.get(i, j) / &det)?);
        }
    }
    QMatrix::from_vec(n, n, entries)
}

/// Is the map induced by `psi mod 2` on `ker(theta mod 2)` the identity?
fn identity_on_kernel(psi: &F2Matrix, kernel: &[Vec<bool>]) -> bool {
    kernel.iter().enumerate().all(|(idx, v)| {
        let w = psi.apply_f2(v);
        let expected: Vec<bool> = (0..kernel.len()).map(|t| t == idx).collect();
        solve_in_span_f2(kernel, &w).as_deref() == Some(&expected[..])
    })
}

/// Is the map induced by `psi mod 2` on `coker(theta mod 2)` the identity?
fn identity_on_cokernel(psi: &F2Matrix, theta: &F2Matrix, complement: &[Vec<bool>]) -> bool {
    let image: Vec<Vec<bool>> = (0..theta.cols()).map(|j| theta.column(j)).collect();
    complement.iter().all(|v| {
        // psi(v) - v must lie in the image of theta.
        let w: Vec<bool> = psi.apply_f2(v).iter().zip(v).map(|(a, b)| a ^ b).collect();
        w.iter().all(|x| !x) || solve_in_span_f2(&image, &w).is_some()
    })
}

/// Evaluate the exact sequences computing `KO^*(Phi_1 X)` and `K^*(Phi_1 X)`
/// from the module `M` with `theta = psi^2 / 2`:
///
/// - `KO^3 = coker(theta | 2M)`, `KO^7 = K^1 = coker(theta | M)`
/// - `KO^4 = ker(theta | M/2)`, `KO^6 = coker(theta | M/2)`
/// - `0 -> coker(theta | M/2) -> KO^5 -> ker(theta | M/2) -> 0`, split by
///   the bottom cell
/// - `KO^0 = KO^1 = KO^2 = K^0 = 0`
///
/// On `KO^(2j-1)` (j even) and `K^(2j-1)`, `psi^k` is `k^-j psi^k` of `M`
/// induced on the cokernel.
pub fn ko_phi1(m: &AdamsFreeModule) -> Result<KOPhiTable> {
    let theta = theta_of(m)?;
    if theta.det()?.is_zero() {
        return Err(Error::NotInjective);
    }
    let n = m.rank();

    let ko7 = coker_2local(&theta, false)?;
    let two_basis = IntMatrix::diagonal(&vec![BigInt::from(2); n]);
    let theta_2m = restrict_to_sublattice(&theta, &two_basis)?;
    let ko3 = coker_2local(&theta_2m, false)?;

    let theta2 = theta.mod2();
    let ker = kernel_mod2(&theta2);
    let coker = cokernel_mod2(&theta2);
    let ko4 = FinAbGroup2::from_exponents(vec![1; ker.len()]);
    let ko6 = FinAbGroup2::from_exponents(vec![1; coker.len()]);
    let ko5_split = SplitCertificate {
        name: BOTTOM_CELL_SPLIT.into(),
        location: "0 -> coker(theta|M/2) -> KO^5 -> ker(theta|M/2) -> 0".into(),
        justification: Justification::BottomCell,
        resolved: ko6.direct_sum(&ko4),
        rejected: FinAbGroup2::extensions(&ko6, &ko4)
            .into_iter()
            .filter(|g| *g != ko6.direct_sum(&ko4))
            .collect(),
        evidence: vec![
            OrderCount {
                label: "|coker(theta|M/2)|".into(),
                log2_order: ko6.log2_order().unwrap_or(0),
            },
            OrderCount {
                label: "|ker(theta|M/2)|".into(),
                log2_order: ko4.log2_order().unwrap_or(0),
            },
        ],
    };
    let ko5 = ko5_split.resolved.clone();

    // Adams operations on the odd slots.
    let psi3_2m = restrict_rational(m.psi3(), &two_basis)?;
    let odd_slot = |pres: &CokerPresentation, psi: &QMatrix| -> Result<KoSlot> {
        if pres.group.is_trivial() {
            return Ok(KoSlot::zero());
        }
        let psi3 = cyclic_scalar(pres, psi).ok().map(|base| PsiLaw::Bott {
            k: 3,
            base,
            anchor: -1,
        });
        Ok(KoSlot {
            group: pres.group.clone(),
            psi3,
            psi_minus1: Some(PsiLaw::Bott {
                k: -1,
                base: OddRational::from(1),
                anchor: -1,
            }),
        })
    };
    let ko7_slot = odd_slot(&ko7, m.psi3())?;
    let ko3_slot = odd_slot(&ko3, &psi3_2m)?;

    // Mod 2 slots: k^-j = 1 mod 2, so psi^3 acts through psi^3 mod 2.
    let psi3_mod2 = m.psi3().mod2();
    let on_ker = identity_on_kernel(&psi3_mod2, &ker);
    let on_coker = identity_on_cokernel(&psi3_mod2, &theta2, &coker);
    let even_slot = |g: FinAbGroup2, trivial: bool| {
        if g.is_trivial() {
            KoSlot::zero()
        } else if trivial {
            KoSlot::trivial_action(g)
        } else {
            KoSlot {
                group: g,
                psi3: None,
                psi_minus1: Some(PsiLaw::one()),
            }
        }
    };
    let ko4_slot = even_slot(ko4, on_ker);
    let ko6_slot = even_slot(ko6, on_coker);
    // psi^k - 1 could only map the quotient onto the sub; the bottom-cell map rules that out.
    let ko5_slot = even_slot(ko5, on_ker && on_coker);

    let ko = vec![
        KoSlot::zero(),
        KoSlot::zero(),
        KoSlot::zero(),
        ko3_slot,
        ko4_slot,
        ko5_slot,
        ko6_slot,
        ko7_slot.clone(),
    ];
    let k = vec![KoSlot::zero(), ko7_slot];
    Ok(KOPhiTable {
        ko,
        k,
        theta,
        ko7,
        ko3,
        ko5_split,
    })
}

/// Which group of a [`KOPhiTable`] (absolute degree).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    KO(i64),
    K(i64),
}

/// `psi^k` (k = 3 or -1) on the given slot, as an exact 2-local rational.
pub fn psi_scalar(table: &KOPhiTable, k: i64, slot: Slot) -> Result<OddRational> {
    let (s, n) = match slot {
        Slot::KO(n) => (table.ko_slot(n), n),
        Slot::K(n) => (table.k_slot(n), n),
    };
    s.law(k)?.exact(n)
}

/// `psi^k` on the slot reduced modulo its exponent `2^e`.
pub fn psi_residue(table: &KOPhiTable, k: i64, slot: Slot) -> Result<crate::PadicResidue> {
    let (s, n) = match slot {
        Slot::KO(n) => (table.ko_slot(n), n),
        Slot::K(n) => (table.k_slot(n), n),
    };
    let e = s.group.exponent().max(1);
    s.law(k)?.residue(n, e)
}

/// The right side of `3^(4L+2) = psi^3|K^-1` modulo `2^prec`, read off the
/// Adams module of `Phi_1 DI(4)`.
pub fn congruence_rhs(prec: u32) -> Result<crate::PadicResidue> {
    let table = ko_phi1(&di4_psi_matrices())?;
    crate::padic::rat_to_residue(&psi_scalar(&table, 3, Slot::K(-1))?, prec)
}

/// Largest `e` with a `Z/2^e` summand in `KO^*(Phi_1 X)` or `K^*(Phi_1 X)`.
pub fn exponent_bound_of(m: &AdamsFreeModule) -> Result<u32> {
    Ok(ko_phi1(m)?.max_exponent())
}

/// The exponent of `Phi_1 DI(4)`.
pub fn exponent_bound() -> u32 {
    exponent_bound_of(&di4_psi_matrices()).expect("the DI(4) module is valid")
}

/// One Euler-characteristic check on a finite stretch of the exact sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessCheck {
    pub segment: String,
    /// Alternating sum of `log2` orders, which must vanish.
    pub alternating_log2: i64,
}

impl ExactnessCheck {
    pub fn holds(&self) -> bool {
        self.alternating_log2 == 0
    }
}

pub fn exactness_checks(table: &KOPhiTable) -> Result<Vec<ExactnessCheck>> {
    let log = |g: &FinAbGroup2| g.log2_order().map(i64::from).unwrap_or(i64::MIN / 4);
    let det_log = {
        let d = table.theta.det()?.abs();
        match crate::padic::val2(&d) {
            crate::Val2::Finite(v) => v as i64,
            crate::Val2::Infinity => return Err(Error::NotInjective),
        }
    };
    let n = table.theta.rows() as i64;
    let g = |i: i64| log(&table.ko_slot(i).group);
    // 0 -> L --theta--> L -> coker -> 0 with |coker| = [L : theta L] = |det theta|_2.
    let mut out = vec![
        ExactnessCheck {
            segment: "0 -> 2M -> 2M -> KO^3 -> 0".into(),
            alternating_log2: det_log - g(3),
        },
        ExactnessCheck {
            segment: "0 -> M -> M -> KO^7 -> 0".into(),
            alternating_log2: det_log - g(7),
        },
        ExactnessCheck {
            segment: "0 -> M -> M -> K^1 -> 0".into(),
            alternating_log2: det_log - log(&table.k_slot(1).group),
        },
    ];
    // 0 -> KO^4 -> M/2 -> M/2 -> KO^5 -> M/2 -> M/2 -> KO^6 -> 0
    out.push(ExactnessCheck {
        segment: "0 -> KO^4 -> M/2 -> M/2 -> KO^5 -> M/2 -> M/2 -> KO^6 -> 0".into(),
        alternating_log2: g(4) - n + n - g(5) + n - n + g(6),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta_matrix() -> IntMatrix {
        IntMatrix::from_rows(&[&[8i64, 0, 0], &[-1, 32, 0], &[0, -1, 8192]]).unwrap()
    }

    #[test]
    fn solved_constants() {
        let m = di4_psi_matrices();
        assert_eq!(m.psi3().get(1, 0), &OddRational::from(-27));
        assert_eq!(m.psi3().get(2, 0), &q(36, 527));
        assert_eq!(m.psi3().get(2, 1), &q(-9963, 17));
        m.check_invariants().unwrap();
    }

    #[test]
    fn solve_two_by_two() {
        let p2 = IntMatrix::from_rows(&[&[4i64, 0], &[-2, 64]]).unwrap();
        let x = commutator_solve(&p2, &[OddRational::from(9), OddRational::from(729)]).unwrap();
        assert_eq!(x.get(1, 0), &OddRational::from(-24));
    }

    #[test]
    fn solve_diagonal() {
        let p2 = IntMatrix::diagonal(&[BigInt::from(4), BigInt::from(16), BigInt::from(64)]);
        let d = [
            OddRational::from(9),
            OddRational::from(81),
            OddRational::from(729),
        ];
        let x = commutator_solve(&p2, &d).unwrap();
        assert!(x.is_diagonal());
    }

    #[test]
    fn solve_errors() {
        let p2 = IntMatrix::from_rows(&[&[4i64, 0], &[-2, 4]]).unwrap();
        assert!(matches!(
            commutator_solve(&p2, &[OddRational::from(9), OddRational::from(81)]),
            Err(Error::SingularSolve { .. })
        ));
        // The (2, 1) entry of the commutator is 2x - 1, so x = 1/2.
        let p2 = IntMatrix::from_rows(&[&[2i64, 0], &[1, 4]]).unwrap();
        assert!(matches!(
            commutator_solve(&p2, &[OddRational::from(1), OddRational::from(2)]),
            Err(Error::EvenDenominator { .. })
        ));
    }

    #[test]
    fn commutation_witness() {
        let m = di4_psi_matrices();
        let bad = m.with_psi3_entry(2, 0, q(36, 527) + OddRational::from(1));
        let c = verify_commutation(bad.psi2(), bad.psi3()).unwrap();
        assert!(!c.commutes);
        assert_eq!(c.witness.as_ref().map(|w| (w.0, w.1)), Some((2, 0)));
        let d = QMatrix::diagonal(&[OddRational::from(2), OddRational::from(3)]);
        let e = QMatrix::diagonal(&[OddRational::from(5), OddRational::from(7)]);
        assert!(verify_commutation(&d, &e).unwrap().commutes);
    }

    #[test]
    fn theta_halves_psi2() {
        assert_eq!(theta_of(&di4_psi_matrices()).unwrap(), theta_matrix());
        let two = QMatrix::diagonal(&[OddRational::from(2), OddRational::from(2)]);
        let m = AdamsFreeModule::new(two.clone(), two).unwrap();
        assert_eq!(theta_of(&m).unwrap(), IntMatrix::identity(2));
        let odd = QMatrix::diagonal(&[OddRational::from(3), OddRational::from(2)]);
        let m = AdamsFreeModule::new(odd.clone(), odd).unwrap();
        assert!(matches!(
            theta_of(&m),
            Err(Error::OddEntry { row: 1, col: 1, .. })
        ));
    }

    #[test]
    fn ko_table() {
        let t = ko_phi1(&di4_psi_matrices()).unwrap();
        let g = |e: &[u32]| FinAbGroup2::from_exponents(e.iter().copied());
        assert_eq!(
            t.ko_groups(),
            vec![
                g(&[]),
                g(&[]),
                g(&[]),
                g(&[21]),
                g(&[1]),
                g(&[1, 1]),
                g(&[1]),
                g(&[21])
            ]
        );
        assert_eq!(t.k_groups(), vec![g(&[]), g(&[21])]);
        assert!(exactness_checks(&t).unwrap().iter().all(|c| c.holds()));
    }

    #[test]
    fn psi_scalars() {
        let t = ko_phi1(&di4_psi_matrices()).unwrap();
        assert_eq!(
            psi_scalar(&t, 3, Slot::KO(4)).unwrap(),
            OddRational::from(1)
        );
        assert_eq!(
            psi_scalar(&t, -1, Slot::KO(5)).unwrap(),
            OddRational::from(1)
        );
        assert_eq!(
            psi_scalar(&t, -1, Slot::K(3)).unwrap(),
            OddRational::from(1)
        );
        assert_eq!(
            psi_scalar(&t, -1, Slot::K(1)).unwrap(),
            OddRational::from(-1)
        );
        let x = OddRational::from(81 - 216) + q(36 * 256, 527);
        assert_eq!(psi_scalar(&t, 3, Slot::K(-1)).unwrap(), x);
        assert_eq!(
            psi_scalar(&t, 3, Slot::KO(7)).unwrap(),
            &x * &OddRational::odd_pow(3, -4).unwrap()
        );
        let r = crate::padic::rat_to_residue(&psi_scalar(&t, 3, Slot::K(-1)).unwrap(), 4).unwrap();
        assert_eq!(r.value(), &BigInt::from(9));
        assert!(matches!(
            psi_scalar(&t, 3, Slot::KO(1)),
            Err(Error::ZeroGroup(_))
        ));
        assert!(matches!(
            psi_scalar(&t, 3, Slot::K(0)),
            Err(Error::ZeroGroup(_))
        ));
    }

    #[test]
    fn exponent_bounds() {
        assert_eq!(exponent_bound(), 21);
        let p2 = IntMatrix::from_rows(&[&[4i64, 0, 0], &[-2, 8, 0], &[0, -2, 16]]).unwrap();
        // Any polynomial in psi^2 commutes with it.
        let psi3 = p2.to_rational().sub(&QMatrix::identity(3)).unwrap();
        let m = AdamsFreeModule::new(p2.to_rational(), psi3).unwrap();
        m.check_invariants().unwrap();
        assert_eq!(exponent_bound_of(&m).unwrap(), 6);
        let m = AdamsFreeModule::new(
            QMatrix::diagonal(&[OddRational::from(4)]),
            QMatrix::diagonal(&[OddRational::from(9)]),
        )
        .unwrap();
        assert_eq!(exponent_bound_of(&m).unwrap(), 1);
    }

    #[test]
    fn not_injective() {
        let z = QMatrix::diagonal(&[OddRational::from(0), OddRational::from(4)]);
        let m = AdamsFreeModule::new(z.clone(), z).unwrap();
        assert!(matches!(ko_phi1(&m), Err(Error::NotInjective)));
    }

    #[test]
    fn basis_rescaling_is_invisible() {
        let m = di4_psi_matrices();
        let base = ko_phi1(&m).unwrap();
        for units in [[1i64, 3, 9], [1, -1, 1], [-1, 5, 25]] {
            let u: Vec<OddRational> = units.iter().map(|&x| OddRational::from(x)).collect();
            let r = m.rescale_basis(&u).unwrap();
            r.check_invariants().unwrap();
            let t = ko_phi1(&r).unwrap();
            assert_eq!(t.ko_groups(), base.ko_groups());
            assert_eq!(t.k_groups(), base.k_groups());
        }
    }
}
