//! Exact arithmetic for the K-theoretic computation of the 2-primary
//! v1-periodic homotopy groups of the Dwyer-Wilkerson space DI(4).
//!
//! The crate is layered bottom-up:
//!
//! - [`padic`] and [`rational`]: residues mod 2^n, 2-adic valuations,
//!   discrete logarithms base 3 and the congruence fixing the suspension
//!   shift `L = 90627`.
//! - [`linalg`] and [`group`]: integer matrices, Smith normal form with
//!   unimodular witnesses, cokernels over the 2-local integers and linear
//!   algebra over F_2.
//! - [`adams`]: the Adams operations on the three indecomposables of
//!   `K^*(BDI(4))`, the operator `theta = psi^2 / 2`, and the evaluation of
//!   `KO^*(Phi_1 DI(4))` as an Adams module.
//! - [`pseudosphere`]: Adams modules and homotopy of the pseudosphere smashed
//!   with Moore spectra, extension certificates, the module match and the
//!   final homotopy table.
//! - [`checks`] and [`report`]: the end-to-end verification suite and the
//!   serializable report consumed by the command line front end.

pub mod adams;
pub mod checks;
mod error;
pub mod graded;
pub mod group;
pub mod linalg;
pub mod padic;
pub mod pseudosphere;
pub mod rational;
pub mod report;

pub use adams::{AdamsFreeModule, KOPhiTable};
pub use error::{Error, Result};
pub use graded::{AdamsModuleView, Justification, KoSlot, PsiLaw, SplitCertificate};
pub use group::FinAbGroup2;
pub use linalg::{CokerPresentation, IntMatrix, QMatrix};
pub use padic::{PadicResidue, Val2};
pub use pseudosphere::{AdamsGradedTable, GradedAdamsModule};
pub use rational::OddRational;
pub use report::Report;

/// Suspension parameter of the equivalence `Phi_1 DI(4) = Sigma^(8L+3) T /\ M(2^21)`.
pub const SHIFT_L: u64 = 90627;

/// Exponent of the Moore spectrum and of the spectrum `Phi_1 DI(4)`.
pub const MOORE_EXPONENT: u32 = 21;

/// Suspension degree `8L + 3`.
pub const SUSPENSION_SHIFT: i64 = 8 * SHIFT_L as i64 + 3;
