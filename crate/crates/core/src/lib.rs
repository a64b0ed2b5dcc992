//! Exact computer algebra for the polynomial towers behind local-operator
//! form factors in the SU(2) invariant Thirring model.
//!
//! The crate is organized around five subsystems:
//!
//! - [`symfun`]: sparse exact Laurent polynomial arithmetic plus the
//!   symmetric-function generators (e, h, p, Schur) and the free-module
//!   decomposition of R_n over its odd power sums;
//! - [`wedge`]: the exterior spaces of antisymmetric polynomials, the
//!   distinguished generators v, w, xi and the kernel elements Xi_1, Xi_2,
//!   the residue specializations rho_+/rho_-, the free basis of the
//!   residue-free subspaces, and graded dimensions of their quotients;
//! - [`tower`]: chiral and anti-chiral form-factor polynomial towers over the
//!   symbolic constant ring (Gaussian rationals extended by pi and zeta0),
//!   with machine verification of the two residue conditions that propagate
//!   a tower from level to level;
//! - [`qchar`]: truncated q-series, Gaussian binomials, and the level-one
//!   branching functions the quotient characters must match;
//! - [`barnes`]: double-precision evaluation of the Barnes double gamma
//!   function and the minimal form factor zeta(beta), with their functional
//!   equations as built-in cross-checks.

pub mod barnes;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod qchar;
pub mod scalar;
pub mod symfun;
pub mod tower;
pub mod wedge;

pub use error::{Error, Result};
pub use poly::{LaurentPoly, MPoly, Rat};
pub use scalar::ConstScalar;
pub use symfun::{OddDecomposition, Partition};
pub use tower::{ConditionReport, TowerLevel, TowerSpec};
pub use wedge::{BasisIndex, GradedDims, WedgeElem};
