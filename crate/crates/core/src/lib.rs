//! Exact q-analogues of modified double zeta values and the Hecke calculus on
//! period polynomials that ties them to modular forms.
//!
//! - [`algebra`]: rationals, binomials, Bernoulli numbers, divisor sums,
//!   integer matrices and group-ring elements
//! - [`qseries`]: truncated q-expansions with exact coefficients and the
//!   named series (`zeta_q`, `zeta_hat_q`, parity variants, `Delta`,
//!   Eisenstein series)
//! - [`periodpoly`]: homogeneous polynomials, the matrix action, Hecke
//!   elements `T_n` with their three-part split, the pairing `<P, T>`
//! - [`heckespace`]: `W_k^ev`, eigenforms, relation coefficients, `R_f`,
//!   `E_k`, and the exact identity checks
//! - [`numerics`]: binary64 evaluation of real zeta, double zeta and double
//!   polylogarithm values with tail bounds
//!
//! The crate is `no_std` and needs only `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod error;
pub mod heckespace;
pub mod linalg;
pub mod numerics;
pub mod periodpoly;
pub mod qseries;
pub mod report;

pub use algebra::{HeckeElement, Mat2, Rational};
pub use error::Error;
pub use periodpoly::{HomPoly, PeriodData};
pub use qseries::QSeries;
pub use report::{Detail, RelationReport, Status};
