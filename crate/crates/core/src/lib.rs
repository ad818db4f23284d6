//! Numerical kernel for the associated q-Askey-Wilson recurrence.
//!
//! The crate evaluates q-shifted factorials, basic hypergeometric series and
//! the very-well-poised `8phi7` function `W(a; b, c, d, e, f)`, and builds on
//! them:
//!
//! - [`aqaw`]: recurrence coefficients `a'_n`, `b'^2_n`, the associated
//!   polynomials and the two explicit Askey-Wilson forms at `epsilon = 1`;
//! - [`solutions`]: the six explicit solutions `X^(1)..X^(6)` of the
//!   recurrence, their convergence predicates and minimal-solution selection;
//! - [`contiguous`]: residuals of the `10phi9` / `8phi7` contiguous relations;
//! - [`cf`]: the associated continued fraction, evaluated directly and through
//!   minimal solutions;
//! - [`spectral`]: Casoratians, the orthogonality density, the q-Dougall type
//!   identities and quadrature checks of orthogonality.
//!
//! Everything is pure `binary64` complex arithmetic. The crate is `no_std` and
//! only needs `alloc` for parameter lists, tables and error messages.
#![cfg_attr(not(test), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod aqaw;
pub mod cf;
pub mod contiguous;
mod dd;
pub mod error;
pub mod hyperseries;
pub mod qcore;
pub mod solutions;
pub mod spectral;

pub use aqaw::{QParameters, RecurrenceCoefficients, SpectralPoint};
pub use cf::CfConfig;
pub use contiguous::{RelationId, TenPhiNineSpec};
pub use error::{Error, Result};
pub use hyperseries::{PhiSeriesSpec, SeriesValue, VwpW};
pub use qcore::{QBase, ToleranceConfig, C64};
pub use solutions::{ArgumentFlag, SolutionId};
