// `!(x < y)` is used on purpose throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// reference constants are kept at the precision they were published with
#![allow(clippy::excessive_precision)]

pub mod coeffs;
pub mod error;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;
pub mod domain;
pub mod eigen;
pub mod expansion;
pub mod grid;
pub mod kernels;
pub mod pointwise;
pub mod quadrature;
pub mod spectral;

/// Double-precision aliases for the common entry points.
pub type Ledger = coeffs::CoeffLedger<f64>;
pub type Grid = grid::GridFunction<f64>;
pub type Domain = domain::DomainSpec<f64>;
pub type EvalReport = pointwise::EvalReport<f64>;
pub type Mesh = eigen::Mesh<f64>;
pub type FormMatrices = eigen::FormMatrices<f64>;
pub type EigenResult = eigen::EigenResult<f64>;
pub type RemainderStudy = expansion::RemainderStudy<f64>;
