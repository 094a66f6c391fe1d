//! Partial information decomposition for classical distributions and
//! tripartite quantum states.
//!
//! The crate is generic over the real scalar type ([`Real`], implemented for
//! `f32` and `f64`). The `f64` aliases at the bottom of this file are what
//! most callers want.
//!
//! * [`linalg`]: tensor layouts, partial traces, spectral matrix functions.
//! * [`classical`]: Shannon quantities and the classical decomposition.
//! * [`states`]: state constructors and seeded random ensembles.
//! * [`quantum`]: quantum mutual information, conditional operators and the
//!   quantum decomposition.
//! * [`branch`]: exact low-rank evaluation for few-branch product states.

// `!(x <= tol)` style checks are written that way so NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod branch;
pub mod classical;
mod error;
pub mod linalg;
pub mod quantum;
mod scalar;
pub mod states;

pub use error::{Error, Result};
pub use scalar::{Real, Tolerances, C};

pub use branch::BranchState;
pub use classical::{PidResult, ProbabilityTable, Var};
pub use linalg::{DensityOperator, HermitianOperator, HilbertLayout, PureState};
pub use quantum::{ConditionalOperator, QpidResult, Variant};
pub use states::RandomSource;

/// Labels of the target and the two source subsystems.
pub const TARGET: &str = "T";
pub const SOURCE_A: &str = "A";
pub const SOURCE_B: &str = "B";

pub type Complex64 = C<f64>;
pub type Operator64 = HermitianOperator<f64>;
pub type Density64 = DensityOperator<f64>;
pub type Pure64 = PureState<f64>;
pub type Table64 = ProbabilityTable<f64>;
pub type Pid64 = PidResult<f64>;
pub type Qpid64 = QpidResult<f64>;
pub type Branch64 = BranchState<f64>;

pub type Operator32 = HermitianOperator<f32>;
pub type Density32 = DensityOperator<f32>;
pub type Pure32 = PureState<f32>;
pub type Table32 = ProbabilityTable<f32>;
