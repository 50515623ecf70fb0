//! Exact linear algebra over prime fields and the rationals.
//!
//! Everything downstream reduces to ranks, kernels, solves and span
//! arithmetic on small dense matrices, so no floating point appears.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{kernel_basis, rank, solve, Matrix};
pub use scalar::{Field, Scalar};
pub use subspace::{span_op, SpanOp, SpanResult, Subspace};
