//! Exact quadratic-ring arithmetic, the generic scalar abstraction and
//! quadrature.

mod algebraic;
pub mod quadrature;
mod scalar;

#[allow(unused_imports)]
pub(crate) use algebraic::pow_rational;
pub use algebraic::{
    alg_arith, alg_to_float, parse_algebraic, q_half_power, AlgebraicValue, ArithOp,
};
pub use scalar::{sum, Scalar};
