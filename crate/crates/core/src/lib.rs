//! Numerics for the big q-Laguerre / q-Meixner picture of the positive
//! discrete series of `U_q(su(1,1))`.
//!
//! * [`qseries`]: q-Pochhammer symbols, basic hypergeometric series, Jackson's `E_q`.
//! * [`polynomials`]: big q-Laguerre and q-Meixner polynomials, dual functions,
//!   generating function, classical Laguerre polynomials.
//! * [`operators`]: the Jacobi matrices `A`, `A_1`, `A_2` in the orthonormal
//!   basis `f^l_n`, their eigencoefficients and a Sturm bisection eigensolver.
//! * [`orthogonality`]: verifiers for the orthogonality, unitarity, duality and
//!   biorthogonality relations, producing [`orthogonality::VerificationReport`]s.
//! * [`climit`]: the `q -> 1` limit to Laguerre polynomials and to the
//!   differential operator `(1-x)^2 d/dx + 2l(x-1) + 1`.
//!
//! All kernels that can lose precision are generic over [`real::Real`] and run
//! either in `f64` or in 512-bit [`real::Extended`] arithmetic.

pub mod climit;
pub mod error;
pub mod operators;
pub mod orthogonality;
pub mod polynomials;
pub mod qseries;
pub mod real;
pub mod sum;

pub use error::{Error, Result};
pub use qseries::{QParams, Truncation};
pub use real::{Extended, Real};
