//! Exact finite-dimensional arithmetic for the paragrassmann algebra
//! `PG(l, q)` generated by `θ`, `θ̄` subject to `θ^l = θ̄^l = 0` and
//! `θθ̄ = q θ̄θ`, together with the operators built on top of it: the weighted
//! sesquilinear form, the reproducing-kernel projection, Toeplitz and
//! coherent-state quantizations, and the deformed ladder operators.
//!
//! Every element and operator is stored as a dense complex table. Elements of
//! the algebra use the anti-Wick basis `θ^i θ̄^j`, flattened row-major as
//! `i * l + j`; every `l² × l²` matrix in the crate uses that ordering.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
mod error;
pub mod expr;
pub mod forms;
pub mod linalg;
pub mod quantization;
pub mod symbol;

pub use algebra::{AlgebraCtx, Generator, PGElement};
pub use error::Error;
pub use expr::FreeExpr;
pub use forms::{FormMode, GramMatrix, WeightSeq};
pub use nalgebra;
pub use num_complex::Complex64;
pub use quantization::{Basis, LadderSet, OperatorBH, OperatorPG};

/// Relative tolerance used for equality of computed identities.
pub const REL_TOL: f64 = 1e-9;
/// Absolute floor below which two scalars are always considered equal.
pub const ABS_TOL: f64 = 1e-12;

/// `|a - b| <= max(REL_TOL * max(|a|, |b|), ABS_TOL)`.
pub fn approx_eq(a: Complex64, b: Complex64) -> bool {
    let diff = (a - b).norm();
    diff <= (REL_TOL * a.norm().max(b.norm())).max(ABS_TOL)
}
