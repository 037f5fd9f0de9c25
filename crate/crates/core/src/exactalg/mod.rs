//! Exact arithmetic substrate: arbitrary-precision rationals, prime
//! fields `F_p` (p < 2^16), first-order jets (dual numbers), multivariate
//! polynomials with rational coefficients, and exact dense linear algebra.
//!
//! No floating point anywhere; every downstream verdict is an exact
//! identity over one of these fields.

mod scalar;
mod matrix;
mod poly;

pub use scalar::{Dyn, DynField, DynKind, Fp, FpEl, Jet, JetField, Rat, Rationals, Field, Scalar, ScalarKind, ExactError};
pub use matrix::{
    Mat, Matrix, rank, kernel_basis, solve, row_space_rank,
    zero as mat_zero, identity as mat_identity, add as mat_add, sub as mat_sub,
    scale as mat_scale, mul as mat_mul, mat_vec, rref, rank_t, kernel_t, solve_t, invert_t,
};
pub use poly::{Polynomial, poly_eval_jet};

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}
