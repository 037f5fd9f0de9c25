//! Exact-arithmetic verification of shifted symplectic and Lagrangian
//! structures on quotient stacks of matrix groups, together with a 2d
//! TFT evaluator on representation varieties of surfaces.
//!
//! Everything is computed over exact fields (arbitrary-precision
//! rationals or prime fields), so every verdict is an exact identity,
//! never a floating-point approximation.

pub mod exactalg;
pub mod liecore;
pub mod eqforms;
pub mod shiftsym;
pub mod lagstruct;
pub mod cobcat;
pub mod charstack;
pub mod report;
pub mod presets;
pub mod cli;
