//! Commutative Laurent polynomials over GF(2), rational functions, matrices
//! and evaluation in GF(2^16) for randomized identity testing.

mod eval;
mod gf216;
mod matrix;
mod poly;
mod rational;
mod var;

use thiserror::Error;

pub use eval::{monomial_eval, poly_eval, random_point, rational_eval, Point};
pub use gf216::{is_irreducible, Gf216, MODULUS};
pub use matrix::{GfMatrix, PolyMatrix};
pub use poly::{poly_div_exact, LaurentPoly};
pub use rational::{frac_eq, RationalFn};
pub use var::{Monomial, Var, VarKind};

pub(crate) use var::{fmt_factor, parse_factors};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("no value for variable {0}")]
    MissingVariable(Var),
    #[error("invertible variable {0} evaluated at zero")]
    ZeroAtInvertible(Var),
    #[error("could not sample a point avoiding the given polynomials")]
    SamplingExhausted,
    #[error("matrix dimensions do not match")]
    DimensionMismatch,
    #[error("row and column selections differ in size")]
    SizeMismatch,
    #[error("{0} cannot carry exponent {1}")]
    NegativeExponent(Var, i32),
    #[error("negative power of the non-monomial image of {0}")]
    NonMonomialInverse(Var),
    #[error("parse error: {0}")]
    Parse(String),
}
