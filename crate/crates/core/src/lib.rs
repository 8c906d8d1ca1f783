//! Exact divisor-class calculus on moduli of pointed spin curves and a
//! sampler for genus-4 pointed odd spin curves built from 2-nodal plane
//! quintics.
//!
//! All arithmetic is exact. Generic code is written against
//! [`field::Field`]; the aliases below fix the scalar types used by the
//! command-line tool.

pub mod error;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod upoly;
pub mod factor;
pub mod resultant;
pub mod picard;
pub mod curves;
pub mod lp;
pub mod certificates;
pub mod quintic;

pub use error::{Error, Result};
pub use field::{Field, Fp, PrimeField, QuadExt, Q};

/// Matrices over ℚ.
pub type MatrixQ = matrix::Matrix<Q>;
/// Matrices over a prime field.
pub type MatrixFp = matrix::Matrix<Fp>;
/// Homogeneous forms over ℚ.
pub type FormQ = poly::Form<Q>;
/// Homogeneous forms over a prime field.
pub type FormFp = poly::Form<Fp>;
