//! Exact scalar fields.
//!
//! Everything above this module is written against [`Field`], so the same
//! linear algebra, polynomial and sampling code runs over ℚ, over a prime
//! field 𝔽_p, and over a quadratic extension of either.

mod prime;
mod quadratic;
mod rational;

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng;

pub use prime::{Fp, PrimeField};
pub(crate) use prime::is_prime_u64;
pub(crate) use prime::is_prime_u64 as is_prime_small;
pub use quadratic::{QuadExt, QuadField};
pub use rational::{is_square_rational, rational_sqrt, Q, RationalField};

use crate::error::ParseError;

/// A commutative field with exact arithmetic and characteristic ≠ 2.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Div<Output = Self>
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Image of an integer. For fields whose modulus is carried by the
    /// elements, the result adopts the modulus of whatever it meets first.
    fn from_i64(v: i64) -> Self;

    fn pow_u64(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

/// Description of a base field, as written into JSON documents.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FieldDescriptor {
    /// Characteristic; 0 for ℚ.
    #[serde(rename = "char")]
    pub characteristic: u64,
    /// Present when elements live in a quadratic extension by `√ext_d`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ext_d: Option<String>,
}

/// A field that can be instantiated from a runtime context, sampled from,
/// printed and parsed. Sampling and (de)serialization go through this.
pub trait ConcreteField: Field + Display {
    type Ctx: Clone + Debug;

    fn embed(ctx: &Self::Ctx, v: i64) -> Self;
    fn random<R: Rng + ?Sized>(ctx: &Self::Ctx, rng: &mut R) -> Self;
    fn parse(ctx: &Self::Ctx, s: &str) -> Result<Self, ParseError>;
    fn descriptor(ctx: &Self::Ctx) -> FieldDescriptor;
    /// A square root inside the field, if one exists.
    fn sqrt(&self) -> Option<Self>;
}
