use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use super::{ConcreteField, Field, FieldDescriptor};
use crate::error::ParseError;

/// Arbitrary-precision rationals.
pub type Q = BigRational;

/// Sampling context for ℚ: random elements are integers in `-range..=range`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalField {
    pub range: i64,
}

impl Default for RationalField {
    fn default() -> Self {
        Self { range: 30 }
    }
}

impl Field for Q {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(v: i64) -> Self {
        Q::from_integer(BigInt::from(v))
    }
}

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root of a rational, if it is a square.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    let n = int_sqrt_exact(x.numer())?;
    let d = int_sqrt_exact(x.denom())?;
    Some(Q::new(n, d))
}

pub fn is_square_rational(x: &Q) -> bool {
    rational_sqrt(x).is_some()
}

impl ConcreteField for Q {
    type Ctx = RationalField;

    fn embed(_: &RationalField, v: i64) -> Self {
        Q::from_i64(v)
    }

    fn random<R: Rng + ?Sized>(ctx: &RationalField, rng: &mut R) -> Self {
        Q::from_i64(rng.gen_range(-ctx.range..=ctx.range))
    }

    fn parse(_: &RationalField, s: &str) -> Result<Self, ParseError> {
        s.trim()
            .parse::<Q>()
            .map_err(|_| ParseError::Scalar(s.to_string()))
    }

    fn descriptor(_: &RationalField) -> FieldDescriptor {
        FieldDescriptor { characteristic: 0, ext_d: None }
    }

    fn sqrt(&self) -> Option<Self> {
        rational_sqrt(self)
    }
}
