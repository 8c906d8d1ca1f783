use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng;

use super::{ConcreteField, Field, FieldDescriptor};
use crate::error::ParseError;

/// Element `re + im·√d` of a quadratic extension `F(√d)`, `d` a fixed
/// non-square of `F`. Zero `d` marks a constant that has not yet met an
/// element carrying the extension.
#[derive(Clone, Debug)]
pub struct QuadExt<F> {
    pub re: F,
    pub im: F,
    d: F,
}

/// Context for `F(√d)`.
#[derive(Clone, Debug)]
pub struct QuadField<F: ConcreteField> {
    pub base: F::Ctx,
    pub d: F,
}

impl<F: Field> QuadExt<F> {
    pub fn new(re: F, im: F, d: F) -> Self {
        Self { re, im, d }
    }

    pub fn from_base(re: F, d: F) -> Self {
        Self { re, im: F::zero(), d }
    }

    /// The generator `√d`.
    pub fn root(d: F) -> Self {
        Self { re: F::zero(), im: F::one(), d }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone(), d: self.d.clone() }
    }

    pub fn norm(&self) -> F {
        self.re.clone() * self.re.clone() - self.d.clone() * self.im.clone() * self.im.clone()
    }

    /// The base-field value, when the element lies in `F`.
    pub fn as_base(&self) -> Option<&F> {
        self.im.is_zero().then_some(&self.re)
    }

    fn shared_d(a: &Self, b: &Self) -> F {
        if a.d.is_zero() {
            b.d.clone()
        } else {
            debug_assert!(b.d.is_zero() || a.d == b.d, "mixing different quadratic extensions");
            a.d.clone()
        }
    }
}

impl<F: Field> PartialEq for QuadExt<F> {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im
    }
}

impl<F: Field> Zero for QuadExt<F> {
    fn zero() -> Self {
        Self { re: F::zero(), im: F::zero(), d: F::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<F: Field> One for QuadExt<F> {
    fn one() -> Self {
        Self { re: F::one(), im: F::zero(), d: F::zero() }
    }
}

impl<F: Field> Add for QuadExt<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let d = Self::shared_d(&self, &rhs);
        Self { re: self.re + rhs.re, im: self.im + rhs.im, d }
    }
}

impl<F: Field> Sub for QuadExt<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let d = Self::shared_d(&self, &rhs);
        Self { re: self.re - rhs.re, im: self.im - rhs.im, d }
    }
}

impl<F: Field> Neg for QuadExt<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im, d: self.d }
    }
}

impl<F: Field> Mul for QuadExt<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let d = Self::shared_d(&self, &rhs);
        let re = self.re.clone() * rhs.re.clone() + d.clone() * self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        Self { re, im, d }
    }
}

impl<F: Field> Div for QuadExt<F> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in quadratic extension")
    }
}

impl<F: Field> Field for QuadExt<F> {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm().inv()?;
        let c = self.conj();
        Some(Self { re: c.re * n.clone(), im: c.im * n, d: self.d.clone() })
    }

    fn from_i64(v: i64) -> Self {
        Self::from_base(F::from_i64(v), F::zero())
    }
}

impl<F: Field + fmt::Display> fmt::Display for QuadExt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}|{}", self.re, self.im)
        }
    }
}

impl<F: ConcreteField> ConcreteField for QuadExt<F> {
    type Ctx = QuadField<F>;

    fn embed(ctx: &Self::Ctx, v: i64) -> Self {
        Self::from_base(F::embed(&ctx.base, v), ctx.d.clone())
    }

    fn random<R: Rng + ?Sized>(ctx: &Self::Ctx, rng: &mut R) -> Self {
        Self::from_base(F::random(&ctx.base, rng), ctx.d.clone())
    }

    /// Accepts `re` or `re|im`.
    fn parse(ctx: &Self::Ctx, s: &str) -> Result<Self, ParseError> {
        let (re, im) = match s.split_once('|') {
            Some((a, b)) => (F::parse(&ctx.base, a)?, F::parse(&ctx.base, b)?),
            None => (F::parse(&ctx.base, s)?, F::zero()),
        };
        Ok(Self { re, im, d: ctx.d.clone() })
    }

    fn descriptor(ctx: &Self::Ctx) -> FieldDescriptor {
        let mut desc = F::descriptor(&ctx.base);
        desc.ext_d = Some(ctx.d.to_string());
        desc
    }

    /// Only roots of the form `a` or `b·√d` with `a, b ∈ F` are found.
    fn sqrt(&self) -> Option<Self> {
        let a = self.as_base()?;
        if let Some(r) = a.sqrt() {
            return Some(Self::from_base(r, self.d.clone()));
        }
        if self.d.is_zero() {
            return None;
        }
        let b = (a.clone() / self.d.clone()).sqrt()?;
        Some(Self { re: F::zero(), im: b, d: self.d.clone() })
    }
}
