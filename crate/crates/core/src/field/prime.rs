use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng;

use super::{ConcreteField, Field, FieldDescriptor};
use crate::error::ParseError;

/// The prime field 𝔽_p for an odd prime `p < 2^62`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ParseError> {
        if p == 2 {
            return Err(ParseError::InvalidField("characteristic 2 is not supported".into()));
        }
        if p >= 1 << 62 || !is_prime_u64(p) {
            return Err(ParseError::InvalidField(format!("{p} is not an odd prime below 2^62")));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> Fp {
        Fp::Elem { v: reduce_i64(v, self.p), p: self.p }
    }

    pub fn elem_u64(&self, v: u64) -> Fp {
        Fp::Elem { v: v % self.p, p: self.p }
    }
}

/// Element of 𝔽_p. The modulus travels with the value; `Const` holds the
/// small integers produced by `zero()`, `one()` and `from_i64` before they
/// meet a bound element.
#[derive(Clone, Copy, Debug)]
pub enum Fp {
    Const(i64),
    Elem { v: u64, p: u64 },
}

fn reduce_i64(v: i64, p: u64) -> u64 {
    let r = (v as i128).rem_euclid(p as i128);
    r as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Fp {
    /// Modulus, or `None` for an unbound constant.
    pub fn modulus(&self) -> Option<u64> {
        match *self {
            Fp::Const(_) => None,
            Fp::Elem { p, .. } => Some(p),
        }
    }

    /// Canonical residue in `0..p`; unbound constants must be nonnegative.
    pub fn value(&self) -> u64 {
        match *self {
            Fp::Const(c) => {
                assert!(c >= 0, "unbound negative constant has no canonical residue");
                c as u64
            }
            Fp::Elem { v, .. } => v,
        }
    }

    fn bind(self, p: u64) -> u64 {
        match self {
            Fp::Const(c) => reduce_i64(c, p),
            Fp::Elem { v, p: q } => {
                debug_assert_eq!(p, q, "mixing elements of different prime fields");
                v
            }
        }
    }

    fn common_modulus(a: &Fp, b: &Fp) -> Option<u64> {
        a.modulus().or(b.modulus())
    }

    /// Legendre symbol: 1 for nonzero squares, -1 for non-squares, 0 for zero.
    pub fn legendre(&self) -> i32 {
        let Fp::Elem { v, p } = *self else {
            panic!("legendre symbol of an unbound constant")
        };
        if v == 0 {
            return 0;
        }
        if pow_mod(v, (p - 1) / 2, p) == 1 {
            1
        } else {
            -1
        }
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        match Fp::common_modulus(self, other) {
            None => matches!((self, other), (Fp::Const(a), Fp::Const(b)) if a == b),
            Some(p) => self.bind(p) == other.bind(p),
        }
    }
}

impl Eq for Fp {}

impl Zero for Fp {
    fn zero() -> Self {
        Fp::Const(0)
    }
    fn is_zero(&self) -> bool {
        match *self {
            Fp::Const(c) => c == 0,
            Fp::Elem { v, .. } => v == 0,
        }
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp::Const(1)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        match Fp::common_modulus(&self, &rhs) {
            None => {
                let (Fp::Const(a), Fp::Const(b)) = (self, rhs) else { unreachable!() };
                Fp::Const(a.checked_add(b).expect("unbound constant overflow"))
            }
            Some(p) => {
                let s = self.bind(p) + rhs.bind(p);
                Fp::Elem { v: if s >= p { s - p } else { s }, p }
            }
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        match self {
            Fp::Const(c) => Fp::Const(-c),
            Fp::Elem { v, p } => Fp::Elem { v: if v == 0 { 0 } else { p - v }, p },
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        match Fp::common_modulus(&self, &rhs) {
            None => {
                let (Fp::Const(a), Fp::Const(b)) = (self, rhs) else { unreachable!() };
                Fp::Const(a.checked_mul(b).expect("unbound constant overflow"))
            }
            Some(p) => Fp::Elem { v: mul_mod(self.bind(p), rhs.bind(p), p), p },
        }
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inv().expect("division by zero in F_p")
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        match *self {
            Fp::Const(1) => Some(Fp::Const(1)),
            Fp::Const(-1) => Some(Fp::Const(-1)),
            Fp::Const(_) => None,
            Fp::Elem { v, p } => {
                if v == 0 {
                    None
                } else {
                    Some(Fp::Elem { v: pow_mod(v, p - 2, p), p })
                }
            }
        }
    }

    fn from_i64(v: i64) -> Self {
        Fp::Const(v)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Fp::Const(c) => write!(f, "{c}"),
            Fp::Elem { v, .. } => write!(f, "{v}"),
        }
    }
}

/// Tonelli–Shanks.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

impl ConcreteField for Fp {
    type Ctx = PrimeField;

    fn embed(ctx: &PrimeField, v: i64) -> Self {
        ctx.elem(v)
    }

    fn random<R: Rng + ?Sized>(ctx: &PrimeField, rng: &mut R) -> Self {
        ctx.elem_u64(rng.gen_range(0..ctx.p))
    }

    fn parse(ctx: &PrimeField, s: &str) -> Result<Self, ParseError> {
        let v: i64 = s
            .trim()
            .parse()
            .map_err(|_| ParseError::Scalar(s.to_string()))?;
        Ok(ctx.elem(v))
    }

    fn descriptor(ctx: &PrimeField) -> FieldDescriptor {
        FieldDescriptor { characteristic: ctx.p, ext_d: None }
    }

    /// Returns the smaller of the two roots.
    fn sqrt(&self) -> Option<Self> {
        let Fp::Elem { v, p } = *self else {
            panic!("square root of an unbound constant")
        };
        sqrt_mod(v, p).map(|r| Fp::Elem { v: r.min(p - r), p })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_even_and_composite_moduli() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(1007).is_err());
        assert!(PrimeField::new(10007).is_ok());
    }

    #[test]
    fn constants_bind_on_contact() {
        let f = PrimeField::new(7).unwrap();
        let x = f.elem(3);
        assert_eq!(x - Fp::one(), f.elem(2));
        assert_eq!(-Fp::one() * x, f.elem(4));
        assert_eq!(Fp::from_i64(10), f.elem(3));
        assert_eq!(x * x.inv().unwrap(), Fp::one());
    }

    #[test]
    fn square_roots() {
        let f = PrimeField::new(10007).unwrap();
        for v in 1..200 {
            let a = f.elem(v);
            match a.sqrt() {
                Some(r) => assert_eq!(r * r, a),
                None => assert_eq!(a.legendre(), -1),
            }
        }
        let f17 = PrimeField::new(17).unwrap();
        assert_eq!(f17.elem(-1).sqrt().map(|r| r.value()), Some(4));
        assert_eq!(PrimeField::new(7).unwrap().elem(-1).sqrt(), None);
    }
}
