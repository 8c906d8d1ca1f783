//! Dense univariate polynomials, used for dehomogenized binary forms.

use num_bigint::BigUint;

use crate::field::Field;
use crate::poly::Form;

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<F> {
    c: Vec<F>,
}

impl<F: Field> UPoly<F> {
    pub fn new(mut c: Vec<F>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        Self { c }
    }

    pub fn zero() -> Self {
        Self { c: Vec::new() }
    }

    pub fn constant(v: F) -> Self {
        Self::new(vec![v])
    }

    pub fn x() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F> {
        self.c.last()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn eval(&self, x: &F) -> F {
        self.c.iter().rev().fold(F::zero(), |acc, a| acc * x.clone() + a.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).cloned().unwrap_or_else(F::zero);
                    let b = o.c.get(i).cloned().unwrap_or_else(F::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-F::one()))
    }

    pub fn scale(&self, k: &F) -> Self {
        Self::new(self.c.iter().map(|a| a.clone() * k.clone()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(F::one()), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.lead().unwrap().inv().expect("nonzero leading coefficient");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = r[k + dd].clone() * inv.clone();
            if coef.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] = r[k + j].clone() - coef.clone() * b.clone();
            }
            q[k] = coef;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero")),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.clone() * F::from_i64(i as i64))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::constant(F::one()).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Homogenizes to a binary form of degree `d ≥ deg` in `(s, t)`, with
    /// the variable of `self` becoming `s`.
    pub fn homogenize(&self, d: u32) -> Form<F> {
        let terms = self
            .c
            .iter()
            .enumerate()
            .map(|(i, a)| ([i as u32, d - i as u32, 0], a.clone()));
        Form::from_terms(2, d, terms).expect("degree bound respected")
    }

    /// Sets `t = 1` in a binary form.
    pub fn dehomogenize(f: &Form<F>) -> Self {
        let mut c = vec![F::zero(); f.degree() as usize + 1];
        for (e, v) in f.terms() {
            c[e[0] as usize] = v.clone();
        }
        Self::new(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn p(c: &[i64]) -> UPoly<Q> {
        UPoly::new(c.iter().map(|&v| Q::from_i64(v)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let f = p(&[-1, 0, 1]); // x² − 1
        let g = p(&[1, 1]); // x + 1
        let (q, r) = f.divrem(&g);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&p(&[-1, 0, 0, 1])), p(&[-1, 1]));
    }

    #[test]
    fn homogenize_round_trip() {
        let f = p(&[0, 1, 0, 2]);
        let h = f.homogenize(5);
        assert_eq!(h.degree(), 5);
        assert_eq!(UPoly::dehomogenize(&h), f);
    }
}
