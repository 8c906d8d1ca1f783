//! Homogeneous forms in two or three variables.
//!
//! Exponents are stored as `[u32; 3]`; binary forms leave the last slot at
//! zero. Binary forms are written in `s, t`, ternary forms in `x, y, z`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

pub type Exponent = [u32; 3];

#[derive(Clone, Debug, PartialEq)]
pub struct Form<F> {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Exponent, F>,
}

/// All exponent vectors of total degree `d` in `nvars` variables, in
/// lexicographically decreasing order (`x^d` first).
pub fn monomials(nvars: usize, d: u32) -> Vec<Exponent> {
    match nvars {
        2 => (0..=d).rev().map(|a| [a, d - a, 0]).collect(),
        3 => {
            let mut out = Vec::new();
            for a in (0..=d).rev() {
                for b in (0..=d - a).rev() {
                    out.push([a, b, d - a - b]);
                }
            }
            out
        }
        _ => panic!("forms have 2 or 3 variables"),
    }
}

fn check_nvars(nvars: usize) -> Result<()> {
    if nvars == 2 || nvars == 3 {
        Ok(())
    } else {
        Err(Error::InvalidForm(format!("{nvars} variables; expected 2 or 3")))
    }
}

fn eval_monomial<F: Field>(e: &Exponent, point: &[F]) -> F {
    let mut acc = F::one();
    for (k, &p) in e.iter().enumerate() {
        if p > 0 {
            acc = acc * point[k].pow_u64(p as u64);
        }
    }
    acc
}

impl<F: Field> Form<F> {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        check_nvars(nvars).expect("forms have 2 or 3 variables");
        Self { nvars, degree, terms: BTreeMap::new() }
    }

    pub fn from_terms(
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Exponent, F)>,
    ) -> Result<Self> {
        check_nvars(nvars)?;
        let mut f = Self { nvars, degree, terms: BTreeMap::new() };
        for (e, c) in terms {
            if e.iter().sum::<u32>() != degree || (nvars == 2 && e[2] != 0) {
                return Err(Error::InvalidForm(format!(
                    "monomial {e:?} does not have degree {degree} in {nvars} variables"
                )));
            }
            f.add_term(e, c);
        }
        Ok(f)
    }

    /// Coefficients listed against [`monomials`].
    pub fn from_coeffs(nvars: usize, degree: u32, coeffs: &[F]) -> Result<Self> {
        let mons = monomials(nvars, degree);
        if coeffs.len() != mons.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} monomials",
                coeffs.len(),
                mons.len()
            )));
        }
        Self::from_terms(nvars, degree, mons.into_iter().zip(coeffs.iter().cloned()))
    }

    pub fn coeffs_dense(&self) -> Vec<F> {
        monomials(self.nvars, self.degree).iter().map(|e| self.coeff(e)).collect()
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::from_terms(nvars, 1, [(e, F::one())]).expect("valid variable")
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::from_terms(nvars, 0, [([0, 0, 0], c)]).expect("valid constant")
    }

    /// The linear form `Σ c_k·x_k`.
    pub fn linear(coeffs: &[F]) -> Result<Self> {
        let nvars = coeffs.len();
        check_nvars(nvars)?;
        Self::from_terms(
            nvars,
            1,
            coeffs.iter().enumerate().map(|(k, c)| {
                let mut e = [0; 3];
                e[k] = 1;
                (e, c.clone())
            }),
        )
    }

    fn add_term(&mut self, e: Exponent, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponent) -> F {
        self.terms.get(e).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &F)> {
        self.terms.iter()
    }

    /// The element 1 of the field the coefficients live in. For fields
    /// whose elements carry their modulus or extension, this is bound to
    /// the same field as the coefficients.
    pub fn field_one(&self) -> F {
        match self.terms.values().next() {
            Some(c) => c.clone() * c.inv().expect("stored coefficients are nonzero"),
            None => F::one(),
        }
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!(
                "forms of degree {} in {} variables and degree {} in {} variables",
                self.degree, self.nvars, other.degree, other.nvars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.nvars, self.degree);
        for (e, v) in &self.terms {
            out.add_term(*e, v.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch("forms in different numbers of variables".into()));
        }
        let mut out = Self::zero(self.nvars, self.degree + other.degree);
        for (a, u) in &self.terms {
            for (b, v) in &other.terms {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], u.clone() * v.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, F::one());
        for _ in 0..k {
            acc = acc.mul(self).expect("same variables");
        }
        acc
    }

    pub fn eval(&self, point: &[F]) -> Result<F> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "point with {} coordinates for a form in {} variables",
                point.len(),
                self.nvars
            )));
        }
        Ok(self
            .terms
            .iter()
            .fold(F::zero(), |acc, (e, c)| acc + c.clone() * eval_monomial(e, point)))
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = *e;
            f[i] -= 1;
            out.add_term(f, c.clone() * F::from_i64(e[i] as i64));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// Substitutes `images[k]` for the `k`-th variable. All images must be
    /// forms of one common degree in one common number of variables.
    pub fn compose(&self, images: &[Form<F>]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch("one image per variable required".into()));
        }
        let (m, e) = (images[0].nvars, images[0].degree);
        if images.iter().any(|g| g.nvars != m || g.degree != e) {
            return Err(Error::DimensionMismatch("images of differing shape".into()));
        }
        let maxdeg = self.degree as usize;
        let powers: Vec<Vec<Self>> = images
            .iter()
            .map(|g| {
                let mut p = vec![Self::constant(m, F::one())];
                for k in 1..=maxdeg {
                    let next = p[k - 1].mul(g).expect("same variables");
                    p.push(next);
                }
                p
            })
            .collect();
        let mut out = Self::zero(m, self.degree * e);
        for (ex, c) in &self.terms {
            let mut term = Self::constant(m, c.clone());
            for k in 0..self.nvars {
                if ex[k] > 0 {
                    term = term.mul(&powers[k][ex[k] as usize])?;
                }
            }
            for (f, v) in term.terms {
                out.add_term(f, v);
            }
        }
        Ok(out)
    }

    /// Restriction to the line through `p` and `q`, parametrized by
    /// `(s, t) ↦ s·p + t·q`.
    pub fn restrict_to_line(&self, line: &Form<F>, p: &[F], q: &[F]) -> Result<Form<F>> {
        if self.nvars != 3 || line.nvars != 3 || line.degree != 1 || line.is_zero() {
            return Err(Error::InvalidLine("need a ternary form and a nonzero linear form".into()));
        }
        if p.len() != 3 || q.len() != 3 {
            return Err(Error::InvalidLine("points need three coordinates".into()));
        }
        let independent = (0..3).any(|i| {
            (i + 1..3).any(|j| {
                !(p[i].clone() * q[j].clone() - p[j].clone() * q[i].clone()).is_zero()
            })
        });
        if !independent {
            return Err(Error::InvalidLine("points coincide".into()));
        }
        if !line.eval(p)?.is_zero() || !line.eval(q)?.is_zero() {
            return Err(Error::InvalidLine("point does not lie on the line".into()));
        }
        self.restrict_param(p, q)
    }

    /// `F(s·p + t·q)` without any check on a line.
    pub fn restrict_param(&self, p: &[F], q: &[F]) -> Result<Form<F>> {
        let images: Vec<Form<F>> = (0..self.nvars)
            .map(|k| Form::linear(&[p[k].clone(), q[k].clone()]))
            .collect::<Result<_>>()?;
        self.compose(&images)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Form<G> {
        let mut out = Form::zero(self.nvars, self.degree);
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }

    /// Multiplies by the inverse of the leading coefficient (first term in
    /// [`monomials`] order).
    pub fn monic(&self) -> Result<Self> {
        let lead = self.terms.iter().next_back().ok_or(Error::ZeroForm)?.1;
        Ok(self.scale(&lead.inv().expect("nonzero")))
    }

    /// True when `self = c·other` for some nonzero `c`.
    pub fn proportional(&self, other: &Self) -> bool {
        if self.nvars != other.nvars || self.degree != other.degree {
            return false;
        }
        match (self.monic(), other.monic()) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

impl<F: Field + fmt::Display> fmt::Display for Form<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES2: [&str; 2] = ["s", "t"];
        const NAMES3: [&str; 3] = ["x", "y", "z"];
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = (0..self.nvars)
                .filter(|&i| e[i] > 0)
                .map(|i| {
                    let n = if self.nvars == 2 { NAMES2[i] } else { NAMES3[i] };
                    if e[i] == 1 {
                        n.to_string()
                    } else {
                        format!("{n}^{}", e[i])
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{c}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Q};
    use proptest::prelude::*;

    fn qi(v: i64) -> Q {
        Q::from_i64(v)
    }

    fn ternary(terms: &[([u32; 3], i64)]) -> Form<Q> {
        let d = terms[0].0.iter().sum();
        Form::from_terms(3, d, terms.iter().map(|&(e, c)| (e, qi(c)))).unwrap()
    }

    fn x_line() -> Form<Q> {
        Form::var(3, 0)
    }

    fn yz_points() -> (Vec<Q>, Vec<Q>) {
        (vec![qi(0), qi(1), qi(0)], vec![qi(0), qi(0), qi(1)])
    }

    #[test]
    fn rejects_inhomogeneous_terms() {
        assert!(Form::from_terms(3, 2, [([1, 0, 0], qi(1))]).is_err());
        assert!(Form::from_terms(2, 1, [([0, 0, 1], qi(1))]).is_err());
    }

    #[test]
    fn zero_coefficients_not_stored() {
        let f = Form::from_terms(2, 1, [([1, 0, 0], qi(1)), ([1, 0, 0], qi(-1))]).unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn restrict_multiple_of_line_vanishes() {
        let (p, q) = yz_points();
        let f = ternary(&[([5, 0, 0], 1)]);
        assert!(f.restrict_to_line(&x_line(), &p, &q).unwrap().is_zero());
    }

    #[test]
    fn restrict_coordinate_substitution() {
        let (p, q) = yz_points();
        let f = ternary(&[([0, 3, 2], 1)]);
        let r = f.restrict_to_line(&x_line(), &p, &q).unwrap();
        assert_eq!(r, Form::from_terms(2, 5, [([3, 2, 0], qi(1))]).unwrap());
    }

    #[test]
    fn restrict_quintic() {
        let (p, q) = yz_points();
        let f = ternary(&[([5, 0, 0], 1), ([0, 5, 0], 1), ([0, 1, 4], 1)]);
        let r = f.restrict_to_line(&x_line(), &p, &q).unwrap();
        let expected =
            Form::from_terms(2, 5, [([5, 0, 0], qi(1)), ([1, 4, 0], qi(1))]).unwrap();
        assert_eq!(r, expected);
        assert_eq!(r.to_string(), "s^5 + s*t^4");
    }

    #[test]
    fn restrict_rejects_bad_points() {
        let (p, _) = yz_points();
        let f = ternary(&[([0, 1, 0], 1)]);
        assert!(f.restrict_to_line(&x_line(), &p, &p).is_err());
        let off = vec![qi(1), qi(0), qi(0)];
        assert!(f.restrict_to_line(&x_line(), &p, &off).is_err());
    }

    #[test]
    fn partials_and_eval() {
        let f = ternary(&[([2, 0, 0], 1), ([0, 1, 1], -1)]);
        assert_eq!(f.partial(0), ternary(&[([1, 0, 0], 2)]));
        assert_eq!(f.eval(&[qi(2), qi(2), qi(2)]).unwrap(), qi(0));
    }

    fn arb_form(d: u32) -> impl Strategy<Value = Form<crate::field::Fp>> {
        let n = monomials(3, d).len();
        prop::collection::vec(0u64..101, n).prop_map(move |cs| {
            let f = PrimeField::new(101).unwrap();
            let cs: Vec<_> = cs.into_iter().map(|c| f.elem_u64(c)).collect();
            Form::from_coeffs(3, d, &cs).unwrap()
        })
    }

    proptest! {
        #[test]
        fn restriction_is_multiplicative(f in arb_form(2), g in arb_form(3), a in 0i64..101, b in 1i64..101) {
            let fp = PrimeField::new(101).unwrap();
            let line = Form::linear(&[fp.elem(1), fp.elem(a), fp.elem(b)]).unwrap();
            // two points on x + a·y + b·z = 0
            let p = vec![fp.elem(-a), fp.elem(1), fp.elem(0)];
            let q = vec![fp.elem(-b), fp.elem(0), fp.elem(1)];
            let rf = f.restrict_to_line(&line, &p, &q).unwrap();
            let rg = g.restrict_to_line(&line, &p, &q).unwrap();
            let rfg = f.mul(&g).unwrap().restrict_to_line(&line, &p, &q).unwrap();
            prop_assert_eq!(rfg, rf.mul(&rg).unwrap());
        }

        #[test]
        fn restriction_is_linear(f in arb_form(3), g in arb_form(3)) {
            let fp = PrimeField::new(101).unwrap();
            let line = Form::linear(&[fp.elem(0), fp.elem(1), fp.elem(0)]).unwrap();
            let p = vec![fp.elem(1), fp.elem(0), fp.elem(0)];
            let q = vec![fp.elem(0), fp.elem(0), fp.elem(1)];
            let lhs = f.add(&g).unwrap().restrict_to_line(&line, &p, &q).unwrap();
            let rhs = f.restrict_to_line(&line, &p, &q).unwrap()
                .add(&g.restrict_to_line(&line, &p, &q).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
