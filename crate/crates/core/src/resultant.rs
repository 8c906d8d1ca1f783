//! Resultants of ternary forms.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::Form;
use crate::upoly::UPoly;

/// Sylvester determinant of `a` and `b` taken with formal degrees `m`, `n`
/// (coefficients listed in increasing degree, zero-padded).
pub fn sylvester<F: Field>(a: &[F], m: usize, b: &[F], n: usize) -> F {
    let size = m + n;
    if size == 0 {
        return F::one();
    }
    let coef = |v: &[F], k: usize| v.get(k).cloned().unwrap_or_else(F::zero);
    let mut s = Matrix::zeros(size, size);
    for r in 0..n {
        for k in 0..=m {
            s[(r, r + k)] = coef(a, m - k);
        }
    }
    for r in 0..m {
        for k in 0..=n {
            s[(n + r, r + k)] = coef(b, n - k);
        }
    }
    s.determinant().expect("square")
}

/// Coefficients of `f` as a polynomial in variable `var` after fixing the
/// other two variables to `rest`.
fn specialize<F: Field>(f: &Form<F>, var: usize, rest: &[F; 2]) -> Vec<F> {
    let others: Vec<usize> = (0..3).filter(|&k| k != var).collect();
    let mut c = vec![F::zero(); f.degree() as usize + 1];
    for (e, v) in f.terms() {
        let w = v.clone()
            * rest[0].pow_u64(e[others[0]] as u64)
            * rest[1].pow_u64(e[others[1]] as u64);
        c[e[var] as usize] = c[e[var] as usize].clone() + w;
    }
    c
}

/// Resultant of two ternary forms with respect to variable `var`
/// (0 = x, 1 = y, 2 = z), taking each form's total degree as its formal
/// degree in `var`. The result is a binary form of degree `deg f · deg g`
/// in the two remaining variables, in their original order.
pub fn resultant<F: Field>(f: &Form<F>, g: &Form<F>, var: usize) -> Result<Form<F>> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroForm);
    }
    if f.nvars() != 3 || g.nvars() != 3 || var > 2 {
        return Err(Error::InvalidForm("resultant expects ternary forms".into()));
    }
    let (m, n) = (f.degree() as usize, g.degree() as usize);
    let big_n = m * n;
    // values at (1, c) for c = 0..=N determine the binary form
    let one = f.field_one();
    let xs: Vec<F> = (0..=big_n as i64).map(|k| F::from_i64(k) * one.clone()).collect();
    if (1..xs.len()).any(|i| (0..i).any(|j| xs[i] == xs[j])) {
        return Err(Error::Unsupported("field too small for interpolation".into()));
    }
    let ys: Vec<F> = xs
        .iter()
        .map(|c| {
            let rest = [one.clone(), c.clone()];
            sylvester(&specialize(f, var, &rest), m, &specialize(g, var, &rest), n)
        })
        .collect();
    let r = interpolate(&xs, &ys);
    let terms = r
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, v)| ([(big_n - k) as u32, k as u32, 0], v.clone()));
    Form::from_terms(2, big_n as u32, terms)
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
pub fn interpolate<F: Field>(xs: &[F], ys: &[F]) -> UPoly<F> {
    let mut acc = UPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = UPoly::constant(F::one());
        let mut denom = F::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&UPoly::new(vec![-xj.clone(), F::one()]));
                denom = denom * (xi.clone() - xj.clone());
            }
        }
        acc = acc.add(&basis.scale(&(yi.clone() * denom.inv().expect("distinct nodes"))));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Q};
    use num_traits::Zero;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    fn t(terms: &[([u32; 3], i64)]) -> Form<Q> {
        let d = terms[0].0.iter().sum();
        Form::from_terms(3, d, terms.iter().map(|&(e, c)| (e, q(c)))).unwrap()
    }

    fn b(terms: &[([u32; 3], i64)]) -> Form<Q> {
        let d = terms[0].0.iter().sum();
        Form::from_terms(2, d, terms.iter().map(|&(e, c)| (e, q(c)))).unwrap()
    }

    #[test]
    fn coordinate_lines() {
        let r = resultant(&t(&[([1, 0, 0], 1)]), &t(&[([0, 1, 0], 1)]), 0).unwrap();
        assert!(r.proportional(&b(&[([1, 0, 0], 1)])));
    }

    #[test]
    fn common_factor_gives_zero() {
        let r = resultant(&t(&[([2, 0, 0], 1)]), &t(&[([1, 0, 0], 1)]), 0).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn conic_and_line() {
        // oracle: x = y substituted into x² − yz gives y² − yz
        let f = t(&[([2, 0, 0], 1), ([0, 1, 1], -1)]);
        let g = t(&[([1, 0, 0], 1), ([0, 1, 0], -1)]);
        let r = resultant(&f, &g, 0).unwrap();
        assert!(r.proportional(&b(&[([2, 0, 0], 1), ([1, 1, 0], -1)])));
    }

    #[test]
    fn zero_input_rejected() {
        let z = Form::<Q>::zero(3, 2);
        assert_eq!(resultant(&z, &t(&[([1, 0, 0], 1)]), 0), Err(Error::ZeroForm));
    }

    #[test]
    fn vanishes_exactly_over_common_roots_mod_p() {
        let f = PrimeField::new(31).unwrap();
        let e = |v| f.elem(v);
        // f1 = x² + y² − z², f2 = x − 2y + z; common points lie over roots
        let f1 = Form::from_terms(3, 2, [([2, 0, 0], e(1)), ([0, 2, 0], e(1)), ([0, 0, 2], e(-1))]).unwrap();
        let f2 = Form::linear(&[e(1), e(-2), e(1)]).unwrap();
        let r = resultant(&f1, &f2, 0).unwrap();
        for y in 0..31 {
            let shared = (0..31).any(|x| {
                let p = [e(x), e(y), e(1)];
                f1.eval(&p).unwrap().is_zero() && f2.eval(&p).unwrap().is_zero()
            });
            let val = r.eval(&[e(y), e(1)]).unwrap();
            // f2 is linear in x, so every root of r lifts to an F_31 point
            assert_eq!(val.is_zero(), shared, "y = {y}");
        }
    }
}
