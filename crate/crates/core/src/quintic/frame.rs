//! The two lines `L`, `F` and the points `n`, `n′`, `n″` fixing the plane
//! picture, with parametrizations of both lines.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{ConcreteField, Field};
use crate::matrix::Matrix;
use crate::poly::Form;

pub type Point<F> = [F; 3];

#[derive(Clone, Debug, PartialEq)]
pub struct FrameConfig<F> {
    pub l: Form<F>,
    pub f: Form<F>,
    pub n: Point<F>,
    pub n1: Point<F>,
    pub n2: Point<F>,
    /// `(s, t) ↦ s·p + t·q` onto `L`.
    pub l_param: (Point<F>, Point<F>),
    /// Same for `F`.
    pub f_param: (Point<F>, Point<F>),
}

pub fn is_zero_point<F: Field>(p: &[F]) -> bool {
    p.iter().all(Zero::is_zero)
}

/// Equal as projective points (both assumed nonzero).
pub fn same_point<F: Field>(a: &[F], b: &[F]) -> bool {
    (0..3).all(|i| (i + 1..3).all(|j| (a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone()).is_zero()))
}

/// Coordinates `(s, t)` of `pt` on the line `s·p + t·q`, up to scale.
pub fn line_coords<F: Field>(p: &[F], q: &[F], pt: &[F]) -> Result<(F, F)> {
    for i in 0..3 {
        for j in i + 1..3 {
            let det = p[i].clone() * q[j].clone() - p[j].clone() * q[i].clone();
            let Some(inv) = det.inv() else { continue };
            let s = (pt[i].clone() * q[j].clone() - pt[j].clone() * q[i].clone()) * inv.clone();
            let t = (p[i].clone() * pt[j].clone() - p[j].clone() * pt[i].clone()) * inv;
            let back: Vec<F> = (0..3).map(|k| s.clone() * p[k].clone() + t.clone() * q[k].clone()).collect();
            if !same_point(&back, pt) || is_zero_point(&back) {
                return Err(Error::InvalidLine("point is not on the line".into()));
            }
            return Ok((s, t));
        }
    }
    Err(Error::InvalidLine("parametrizing points coincide".into()))
}

/// Binary linear form vanishing at `pt` in the coordinates of `s·p + t·q`.
pub fn vanishing_form<F: Field>(p: &[F], q: &[F], pt: &[F]) -> Result<Form<F>> {
    let (s, t) = line_coords(p, q, pt)?;
    Form::linear(&[t, -s])
}

/// Exact quotient of a binary form by a binary linear form.
pub fn divide_linear<F: Field>(f: &Form<F>, l: &Form<F>) -> Result<Form<F>> {
    if f.nvars() != 2 || l.nvars() != 2 || l.degree() != 1 || l.is_zero() {
        return Err(Error::InvalidForm("expected binary forms and a nonzero linear divisor".into()));
    }
    let d = f.degree() as usize;
    if d == 0 {
        return Err(Error::InvalidForm("constant is not divisible by a linear form".into()));
    }
    let a = f.coeffs_dense();
    let (al, be) = (l.coeff(&[1, 0, 0]), l.coeff(&[0, 1, 0]));
    let mut b = vec![F::zero(); d];
    let ok = if let Some(ai) = al.inv() {
        for k in 0..d {
            let prev = if k == 0 { F::zero() } else { be.clone() * b[k - 1].clone() };
            b[k] = (a[k].clone() - prev) * ai.clone();
        }
        a[d] == be.clone() * b[d - 1].clone()
    } else {
        let bi = be.inv().expect("nonzero linear form");
        for k in 0..d {
            b[k] = a[k + 1].clone() * bi.clone();
        }
        a[0].is_zero()
    };
    if !ok {
        return Err(Error::InvalidForm("not divisible by the linear form".into()));
    }
    Form::from_coeffs(2, d as u32 - 1, &b)
}

fn line_basis<F: Field>(l: &Form<F>) -> Result<(Point<F>, Point<F>)> {
    let row = vec![l.coeff(&[1, 0, 0]), l.coeff(&[0, 1, 0]), l.coeff(&[0, 0, 1])];
    let k = Matrix::from_rows(vec![row])?.kernel();
    if k.len() != 2 {
        return Err(Error::InvalidLine("zero linear form".into()));
    }
    let arr = |v: &Vec<F>| [v[0].clone(), v[1].clone(), v[2].clone()];
    Ok((arr(&k[0]), arr(&k[1])))
}

impl<F: ConcreteField> FrameConfig<F> {
    /// `L: x = 0`, `F: y = 0`, `n = [0:0:1]`, `n′ = [1:0:0]`, `n″ = [1:0:1]`.
    pub fn canonical(ctx: &F::Ctx) -> Self {
        let e = |v: i64| F::embed(ctx, v);
        Self::new([e(1), e(0), e(0)], [e(0), e(1), e(0)], [e(0), e(0), e(1)], [e(1), e(0), e(0)], [e(1), e(0), e(1)])
            .expect("canonical frame is valid")
    }
}

impl<F: Field> FrameConfig<F> {
    /// Lines are given by their coefficient triples.
    pub fn new(l: Point<F>, f: Point<F>, n: Point<F>, n1: Point<F>, n2: Point<F>) -> Result<Self> {
        let bad = |m: &str| Error::Degenerate(format!("frame: {m}"));
        for p in [&l, &f, &n, &n1, &n2] {
            if is_zero_point(p) {
                return Err(bad("zero vector"));
            }
        }
        if same_point(&l, &f) {
            return Err(bad("L and F coincide"));
        }
        let l = Form::linear(&l)?;
        let f = Form::linear(&f)?;
        let on = |line: &Form<F>, p: &Point<F>| line.eval(p).map(|v| v.is_zero());
        if !on(&l, &n)? || !on(&f, &n)? {
            return Err(bad("n must lie on L and F"));
        }
        for p in [&n1, &n2] {
            if !on(&f, p)? || on(&l, p)? {
                return Err(bad("n′ and n″ must lie on F and off L"));
            }
        }
        if same_point(&n1, &n2) {
            return Err(bad("n′ and n″ coincide"));
        }
        let l_param = line_basis(&l)?;
        let f_param = line_basis(&f)?;
        Ok(Self { l, f, n, n1, n2, l_param, f_param })
    }

    pub fn restrict_l(&self, g: &Form<F>) -> Result<Form<F>> {
        g.restrict_param(&self.l_param.0, &self.l_param.1)
    }

    pub fn restrict_f(&self, g: &Form<F>) -> Result<Form<F>> {
        g.restrict_param(&self.f_param.0, &self.f_param.1)
    }

    /// `l_n` on `L`.
    pub fn l_n(&self) -> Form<F> {
        vanishing_form(&self.l_param.0, &self.l_param.1, &self.n).expect("n lies on L")
    }

    /// `l_n · l_{n′}² · l_{n″}²` on `F`.
    pub fn f_section(&self) -> Form<F> {
        let (p, q) = (&self.f_param.0, &self.f_param.1);
        let v = |pt: &Point<F>| vanishing_form(p, q, pt).expect("frame points lie on F");
        let (a, b, c) = (v(&self.n), v(&self.n1), v(&self.n2));
        a.mul(&b.pow(2)).and_then(|x| x.mul(&c.pow(2))).expect("binary forms")
    }

    /// The frame in coordinates of another field.
    pub fn map<G: Field>(&self, h: impl Fn(&F) -> G) -> FrameConfig<G> {
        let pt = |p: &Point<F>| [h(&p[0]), h(&p[1]), h(&p[2])];
        FrameConfig {
            l: self.l.map(&h),
            f: self.f.map(&h),
            n: pt(&self.n),
            n1: pt(&self.n1),
            n2: pt(&self.n2),
            l_param: (pt(&self.l_param.0), pt(&self.l_param.1)),
            f_param: (pt(&self.f_param.0), pt(&self.f_param.1)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField, Q};

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    #[test]
    fn canonical_parametrizations() {
        let fr = FrameConfig::<Q>::canonical(&RationalField::default());
        assert_eq!(fr.l_param, ([q(0), q(1), q(0)], [q(0), q(0), q(1)]));
        assert_eq!(fr.f_param, ([q(1), q(0), q(0)], [q(0), q(0), q(1)]));
        assert_eq!(fr.l_n(), Form::linear(&[q(1), q(0)]).unwrap());
        // s · t² · (s − t)²
        let st = fr.f_section();
        let s = Form::linear(&[q(1), q(0)]).unwrap();
        let t = Form::linear(&[q(0), q(1)]).unwrap();
        let expect = s.mul(&t.pow(2)).unwrap().mul(&s.sub(&t).unwrap().pow(2)).unwrap();
        assert_eq!(st, expect);
    }

    #[test]
    fn rejects_degenerate_frames() {
        let k = PrimeField::new(10007).unwrap();
        let e = |v| k.elem(v);
        let pt = |a, b, c| [e(a), e(b), e(c)];
        assert!(FrameConfig::new(pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(1, 0, 0), pt(2, 0, 0)).is_err());
        assert!(FrameConfig::new(pt(1, 0, 0), pt(0, 1, 0), pt(1, 0, 1), pt(1, 0, 0), pt(1, 0, 1)).is_err());
        assert!(FrameConfig::new(pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(0, 0, 1), pt(1, 0, 1)).is_err());
        assert!(FrameConfig::new(pt(1, 0, 0), pt(2, 0, 0), pt(0, 0, 1), pt(1, 0, 0), pt(1, 0, 1)).is_err());
    }

    #[test]
    fn division_by_linear_forms() {
        let s = Form::linear(&[q(1), q(0)]).unwrap();
        let t = Form::linear(&[q(0), q(1)]).unwrap();
        let g = s.add(&t.scale(&q(3))).unwrap().mul(&s.pow(2).add(&t.pow(2)).unwrap()).unwrap();
        assert_eq!(divide_linear(&g, &s.add(&t.scale(&q(3))).unwrap()).unwrap(), s.pow(2).add(&t.pow(2)).unwrap());
        assert_eq!(divide_linear(&t.pow(3), &t).unwrap(), t.pow(2));
        assert!(divide_linear(&t.pow(3), &s).is_err());
    }
}
