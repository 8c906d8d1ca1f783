//! The 14-dimensional space of quintics through `n` with double points at
//! `n′`, `n″`, the map `ρ` to binary quartics on `L`, the squaring map and
//! the restriction to ten marked points.

use crate::error::{Error, Genericity, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::{monomials, Exponent, Form};

use super::frame::{divide_linear, is_zero_point, same_point, FrameConfig, Point};

/// Exponents of the coordinates `X₀..X₄` of binary quartics:
/// `s⁴, t⁴, s²t², s³t, st³`.
pub const SQ_BASIS: [Exponent; 5] = [[4, 0, 0], [0, 4, 0], [2, 2, 0], [3, 1, 0], [1, 3, 0]];

#[derive(Clone, Debug, PartialEq)]
pub struct QuinticSystem<F> {
    pub frame: FrameConfig<F>,
    pub basis: Vec<Form<F>>,
}

/// Row of a linear condition on degree-`d` forms: the value (or the
/// `i`-th partial derivative) at `p`.
fn condition_row<F: Field>(mons: &[Exponent], p: &[F], deriv: Option<usize>, one: &F) -> Vec<F> {
    mons.iter()
        .map(|e| {
            let mut e = *e;
            let mut c = one.clone();
            if let Some(i) = deriv {
                if e[i] == 0 {
                    return F::zero();
                }
                c = c * F::from_i64(e[i] as i64);
                e[i] -= 1;
            }
            for k in 0..3 {
                if e[k] > 0 {
                    c = c * p[k].pow_u64(e[k] as u64);
                }
            }
            c
        })
        .collect()
}

fn node_conditions<F: Field>(mons: &[Exponent], p: &[F], one: &F) -> Vec<Vec<F>> {
    (0..3).map(|i| condition_row(mons, p, Some(i), one)).collect()
}

fn combine<F: Field>(basis: &[Form<F>], coeffs: &[F]) -> Form<F> {
    let mut acc = Form::zero(3, basis[0].degree());
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c)).expect("same shape");
        }
    }
    acc
}

fn forms_of_kernel<F: Field>(k: Vec<Vec<F>>, d: u32, one: &F) -> Vec<Form<F>> {
    k.into_iter()
        .map(|v| {
            let v: Vec<F> = v.into_iter().map(|x| x * one.clone()).collect();
            Form::from_coeffs(3, d, &v).expect("kernel vector has full length")
        })
        .collect()
}

/// Forms of degree `d` with double points at `n′` and `n″`, and through
/// `n` when `through_n` is set.
fn nodal_space<F: Field>(frame: &FrameConfig<F>, d: u32, through_n: bool) -> Result<(Vec<Form<F>>, usize)> {
    let one = frame.l.field_one();
    let mons = monomials(3, d);
    let mut rows = Vec::new();
    if through_n {
        rows.push(condition_row(&mons, &frame.n, None, &one));
    }
    rows.extend(node_conditions(&mons, &frame.n1, &one));
    rows.extend(node_conditions(&mons, &frame.n2, &one));
    let m = Matrix::from_rows(rows)?;
    let rank = m.rank();
    Ok((forms_of_kernel(m.kernel(), d, &one), rank))
}

pub fn quintic_system<F: Field>(frame: &FrameConfig<F>) -> Result<QuinticSystem<F>> {
    let (basis, rank) = nodal_space(frame, 5, true)?;
    if rank != 7 || basis.len() != 14 {
        return Err(Error::Degenerate(format!("frame conditions have rank {rank}, expected 7")));
    }
    Ok(QuinticSystem { frame: frame.clone(), basis })
}

/// Quartics with double points at `n′` and `n″`.
pub fn nodal_quartics<F: Field>(frame: &FrameConfig<F>) -> Result<Vec<Form<F>>> {
    Ok(nodal_space(frame, 4, false)?.0)
}

/// `Γ|_L = l_n · ρ(Γ)`.
pub fn rho<F: Field>(gamma: &Form<F>, frame: &FrameConfig<F>) -> Result<Form<F>> {
    if gamma.nvars() != 3 || gamma.degree() != 5 {
        return Err(Error::InvalidForm("ρ expects a ternary quintic".into()));
    }
    if !gamma.eval(&frame.n)?.is_zero() {
        return Err(Error::InvalidForm("Γ does not vanish at n".into()));
    }
    let r = frame.restrict_l(gamma)?;
    if r.is_zero() {
        return Ok(Form::zero(2, 4));
    }
    divide_linear(&r, &frame.l_n())
}

/// Coordinates `X₀..X₄` of a binary quartic.
pub fn sq_coords<F: Field>(f: &Form<F>) -> [F; 5] {
    SQ_BASIS.map(|e| f.coeff(&e))
}

pub fn from_sq_coords<F: Field>(x: &[F]) -> Form<F> {
    Form::from_terms(2, 4, SQ_BASIS.iter().zip(x).map(|(e, v)| (*e, v.clone()))).expect("binary quartic")
}

/// `[a:b:c] ↦ [a², b², c²+2ab, 2ac, 2bc]`, the coefficients of
/// `(a s² + b t² + c st)²`.
pub fn squaring_map<F: Field>(p: &[F]) -> Result<[F; 5]> {
    if p.len() != 3 || is_zero_point(p) {
        return Err(Error::InvalidForm("squaring map needs a nonzero point".into()));
    }
    let (a, b, c) = (p[0].clone(), p[1].clone(), p[2].clone());
    let two = |x: F| x.clone() + x;
    Ok([
        a.clone() * a.clone(),
        b.clone() * b.clone(),
        c.clone() * c.clone() + two(a.clone() * b.clone()),
        two(a * c.clone()),
        two(b * c),
    ])
}

/// `a s² + b t² + c st`.
pub fn binary_quadratic<F: Field>(p: &[F]) -> Form<F> {
    Form::from_terms(2, 2, [([2, 0, 0], p[0].clone()), ([0, 2, 0], p[1].clone()), ([1, 1, 0], p[2].clone())])
        .expect("binary quadratic")
}

/// Symmetric matrix `M` with `C(v) = vᵀ M v`.
pub fn conic_matrix<F: Field>(c: &Form<F>) -> Result<Matrix<F>> {
    if c.nvars() != 3 || c.degree() != 2 {
        return Err(Error::InvalidForm("expected a ternary quadratic".into()));
    }
    let one = c.field_one();
    let half = (one.clone() + one).inv().expect("characteristic is not 2");
    let mut rows = vec![vec![F::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut e = [0u32; 3];
            e[i] += 1;
            e[j] += 1;
            let v = c.coeff(&e);
            rows[i][j] = if i == j { v } else { v * half.clone() };
        }
    }
    Matrix::from_rows(rows)
}

/// `C₀ = H ∘ sq` and the rank of its symmetric matrix.
pub fn veronese_hyperplane_conic<F: Field>(h: &[F]) -> Result<(Form<F>, usize)> {
    if h.len() != 5 {
        return Err(Error::DimensionMismatch("a hyperplane of ℙ⁴ has five coefficients".into()));
    }
    if h.iter().all(|v| v.is_zero()) {
        return Err(Error::ZeroForm);
    }
    let two = |x: &F| x.clone() + x.clone();
    let c = Form::from_terms(
        3,
        2,
        [
            ([2, 0, 0], h[0].clone()),
            ([0, 2, 0], h[1].clone()),
            ([0, 0, 2], h[2].clone()),
            ([1, 1, 0], two(&h[2])),
            ([1, 0, 1], two(&h[3])),
            ([0, 1, 1], two(&h[4])),
        ],
    )?;
    let rank = if c.is_zero() { 0 } else { conic_matrix(&c)?.rank() };
    Ok((c, rank))
}

impl<F: Field> QuinticSystem<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combine(&self, coeffs: &[F]) -> Form<F> {
        combine(&self.basis, coeffs)
    }

    /// `5 × 14` matrix of `ρ` in the coordinates `X₀..X₄`.
    pub fn rho_matrix(&self) -> Result<Matrix<F>> {
        let cols: Vec<[F; 5]> = self.basis.iter().map(|b| rho(b, &self.frame).map(|r| sq_coords(&r))).collect::<Result<_>>()?;
        Matrix::from_rows((0..5).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect())
    }

    /// Basis of `ker ρ` inside the system.
    pub fn rho_kernel(&self) -> Result<Vec<Form<F>>> {
        Ok(self.rho_matrix()?.kernel().iter().map(|v| self.combine(v)).collect())
    }

    fn check_points(&self, points: &[Point<F>]) -> Result<()> {
        let fr = &self.frame;
        for (i, p) in points.iter().enumerate() {
            let tag = |m: &str| Genericity::SpecialPoint(format!("p{} {m}", i + 1));
            if is_zero_point(p) {
                return Err(Error::InvalidForm(format!("p{} is the zero vector", i + 1)));
            }
            if fr.l.eval(p)?.is_zero() {
                return Err(tag("lies on L").into());
            }
            if fr.f.eval(p)?.is_zero() {
                return Err(tag("lies on F").into());
            }
            if points[..i].iter().any(|q| same_point(p, q)) {
                return Err(tag("repeats an earlier point").into());
            }
        }
        Ok(())
    }

    /// Members of the system through every point, without a dimension check.
    pub fn through_points(&self, points: &[Point<F>]) -> Result<Vec<Form<F>>> {
        self.check_points(points)?;
        if points.is_empty() {
            return Ok(self.basis.clone());
        }
        let rows: Vec<Vec<F>> = points.iter().map(|p| self.basis.iter().map(|b| b.eval(p)).collect::<Result<_>>()).collect::<Result<_>>()?;
        Ok(Matrix::from_rows(rows)?.kernel().iter().map(|v| self.combine(v)).collect())
    }

    /// The 4-dimensional subsystem through ten points.
    pub fn restricted_system(&self, points: &[Point<F>]) -> Result<Vec<Form<F>>> {
        if points.len() != 10 {
            return Err(Error::DimensionMismatch(format!("{} marked points, expected 10", points.len())));
        }
        let k = self.through_points(points)?;
        if k.len() != 4 {
            return Err(Genericity::RestrictedDimension(k.len()).into());
        }
        Ok(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ConcreteField, Fp, PrimeField, RationalField, Q};
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fp() -> PrimeField {
        PrimeField::new(10007).unwrap()
    }

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    #[test]
    fn squaring_map_examples() {
        let s = |a, b, c| squaring_map(&[q(a), q(b), q(c)]).unwrap().to_vec();
        assert_eq!(s(1, 0, 0), vec![q(1), q(0), q(0), q(0), q(0)]);
        assert_eq!(s(0, 0, 1), vec![q(0), q(0), q(1), q(0), q(0)]);
        assert_eq!(s(1, 1, 1), vec![q(1), q(1), q(3), q(2), q(2)]);
        assert!(squaring_map(&[q(0), q(0), q(0)]).is_err());
    }

    #[test]
    fn squaring_map_is_the_square() {
        let p = [q(3), q(-2), q(5)];
        let quad = binary_quadratic(&p);
        assert_eq!(sq_coords(&quad.pow(2)).to_vec(), squaring_map(&p).unwrap().to_vec());
    }

    #[test]
    fn hyperplane_conics() {
        let h = |v: [i64; 5]| veronese_hyperplane_conic(&v.map(q)).unwrap();
        let (c, r) = h([0, 0, 1, 0, 0]);
        assert_eq!(r, 3);
        let expect = Form::from_terms(3, 2, [([0, 0, 2], q(1)), ([1, 1, 0], q(2))]).unwrap();
        assert_eq!(c, expect);
        let (c, r) = h([1, 0, 0, 0, 0]);
        assert_eq!((c, r), (Form::from_terms(3, 2, [([2, 0, 0], q(1))]).unwrap(), 1));
        assert_eq!(h([1, 1, 0, 0, 0]).1, 2);
        assert!(veronese_hyperplane_conic(&vec![q(0); 5]).is_err());
    }

    #[test]
    fn system_dimensions_over_both_fields() {
        let k = fp();
        let sys = quintic_system(&FrameConfig::<Fp>::canonical(&k)).unwrap();
        assert_eq!(sys.dim(), 14);
        assert_eq!(sys.rho_kernel().unwrap().len(), 9);
        assert_eq!(sys.rho_matrix().unwrap().rank(), 5);
        let sysq = quintic_system(&FrameConfig::<Q>::canonical(&RationalField::default())).unwrap();
        assert_eq!(sysq.dim(), 14);
        assert_eq!(sysq.rho_kernel().unwrap().len(), 9);
        assert_eq!(nodal_quartics(&sysq.frame).unwrap().len(), 9);
    }

    #[test]
    fn basis_satisfies_the_conditions() {
        let sys = quintic_system(&FrameConfig::<Q>::canonical(&RationalField::default())).unwrap();
        let fr = &sys.frame;
        for b in &sys.basis {
            assert!(b.eval(&fr.n).unwrap().is_zero());
            for p in [&fr.n1, &fr.n2] {
                assert!(b.eval(p).unwrap().is_zero());
                for d in b.gradient() {
                    assert!(d.eval(p).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn rho_examples() {
        let fr = FrameConfig::<Q>::canonical(&RationalField::default());
        let x = Form::<Q>::var(3, 0);
        let y = Form::<Q>::var(3, 1);
        let z = Form::<Q>::var(3, 2);
        let g = x.pow(5).add(&y.pow(5)).unwrap().add(&y.mul(&z.pow(4)).unwrap()).unwrap();
        let expect = Form::from_terms(2, 4, [([4, 0, 0], q(1)), ([0, 4, 0], q(1))]).unwrap();
        assert_eq!(rho(&g, &fr).unwrap(), expect);
        assert!(rho(&x.pow(4).mul(&z).unwrap().add(&z.pow(5)).unwrap(), &fr).is_err());
        // L times a nodal quartic lies in the kernel
        for quartic in nodal_quartics(&fr).unwrap() {
            let g = fr.l.mul(&quartic).unwrap();
            assert!(rho(&g, &fr).unwrap().is_zero());
        }
    }

    #[test]
    fn kernel_of_rho_is_l_times_nodal_quartics() {
        // 9 + 5 = 14: the L-multiples span the kernel exactly
        let sys = quintic_system(&FrameConfig::<Q>::canonical(&RationalField::default())).unwrap();
        let ker = sys.rho_kernel().unwrap();
        let lmult: Vec<Form<Q>> = nodal_quartics(&sys.frame).unwrap().iter().map(|f| sys.frame.l.mul(f).unwrap()).collect();
        let rows = |fs: &[Form<Q>]| fs.iter().map(|f| f.coeffs_dense()).collect::<Vec<_>>();
        let mut both = rows(&ker);
        both.extend(rows(&lmult));
        assert_eq!(Matrix::from_rows(rows(&lmult)).unwrap().rank(), 9);
        assert_eq!(Matrix::from_rows(both).unwrap().rank(), 9);
    }

    fn random_points(k: &PrimeField, seed: u64, count: usize) -> Vec<Point<Fp>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| [0; 3].map(|_| Fp::random(k, &mut rng))).collect()
    }

    #[test]
    fn restricted_dimensions() {
        let k = fp();
        let sys = quintic_system(&FrameConfig::<Fp>::canonical(&k)).unwrap();
        let pts = random_points(&k, 7, 11);
        assert_eq!(sys.restricted_system(&pts[..10]).unwrap().len(), 4);
        assert_eq!(sys.through_points(&pts).unwrap().len(), 3);
        let mut on_l = pts[..10].to_vec();
        on_l[3] = [k.elem(0), k.elem(5), k.elem(9)];
        assert!(matches!(sys.restricted_system(&on_l), Err(Error::Genericity(Genericity::SpecialPoint(_)))));
    }

    #[test]
    fn points_on_a_line_raise_the_dimension() {
        // ten points on one line M: every member of the system that vanishes at
        // six of them contains M, so the conditions collapse
        let k = fp();
        let sys = quintic_system(&FrameConfig::<Fp>::canonical(&k)).unwrap();
        let pts: Vec<Point<Fp>> = (1..=10).map(|i| [k.elem(i), k.elem(2 * i + 3), k.elem(1)]).collect();
        match sys.restricted_system(&pts) {
            Err(Error::Genericity(Genericity::RestrictedDimension(d))) => assert!(d > 4),
            other => panic!("{other:?}"),
        }
    }
}
