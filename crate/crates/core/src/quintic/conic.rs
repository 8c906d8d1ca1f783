//! Points on plane conics and their parametrization by lines.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Genericity, Result};
use crate::field::{rational_sqrt, ConcreteField, Field, Fp, PrimeField, QuadExt, Q};
use crate::poly::Form;

use super::frame::Point;
use super::system::conic_matrix;

#[derive(Clone, Debug, PartialEq)]
pub enum ConicPoint<F> {
    Found(Point<F>),
    /// No point of small height; one exists over `ℚ(√d)`.
    ExtensionRequired { d: BigInt },
}

/// Fields in which a point on a smooth conic can be looked for.
pub trait ConicSearch: ConcreteField {
    fn conic_point(c: &Form<Self>, ctx: &Self::Ctx, height_bound: u64) -> Result<ConicPoint<Self>>;
}

fn require_smooth<F: Field>(c: &Form<F>) -> Result<()> {
    let rank = if c.is_zero() { 0 } else { conic_matrix(c)?.rank() };
    if rank != 3 {
        return Err(Genericity::DegenerateConic(rank).into());
    }
    Ok(())
}

struct Coeffs<F> {
    xx: F,
    xy: F,
    xz: F,
    yy: F,
    yz: F,
    zz: F,
}

fn coeffs<F: Field>(c: &Form<F>) -> Coeffs<F> {
    Coeffs {
        xx: c.coeff(&[2, 0, 0]),
        xy: c.coeff(&[1, 1, 0]),
        xz: c.coeff(&[1, 0, 1]),
        yy: c.coeff(&[0, 2, 0]),
        yz: c.coeff(&[0, 1, 1]),
        zz: c.coeff(&[0, 0, 2]),
    }
}

/// Roots of `a u² + b u + c` in `𝔽_p`, smallest representative first.
fn roots_fp(a: Fp, b: Fp, c: Fp) -> Option<Fp> {
    if a.is_zero() {
        if !b.is_zero() {
            return Some(-c / b);
        }
        return c.is_zero().then(|| a.clone());
    }
    let two_a = a.clone() + a.clone();
    let disc = b.clone() * b.clone() - two_a.clone() * (c.clone() + c);
    let r = disc.sqrt()?;
    let u1 = (-b.clone() + r.clone()) / two_a.clone();
    let u2 = (-b - r) / two_a;
    Some(if u1.value() <= u2.value() { u1 } else { u2 })
}

impl ConicSearch for Fp {
    /// Tries `[1:b:c]` for `c = 0, 1, …`, then `[0:1:c]`, then `[0:0:1]`.
    fn conic_point(c: &Form<Fp>, ctx: &PrimeField, _: u64) -> Result<ConicPoint<Fp>> {
        require_smooth(c)?;
        let k = coeffs(c);
        let e = |v: u64| ctx.elem_u64(v);
        for z in 0..ctx.modulus() {
            let z = e(z);
            let b = k.xy.clone() + k.yz.clone() * z.clone();
            let c0 = k.xx.clone() + k.xz.clone() * z.clone() + k.zz.clone() * z.clone() * z.clone();
            if let Some(y) = roots_fp(k.yy.clone() + e(0), b + e(0), c0 + e(0)) {
                return Ok(ConicPoint::Found([e(1), y + e(0), z]));
            }
        }
        if let Some(z) = roots_fp(k.zz.clone() + e(0), k.yz.clone() + e(0), k.yy.clone() + e(0)) {
            return Ok(ConicPoint::Found([e(0), e(1), z + e(0)]));
        }
        Ok(ConicPoint::Found([e(0), e(0), e(1)]))
    }
}

const SMALL_HEIGHT: i64 = 64;

/// The binary quadratic form `D(a, b)` whose square values give rational
/// points, reduced modulo a few small moduli to reject non-squares cheaply.
struct DiscForm {
    moduli: Vec<i64>,
    coeffs: Vec<(i64, i64, i64)>,
    squares: Vec<Vec<bool>>,
}

impl DiscForm {
    fn new(daa: &BigInt, dab: &BigInt, dbb: &BigInt) -> Self {
        let moduli = vec![64i64, 63, 65, 11, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
        let coeffs = moduli.iter().map(|&m| (mod_small(daa, m), mod_small(dab, m), mod_small(dbb, m))).collect();
        let squares = moduli
            .iter()
            .map(|&m| {
                let mut t = vec![false; m as usize];
                for x in 0..m {
                    t[(x * x % m) as usize] = true;
                }
                t
            })
            .collect();
        Self { moduli, coeffs, squares }
    }

    fn value(&self, k: usize, a: i64, b: i64) -> usize {
        let m = self.moduli[k];
        let (p, q, r) = self.coeffs[k];
        let (a, b) = (a.rem_euclid(m), b.rem_euclid(m));
        ((p * a % m * a + q * a % m * b + r * b % m * b) % m) as usize
    }

    fn maybe_square(&self, a: i64, b: i64) -> bool {
        (0..self.moduli.len()).all(|k| self.squares[k][self.value(k, a, b)])
    }

    /// For fixed `a`: whether `D(a, b)` can be a square, indexed by `b mod m`.
    fn rows(&self, a: i64) -> Vec<Vec<bool>> {
        (0..self.moduli.len())
            .map(|k| (0..self.moduli[k]).map(|b| self.squares[k][self.value(k, a, b)]).collect())
            .collect()
    }
}

fn mod_small(v: &BigInt, m: i64) -> i64 {
    let r = v % BigInt::from(m);
    let r: i64 = r.try_into().expect("small remainder");
    r.rem_euclid(m)
}

/// Integer with the same square class as `v`: numerator times denominator
/// with small square factors removed.
fn square_class(v: &Q) -> BigInt {
    let mut n = v.numer() * v.denom();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(10_000);
    while p <= limit {
        let sq = &p * &p;
        while (&n % &sq).is_zero() {
            n /= &sq;
        }
        p += 1;
    }
    n
}

fn is_definite(c: &Form<Q>) -> Result<bool> {
    let m = conic_matrix(c)?;
    let m1 = m[(0, 0)].clone();
    let m2 = m1.clone() * m[(1, 1)].clone() - m[(0, 1)].clone() * m[(1, 0)].clone();
    let m3 = m.determinant()?;
    let pos = m1.is_positive() && m2.is_positive() && m3.is_positive();
    let neg = m1.is_negative() && m2.is_positive() && m3.is_negative();
    Ok(pos || neg)
}

impl ConicSearch for Q {
    /// Looks at `[0:0:1]`, then at every primitive `(a, b)` with
    /// `max(|a|, |b|) ≤ height_bound`, by increasing height, solving for `c`.
    fn conic_point(c: &Form<Q>, _: &crate::field::RationalField, height_bound: u64) -> Result<ConicPoint<Q>> {
        require_smooth(c)?;
        let k = coeffs(c);
        if k.zz.is_zero() {
            return Ok(ConicPoint::Found([Q::zero(), Q::zero(), Q::one()]));
        }
        let ext = || {
            let disc = k.xz.clone() * k.xz.clone() - Q::from_i64(4) * k.zz.clone() * k.xx.clone();
            ConicPoint::ExtensionRequired { d: square_class(&disc) }
        };
        if is_definite(c)? {
            return Ok(ext());
        }
        let den = [&k.xx, &k.xy, &k.xz, &k.yy, &k.yz, &k.zz].iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let int = |v: &Q| (v * Q::from_integer(den.clone())).to_integer();
        let (xx, xy, xz, yy, yz, zz) = (int(&k.xx), int(&k.xy), int(&k.xz), int(&k.yy), int(&k.yz), int(&k.zz));
        // discriminant in c as a binary quadratic form in (a, b)
        let four = BigInt::from(4);
        let daa = &xz * &xz - &four * &zz * &xx;
        let dab = BigInt::from(2) * &xz * &yz - &four * &zz * &xy;
        let dbb = &yz * &yz - &four * &zz * &yy;
        let form = DiscForm::new(&daa, &dab, &dbb);
        let solve = |a: i64, b: i64| -> Option<Point<Q>> {
            let (ab, bb) = (BigInt::from(a), BigInt::from(b));
            let disc = &daa * &ab * &ab + &dab * &ab * &bb + &dbb * &bb * &bb;
            if disc.is_negative() {
                return None;
            }
            let r = disc.sqrt();
            if &r * &r != disc {
                return None;
            }
            let lin = &xz * &ab + &yz * &bb;
            let two_a = BigInt::from(2) * &zz;
            let z = Q::new(-&lin + &r, two_a.clone()).max(Q::new(-lin - r, two_a));
            Some([Q::from_integer(ab), Q::from_integer(bb), z])
        };
        let bound = height_bound as i64;
        // small heights in order, so the first point found is a smallest one
        let small = bound.min(SMALL_HEIGHT);
        for h in 1..=small {
            for a in (0..=h).rev() {
                for b in -h..=h {
                    if a.max(b.abs()) != h || (a == 0 && b <= 0) || a.gcd(&b) != 1 || !form.maybe_square(a, b) {
                        continue;
                    }
                    if let Some(p) = solve(a, b) {
                        return Ok(ConicPoint::Found(p));
                    }
                }
            }
        }
        // the rest of the box row by row, filtering with residue tables
        for a in 0..=bound {
            let rows = form.rows(a);
            for b in -bound..=bound {
                // moduli[0] = 64, so the first lookup is a mask
                let hit = rows[0][(b & 63) as usize]
                    && rows[1..].iter().zip(&form.moduli[1..]).all(|(row, &m)| row[b.rem_euclid(m) as usize]);
                if !hit || a.max(b.abs()) <= small || (a == 0 && b <= 0) || a.gcd(&b) != 1 {
                    continue;
                }
                if let Some(p) = solve(a, b) {
                    return Ok(ConicPoint::Found(p));
                }
            }
        }
        Ok(ext())
    }
}

/// A point of `c` over `ℚ(√d)` on the line `b = 0`, for `d` returned by
/// [`ConicSearch::conic_point`].
pub fn point_over_extension(c: &Form<Q>, d: &BigInt) -> Result<Point<QuadExt<Q>>> {
    let k = coeffs(c);
    let dq = Q::from_integer(d.clone());
    let disc = k.xz.clone() * k.xz.clone() - Q::from_i64(4) * k.zz.clone() * k.xx.clone();
    let s = rational_sqrt(&(disc / dq.clone()))
        .ok_or_else(|| Error::Degenerate("discriminant is not in the square class of d".into()))?;
    let two_a = k.zz.clone() + k.zz.clone();
    if two_a.is_zero() {
        return Err(Error::Degenerate("conic passes through [0:0:1]".into()));
    }
    let z = QuadExt::new(-k.xz / two_a.clone(), s / two_a, dq.clone());
    Ok([QuadExt::from_base(Q::one(), dq.clone()), QuadExt::from_base(Q::zero(), dq), z])
}

/// Degree-2 parametrization `(u:v) ↦ X(u,v)` of a smooth conic through
/// `p0`: `X = C(R)·p0 − (∇C(p0)·R)·R` with `R = u·eᵢ + v·eⱼ`.
pub fn parametrize_conic<F: Field>(c: &Form<F>, p0: &Point<F>) -> Result<[Form<F>; 3]> {
    if !c.eval(p0)?.is_zero() {
        return Err(Error::InvalidForm("base point is not on the conic".into()));
    }
    let one = c.field_one();
    let k = (0..3).find(|&i| !p0[i].is_zero()).ok_or(Error::ZeroForm)?;
    let (i, j) = match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let unit = |m: usize| {
        let mut e = [F::zero(), F::zero(), F::zero()];
        e[m] = one.clone();
        e
    };
    let (ei, ej) = (unit(i), unit(j));
    let cr = c.restrict_param(&ei, &ej)?;
    let grad: Vec<F> = c.gradient().iter().map(|g| g.eval(p0)).collect::<Result<_>>()?;
    let b = Form::linear(&[grad[i].clone(), grad[j].clone()])?;
    let out: Vec<Form<F>> = (0..3)
        .map(|m| {
            let rm = Form::linear(&[ei[m].clone(), ej[m].clone()])?;
            cr.scale(&p0[m]).sub(&b.mul(&rm)?)
        })
        .collect::<Result<_>>()?;
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}
