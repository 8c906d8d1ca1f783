//! Independent checks on a sampled quintic: the sections by `F` and `L`,
//! the two nodes, smoothness elsewhere and the marked points.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::Result;
use crate::field::{is_prime_u64, ConcreteField, Field, Fp, PrimeField, QuadExt, QuadField, RationalField, Q};
use crate::matrix::Matrix;
use crate::poly::Form;
use crate::resultant::resultant;
use crate::upoly::UPoly;

use super::frame::{divide_linear, is_zero_point, line_coords, same_point, FrameConfig, Point};
use super::system::binary_quadratic;

/// Seed of the projections used by the smoothness check.
const PROJECTION_SEED: u64 = 0x5eed_0f_70_1e;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    /// `(d−1)(d−2)/2 − #nodes`, set once the singular locus is certified.
    pub genus: Option<u32>,
    /// `"split"` when `q` has roots in the base field, `"conjugate"` otherwise.
    pub tangency: String,
    pub all_pass: bool,
}

impl VerifyReport {
    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
    }
}

fn check(name: &str, r: Result<std::result::Result<String, String>>) -> Check {
    let (pass, detail) = match r {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, e.to_string()),
    };
    Check { name: name.into(), pass, detail }
}

type Outcome = Result<std::result::Result<String, String>>;

fn f_section<F: Field>(g: &Form<F>, fr: &FrameConfig<F>) -> Outcome {
    let r = fr.restrict_f(g)?;
    Ok(if r.proportional(&fr.f_section()) {
        Ok("Γ·F = n + 2n′ + 2n″".into())
    } else {
        Err("Γ|_F is not proportional to l_n·l_{n′}²·l_{n″}²".into())
    })
}

fn l_section<F: ConcreteField>(g: &Form<F>, fr: &FrameConfig<F>, q: &[F; 3]) -> Outcome {
    let quad = binary_quadratic(q);
    if quad.is_zero() {
        return Ok(Err("q is zero".into()));
    }
    let r = fr.restrict_l(g)?;
    if !r.proportional(&fr.l_n().mul(&quad.pow(2))?) {
        return Ok(Err("Γ|_L is not l_n·q²".into()));
    }
    let disc = q[2].clone() * q[2].clone() - (q[0].clone() + q[0].clone()) * (q[1].clone() + q[1].clone());
    if disc.is_zero() {
        return Ok(Err("q is a square: hyperflex, not a bitangent".into()));
    }
    let (s0, t0) = line_coords(&fr.l_param.0, &fr.l_param.1, &fr.n)?;
    if quad.eval(&[s0, t0])?.is_zero() {
        return Ok(Err("q vanishes at n".into()));
    }
    Ok(Ok("Γ·L = n + 2b₁ + 2b₂ with b₁ ≠ b₂, both ≠ n".into()))
}

fn hessian<F: Field>(g: &Form<F>, p: &[F]) -> Result<Matrix<F>> {
    let rows = g
        .gradient()
        .iter()
        .map(|d| d.gradient().iter().map(|dd| dd.eval(p)).collect::<Result<Vec<F>>>())
        .collect::<Result<_>>()?;
    Matrix::from_rows(rows)
}

fn is_singular<F: Field>(g: &Form<F>, p: &[F]) -> Result<bool> {
    for d in g.gradient() {
        if !d.eval(p)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(g.eval(p)?.is_zero())
}

fn nodes<F: Field>(g: &Form<F>, fr: &FrameConfig<F>) -> Outcome {
    for (name, p) in [("n′", &fr.n1), ("n″", &fr.n2)] {
        if !is_singular(g, p)? {
            return Ok(Err(format!("Γ is not singular at {name}")));
        }
        let r = hessian(g, p)?.rank();
        if r != 2 {
            return Ok(Err(format!("Hessian at {name} has rank {r}, not a node")));
        }
    }
    Ok(Ok("ordinary double points at n′ and n″".into()))
}

/// How the singular locus is examined: in the field itself, or through
/// ring maps to prime fields.
pub enum Plan<F> {
    Native,
    Reduce(Vec<(PrimeField, Box<dyn Fn(&F) -> Option<Fp>>)>),
}

/// Fields whose curves can be checked for further singular points.
pub trait SingularLocus: ConcreteField {
    fn plan(ctx: &Self::Ctx) -> Plan<Self>;
}

impl SingularLocus for Fp {
    fn plan(_: &PrimeField) -> Plan<Fp> {
        Plan::Native
    }
}

impl SingularLocus for QuadExt<Fp> {
    fn plan(_: &QuadField<Fp>) -> Plan<Self> {
        Plan::Native
    }
}

/// Primes above 10⁶ at which `keep` holds.
fn primes(count: usize, keep: impl Fn(u64) -> bool) -> Vec<u64> {
    (1_000_003u64..).step_by(2).filter(|&p| is_prime_u64(p) && keep(p)).take(count).collect()
}

fn reduce_q(v: &Q, k: &PrimeField) -> Option<Fp> {
    let m = BigInt::from(k.modulus());
    let den = k.elem_u64(u64::try_from(v.denom().mod_floor(&m)).expect("residue"));
    let num = k.elem_u64(u64::try_from(v.numer().mod_floor(&m)).expect("residue"));
    den.inv().map(|d| num * d)
}

const REDUCTIONS: usize = 6;

impl SingularLocus for Q {
    fn plan(_: &RationalField) -> Plan<Q> {
        let maps = primes(REDUCTIONS, |_| true)
            .into_iter()
            .map(|p| {
                let k = PrimeField::new(p).expect("prime");
                let f: Box<dyn Fn(&Q) -> Option<Fp>> = Box::new({
                    let k = k.clone();
                    move |v: &Q| reduce_q(v, &k)
                });
                (k, f)
            })
            .collect();
        Plan::Reduce(maps)
    }
}

impl SingularLocus for QuadExt<Q> {
    /// Uses primes at which `d` is a nonzero square, sending `√d` to a root.
    fn plan(ctx: &QuadField<Q>) -> Plan<Self> {
        let d = ctx.d.clone();
        let residue = |p: u64| reduce_q(&d, &PrimeField::new(p).expect("prime"));
        let maps = primes(REDUCTIONS, |p| residue(p).is_some_and(|r| !r.is_zero() && r.legendre() == 1))
            .into_iter()
            .map(|p| {
                let k = PrimeField::new(p).expect("prime");
                let root = residue(p).and_then(|r| r.sqrt()).expect("square residue");
                let f: Box<dyn Fn(&QuadExt<Q>) -> Option<Fp>> = Box::new({
                    let k = k.clone();
                    move |v: &QuadExt<Q>| Some(reduce_q(&v.re, &k)? + reduce_q(&v.im, &k)? * root.clone())
                });
                (k, f)
            })
            .collect();
        Plan::Reduce(maps)
    }
}

/// Multiplicity of the root of `l` in `f`.
fn multiplicity<F: Field>(f: &Form<F>, l: &Form<F>) -> (usize, Form<F>) {
    let mut k = 0;
    let mut cur = f.clone();
    while cur.degree() > 0 {
        match divide_linear(&cur, l) {
            Ok(q) => {
                cur = q;
                k += 1;
            }
            Err(_) => break,
        }
    }
    (k, cur)
}

/// True when two nonzero binary forms share no root in `ℙ¹`.
fn coprime<F: Field>(a: &Form<F>, b: &Form<F>) -> bool {
    let drop = |f: &Form<F>| f.degree() as usize - UPoly::dehomogenize(f).degree().unwrap_or(0);
    let g = UPoly::dehomogenize(a).gcd(&UPoly::dehomogenize(b));
    g.degree() == Some(0) && (drop(a) == 0 || drop(b) == 0)
}

enum Certificate {
    Certified,
    Inconclusive(String),
}

/// One random projection `(x:y:z) ↦ (x:y)` after a change of coordinates.
/// Every common zero of the partials projects to a common root of
/// `Res_z(Γ_x, Γ_y)` and `Res_z(Γ_x, Γ_z)`. Each node must contribute a
/// simple root to both, and what is left must be coprime.
fn certify_projection<F: ConcreteField>(g: &Form<F>, nodes: &[Point<F>], ctx: &F::Ctx, rng: &mut ChaCha8Rng) -> Result<Certificate> {
    use Certificate::Inconclusive;
    let one = g.field_one();
    let a: Vec<Vec<F>> = (0..3).map(|_| (0..3).map(|_| F::random(ctx, rng) * one.clone()).collect()).collect();
    let Some(minv) = Matrix::from_rows(a.clone())?.inverse() else {
        return Ok(Inconclusive("singular change of coordinates".into()));
    };
    let images: Vec<Form<F>> = a.iter().map(|row| Form::linear(row)).collect::<Result<_>>()?;
    let grad = g.compose(&images)?.gradient();
    let r = [resultant(&grad[0], &grad[1], 2)?, resultant(&grad[0], &grad[2], 2)?];
    if r.iter().any(Form::is_zero) {
        return Ok(Inconclusive("a resultant vanishes identically".into()));
    }
    let proj: Vec<Point<F>> = nodes
        .iter()
        .map(|p| {
            let v = minv.mul_vec(&p[..]).expect("3 × 3");
            [v[0].clone(), v[1].clone(), F::zero()]
        })
        .collect();
    if proj.iter().any(|p| is_zero_point(p)) || same_point(&proj[0], &proj[1]) {
        return Ok(Inconclusive("nodes collide under the projection".into()));
    }
    let mut rest = Vec::new();
    for ri in &r {
        let mut cur = ri.clone();
        for p in &proj {
            let l = Form::linear(&[p[1].clone(), -p[0].clone()])?;
            let (m, q) = multiplicity(&cur, &l);
            if m != 1 {
                return Ok(Inconclusive(format!("node image has multiplicity {m} in a resultant")));
            }
            cur = q;
        }
        rest.push(cur);
    }
    if !coprime(&rest[0], &rest[1]) {
        return Ok(Inconclusive("resultants share a root away from the nodes".into()));
    }
    Ok(Certificate::Certified)
}

fn certify_in<F: ConcreteField>(g: &Form<F>, nodes: &[Point<F>], ctx: &F::Ctx, rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    let mut last = String::from("no projection tried");
    for _ in 0..4 {
        match certify_projection(g, nodes, ctx, rng)? {
            Certificate::Certified => return Ok(None),
            Certificate::Inconclusive(why) => last = why,
        }
    }
    Ok(Some(last))
}

fn smooth_elsewhere<F: SingularLocus>(g: &Form<F>, fr: &FrameConfig<F>, ctx: &F::Ctx) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(PROJECTION_SEED);
    let nodes = [fr.n1.clone(), fr.n2.clone()];
    let last = match F::plan(ctx) {
        Plan::Native => match certify_in(g, &nodes, ctx, &mut rng)? {
            None => return Ok(Ok("partials vanish only at n′, n″ (simple roots of both resultants)".into())),
            Some(why) => why,
        },
        Plan::Reduce(maps) => {
            let mut last = String::from("no usable prime");
            for (k, red) in maps {
                let coeffs: Option<Vec<Fp>> = g.coeffs_dense().iter().map(|c| red(c)).collect();
                let pts: Option<Vec<Point<Fp>>> =
                    nodes.iter().map(|p| Some([red(&p[0])?, red(&p[1])?, red(&p[2])?])).collect();
                let (Some(coeffs), Some(pts)) = (coeffs, pts) else { continue };
                let gp = Form::from_coeffs(3, 5, &coeffs)?;
                match certify_in(&gp, &pts, &k, &mut rng)? {
                    None => {
                        return Ok(Ok(format!(
                            "certified modulo {}: partials vanish only at n′, n″ (simple roots of both resultants)",
                            k.modulus()
                        )))
                    }
                    Some(why) => last = format!("modulo {}: {why}", k.modulus()),
                }
            }
            last
        }
    };
    Ok(Err(format!("further singular points not excluded: {last}")))
}

fn marked_points<F: Field>(g: &Form<F>, pts: &[Point<F>]) -> Outcome {
    for (i, p) in pts.iter().enumerate() {
        if !g.eval(p)?.is_zero() {
            return Ok(Err(format!("p{} is not on Γ", i + 1)));
        }
        if is_singular(g, p)? {
            return Ok(Err(format!("p{} is a singular point", i + 1)));
        }
        if pts[..i].iter().any(|q| same_point(p, q)) {
            return Ok(Err(format!("p{} repeats an earlier point", i + 1)));
        }
    }
    Ok(Ok(format!("{} distinct smooth points on Γ", pts.len())))
}

/// Runs the five checks. Never fails; problems show up in the report.
pub fn verify_parts<F: SingularLocus>(
    frame: &FrameConfig<F>,
    g: &Form<F>,
    points: &[Point<F>],
    q: &[F; 3],
    ctx: &F::Ctx,
) -> VerifyReport {
    let shape_ok = g.nvars() == 3 && g.degree() == 5 && !g.is_zero();
    let guard = |o: Outcome| if shape_ok { o } else { Ok(Err("Γ is not a nonzero ternary quintic".into())) };
    let checks = vec![
        check("f_section", guard(f_section(g, frame))),
        check("l_section", guard(l_section(g, frame, q))),
        check("nodes", guard(nodes(g, frame))),
        check("no_other_singularities", guard(smooth_elsewhere(g, frame, ctx))),
        check("marked_points", guard(marked_points(g, points))),
    ];
    let all_pass = checks.iter().all(|c| c.pass);
    let genus = (checks[2].pass && checks[3].pass).then_some((5 - 1) * (5 - 2) / 2 - 2);
    let disc = q[2].clone() * q[2].clone() - (q[0].clone() + q[0].clone()) * (q[1].clone() + q[1].clone());
    let tangency = if disc.is_zero() {
        "double"
    } else if disc.sqrt().is_some() {
        "split"
    } else {
        "conjugate"
    };
    VerifyReport { checks, genus, tangency: tangency.into(), all_pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quintic::sampler::{sample_spin4, SampleOptions, SampleOutcome};
    use crate::quintic::system::nodal_quartics;
    use crate::quintic::SpinCurveDatum;

    fn datum() -> (PrimeField, SpinCurveDatum<Fp>) {
        let k = PrimeField::new(10007).unwrap();
        let SampleOutcome::Done(s) = sample_spin4(&k, &FrameConfig::canonical(&k), &SampleOptions::new(42)).unwrap() else {
            unreachable!()
        };
        (k, s.datum)
    }

    fn failing(r: &VerifyReport) -> Vec<&str> {
        r.failed()
    }

    #[test]
    fn sampled_datum_passes_and_scaling_is_harmless() {
        let (k, d) = datum();
        assert!(d.verify(&k).all_pass);
        let scaled = SpinCurveDatum { quintic: d.quintic.scale(&k.elem(17)), ..d.clone() };
        assert!(scaled.verify(&k).all_pass);
    }

    #[test]
    fn line_through_a_node_breaks_smoothness() {
        // M · Q with M a line through n′ and Q a quartic with a node at n″
        // through n′ and n: singular at n′, n″ and at M ∩ Q elsewhere
        let (k, d) = datum();
        let fr = &d.frame;
        let m = Form::linear(&[k.elem(0), k.elem(1), k.elem(3)]).unwrap();
        assert!(m.eval(&fr.n1).unwrap().is_zero());
        let quartics = nodal_quartics(fr).unwrap();
        let q = quartics.iter().enumerate().fold(Form::zero(3, 4), |acc, (i, f)| acc.add(&f.scale(&k.elem(i as i64 * 37 + 5))).unwrap());
        let g = m.mul(&q).unwrap();
        let r = verify_parts(fr, &g, &d.points, &d.q, &k);
        assert!(failing(&r).contains(&"no_other_singularities"), "{r:?}");
        assert_eq!(r.genus, None);
    }

    #[test]
    fn moved_point_fails_the_marked_point_check() {
        let (k, mut d) = datum();
        d.points[0][0] = d.points[0][0].clone() + k.elem(1);
        assert_eq!(failing(&d.verify(&k)), vec!["marked_points"]);
    }

    #[test]
    fn wrong_tangency_quadratic_fails() {
        let (k, mut d) = datum();
        d.q[0] = d.q[0].clone() + k.elem(1);
        assert_eq!(failing(&d.verify(&k)), vec!["l_section"]);
    }

    #[test]
    fn non_nodal_quintic_fails_the_node_check() {
        let (k, d) = datum();
        let x = Form::<Fp>::var(3, 0).scale(&k.elem(1));
        let g = x.pow(5);
        let r = verify_parts(&d.frame, &g, &d.points, &d.q, &k);
        assert!(failing(&r).contains(&"nodes"));
        assert!(failing(&r).contains(&"f_section"));
    }
}
