//! The rational quartic `R_p̄` of quintics through ten points whose
//! restriction to `L` is `l_n` times a square, and seeded sampling from it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Genericity, Result};
use crate::field::{ConcreteField, Field, QuadExt, QuadField, RationalField, Q};
use crate::matrix::Matrix;
use crate::poly::Form;

use super::conic::{parametrize_conic, point_over_extension, ConicPoint, ConicSearch};
use super::datum::SpinCurveDatum;
use super::frame::{FrameConfig, Point};
use super::system::{rho, sq_coords, veronese_hyperplane_conic, QuinticSystem};
use super::verify::{verify_parts, SingularLocus};

pub const RETRY_CAP: usize = 20;
pub const DEFAULT_PRIME: u64 = 10007;
pub const DEFAULT_HEIGHT_BOUND: u64 = 10_000;

#[derive(Clone, Debug)]
pub struct SampleOptions<F> {
    pub seed: u64,
    pub retry_cap: usize,
    pub height_bound: u64,
    /// Replaces the points drawn for the first attempt.
    pub forced_points: Option<Vec<Point<F>>>,
}

impl<F> SampleOptions<F> {
    pub fn new(seed: u64) -> Self {
        Self { seed, retry_cap: RETRY_CAP, height_bound: DEFAULT_HEIGHT_BOUND, forced_points: None }
    }
}

/// `ℙ³_p̄` with its image hyperplane and the conic `C₀ = H ∘ sq`.
#[derive(Clone, Debug)]
pub struct HyperplaneSection<F> {
    pub restricted: Vec<Form<F>>,
    /// `ρ` of each member of `restricted`, in coordinates `X₀..X₄`.
    pub images: Vec<[F; 5]>,
    pub hyperplane: [F; 5],
    pub conic: Form<F>,
}

/// Degree-4 parametrization of `R_p̄`: `(u:v) ↦ Σ coords[k](u,v) · restricted[k]`.
#[derive(Clone, Debug)]
pub struct RationalQuartic<F> {
    pub section: HyperplaneSection<F>,
    pub conic_point: Point<F>,
    /// `(u:v) ↦ [a:b:c]` on `C₀`.
    pub conic_param: [Form<F>; 3],
    pub coords: Vec<Form<F>>,
}

impl<F: Field> HyperplaneSection<F> {
    pub fn new(sys: &QuinticSystem<F>, points: &[Point<F>]) -> Result<Self> {
        let restricted = sys.restricted_system(points)?;
        let images: Vec<[F; 5]> = restricted.iter().map(|g| rho(g, &sys.frame).map(|r| sq_coords(&r))).collect::<Result<_>>()?;
        let m = Matrix::from_rows(images.iter().map(|v| v.to_vec()).collect())?;
        let k = m.kernel();
        if k.len() != 1 {
            return Err(Genericity::NotHyperplane(5 - k.len()).into());
        }
        let hyperplane: [F; 5] = std::array::from_fn(|i| k[0][i].clone() * sys.frame.l.field_one());
        let (conic, rank) = veronese_hyperplane_conic(&hyperplane)?;
        if rank != 3 {
            return Err(Genericity::DegenerateConic(rank).into());
        }
        Ok(Self { restricted, images, hyperplane, conic })
    }

    pub fn map<G: Field>(&self, h: impl Fn(&F) -> G) -> HyperplaneSection<G> {
        HyperplaneSection {
            restricted: self.restricted.iter().map(|f| f.map(&h)).collect(),
            images: self.images.iter().map(|v| std::array::from_fn(|i| h(&v[i]))).collect(),
            hyperplane: std::array::from_fn(|i| h(&self.hyperplane[i])),
            conic: self.conic.map(&h),
        }
    }
}

/// `sq` applied to binary quadratics: the five quartics `X₀..X₄`.
fn square_forms<F: Field>(x: &[Form<F>; 3]) -> Result<[Form<F>; 5]> {
    let (a, b, c) = (&x[0], &x[1], &x[2]);
    let two = |f: Form<F>| f.add(&f);
    Ok([a.mul(a)?, b.mul(b)?, c.mul(c)?.add(&two(a.mul(b)?)?)?, two(a.mul(c)?)?, two(b.mul(c)?)?])
}

impl<F: Field> RationalQuartic<F> {
    pub fn new(section: HyperplaneSection<F>, conic_point: Point<F>) -> Result<Self> {
        let conic_param = parametrize_conic(&section.conic, &conic_point)?;
        let w = square_forms(&conic_param)?;
        // left inverse on four independent coordinates of the image
        let m = Matrix::from_rows((0..5).map(|i| section.images.iter().map(|v| v[i].clone()).collect()).collect())?;
        let rows = (0..5)
            .flat_map(|skip| {
                let keep: Vec<usize> = (0..5).filter(|&i| i != skip).collect();
                let sub = Matrix::from_rows(keep.iter().map(|&i| (0..4).map(|j| m[(i, j)].clone()).collect()).collect()).ok()?;
                sub.inverse().map(|inv| (keep, inv))
            })
            .next();
        let Some((keep, inv)) = rows else {
            return Err(Genericity::NotHyperplane(m.rank()).into());
        };
        let coords: Vec<Form<F>> = (0..4)
            .map(|k| {
                keep.iter().enumerate().try_fold(Form::zero(2, 4), |acc, (col, &i)| acc.add(&w[i].scale(&inv[(k, col)])))
            })
            .collect::<Result<_>>()?;
        for (i, wi) in w.iter().enumerate() {
            let back = (0..4).try_fold(Form::zero(2, 4), |acc, k| acc.add(&coords[k].scale(&m[(i, k)])))?;
            if back != *wi {
                return Err(Error::Degenerate("squared conic leaves the hyperplane".into()));
            }
        }
        let span = Matrix::from_rows(coords.iter().map(|f| f.coeffs_dense()).collect())?.rank();
        if span != 4 {
            return Err(Error::Degenerate(format!("parametrization spans only {span} dimensions")));
        }
        Ok(Self { section, conic_point, conic_param, coords })
    }

    /// The quintic at `(u:v)` and its tangency quadratic `[a:b:c]`.
    pub fn member(&self, uv: &[F; 2]) -> Result<(Form<F>, [F; 3])> {
        let lam: Vec<F> = self.coords.iter().map(|f| f.eval(uv)).collect::<Result<_>>()?;
        let mut g = Form::zero(3, 5);
        for (l, q) in lam.iter().zip(&self.section.restricted) {
            g = g.add(&q.scale(l))?;
        }
        let q: Vec<F> = self.conic_param.iter().map(|f| f.eval(uv)).collect::<Result<_>>()?;
        Ok((g, [q[0].clone(), q[1].clone(), q[2].clone()]))
    }
}

/// Picks a parameter value, builds the datum and verifies it.
fn finish<F: SingularLocus>(
    ctx: &F::Ctx,
    frame: &FrameConfig<F>,
    section: HyperplaneSection<F>,
    point: Point<F>,
    points: &[Point<F>],
    rng: &mut ChaCha8Rng,
) -> Result<SpinCurveDatum<F>> {
    let rq = RationalQuartic::new(section, point)?;
    let one = frame.l.field_one();
    let (g, q) = loop {
        let uv = [one.clone(), F::random(ctx, rng) * one.clone()];
        let (g, q) = rq.member(&uv)?;
        if !g.is_zero() && q.iter().any(|v| !v.is_zero()) {
            break (g, q);
        }
    };
    let report = verify_parts(frame, &g, points, &q, ctx);
    if !report.all_pass {
        return Err(Genericity::Verification(report.failed().join(", ")).into());
    }
    Ok(SpinCurveDatum { frame: frame.clone(), quintic: g, points: points.to_vec(), q, report })
}

#[derive(Clone, Debug)]
pub struct Sampled<F> {
    pub datum: SpinCurveDatum<F>,
    pub seed: u64,
    pub attempts: usize,
    pub failures: Vec<Genericity>,
}

/// State left when the conic has no point over the base field.
#[derive(Clone, Debug)]
pub struct Pending<F> {
    pub d: num_bigint::BigInt,
    pub section: HyperplaneSection<F>,
    pub points: Vec<Point<F>>,
    pub seed: u64,
    pub attempts: usize,
    pub failures: Vec<Genericity>,
    rng: ChaCha8Rng,
}

#[derive(Clone, Debug)]
pub enum SampleOutcome<F> {
    Done(Sampled<F>),
    NeedsExtension(Pending<F>),
}

fn check_field<F: ConcreteField>(ctx: &F::Ctx) -> Result<()> {
    let c = F::descriptor(ctx).characteristic;
    if c != 0 && c <= 13 {
        return Err(Error::OutOfRange(format!("sampling needs characteristic 0 or a prime > 13, got {c}")));
    }
    Ok(())
}

/// Draws ten points from the seeded generator, builds `R_p̄`, picks a member
/// and verifies it, resampling on genericity failures up to the retry cap.
pub fn sample_spin4<F: ConicSearch + SingularLocus>(ctx: &F::Ctx, frame: &FrameConfig<F>, opts: &SampleOptions<F>) -> Result<SampleOutcome<F>> {
    check_field::<F>(ctx)?;
    let sys = super::system::quintic_system(frame)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut failures = Vec::new();
    for attempt in 0..opts.retry_cap {
        let drawn: Vec<Point<F>> = (0..10).map(|_| std::array::from_fn(|_| F::random(ctx, &mut rng))).collect();
        let points = match (&opts.forced_points, attempt) {
            (Some(p), 0) => p.clone(),
            _ => drawn,
        };
        let step = HyperplaneSection::new(&sys, &points).and_then(|section| {
            match F::conic_point(&section.conic, ctx, opts.height_bound)? {
                ConicPoint::Found(p) => finish(ctx, frame, section, p, &points, &mut rng).map(|datum| {
                    SampleOutcome::Done(Sampled { datum, seed: opts.seed, attempts: attempt + 1, failures: failures.clone() })
                }),
                ConicPoint::ExtensionRequired { d } => Ok(SampleOutcome::NeedsExtension(Pending {
                    d,
                    section,
                    points: points.clone(),
                    seed: opts.seed,
                    attempts: attempt + 1,
                    failures: failures.clone(),
                    rng: rng.clone(),
                })),
            }
        });
        match step {
            Ok(out) => return Ok(out),
            Err(Error::Genericity(g)) => failures.push(g),
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetriesExhausted { cap: opts.retry_cap, failures })
}

/// Result of sampling over ℚ: either rational, or over `ℚ(√d)`.
#[derive(Clone, Debug)]
pub enum RationalSample {
    Rational(Sampled<Q>),
    Extension { d: num_bigint::BigInt, sample: Sampled<QuadExt<Q>> },
}

/// Over ℚ, continues in `ℚ(√d)` when the conic has no rational point of
/// small height.
pub fn sample_spin4_rational(frame: &FrameConfig<Q>, opts: &SampleOptions<Q>) -> Result<RationalSample> {
    let ctx = RationalField::default();
    match sample_spin4(&ctx, frame, opts)? {
        SampleOutcome::Done(s) => Ok(RationalSample::Rational(s)),
        SampleOutcome::NeedsExtension(mut p) => {
            let dq = Q::from_integer(p.d.clone());
            let up = |v: &Q| QuadExt::from_base(v.clone(), dq.clone());
            let ectx = QuadField { base: ctx, d: dq.clone() };
            let eframe = frame.map(up);
            let pt = point_over_extension(&p.section.conic, &p.d)?;
            let points: Vec<Point<QuadExt<Q>>> = p.points.iter().map(|x| std::array::from_fn(|i| up(&x[i]))).collect();
            let datum = finish(&ectx, &eframe, p.section.map(up), pt, &points, &mut p.rng)?;
            Ok(RationalSample::Extension {
                d: p.d,
                sample: Sampled { datum, seed: p.seed, attempts: p.attempts, failures: p.failures },
            })
        }
    }
}
