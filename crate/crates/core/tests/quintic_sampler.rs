use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spincalc::field::{ConcreteField, RationalField};
use spincalc::matrix::Matrix;
use spincalc::poly::{monomials, Form};
use spincalc::quintic::{
    quintic_system, sample_spin4, sample_spin4_rational, verify_doc, DatumDoc, FrameConfig, Point, RationalSample,
    SampleOptions, SampleOutcome,
};
use spincalc::{Error, Field, Fp, PrimeField, Q};

// Entries are built with `embed` so prime-field matrices know their modulus.
fn monomial_value<F: ConcreteField>(ctx: &F::Ctx, e: &[u32; 3], p: &[F]) -> F {
    (0..3).fold(F::embed(ctx, 1), |acc, i| acc * p[i].pow_u64(e[i] as u64))
}

fn monomial_partial<F: ConcreteField>(ctx: &F::Ctx, e: &[u32; 3], i: usize, p: &[F]) -> F {
    if e[i] == 0 {
        return F::embed(ctx, 0);
    }
    let mut d = *e;
    d[i] -= 1;
    F::embed(ctx, e[i] as i64) * monomial_value(ctx, &d, p)
}

// Condition rows on quintic coefficients, built straight from monomials:
// singular at n′, n″ and vanishing at n, for the canonical frame.
fn frame_rows<F: ConcreteField>(ctx: &F::Ctx) -> Vec<Vec<F>> {
    let mons = monomials(3, 5);
    let pt = |v: [i64; 3]| v.map(|x| F::embed(ctx, x));
    let (n, n1, n2) = (pt([0, 0, 1]), pt([1, 0, 0]), pt([1, 0, 1]));
    let mut rows = Vec::new();
    for node in [&n1, &n2] {
        for i in 0..3 {
            rows.push(mons.iter().map(|e| monomial_partial(ctx, e, i, node)).collect());
        }
    }
    rows.push(mons.iter().map(|e| monomial_value(ctx, e, &n)).collect());
    rows
}

fn dim_with<F: ConcreteField>(ctx: &F::Ctx, extra: Vec<Vec<F>>) -> usize {
    let mut rows = frame_rows::<F>(ctx);
    rows.extend(extra);
    21 - Matrix::from_rows(rows).unwrap().rank()
}

fn on_line_l<F: ConcreteField>(ctx: &F::Ctx) -> Vec<Vec<F>> {
    // every coefficient of a monomial free of x vanishes
    let mons = monomials(3, 5);
    (0..mons.len())
        .filter(|&k| mons[k][0] == 0)
        .map(|k| (0..mons.len()).map(|j| F::embed(ctx, (j == k) as i64)).collect())
        .collect()
}

fn random_points<F: ConcreteField>(ctx: &F::Ctx, seed: u64) -> Vec<Point<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..10).map(|_| std::array::from_fn(|_| F::random(ctx, &mut rng))).collect()
}

fn dimensions<F: ConcreteField>(ctx: &F::Ctx) {
    let frame = FrameConfig::<F>::canonical(ctx);
    let sys = quintic_system(&frame).unwrap();
    assert_eq!(sys.dim(), dim_with::<F>(ctx, vec![]));
    assert_eq!(sys.dim(), 14);
    let ker = sys.rho_kernel().unwrap();
    assert_eq!(ker.len(), dim_with::<F>(ctx, on_line_l(ctx)));
    assert_eq!(ker.len(), 9);
    assert_eq!(sys.rho_matrix().unwrap().rank() + ker.len(), sys.dim());
    let pts = random_points::<F>(ctx, 7);
    let mons = monomials(3, 5);
    let through: Vec<Vec<F>> = pts.iter().map(|p| mons.iter().map(|e| monomial_value(ctx, e, p)).collect()).collect();
    let r = sys.restricted_system(&pts).unwrap();
    assert_eq!(r.len(), dim_with(ctx, through));
    assert_eq!(r.len(), 4);
}

#[test]
fn dimensions_over_f10007() {
    dimensions::<Fp>(&PrimeField::new(10007).unwrap());
}

#[test]
fn dimensions_over_rationals() {
    dimensions::<Q>(&RationalField::default());
}

fn proportional<F: Field>(a: &Form<F>, b: &Form<F>) -> bool {
    !a.is_zero() && a.proportional(b)
}

fn binary<F: Field>(terms: &[([u32; 3], F)], deg: u32) -> Form<F> {
    Form::from_terms(2, deg, terms.iter().cloned()).unwrap()
}

#[test]
fn samples_satisfy_the_defining_conditions() {
    let ctx = PrimeField::new(10007).unwrap();
    let frame = FrameConfig::<Fp>::canonical(&ctx);
    let e = |v: i64| ctx.elem(v);
    let (s, t) = (binary(&[([1, 0, 0], e(1))], 1), binary(&[([0, 1, 0], e(1))], 1));
    let f_section = s.mul(&t.pow(2)).unwrap().mul(&s.sub(&t).unwrap().pow(2)).unwrap();
    for seed in 0..20 {
        let SampleOutcome::Done(out) = sample_spin4(&ctx, &frame, &SampleOptions::new(seed)).unwrap() else {
            panic!("a finite field conic always has a point");
        };
        let d = &out.datum;
        let g = &d.quintic;
        assert!(d.report.all_pass, "seed {seed}: {:?}", d.report.failed());
        for p in &d.points {
            assert!(g.eval(p).unwrap().is_zero());
        }
        for node in [[e(1), e(0), e(0)], [e(1), e(0), e(1)]] {
            assert!(g.gradient().iter().all(|h| h.eval(&node).unwrap().is_zero()));
        }
        // Γ(s, 0, t) and Γ(0, s, t)
        let on_f = g.restrict_param(&[e(1), e(0), e(0)], &[e(0), e(0), e(1)]).unwrap();
        assert!(proportional(&on_f, &f_section), "seed {seed}");
        let [a, b, c] = d.q.clone();
        let q = binary(&[([2, 0, 0], a), ([0, 2, 0], b), ([1, 1, 0], c)], 2);
        let on_l = g.restrict_param(&[e(0), e(1), e(0)], &[e(0), e(0), e(1)]).unwrap();
        assert!(proportional(&on_l, &s.mul(&q.pow(2)).unwrap()), "seed {seed}");
        assert_eq!(d.report.genus, Some(4));
    }
}

#[test]
fn identical_seeds_give_identical_documents() {
    let ctx = PrimeField::new(10007).unwrap();
    let frame = FrameConfig::<Fp>::canonical(&ctx);
    let doc = |seed| match sample_spin4(&ctx, &frame, &SampleOptions::new(seed)).unwrap() {
        SampleOutcome::Done(s) => s.to_doc(&ctx).to_json(),
        SampleOutcome::NeedsExtension(_) => unreachable!(),
    };
    assert_eq!(doc(3), doc(3));
    assert_ne!(doc(3), doc(4));
}

#[test]
fn tampered_document_fails_verification() {
    let ctx = PrimeField::new(10007).unwrap();
    let frame = FrameConfig::<Fp>::canonical(&ctx);
    let SampleOutcome::Done(s) = sample_spin4(&ctx, &frame, &SampleOptions::new(5)).unwrap() else { unreachable!() };
    let mut doc: DatumDoc = s.to_doc(&ctx);
    assert!(verify_doc(&doc).unwrap().all_pass);
    let x: u64 = doc.points[0][0].parse().unwrap();
    doc.points[0][0] = ((x + 1) % 10007).to_string();
    let report = verify_doc(&doc).unwrap();
    assert!(!report.all_pass);
    assert_eq!(report.failed(), vec!["marked_points"]);
}

#[test]
fn tiny_primes_are_refused() {
    let ctx = PrimeField::new(11).unwrap();
    let frame = FrameConfig::<Fp>::canonical(&ctx);
    assert!(matches!(sample_spin4(&ctx, &frame, &SampleOptions::new(0)), Err(Error::OutOfRange(_))));
}

#[test]
fn rational_sample_verifies_after_round_trip() {
    let frame = FrameConfig::<Q>::canonical(&RationalField::default());
    let mut opts = SampleOptions::new(2);
    opts.height_bound = 50;
    let out = sample_spin4_rational(&frame, &opts).unwrap();
    let doc = out.to_doc();
    match &out {
        RationalSample::Rational(_) => assert!(doc.field.ext_d.is_none()),
        RationalSample::Extension { .. } => assert!(doc.field.ext_d.is_some()),
    }
    let back = DatumDoc::from_json(&doc.to_json()).unwrap();
    assert!(verify_doc(&back).unwrap().all_pass);
}
