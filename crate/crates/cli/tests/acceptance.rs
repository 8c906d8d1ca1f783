//! One PASS/FAIL line per acceptance criterion. Tolerances are pinned in
//! the constants below; every comparison is exact.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::Zero;

use spincalc::certificates::{threshold_scan, verify_bespoke, BespokeCase, Parity, Verdict};
use spincalc::curves::{intersect, solve_theta_coefficients, CurveKind, TestCurve};
use spincalc::field::RationalField;
use spincalc::picard::{
    canonical_class, logan_symmetrized, named_class, pullback_forgetful, pullback_pi, pullback_sigma, pushforward_pi,
    BasisClass, DivisorClass, NamedClass, Space, SpaceKind,
};
use spincalc::quintic::{quintic_system, sample_spin4, FrameConfig, SampleOptions, SampleOutcome};
use spincalc::{Field, Fp, PrimeField, Q};

const AC1_BUDGET: Duration = Duration::from_secs(1);
const AC2_BUDGET: Duration = Duration::from_secs(1);
const AC3_BUDGET: Duration = Duration::from_secs(1);
const AC5_SEEDS: u64 = 200;
const AC5_MIN_SUCCESS_PERCENT: usize = 90;
const AC5_PER_SAMPLE: Duration = Duration::from_secs(5);
const AC5_PRIME: u64 = 10007;

type Outcome = Result<String, String>;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn coeff(c: &DivisorClass, b: BasisClass) -> Q {
    c.coeff(b).ok().flatten().unwrap_or_else(Q::zero)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, budget: Duration) -> Result<String, String> {
    let e = t.elapsed();
    ensure(e < budget, || format!("took {e:?}, budget {budget:?}"))?;
    Ok(format!("{e:?}"))
}

fn ac1() -> Outcome {
    let t = Instant::now();
    for g in 3..=12u32 {
        let r = solve_theta_coefficients(g).map_err(|e| e.to_string())?;
        ensure(r.consistent, || format!("g={g} inconsistent"))?;
        let class = r.class.ok_or(format!("g={g}: no unique solution"))?;
        let sp = Space::odd(g, 1).unwrap();
        let mut want: BTreeMap<BasisClass, Q> = BTreeMap::new();
        let mut put = |b: BasisClass, v: Q| *want.entry(sp.canonical(b).unwrap().unwrap()).or_insert_with(Q::zero) += v;
        put(BasisClass::Lambda, q(1, 4));
        put(BasisClass::Psi(1), q(1, 2));
        put(BasisClass::Alpha0, q(-1, 16));
        for i in 1..g {
            put(BasisClass::Alpha { i, s: 0 }, q(-1, 2));
        }
        for b in sp.basis() {
            let w = want.get(&b).cloned().unwrap_or_else(Q::zero);
            ensure(coeff(&class, b) == w, || format!("g={g}: {b:?} is {} not {w}", coeff(&class, b)))?;
        }
    }
    Ok(format!("g=3..12 exact, consistent, {}", within(t, AC1_BUDGET)?))
}

fn ac2() -> Outcome {
    let t = Instant::now();
    let e = |r: spincalc::Result<Q>| r.map_err(|e| e.to_string());
    for g in 3..=20 {
        let th = named_class(NamedClass::ThetaG1, Space::odd(g, 1).unwrap()).unwrap();
        let v = e(intersect(&TestCurve::new(CurveKind::K3Pencil, g).unwrap(), &th))?;
        ensure(v.is_zero(), || format!("g={g}: Γ·Θ = {v}"))?;
    }
    let k3 = TestCurve::new(CurveKind::K3Pencil, 11).unwrap();
    let sp = Space::odd(11, 1).unwrap();
    let d7 = named_class(NamedClass::SlopeDivisor, Space::moduli(11, 0).unwrap()).unwrap();
    let z = named_class(NamedClass::Zg, Space::odd(11, 0).unwrap()).unwrap();
    let others = [
        ("K", canonical_class(sp).unwrap()),
        ("σ*D", pullback_sigma(&d7, SpaceKind::SpinOdd, 1).unwrap()),
        ("μ*Z", pullback_forgetful(&z, sp, 1).unwrap()),
    ];
    for (name, c) in others {
        let v = e(intersect(&k3, &c))?;
        ensure(v.is_zero(), || format!("g=11: Γ·{name} = {v}"))?;
    }
    Ok(format!("g=3..20 and g=11 triple all zero, {}", within(t, AC2_BUDGET)?))
}

fn ac3() -> Outcome {
    let t = Instant::now();
    let tables = [(Parity::Even, [9, 7, 7, 4]), (Parity::Odd, [12, 11, 10, 7])];
    for (parity, row) in tables {
        for (g, want) in (4..=7).zip(row) {
            let got = threshold_scan(g, parity, 14).map_err(|e| e.to_string())?.first_pass;
            ensure(got == Some(want), || format!("{parity} g={g}: first pass {got:?}, printed {want}"))?;
        }
    }
    for case in BespokeCase::ALL {
        let c = verify_bespoke(case).map_err(|e| e.to_string())?;
        ensure(c.verdict == Verdict::Pass, || format!("{case} fails"))?;
    }
    Ok(format!("f=9,7,7,4 h=12,11,10,7, 4 bespoke pass, {}", within(t, AC3_BUDGET)?))
}

fn ac4() -> Outcome {
    for (g, n) in [(4i64, 9i64), (4, 10), (5, 11)] {
        let c = logan_symmetrized(g as u32, n as u32).map_err(|e| e.to_string())?;
        ensure(coeff(&c, BasisClass::Lambda) == q(-1, 1), || format!("({g},{n}) λ"))?;
        for k in 1..=n as u32 {
            ensure(coeff(&c, BasisClass::Psi(k)) == q(g, n), || format!("({g},{n}) ψ_{k}"))?;
        }
        let pair = q(-g * (g - 3 + 2 * n), n * (n - 1));
        for a in 1..=n {
            for b in a + 1..=n {
                let s = (1u64 << (a - 1)) | (1 << (b - 1));
                ensure(coeff(&c, BasisClass::Delta { i: 0, s }) == pair, || format!("({g},{n}) δ_0:{{{a},{b}}}"))?;
            }
        }
    }
    for g in 2..=12u32 {
        let irr = DivisorClass::from_terms(Space::moduli(g, 0).unwrap(), [(BasisClass::DeltaIrr, q(1, 1))]).unwrap();
        for kind in [SpaceKind::SpinOdd, SpaceKind::SpinEven] {
            let up = pullback_pi(&irr, kind).map_err(|e| e.to_string())?;
            let want = DivisorClass::from_terms(
                Space::new(kind, g, 0).unwrap(),
                [(BasisClass::Alpha0, q(1, 1)), (BasisClass::Beta0, q(2, 1))],
            )
            .unwrap();
            ensure(up == want, || format!("π*δ_irr at g={g}"))?;
        }
        let a = DivisorClass::from_terms(Space::odd(g, 0).unwrap(), [(BasisClass::Alpha0, q(1, 16))]).unwrap();
        let pushed = coeff(&pushforward_pi(&a).map_err(|e| e.to_string())?, BasisClass::DeltaIrr);
        let two = Q::from_i64(2);
        let want = if 2 * g >= 6 { two.pow_u64(2 * g as u64 - 6) } else { Q::from_i64(1) / two.pow_u64(6 - 2 * g as u64) };
        ensure(pushed == want, || format!("g={g}: π_*(α₀/16) = {pushed}, want {want}"))?;
    }
    Ok("Logan (4,9),(4,10),(5,11); π*δ_irr and π_* for g≤12, exact".into())
}

fn ac5() -> Outcome {
    let ctx = PrimeField::new(AC5_PRIME).unwrap();
    let frame = FrameConfig::<Fp>::canonical(&ctx);
    let mut ok = 0usize;
    let mut slowest = Duration::ZERO;
    for seed in 0..AC5_SEEDS {
        let t = Instant::now();
        let res = sample_spin4(&ctx, &frame, &SampleOptions::new(seed));
        let e = t.elapsed();
        slowest = slowest.max(e);
        ensure(e < AC5_PER_SAMPLE, || format!("seed {seed} took {e:?}"))?;
        if let Ok(SampleOutcome::Done(s)) = res {
            let r = &s.datum.report;
            ensure(r.all_pass && r.checks.len() == 5 && r.genus == Some(4), || format!("seed {seed}: {:?}", r.failed()))?;
            ok += 1;
        }
    }
    ensure(ok * 100 >= AC5_MIN_SUCCESS_PERCENT * AC5_SEEDS as usize, || format!("{ok}/{AC5_SEEDS} succeeded"))?;
    Ok(format!("{ok}/{AC5_SEEDS} seeds pass all five checks, slowest {slowest:?}"))
}

fn dims<F: spincalc::quintic::ConicSearch>(ctx: &F::Ctx) -> Result<(usize, usize, usize, usize), String> {
    use rand::SeedableRng;
    let s = |e: spincalc::Error| e.to_string();
    let sys = quintic_system(&FrameConfig::<F>::canonical(ctx)).map_err(s)?;
    let ker = sys.rho_kernel().map_err(s)?.len();
    let image = sys.rho_matrix().map_err(s)?.rank();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    let pts: Vec<[F; 3]> = (0..10).map(|_| std::array::from_fn(|_| F::random(ctx, &mut rng))).collect();
    let restricted = sys.restricted_system(&pts).map_err(s)?.len();
    Ok((sys.dim(), restricted, ker, image))
}

fn ac6() -> Outcome {
    let fp = dims::<Fp>(&PrimeField::new(10007).unwrap())?;
    let qq = dims::<Q>(&RationalField::default())?;
    for (name, d) in [("F_10007", fp), ("Q", qq)] {
        ensure(d == (14, 4, 9, 5), || format!("{name}: (system, restricted, ker ρ, im ρ) = {d:?}"))?;
    }
    Ok("14, 4, 9, 9+5=14 over F_10007 and Q".into())
}

fn ac7() -> Outcome {
    let dir = std::env::temp_dir().join(format!("spincalc-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let datum = dir.join("datum.json");
    let datum = datum.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["solve-theta", "--g", "4"],
        vec!["solve-theta", "--g", "12"],
        vec!["class", "theta_g1", "--g", "11", "--n", "1", "--parity", "odd"],
        vec!["class", "logan", "--g", "4", "--n", "9"],
        vec!["scan", "--g", "5", "--parity", "even", "--n-max", "12"],
        vec!["scan", "--g", "4", "--parity", "odd", "--n-max", "12"],
        vec!["certify", "--case", "s73_plus"],
        vec!["certify", "--g", "4", "--n", "9", "--parity", "even"],
        vec!["sample-spin4", "--seed", "42", "--p", "10007"],
        vec!["sample-spin4", "--seed", "42", "--p", "10007", "--out", datum],
        vec!["verify", datum],
        vec!["selftest"],
    ];
    let exe = env!("CARGO_BIN_EXE_spincalc");
    let go = |args: &[&str]| Command::new(exe).args(args).output().map_err(|e| e.to_string());
    for args in &runs {
        let (a, b) = (go(args)?, go(args)?);
        ensure(a.stdout == b.stdout && a.status.code() == b.status.code(), || format!("{args:?} differs between runs"))?;
        if args.contains(&"--out") {
            let f1 = std::fs::read(datum).map_err(|e| e.to_string())?;
            go(args)?;
            ensure(f1 == std::fs::read(datum).map_err(|e| e.to_string())?, || "datum file differs".into())?;
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} commands byte-identical across two runs", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("AC1 theta coefficients", ac1),
        ("AC2 K3 pencil zero intersections", ac2),
        ("AC3 threshold tables and bespoke cases", ac3),
        ("AC4 pullback machinery", ac4),
        ("AC5 sampler success and verification", ac5),
        ("AC6 dimension identities", ac6),
        ("AC7 determinism", ac7),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
