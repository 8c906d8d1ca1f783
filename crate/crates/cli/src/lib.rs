//! Command-line front end. [`run`] turns arguments into an exit code and
//! a JSON document, so the binary is a thin wrapper.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use spincalc::certificates::{certify_general_type, threshold_scan, verify_bespoke, BespokeCase, Parity, Verdict};
use spincalc::curves::{intersect, solve_theta_coefficients, CurveKind, TestCurve};
use spincalc::field::{PrimeField, RationalField};
use spincalc::picard::{named_class, NamedClass, Space};
use spincalc::quintic::{
    quintic_system, sample_spin4, sample_spin4_rational, verify_doc, DatumDoc, FrameConfig, SampleOptions,
    SampleOutcome,
};
use spincalc::{Error, Fp, Q};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "spincalc", version, about = "Exact divisor calculus on spin moduli and a genus-4 sampler")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a named divisor class.
    Class {
        /// canonical, theta_null, Z_g, logan, theta_g1, theta_gn or slope_divisor
        name: String,
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Solve the linear system for the theta class on the odd side.
    SolveTheta {
        #[arg(long)]
        g: u32,
    },
    /// Check an effective decomposition of the canonical class.
    Certify {
        #[arg(long)]
        g: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        parity: Option<String>,
        /// s73_plus, s84_minus, s93_minus or s111_minus
        #[arg(long = "case")]
        case: Option<String>,
    },
    /// Run the certificate for every n up to --n-max.
    Scan {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        parity: String,
        #[arg(long = "n-max")]
        n_max: u32,
    },
    /// Sample a 2-nodal plane quintic datum.
    SampleSpin4 {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, conflicts_with = "rationals")]
        p: Option<u64>,
        #[arg(long)]
        rationals: bool,
        #[arg(long = "height-bound", default_value_t = spincalc::quintic::sampler::DEFAULT_HEIGHT_BOUND)]
        height_bound: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run the checks on a datum file.
    Verify { file: PathBuf },
    /// Run the built-in invariant suite.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct SpaceArgs {
    #[arg(long)]
    pub g: u32,
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    /// Omit for the moduli space of pointed curves.
    #[arg(long)]
    pub parity: Option<String>,
}

/// What a run produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    fn doc(code: i32, text: String) -> Self {
        Outcome { code, stdout: text + "\n" }
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("documents serialize")
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::ZeroForm => "zero_form",
        Error::InvalidForm(_) => "invalid_form",
        Error::InvalidLine(_) => "invalid_line",
        Error::Unsupported(_) => "unsupported",
        Error::IncompatibleSpace(_) => "incompatible_space",
        Error::UnknownName(_) => "unknown_name",
        Error::InvalidBasisClass(_) => "invalid_basis_class",
        Error::LabelMismatch(_) => "label_mismatch",
        Error::TailViolation(_) => "tail_violation",
        Error::OutOfRange(_) => "out_of_range",
        Error::Inconsistent(_) => "inconsistent",
        Error::Degenerate(_) => "degenerate",
        Error::Genericity(_) => "genericity",
        Error::RetriesExhausted { .. } => "retries_exhausted",
    }
}

fn error_outcome(kind: &str, message: String, code: i32) -> Outcome {
    Outcome::doc(code, pretty(&json!({ "error": { "kind": kind, "message": message } })))
}

/// Exit code and error document for a failed run.
pub fn from_error(e: Error) -> Outcome {
    let code = match e {
        Error::RetriesExhausted { .. } => EXIT_EXHAUSTED,
        _ => EXIT_USAGE,
    };
    error_outcome(error_kind(&e), e.to_string(), code)
}

fn usage(message: impl Into<String>) -> Outcome {
    error_outcome("usage", message.into(), EXIT_USAGE)
}

fn pass_code(pass: bool) -> i32 {
    if pass {
        EXIT_PASS
    } else {
        EXIT_VERIFY_FAILED
    }
}

/// Parses `args` (without the program name) and runs the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("spincalc")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: EXIT_PASS, stdout: e.to_string() },
                _ => usage(e.to_string().trim_end().to_string()),
            };
        }
    };
    match execute(cli.command) {
        Ok(o) => o,
        Err(e) => from_error(e),
    }
}

fn parity(s: &str) -> spincalc::Result<Parity> {
    s.parse()
}

fn space(a: &SpaceArgs) -> spincalc::Result<Space> {
    match a.parity.as_deref() {
        None => Space::moduli(a.g, a.n),
        Some(p) => match parity(p)? {
            Parity::Odd => Space::odd(a.g, a.n),
            Parity::Even => Space::even(a.g, a.n),
        },
    }
}

fn execute(cmd: Command) -> spincalc::Result<Outcome> {
    match cmd {
        Command::Class { name, space: sa } => {
            let name: NamedClass = name.parse()?;
            let c = named_class(name, space(&sa)?)?;
            Ok(Outcome::doc(EXIT_PASS, pretty(&c.to_doc())))
        }
        Command::SolveTheta { g } => {
            let r = solve_theta_coefficients(g)?;
            Ok(Outcome::doc(pass_code(r.consistent && r.matches_paper), pretty(&r)))
        }
        Command::Certify { g, n, parity: par, case } => {
            let cert = match (case, g, n, par) {
                (Some(c), None, None, None) => verify_bespoke(c.parse::<BespokeCase>()?)?,
                (None, Some(g), Some(n), Some(p)) => certify_general_type(parity(&p)?, g, n)?,
                _ => return Ok(usage("certify takes either --case or all of --g, --n and --parity")),
            };
            Ok(Outcome::doc(pass_code(cert.verdict == Verdict::Pass), cert.to_json()))
        }
        Command::Scan { g, parity: p, n_max } => {
            let s = threshold_scan(g, parity(&p)?, n_max)?;
            Ok(Outcome::doc(EXIT_PASS, pretty(&s)))
        }
        Command::SampleSpin4 { seed, p, rationals, height_bound, out } => {
            let doc = sample(seed, p, rationals, height_bound)?;
            let code = pass_code(doc.report.all_pass);
            let text = doc.to_json();
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text + "\n") {
                        return Ok(error_outcome("io", format!("{}: {e}", path.display()), EXIT_USAGE));
                    }
                    Ok(Outcome { code, stdout: String::new() })
                }
                None => Ok(Outcome::doc(code, text)),
            }
        }
        Command::Verify { file } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => return Ok(error_outcome("io", format!("{}: {e}", file.display()), EXIT_USAGE)),
            };
            let doc = DatumDoc::from_json(&text)?;
            let report = verify_doc(&doc)?;
            Ok(Outcome::doc(pass_code(report.all_pass), pretty(&report)))
        }
        Command::Selftest { seed } => {
            let checks = selftest(seed);
            let all_pass = checks.iter().all(|c| c.pass);
            Ok(Outcome::doc(pass_code(all_pass), pretty(&json!({ "checks": checks, "all_pass": all_pass }))))
        }
    }
}

/// Default sampling over `𝔽_p` (10007 unless `p` is given) or over ℚ.
pub fn sample(seed: u64, p: Option<u64>, rationals: bool, height_bound: u64) -> spincalc::Result<DatumDoc> {
    if rationals {
        let frame = FrameConfig::<Q>::canonical(&RationalField::default());
        let mut opts = SampleOptions::new(seed);
        opts.height_bound = height_bound;
        return Ok(sample_spin4_rational(&frame, &opts)?.to_doc());
    }
    let ctx = PrimeField::new(p.unwrap_or(spincalc::quintic::sampler::DEFAULT_PRIME))?;
    let frame = FrameConfig::<Fp>::canonical(&ctx);
    let mut opts = SampleOptions::new(seed);
    opts.height_bound = height_bound;
    match sample_spin4(&ctx, &frame, &opts)? {
        SampleOutcome::Done(s) => Ok(s.to_doc(&ctx)),
        SampleOutcome::NeedsExtension(_) => Err(Error::Degenerate("finite-field conic without a point".into())),
    }
}

#[derive(Serialize)]
pub struct SelfCheck {
    pub name: String,
    pub pass: bool,
}

fn check(name: &str, f: impl FnOnce() -> spincalc::Result<bool>) -> SelfCheck {
    SelfCheck { name: name.to_string(), pass: f().unwrap_or(false) }
}

/// Exact identities plus a short sampler run starting at `seed`.
pub fn selftest(seed: u64) -> Vec<SelfCheck> {
    use num_traits::Zero;
    let mut out = vec![
        check("theta coefficients g=3..12", || {
            for g in 3..=12 {
                let r = solve_theta_coefficients(g)?;
                if !(r.consistent && r.matches_paper) {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        check("k3 pencil misses theta g=3..20", || {
            for g in 3..=20 {
                let t = named_class(NamedClass::ThetaG1, Space::odd(g, 1)?)?;
                if !intersect(&TestCurve::new(CurveKind::K3Pencil, g)?, &t)?.is_zero() {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        check("threshold tables", || {
            let want = [(4, 9, 12), (5, 7, 11), (6, 7, 10), (7, 4, 7)];
            for (g, f, h) in want {
                let even = threshold_scan(g, Parity::Even, 14)?.first_pass;
                let odd = threshold_scan(g, Parity::Odd, 14)?.first_pass;
                if even != Some(f) || odd != Some(h) {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        check("bespoke certificates", || {
            for c in BespokeCase::ALL {
                if verify_bespoke(c)?.verdict != Verdict::Pass {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        check("system dimensions over F_10007", || {
            let ctx = PrimeField::new(10007)?;
            let sys = quintic_system(&FrameConfig::<Fp>::canonical(&ctx))?;
            Ok(sys.dim() == 14 && sys.rho_kernel()?.len() == 9)
        }),
    ];
    let trials = 10;
    let ok = (seed..seed + trials)
        .filter(|&s| sample(s, None, false, spincalc::quintic::sampler::DEFAULT_HEIGHT_BOUND).is_ok_and(|d| d.report.all_pass))
        .count();
    out.push(SelfCheck { name: format!("sampler {ok}/{trials} seeds from {seed}"), pass: ok * 10 >= trials as usize * 9 });
    out
}
