//! Sampled curves and their JSON documents.

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::field::{ConcreteField, FieldDescriptor, Fp, PrimeField, QuadExt, QuadField, RationalField, Q};
use crate::poly::Form;

use super::frame::{FrameConfig, Point};
use super::sampler::{RationalSample, Sampled};
use super::verify::{verify_parts, SingularLocus, VerifyReport};

pub const SCHEMA: &str = "spincalc.spin4-datum/1";

/// A quintic with nodes at `n′`, `n″`, bitangent to `L`, through ten
/// marked points.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinCurveDatum<F> {
    pub frame: FrameConfig<F>,
    pub quintic: Form<F>,
    pub points: Vec<Point<F>>,
    /// `[a, b, c]` for `q = a s² + b t² + c st` on `L`.
    pub q: [F; 3],
    pub report: VerifyReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameDoc {
    #[serde(rename = "L")]
    pub l: [String; 3],
    #[serde(rename = "F")]
    pub f: [String; 3],
    pub n: [String; 3],
    pub n1: [String; 3],
    pub n2: [String; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub attempts: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumDoc {
    pub schema: String,
    pub field: FieldDescriptor,
    pub frame: FrameDoc,
    /// Coefficients of the 21 quintic monomials, `x⁵` first, lex order.
    pub quintic_coeffs: Vec<String>,
    pub points: Vec<[String; 3]>,
    pub q_coeffs: [String; 3],
    pub report: VerifyReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

fn strs<F: ConcreteField>(p: &[F; 3]) -> [String; 3] {
    std::array::from_fn(|i| p[i].to_string())
}

fn parse3<F: ConcreteField>(ctx: &F::Ctx, p: &[String; 3]) -> Result<[F; 3]> {
    let v: Vec<F> = p.iter().map(|s| F::parse(ctx, s)).collect::<std::result::Result<_, _>>()?;
    Ok([v[0].clone(), v[1].clone(), v[2].clone()])
}

fn line_coeffs<F: ConcreteField>(l: &Form<F>) -> [F; 3] {
    [l.coeff(&[1, 0, 0]), l.coeff(&[0, 1, 0]), l.coeff(&[0, 0, 1])]
}

fn bad(msg: impl Into<String>) -> Error {
    ParseError::Document(msg.into()).into()
}

impl<F: ConcreteField> SpinCurveDatum<F> {
    pub fn to_doc(&self, ctx: &F::Ctx, provenance: Option<Provenance>) -> DatumDoc {
        let fr = &self.frame;
        DatumDoc {
            schema: SCHEMA.into(),
            field: F::descriptor(ctx),
            frame: FrameDoc {
                l: strs(&line_coeffs(&fr.l)),
                f: strs(&line_coeffs(&fr.f)),
                n: strs(&fr.n),
                n1: strs(&fr.n1),
                n2: strs(&fr.n2),
            },
            quintic_coeffs: self.quintic.coeffs_dense().iter().map(ToString::to_string).collect(),
            points: self.points.iter().map(strs).collect(),
            q_coeffs: strs(&self.q),
            report: self.report.clone(),
            provenance,
        }
    }

    /// Reads the data of a document; the stored report is kept as is.
    pub fn from_doc(doc: &DatumDoc, ctx: &F::Ctx) -> Result<Self> {
        if doc.schema != SCHEMA {
            return Err(bad(format!("unknown schema {:?}", doc.schema)));
        }
        if F::descriptor(ctx) != doc.field {
            return Err(bad("field descriptor does not match"));
        }
        let p = |v: &[String; 3]| parse3::<F>(ctx, v);
        let fr = &doc.frame;
        let frame = FrameConfig::new(p(&fr.l)?, p(&fr.f)?, p(&fr.n)?, p(&fr.n1)?, p(&fr.n2)?)?;
        if doc.quintic_coeffs.len() != 21 {
            return Err(bad(format!("{} quintic coefficients, expected 21", doc.quintic_coeffs.len())));
        }
        let coeffs: Vec<F> = doc.quintic_coeffs.iter().map(|s| F::parse(ctx, s)).collect::<std::result::Result<_, _>>()?;
        let quintic = Form::from_coeffs(3, 5, &coeffs)?;
        let points = doc.points.iter().map(p).collect::<Result<_>>()?;
        Ok(Self { frame, quintic, points, q: p(&doc.q_coeffs)?, report: doc.report.clone() })
    }

}

impl<F: SingularLocus> SpinCurveDatum<F> {
    /// Fresh run of the five checks.
    pub fn verify(&self, ctx: &F::Ctx) -> VerifyReport {
        verify_parts(&self.frame, &self.quintic, &self.points, &self.q, ctx)
    }
}

impl<F: ConcreteField> Sampled<F> {
    pub fn to_doc(&self, ctx: &F::Ctx) -> DatumDoc {
        let prov = Provenance { seed: self.seed, attempts: self.attempts, failures: self.failures.iter().map(ToString::to_string).collect() };
        self.datum.to_doc(ctx, Some(prov))
    }
}

impl RationalSample {
    pub fn to_doc(&self) -> DatumDoc {
        match self {
            RationalSample::Rational(s) => s.to_doc(&RationalField::default()),
            RationalSample::Extension { d, sample } => {
                sample.to_doc(&QuadField { base: RationalField::default(), d: Q::from_integer(d.clone()) })
            }
        }
    }
}

impl DatumDoc {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("datum documents serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| bad(e.to_string()))
    }
}

fn verify_in<F: SingularLocus>(doc: &DatumDoc, ctx: &F::Ctx) -> Result<VerifyReport> {
    Ok(SpinCurveDatum::<F>::from_doc(doc, ctx)?.verify(ctx))
}

/// Re-runs the checks on a document over the field it names.
pub fn verify_doc(doc: &DatumDoc) -> Result<VerifyReport> {
    let c = doc.field.characteristic;
    match (&doc.field.ext_d, c) {
        (None, 0) => verify_in::<Q>(doc, &RationalField::default()),
        (None, p) => verify_in::<Fp>(doc, &PrimeField::new(p)?),
        (Some(d), 0) => {
            let d = d.parse::<Q>().map_err(|_| ParseError::Scalar(d.clone()))?;
            verify_in::<QuadExt<Q>>(doc, &QuadField { base: RationalField::default(), d })
        }
        (Some(d), p) => {
            let base = PrimeField::new(p)?;
            let d = Fp::parse(&base, d)?;
            verify_in::<QuadExt<Fp>>(doc, &QuadField { base, d })
        }
    }
}
