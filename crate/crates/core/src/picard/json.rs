//! Stable JSON form of divisor classes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::class::{DivisorClass, Entry, Interval};
use super::{labels, subset, BasisClass, Space, SpaceKind};
use crate::error::{Error, ParseError, Result};
use crate::field::Q;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDoc {
    pub kind: SpaceKind,
    pub g: u32,
    pub n: u32,
    pub sym: bool,
}

/// One exact coefficient. Numerator and denominator are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffDoc {
    pub tag: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<u32>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<u32>>,
    pub num: String,
    pub den: String,
}

/// A coordinate known only to lie between `lo` and `hi` (each `"p/q"`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailDoc {
    pub tag: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<u32>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub space: SpaceDoc,
    pub coeffs: Vec<CoeffDoc>,
    #[serde(default)]
    pub tail_bounds: Vec<TailDoc>,
    /// Bound on every coordinate not listed; absent means zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub others: Option<TailDoc>,
}

type Key = (String, Option<u32>, Option<Vec<u32>>);

fn key(c: &BasisClass) -> Key {
    let (tag, i, s) = match *c {
        BasisClass::Lambda => ("lambda", None, None),
        BasisClass::Psi(k) => ("psi", Some(k), None),
        BasisClass::DeltaIrr => ("delta_irr", None, None),
        BasisClass::Alpha0 => ("alpha0", None, None),
        BasisClass::Beta0 => ("beta0", None, None),
        BasisClass::Delta { i, s } => ("delta", Some(i), Some(labels(s))),
        BasisClass::Alpha { i, s } => ("alpha", Some(i), Some(labels(s))),
        BasisClass::Beta { i, s } => ("beta", Some(i), Some(labels(s))),
    };
    (tag.to_string(), i, s)
}

fn bad(msg: impl Into<String>) -> Error {
    ParseError::Document(msg.into()).into()
}

fn class_of(tag: &str, i: Option<u32>, s: Option<&[u32]>) -> Result<BasisClass> {
    let need_i = || i.ok_or_else(|| bad(format!("{tag} needs an index i")));
    let need_s = || -> Result<u64> {
        let s = s.ok_or_else(|| bad(format!("{tag} needs a point set S")))?;
        if s.iter().any(|&l| l == 0 || l > 64) {
            return Err(bad(format!("label out of range in {s:?}")));
        }
        Ok(subset(s))
    };
    Ok(match tag {
        "lambda" => BasisClass::Lambda,
        "psi" => BasisClass::Psi(need_i()?),
        "delta_irr" => BasisClass::DeltaIrr,
        "alpha0" => BasisClass::Alpha0,
        "beta0" => BasisClass::Beta0,
        "delta" => BasisClass::Delta { i: need_i()?, s: need_s()? },
        "alpha" => BasisClass::Alpha { i: need_i()?, s: need_s()? },
        "beta" => BasisClass::Beta { i: need_i()?, s: need_s()? },
        other => return Err(bad(format!("unknown tag {other:?}"))),
    })
}

fn parse_q(s: &str) -> Result<Q> {
    s.trim().parse::<Q>().map_err(|_| ParseError::Scalar(s.to_string()).into())
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim().parse::<BigInt>().map_err(|_| ParseError::Scalar(s.to_string()).into())
}

fn tail_doc(k: Key, r: &Interval) -> TailDoc {
    TailDoc { tag: k.0, i: k.1, s: k.2, lo: r.lo.as_ref().map(Q::to_string), hi: r.hi.as_ref().map(Q::to_string) }
}

fn interval_of(t: &TailDoc) -> Result<Interval> {
    Ok(Interval { lo: t.lo.as_deref().map(parse_q).transpose()?, hi: t.hi.as_deref().map(parse_q).transpose()? })
}

impl DivisorClass {
    pub fn to_doc(&self) -> ClassDoc {
        let sp = self.space();
        let coeffs = self
            .coeffs()
            .iter()
            .map(|(c, v)| {
                let (tag, i, s) = key(c);
                CoeffDoc { tag, i, s, num: v.numer().to_string(), den: v.denom().to_string() }
            })
            .collect();
        let tail_bounds = self.tails().iter().map(|(c, r)| tail_doc(key(c), r)).collect();
        let others = self.rest().map(|r| tail_doc(("others".into(), None, None), r));
        ClassDoc { space: SpaceDoc { kind: sp.kind, g: sp.g, n: sp.n, sym: sp.symmetrized }, coeffs, tail_bounds, others }
    }

    pub fn from_doc(doc: &ClassDoc) -> Result<Self> {
        let mut sp = Space::new(doc.space.kind, doc.space.g, doc.space.n)?;
        if doc.space.sym {
            sp = sp.symmetrized();
        }
        let mut entries: BTreeMap<BasisClass, Entry> = BTreeMap::new();
        for c in &doc.coeffs {
            let den = parse_int(&c.den)?;
            if den == BigInt::from(0) {
                return Err(ParseError::Scalar(format!("{}/{}", c.num, c.den)).into());
            }
            let v = Q::new(parse_int(&c.num)?, den);
            let b = class_of(&c.tag, c.i, c.s.as_deref())?;
            let Some(b) = sp.canonical(b)? else { continue };
            if entries.insert(b, Entry::Known(v)).is_some() {
                return Err(bad(format!("{b} listed twice")));
            }
        }
        for t in &doc.tail_bounds {
            let b = class_of(&t.tag, t.i, t.s.as_deref())?;
            let Some(b) = sp.canonical(b)? else { continue };
            if entries.insert(b, Entry::Range(interval_of(t)?)).is_some() {
                return Err(bad(format!("{b} listed twice")));
            }
        }
        let rest = doc.others.as_ref().map(interval_of).transpose()?;
        Ok(DivisorClass::from_entries(sp, entries, rest))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("class documents serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: ClassDoc = serde_json::from_str(s).map_err(|e| bad(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard::{named_class, NamedClass};

    #[test]
    fn round_trip_named_classes() {
        let cases = [
            (NamedClass::Canonical, Space::odd(5, 3).unwrap()),
            (NamedClass::ThetaNull, Space::even(6, 0).unwrap()),
            (NamedClass::SlopeDivisor, Space::moduli(8, 0).unwrap()),
            (NamedClass::Logan, Space::moduli(4, 4).unwrap()),
        ];
        for (name, sp) in cases {
            let c = named_class(name, sp).unwrap();
            let back = DivisorClass::from_json(&c.to_json()).unwrap();
            assert_eq!(back, c, "{name}");
        }
    }

    #[test]
    fn schema_shape() {
        let c = named_class(NamedClass::ThetaNull, Space::even(4, 0).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(v["space"]["kind"], "spin_even");
        assert_eq!(v["coeffs"][0]["tag"], "lambda");
        assert_eq!(v["coeffs"][0]["num"], "1");
        assert_eq!(v["coeffs"][0]["den"], "4");
        let beta = v["coeffs"].as_array().unwrap().iter().find(|e| e["tag"] == "beta").unwrap();
        assert_eq!(beta["S"], serde_json::json!([]));
    }

    #[test]
    fn rejects_malformed() {
        let ok = r#"{"space":{"kind":"moduli","g":4,"n":0,"sym":false},"coeffs":[{"tag":"lambda","num":"1","den":"0"}]}"#;
        assert!(DivisorClass::from_json(ok).is_err());
        let bad_tag = r#"{"space":{"kind":"moduli","g":4,"n":0,"sym":false},"coeffs":[{"tag":"mu","num":"1","den":"1"}]}"#;
        assert!(DivisorClass::from_json(bad_tag).is_err());
        let no_i = r#"{"space":{"kind":"moduli","g":4,"n":1,"sym":false},"coeffs":[{"tag":"psi","num":"1","den":"1"}]}"#;
        assert!(DivisorClass::from_json(no_i).is_err());
    }
}
