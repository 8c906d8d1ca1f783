use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{BasisClass, Space};
use crate::error::{Error, Result};
use crate::field::Q;

/// Closed interval with optional endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Option<Q>,
    pub hi: Option<Q>,
}

impl Interval {
    pub fn unbounded() -> Self {
        Self { lo: None, hi: None }
    }

    pub fn at_least(lo: Q) -> Self {
        Self { lo: Some(lo), hi: None }
    }

    pub fn at_most(hi: Q) -> Self {
        Self { lo: None, hi: Some(hi) }
    }

    pub fn point(v: Q) -> Self {
        Self { lo: Some(v.clone()), hi: Some(v) }
    }

    pub fn contains(&self, v: &Q) -> bool {
        self.lo.as_ref().map_or(true, |l| l <= v) && self.hi.as_ref().map_or(true, |h| v <= h)
    }

    fn add(&self, o: &Self) -> Self {
        let sum = |a: &Option<Q>, b: &Option<Q>| match (a, b) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        };
        Self { lo: sum(&self.lo, &o.lo), hi: sum(&self.hi, &o.hi) }
    }

    fn scale(&self, k: &Q) -> Self {
        let lo = self.lo.as_ref().map(|v| v * k);
        let hi = self.hi.as_ref().map(|v| v * k);
        if k.is_negative() {
            Self { lo: hi, hi: lo }
        } else if k.is_zero() {
            Self::point(Q::zero())
        } else {
            Self { lo, hi }
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.lo, &self.hi) {
            (Some(l), Some(h)) => write!(f, "[{l}, {h}]"),
            (Some(l), None) => write!(f, "≥ {l}"),
            (None, Some(h)) => write!(f, "≤ {h}"),
            (None, None) => write!(f, "unknown"),
        }
    }
}

/// A coordinate of a class: either known exactly or only bounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Known(Q),
    Range(Interval),
}

impl Entry {
    pub(crate) fn add(&self, o: &Entry) -> Entry {
        match (self, o) {
            (Entry::Known(a), Entry::Known(b)) => Entry::Known(a + b),
            (Entry::Known(a), Entry::Range(r)) | (Entry::Range(r), Entry::Known(a)) => {
                Entry::Range(r.add(&Interval::point(a.clone())))
            }
            (Entry::Range(a), Entry::Range(b)) => Entry::Range(a.add(b)),
        }
        .normalized()
    }

    pub(crate) fn scale(&self, k: &Q) -> Entry {
        match self {
            Entry::Known(a) => Entry::Known(a * k),
            Entry::Range(r) => Entry::Range(r.scale(k)).normalized(),
        }
    }

    fn normalized(self) -> Entry {
        match self {
            Entry::Range(Interval { lo: Some(l), hi: Some(h) }) if l == h => Entry::Known(l),
            other => other,
        }
    }
}

/// A divisor class with exact rational coefficients. Coordinates the
/// source only bounds are kept as intervals: `tails` lists them one by
/// one, and `rest` (when present) bounds every coordinate not listed
/// anywhere; when `rest` is absent those coordinates are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    space: Space,
    coeffs: BTreeMap<BasisClass, Q>,
    tails: BTreeMap<BasisClass, Interval>,
    rest: Option<Interval>,
}

impl DivisorClass {
    pub fn zero(space: Space) -> Self {
        Self { space, coeffs: BTreeMap::new(), tails: BTreeMap::new(), rest: None }
    }

    /// Builds a class, renaming each symbol canonically, dropping empty
    /// loci and summing repeated classes.
    pub fn from_terms(space: Space, terms: impl IntoIterator<Item = (BasisClass, Q)>) -> Result<Self> {
        let mut out = Self::zero(space);
        for (c, v) in terms {
            out.add_term(c, v)?;
        }
        Ok(out)
    }

    /// Adds `v·c` to the class.
    pub fn add_term(&mut self, c: BasisClass, v: Q) -> Result<()> {
        let Some(c) = self.space.canonical(c)? else {
            return Ok(());
        };
        if let Some(t) = self.tails.get_mut(&c) {
            *t = t.add(&Interval::point(v));
            return Ok(());
        }
        let e = self.coeffs.entry(c).or_insert_with(Q::zero);
        *e += v;
        if e.is_zero() && self.rest.is_none() {
            self.coeffs.remove(&c);
        }
        Ok(())
    }

    /// Declares coordinate `c` known only to lie in `bound`.
    pub fn set_tail(&mut self, c: BasisClass, bound: Interval) -> Result<()> {
        let Some(c) = self.space.canonical(c)? else {
            return Ok(());
        };
        self.coeffs.remove(&c);
        match Entry::Range(bound).normalized() {
            Entry::Known(v) => {
                if !v.is_zero() {
                    self.coeffs.insert(c, v);
                }
            }
            Entry::Range(r) => {
                self.tails.insert(c, r);
            }
        }
        Ok(())
    }

    /// Bounds every coordinate not otherwise listed.
    pub fn with_rest(mut self, bound: Interval) -> Self {
        self.rest = Some(bound);
        self
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub(crate) fn with_space(mut self, space: Space) -> Self {
        self.space = space;
        self
    }

    pub fn coeffs(&self) -> &BTreeMap<BasisClass, Q> {
        &self.coeffs
    }

    pub fn tails(&self) -> &BTreeMap<BasisClass, Interval> {
        &self.tails
    }

    pub fn rest(&self) -> Option<&Interval> {
        self.rest.as_ref()
    }

    /// True when some coordinate is only bounded.
    pub fn is_partial(&self) -> bool {
        !self.tails.is_empty() || self.rest.is_some()
    }

    /// Coordinate `c` (assumed canonical).
    pub fn entry(&self, c: &BasisClass) -> Entry {
        if let Some(v) = self.coeffs.get(c) {
            return Entry::Known(v.clone());
        }
        if let Some(r) = self.tails.get(c) {
            return Entry::Range(r.clone());
        }
        match &self.rest {
            Some(r) => Entry::Range(r.clone()),
            None => Entry::Known(Q::zero()),
        }
    }

    /// Known coefficient of `c`, renamed canonically; `None` when `c` is
    /// only bounded.
    pub fn coeff(&self, c: BasisClass) -> Result<Option<Q>> {
        match self.space.canonical(c)? {
            None => Ok(Some(Q::zero())),
            Some(c) => Ok(match self.entry(&c) {
                Entry::Known(v) => Some(v),
                Entry::Range(_) => None,
            }),
        }
    }

    fn check_compatible(&self, o: &Self) -> Result<()> {
        let (a, b) = (self.space, o.space);
        if a.kind != b.kind || a.g != b.g || a.n != b.n {
            return Err(Error::IncompatibleSpace(format!("{a} and {b}")));
        }
        Ok(())
    }

    pub(crate) fn from_entries(space: Space, entries: BTreeMap<BasisClass, Entry>, rest: Option<Interval>) -> Self {
        let mut out = Self::zero(space);
        out.rest = rest;
        for (c, e) in entries {
            match e {
                Entry::Known(v) => {
                    if !v.is_zero() || out.rest.is_some() {
                        out.coeffs.insert(c, v);
                    }
                }
                Entry::Range(r) => {
                    out.tails.insert(c, r);
                }
            }
        }
        out
    }

    fn keys(&self) -> BTreeSet<BasisClass> {
        self.coeffs.keys().chain(self.tails.keys()).copied().collect()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        let keys: BTreeSet<_> = self.keys().union(&o.keys()).copied().collect();
        let entries = keys.iter().map(|c| (*c, self.entry(c).add(&o.entry(c)))).collect();
        let rest = match (&self.rest, &o.rest) {
            (None, None) => None,
            (Some(r), None) | (None, Some(r)) => Some(r.clone()),
            (Some(a), Some(b)) => Some(a.add(b)),
        };
        let space = Space { symmetrized: self.space.symmetrized && o.space.symmetrized, ..self.space };
        Ok(Self::from_entries(space, entries, rest))
    }

    pub fn scale(&self, k: &Q) -> Self {
        let entries = self.keys().iter().map(|c| (*c, self.entry(c).scale(k))).collect();
        let rest = self.rest.as_ref().map(|r| r.scale(k));
        Self::from_entries(self.space, entries, rest)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&-Q::one()))
    }

    /// Pairs the class with a sparse vector of intersection numbers.
    pub fn pair(&self, vector: &BTreeMap<BasisClass, Q>) -> Result<Q> {
        let mut acc = Q::zero();
        for (c, v) in vector {
            if v.is_zero() {
                continue;
            }
            match self.entry(c) {
                Entry::Known(a) => acc += a * v,
                Entry::Range(_) => return Err(Error::TailViolation(c.to_string())),
            }
        }
        Ok(acc)
    }

    /// Sum of the known coefficients of all classes accepted by `pred`;
    /// `None` if any of them is only bounded.
    pub fn known_sum(&self, pred: impl Fn(&BasisClass) -> bool) -> Option<Q> {
        if self.tails.keys().any(&pred) {
            return None;
        }
        Some(self.coeffs.iter().filter(|(c, _)| pred(c)).map(|(_, v)| v.clone()).sum())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() && self.tails.is_empty() && self.rest.is_none() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, v) in &self.coeffs {
            let (sign, abs) = if v.is_negative() { ("-", -v.clone()) } else { ("+", v.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if abs.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{abs}{c}")?;
            }
        }
        for (c, r) in &self.tails {
            write!(f, "{}({c}: {r})", if first { "" } else { " + " })?;
            first = false;
        }
        if let Some(r) = &self.rest {
            write!(f, "{}(others: {r})", if first { "" } else { " + " })?;
        }
        Ok(())
    }
}
