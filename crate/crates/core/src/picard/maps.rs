//! Pullbacks, pushforwards and symmetrization.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::class::{DivisorClass, Entry};
use super::{labels, BasisClass, Space, SpaceKind};
use crate::error::{Error, Result};
use crate::field::{Field, Q};

/// Image of each coordinate of `cls` as a signed combination of source
/// symbols, accumulated with interval arithmetic for bounded coordinates.
fn transport(
    cls: &DivisorClass,
    source: Space,
    image: impl Fn(&BasisClass) -> Vec<(BasisClass, i64)>,
) -> Result<DivisorClass> {
    if cls.rest().is_some() {
        return Err(Error::Unsupported(
            "transporting a class whose unlisted coordinates are unknown".into(),
        ));
    }
    let mut acc: BTreeMap<BasisClass, Entry> = BTreeMap::new();
    let items = cls
        .coeffs()
        .keys()
        .chain(cls.tails().keys())
        .map(|c| (*c, cls.entry(c)));
    for (c, e) in items {
        for (t, m) in image(&c) {
            let Some(t) = source.canonical(t)? else {
                continue;
            };
            let add = e.scale(&Q::from_i64(m));
            let cur = acc.remove(&t).unwrap_or(Entry::Known(Q::zero()));
            acc.insert(t, cur.add(&add));
        }
    }
    Ok(DivisorClass::from_entries(source, acc, None))
}

/// All subsets of the bitmask `f`, in increasing order.
fn subsets(f: u64) -> Vec<u64> {
    let mut out = vec![0];
    let mut t = f;
    while t != 0 {
        out.push(t);
        t = (t - 1) & f;
    }
    out.sort_unstable();
    out
}

/// Pullback along the map `source → target` forgetting the points in
/// `forgotten` (labels of `source`). The surviving labels, in increasing
/// order, correspond to the target's labels `1..=n`.
pub fn pullback_forgetful(cls: &DivisorClass, source: Space, forgotten: u64) -> Result<DivisorClass> {
    let target = cls.space();
    if source.kind != target.kind || source.g != target.g {
        return Err(Error::IncompatibleSpace(format!("{target} and {source}")));
    }
    if forgotten & !source.full_set() != 0 || source.n - forgotten.count_ones() != target.n {
        return Err(Error::LabelMismatch(format!(
            "forgetting {:?} from {source} does not give {target}",
            labels(forgotten)
        )));
    }
    let survivors: Vec<u32> = (1..=source.n).filter(|l| forgotten >> (l - 1) & 1 == 0).collect();
    let lift = |s: u64| labels(s).iter().fold(0u64, |acc, &l| acc | 1 << (survivors[l as usize - 1] - 1));
    let tails = subsets(forgotten);
    let out = transport(cls, source.unsymmetrized(), |c| match *c {
        BasisClass::Psi(k) => {
            let j = survivors[k as usize - 1];
            let mut v = vec![(BasisClass::Psi(j), 1)];
            for &t in tails.iter().filter(|&&t| t != 0) {
                v.push((source.rational_tail(t | 1 << (j - 1)), -1));
            }
            v
        }
        BasisClass::Delta { i, s } => tails.iter().map(|&t| (BasisClass::Delta { i, s: lift(s) | t }, 1)).collect(),
        BasisClass::Alpha { i, s } => tails.iter().map(|&t| (BasisClass::Alpha { i, s: lift(s) | t }, 1)).collect(),
        BasisClass::Beta { i, s } => tails.iter().map(|&t| (BasisClass::Beta { i, s: lift(s) | t }, 1)).collect(),
        other => vec![(other, 1)],
    })?;
    Ok(out)
}

/// Pullback forgetting a single label `j` of `source`.
pub fn forget_one(cls: &DivisorClass, source: Space, j: u32) -> Result<DivisorClass> {
    pullback_forgetful(cls, source, 1 << (j - 1))
}

/// The same pullback as [`pullback_forgetful`], computed by re-inserting
/// the forgotten labels one at a time in the order given.
pub fn pullback_forgetful_stepwise(cls: &DivisorClass, source: Space, order: &[u32]) -> Result<DivisorClass> {
    let forgotten = order.iter().fold(0u64, |acc, &l| acc | 1 << (l - 1));
    if forgotten.count_ones() as usize != order.len() {
        return Err(Error::LabelMismatch("repeated label in forgetting order".into()));
    }
    let mut present: BTreeSet<u32> = (1..=source.n).filter(|l| forgotten >> (l - 1) & 1 == 0).collect();
    if present.len() as u32 != cls.space().n {
        return Err(Error::LabelMismatch(format!("{} points do not match {}", present.len(), cls.space())));
    }
    let mut cur = cls.clone();
    for &l in order.iter().rev() {
        present.insert(l);
        let j = present.iter().position(|&x| x == l).unwrap() as u32 + 1;
        let sp = source.unsymmetrized().with_points(present.len() as u32);
        cur = forget_one(&cur, sp, j)?;
    }
    Ok(cur)
}

/// Pullback from M̄_{g,n} to a spin component forgetting the spin
/// structure.
pub fn pullback_pi(cls: &DivisorClass, kind: SpaceKind) -> Result<DivisorClass> {
    let sp = cls.space();
    if sp.kind != SpaceKind::Moduli || !kind.is_spin() {
        return Err(Error::IncompatibleSpace(format!("pullback from {sp} to {kind}")));
    }
    let source = sp.with_kind(kind);
    transport(cls, source.unsymmetrized(), |c| match *c {
        BasisClass::DeltaIrr => vec![(BasisClass::Alpha0, 1), (BasisClass::Beta0, 2)],
        BasisClass::Delta { i, s } => vec![(BasisClass::Alpha { i, s }, 1), (BasisClass::Beta { i, s }, 1)],
        other => vec![(other, 1)],
    })
    .map(|c| c.with_space(source))
}

/// π* then forget all marked points: M̄_g → S̄_{g,n}^±.
pub fn pullback_sigma(cls: &DivisorClass, kind: SpaceKind, n: u32) -> Result<DivisorClass> {
    let up = pullback_pi(cls, kind)?;
    let source = Space::new(kind, cls.space().g, n)?;
    pullback_forgetful(&up, source, source.full_set())
}

/// Pushforward S̄_{g,n}^- → M̄_{g,n} of a class supported on `α₀`, `β₀`.
pub fn pushforward_pi(cls: &DivisorClass) -> Result<DivisorClass> {
    let sp = cls.space();
    if sp.kind != SpaceKind::SpinOdd {
        return Err(Error::Unsupported(format!("pushforward from {sp}")));
    }
    if cls.is_partial() {
        return Err(Error::Unsupported("pushforward of a partially known class".into()));
    }
    let g = sp.g as u64;
    let two = Q::from_i64(2);
    let a = two.pow_u64(2 * g - 2);
    let b = two.pow_u64(g - 2) * (two.pow_u64(g - 1) - Q::from_i64(1));
    let mut total = Q::zero();
    for (c, v) in cls.coeffs() {
        match c {
            BasisClass::Alpha0 => total += v * &a,
            BasisClass::Beta0 => total += v * &b,
            other => {
                return Err(Error::Unsupported(format!("pushforward of {other}")));
            }
        }
    }
    DivisorClass::from_terms(sp.with_kind(SpaceKind::Moduli), [(BasisClass::DeltaIrr, total)])
}

/// Renames labels by `f`, which must be a permutation of `1..=n`.
pub fn relabel(cls: &DivisorClass, f: &dyn Fn(u32) -> u32) -> Result<DivisorClass> {
    let sp = cls.space();
    let map_set = |s: u64| labels(s).iter().fold(0u64, |acc, &l| acc | 1 << (f(l) - 1));
    let image: BTreeSet<u32> = (1..=sp.n).map(f).collect();
    if image != (1..=sp.n).collect() {
        return Err(Error::LabelMismatch("relabelling is not a permutation".into()));
    }
    transport(cls, sp, |c| match *c {
        BasisClass::Psi(k) => vec![(BasisClass::Psi(f(k)), 1)],
        BasisClass::Delta { i, s } => vec![(BasisClass::Delta { i, s: map_set(s) }, 1)],
        BasisClass::Alpha { i, s } => vec![(BasisClass::Alpha { i, s: map_set(s) }, 1)],
        BasisClass::Beta { i, s } => vec![(BasisClass::Beta { i, s: map_set(s) }, 1)],
        other => vec![(other, 1)],
    })
}

/// Orbit of a canonical class under permutations of the marked points.
fn orbit(sp: Space, c: BasisClass) -> Vec<BasisClass> {
    let resize = |i: u32, k: u32, tag: &BasisClass| -> Vec<BasisClass> {
        let mut out = BTreeSet::new();
        for s in 0..=sp.full_set() {
            if s.count_ones() == k {
                let t = match tag {
                    BasisClass::Delta { .. } => BasisClass::Delta { i, s },
                    BasisClass::Alpha { .. } => BasisClass::Alpha { i, s },
                    _ => BasisClass::Beta { i, s },
                };
                if let Ok(Some(t)) = sp.canonical(t) {
                    out.insert(t);
                }
            }
        }
        out.into_iter().collect()
    };
    match c {
        BasisClass::Psi(_) => (1..=sp.n).map(BasisClass::Psi).collect(),
        BasisClass::Delta { i, s } | BasisClass::Alpha { i, s } | BasisClass::Beta { i, s } => {
            resize(i, s.count_ones(), &c)
        }
        other => vec![other],
    }
}

/// Average over all relabellings of the marked points.
pub fn symmetrize(cls: &DivisorClass) -> Result<DivisorClass> {
    if cls.rest().is_some() {
        return Err(Error::Unsupported("symmetrizing a class with unknown unlisted coordinates".into()));
    }
    let sp = cls.space();
    let mut seen = BTreeSet::new();
    let mut out: BTreeMap<BasisClass, Entry> = BTreeMap::new();
    let keys: Vec<BasisClass> = cls.coeffs().keys().chain(cls.tails().keys()).copied().collect();
    for c in keys {
        if seen.contains(&c) {
            continue;
        }
        let members = orbit(sp, c);
        let total = members
            .iter()
            .fold(Entry::Known(Q::zero()), |acc, m| acc.add(&cls.entry(m)))
            .scale(&Q::new(1.into(), (members.len() as i64).into()));
        for m in members {
            seen.insert(m);
            out.insert(m, total.clone());
        }
    }
    Ok(DivisorClass::from_entries(sp.symmetrized(), out, None))
}
