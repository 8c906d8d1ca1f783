//! Degree-one divisor classes on M̄_{g,n} and on the two components
//! S̄_{g,n}^± of the moduli space of pointed spin curves.
//!
//! Marked points are labelled `1..=n`; a subset `S ⊆ [n]` is a bitmask
//! with bit `k - 1` standing for label `k`.

mod class;
mod json;
mod maps;
mod named;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use class::{DivisorClass, Entry, Interval};
pub use json::{ClassDoc, CoeffDoc, SpaceDoc, TailDoc};
pub use maps::{
    forget_one, pullback_forgetful, pullback_forgetful_stepwise, pullback_pi, pullback_sigma,
    pushforward_pi, relabel, symmetrize,
};
pub use named::{canonical_class, logan_symmetrized, named_class, slope_of, theta_gn, NamedClass};

/// Largest number of marked points supported.
pub const MAX_POINTS: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Moduli,
    SpinEven,
    SpinOdd,
}

impl SpaceKind {
    pub fn is_spin(self) -> bool {
        self != SpaceKind::Moduli
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpaceKind::Moduli => "moduli",
            SpaceKind::SpinEven => "spin_even",
            SpaceKind::SpinOdd => "spin_odd",
        })
    }
}

/// One of M̄_{g,n}, S̄_{g,n}^+, S̄_{g,n}^-, or its quotient by 𝔖_n when
/// `symmetrized` is set. Symmetrized spaces keep the same coordinates; a
/// class on them is 𝔖_n-invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Space {
    pub kind: SpaceKind,
    pub g: u32,
    pub n: u32,
    pub symmetrized: bool,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            SpaceKind::Moduli => "M",
            SpaceKind::SpinEven => "S+",
            SpaceKind::SpinOdd => "S-",
        };
        if self.symmetrized {
            write!(f, "{name}_{{{},[{}]}}", self.g, self.n)
        } else {
            write!(f, "{name}_{{{},{}}}", self.g, self.n)
        }
    }
}

/// A basis class, under its canonical name once it has passed through
/// [`Space::canonical`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisClass {
    Lambda,
    Psi(u32),
    DeltaIrr,
    Delta { i: u32, s: u64 },
    Alpha0,
    Beta0,
    Alpha { i: u32, s: u64 },
    Beta { i: u32, s: u64 },
}

pub fn labels(s: u64) -> Vec<u32> {
    (0..64).filter(|k| s >> k & 1 == 1).map(|k| k + 1).collect()
}

pub fn subset(labels: &[u32]) -> u64 {
    labels.iter().fold(0, |acc, &l| acc | 1 << (l - 1))
}

fn fmt_set(s: u64) -> String {
    if s == 0 {
        return "∅".into();
    }
    let l: Vec<String> = labels(s).iter().map(u32::to_string).collect();
    format!("{{{}}}", l.join(","))
}

impl fmt::Display for BasisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BasisClass::Lambda => write!(f, "λ"),
            BasisClass::Psi(k) => write!(f, "ψ_{k}"),
            BasisClass::DeltaIrr => write!(f, "δ_irr"),
            BasisClass::Delta { i, s } => write!(f, "δ_{{{i}:{}}}", fmt_set(s)),
            BasisClass::Alpha0 => write!(f, "α₀"),
            BasisClass::Beta0 => write!(f, "β₀"),
            BasisClass::Alpha { i, s } => write!(f, "α_{{{i}:{}}}", fmt_set(s)),
            BasisClass::Beta { i, s } => write!(f, "β_{{{i}:{}}}", fmt_set(s)),
        }
    }
}

impl BasisClass {
    /// Boundary index data `(i, S)` when the class is `δ`, `α` or `β`
    /// with a genus split.
    pub fn split(&self) -> Option<(u32, u64)> {
        match *self {
            BasisClass::Delta { i, s } | BasisClass::Alpha { i, s } | BasisClass::Beta { i, s } => {
                Some((i, s))
            }
            _ => None,
        }
    }

    fn with_split(&self, i: u32, s: u64) -> BasisClass {
        match self {
            BasisClass::Delta { .. } => BasisClass::Delta { i, s },
            BasisClass::Alpha { .. } => BasisClass::Alpha { i, s },
            BasisClass::Beta { .. } => BasisClass::Beta { i, s },
            other => *other,
        }
    }
}

impl Space {
    pub fn new(kind: SpaceKind, g: u32, n: u32) -> Result<Self> {
        if g < 2 {
            return Err(Error::OutOfRange(format!("genus {g} < 2")));
        }
        if n > MAX_POINTS {
            return Err(Error::OutOfRange(format!("{n} marked points (at most {MAX_POINTS})")));
        }
        Ok(Self { kind, g, n, symmetrized: false })
    }

    pub fn moduli(g: u32, n: u32) -> Result<Self> {
        Self::new(SpaceKind::Moduli, g, n)
    }

    pub fn odd(g: u32, n: u32) -> Result<Self> {
        Self::new(SpaceKind::SpinOdd, g, n)
    }

    pub fn even(g: u32, n: u32) -> Result<Self> {
        Self::new(SpaceKind::SpinEven, g, n)
    }

    pub fn symmetrized(mut self) -> Self {
        self.symmetrized = true;
        self
    }

    pub fn unsymmetrized(mut self) -> Self {
        self.symmetrized = false;
        self
    }

    pub fn with_kind(mut self, kind: SpaceKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn with_points(mut self, n: u32) -> Self {
        self.n = n;
        self
    }

    pub fn full_set(&self) -> u64 {
        if self.n == 0 {
            0
        } else {
            u64::MAX >> (64 - self.n)
        }
    }

    /// The class of the locus where marked points `S` sit on a rational
    /// tail: `δ_{0:S}` on M̄, `α_{0:S}` on S̄⁺, `β_{0:S}` on S̄⁻.
    pub fn rational_tail(&self, s: u64) -> BasisClass {
        match self.kind {
            SpaceKind::Moduli => BasisClass::Delta { i: 0, s },
            SpaceKind::SpinEven => BasisClass::Alpha { i: 0, s },
            SpaceKind::SpinOdd => BasisClass::Beta { i: 0, s },
        }
    }

    /// Canonical name of `c` on this space: `Ok(None)` when the locus is
    /// empty, an error when the symbol makes no sense here.
    pub fn canonical(&self, c: BasisClass) -> Result<Option<BasisClass>> {
        let bad = || Error::InvalidBasisClass(format!("{c} on {self}"));
        let full = self.full_set();
        if let Some((i, s)) = c.split() {
            if i > self.g || s & !full != 0 {
                return Err(bad());
            }
            let size = s.count_ones();
            let co = full & !s;
            if (i == 0 && size < 2) || (i == self.g && co.count_ones() < 2) {
                return Err(bad());
            }
        }
        let g = self.g;
        let prefer = |i: u32, s: u64| -> (u32, u64) {
            if 2 * i < g || (2 * i == g && (self.n == 0 || s & 1 == 1)) {
                (i, s)
            } else {
                (g - i, full & !s)
            }
        };
        Ok(match (self.kind, c) {
            (_, BasisClass::Lambda) => Some(c),
            (_, BasisClass::Psi(k)) => {
                if k == 0 || k > self.n {
                    return Err(bad());
                }
                Some(c)
            }
            (SpaceKind::Moduli, BasisClass::DeltaIrr) => Some(c),
            (SpaceKind::Moduli, BasisClass::Delta { i, s }) => {
                let (i, s) = prefer(i, s);
                Some(BasisClass::Delta { i, s })
            }
            (SpaceKind::SpinEven, BasisClass::Alpha0 | BasisClass::Beta0) => Some(c),
            (SpaceKind::SpinEven, BasisClass::Alpha { i, s } | BasisClass::Beta { i, s }) => {
                if matches!(c, BasisClass::Beta { .. }) && (i == 0 || i == g) {
                    None
                } else {
                    let (i, s) = prefer(i, s);
                    Some(c.with_split(i, s))
                }
            }
            (SpaceKind::SpinOdd, BasisClass::Alpha0 | BasisClass::Beta0) => Some(c),
            (SpaceKind::SpinOdd, BasisClass::Alpha { i, s } | BasisClass::Beta { i, s }) => {
                // β_{i:S} is α_{g-i:Sᶜ}; α_{0:S} is empty
                let (ai, as_) = match c {
                    BasisClass::Alpha { .. } => (i, s),
                    _ => (g - i, full & !s),
                };
                if ai == 0 {
                    None
                } else if 2 * ai < g || (2 * ai == g && (self.n == 0 || as_ & 1 == 1)) {
                    Some(BasisClass::Alpha { i: ai, s: as_ })
                } else {
                    Some(BasisClass::Beta { i: g - ai, s: full & !as_ })
                }
            }
            _ => return Err(bad()),
        })
    }

    /// Every boundary class other than `δ_irr`, `α₀`, `β₀`, each once.
    pub fn boundary_splits(&self) -> Vec<BasisClass> {
        let mut out = BTreeSet::new();
        let tags: Vec<BasisClass> = match self.kind {
            SpaceKind::Moduli => vec![BasisClass::Delta { i: 0, s: 0 }],
            _ => vec![BasisClass::Alpha { i: 0, s: 0 }, BasisClass::Beta { i: 0, s: 0 }],
        };
        for tag in tags {
            for i in 0..=self.g {
                for s in 0..=self.full_set() {
                    if let Ok(Some(c)) = self.canonical(tag.with_split(i, s)) {
                        out.insert(c);
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// The full basis in canonical order.
    pub fn basis(&self) -> Vec<BasisClass> {
        let mut out = vec![BasisClass::Lambda];
        out.extend((1..=self.n).map(BasisClass::Psi));
        match self.kind {
            SpaceKind::Moduli => out.push(BasisClass::DeltaIrr),
            _ => out.extend([BasisClass::Alpha0, BasisClass::Beta0]),
        }
        out.extend(self.boundary_splits());
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_identification_has_one_name() {
        let sp = Space::odd(4, 1).unwrap();
        let b1 = sp.canonical(BasisClass::Beta { i: 1, s: 0 }).unwrap();
        let a3 = sp.canonical(BasisClass::Alpha { i: 3, s: 1 }).unwrap();
        assert_eq!(b1, a3);
        assert_eq!(b1, Some(BasisClass::Beta { i: 1, s: 0 }));
        assert_eq!(sp.canonical(BasisClass::Alpha { i: 0, s: 1 }).ok(), None);
        // α_{4:∅} = β_{0:{1}} is not stable with a single point
        assert!(sp.canonical(BasisClass::Alpha { i: 4, s: 0 }).is_err());
    }

    #[test]
    fn even_rational_tail_beta_is_empty() {
        let sp = Space::even(4, 3).unwrap();
        assert_eq!(sp.canonical(BasisClass::Beta { i: 0, s: 0b11 }).unwrap(), None);
        assert_eq!(
            sp.canonical(BasisClass::Alpha { i: 4, s: 0b100 }).unwrap(),
            Some(BasisClass::Alpha { i: 0, s: 0b011 })
        );
    }

    #[test]
    fn moduli_tie_prefers_label_one() {
        let sp = Space::moduli(4, 2).unwrap();
        assert_eq!(
            sp.canonical(BasisClass::Delta { i: 2, s: 0b10 }).unwrap(),
            Some(BasisClass::Delta { i: 2, s: 0b01 })
        );
    }

    #[test]
    fn basis_counts() {
        // M̄_{g}: λ, δ_irr, δ_1..δ_{⌊g/2⌋}
        assert_eq!(Space::moduli(5, 0).unwrap().basis().len(), 4);
        // S̄_g^-: λ, α₀, β₀, α_1..α_{g-1}
        assert_eq!(Space::odd(5, 0).unwrap().basis().len(), 3 + 4);
        // S̄_g^+: λ, α₀, β₀, α_i and β_i for 1 ≤ i ≤ ⌊g/2⌋
        assert_eq!(Space::even(5, 0).unwrap().basis().len(), 3 + 4);
    }
}
