//! Named classes: the canonical class of S̄_{g,n}^±, the theta-null
//! divisor, Z̄_g, Logan's divisor, Θ̄_{g,1}, Θ̄_{g,n} and the slope
//! divisors on M̄_g.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::class::{DivisorClass, Interval};
use super::maps::{pullback_forgetful, symmetrize};
use super::{BasisClass, Space, SpaceKind};
use crate::error::{Error, Result};
use crate::field::{Field, Q};

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum NamedClass {
    Canonical,
    ThetaNull,
    Zg,
    Logan,
    ThetaG1,
    ThetaGn,
    SlopeDivisor,
}

impl NamedClass {
    pub const ALL: [NamedClass; 7] = [
        NamedClass::Canonical,
        NamedClass::ThetaNull,
        NamedClass::Zg,
        NamedClass::Logan,
        NamedClass::ThetaG1,
        NamedClass::ThetaGn,
        NamedClass::SlopeDivisor,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            NamedClass::Canonical => "canonical",
            NamedClass::ThetaNull => "theta_null",
            NamedClass::Zg => "Z_g",
            NamedClass::Logan => "logan",
            NamedClass::ThetaG1 => "theta_g1",
            NamedClass::ThetaGn => "theta_gn",
            NamedClass::SlopeDivisor => "slope_divisor",
        }
    }
}

impl fmt::Display for NamedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NamedClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(c) = NamedClass::ALL.iter().find(|c| c.as_str().eq_ignore_ascii_case(s)) {
            return Ok(*c);
        }
        if s.eq_ignore_ascii_case("weierstrass") {
            return Err(Error::Unsupported("no class is available for the Weierstrass divisor".into()));
        }
        Err(Error::UnknownName(s.to_string()))
    }
}

fn require(space: Space, kind: SpaceKind, n: Option<u32>, what: NamedClass) -> Result<()> {
    if space.kind != kind || n.is_some_and(|n| n != space.n) {
        let pts = n.map_or("any number of".to_string(), |n| n.to_string());
        return Err(Error::IncompatibleSpace(format!(
            "{what} lives on {kind} spaces with {pts} marked points, not {space}"
        )));
    }
    Ok(())
}

/// `K = 13λ − 2α₀ − 3β₀ + Σψ_i − 2Σ(α_{i:S} + β_{i:S}) − α_{1:∅} − β_{1:∅}`.
pub fn canonical_class(space: Space) -> Result<DivisorClass> {
    if !space.kind.is_spin() {
        return Err(Error::Unsupported(format!("canonical class of {space}")));
    }
    let mut k = DivisorClass::from_terms(
        space,
        [(BasisClass::Lambda, q(13, 1)), (BasisClass::Alpha0, q(-2, 1)), (BasisClass::Beta0, q(-3, 1))],
    )?;
    for i in 1..=space.n {
        k.add_term(BasisClass::Psi(i), Q::one())?;
    }
    for c in space.boundary_splits() {
        k.add_term(c, q(-2, 1))?;
    }
    k.add_term(BasisClass::Alpha { i: 1, s: 0 }, q(-1, 1))?;
    k.add_term(BasisClass::Beta { i: 1, s: 0 }, q(-1, 1))?;
    Ok(k)
}

/// Slope of the effective divisor on M̄_g used for `4 ≤ g ≤ 11`.
pub fn slope_of(g: u32) -> Result<Q> {
    match g {
        4 => Ok(q(17, 2)),
        6 => Ok(q(47, 6)),
        10 => Ok(q(7, 1)),
        5..=11 if !crate::field::is_prime_small(g as u64 + 1) => Ok(q(6, 1) + q(12, g as i64 + 1)),
        _ => Err(Error::Unsupported(format!("no slope divisor recorded for genus {g}"))),
    }
}

/// `Σ_i π_i^*(Θ̄_{g,1})`, where `π_i` forgets every point but `i`.
pub fn theta_gn(g: u32, n: u32) -> Result<DivisorClass> {
    if g < 3 || n < 1 {
        return Err(Error::OutOfRange(format!("Θ̄_{{g,n}} needs g ≥ 3 and n ≥ 1, got ({g}, {n})")));
    }
    let base = named_class(NamedClass::ThetaG1, Space::odd(g, 1)?)?;
    let target = Space::odd(g, n)?;
    let mut acc = DivisorClass::zero(target);
    for i in 1..=n {
        let keep = 1u64 << (i - 1);
        acc = acc.add(&pullback_forgetful(&base, target, target.full_set() & !keep)?)?;
    }
    Ok(acc)
}

/// Logan's divisor on M̄_{g,g} pulled back to M̄_{g,n} (forgetting the
/// labels `g+1..=n`) and averaged over 𝔖_n.
pub fn logan_symmetrized(g: u32, n: u32) -> Result<DivisorClass> {
    if n < g {
        return Err(Error::OutOfRange(format!("Logan's divisor needs n ≥ g, got n = {n} < g = {g}")));
    }
    let base = named_class(NamedClass::Logan, Space::moduli(g, g)?)?;
    let source = Space::moduli(g, n)?;
    let forgotten = source.full_set() & !Space::moduli(g, g)?.full_set();
    symmetrize(&pullback_forgetful(&base, source, forgotten)?)
}

pub fn named_class(name: NamedClass, space: Space) -> Result<DivisorClass> {
    let g = space.g;
    let gi = g as i64;
    let cls = match name {
        NamedClass::Canonical => return canonical_class(space),
        NamedClass::ThetaNull => {
            require(space, SpaceKind::SpinEven, Some(0), name)?;
            let mut c = DivisorClass::from_terms(
                space,
                [(BasisClass::Lambda, q(1, 4)), (BasisClass::Alpha0, q(-1, 16))],
            )?;
            for i in 1..=g / 2 {
                c.add_term(BasisClass::Beta { i, s: 0 }, q(-1, 2))?;
            }
            c
        }
        NamedClass::Zg => {
            require(space, SpaceKind::SpinOdd, Some(0), name)?;
            let mut c = DivisorClass::from_terms(
                space,
                [
                    (BasisClass::Lambda, q(gi + 8, 1)),
                    (BasisClass::Alpha0, q(-(gi + 2), 4)),
                    (BasisClass::Beta0, q(-2, 1)),
                ],
            )?;
            for i in 1..g {
                c.add_term(BasisClass::Alpha { i, s: 0 }, Q::from_i64(-2 * (gi - i as i64)))?;
            }
            c
        }
        NamedClass::ThetaG1 => {
            require(space, SpaceKind::SpinOdd, Some(1), name)?;
            if g < 3 {
                return Err(Error::OutOfRange("Θ̄_{g,1} needs g ≥ 3".into()));
            }
            let mut c = DivisorClass::from_terms(
                space,
                [
                    (BasisClass::Lambda, q(1, 4)),
                    (BasisClass::Psi(1), q(1, 2)),
                    (BasisClass::Alpha0, q(-1, 16)),
                ],
            )?;
            for i in 1..g {
                c.add_term(BasisClass::Alpha { i, s: 0 }, q(-1, 2))?;
            }
            c
        }
        NamedClass::ThetaGn => {
            require(space, SpaceKind::SpinOdd, None, name)?;
            let c = theta_gn(g, space.n)?;
            if space.symmetrized {
                c.with_space(space)
            } else {
                c
            }
        }
        NamedClass::Logan => {
            require(space, SpaceKind::Moduli, Some(g), name)?;
            let mut c = DivisorClass::from_terms(space, [(BasisClass::Lambda, q(-1, 1))])?;
            for i in 1..=g {
                c.add_term(BasisClass::Psi(i), Q::one())?;
            }
            for b in space.boundary_splits() {
                let (i, s) = b.split().expect("boundary split");
                let k = (i as i64 - s.count_ones() as i64).abs();
                let coeff = Q::from_i64((k + 1) * k / 2);
                if !coeff.is_zero() {
                    c.add_term(b, -coeff)?;
                }
            }
            c
        }
        NamedClass::SlopeDivisor => {
            require(space, SpaceKind::Moduli, Some(0), name)?;
            let s = slope_of(g)?;
            let mut c = DivisorClass::from_terms(space, [(BasisClass::Lambda, s), (BasisClass::DeltaIrr, q(-1, 1))])?;
            for i in 1..=g / 2 {
                c.set_tail(BasisClass::Delta { i, s: 0 }, Interval::at_most(q(-1, 1)))?;
            }
            c
        }
    };
    Ok(cls)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeff(c: &DivisorClass, b: BasisClass) -> Q {
        c.coeff(b).unwrap().unwrap()
    }

    #[test]
    fn canonical_class_odd_genus_four() {
        let k = canonical_class(Space::odd(4, 1).unwrap()).unwrap();
        assert_eq!(coeff(&k, BasisClass::Lambda), q(13, 1));
        assert_eq!(coeff(&k, BasisClass::Alpha0), q(-2, 1));
        assert_eq!(coeff(&k, BasisClass::Beta0), q(-3, 1));
        assert_eq!(coeff(&k, BasisClass::Psi(1)), q(1, 1));
        assert_eq!(coeff(&k, BasisClass::Alpha { i: 1, s: 0 }), q(-3, 1));
        assert_eq!(coeff(&k, BasisClass::Beta { i: 1, s: 0 }), q(-3, 1));
        assert_eq!(coeff(&k, BasisClass::Alpha { i: 1, s: 1 }), q(-2, 1));
        assert!(canonical_class(Space::moduli(4, 1).unwrap()).is_err());
    }

    #[test]
    fn theta_null_genus_four() {
        let t = named_class(NamedClass::ThetaNull, Space::even(4, 0).unwrap()).unwrap();
        assert_eq!(t.to_string(), "1/4λ - 1/16α₀ - 1/2β_{1:∅} - 1/2β_{2:∅}");
    }

    #[test]
    fn z_g_genus_four() {
        let z = named_class(NamedClass::Zg, Space::odd(4, 0).unwrap()).unwrap();
        // α₃ is named β₁ on the odd component
        assert_eq!(z.to_string(), "12λ - 3/2α₀ - 2β₀ - 6α_{1:∅} - 4α_{2:∅} - 2β_{1:∅}");
    }

    #[test]
    fn theta_g1_genus_five() {
        let t = named_class(NamedClass::ThetaG1, Space::odd(5, 1).unwrap()).unwrap();
        for i in 1..5 {
            assert_eq!(coeff(&t, BasisClass::Alpha { i, s: 0 }), q(-1, 2));
        }
        assert_eq!(coeff(&t, BasisClass::Psi(1)), q(1, 2));
        assert_eq!(coeff(&t, BasisClass::Alpha0), q(-1, 16));
    }

    #[test]
    fn theta_gn_single_point_is_theta_g1() {
        let a = theta_gn(4, 1).unwrap();
        let b = named_class(NamedClass::ThetaG1, Space::odd(4, 1).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(coeff(&theta_gn(4, 11).unwrap(), BasisClass::Lambda), q(11, 4));
    }

    #[test]
    fn names_and_compatibility() {
        assert_eq!("theta_null".parse::<NamedClass>().unwrap(), NamedClass::ThetaNull);
        assert!(matches!("weierstrass".parse::<NamedClass>(), Err(Error::Unsupported(_))));
        assert!(matches!("nonsense".parse::<NamedClass>(), Err(Error::UnknownName(_))));
        assert!(matches!(
            named_class(NamedClass::ThetaNull, Space::odd(4, 0).unwrap()),
            Err(Error::IncompatibleSpace(_))
        ));
        assert!(named_class(NamedClass::Logan, Space::moduli(4, 3).unwrap()).is_err());
    }

    #[test]
    fn logan_symmetrized_coefficients() {
        for (g, n) in [(4u32, 9u32), (4, 10), (5, 11)] {
            let c = logan_symmetrized(g, n).unwrap();
            let (gi, ni) = (g as i64, n as i64);
            assert_eq!(coeff(&c, BasisClass::Lambda), q(-1, 1));
            for k in 1..=n {
                assert_eq!(coeff(&c, BasisClass::Psi(k)), q(gi, ni));
            }
            let pair = q(-gi * (gi - 3 + 2 * ni), ni * (ni - 1));
            for a in 1..=n {
                for b in a + 1..=n {
                    let s = (1u64 << (a - 1)) | (1 << (b - 1));
                    assert_eq!(coeff(&c, BasisClass::Delta { i: 0, s }), pair, "({g},{n}) {{{a},{b}}}");
                }
            }
        }
        assert_eq!(coeff(&logan_symmetrized(4, 10).unwrap(), BasisClass::Delta { i: 0, s: 0b11 }), q(-14, 15));
    }

    #[test]
    fn slope_table() {
        let expect = [(4, q(17, 2)), (5, q(8, 1)), (6, q(47, 6)), (7, q(15, 2)), (8, q(22, 3)), (9, q(36, 5)), (10, q(7, 1)), (11, q(7, 1))];
        for (g, s) in expect {
            assert_eq!(slope_of(g).unwrap(), s, "g = {g}");
        }
        assert!(slope_of(3).is_err());
        assert!(slope_of(12).is_err());
    }
}
