use std::collections::BTreeMap;

use num_traits::Zero;

use spincalc::curves::{intersect, solve_theta_coefficients, solve_theta_system, CurveKind, TestCurve, ThetaSystem};
use spincalc::picard::{
    canonical_class, named_class, pullback_forgetful, pullback_sigma, BasisClass, DivisorClass, NamedClass, Space,
    SpaceKind,
};
use spincalc::{Field, Q};

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

// λ/4 + ψ/2 − α₀/16 − ½·Σ_{i<g} α_{i:∅}, every other coordinate zero,
// written in the space's own names.
fn theta_oracle(sp: Space) -> BTreeMap<BasisClass, Q> {
    let mut out = BTreeMap::new();
    let mut put = |b: BasisClass, v: Q| {
        let b = sp.canonical(b).unwrap().unwrap();
        *out.entry(b).or_insert_with(Q::zero) += v;
    };
    put(BasisClass::Lambda, q(1, 4));
    put(BasisClass::Psi(1), q(1, 2));
    put(BasisClass::Alpha0, q(-1, 16));
    for i in 1..sp.g {
        put(BasisClass::Alpha { i, s: 0 }, q(-1, 2));
    }
    out
}

#[test]
fn solver_returns_theta_for_g_3_to_12() {
    for g in 3..=12 {
        let r = solve_theta_coefficients(g).unwrap();
        assert!(r.consistent, "g = {g}");
        assert!(r.equation_count > r.unknown_count, "overdetermined at g = {g}");
        let class: DivisorClass = r.class.clone().expect("unique solution");
        let sp = Space::odd(g, 1).unwrap();
        let want = theta_oracle(sp);
        for b in sp.basis() {
            let w = want.get(&b).cloned().unwrap_or_else(Q::zero);
            assert_eq!(class.coeff(b).unwrap().unwrap_or_else(Q::zero), w, "g = {g}, {b:?}");
        }
        assert!(r.matches_paper);
    }
}

#[test]
fn theta_pairs_with_test_curves() {
    for g in 3..=9 {
        let t = named_class(NamedClass::ThetaG1, Space::odd(g, 1).unwrap()).unwrap();
        for i in 2..g {
            assert_eq!(intersect(&TestCurve::new(CurveKind::G(i), g).unwrap(), &t).unwrap(), Q::from_i64(i as i64 - 1));
            assert!(intersect(&TestCurve::new(CurveKind::F(i), g).unwrap(), &t).unwrap().is_zero());
        }
    }
}

#[test]
fn k3_pencil_zero_against_theta() {
    for g in 3..=20 {
        let t = named_class(NamedClass::ThetaG1, Space::odd(g, 1).unwrap()).unwrap();
        assert!(intersect(&TestCurve::new(CurveKind::K3Pencil, g).unwrap(), &t).unwrap().is_zero(), "g = {g}");
    }
}

#[test]
fn k3_pencil_genus_eleven_misses_everything() {
    let k3 = TestCurve::new(CurveKind::K3Pencil, 11).unwrap();
    let sp = Space::odd(11, 1).unwrap();
    assert!(intersect(&k3, &canonical_class(sp).unwrap()).unwrap().is_zero());
    let d = named_class(NamedClass::SlopeDivisor, Space::moduli(11, 0).unwrap()).unwrap();
    assert!(intersect(&k3, &pullback_sigma(&d, SpaceKind::SpinOdd, 1).unwrap()).unwrap().is_zero());
    let z = named_class(NamedClass::Zg, Space::odd(11, 0).unwrap()).unwrap();
    assert!(intersect(&k3, &pullback_forgetful(&z, sp, 1).unwrap()).unwrap().is_zero());
}

#[test]
fn switching_off_relations_loses_uniqueness() {
    let r = solve_theta_system(ThetaSystem { g: 5, pushforward: false, nu_relations: true }).unwrap();
    assert!(r.consistent);
    assert!(r.solution_dimension.unwrap() >= 1);
    assert!(!r.matches_paper);
}

#[test]
fn curve_names_parse() {
    assert_eq!(CurveKind::parse("G", Some(3)).unwrap(), CurveKind::G(3));
    assert_eq!(CurveKind::parse("k3_pencil", None).unwrap(), CurveKind::K3Pencil);
    assert!(CurveKind::parse("nu_family", None).is_err());
}
