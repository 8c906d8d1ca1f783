use proptest::prelude::*;

use spincalc::certificates::{
    certify_general_type, recheck, threshold_scan, verify_bespoke, verify_bespoke_with, BespokeCase, Mechanism,
    Parity, Verdict,
};
use spincalc::Q;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn slope(g: i64) -> Q {
    match g {
        4 => q(17, 2),
        6 => q(47, 6),
        10 => q(7, 1),
        _ => q(6, 1) + q(12, g + 1),
    }
}

// λ- and ψ-coefficients of the general-n combination, evaluated by hand.
fn oracle(parity: Parity, g: i64, n: i64) -> (Q, Q) {
    let base = (q(3, 1) * slope(g) + q(4, 1)) / q(2, 1);
    let m = g - 3 + 2 * n;
    match parity {
        Parity::Even => (base - q(2 * n * (n - 1), g * m), q(2 * (n - 1), m)),
        Parity::Odd => (base - q(2 * (n - 4) * (n - 1), g * m), q(2 * (n * n + 2 * g - n - 2), n * m)),
    }
}

fn oracle_pass(parity: Parity, g: i64, n: i64) -> bool {
    let (l, p) = oracle(parity, g, n);
    l < q(13, 1) && p < q(1, 1)
}

#[test]
fn printed_thresholds() {
    for (g, f) in [(4, 9), (5, 7), (6, 7), (7, 4)] {
        assert_eq!(threshold_scan(g, Parity::Even, 14).unwrap().first_pass, Some(f), "f({g})");
    }
    for (g, h) in [(4, 12), (5, 11), (6, 10), (7, 7)] {
        assert_eq!(threshold_scan(g, Parity::Odd, 14).unwrap().first_pass, Some(h), "h({g})");
    }
}

#[test]
fn scan_agrees_with_hand_evaluation() {
    for g in 4..=7u32 {
        for parity in [Parity::Even, Parity::Odd] {
            let scan = threshold_scan(g, parity, 14).unwrap();
            for row in scan.rows.iter().filter(|r| r.mechanism == Mechanism::Generic && r.n >= 1) {
                let want = oracle_pass(parity, g as i64, row.n as i64);
                assert_eq!(row.verdict, Some(Verdict::of(want)), "{parity} g={g} n={}", row.n);
            }
        }
    }
}

#[test]
fn printed_coefficients_for_two_cases() {
    let c = certify_general_type(Parity::Even, 4, 9).unwrap();
    assert_eq!((c.combination.lambda.clone(), c.combination.psi.clone()), (q(59, 4) - q(36, 19), q(16, 19)));
    let c = certify_general_type(Parity::Odd, 4, 12).unwrap();
    assert_eq!((c.combination.lambda.clone(), c.combination.psi.clone()), (q(1299, 100), q(23, 25)));
}

#[test]
fn bespoke_cases() {
    for case in BespokeCase::ALL {
        let c = verify_bespoke(case).unwrap();
        assert_eq!(c.verdict, Verdict::Pass, "{case}");
        assert!(recheck(&c).unwrap(), "{case}");
        let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(v["verdict"], "pass");
        assert!(v["inequalities"].as_array().unwrap().iter().all(|i| i["pass"] == true));
    }
    assert!("s81_plus".parse::<BespokeCase>().is_err());
}

#[test]
fn raising_a_bespoke_coefficient_breaks_it() {
    let mut terms = BespokeCase::S84Minus.terms();
    terms[1].1 = q(2, 1);
    assert_eq!(verify_bespoke_with(BespokeCase::S84Minus, &terms).unwrap().verdict, Verdict::Fail);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generic_certificates_match_oracle(g in 4u32..=11, n in 1u32..=16, odd in any::<bool>()) {
        let parity = if odd { Parity::Odd } else { Parity::Even };
        let c = certify_general_type(parity, g, n).unwrap();
        let (l, p) = oracle(parity, g as i64, n as i64);
        prop_assert_eq!(&c.combination.lambda, &l);
        prop_assert_eq!(&c.combination.psi, &p);
        prop_assert_eq!(c.verdict, Verdict::of(oracle_pass(parity, g as i64, n as i64)));
        if n <= 8 {
            prop_assert!(recheck(&c).unwrap());
        }
    }
}
