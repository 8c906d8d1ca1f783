use spincalc::quintic::{sample_spin4, verify_doc, DatumDoc, FrameConfig, SampleOptions, SampleOutcome};
use spincalc::{Fp, PrimeField};

const GOLDEN: &str = include_str!("golden/spin4_seed42_p10007.json");

#[test]
fn golden_datum_verifies() {
    let doc = DatumDoc::from_json(GOLDEN).unwrap();
    assert_eq!(doc.field.characteristic, 10007);
    assert_eq!(doc.provenance.as_ref().map(|p| p.seed), Some(42));
    let report = verify_doc(&doc).unwrap();
    assert!(report.all_pass, "{:?}", report.failed());
    assert_eq!(report, doc.report);
}

#[test]
fn golden_datum_regenerates_byte_for_byte() {
    let ctx = PrimeField::new(10007).unwrap();
    let frame = FrameConfig::<Fp>::canonical(&ctx);
    let SampleOutcome::Done(s) = sample_spin4(&ctx, &frame, &SampleOptions::new(42)).unwrap() else {
        panic!("finite field conics have points");
    };
    assert_eq!(s.to_doc(&ctx).to_json() + "\n", GOLDEN);
}
