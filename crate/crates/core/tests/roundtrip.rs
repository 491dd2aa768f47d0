use std::sync::Arc;

use semitrace::{
    DeterminantalInstance, DeterminantalSpec, HigherDimInstance, HigherDimSpec, NumericalSemigroup, RelativeIdeal,
    RelativeIdealSpec, SemigroupSpec,
};

fn tail_base() -> DeterminantalInstance {
    let h = NumericalSemigroup::new(&[6, 7, 8, 17]).unwrap();
    DeterminantalInstance::build(&h, &[6, 7, 8, 17], &[3, 1, 1, 1], &[1, 1, 2, 1]).unwrap()
}

#[test]
fn semigroup_spec_roundtrip() {
    let h = NumericalSemigroup::new(&[7, 8, 9, 10]).unwrap();
    let text = serde_json::to_string(&h.to_spec()).unwrap();
    assert_eq!(text, r#"{"generators":[7,8,9,10]}"#);
    let back: SemigroupSpec = serde_json::from_str(&text).unwrap();
    assert_eq!(NumericalSemigroup::from_spec(&back).unwrap(), h);
}

#[test]
fn relative_ideal_spec_roundtrip() {
    let h = Arc::new(NumericalSemigroup::new(&[3, 4, 5]).unwrap());
    let e = RelativeIdeal::from_generators(&h, &[-1, 0]).unwrap();
    let text = serde_json::to_string(&e.to_spec()).unwrap();
    let back: RelativeIdealSpec = serde_json::from_str(&text).unwrap();
    assert_eq!(RelativeIdeal::from_spec(&back).unwrap(), e);
}

#[test]
fn determinantal_spec_roundtrip() {
    let d = tail_base();
    let text = serde_json::to_string(&d.to_spec()).unwrap();
    let back: DeterminantalSpec = serde_json::from_str(&text).unwrap();
    assert_eq!(DeterminantalInstance::from_spec(&back).unwrap(), d);
}

#[test]
fn determinantal_spec_order_defaults_to_generators() {
    let spec: DeterminantalSpec =
        serde_json::from_str(r#"{"generators":[7,8,9,10],"m":[3,1,1,1],"ell":[1,1,1,2]}"#).unwrap();
    assert_eq!(DeterminantalInstance::from_spec(&spec).unwrap().order(), &[7, 8, 9, 10]);
}

#[test]
fn higher_spec_roundtrip() {
    let hd = HigherDimInstance::new(tail_base(), &[1], &[3]).unwrap();
    let value = serde_json::to_value(hd.to_spec()).unwrap();
    assert_eq!(value["I"], serde_json::json!([1]));
    assert_eq!(value["J"], serde_json::json!([3]));
    assert_eq!(value["m"], serde_json::json!([3, 1, 1, 1]));
    let back: HigherDimSpec = serde_json::from_value(value).unwrap();
    assert_eq!(HigherDimInstance::from_spec(&back).unwrap(), hd);
}

#[test]
fn higher_spec_index_sets_default_empty() {
    let spec: HigherDimSpec = serde_json::from_str(
        r#"{"generators":[6,7,8,17],"order":[6,7,8,17],"m":[3,1,1,1],"ell":[1,1,2,1]}"#,
    )
    .unwrap();
    let hd = HigherDimInstance::from_spec(&spec).unwrap();
    assert_eq!(hd.dimension(), 1);
    assert_eq!(hd.classify().unwrap().clause.to_string(), "main(b)");
}

#[test]
fn higher_public_api_end_to_end() {
    let hd = HigherDimInstance::new(tail_base(), &[1], &[3]).unwrap();
    let mats = hd.build_matrices();
    assert_eq!(mats.m.len(), 3);
    assert!(mats.m.iter().all(|row| row.len() == 8));
    let cls = hd.classify().unwrap();
    assert!(cls.is_ng);
    let report = hd.verify_witness().unwrap();
    assert_eq!(report.variables_covered, 6);
    assert!(HigherDimInstance::new(tail_base(), &[5], &[]).is_err());
}
