use bookcoh_web::{classify_json, differential_text, dims_json};
use serde_json::Value;

#[test]
fn dims_for_three() {
    let v: Value = serde_json::from_str(&dims_json(3).unwrap()).unwrap();
    assert_eq!(v["totals"], serde_json::json!([1, 4, 3, 0]));
    assert_eq!(v["label"], "book");
    assert!(dims_json(1).is_err());
    assert!(dims_json(9).is_err());
}

#[test]
fn differential_of_time() {
    assert_eq!(differential_text("t", 3).unwrap(), "-u1*du1 - u2*du2");
    assert_eq!(differential_text("dt", 3).unwrap(), "0");
    assert!(differential_text("u1 *", 3).unwrap_err().contains("syntax error at byte"));
}

#[test]
fn classify_round_trip() {
    let v: Value = serde_json::from_str(&classify_json("dt + u2*du1", 3, "").unwrap()).unwrap();
    assert_eq!(v["degree"], 1);
    assert_eq!(v["dt"]["(|)"], "1");
    assert_eq!(v["plain"]["(2|1)"], "1");
    let err = classify_json("t", 2, "0").unwrap_err();
    assert!(err.contains("cocycle"), "{err}");
    assert!(classify_json("dt", 2, "x/").is_err());
}
