use serde_json::Value;

use pellkit_web::{cf_expansion, family_witnesses, oracle_pairs};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).expect("bindings return JSON")
}

#[test]
fn expansion_of_34() {
    let v = parse(cf_expansion("34"));
    assert_eq!(v["ok"], true);
    assert_eq!(v["a0"], "5");
    assert_eq!(v["period"], serde_json::json!(["1", "4", "1", "10"]));
    assert_eq!((v["x"].as_str(), v["y"].as_str()), (Some("35"), Some("6")));
    assert_eq!(v["pqa"].as_array().unwrap().len(), 5);
}

#[test]
fn expansion_errors_are_reported() {
    for bad in ["49", "1", "abc", ""] {
        let v = parse(cf_expansion(bad));
        assert_eq!(v["ok"], false, "{bad}");
        assert!(v["error"].as_str().is_some());
    }
}

#[test]
fn family_lists() {
    let v = parse(family_witnesses("4", "2", 2));
    assert_eq!(v["ok"], true);
    let ws = v["witnesses"].as_array().unwrap();
    assert_eq!(
        (
            ws[0]["n"].as_str(),
            ws[0]["d1"].as_str(),
            ws[0]["d2"].as_str()
        ),
        (Some("7"), Some("5"), Some("25"))
    );
    assert_eq!(ws[1]["n"], "807");

    let v = parse(family_witnesses("2", "0", 3));
    let ns: Vec<&str> = v["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w["n"].as_str().unwrap())
        .collect();
    assert_eq!(ns, ["3", "17", "99"]);
}

#[test]
fn family_rejections() {
    assert_eq!(parse(family_witnesses("2", "2", 3))["ok"], false);
    assert_eq!(parse(family_witnesses("6", "0", 3))["ok"], false);
    assert_eq!(parse(family_witnesses("2", "4", 0))["ok"], false);
    assert_eq!(parse(family_witnesses("2", "4", 99))["ok"], false);
    assert_eq!(parse(family_witnesses("-2", "4", 3))["ok"], false);
}

#[test]
fn oracle_on_807() {
    let v = parse(oracle_pairs("807", "4", "2"));
    assert_eq!(v["ok"], true);
    assert_eq!(v["m"], "325625");
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 1);
    assert_eq!(
        (pairs[0]["d1"].as_str(), pairs[0]["d2"].as_str()),
        (Some("625"), Some("2605"))
    );
}

#[test]
fn oracle_limits() {
    assert_eq!(parse(oracle_pairs("8", "2", "0"))["ok"], false);
    assert_eq!(parse(oracle_pairs("1000000000001", "2", "0"))["ok"], false);
    assert_eq!(parse(oracle_pairs("999999999999", "2", "0"))["ok"], true);
}
