use gbtk_wasm::{analyze, embedding_svg, qhp_map};
use serde_json::Value;

const CODE42: &str = r#"{"q":2,"l":21,"a":[0,3,6,12],"b":[0,7]}"#;

#[test]
fn analyze_exact_and_estimated() {
    let v: Value = serde_json::from_str(&analyze(CODE42, 0, 0).unwrap()).unwrap();
    assert_eq!((v["n"].as_u64(), v["k"].as_u64(), v["d"].as_u64()), (Some(42), Some(8), Some(3)));
    assert_eq!(v["exact"], true);
    let v: Value = serde_json::from_str(&analyze(CODE42, 500, 1).unwrap()).unwrap();
    assert_eq!(v["exact"], false);
    assert!(v["d"].as_u64().unwrap() >= 3);
}

#[test]
fn analyze_rejects_large_work() {
    let big = r#"{"q":2,"l":28,"a":[0,1,2,4],"b":[0,19]}"#;
    assert!(analyze(big, 0, 0).unwrap_err().contains("budget"));
    assert!(analyze(big, 1_000_000, 0).is_err());
    assert!(analyze("{", 0, 0).is_err());
}

#[test]
fn qhp_map_code42() {
    let v: Value = serde_json::from_str(&qhp_map(2, "1+x+x^2+x^4", 7, "1+x", 3).unwrap()).unwrap();
    assert_eq!(v["a"], "1+x^3+x^6+x^12");
    assert_eq!(v["b"], "1+x^7");
    assert_eq!(v["k"], 8);
    assert!(qhp_map(2, "1+x", 4, "1+x", 6).is_err());
}

#[test]
fn svg_output() {
    let svg = embedding_svg(CODE42, false).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(embedding_svg(r#"{"q":2,"l":10,"a":[0,2],"b":[0,6]}"#, false).is_err());
}
