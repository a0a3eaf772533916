use parkfn_web::{explore, histogram, identity};
use serde_json::Value;

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.unwrap()).unwrap()
}

#[test]
fn explore_reproduces_the_involution_examples() {
    let v = parse(explore("(8,4,5,1,2,1,1,5,6)", 0));
    assert_eq!(v["theta_hat"], "(5,8,2,2,1,5,5,4,9)");
    assert_eq!(v["rho_hat"], "(5,8,3,1,2,5,5,3,9)");
    assert_eq!(v["lel"], v["degp"]);
}

#[test]
fn explore_forest_without_involutions() {
    let v = parse(explore("(1,4,6,1,8,3,11,8,6)", 12));
    assert_eq!(v["deg0"], 4);
    assert!(v.get("rho_hat").is_none());
    assert!(explore("(3,3)", 0).is_err());
}

#[test]
fn histogram_tracks_the_exact_law() {
    let v = parse(histogram("lel", 6, 8, 20_000, 1));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    let exact: f64 = rows.iter().map(|r| r["exact"].as_f64().unwrap()).sum();
    assert!((exact - 1.0).abs() < 1e-12);
    for r in rows {
        assert!((r["sampled"].as_f64().unwrap() - r["exact"].as_f64().unwrap()).abs() < 0.02);
    }
    assert!(histogram("ones", 3, 3, 10, 0).is_err());
    assert!(histogram("lel", 3, 3, 0, 0).is_err());
    assert!(histogram("lel", 5, 3, 10, 0).is_err());
}

#[test]
fn identity_checks() {
    assert_eq!(parse(identity("master-pf1", 4, 6, 0, 0))["equal"], true);
    assert_eq!(parse(identity("prop-ab", 3, 0, 2, 2))["equal"], true);
    assert!(identity("nope", 3, 3, 0, 0).is_err());
}
