use cdgl_core::cosimplicial::{build_ln, default_truncation};
use cdgl_core::lie::format::{parse_presentation, write_presentation};

const GOLDEN: [&str; 5] = [
    include_str!("../golden/L0.json"),
    include_str!("../golden/L1.json"),
    include_str!("../golden/L2.json"),
    include_str!("../golden/L3.json"),
    include_str!("../golden/L4.json"),
];

#[test]
fn builds_match_the_golden_files() {
    for (n, golden) in GOLDEN.iter().enumerate() {
        let text = build_ln(n, default_truncation(n)).unwrap().to_text();
        assert!(text == *golden, "L{n} differs from its golden file");
    }
}

#[test]
fn golden_files_round_trip_exactly() {
    for (n, golden) in GOLDEN.iter().enumerate() {
        let (p, extra) = parse_presentation(golden).unwrap();
        assert!(p.check_d_squared().passed(), "L{n}");
        let extras: Vec<(&str, serde_json::Value)> = extra.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
        assert!(write_presentation(&p, &extras) == *golden, "L{n} does not round-trip");
    }
}

#[test]
fn trace_records_the_solver_per_level() {
    let (_, extra) = parse_presentation(GOLDEN[4]).unwrap();
    let methods: Vec<&str> = extra["trace"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["method"].as_str().unwrap())
        .collect();
    assert_eq!(methods, ["fixed", "fixed", "triangular", "triangular", "triangular"]);
}
