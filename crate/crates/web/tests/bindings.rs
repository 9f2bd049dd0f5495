use serde_json::Value;

use cograph_retract::format::format_graph6;
use cograph_retract::named;
use cograph_retract::reduction::{brute_3partition, ThreePartitionInstance};
use cograph_retract_web::{classify_text, reduce3p_text, retract_text};

fn json(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn classify_accepts_every_format() {
    let g6 = format_graph6(&named::butterfly());
    for text in ["J(0,U(J(1,2),J(3,4)))", &g6, "5\n0 1\n0 2\n0 3\n0 4\n1 2\n3 4\n"] {
        let r = json(classify_text(text).unwrap());
        assert_eq!(r["n"], 5, "{text}");
        assert_eq!(r["edges"].as_array().unwrap().len(), 6);
        assert_eq!(r["omega"], 3);
    }
    let r = json(classify_text("4\n0 1\n1 2\n2 3\n").unwrap());
    assert_eq!(r["class"]["class"], "not_cograph");
    assert!(r["cotree"].is_null());
}

#[test]
fn retract_reports_certificate() {
    let r = json(retract_text("J(0,U(J(1,2),J(3,4)))", "J(0,1,2)").unwrap());
    assert_eq!(r["verdict"], "yes");
    assert_eq!(r["route"], "tp");
    assert_eq!(r["certificate"]["rho"].as_array().unwrap().len(), 5);

    let r = json(retract_text("J(0,U(J(1,2),J(3,4)))", "J(0,U(1,J(2,3)))").unwrap());
    assert_eq!(r["verdict"], "no");
    assert_eq!(r["reason"]["kind"], "matching_deficit");

    assert!(retract_text("4\n0 1\n1 2\n2 3\n", "J(0,1)").unwrap_err().contains("P4"));
}

#[test]
fn reduction_feeds_retract() {
    for text in ["2 16\n5 5 5 5 6 6\n", "2 16\n5 5 5 5 5 7\n", "1 10\n3 3 4\n"] {
        let r = json(reduce3p_text(text).unwrap());
        let (g, h) = (r["g"].as_str().unwrap(), r["h"].as_str().unwrap());
        let yes = json(retract_text(g, h).unwrap())["verdict"] == "yes";
        let inst: ThreePartitionInstance = text.parse().unwrap();
        assert_eq!(yes, brute_3partition(&inst).is_some(), "{text}");
    }
    assert!(reduce3p_text("1 10\n1 1 1\n").is_err());
}
