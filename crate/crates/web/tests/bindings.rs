use serde_json::Value;

use msign_web::{commute_grid_json, realize_table_json, transport_json, MAX_RADIUS};

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn commute_grid_has_the_tau_nu_sign() {
    let v = parse(&commute_grid_json("reference", "generic", "0,-1", 3).unwrap());
    assert_eq!(v["stems"].as_array().unwrap().len(), 7);
    let row = v["rows"].as_array().unwrap().iter().find(|r| r["weight"] == 2).unwrap();
    // stem 3 sits at index 6 of -3..=3
    assert_eq!(row["units"][6], "-1");

    let v = parse(&commute_grid_json("u=eps", "generic", "0,-1", 3).unwrap());
    let row = v["rows"].as_array().unwrap().iter().find(|r| r["weight"] == 2).unwrap();
    assert_eq!(row["units"][6], "-eps");

    // at eps = -1, u = eps gives plain Koszul signs
    let v = parse(&commute_grid_json("epsilon", "-1", "1,1", 2).unwrap());
    for row in v["rows"].as_array().unwrap() {
        for (i, u) in row["units"].as_array().unwrap().iter().enumerate() {
            let stem = i as i64 - 2;
            assert_eq!(u, if stem % 2 == 0 { "1" } else { "-1" });
        }
    }
}

#[test]
fn realize_table_matches_the_known_decisions() {
    let v = parse(&realize_table_json(4).unwrap());
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 12);
    let text = |c: &str, m: &str| {
        rows.iter()
            .find(|r| r["convention"] == c && r["model"] == m)
            .unwrap()["text"]
            .as_str()
            .unwrap()
            .to_string()
    };
    assert_eq!(text("reference", "betti"), "NOT_RING_HOM witness a=(0,1) b=(1,0)");
    assert_eq!(text("epsilon", "betti"), "RING_HOM");
    assert_eq!(text("epsilon", "geometric-fixed"), "RING_HOM");
}

#[test]
fn transport_reports_the_discrepancy() {
    let v = parse(&transport_json("free-tau", "reference", "epsilon", "generic", "tau*nu").unwrap());
    assert_eq!(v["agree"], false);
    assert_eq!(v["discrepancy"], "eps");
    let v = parse(&transport_json("catalog", "reference", "epsilon", "generic", "rho*nu").unwrap());
    assert_eq!(v["agree"], true);
}

#[test]
fn bad_input_is_an_error_message() {
    assert!(commute_grid_json("nope", "generic", "0,0", 2).is_err());
    assert!(commute_grid_json("reference", "generic", "0", 2).is_err());
    assert!(commute_grid_json("reference", "generic", "0,0", MAX_RADIUS + 1).is_err());
    assert!(realize_table_json(-1).is_err());
    assert!(transport_json("nowhere", "reference", "epsilon", "generic", "eta").is_err());
    assert!(transport_json("catalog", "reference", "epsilon", "generic", "eta +").is_err());
}
