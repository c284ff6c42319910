use permuto_web::{mu_table_json, pair_json, reduce_json, MAX_PAIR_N, MAX_TABLE_N};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn table_has_every_cell() {
    let rows = parse(mu_table_json(4).unwrap());
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2 + 3 + 4 + 5);
    let cell = rows.iter().find(|r| r["n"] == 4 && r["k"] == 2).unwrap();
    assert_eq!(cell["mu"]["text"], "13/12");
    assert_eq!(cell["chern_number"], "130");
    assert_eq!(parse(mu_table_json(0).unwrap()), Value::Array(vec![]));
    assert!(mu_table_json(MAX_TABLE_N + 1).is_err());
}

#[test]
fn reduce_traces_and_vanishing() {
    let trace = parse(reduce_json("2,0,1,2,0,0,2,0,2,1").unwrap());
    assert_eq!(trace["coefficient"]["text"], "1/12");
    assert_eq!(trace["steps"].as_array().unwrap().len(), 3);

    let dead = parse(reduce_json("0,1,2,0,2,0,2,1,0,2").unwrap());
    assert_eq!(dead["vanishes"], true);
    assert_eq!(dead["pattern"]["start"], 3);
    assert_eq!(dead["pattern"]["end"], 7);

    assert!(reduce_json("2,2").is_err());
    assert!(reduce_json("").is_err());
}

#[test]
fn pairing_matches_closed_forms() {
    let chern = parse(pair_json("", 4, 2).unwrap());
    assert_eq!(chern["pairing"]["text"], "130");
    assert_eq!(chern["agree"], true);

    let monomial = parse(pair_json("2,0", 0, 0).unwrap());
    assert_eq!(monomial["pairing"]["text"], "-3");
    assert_eq!(monomial["fixed_points"], "6");

    assert!(pair_json("", MAX_PAIR_N + 1, 0).is_err());
    assert!(pair_json("", 3, 4).is_err());
    assert!(pair_json("1,1,1,1,1,1,1,1", 0, 0).is_err());
}
