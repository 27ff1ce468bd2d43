use domred_web::{layout_json, minimum_set_json, random_dimacs, verify_json};
use serde_json::Value;

const SAMPLE: &str = "p cnf 4 3\n1 2 -3 0\n-1 2 4 0\n-2 3 4 0\n";

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.unwrap()).unwrap()
}

#[test]
fn layout_places_every_vertex_inside_the_canvas() {
    for kind in [
        "bondage",
        "total-bondage",
        "reinforcement",
        "total-reinforcement",
    ] {
        let l = parse(layout_json(kind, SAMPLE));
        let (w, h) = (l["width"].as_f64().unwrap(), l["height"].as_f64().unwrap());
        let vs = l["vertices"].as_array().unwrap();
        let mut seen = Vec::new();
        for v in vs {
            let (x, y) = (v["x"].as_f64().unwrap(), v["y"].as_f64().unwrap());
            assert!(x > 0.0 && x < w && y > 0.0 && y < h, "{kind}: {v}");
            assert!(seen
                .iter()
                .all(|&(a, b): &(f64, f64)| (a - x).abs() + (b - y).abs() > 20.0));
            seen.push((x, y));
        }
        let labels: Vec<&str> = vs.iter().map(|v| v["label"].as_str().unwrap()).collect();
        for e in l["edges"].as_array().unwrap() {
            assert!(labels.contains(&e[0].as_str().unwrap()));
            assert!(labels.contains(&e[1].as_str().unwrap()));
        }
    }
    let l = parse(layout_json("bondage", SAMPLE));
    assert_eq!(l["vertices"].as_array().unwrap().len(), 30);
    assert_eq!(l["edges"].as_array().unwrap().len(), 41);
}

#[test]
fn toggling_edges_changes_the_minimum() {
    let r = parse(minimum_set_json("bondage", SAMPLE, ""));
    assert_eq!(
        (r["measure"].as_str(), r["value"].as_u64()),
        (Some("gamma"), Some(9))
    );
    assert_eq!(r["decoded_satisfies"], true);
    let r = parse(minimum_set_json("bondage", SAMPLE, r#"[["s1","s2"]]"#));
    assert_eq!(r["value"], 10);
    let r = parse(minimum_set_json(
        "bondage",
        SAMPLE,
        r#"[["s1","s2"],["s2","s1"]]"#,
    ));
    assert_eq!(r["value"], 9);
    let r = parse(minimum_set_json(
        "total-reinforcement",
        SAMPLE,
        r#"[["u1","s2"]]"#,
    ));
    assert_eq!(
        (r["measure"].as_str(), r["value"].as_u64()),
        (Some("gamma_t"), Some(9))
    );
}

#[test]
fn errors_are_messages() {
    assert!(layout_json("nope", SAMPLE)
        .unwrap_err()
        .contains("unknown kind"));
    assert!(layout_json("bondage", "p cnf 4 1\n1 2 0\n").is_err());
    assert!(minimum_set_json("bondage", SAMPLE, "[[")
        .unwrap_err()
        .starts_with("bad edge list"));
    assert!(minimum_set_json("bondage", SAMPLE, r#"[["s1","zz"]]"#).is_err());
    assert!(random_dimacs(2, 1, 0).is_err());
}

#[test]
fn verify_and_random_instances() {
    let r = parse(verify_json("total-bondage", SAMPLE, true));
    assert_eq!(r["pass"], true);
    let dimacs = random_dimacs(4, 5, 9).unwrap();
    assert!(dimacs.starts_with("p cnf 4 5\n"));
    assert_eq!(dimacs, random_dimacs(4, 5, 9).unwrap());
}
