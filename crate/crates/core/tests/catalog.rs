use gkforge::catalog::*;
use gkforge::Error;

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn parse_error(text: &str) -> String {
    match parse(text) {
        Err(Error::Parse(msg)) => msg,
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn malformed_fixtures_name_field_and_line() {
    let cases = [
        ("antisymmetry_conflict.json", "line 6: brackets[1]", "antisymmetry"),
        ("repeated_h_index.json", "line 5: H[0]", "repeated index"),
        ("index_out_of_range.json", "line 4: brackets[0]", "out of range"),
        ("bad_rational.json", "line 4: brackets[0]", "malformed rational `1/x`"),
        ("nonclosed_h.json", "line 5: H", "not closed"),
    ];
    for (file, at, what) in cases {
        let msg = parse_error(&fixture(file));
        assert!(msg.starts_with(at), "{file}: {msg}");
        assert!(msg.contains(what), "{file}: {msg}");
    }
}

#[test]
fn parsed_but_invalid_fixtures() {
    let e = parse(&fixture("jacobi_failure.json")).unwrap();
    assert!(!e.evaluate("jacobi").unwrap());
    let e = parse(&fixture("bad_structure.json")).unwrap();
    assert!(!e.evaluate("gcs:flip").unwrap());
    assert!(e.gcs("flip").is_err());
}

#[test]
fn structural_errors() {
    let base = |extra: &str| {
        format!(r#"{{"name": "x", "dim": 2, "brackets": [], "H": [], "structures": [{extra}]}}"#)
    };
    let msg = parse_error(&base(r#"{"name": "J", "J": [["0","1"],["-1","0"]]}"#));
    assert!(msg.contains("structures[0]"), "{msg}");
    let msg = parse_error(&base(r#"{"name": "p", "pair": ["a", "b"]}"#));
    assert!(msg.contains("unknown"), "{msg}");
    let j = r#"[["0","0","-1","0"],["0","0","0","-1"],["1","0","0","0"],["0","1","0","0"]]"#;
    let msg = parse_error(&base(&format!(r#"{{"name": "a", "J": {j}}}, {{"name": "a", "J": {j}}}"#)));
    assert!(msg.contains("duplicate"), "{msg}");
    assert!(parse("{").is_err());
    assert!(parse(r#"{"name": "x", "dim": 0, "brackets": [], "H": [], "structures": []}"#).is_err());
    // integers are accepted as scalars
    assert!(parse(r#"{"name": "x", "dim": 3, "brackets": [{"i": 1, "j": 2, "k": 3, "c": -2}], "H": [], "structures": []}"#).is_ok());
}

#[test]
fn every_builtin_round_trips_and_meets_expectations() {
    for name in builtin_names() {
        let e = builtin(name).unwrap();
        let text = serialize(&e);
        let back = parse(&text).unwrap();
        assert_eq!(serialize(&back), text, "{name}");
        assert_eq!(back.algebra, e.algebra);
        assert_eq!(back.twist, e.twist);
        for (key, want, got) in e.check_expected().unwrap() {
            assert_eq!(want, got, "{name}: {key}");
        }
    }
}

#[test]
fn builtin_lookup() {
    match builtin("nope") {
        Err(Error::UnknownEntry { name, available }) => {
            assert_eq!(name, "nope");
            assert!(available.contains("t4kahler"));
        }
        other => panic!("{other:?}"),
    }
    for n in ["ab2", "ab3", "ab4", "ab5", "ab6"] {
        assert!(builtin(n).unwrap().algebra.is_abelian());
    }
}

#[test]
fn unknown_expectation_key() {
    let e = builtin("ab2").unwrap();
    assert!(e.evaluate("gk:missing").is_err());
    assert!(e.evaluate("frobnicate").is_err());
}
