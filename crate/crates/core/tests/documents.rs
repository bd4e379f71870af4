use rand::Rng;
use strandcat::io::{parse_document, print_document, print_hypergraph};
use strandcat::random::{self, Net};
use strandcat::wiring::Mode;
use strandcat::Error;

#[test]
fn random_documents_round_trip() {
    let mut rng = random::rng(20);
    for case in 0..500 {
        let n = rng.gen_range(0..=8);
        let d = random::rich(&mut rng, n, 1);
        let text = print_document(&d).unwrap_or_else(|e| panic!("case {case}: {e}\n{d}"));
        let doc = parse_document(&text).unwrap_or_else(|e| panic!("case {case}: {e}\n{text}"));
        assert_eq!(doc.diagram, d, "case {case}");
        assert_eq!(print_document(&doc.diagram).unwrap(), text, "case {case}: printing is not stable");
    }
}

#[test]
fn hypergraph_documents_round_trip() {
    let mut rng = random::rng(21);
    for case in 0..200 {
        let h = match case % 3 {
            0 => random::hypergraph(&mut rng),
            1 => Net::random(&mut rng, Mode::Symmetric, 4).hypergraph(),
            _ => Net::random(&mut rng, Mode::Markov, 4).hypergraph(),
        };
        let text = print_hypergraph(&h).unwrap();
        let doc = parse_document(&text).unwrap_or_else(|e| panic!("case {case}: {e}\n{text}"));
        assert!(doc.to_hypergraph().unwrap().is_isomorphic(&h), "case {case}");
        assert!(doc.hypergraph.is_some());
    }
}

#[test]
fn schema_errors_carry_a_path() {
    let cases = [
        (r#"{"version": "2", "body": {"expression": {"id": "x"}}}"#, "$.version"),
        (r#"{"version": "1", "body": {"expression": {"then": [{"id": "x"}, {"frob": 1}]}}}"#, "$.body.expression.then[1]"),
        (r#"{"version": "1", "body": {"layers": {"dom": "x", "layers": [{"left": "", "right": "", "box": {"kind": "box", "name": "f"}}]}}}"#, "$.body.layers.layers[0].box"),
    ];
    for (text, path) in cases {
        match parse_document(text) {
            Err(Error::Schema { path: found, .. }) => assert!(found.starts_with(path), "{found} for {text}"),
            other => panic!("expected a schema error at {path}, found {other:?}"),
        }
    }
    match parse_document(r#"{"version": "1"}"#) {
        Err(Error::Schema { path, message }) => assert!(path == "$" && message.contains("body"), "{path}: {message}"),
        other => panic!("expected a schema error, found {other:?}"),
    }
    assert!(parse_document("not json").is_err());
}
