//! The documents under `fixtures/` are printed from the gallery. Set
//! `STRANDCAT_BLESS=1` to rewrite them.

use std::path::PathBuf;

use strandcat::io::{parse_document, parse_model, print_document, print_hypergraph, render_dot};
use strandcat::{gallery, Diagram, Ty};

fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn diagrams() -> Vec<(&'static str, Diagram)> {
    let (symmetric_left, symmetric_right) = gallery::symmetric_pair();
    let (frobenius_lhs, frobenius_rhs) = gallery::frobenius_pair();
    let spiral = gallery::spiral(8).unwrap();
    vec![
        ("layered.json", gallery::layered()),
        ("nand_swap.json", gallery::circuits().swap),
        ("spiral8.json", spiral.clone()),
        ("spiral8_dagger.json", spiral.dagger()),
        ("golden.json", gallery::golden_ratio()),
        ("kauffman_link.json", gallery::kauffman_link()),
        ("symmetric_left.json", symmetric_left),
        ("symmetric_right.json", symmetric_right),
        ("copy_discard.json", gallery::copy_discard()),
        ("frobenius_lhs.json", frobenius_lhs),
        ("frobenius_rhs.json", frobenius_rhs),
        ("peirce.json", gallery::peirce_formula()),
    ]
}

fn expected() -> Vec<(&'static str, String)> {
    let mut files: Vec<(&str, String)> = diagrams()
        .into_iter()
        .map(|(name, d)| (name, print_document(&d).unwrap()))
        .collect();
    files.push(("frobenius_hypergraph.json", print_hypergraph(&gallery::frobenius_hypergraph()).unwrap()));
    files.push(("id_x.dot", render_dot(&Diagram::id(Ty::from("x")))));
    files
}

#[test]
fn fixtures_match_the_gallery() {
    let bless = std::env::var("STRANDCAT_BLESS").is_ok_and(|v| v == "1");
    for (name, text) in expected() {
        if bless {
            std::fs::write(path(name), &text).unwrap();
            continue;
        }
        let found = std::fs::read_to_string(path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(found, text, "{name} is stale; rerun with STRANDCAT_BLESS=1");
    }
}

#[test]
fn fixtures_parse_back() {
    for (name, d) in diagrams() {
        let doc = parse_document(&std::fs::read_to_string(path(name)).unwrap()).unwrap();
        assert_eq!(doc.diagram, d, "{name}");
        assert!(doc.structure.is_some() || d.structure().is_err(), "{name}");
    }
    let text = std::fs::read_to_string(path("frobenius_hypergraph.json")).unwrap();
    let h = parse_document(&text).unwrap().to_hypergraph().unwrap();
    assert!(h.is_isomorphic(&gallery::frobenius_hypergraph()));
}

#[test]
fn models_parse() {
    for name in ["nand_model.json", "golden_model.json", "peirce_model.json", "layered_model.json"] {
        parse_model(&std::fs::read_to_string(path(name)).unwrap()).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
