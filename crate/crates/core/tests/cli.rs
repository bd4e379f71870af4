use std::path::PathBuf;
use std::process::Command;

use strandcat::io::run_cli;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (i32, String) {
    let args = std::iter::once("strandcat".to_string()).chain(args.iter().map(|a| match a.strip_prefix('@') {
        Some(name) => fixture(name),
        None => a.to_string(),
    }));
    run_cli(args)
}

#[test]
fn check_modes() {
    let pair = ["check", "@symmetric_left.json", "@symmetric_right.json"];
    assert_eq!(run(&pair), (1, "unequal\n".into()));
    assert_eq!(run(&[&pair[..], &["--mode", "planar"]].concat()), (1, "unequal\n".into()));
    assert_eq!(run(&[&pair[..], &["--mode", "hypergraph"]].concat()), (0, "equal\n".into()));
    let spiral = ["check", "@spiral8.json", "@spiral8_dagger.json"];
    assert_eq!(run(&spiral).0, 1);
    assert_eq!(run(&[&spiral[..], &["--mode", "planar"]].concat()).0, 0);
    for side in ["@frobenius_lhs.json", "@frobenius_rhs.json"] {
        assert_eq!(run(&["check", side, "@frobenius_hypergraph.json", "--mode", "hypergraph"]).0, 0);
    }
}

#[test]
fn braids_have_no_hypergraph() {
    let (code, text) = run(&["check", "@kauffman_link.json", "@kauffman_link.json", "--mode", "hypergraph"]);
    assert_eq!(code, 3, "{text}");
    assert_eq!(run(&["check", "@kauffman_link.json", "@kauffman_link.json"]).0, 0);
    assert_eq!(run(&["props", "@kauffman_link.json"]).0, 3);
}

#[test]
fn eval_tensors() {
    assert_eq!(run(&["eval", "@peirce.json", "--model", "@peirce_model.json"]), (0, "true\n".into()));
    let (code, text) = run(&["eval", "@layered.json", "--model", "@layered_model.json"]);
    assert_eq!(code, 0);
    // f sends the single input to the identity matrix; then g ⊗ h acts on it.
    let g = [[1.0, 2.0], [3.0, 4.0]];
    let h = [[0.0, 1.0], [1.0, 0.0]];
    let mut expected = [[0.0; 2]; 2];
    for (y, z) in [(0, 0), (1, 1)] {
        for (a, row) in expected.iter_mut().enumerate() {
            for (b, entry) in row.iter_mut().enumerate() {
                *entry += g[y][a] * h[z][b];
            }
        }
    }
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let entries: Vec<Vec<f64>> = serde_json::from_value(value["entries"][0].clone()).unwrap();
    assert_eq!(entries, expected.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    let (code, text) = run(&["eval", "@nand_swap.json", "--model", "@nand_model.json"]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    let expected = c == b && d == a;
                    assert_eq!(value["entries"][a][b][c][d], expected, "{a}{b} -> {c}{d}");
                }
            }
        }
    }
}

#[test]
fn eval_functions() {
    let swap = ["eval", "@nand_swap.json", "--model", "@nand_model.json", "--semantics", "function"];
    for (a, b) in [(false, false), (false, true), (true, false), (true, true)] {
        let inputs = format!("{a},{b}");
        let (code, text) = run(&[&swap[..], &["--inputs", &inputs]].concat());
        assert_eq!((code, text), (0, format!("[{b},{a}]\n")));
    }
    let (code, text) = run(&["eval", "@golden.json", "--model", "@golden_model.json", "--semantics", "function"]);
    assert_eq!(code, 0);
    let value: Vec<f64> = serde_json::from_str(&text).unwrap();
    assert!((value[0] - 0.5 * (1.0 + 5f64.sqrt())).abs() <= 1e-9);
    assert_eq!(run(&[&swap[..], &["--inputs", "true"]].concat()).0, 2);
}

#[test]
fn props_and_normalize() {
    let (code, text) = run(&["props", "@copy_discard.json"]);
    assert_eq!(code, 0);
    assert_eq!(text, "bijective: false\nmonogamous: false\nleft-monogamous: true\ncausal: true\n");
    let (_, text) = run(&["props", "@symmetric_left.json"]);
    assert!(text.contains("monogamous: true") && text.contains("causal: true"));
    let (code, text) = run(&["normalize", "@spiral8_dagger.json"]);
    assert_eq!(code, 0);
    assert_eq!(text, run(&["normalize", "@spiral8.json"]).1);
    assert_eq!(run(&["normalize", "@golden.json", "--mode", "snake"]).0, 0);
}

#[test]
fn render_formats() {
    let (code, dot) = run(&["render", "@layered.json"]);
    assert_eq!(code, 0);
    assert_eq!(dot.matches("shape=box").count(), 3);
    assert!(dot.starts_with("digraph"));
    let (_, tikz) = run(&["render", "@layered.json", "--format", "tikz"]);
    assert!(tikz.starts_with("\\begin{tikzpicture}"));
    let tmp = tempfile::tempdir().unwrap();
    let id = tmp.path().join("id.json");
    std::fs::write(&id, r#"{"version": "1", "body": {"expression": {"id": "x"}}}"#).unwrap();
    let (_, dot) = run(&["render", id.to_str().unwrap()]);
    assert_eq!(dot, std::fs::read_to_string(fixture("id_x.dot")).unwrap());
}

#[test]
fn errors_exit_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.json");
    std::fs::write(&bad, r#"{"version": "1", "body": {"layers": {"dom": "x", "layers": [{"left": ""}]}}}"#).unwrap();
    let (code, text) = run(&["render", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(text.contains("$.body.layers.layers[0]"), "{text}");
    assert_eq!(run(&["render", "/no/such/file.json"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["eval", "@kauffman_link.json", "--model", "@peirce_model.json"]).0, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_strandcat");
    let status = |args: &[String]| Command::new(bin).args(args).output().unwrap();
    let out = status(&["check".into(), fixture("symmetric_left.json"), fixture("symmetric_right.json"), "--mode=hypergraph".into()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "equal\n");
    let out = status(&["check".into(), fixture("symmetric_left.json"), fixture("symmetric_right.json")]);
    assert_eq!(out.status.code(), Some(1));
    let out = status(&["props".into(), fixture("kauffman_link.json")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}
