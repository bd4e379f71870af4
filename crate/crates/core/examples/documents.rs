//! Writing a diagram as a JSON document, reading it back and rendering it.

use strandcat::gallery;
use strandcat::io::{parse_document, print_document, render_dot, render_tikz};

fn main() -> strandcat::Result<()> {
    let d = gallery::layered();
    let text = print_document(&d)?;
    println!("{text}");
    let doc = parse_document(&text)?;
    assert_eq!(doc.diagram, d);
    println!("{}", render_dot(&d));
    println!("{}", render_tikz(&d));

    let broken = r#"{"version": "1", "body": {"layers": {"dom": "x", "layers": [{"left": "", "right": ""}]}}}"#;
    if let Err(e) = parse_document(broken) {
        println!("{e}");
    }
    Ok(())
}
