//! Building diagrams from boxes, composing them and reading off their layers.

use strandcat::{gen, Diagram, Ty};

fn main() -> strandcat::Result<()> {
    let f = gen("f", "x", "y z");
    let g = gen("g", "y", "z");
    let h = gen("h", "z", "z");
    let d = f.then(&g.tensor(&h))?;
    println!("{d}");
    println!("dom {}  cod {}  boxes {}", d.dom(), d.cod(), d.count_boxes());
    for (i, layer) in d.layers().iter().enumerate() {
        println!("layer {i}: {layer}");
    }
    println!("dagger: {}", d.dagger());

    let x = Ty::from("x");
    assert_eq!(Diagram::id(x).then(&d)?, d);
    match d.then(&f) {
        Err(e) => println!("expected error: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
