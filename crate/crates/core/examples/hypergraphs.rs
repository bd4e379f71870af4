//! Diagrams with spiders, cups and caps as hypergraphs, and back.

use strandcat::hypergraph::Layout;
use strandcat::{gallery, Hypergraph};

fn main() -> strandcat::Result<()> {
    let (lhs, rhs) = gallery::frobenius_pair();
    let expected = gallery::frobenius_hypergraph();
    let h = Hypergraph::from_diagram(&lhs)?;
    println!("spiders {}, isolated {:?}", h.n_spiders(), h.isolated_spiders());
    println!("lhs matches: {}", h.is_isomorphic(&expected));
    println!("rhs matches: {}", Hypergraph::from_diagram(&rhs)?.is_isomorphic(&expected));
    println!(
        "bijective {}, monogamous {}, left-monogamous {}, causal {}",
        h.is_bijective(),
        h.is_monogamous(),
        h.is_left_monogamous(),
        h.is_causal()
    );
    for layout in [Layout::Auto, Layout::Frobenius] {
        let d = expected.to_diagram_with(layout)?;
        println!("{layout:?} layout with {} boxes: {d}", d.count_boxes());
    }
    Ok(())
}
