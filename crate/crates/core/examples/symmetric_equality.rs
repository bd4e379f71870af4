//! Two layouts of the same symmetric diagram: different layers, isomorphic
//! hypergraphs.

use strandcat::{gallery, Equality, Hypergraph};

fn main() -> strandcat::Result<()> {
    let (left, right) = gallery::symmetric_pair();
    println!("left:  {left}");
    println!("right: {right}");
    println!("syntactic:  {}", left.equal(&right, Equality::Syntactic)?);
    println!("hypergraph: {}", left.equal(&right, Equality::Hypergraph)?);
    let h = Hypergraph::from_diagram(&left)?;
    println!("{} spiders, monogamous {}, causal {}", h.n_spiders(), h.is_monogamous(), h.is_causal());
    Ok(())
}
