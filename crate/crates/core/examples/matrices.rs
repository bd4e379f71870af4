//! Relations under direct sum, where the trace is reachability.

use strandcat::semantics::{MatrixCategory, RigMatrix};
use strandcat::{Category, Monoidal, Side};

fn main() -> strandcat::Result<()> {
    // A 3-state graph: 0 -> 1 -> 2 -> 1.
    let edges = [(0, 1), (1, 2), (2, 1)];
    let graph = RigMatrix::from_fn(3, 3, |i, j| edges.contains(&(i, j)));
    let star = graph.star()?;
    for i in 0..3 {
        let row: Vec<u8> = (0..3).map(|j| u8::from(*star.get(i, j))).collect();
        println!("reachable from {i}: {row:?}");
    }
    let category = MatrixCategory::<bool>::new();
    let looped = category.tensor(&category.id(&1), &graph)?;
    let traced = category.trace(&looped, &1, Side::Left)?;
    println!("trace keeps {} x {}", traced.dom(), traced.cod());
    Ok(())
}
