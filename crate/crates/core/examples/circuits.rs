//! A swap built from NAND gates, run as a function and as a boolean matrix.

use strandcat::gallery;
use strandcat::semantics::Value;

fn main() -> strandcat::Result<()> {
    let circuits = gallery::circuits();
    let swap = circuits.swap;
    println!("{} gates in the swap circuit", swap.count_boxes());

    let f = gallery::circuit_functions().eval(&swap)?;
    for (a, b) in [(false, false), (false, true), (true, false), (true, true)] {
        let out = f.call(&[Value::Bool(a), Value::Bool(b)])?;
        println!("swap({a}, {b}) = ({}, {})", out[0], out[1]);
    }

    let t = gallery::circuit_tensors().eval(&swap)?;
    println!("as a relation:");
    for i in 0..4 {
        let row: Vec<u8> = (0..4).map(|j| u8::from(*t.get(i, j))).collect();
        println!("  {row:?}");
    }
    Ok(())
}
