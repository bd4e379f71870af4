//! Interchangers and the planar normal form, on the spiral.

use strandcat::{gallery, Equality};

fn main() -> strandcat::Result<()> {
    let spiral = gallery::spiral(8)?;
    let dagger = spiral.dagger();
    println!("spiral:  {spiral}");
    println!("dagger:  {dagger}");
    println!("syntactically equal: {}", spiral.equal(&dagger, Equality::Syntactic)?);
    println!("planar equal:        {}", spiral.equal(&dagger, Equality::Planar)?);

    let d = spiral.split_layers();
    for i in 0..d.layers().len() - 1 {
        println!("layers {i} and {}: {:?}", i + 1, d.interchange_sides(i));
    }
    println!("normal form: {}", spiral.normal_form());
    Ok(())
}
