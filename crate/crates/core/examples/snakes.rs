//! Transposes with cups and caps, and straightening the zigzags again.

use strandcat::gen;
use strandcat::structure::{snake_removal, transpose_l, transpose_r};

fn main() -> strandcat::Result<()> {
    let f = gen("f", "a b", "c");
    let r = transpose_r(&f)?;
    println!("right transpose: {} -> {}", r.dom(), r.cod());
    let bent = transpose_l(&r)?;
    println!("bent:     {bent}");
    let straight = snake_removal(&bent)?;
    println!("straight: {straight}");
    assert_eq!(straight, f);
    println!("structure needed by the bent diagram: {:?}", bent.structure()?);
    Ok(())
}
