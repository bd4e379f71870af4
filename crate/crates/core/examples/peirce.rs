//! A first-order formula drawn with spiders and negation bubbles, evaluated
//! in a boolean model.

use strandcat::gallery;

fn main() -> strandcat::Result<()> {
    let formula = gallery::peirce_formula();
    println!("{formula}");
    let value = gallery::peirce_model().eval(&formula)?;
    println!("true in the model: {}", value.entries()[0]);
    Ok(())
}
