//! Expanding the braids of a link into a formal sum with the Kauffman rule,
//! then evaluating it as a polynomial in A.

use strandcat::gallery;
use strandcat::semantics::{Poly, RigTensor, TensorModel};
use strandcat::structure::{expand_braiding, kauffman_rule};

fn main() -> strandcat::Result<()> {
    let link = gallery::kauffman_link();
    println!("link: {link}");
    let sum = expand_braiding(&link, kauffman_rule())?;
    for (i, term) in sum.terms().iter().enumerate() {
        println!("term {i}: {term}");
    }
    let model = TensorModel::<Poly>::new()
        .object("x", vec![2])
        .arrow("A", RigTensor::scalar(Poly::var()));
    let value = model.functor().apply_sum(&sum)?;
    println!("bracket with loops of weight 2: {}", value.entries()[0]);
    Ok(())
}
