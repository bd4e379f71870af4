//! Feedback as a fixed point: x = 1 + 1/x.

use strandcat::gallery;
use strandcat::semantics::{fixpoint, Value};
use strandcat::{DiagramBox, Side};

fn main() -> strandcat::Result<()> {
    let d = gallery::golden_ratio();
    let model = gallery::golden_functions();
    println!("{d}");

    let out = model.eval(&d)?.call(&[])?;
    println!("value: {}", out[0]);

    if let Some(DiagramBox::Trace(t)) = d.boxes().next() {
        let body = model.eval(&t.body)?;
        let (_, runs) = fixpoint(&body, &[], &[Value::Int(1)], Side::Right, 1e-12, 1000)?;
        println!("converged after {runs} iterations");
    }
    Ok(())
}
