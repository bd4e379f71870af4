//! Applying boxes to named wires and letting the session insert the copies,
//! discards and swaps.

use strandcat::wiring::{Mode, Session};
use strandcat::{gen, Ty};

fn main() -> strandcat::Result<()> {
    let f = gen("f", "x x", "y");
    let (mut s, ports) = Session::open(Ty::from("x x"), Ty::from("y"), Mode::Markov);
    let (a, b) = (&ports[0], &ports[1]);
    s.apply(&f, &[b.clone(), a.clone()])?;
    let out = s.apply(&f, &[a.clone(), b.clone()])?;
    println!("port a used {} times", s.use_count(a));
    let d = s.finalize(&out)?;
    println!("{d}");

    let (mut s, ports) = Session::open(Ty::from("x x"), Ty::from("y"), Mode::Symmetric);
    s.apply(&f, &[ports[0].clone(), ports[1].clone()])?;
    match s.apply(&f, &[ports[0].clone(), ports[1].clone()]) {
        Err(e) => println!("symmetric sessions are linear: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
