//! Ready-made diagrams: circuits, feedback loops, links, logic formulas and
//! the small examples used throughout the documentation.

use crate::error::Result;
use crate::free_category::Ob;
use crate::hypergraph::Hypergraph;
use crate::planar::{gen, Diagram, DiagramBox, Side, Ty};
use crate::semantics::{builtin, FunctionModel, Kind, RigTensor, TensorModel, Value, Wire};
use crate::structure::Structural;

pub use crate::planar::spiral;

fn ty(s: &str) -> Ty {
    Ty::from(s)
}

fn id(s: &str) -> Diagram {
    Diagram::id(ty(s))
}

fn boxed(s: Structural) -> Diagram {
    Diagram::from(s)
}

fn chain(parts: &[Diagram]) -> Result<Diagram> {
    let (first, rest) = parts.split_first().expect("at least one part");
    Diagram::then_all(first, rest)
}

/// `f ; g ⊗ h` with `f: x -> y z`, `g: y -> z`, `h: z -> z`: three layers.
pub fn layered() -> Diagram {
    let f = gen("f", "x", "y z");
    let g = gen("g", "y", "z");
    let h = gen("h", "z", "z");
    f.then(&g.tensor(&h)).expect("types match")
}

/// Circuits of `NAND: bit bit -> bit` and `COPY: bit -> bit bit` gates.
#[derive(Clone, Debug)]
pub struct Circuits {
    pub nand: Diagram,
    pub copy: Diagram,
    pub xor: Diagram,
    pub cnot: Diagram,
    pub notc: Diagram,
    pub swap: Diagram,
}

pub fn circuits() -> Circuits {
    let nand = gen("NAND", "bit bit", "bit");
    let copy = gen("COPY", "bit", "bit bit");
    let bit = id("bit");
    let xor = chain(&[
        copy.tensor(&copy),
        Diagram::tensor_all(&[bit.clone(), nand.then(&copy).unwrap(), bit.clone()]),
        nand.tensor(&nand),
        nand.clone(),
    ])
    .unwrap();
    let cnot = copy.tensor(&bit).then(&bit.tensor(&xor)).unwrap();
    let notc = bit.tensor(&copy).then(&xor.tensor(&bit)).unwrap();
    let swap = chain(&[cnot.clone(), notc.clone(), cnot.clone()]).unwrap();
    Circuits {
        nand,
        copy,
        xor,
        cnot,
        notc,
        swap,
    }
}

/// Gates as functions on booleans.
pub fn circuit_functions() -> FunctionModel {
    FunctionModel::new()
        .object("bit", Wire::new(Kind::Bool))
        .arrow("NAND", builtin("nand", 2, 1).unwrap())
        .arrow("COPY", builtin("copy", 1, 2).unwrap())
}

/// Gates as boolean matrices, with `bit` of dimension 2.
pub fn circuit_tensors() -> TensorModel<bool> {
    let nand = RigTensor::new(vec![2, 2], vec![2], (0..8).map(|k| (k >> 1 != 3) == (k & 1 == 1)).collect()).unwrap();
    let copy = RigTensor::spiders(1, 2, &[2]);
    TensorModel::new().object("bit", vec![2]).arrow("NAND", nand).arrow("COPY", copy)
}

/// The trace of `(one ; copy) ⊗ x ; x ⊗ div ; add ; copy` on its right wire,
/// whose fixed point is the golden ratio.
pub fn golden_ratio() -> Diagram {
    let add = gen("+", "x x", "x");
    let div = gen("/", "x x", "x");
    let copy = gen("copy", "x", "x x");
    let one = gen("1", "", "x");
    let x = id("x");
    let body = chain(&[one.then(&copy).unwrap().tensor(&x), x.tensor(&div), add, copy]).unwrap();
    body.trace(1, Side::Right).unwrap()
}

/// Functions for [`golden_ratio`], seeding the feedback wire with 1.
pub fn golden_functions() -> FunctionModel {
    FunctionModel::new()
        .object("x", Wire::new(Kind::Float).seeded(Value::Int(1)))
        .arrow("+", builtin("add", 2, 1).unwrap())
        .arrow("/", builtin("div", 2, 1).unwrap())
        .arrow("copy", builtin("copy", 1, 2).unwrap())
        .arrow("1", builtin("one", 0, 1).unwrap())
}

/// A two-crossing link drawn with cups, caps and braids on `x` and `x.r`.
pub fn kauffman_link() -> Diagram {
    let x = Ob::new("x");
    let xr = Diagram::id(Ty::from(x.r()));
    let xx = id("x");
    let cup = boxed(Structural::cup(x.r(), x.clone()).unwrap());
    let cap = boxed(Structural::cap(x.r(), x.clone()).unwrap());
    let braids = boxed(Structural::braid(x.r(), x.r())).tensor(&boxed(Structural::braid(x.clone(), x.clone())));
    chain(&[
        cap.clone(),
        Diagram::tensor_all(&[xr.clone(), cap, xx.clone()]),
        braids,
        Diagram::tensor_all(&[xr, cup.clone(), xx]),
        cup,
    ])
    .unwrap()
}

/// `f ; Swap(y, z) ; g ⊗ h` and `f ; h ⊗ g ; Swap(z, x)`: different layers,
/// the same hypergraph.
pub fn symmetric_pair() -> (Diagram, Diagram) {
    let f = gen("f", "x", "y z");
    let g = gen("g", "z", "x");
    let h = gen("h", "y", "z");
    let left = chain(&[f.clone(), boxed(Structural::swap("y", "z")), g.tensor(&h)]).unwrap();
    let right = chain(&[f, h.tensor(&g), boxed(Structural::swap("z", "x"))]).unwrap();
    (left, right)
}

/// `Copy(x) ⊗ Copy(x) ; x ⊗ (Swap(x, x) ; f ; Discard(y)) ⊗ x ; f` for
/// `f: x x -> y`.
pub fn copy_discard() -> Diagram {
    let f = gen("f", "x x", "y");
    let copy = boxed(Structural::copy("x", 2));
    let middle = chain(&[boxed(Structural::swap("x", "x")), f.clone(), boxed(Structural::discard("y"))]).unwrap();
    chain(&[
        copy.tensor(&copy),
        Diagram::tensor_all(&[id("x"), middle, id("x")]),
        f,
    ])
    .unwrap()
}

/// Two composites of spiders, cups and caps with `f: x -> y` and
/// `g: y y -> x` that share the hypergraph [`frobenius_hypergraph`].
pub fn frobenius_pair() -> (Diagram, Diagram) {
    let f = gen("f", "x", "y");
    let g = gen("g", "y y", "x");
    let (x, y) = (id("x"), id("y"));
    let cap = |o: &str| boxed(Structural::cap(o, o).unwrap());
    let cup = |o: &str| boxed(Structural::cup(o, o).unwrap());
    let spider = |a, b| boxed(Structural::spider(a, b, "x"));
    let lhs = chain(&[
        boxed(Structural::swap("y", "x")),
        Diagram::tensor_all(&[x.clone(), cap("x"), y.clone()]),
        Diagram::tensor_all(&[spider(2, 2), f.clone(), y.clone()]),
        Diagram::tensor_all(&[x.clone(), x.clone(), g.clone()]),
        Diagram::tensor_all(&[x.clone(), cup("x"), spider(0, 0)]),
    ])
    .unwrap();
    let rhs = chain(&[
        Diagram::tensor_all(&[cap("y"), y.clone(), x.clone()]),
        Diagram::tensor_all(&[y.clone(), g, x.clone()]),
        Diagram::tensor_all(&[y.clone(), spider(2, 2), cap("x")]),
        Diagram::tensor_all(&[y.clone(), f, x.clone(), cup("x")]),
        cup("y").tensor(&x),
    ])
    .unwrap();
    (lhs, rhs)
}

/// Spiders `a: x`, `b: y`, `c: y` and an isolated `d: x`, with
/// `dom = (c, a)`, `f: a -> b`, `g: b c -> a` and `cod = (a)`.
pub fn frobenius_hypergraph() -> Hypergraph {
    let f = DiagramBox::Gen(crate::free_category::Generator::new("f", ty("x"), ty("y")));
    let g = DiagramBox::Gen(crate::free_category::Generator::new("g", ty("y y"), ty("x")));
    Hypergraph::labelled(
        ty("y x"),
        ty("x"),
        vec![f, g],
        &['c', 'a'],
        &[(vec!['a'], vec!['b']), (vec!['b', 'c'], vec!['a'])],
        &['a'],
        &[('a', Ob::new("x")), ('b', Ob::new("y")), ('c', Ob::new("y")), ('d', Ob::new("x"))],
    )
    .unwrap()
}

/// "There is exactly one x with G(x), and some z with M(z) and P(z, x)":
/// predicates are states, spiders are variables and bubbles are negation.
pub fn peirce_formula() -> Diagram {
    let g = gen("G", "", "n");
    let m = gen("M", "", "n");
    let p = gen("P", "", "n n");
    let n = id("n");
    let unique = n.bubble("cut").then(&g.dagger()).unwrap().bubble("cut");
    let related = m.tensor(&n).then(&p.dagger()).unwrap();
    chain(&[g, boxed(Structural::spider(1, 2, "n")), unique.tensor(&related)]).unwrap()
}

/// A boolean model of size 2 for [`peirce_formula`]: `G = {1}`, `M = {0}`
/// and `P = {(0, 1)}`.
pub fn peirce_model() -> TensorModel<bool> {
    TensorModel::new()
        .object("n", vec![2])
        .arrow("G", RigTensor::new(vec![], vec![2], vec![false, true]).unwrap())
        .arrow("M", RigTensor::new(vec![], vec![2], vec![true, false]).unwrap())
        .arrow("P", RigTensor::new(vec![], vec![2, 2], vec![false, true, false, false]).unwrap())
}
