//! Planar diagrams as lists of layers.
//!
//! A [`Diagram`] is a [`Path`] whose cells are [`Layer`]s: a layer is a box
//! whiskered by types on its left and right (or, more generally, boxes
//! alternating with types). Identity and composition come from the free
//! category; tensor is defined by whiskering, so `f ⊗ g = (f ⊗ g.dom) ; (f.cod ⊗ g)`.
//!
//! Equality of `Diagram` values is syntactic: two diagrams are equal only if
//! their layers are, which makes this the free premonoidal category. Use
//! [`Diagram::equal`] with [`Equality::Planar`] or [`Equality::Hypergraph`] to
//! quotient by interchangers or by the symmetric/Frobenius axioms.

mod functor;
mod rewrite;

use std::fmt::{self, Debug, Display};
use std::sync::Arc;

pub use functor::Monoidal;
pub use rewrite::spiral;

use crate::error::{Error, Result};
use crate::free_category::{Generator, Morphism, Ob, Path};
use crate::structure::{Features, Structural, Structure};

/// A type: a word in the free monoid over [`Ob`].
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Ty(Vec<Ob>);

impl Ty {
    pub fn new(objects: Vec<Ob>) -> Self {
        Ty(objects)
    }

    /// The monoidal unit.
    pub fn unit() -> Self {
        Ty(Vec::new())
    }

    /// Parses a whitespace or `@` separated list of objects, e.g. `"x @ y.r"`.
    pub fn parse(text: &str) -> Option<Self> {
        text.split(|c: char| c == '@' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(Ob::parse)
            .collect()
    }

    pub fn objects(&self) -> &[Ob] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn tensor(&self, other: &Ty) -> Ty {
        let mut objects = self.0.clone();
        objects.extend(other.0.iter().cloned());
        Ty(objects)
    }

    /// `self ⊗ self ⊗ ... ⊗ self`, `n` times.
    pub fn pow(&self, n: usize) -> Ty {
        Ty(self.0.iter().cloned().cycle().take(self.len() * n).collect())
    }

    /// The sub-word at the given positions.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Ty {
        Ty(self.0[range].to_vec())
    }

    /// Right adjoint: reversed, each object wound once to the right.
    pub fn r(&self) -> Ty {
        Ty(self.0.iter().rev().map(Ob::r).collect())
    }

    /// Left adjoint: reversed, each object wound once to the left.
    pub fn l(&self) -> Ty {
        Ty(self.0.iter().rev().map(Ob::l).collect())
    }
}

impl Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("Ty()");
        }
        for (i, ob) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" @ ")?;
            }
            write!(f, "{ob}")?;
        }
        Ok(())
    }
}

impl Debug for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ty({self})")
    }
}

impl From<Ob> for Ty {
    fn from(ob: Ob) -> Self {
        Ty(vec![ob])
    }
}

impl From<&Ob> for Ty {
    fn from(ob: &Ob) -> Self {
        Ty(vec![ob.clone()])
    }
}

/// Parses the text as with [`Ty::parse`], falling back to a single object
/// with that name.
impl From<&str> for Ty {
    fn from(text: &str) -> Self {
        Ty::parse(text).unwrap_or_else(|| Ty(vec![Ob::new(text)]))
    }
}

impl From<Vec<Ob>> for Ty {
    fn from(objects: Vec<Ob>) -> Self {
        Ty(objects)
    }
}

impl FromIterator<Ob> for Ty {
    fn from_iter<I: IntoIterator<Item = Ob>>(iter: I) -> Self {
        Ty(iter.into_iter().collect())
    }
}

/// Which side of a diagram a trace, or an interchanged box, sits on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Side {
    Left,
    Right,
}

/// A box whose content is a whole diagram, interpreted by functors as a unary
/// operator on homsets.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Bubble {
    pub name: String,
    pub arg: Arc<Diagram>,
}

/// The trace of `body` over `traced` wires on one side:
/// `body: traced ⊗ dom -> traced ⊗ cod` for a left trace,
/// `body: dom ⊗ traced -> cod ⊗ traced` for a right trace.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Trace {
    pub body: Arc<Diagram>,
    pub traced: Ty,
    pub side: Side,
}

impl Trace {
    fn strip(&self, ty: &Ty) -> Ty {
        let n = self.traced.len();
        match self.side {
            Side::Left => ty.slice(n..ty.len()),
            Side::Right => ty.slice(0..ty.len() - n),
        }
    }

    pub fn dom(&self) -> Ty {
        self.strip(&self.body.dom)
    }

    pub fn cod(&self) -> Ty {
        self.strip(&self.body.cod)
    }
}

/// The boxes that can appear inside a layer.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum DiagramBox {
    Gen(Generator<Ty>),
    Structural(Structural),
    Bubble(Bubble),
    Trace(Trace),
}

impl DiagramBox {
    pub fn dom(&self) -> Ty {
        match self {
            DiagramBox::Gen(g) => g.dom.clone(),
            DiagramBox::Structural(s) => s.dom(),
            DiagramBox::Bubble(b) => b.arg.dom.clone(),
            DiagramBox::Trace(t) => t.dom(),
        }
    }

    pub fn cod(&self) -> Ty {
        match self {
            DiagramBox::Gen(g) => g.cod.clone(),
            DiagramBox::Structural(s) => s.cod(),
            DiagramBox::Bubble(b) => b.arg.cod.clone(),
            DiagramBox::Trace(t) => t.cod(),
        }
    }

    pub fn dagger(&self) -> Self {
        match self {
            DiagramBox::Gen(g) => DiagramBox::Gen(g.dagger()),
            DiagramBox::Structural(s) => DiagramBox::Structural(s.dagger()),
            DiagramBox::Bubble(b) => DiagramBox::Bubble(Bubble {
                name: b.name.clone(),
                arg: Arc::new(b.arg.dagger()),
            }),
            DiagramBox::Trace(t) => DiagramBox::Trace(Trace {
                body: Arc::new(t.body.dagger()),
                traced: t.traced.clone(),
                side: t.side,
            }),
        }
    }

    pub fn name(&self) -> String {
        match self {
            DiagramBox::Gen(g) => g.to_string(),
            DiagramBox::Structural(s) => s.to_string(),
            DiagramBox::Bubble(b) => b.name.clone(),
            DiagramBox::Trace(_) => "trace".into(),
        }
    }

    pub fn as_structural(&self) -> Option<&Structural> {
        match self {
            DiagramBox::Structural(s) => Some(s),
            _ => None,
        }
    }

    pub(crate) fn features(&self) -> Features {
        match self {
            DiagramBox::Gen(_) => Features::empty(),
            DiagramBox::Structural(s) => s.features(),
            DiagramBox::Bubble(b) => b.arg.features(),
            DiagramBox::Trace(t) => t.body.features() | Features::TRACE,
        }
    }
}

impl Display for DiagramBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramBox::Bubble(b) => write!(f, "{}({})", b.name, b.arg),
            DiagramBox::Trace(t) => write!(f, "trace({})", t.body),
            _ => f.write_str(&self.name()),
        }
    }
}

impl From<Generator<Ty>> for DiagramBox {
    fn from(g: Generator<Ty>) -> Self {
        DiagramBox::Gen(g)
    }
}

impl From<Structural> for DiagramBox {
    fn from(s: Structural) -> Self {
        DiagramBox::Structural(s)
    }
}

/// One horizontal slice: `left ⊗ b_1 ⊗ t_1 ⊗ ... ⊗ b_k ⊗ t_k`, with `k ≥ 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Layer {
    left: Ty,
    boxes: Vec<(DiagramBox, Ty)>,
}

impl Layer {
    pub fn new(left: Ty, b: impl Into<DiagramBox>, right: Ty) -> Self {
        Layer {
            left,
            boxes: vec![(b.into(), right)],
        }
    }

    /// A layer with several boxes: `left`, then each box followed by the type
    /// on its right.
    pub fn with_boxes(left: Ty, boxes: Vec<(DiagramBox, Ty)>) -> Result<Self> {
        if boxes.is_empty() {
            return Err(Error::Validation("a layer holds at least one box".into()));
        }
        Ok(Layer { left, boxes })
    }

    pub fn left(&self) -> &Ty {
        &self.left
    }

    /// The boxes of the layer, each with the type to its right.
    pub fn boxes(&self) -> &[(DiagramBox, Ty)] {
        &self.boxes
    }

    pub fn is_single(&self) -> bool {
        self.boxes.len() == 1
    }

    /// For a one-box layer: the box and its offset (the length of the left type).
    pub fn single(&self) -> Option<(&DiagramBox, usize)> {
        match self.boxes.as_slice() {
            [(b, _)] => Some((b, self.left.len())),
            _ => None,
        }
    }

    /// The type on the right of the last box.
    pub fn right(&self) -> &Ty {
        &self.boxes.last().expect("layers are non-empty").1
    }

    fn boundary(&self, side: impl Fn(&DiagramBox) -> Ty) -> Ty {
        let mut objects = self.left.0.clone();
        for (b, t) in &self.boxes {
            objects.extend(side(b).0);
            objects.extend(t.0.iter().cloned());
        }
        Ty(objects)
    }

    pub fn dom(&self) -> Ty {
        self.boundary(DiagramBox::dom)
    }

    pub fn cod(&self) -> Ty {
        self.boundary(DiagramBox::cod)
    }

    pub fn whisker_left(&self, ty: &Ty) -> Layer {
        Layer {
            left: ty.tensor(&self.left),
            boxes: self.boxes.clone(),
        }
    }

    pub fn whisker_right(&self, ty: &Ty) -> Layer {
        let mut boxes = self.boxes.clone();
        let last = boxes.last_mut().expect("layers are non-empty");
        last.1 = last.1.tensor(ty);
        Layer {
            left: self.left.clone(),
            boxes,
        }
    }

    /// Places the boxes of `other` to the right of the boxes of `self`.
    pub fn tensor(&self, other: &Layer) -> Layer {
        let mut boxes = self.boxes.clone();
        let last = boxes.last_mut().expect("layers are non-empty");
        last.1 = last.1.tensor(&other.left);
        boxes.extend(other.boxes.iter().cloned());
        Layer {
            left: self.left.clone(),
            boxes,
        }
    }

    /// Splits a layer into one-box layers, applying boxes left to right.
    pub fn split(&self) -> Vec<Layer> {
        let mut result = Vec::with_capacity(self.boxes.len());
        let mut done = self.left.clone();
        for (i, (b, right)) in self.boxes.iter().enumerate() {
            let mut rest = right.clone();
            for (later, t) in &self.boxes[i + 1..] {
                rest = rest.tensor(&later.dom()).tensor(t);
            }
            result.push(Layer::new(done.clone(), b.clone(), rest));
            done = done.tensor(&b.cod()).tensor(right);
        }
        result
    }
}

impl Morphism for Layer {
    type Ob = Ty;

    fn dom(&self) -> Ty {
        Layer::dom(self)
    }
    fn cod(&self) -> Ty {
        Layer::cod(self)
    }
    fn dagger(&self) -> Self {
        Layer {
            left: self.left.clone(),
            boxes: self.boxes.iter().map(|(b, t)| (b.dagger(), t.clone())).collect(),
        }
    }
}

impl Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.left.is_empty() {
            parts.push(self.left.to_string());
        }
        for (b, t) in &self.boxes {
            parts.push(b.to_string());
            if !t.is_empty() {
                parts.push(t.to_string());
            }
        }
        f.write_str(&parts.join(" @ "))
    }
}

/// A planar diagram: a path of layers.
pub type Diagram = Path<Layer>;

/// How two diagrams are compared by [`Diagram::equal`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Equality {
    /// Equal layer lists: the free premonoidal category.
    Syntactic,
    /// Equal normal forms: the free monoidal category (canonical on
    /// boundary-connected diagrams).
    Planar,
    /// Isomorphic hypergraphs: symmetric, compact and Frobenius axioms for free.
    Hypergraph,
}

impl From<DiagramBox> for Diagram {
    fn from(b: DiagramBox) -> Self {
        let (dom, cod) = (b.dom(), b.cod());
        Path {
            inside: vec![Layer::new(Ty::unit(), b, Ty::unit())],
            dom,
            cod,
        }
    }
}

impl From<Generator<Ty>> for Diagram {
    fn from(g: Generator<Ty>) -> Self {
        Diagram::from(DiagramBox::Gen(g))
    }
}

impl From<Structural> for Diagram {
    fn from(s: Structural) -> Self {
        Diagram::from(DiagramBox::Structural(s))
    }
}

/// Shorthand for a one-box diagram with a plain generator.
pub fn gen(name: &str, dom: impl Into<Ty>, cod: impl Into<Ty>) -> Diagram {
    Diagram::from(Generator::new(name, dom.into(), cod.into()))
}

impl Path<Layer> {
    pub fn layers(&self) -> &[Layer] {
        &self.inside
    }

    /// Builds a diagram from layers, checking that they compose.
    pub fn from_layers(dom: Ty, layers: Vec<Layer>) -> Result<Diagram> {
        let cod = layers.last().map(Layer::cod).unwrap_or_else(|| dom.clone());
        Path::new(layers, dom, cod)
    }

    pub fn whisker_left(&self, ty: &Ty) -> Diagram {
        Path {
            inside: self.inside.iter().map(|l| l.whisker_left(ty)).collect(),
            dom: ty.tensor(&self.dom),
            cod: ty.tensor(&self.cod),
        }
    }

    pub fn whisker_right(&self, ty: &Ty) -> Diagram {
        Path {
            inside: self.inside.iter().map(|l| l.whisker_right(ty)).collect(),
            dom: self.dom.tensor(ty),
            cod: self.cod.tensor(ty),
        }
    }

    /// `f ⊗ g = (f ⊗ g.dom) ; (f.cod ⊗ g)`.
    pub fn tensor(&self, other: &Diagram) -> Diagram {
        let mut inside: Vec<Layer> = self.inside.iter().map(|l| l.whisker_right(&other.dom)).collect();
        inside.extend(other.inside.iter().map(|l| l.whisker_left(&self.cod)));
        Path {
            inside,
            dom: self.dom.tensor(&other.dom),
            cod: self.cod.tensor(&other.cod),
        }
    }

    pub fn tensor_all<'a>(items: impl IntoIterator<Item = &'a Diagram>) -> Diagram {
        items
            .into_iter()
            .fold(Diagram::id(Ty::unit()), |acc, d| acc.tensor(d))
    }

    /// All boxes, layer by layer, left to right.
    pub fn boxes(&self) -> impl Iterator<Item = &DiagramBox> {
        self.inside.iter().flat_map(|l| l.boxes.iter().map(|(b, _)| b))
    }

    pub fn count_boxes(&self) -> usize {
        self.boxes().count()
    }

    /// Re-checks that consecutive layers compose and match the boundary.
    pub fn validate(&self) -> Result<()> {
        Path::new(self.inside.clone(), self.dom.clone(), self.cod.clone()).map(|_| ())
    }

    /// Decomposes every multi-box layer into one-box layers.
    pub fn split_layers(&self) -> Diagram {
        Path {
            inside: self.inside.iter().flat_map(Layer::split).collect(),
            dom: self.dom.clone(),
            cod: self.cod.clone(),
        }
    }

    pub(crate) fn features(&self) -> Features {
        self.boxes().fold(Features::empty(), |acc, b| acc | b.features())
    }

    /// The least structure in which this diagram makes sense.
    pub fn structure(&self) -> Result<Structure> {
        Structure::minimal(self.features())
            .ok_or_else(|| Error::Unsupported(format!("no structure admits the boxes of {self}")))
    }

    pub fn bubble(&self, name: impl Into<String>) -> Diagram {
        Diagram::from(DiagramBox::Bubble(Bubble {
            name: name.into(),
            arg: Arc::new(self.clone()),
        }))
    }

    /// Compares two diagrams in the given mode.
    pub fn equal(&self, other: &Diagram, mode: Equality) -> Result<bool> {
        match mode {
            Equality::Syntactic => Ok(self == other),
            Equality::Planar => Ok(self.normal_form() == other.normal_form()),
            Equality::Hypergraph => {
                let left = crate::hypergraph::Hypergraph::from_diagram(self)?;
                let right = crate::hypergraph::Hypergraph::from_diagram(other)?;
                Ok(left.is_isomorphic(&right))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_boxes() -> (Diagram, Diagram, Diagram, Ty, Ty, Ty) {
        let (x, y, z) = (Ty::from("x"), Ty::from("y"), Ty::from("z"));
        let f = gen("f", x.clone(), y.tensor(&z));
        let g = gen("g", y.clone(), z.clone());
        let h = gen("h", z.clone(), z.clone());
        (f, g, h, x, y, z)
    }

    fn generator(d: &Diagram) -> DiagramBox {
        d.boxes().next().unwrap().clone()
    }

    #[test]
    fn whiskering_layers() {
        let (_, g, h, _, _, z) = three_boxes();
        let layer = Layer::new(Ty::unit(), generator(&h), Ty::unit());
        assert_eq!(layer.whisker_left(&Ty::unit()), layer);
        assert_eq!(layer.whisker_left(&z), Layer::new(z.clone(), generator(&h), Ty::unit()));
        let layer = Layer::new(Ty::unit(), generator(&g), Ty::unit());
        assert_eq!(layer.whisker_right(&z), Layer::new(Ty::unit(), generator(&g), z));
    }

    #[test]
    fn three_box_layers() {
        let (f, g, h, x, _, z) = three_boxes();
        let d = f.then(&g.tensor(&h)).unwrap();
        let expected = Diagram::from_layers(
            x,
            vec![
                Layer::new(Ty::unit(), generator(&f), Ty::unit()),
                Layer::new(Ty::unit(), generator(&g), z.clone()),
                Layer::new(z.clone(), generator(&h), Ty::unit()),
            ],
        )
        .unwrap();
        assert_eq!(d, expected);
        assert_eq!(d.cod(), &z.tensor(&z));
    }

    #[test]
    fn tensor_unit_and_boundaries() {
        let (f, g, h, ..) = three_boxes();
        let empty = Diagram::id(Ty::unit());
        assert_eq!(f.tensor(&empty), f);
        assert_eq!(empty.tensor(&f), f);
        let fg = f.tensor(&g);
        assert_eq!(fg.dom(), &f.dom().tensor(g.dom()));
        assert_eq!(fg.cod(), &f.cod().tensor(g.cod()));
        // Associativity holds on layer lists.
        assert_eq!(f.tensor(&g).tensor(&h), f.tensor(&g.tensor(&h)));
    }

    #[test]
    fn split_layers_applies_boxes_left_to_right() {
        let (f, g, ..) = three_boxes();
        let layer = Layer::new(Ty::unit(), generator(&f), Ty::from("w"))
            .tensor(&Layer::new(Ty::unit(), generator(&g), Ty::unit()));
        let d = Diagram::from_layers(layer.dom(), vec![layer.clone()]).unwrap();
        let split = d.split_layers();
        assert_eq!(split.len(), 2);
        assert_eq!(split.dom(), d.dom());
        assert_eq!(split.cod(), d.cod());
        split.validate().unwrap();
        assert_eq!(split, f.whisker_right(&Ty::from("w")).tensor(&g));
    }

    #[test]
    fn broken_boundaries_fail_validation() {
        let (f, g, ..) = three_boxes();
        let layers = vec![
            Layer::new(Ty::unit(), generator(&f), Ty::unit()),
            Layer::new(Ty::unit(), generator(&g), Ty::unit()),
        ];
        assert!(matches!(
            Diagram::from_layers(Ty::from("x"), layers),
            Err(Error::CompositionMismatch { .. })
        ));
    }

    #[test]
    fn types_parse_and_adjoint() {
        let t = Ty::parse("x @ y.r").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.to_string(), "x @ y.r");
        assert_eq!(t.r().to_string(), "y.r.r @ x.r");
        assert_eq!(t.r().l(), t);
        assert_eq!(Ty::parse("").unwrap(), Ty::unit());
        assert_eq!(Ty::from("x").pow(3).len(), 3);
    }
}
