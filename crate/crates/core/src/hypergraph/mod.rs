//! Diagrams as hypergraph cospans.
//!
//! Wires are nodes ("spiders") and boxes are hyperedges. Boundary wires and
//! box ports point at spiders, so swaps, cups, caps and spiders all disappear
//! into the connectivity: isomorphic hypergraphs are equal in every symmetric,
//! compact or hypergraph category. Braids and twists have no hypergraph
//! counterpart and are refused.

mod iso;
mod layout;

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{unsupported, Error, Result};
use crate::free_category::Ob;
use crate::planar::{Diagram, DiagramBox, Side, Ty};
use crate::structure::Structural;

pub use layout::Layout;
pub(crate) use layout::{emit_causal, CopyStyle, Plan};

/// A hypergraph with typed spiders, labelled boxes and an ordered boundary.
///
/// Spiders are numbered densely from zero and carry the base name of the
/// objects on their ports: windings are erased.
#[derive(Clone, PartialEq, Debug)]
pub struct Hypergraph {
    dom: Ty,
    cod: Ty,
    boxes: Vec<DiagramBox>,
    dom_wires: Vec<usize>,
    box_wires: Vec<(Vec<usize>, Vec<usize>)>,
    cod_wires: Vec<usize>,
    spider_types: Vec<Ob>,
}

/// Where a port sits: on the boundary or on a box.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Port {
    Dom(usize),
    BoxIn(usize, usize),
    BoxOut(usize, usize),
    Cod(usize),
}

impl Port {
    /// Ports that feed a spider: the domain and box outputs.
    pub fn is_source(self) -> bool {
        matches!(self, Port::Dom(_) | Port::BoxOut(..))
    }

    /// Position in the causal order: domain, then each box's inputs before its
    /// outputs, then the codomain.
    fn rank(self) -> (usize, usize, usize) {
        match self {
            Port::Dom(i) => (0, 0, i),
            Port::BoxIn(b, i) => (1 + 2 * b, 0, i),
            Port::BoxOut(b, i) => (2 + 2 * b, 0, i),
            Port::Cod(i) => (usize::MAX, 0, i),
        }
    }
}

fn mismatch(context: &str, expected: impl ToString, found: impl ToString) -> Error {
    Error::TypeMismatch {
        context: context.into(),
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

impl Hypergraph {
    /// Builds a hypergraph from its parts, checking arities and types.
    pub fn new(
        dom: Ty,
        cod: Ty,
        boxes: Vec<DiagramBox>,
        dom_wires: Vec<usize>,
        box_wires: Vec<(Vec<usize>, Vec<usize>)>,
        cod_wires: Vec<usize>,
        spider_types: Vec<Ob>,
    ) -> Result<Self> {
        let spider_types: Vec<Ob> = spider_types.iter().map(Ob::base).collect();
        let n = spider_types.len();
        let check = |context: &str, ty: &Ty, wires: &[usize]| -> Result<()> {
            if ty.len() != wires.len() {
                return Err(Error::Arity {
                    context: context.into(),
                    expected: ty.len(),
                    found: wires.len(),
                });
            }
            for (ob, &s) in ty.objects().iter().zip(wires) {
                let found = spider_types.get(s).ok_or_else(|| Error::Validation(format!("no spider {s} among {n}")))?;
                if found.name != ob.name {
                    return Err(mismatch(context, ob, found));
                }
            }
            Ok(())
        };
        check("domain wires", &dom, &dom_wires)?;
        check("codomain wires", &cod, &cod_wires)?;
        if boxes.len() != box_wires.len() {
            return Err(Error::Arity {
                context: "box wires".into(),
                expected: boxes.len(),
                found: box_wires.len(),
            });
        }
        for (b, (ins, outs)) in boxes.iter().zip(&box_wires) {
            check(&format!("inputs of {b}"), &b.dom(), ins)?;
            check(&format!("outputs of {b}"), &b.cod(), outs)?;
        }
        Ok(Hypergraph { dom, cod, boxes, dom_wires, box_wires, cod_wires, spider_types })
    }

    /// Builds a hypergraph whose spiders are named by arbitrary keys, numbered
    /// in the order of `spiders`.
    #[allow(clippy::too_many_arguments)]
    pub fn labelled<K: Hash + Eq + Clone + std::fmt::Debug>(
        dom: Ty,
        cod: Ty,
        boxes: Vec<DiagramBox>,
        dom_wires: &[K],
        box_wires: &[(Vec<K>, Vec<K>)],
        cod_wires: &[K],
        spiders: &[(K, Ob)],
    ) -> Result<Self> {
        let index: HashMap<&K, usize> = spiders.iter().enumerate().map(|(i, (k, _))| (k, i)).collect();
        let lookup = |keys: &[K]| -> Result<Vec<usize>> {
            keys.iter()
                .map(|k| index.get(k).copied().ok_or_else(|| Error::Validation(format!("unknown spider {k:?}"))))
                .collect()
        };
        let box_wires = box_wires
            .iter()
            .map(|(i, o)| Ok((lookup(i)?, lookup(o)?)))
            .collect::<Result<Vec<_>>>()?;
        Hypergraph::new(
            dom,
            cod,
            boxes,
            lookup(dom_wires)?,
            box_wires,
            lookup(cod_wires)?,
            spiders.iter().map(|(_, ob)| ob.clone()).collect(),
        )
    }

    pub fn id(ty: &Ty) -> Self {
        let wires: Vec<usize> = (0..ty.len()).collect();
        Hypergraph {
            dom: ty.clone(),
            cod: ty.clone(),
            boxes: Vec::new(),
            dom_wires: wires.clone(),
            box_wires: Vec::new(),
            cod_wires: wires,
            spider_types: ty.objects().iter().map(Ob::base).collect(),
        }
    }

    pub fn swap(x: &Ty, y: &Ty) -> Self {
        let n = x.len() + y.len();
        let cod_wires = (x.len()..n).chain(0..x.len()).collect();
        Hypergraph {
            dom: x.tensor(y),
            cod: y.tensor(x),
            boxes: Vec::new(),
            dom_wires: (0..n).collect(),
            box_wires: Vec::new(),
            cod_wires,
            spider_types: x.tensor(y).objects().iter().map(Ob::base).collect(),
        }
    }

    /// One spider per object of `word`, with `legs_in` copies of the word as
    /// domain and `legs_out` as codomain.
    pub fn spiders(legs_in: usize, legs_out: usize, word: &Ty) -> Self {
        let k = word.len();
        Hypergraph {
            dom: word.pow(legs_in),
            cod: word.pow(legs_out),
            boxes: Vec::new(),
            dom_wires: (0..k * legs_in).map(|i| i % k).collect(),
            box_wires: Vec::new(),
            cod_wires: (0..k * legs_out).map(|i| i % k).collect(),
            spider_types: word.objects().iter().map(Ob::base).collect(),
        }
    }

    pub fn from_box(b: DiagramBox) -> Self {
        let (dom, cod) = (b.dom(), b.cod());
        let (m, n) = (dom.len(), cod.len());
        let ins: Vec<usize> = (0..m).collect();
        let outs: Vec<usize> = (m..m + n).collect();
        Hypergraph {
            spider_types: dom.tensor(&cod).objects().iter().map(Ob::base).collect(),
            dom,
            cod,
            boxes: vec![b],
            dom_wires: ins.clone(),
            box_wires: vec![(ins, outs.clone())],
            cod_wires: outs,
        }
    }

    pub fn dom(&self) -> &Ty {
        &self.dom
    }

    pub fn cod(&self) -> &Ty {
        &self.cod
    }

    pub fn boxes(&self) -> &[DiagramBox] {
        &self.boxes
    }

    pub fn dom_wires(&self) -> &[usize] {
        &self.dom_wires
    }

    pub fn cod_wires(&self) -> &[usize] {
        &self.cod_wires
    }

    /// Input and output spiders of each box.
    pub fn box_wires(&self) -> &[(Vec<usize>, Vec<usize>)] {
        &self.box_wires
    }

    pub fn spider_types(&self) -> &[Ob] {
        &self.spider_types
    }

    pub fn n_spiders(&self) -> usize {
        self.spider_types.len()
    }

    /// Every port of every spider.
    pub fn ports(&self) -> Vec<Vec<Port>> {
        let mut ports = vec![Vec::new(); self.n_spiders()];
        for (i, &s) in self.dom_wires.iter().enumerate() {
            ports[s].push(Port::Dom(i));
        }
        for (b, (ins, outs)) in self.box_wires.iter().enumerate() {
            for (i, &s) in ins.iter().enumerate() {
                ports[s].push(Port::BoxIn(b, i));
            }
            for (i, &s) in outs.iter().enumerate() {
                ports[s].push(Port::BoxOut(b, i));
            }
        }
        for (i, &s) in self.cod_wires.iter().enumerate() {
            ports[s].push(Port::Cod(i));
        }
        ports
    }

    /// Spiders with no ports at all: floating circles.
    pub fn isolated_spiders(&self) -> Vec<usize> {
        self.ports()
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_empty())
            .map(|(s, _)| s)
            .collect()
    }

    /// Every spider has zero or two ports: the image of a compact closed
    /// diagram.
    pub fn is_bijective(&self) -> bool {
        self.ports().iter().all(|p| p.is_empty() || p.len() == 2)
    }

    /// Every spider has zero ports or exactly one source and one target: the
    /// image of a traced symmetric diagram.
    pub fn is_monogamous(&self) -> bool {
        self.ports().iter().all(|p| {
            p.is_empty() || (p.len() == 2 && p.iter().filter(|q| q.is_source()).count() == 1)
        })
    }

    /// Every spider has zero ports or exactly one source.
    pub fn is_left_monogamous(&self) -> bool {
        self.ports()
            .iter()
            .all(|p| p.is_empty() || p.iter().filter(|q| q.is_source()).count() == 1)
    }

    /// Every spider has exactly one source and the boxes feed each other
    /// without cycles: the image of a Markov diagram.
    pub fn is_causal(&self) -> bool {
        self.ports().iter().all(|p| p.iter().filter(|q| q.is_source()).count() == 1) && self.box_order().is_some()
    }

    /// An order of the boxes in which every box comes after the boxes feeding
    /// it, keeping lower indices first; `None` when there is a cycle.
    pub fn box_order(&self) -> Option<Vec<usize>> {
        let n = self.boxes.len();
        let mut producers = vec![Vec::new(); self.n_spiders()];
        for (b, (_, outs)) in self.box_wires.iter().enumerate() {
            for &s in outs {
                producers[s].push(b);
            }
        }
        let needs: Vec<Vec<usize>> = self
            .box_wires
            .iter()
            .map(|(ins, _)| ins.iter().flat_map(|&s| producers[s].iter().copied()).collect())
            .collect();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let next = (0..n).find(|&b| !placed[b] && needs[b].iter().all(|&a| placed[a]))?;
            placed[next] = true;
            order.push(next);
        }
        Some(order)
    }

    /// The same hypergraph with its boxes listed in `order`.
    pub fn permute_boxes(&self, order: &[usize]) -> Hypergraph {
        let mut h = self.clone();
        h.boxes = order.iter().map(|&b| self.boxes[b].clone()).collect();
        h.box_wires = order.iter().map(|&b| self.box_wires[b].clone()).collect();
        h
    }

    /// The hypergraph of a planar diagram. Structural boxes become
    /// connectivity, traces become feedback, bubbles stay opaque boxes.
    pub fn from_diagram(d: &Diagram) -> Result<Hypergraph> {
        let mut builder = Builder::default();
        let inputs: Vec<usize> = d.dom().objects().iter().map(|ob| builder.fresh(ob)).collect();
        let outputs = builder.diagram(d, &inputs)?;
        Ok(builder.finish(d.dom().clone(), d.cod().clone(), inputs, outputs))
    }

    /// Sequential composition: the pushout along the shared boundary.
    pub fn then(&self, other: &Hypergraph) -> Result<Hypergraph> {
        if self.cod != other.dom {
            return Err(Error::CompositionMismatch {
                cod: self.cod.to_string(),
                dom: other.dom.to_string(),
                boxes: "<hypergraph>".into(),
            });
        }
        let mut builder = Builder::default();
        let inputs: Vec<usize> = self.dom.objects().iter().map(|ob| builder.fresh(ob)).collect();
        let middle = builder.embed(self, &inputs, 0, Side::Right)?;
        let outputs = builder.embed(other, &middle, 0, Side::Right)?;
        Ok(builder.finish(self.dom.clone(), other.cod.clone(), inputs, outputs))
    }

    /// Parallel composition: disjoint union with concatenated boundaries.
    pub fn tensor(&self, other: &Hypergraph) -> Hypergraph {
        let k = self.n_spiders();
        let shift = |wires: &[usize]| wires.iter().map(|s| s + k).collect::<Vec<_>>();
        let mut result = self.clone();
        result.dom = self.dom.tensor(&other.dom);
        result.cod = self.cod.tensor(&other.cod);
        result.boxes.extend(other.boxes.iter().cloned());
        result.dom_wires.extend(shift(&other.dom_wires));
        result.cod_wires.extend(shift(&other.cod_wires));
        result
            .box_wires
            .extend(other.box_wires.iter().map(|(i, o)| (shift(i), shift(o))));
        result.spider_types.extend(other.spider_types.iter().cloned());
        result
    }

    /// Mirror image: boxes daggered, domain and codomain exchanged.
    pub fn dagger(&self) -> Hypergraph {
        Hypergraph {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            boxes: self.boxes.iter().map(DiagramBox::dagger).collect(),
            dom_wires: self.cod_wires.clone(),
            box_wires: self.box_wires.iter().map(|(i, o)| (o.clone(), i.clone())).collect(),
            cod_wires: self.dom_wires.clone(),
            spider_types: self.spider_types.clone(),
        }
    }
}

/// Incremental construction with union-find over spiders.
#[derive(Default)]
pub(crate) struct Builder {
    parent: Vec<usize>,
    types: Vec<Ob>,
    boxes: Vec<DiagramBox>,
    box_wires: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Builder {
    pub(crate) fn fresh(&mut self, ob: &Ob) -> usize {
        self.parent.push(self.parent.len());
        self.types.push(ob.base());
        self.parent.len() - 1
    }

    pub(crate) fn find(&mut self, mut s: usize) -> usize {
        while self.parent[s] != s {
            self.parent[s] = self.parent[self.parent[s]];
            s = self.parent[s];
        }
        s
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> Result<()> {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return Ok(());
        }
        if self.types[a] != self.types[b] {
            return Err(mismatch("connection", &self.types[a], &self.types[b]));
        }
        let (low, high) = (a.min(b), a.max(b));
        self.parent[high] = low;
        Ok(())
    }

    pub(crate) fn add_box(&mut self, b: DiagramBox, inputs: Vec<usize>) -> Vec<usize> {
        let outputs: Vec<usize> = b.cod().objects().iter().map(|ob| self.fresh(ob)).collect();
        self.boxes.push(b);
        self.box_wires.push((inputs, outputs.clone()));
        outputs
    }

    /// Glues a copy of `h` onto the `inputs` spiders and returns the spiders
    /// of its codomain. With `traced > 0`, the last (or first) `traced` wires
    /// of the domain and codomain of `h` are joined instead.
    fn embed(&mut self, h: &Hypergraph, inputs: &[usize], traced: usize, side: Side) -> Result<Vec<usize>> {
        let map: Vec<usize> = h.spider_types.iter().map(|ob| self.fresh(ob)).collect();
        let (n_dom, n_cod) = (h.dom_wires.len(), h.cod_wires.len());
        let (open_dom, open_cod) = match side {
            Side::Left => (traced..n_dom, traced..n_cod),
            Side::Right => (0..n_dom - traced, 0..n_cod - traced),
        };
        for (k, i) in open_dom.clone().enumerate() {
            self.union(map[h.dom_wires[i]], inputs[k])?;
        }
        let (dom_loop, cod_loop) = match side {
            Side::Left => (0..traced, 0..traced),
            Side::Right => (n_dom - traced..n_dom, n_cod - traced..n_cod),
        };
        for (i, j) in dom_loop.zip(cod_loop) {
            self.union(map[h.dom_wires[i]], map[h.cod_wires[j]])?;
        }
        for (b, (ins, outs)) in h.boxes.iter().zip(&h.box_wires) {
            self.boxes.push(b.clone());
            self.box_wires
                .push((ins.iter().map(|&s| map[s]).collect(), outs.iter().map(|&s| map[s]).collect()));
        }
        Ok(open_cod.map(|j| map[h.cod_wires[j]]).collect())
    }

    fn diagram(&mut self, d: &Diagram, inputs: &[usize]) -> Result<Vec<usize>> {
        let mut current = inputs.to_vec();
        for layer in d.split_layers().layers() {
            let (b, offset) = layer.single().expect("split layers hold one box");
            let end = offset + b.dom().len();
            let outputs = self.apply(b, &current[offset..end])?;
            current.splice(offset..end, outputs);
        }
        Ok(current)
    }

    fn apply(&mut self, b: &DiagramBox, inputs: &[usize]) -> Result<Vec<usize>> {
        match b {
            DiagramBox::Gen(_) | DiagramBox::Bubble(_) => Ok(self.add_box(b.clone(), inputs.to_vec())),
            DiagramBox::Trace(t) => {
                let body = Hypergraph::from_diagram(&t.body)?;
                self.embed(&body, inputs, t.traced.len(), t.side)
            }
            DiagramBox::Structural(s) => {
                let h = match s {
                    Structural::Braid { .. } | Structural::Twist { .. } => {
                        return Err(unsupported(format!("{s} has no hypergraph")))
                    }
                    Structural::Swap { left, right } => Hypergraph::swap(&Ty::from(left), &Ty::from(right)),
                    Structural::Cup { left, right } => {
                        let mut h = Hypergraph::spiders(2, 0, &Ty::from(left));
                        h.dom = Ty::new(vec![left.clone(), right.clone()]);
                        h
                    }
                    Structural::Cap { left, right } => {
                        let mut h = Hypergraph::spiders(0, 2, &Ty::from(left));
                        h.cod = Ty::new(vec![left.clone(), right.clone()]);
                        h
                    }
                    Structural::Spider { legs_in, legs_out, ob } => Hypergraph::spiders(*legs_in, *legs_out, &Ty::from(ob)),
                    Structural::Copy { .. } | Structural::Discard { .. } => {
                        let (dom, cod) = (s.dom().len(), s.cod().len());
                        let ob = s.dom().tensor(&s.cod()).objects()[0].clone();
                        Hypergraph::spiders(dom, cod, &Ty::from(ob))
                    }
                };
                self.embed(&h, inputs, 0, Side::Right)
            }
        }
    }

    /// Resolves the union-find and numbers the representatives densely, in
    /// increasing order. Spiders left without ports are kept.
    pub(crate) fn finish(mut self, dom: Ty, cod: Ty, inputs: Vec<usize>, outputs: Vec<usize>) -> Hypergraph {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|s| self.find(s)).collect();
        let mut dense = vec![usize::MAX; n];
        let mut spider_types = Vec::new();
        for s in 0..n {
            if roots[s] == s {
                dense[s] = spider_types.len();
                spider_types.push(self.types[s].clone());
            }
        }
        let relabel = |wires: &[usize]| wires.iter().map(|&s| dense[roots[s]]).collect::<Vec<_>>();
        Hypergraph {
            dom,
            cod,
            dom_wires: relabel(&inputs),
            cod_wires: relabel(&outputs),
            box_wires: self.box_wires.iter().map(|(i, o)| (relabel(i), relabel(o))).collect(),
            boxes: self.boxes,
            spider_types,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_category::Generator;
    use crate::planar::gen;

    fn ty(s: &str) -> Ty {
        Ty::parse(s).unwrap()
    }

    fn boxed(name: &str, dom: &str, cod: &str) -> DiagramBox {
        DiagramBox::Gen(Generator::new(name, ty(dom), ty(cod)))
    }

    #[test]
    fn labelled_construction_with_an_isolated_spider() {
        let h = Hypergraph::labelled(
            ty("x"),
            ty("x"),
            vec![boxed("f", "x", "x")],
            &['a'],
            &[(vec!['a'], vec!['b'])],
            &['b'],
            &[('a', Ob::new("x")), ('b', Ob::new("x")), ('c', Ob::new("y")), ('d', Ob::new("x"))],
        )
        .unwrap();
        assert_eq!(h.n_spiders(), 4);
        assert_eq!(h.isolated_spiders(), vec![2, 3]);
        assert!(h.is_monogamous());
        assert!(!h.is_causal());
    }

    #[test]
    fn composition_is_a_pushout() {
        let f = Hypergraph::from_box(boxed("f", "x", "y"));
        let g = Hypergraph::from_box(boxed("g", "y", "z"));
        let fg = f.then(&g).unwrap();
        assert_eq!(fg.n_spiders(), 3);
        assert_eq!(fg.box_wires(), &[(vec![0], vec![1]), (vec![1], vec![2])]);
        assert!(f.then(&f).is_err());
        let id = Hypergraph::id(&ty("x"));
        assert_eq!(id.then(&f).unwrap(), f);
    }

    #[test]
    fn swaps_vanish() {
        let s = Hypergraph::swap(&ty("x"), &ty("y"));
        let twice = s.then(&Hypergraph::swap(&ty("y"), &ty("x"))).unwrap();
        assert_eq!(twice, Hypergraph::id(&ty("x y")));
    }

    #[test]
    fn spiders_fuse() {
        let a = Hypergraph::spiders(1, 2, &ty("x"));
        let b = Hypergraph::spiders(2, 1, &ty("x"));
        assert_eq!(a.then(&b).unwrap(), Hypergraph::spiders(1, 1, &ty("x")));
        assert_eq!(b.then(&a).unwrap(), Hypergraph::spiders(2, 2, &ty("x")));
    }

    #[test]
    fn predicates() {
        let copy = Hypergraph::spiders(1, 2, &ty("x"));
        assert!(copy.is_causal() && copy.is_left_monogamous());
        assert!(!copy.is_bijective() && !copy.is_monogamous());
        let cup = Hypergraph::spiders(2, 0, &ty("x"));
        assert!(cup.is_bijective() && !cup.is_monogamous() && !cup.is_causal());
        let f = Hypergraph::from_box(boxed("f", "x", "x"));
        assert!(f.is_causal() && f.is_monogamous());
    }

    #[test]
    fn from_diagram_handles_structure() {
        let x = Ty::from("x");
        let cup = Diagram::from(Structural::cup(Ob::new("x"), Ob::new("x").r()).unwrap());
        let cap = Diagram::from(Structural::cap(Ob::new("x"), Ob::new("x").l()).unwrap());
        let snake = cap.whisker_right(&x).then(&Diagram::from(Structural::cup(Ob::new("x").l(), Ob::new("x")).unwrap()).whisker_left(&x)).unwrap();
        let h = Hypergraph::from_diagram(&snake).unwrap();
        assert_eq!(h.n_spiders(), 1);
        assert_eq!(h.dom_wires(), &[0]);
        assert_eq!(h.cod_wires(), &[0]);
        assert_eq!(Hypergraph::from_diagram(&cup).unwrap().n_spiders(), 1);

        let f = gen("f", ty("x y"), ty("z y"));
        let traced = f.trace(1, Side::Right).unwrap();
        let h = Hypergraph::from_diagram(&traced).unwrap();
        assert_eq!(h.boxes().len(), 1);
        let (ins, outs) = &h.box_wires()[0];
        assert_eq!(ins[1], outs[1]);

        let braid = Diagram::from(Structural::braid("x", "x"));
        assert!(matches!(Hypergraph::from_diagram(&braid), Err(Error::Unsupported(_))));
    }

    #[test]
    fn dagger_and_tensor() {
        let f = Hypergraph::from_box(boxed("f", "x", "y"));
        assert_eq!(f.dagger().dagger(), f);
        let ff = f.tensor(&f);
        assert_eq!(ff.dom(), &ty("x x"));
        assert_eq!(ff.n_spiders(), 4);
    }
}
