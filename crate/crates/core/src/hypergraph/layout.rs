//! From hypergraphs back to planar diagrams.

use std::collections::BTreeMap;

use super::{Hypergraph, Port};
use crate::error::{unsupported, Error, Result};
use crate::free_category::Ob;
use crate::planar::{Diagram, DiagramBox, Layer, Side, Ty};
use crate::structure::{permute, Structural};

/// How [`Hypergraph::to_diagram`] lays out a hypergraph.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Layout {
    /// Picks the least structure that fits: swaps, copies and discards for
    /// causal hypergraphs, a trace for monogamous ones, cups and caps for
    /// bijective ones, spiders otherwise.
    #[default]
    Auto,
    /// Always uses spiders.
    Frobenius,
}

/// Which boxes copy and discard wires.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum CopyStyle {
    Markov,
    Spiders,
}

impl CopyStyle {
    fn copy(self, ob: &Ob, legs: usize) -> Structural {
        match self {
            CopyStyle::Markov => Structural::copy(ob.clone(), legs),
            CopyStyle::Spiders => Structural::spider(1, legs, ob.clone()),
        }
    }

    fn discard(self, ob: &Ob) -> Structural {
        match self {
            CopyStyle::Markov => Structural::discard(ob.clone()),
            CopyStyle::Spiders => Structural::spider(1, 0, ob.clone()),
        }
    }
}

/// A causal hypergraph in the making: boxes in the order they will be drawn.
#[derive(Clone, Debug)]
pub(crate) struct Plan {
    pub dom: Ty,
    pub cod: Ty,
    pub boxes: Vec<DiagramBox>,
    pub box_wires: Vec<(Vec<usize>, Vec<usize>)>,
    pub dom_wires: Vec<usize>,
    pub cod_wires: Vec<usize>,
    pub n_spiders: usize,
}

impl Plan {
    fn fresh(&mut self) -> usize {
        self.n_spiders += 1;
        self.n_spiders - 1
    }

    fn redirect(&mut self, port: Port, spider: usize) {
        match port {
            Port::Dom(i) => self.dom_wires[i] = spider,
            Port::BoxIn(b, i) => self.box_wires[b].0[i] = spider,
            Port::BoxOut(b, i) => self.box_wires[b].1[i] = spider,
            Port::Cod(i) => self.cod_wires[i] = spider,
        }
    }
}

struct Emitter {
    layers: Vec<Layer>,
    wires: Vec<usize>,
    types: Vec<Ob>,
    uses: Vec<usize>,
    style: CopyStyle,
}

impl Emitter {
    fn ty(&self) -> Ty {
        Ty::new(self.types.clone())
    }

    fn push(&mut self, offset: usize, b: impl Into<DiagramBox>) {
        let b = b.into();
        let ty = self.ty();
        let end = offset + b.dom().len();
        self.layers.push(Layer::new(ty.slice(0..offset), b, ty.slice(end..ty.len())));
    }

    fn discard(&mut self, pos: usize) {
        let b = self.style.discard(&self.types[pos]);
        self.push(pos, b);
        self.wires.remove(pos);
        self.types.remove(pos);
    }

    fn discard_unused(&mut self, range: std::ops::Range<usize>) {
        let (mut i, mut end) = (range.start, range.end);
        while i < end {
            if self.uses[self.wires[i]] == 0 {
                self.discard(i);
                end -= 1;
            } else {
                i += 1;
            }
        }
    }

    fn copy(&mut self, pos: usize, legs: usize) {
        let b = self.style.copy(&self.types[pos], legs);
        self.push(pos, b);
        let (s, ob) = (self.wires[pos], self.types[pos].clone());
        self.wires.splice(pos..pos + 1, std::iter::repeat(s).take(legs));
        self.types.splice(pos..pos + 1, std::iter::repeat(ob).take(legs));
    }

    /// Gathers wires carrying `needed`, in order, into a contiguous block and
    /// returns where it starts. Spiders still used later are copied and one
    /// copy stays behind: the one farthest from the mean position of all the
    /// copies, so that the rest travel the shortest distance.
    fn gather(&mut self, needed: &[(usize, Ob)], keep_alive: bool) -> Result<usize> {
        let mut multiplicity: BTreeMap<usize, usize> = BTreeMap::new();
        for (s, _) in needed {
            *multiplicity.entry(*s).or_default() += 1;
        }
        let mut located = Vec::new();
        for (&s, &m) in &multiplicity {
            let pos = self.wires.iter().position(|&w| w == s).ok_or_else(|| {
                Error::Validation(format!("spider {s} is used before it is produced"))
            })?;
            self.uses[s] -= m;
            let keep = keep_alive && self.uses[s] > 0;
            located.push((pos, s, m + keep as usize, keep));
        }
        located.sort();
        let mut shift = 0;
        let mut copies = Vec::new();
        for (pos, s, legs, keep) in located {
            let pos = pos + shift;
            if legs > 1 {
                self.copy(pos, legs);
                shift += legs - 1;
            }
            copies.push((s, pos..pos + legs, keep));
        }
        let count: usize = copies.iter().map(|(_, r, _)| r.len()).sum();
        let mean = copies.iter().flat_map(|(_, r, _)| r.clone()).sum::<usize>() as f64 / count.max(1) as f64;
        let mut available: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (s, range, keep) in copies {
            let mut positions: Vec<usize> = range.collect();
            if keep {
                let (first, last) = (positions[0], positions[positions.len() - 1]);
                if (first as f64 - mean).abs() >= (last as f64 - mean).abs() {
                    positions.remove(0);
                } else {
                    positions.pop();
                }
            }
            positions.reverse();
            available.insert(s, positions);
        }
        let mut chosen = Vec::with_capacity(needed.len());
        for (s, ob) in needed {
            let pos = available.get_mut(s).and_then(Vec::pop).expect("enough copies");
            if &self.types[pos] != ob {
                return Err(unsupported(format!("a wire of type {} feeds a port of type {ob}", self.types[pos])));
            }
            chosen.push(pos);
        }
        self.route(&chosen)
    }

    /// Permutes the wires so that `chosen` become contiguous, in order,
    /// after the other wires that were left of the leftmost chosen one.
    fn route(&mut self, chosen: &[usize]) -> Result<usize> {
        let Some(&first) = chosen.iter().min() else {
            return Ok(self.wires.len());
        };
        let mut is_chosen = vec![false; self.wires.len()];
        for &c in chosen {
            is_chosen[c] = true;
        }
        let others: Vec<usize> = (0..self.wires.len()).filter(|&i| !is_chosen[i]).collect();
        let start = others.iter().filter(|&&i| i < first).count();
        let mut order = others[..start].to_vec();
        order.extend_from_slice(chosen);
        order.extend_from_slice(&others[start..]);
        if order.iter().enumerate().any(|(j, &i)| i != j) {
            let d = permute(&self.ty(), &order)?;
            self.layers.extend(d.layers().iter().cloned());
            self.wires = order.iter().map(|&i| self.wires[i]).collect();
            self.types = order.iter().map(|&i| self.types[i].clone()).collect();
        }
        Ok(start)
    }
}

/// Lays out a causal plan: each box in turn, with its inputs gathered by
/// copies and swaps, and unused outputs discarded right away.
pub(crate) fn emit_causal(plan: &Plan, style: CopyStyle) -> Result<Diagram> {
    let mut uses = vec![0; plan.n_spiders];
    for (ins, _) in &plan.box_wires {
        for &s in ins {
            uses[s] += 1;
        }
    }
    for &s in &plan.cod_wires {
        uses[s] += 1;
    }
    let mut emitter = Emitter {
        layers: Vec::new(),
        wires: plan.dom_wires.clone(),
        types: plan.dom.objects().to_vec(),
        uses,
        style,
    };
    emitter.discard_unused(0..emitter.wires.len());
    for (b, (ins, outs)) in plan.boxes.iter().zip(&plan.box_wires) {
        let needed: Vec<(usize, Ob)> = ins.iter().copied().zip(b.dom().objects().iter().cloned()).collect();
        let start = emitter.gather(&needed, true)?;
        emitter.push(start, b.clone());
        emitter.wires.splice(start..start + ins.len(), outs.iter().copied());
        emitter.types.splice(start..start + ins.len(), b.cod().objects().iter().cloned());
        emitter.discard_unused(start..start + outs.len());
    }
    let needed: Vec<(usize, Ob)> = plan.cod_wires.iter().copied().zip(plan.cod.objects().iter().cloned()).collect();
    emitter.gather(&needed, false)?;
    if emitter.wires.len() != plan.cod_wires.len() {
        return Err(Error::Validation("wires left dangling at the codomain".into()));
    }
    Diagram::from_layers(plan.dom.clone(), emitter.layers)
}

impl Hypergraph {
    fn plan(&self) -> Plan {
        Plan {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            boxes: self.boxes.clone(),
            box_wires: self.box_wires.clone(),
            dom_wires: self.dom_wires.clone(),
            cod_wires: self.cod_wires.clone(),
            n_spiders: self.n_spiders(),
        }
    }

    fn port_type(&self, port: Port) -> Ob {
        match port {
            Port::Dom(i) => self.dom.objects()[i].clone(),
            Port::BoxIn(b, i) => self.boxes[b].dom().objects()[i].clone(),
            Port::BoxOut(b, i) => self.boxes[b].cod().objects()[i].clone(),
            Port::Cod(i) => self.cod.objects()[i].clone(),
        }
    }

    /// A planar diagram whose hypergraph is isomorphic to this one.
    pub fn to_diagram(&self) -> Result<Diagram> {
        self.to_diagram_with(Layout::Auto)
    }

    pub fn to_diagram_with(&self, layout: Layout) -> Result<Diagram> {
        if let Some(order) = self.box_order() {
            if order.iter().enumerate().any(|(i, &b)| i != b) {
                return self.permute_boxes(&order).to_diagram_with(layout);
            }
        }
        match layout {
            Layout::Frobenius => self.frobenius_layout(),
            Layout::Auto if self.is_causal() => emit_causal(&self.plan(), CopyStyle::Markov),
            Layout::Auto if self.is_monogamous() => self.traced_layout(),
            Layout::Auto if self.is_bijective() => self.compact_layout(),
            Layout::Auto => self.frobenius_layout(),
        }
    }

    /// Feedback wires and circles go through a right trace around a causal
    /// body.
    fn traced_layout(&self) -> Result<Diagram> {
        let mut plan = self.plan();
        let mut extra = Vec::new();
        for (s, ports) in self.ports().into_iter().enumerate() {
            match ports.as_slice() {
                [] => {
                    let ob = self.spider_types[s].clone();
                    plan.dom_wires.push(s);
                    plan.cod_wires.push(s);
                    extra.push(ob);
                }
                [a, b] => {
                    let (source, target) = if a.is_source() { (*a, *b) } else { (*b, *a) };
                    if target.rank() > source.rank() {
                        continue;
                    }
                    let ob = self.port_type(target);
                    if self.port_type(source) != ob {
                        return Err(unsupported(format!("feedback from {} into {ob}", self.port_type(source))));
                    }
                    let fresh = plan.fresh();
                    plan.redirect(target, fresh);
                    plan.dom_wires.push(fresh);
                    plan.cod_wires.push(s);
                    extra.push(ob);
                }
                _ => unreachable!("monogamous"),
            }
        }
        let extra = Ty::new(extra);
        plan.dom = plan.dom.tensor(&extra);
        plan.cod = plan.cod.tensor(&extra);
        let body = emit_causal(&plan, CopyStyle::Markov)?;
        body.trace(extra.len(), Side::Right)
    }

    /// Caps on top for spiders with two targets, cups below for spiders with
    /// two sources, a cap and a cup for feedback and for circles.
    fn compact_layout(&self) -> Result<Diagram> {
        let mut plan = self.plan();
        let mut caps: Vec<(DiagramBox, Vec<usize>)> = Vec::new();
        let mut cups: Vec<(DiagramBox, Vec<usize>)> = Vec::new();
        for (s, ports) in self.ports().into_iter().enumerate() {
            let mut ports = ports;
            ports.sort_by_key(|p| p.rank());
            match ports.as_slice() {
                [] => {
                    let x = self.spider_types[s].clone();
                    let (a, b) = (plan.fresh(), plan.fresh());
                    caps.push((Structural::cap(x.clone(), x.l())?.into(), vec![a, b]));
                    cups.push((Structural::cup(x.l(), x)?.into(), vec![b, a]));
                }
                [p, q] if !p.is_source() && !q.is_source() => {
                    let (a, b) = (plan.fresh(), plan.fresh());
                    plan.redirect(*p, a);
                    plan.redirect(*q, b);
                    caps.push((Structural::cap(self.port_type(*p), self.port_type(*q))?.into(), vec![a, b]));
                }
                [p, q] if p.is_source() && q.is_source() => {
                    let b = plan.fresh();
                    plan.redirect(*q, b);
                    cups.push((Structural::cup(self.port_type(*p), self.port_type(*q))?.into(), vec![s, b]));
                }
                [p, q] => {
                    let (source, target) = if p.is_source() { (*p, *q) } else { (*q, *p) };
                    if target.rank() > source.rank() {
                        continue;
                    }
                    let t = self.port_type(target);
                    let (a, b) = (plan.fresh(), plan.fresh());
                    plan.redirect(target, a);
                    caps.push((Structural::cap(t.clone(), t.l())?.into(), vec![a, b]));
                    cups.push((Structural::cup(t.l(), self.port_type(source))?.into(), vec![b, s]));
                }
                _ => unreachable!("bijective"),
            }
        }
        let mut boxes = Vec::new();
        let mut box_wires = Vec::new();
        for (b, outs) in caps {
            boxes.push(b);
            box_wires.push((Vec::new(), outs));
        }
        boxes.append(&mut plan.boxes);
        box_wires.append(&mut plan.box_wires);
        for (b, ins) in cups {
            boxes.push(b);
            box_wires.push((ins, Vec::new()));
        }
        plan.boxes = boxes;
        plan.box_wires = box_wires;
        emit_causal(&plan, CopyStyle::Markov)
    }

    /// Every spider that is not already causal becomes a spider box on top
    /// feeding its targets, joined to a spider box at the bottom that
    /// collects its sources.
    fn frobenius_layout(&self) -> Result<Diagram> {
        let mut plan = self.plan();
        let mut tops: Vec<(DiagramBox, Vec<usize>)> = Vec::new();
        let mut bottoms: Vec<(DiagramBox, Vec<usize>)> = Vec::new();
        for (s, ports) in self.ports().into_iter().enumerate() {
            let (sources, targets): (Vec<Port>, Vec<Port>) = ports.iter().partition(|p| p.is_source());
            if let [source] = sources.as_slice() {
                if targets.iter().all(|t| t.rank() > source.rank()) {
                    continue;
                }
            }
            let x = match ports.first() {
                Some(&p) => self.port_type(p),
                None => self.spider_types[s].clone(),
            };
            if let Some(&p) = ports.iter().find(|&&p| self.port_type(p) != x) {
                return Err(unsupported(format!("spider joining {x} and {}", self.port_type(p))));
            }
            let mut outs = Vec::new();
            for t in &targets {
                let fresh = plan.fresh();
                plan.redirect(*t, fresh);
                outs.push(fresh);
            }
            let back = plan.fresh();
            outs.push(back);
            let mut ins = Vec::new();
            for p in &sources {
                let fresh = plan.fresh();
                plan.redirect(*p, fresh);
                ins.push(fresh);
            }
            ins.push(back);
            tops.push((Structural::spider(0, outs.len(), x.clone()).into(), outs));
            bottoms.push((Structural::spider(ins.len(), 0, x).into(), ins));
        }
        let mut boxes = Vec::new();
        let mut box_wires = Vec::new();
        for (b, outs) in tops {
            boxes.push(b);
            box_wires.push((Vec::new(), outs));
        }
        boxes.append(&mut plan.boxes);
        box_wires.append(&mut plan.box_wires);
        for (b, ins) in bottoms {
            boxes.push(b);
            box_wires.push((ins, Vec::new()));
        }
        plan.boxes = boxes;
        plan.box_wires = box_wires;
        emit_causal(&plan, CopyStyle::Spiders)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_category::Generator;
    use crate::planar::Equality;

    fn ty(s: &str) -> Ty {
        Ty::parse(s).unwrap()
    }

    fn boxed(name: &str, dom: &str, cod: &str) -> DiagramBox {
        DiagramBox::Gen(Generator::new(name, ty(dom), ty(cod)))
    }

    fn round_trip(h: &Hypergraph, layout: Layout) -> Diagram {
        let d = h.to_diagram_with(layout).unwrap();
        d.validate().unwrap();
        let back = Hypergraph::from_diagram(&d).unwrap();
        assert!(back.is_isomorphic(h), "{h:?}\n{d}\n{back:?}");
        d
    }

    #[test]
    fn copy_discard_layout_is_exact() {
        let x = Ob::new("x");
        let f = boxed("f", "x x", "y");
        let h = Hypergraph::labelled(
            ty("x x"),
            ty("y"),
            vec![f.clone(), f.clone()],
            &[0, 1],
            &[(vec![1, 0], vec![2]), (vec![0, 1], vec![3])],
            &[3],
            &[(0, x.clone()), (1, x.clone()), (2, Ob::new("y")), (3, Ob::new("y"))],
        )
        .unwrap();
        let d = round_trip(&h, Layout::Auto);
        let xx = Ty::from("x");
        let copy = Diagram::from(Structural::copy("x", 2));
        let middle = Diagram::from(Structural::swap("x", "x"))
            .then(&Diagram::from(f.clone()))
            .unwrap()
            .then(&Diagram::from(Structural::discard("y")))
            .unwrap();
        let expected = copy
            .tensor(&copy)
            .then(&middle.whisker_left(&xx).whisker_right(&xx))
            .unwrap()
            .then(&Diagram::from(f))
            .unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn every_fragment_round_trips() {
        let x = Ob::new("x");
        let f = boxed("f", "x", "x");
        // Feedback: f's output loops into its input.
        let loop_ = Hypergraph::labelled(ty(""), ty(""), vec![f.clone()], &[], &[(vec![0], vec![0])], &[], &[(0, x.clone())]).unwrap();
        assert!(loop_.is_monogamous() && !loop_.is_causal());
        let d = round_trip(&loop_, Layout::Auto);
        assert!(matches!(d.boxes().next(), Some(DiagramBox::Trace(_))));
        round_trip(&loop_, Layout::Frobenius);

        // Two targets: a cap.
        let cap = Hypergraph::spiders(0, 2, &ty("x"));
        round_trip(&cap, Layout::Auto);
        let cup = Hypergraph::spiders(2, 0, &ty("x"));
        round_trip(&cup, Layout::Auto);
        let circle = Hypergraph::new(ty(""), ty(""), vec![], vec![], vec![], vec![], vec![x.clone()]).unwrap();
        round_trip(&circle, Layout::Auto);
        let g = boxed("g", "x x", "");
        let h = Hypergraph::labelled(
            ty("x"),
            ty("x"),
            vec![g.clone(), f.clone()],
            &['a'],
            &[(vec!['a', 'b'], vec![]), (vec!['c'], vec!['b'])],
            &['c'],
            &[('a', x.clone()), ('b', x.clone()), ('c', x.clone())],
        )
        .unwrap();
        assert!(h.is_bijective() && !h.is_monogamous());
        round_trip(&h, Layout::Auto);

        // General spiders.
        let merge = Hypergraph::spiders(3, 2, &ty("x"));
        round_trip(&merge, Layout::Auto);
        round_trip(&Hypergraph::spiders(0, 0, &ty("x")), Layout::Auto);
    }

    #[test]
    fn causal_layouts_use_only_swaps_when_monogamous() {
        let f = gen_diagram();
        let h = Hypergraph::from_diagram(&f).unwrap();
        let d = h.to_diagram().unwrap();
        assert!(d.boxes().all(|b| matches!(b, DiagramBox::Gen(_) | DiagramBox::Structural(Structural::Swap { .. }))));
        assert!(d.equal(&f, Equality::Hypergraph).unwrap());
    }

    fn gen_diagram() -> Diagram {
        let f = Diagram::from(boxed("f", "x", "y z"));
        let g = Diagram::from(boxed("g", "z y", "w"));
        f.then(&Diagram::from(Structural::swap("y", "z"))).unwrap().then(&g).unwrap()
    }
}
