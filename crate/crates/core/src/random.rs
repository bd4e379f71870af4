//! Seeded random diagrams, wiring nets, hypergraphs and models.
//!
//! Every generator draws from a [`ChaCha8Rng`] built by [`rng`], whose seed
//! is read from the `STRANDCAT_SEED` environment variable.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::free_category::{Generator, Ob};
use crate::hypergraph::Hypergraph;
use crate::io::generators;
use crate::planar::{Diagram, DiagramBox, Layer, Side, Ty};
use crate::semantics::{RigTensor, TensorModel};
use crate::structure::Structural;
use crate::wiring::{Mode, Session};

pub const SEED_VAR: &str = "STRANDCAT_SEED";
pub const DEFAULT_SEED: u64 = 20_240_601;

/// The seed from `STRANDCAT_SEED`, or [`DEFAULT_SEED`].
///
/// # Panics
///
/// When the variable is set but is not an unsigned integer.
pub fn seed() -> u64 {
    match std::env::var(SEED_VAR) {
        Ok(text) => text
            .trim()
            .parse()
            .unwrap_or_else(|_| panic!("{SEED_VAR} must be an unsigned integer, found {text:?}")),
        Err(_) => DEFAULT_SEED,
    }
}

/// A generator on its own stream, so that suites do not disturb each other.
pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    rng.set_stream(stream);
    rng
}

const OBJECTS: [&str; 2] = ["x", "y"];
const LETTERS: [&str; 3] = ["f", "g", "h"];

fn ob(rng: &mut impl Rng) -> Ob {
    Ob::new(*OBJECTS.choose(rng).unwrap())
}

/// `len` random objects.
pub fn word(rng: &mut impl Rng, len: usize) -> Vec<Ob> {
    (0..len).map(|_| ob(rng)).collect()
}

fn spell(obs: &[Ob]) -> String {
    obs.iter().map(|o| o.name.as_str()).collect()
}

/// A generator named after its signature, as in `f_xy_y`, so that equal
/// names always have equal types.
pub fn labelled_box(letter: &str, dom: &[Ob], cod: &[Ob]) -> DiagramBox {
    let name = format!("{letter}_{}_{}", spell(dom), spell(cod));
    DiagramBox::Gen(Generator::new(name, Ty::new(dom.to_vec()), Ty::new(cod.to_vec())))
}

fn random_box(rng: &mut impl Rng, dom: &[Ob], cod: &[Ob]) -> DiagramBox {
    labelled_box(LETTERS.choose(rng).unwrap(), dom, cod)
}

/// A planar diagram of generators from a one-wire domain. Every box has at
/// least one input and one output, so the diagram is connected to its
/// boundary, and no slice is wider than `max_width`.
pub fn planar(rng: &mut impl Rng, n_boxes: usize, max_width: usize) -> Diagram {
    let start = ob(rng);
    planar_from(rng, vec![start], n_boxes, max_width)
}

/// Like [`planar`], from the given domain.
pub fn planar_from(rng: &mut impl Rng, dom: Vec<Ob>, n_boxes: usize, max_width: usize) -> Diagram {
    let mut wires = dom.clone();
    let mut layers = Vec::with_capacity(n_boxes);
    for _ in 0..n_boxes {
        if wires.is_empty() {
            break;
        }
        let n_in = rng.gen_range(1..=wires.len().min(2));
        let offset = rng.gen_range(0..=wires.len() - n_in);
        let room = max_width.saturating_sub(wires.len() - n_in).clamp(1, 2);
        let n_out = rng.gen_range(1..=room);
        let cod = word(rng, n_out);
        let b = random_box(rng, &wires[offset..offset + n_in], &cod);
        let left = Ty::new(wires[..offset].to_vec());
        let right = Ty::new(wires[offset + n_in..].to_vec());
        layers.push(Layer::new(left, b, right));
        wires.splice(offset..offset + n_in, cod);
    }
    Diagram::from_layers(Ty::new(dom), layers).expect("layers are built to match")
}

/// Applies `steps` random interchangers to the one-box-per-layer form of `d`.
pub fn interchange_walk(rng: &mut impl Rng, d: &Diagram, steps: usize) -> Diagram {
    let mut d = d.split_layers();
    if d.layers().len() < 2 {
        return d;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..d.layers().len() - 1);
        if let Some(&side) = d.interchange_sides(i).choose(rng) {
            d = d.interchange(i, side).expect("side was checked");
        }
    }
    d
}

/// Boxes applied to numbered wires: the input of a wiring session, kept
/// independent of any layout.
#[derive(Clone, Debug)]
pub struct Net {
    pub mode: Mode,
    /// Type of each wire; the first `n_dom` wires are the domain.
    pub types: Vec<Ob>,
    pub n_dom: usize,
    pub boxes: Vec<(DiagramBox, Vec<usize>, Vec<usize>)>,
    pub cod: Vec<usize>,
}

impl Net {
    /// A random net. Symmetric nets use every wire exactly once; Markov nets
    /// use wires any number of times, including none.
    pub fn random(rng: &mut impl Rng, mode: Mode, n_boxes: usize) -> Net {
        let n_dom = rng.gen_range(0..=3);
        let mut net = Net {
            mode,
            types: word(rng, n_dom),
            n_dom,
            boxes: Vec::new(),
            cod: Vec::new(),
        };
        let mut live: Vec<usize> = (0..n_dom).collect();
        for _ in 0..n_boxes {
            let inputs: Vec<usize> = if mode == Mode::Markov {
                let n = rng.gen_range(0..=2.min(net.types.len()));
                (0..n).map(|_| rng.gen_range(0..net.types.len())).collect()
            } else {
                live.shuffle(rng);
                let n = rng.gen_range(0..=2.min(live.len()));
                live.drain(..n).collect()
            };
            let n_out = rng.gen_range(usize::from(inputs.is_empty())..=2);
            let cod = word(rng, n_out);
            let outputs: Vec<usize> = (net.types.len()..net.types.len() + n_out).collect();
            let dom: Vec<Ob> = inputs.iter().map(|&w| net.types[w].clone()).collect();
            net.boxes.push((random_box(rng, &dom, &cod), inputs, outputs.clone()));
            net.types.extend(cod);
            live.extend(outputs);
        }
        net.cod = if mode == Mode::Markov {
            let n = rng.gen_range(0..=3);
            (0..n).map(|_| rng.gen_range(0..net.types.len().max(1))).filter(|&w| w < net.types.len()).collect()
        } else {
            live.shuffle(rng);
            live
        };
        net
    }

    pub fn dom(&self) -> Ty {
        Ty::new(self.types[..self.n_dom].to_vec())
    }

    pub fn cod_ty(&self) -> Ty {
        Ty::new(self.cod.iter().map(|&w| self.types[w].clone()).collect())
    }

    /// A random order of the boxes in which every box comes after the boxes
    /// producing its inputs, or `None` when the wiring has a cycle.
    pub fn topological_order(&self, rng: &mut impl Rng) -> Option<Vec<usize>> {
        let mut ready = vec![false; self.types.len()];
        ready[..self.n_dom].iter_mut().for_each(|r| *r = true);
        let mut pending: Vec<usize> = (0..self.boxes.len()).collect();
        let mut order = Vec::new();
        while !pending.is_empty() {
            let available: Vec<usize> = (0..pending.len())
                .filter(|&i| self.boxes[pending[i]].1.iter().all(|&w| ready[w]))
                .collect();
            let &pick = available.choose(rng)?;
            let k = pending.swap_remove(pick);
            self.boxes[k].2.iter().for_each(|&w| ready[w] = true);
            order.push(k);
        }
        Some(order)
    }

    /// Replays the boxes in `order` through a wiring session.
    pub fn diagram(&self, order: &[usize]) -> Result<Diagram> {
        let (mut session, dom_ports) = Session::open(self.dom(), self.cod_ty(), self.mode);
        let mut ports = vec![None; self.types.len()];
        for (w, p) in dom_ports.into_iter().enumerate() {
            ports[w] = Some(p);
        }
        for &k in order {
            let (b, inputs, outputs) = &self.boxes[k];
            let inputs: Vec<_> = inputs.iter().map(|&w| ports[w].clone().expect("order is topological")).collect();
            for (w, p) in outputs.iter().zip(session.apply_box(b, &inputs)?) {
                ports[*w] = Some(p);
            }
        }
        let cod: Vec<_> = self.cod.iter().map(|&w| ports[w].clone().expect("every wire is produced")).collect();
        session.finalize(&cod)
    }

    /// The hypergraph with one spider per wire.
    pub fn hypergraph(&self) -> Hypergraph {
        Hypergraph::new(
            self.dom(),
            self.cod_ty(),
            self.boxes.iter().map(|(b, _, _)| b.clone()).collect(),
            (0..self.n_dom).collect(),
            self.boxes.iter().map(|(_, i, o)| (i.clone(), o.clone())).collect(),
            self.cod.clone(),
            self.types.clone(),
        )
        .expect("nets are well typed")
    }

    /// A small change: two wire endpoints of the same type are exchanged, or
    /// a box is renamed. The result may or may not be isomorphic.
    pub fn mutate(&self, rng: &mut impl Rng) -> Net {
        let mut net = self.clone();
        if rng.gen_bool(0.3) && !net.boxes.is_empty() {
            let k = rng.gen_range(0..net.boxes.len());
            let (b, i, o) = &net.boxes[k];
            let dom: Vec<Ob> = i.iter().map(|&w| net.types[w].clone()).collect();
            let cod: Vec<Ob> = o.iter().map(|&w| net.types[w].clone()).collect();
            let renamed = random_box(rng, &dom, &cod);
            if renamed != *b {
                net.boxes[k].0 = renamed;
                return net;
            }
        }
        let mut slots: Vec<(usize, usize)> = Vec::new();
        for (k, (_, inputs, _)) in net.boxes.iter().enumerate() {
            slots.extend((0..inputs.len()).map(|j| (k, j)));
        }
        slots.extend((0..net.cod.len()).map(|j| (usize::MAX, j)));
        let wire = |net: &Net, (k, j): (usize, usize)| if k == usize::MAX { net.cod[j] } else { net.boxes[k].1[j] };
        for _ in 0..16 {
            let (Some(&a), Some(&b)) = (slots.choose(rng), slots.choose(rng)) else {
                break;
            };
            let (wa, wb) = (wire(&net, a), wire(&net, b));
            if wa == wb || net.types[wa] != net.types[wb] {
                continue;
            }
            let mut candidate = net.clone();
            for ((k, j), w) in [(a, wb), (b, wa)] {
                if k == usize::MAX {
                    candidate.cod[j] = w;
                } else {
                    candidate.boxes[k].1[j] = w;
                }
            }
            if candidate.topological_order(rng).is_some() {
                return candidate;
            }
        }
        net
    }
}

/// An arbitrary hypergraph: spiders may have any number of ends, boxes may
/// form cycles and spiders may be isolated.
pub fn hypergraph(rng: &mut impl Rng) -> Hypergraph {
    let n = rng.gen_range(1..=6);
    let types = word(rng, n);
    let mut pick = |max: usize| -> Vec<usize> {
        let len = rng.gen_range(0..=max);
        (0..len).map(|_| rng.gen_range(0..n)).collect()
    };
    let dom_wires = pick(3);
    let cod_wires = pick(3);
    let n_boxes = pick(4).len();
    let box_wires: Vec<(Vec<usize>, Vec<usize>)> = (0..n_boxes).map(|_| (pick(2), pick(2))).collect();
    let obs = |ws: &[usize]| ws.iter().map(|&w| types[w].clone()).collect::<Vec<_>>();
    let boxes = box_wires.iter().map(|(i, o)| random_box(rng, &obs(i), &obs(o))).collect();
    Hypergraph::new(
        Ty::new(obs(&dom_wires)),
        Ty::new(obs(&cod_wires)),
        boxes,
        dom_wires,
        box_wires,
        cod_wires,
        types.clone(),
    )
    .expect("built to match")
}

/// A random word of up to `max_len` objects.
pub fn ty(rng: &mut impl Rng, max_len: usize) -> Ty {
    let len = rng.gen_range(0..=max_len);
    Ty::new(word(rng, len))
}

/// An arbitrary hypergraph with the given boundary: each boundary wire goes
/// to a fresh spider or to an earlier spider of the same type.
pub fn hypergraph_between(rng: &mut impl Rng, dom: &Ty, cod: &Ty) -> Hypergraph {
    let mut local = ChaCha8Rng::seed_from_u64(rng.gen());
    let n_inner = local.gen_range(0..=2);
    let mut types = word(&mut local, n_inner);
    let attach = |rng: &mut ChaCha8Rng, ob: &Ob, types: &mut Vec<Ob>| -> usize {
        let same: Vec<usize> = (0..types.len()).filter(|&s| types[s] == *ob).collect();
        match same.choose(rng) {
            Some(&s) if rng.gen_bool(0.4) => s,
            _ => {
                types.push(ob.clone());
                types.len() - 1
            }
        }
    };
    let dom_wires: Vec<usize> = dom.objects().iter().map(|o| attach(&mut local, o, &mut types)).collect();
    let cod_wires: Vec<usize> = cod.objects().iter().map(|o| attach(&mut local, o, &mut types)).collect();
    let mut boxes = Vec::new();
    let mut box_wires = Vec::new();
    let n_boxes = if types.is_empty() { 0 } else { local.gen_range(0..=3) };
    for _ in 0..n_boxes {
        let (ni, no) = (local.gen_range(0..=2), local.gen_range(0..=2));
        let ins: Vec<usize> = (0..ni).map(|_| local.gen_range(0..types.len())).collect();
        let outs: Vec<usize> = (0..no).map(|_| local.gen_range(0..types.len())).collect();
        let obs = |ws: &[usize]| ws.iter().map(|&w| types[w].clone()).collect::<Vec<_>>();
        boxes.push(random_box(&mut local, &obs(&ins), &obs(&outs)));
        box_wires.push((ins, outs));
    }
    Hypergraph::new(dom.clone(), cod.clone(), boxes, dom_wires, box_wires, cod_wires, types).expect("built to match")
}

/// A planar diagram mixing generators, daggers, bubbles and every kind of
/// structural box, for exercising documents.
pub fn rich(rng: &mut impl Rng, n_boxes: usize, depth: usize) -> Diagram {
    let n_dom = rng.gen_range(0..=2);
    let dom = word(rng, n_dom);
    let mut wires = dom.clone();
    let mut layers = Vec::new();
    let mut serial = 0;
    while layers.len() < n_boxes {
        let width = wires.len();
        let offset = rng.gen_range(0..=width);
        let here = &wires[offset..];
        let b: Option<DiagramBox> = match rng.gen_range(0..10) {
            0 if here.len() >= 2 => Some(Structural::swap(here[0].clone(), here[1].clone()).into()),
            1 if here.len() >= 2 => Some(
                Structural::Braid {
                    left: here[0].clone(),
                    right: here[1].clone(),
                    inverse: rng.gen(),
                }
                .into(),
            ),
            2 if !here.is_empty() => Some(
                Structural::Twist {
                    ob: here[0].clone(),
                    inverse: rng.gen(),
                }
                .into(),
            ),
            3 => {
                let o = ob(rng);
                Some(Structural::cap(o.clone(), o.r()).unwrap().into())
            }
            4 if here.len() >= 2 && here[0].name == here[1].name => {
                Some(Structural::cup(here[0].clone(), here[1].clone()).unwrap().into())
            }
            5 if !here.is_empty() => {
                let k = (1..=here.len().min(2)).take_while(|&k| here[k - 1] == here[0]).last().unwrap();
                Some(Structural::spider(k, rng.gen_range(0..=2), here[0].clone()).into())
            }
            6 if !here.is_empty() => Some(if rng.gen() {
                Structural::copy(here[0].clone(), rng.gen_range(0..=2)).into()
            } else {
                Structural::discard(here[0].clone()).into()
            }),
            7 if depth > 0 && !here.is_empty() => {
                let arg = rich_from(rng, vec![here[0].clone()], 2, depth - 1);
                let name = ["not", "cut"].choose(rng).unwrap();
                let bubble = arg.bubble(*name);
                bubble.layers().first().and_then(|l| l.single()).map(|(b, _)| b.clone())
            }
            _ => {
                let n_in = rng.gen_range(0..=here.len().min(2));
                serial += 1;
                let n_out = rng.gen_range(0..=2);
                let cod = word(rng, n_out);
                let (dom, cod) = (Ty::new(here[..n_in].to_vec()), Ty::new(cod));
                Some(DiagramBox::Gen(if rng.gen_bool(0.25) {
                    Generator::new(format!("b{serial}"), cod, dom).dagger()
                } else {
                    Generator::new(format!("b{serial}"), dom, cod)
                }))
            }
        };
        let Some(b) = b else { continue };
        let n_in = b.dom().len();
        let left = Ty::new(wires[..offset].to_vec());
        let right = Ty::new(wires[offset + n_in..].to_vec());
        wires.splice(offset..offset + n_in, b.cod().objects().iter().cloned());
        layers.push(Layer::new(left, b, right));
    }
    Diagram::from_layers(Ty::new(dom), layers).expect("layers are built to match")
}

fn rich_from(rng: &mut impl Rng, dom: Vec<Ob>, n_boxes: usize, depth: usize) -> Diagram {
    let mut d = Diagram::id(Ty::new(dom.clone()));
    for _ in 0..n_boxes {
        let width = d.cod().len();
        let n_in = rng.gen_range(0..=width.min(1));
        let offset = rng.gen_range(0..=width - n_in);
        let n_out = rng.gen_range(0..=1);
        let cod = word(rng, n_out);
        let b = random_box(rng, &d.cod().objects()[offset..offset + n_in], &cod);
        let layer = Layer::new(d.cod().slice(0..offset), b, d.cod().slice(offset + n_in..width));
        d = d.then(&Diagram::from_layers(d.cod().clone(), vec![layer]).unwrap()).unwrap();
    }
    if depth > 0 && rng.gen_bool(0.3) && d.dom().len() == 1 && d.cod().len() == 1 {
        let traced = d.tensor(&Diagram::id(d.cod().clone()));
        if let Ok(t) = traced.trace(1, Side::Right) {
            return t;
        }
    }
    d
}

/// A float model for the generators of `d`, with object dimensions in
/// `1..=max_dim` and entries in `[-1, 1]`.
pub fn float_model(rng: &mut impl Rng, d: &Diagram, max_dim: usize) -> TensorModel<f64> {
    let mut model = TensorModel::new();
    let mut dims = std::collections::HashMap::new();
    for name in OBJECTS {
        let n = rng.gen_range(1..=max_dim);
        dims.insert(name, n);
        model = model.object(name, vec![n]);
    }
    let word = |ty: &Ty| ty.objects().iter().map(|o| dims[o.name.as_str()]).collect::<Vec<_>>();
    for (name, (dom, cod)) in generators(d).expect("random diagrams have consistent signatures") {
        let (dom, cod) = (word(&dom), word(&cod));
        let size = dom.iter().chain(&cod).product::<usize>();
        let entries = (0..size).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        model = model.arrow(name, RigTensor::new(dom, cod, entries).unwrap());
    }
    model
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_valid() {
        let mut r = rng(0);
        for _ in 0..50 {
            planar(&mut r, 6, 4).validate().unwrap();
            rich(&mut r, 6, 1).validate().unwrap();
            let net = Net::random(&mut r, Mode::Symmetric, 5);
            assert!(net.hypergraph().is_monogamous());
            let order = net.topological_order(&mut r).unwrap();
            net.diagram(&order).unwrap();
            let net = Net::random(&mut r, Mode::Markov, 5);
            net.diagram(&(0..net.boxes.len()).collect::<Vec<_>>()).unwrap();
            hypergraph(&mut r);
        }
    }

    #[test]
    fn streams_are_reproducible() {
        let a = planar(&mut rng(3), 5, 3);
        let b = planar(&mut rng(3), 5, 3);
        assert_eq!(a, b);
    }
}
