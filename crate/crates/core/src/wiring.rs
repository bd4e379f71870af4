//! Building diagrams by applying boxes to named wires.
//!
//! A [`Session`] hands out one [`PortRef`] per input wire and per box output.
//! Boxes are applied to ports in any order the [`Mode`] allows, and
//! [`Session::finalize`] lays the result out as a planar diagram, inserting
//! the copies, discards and swaps the wiring needs.
//!
//! ```
//! use strandcat::wiring::{Mode, Session};
//! use strandcat::{gen, Ty};
//!
//! let f = gen("f", "x x", "y");
//! let (mut s, ports) = Session::open(Ty::from("x x"), Ty::from("y"), Mode::Markov);
//! let (a, b) = (&ports[0], &ports[1]);
//! s.apply(&f, &[b.clone(), a.clone()]).unwrap();
//! let out = s.apply(&f, &[a.clone(), b.clone()]).unwrap();
//! let d = s.finalize(&out).unwrap();
//! assert_eq!(d.count_boxes(), 6);
//! ```

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{unsupported, Error, Result};
use crate::free_category::Ob;
use crate::hypergraph::{emit_causal, CopyStyle, Plan};
use crate::planar::{Diagram, DiagramBox, Ty};
use crate::structure::Structural;

/// How often and in which order ports may be used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Every port is used exactly once, and boxes consume contiguous runs of
    /// the unused ports in order. No structural boxes are emitted.
    Monoidal,
    /// Every port is used exactly once; swaps are inserted as needed.
    Symmetric,
    /// Ports are used any number of times; copies and discards are inserted.
    Markov,
}

/// A wire of a session, with its type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PortRef {
    session: usize,
    id: usize,
    ty: Ob,
}

impl PortRef {
    pub fn id(&self) -> usize {
        self.id
    }

    pub fn ty(&self) -> &Ob {
        &self.ty
    }
}

/// One box application: the box, its input ports and its output ports.
#[derive(Clone, Debug)]
pub struct Application {
    pub b: DiagramBox,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
}

static SESSIONS: AtomicUsize = AtomicUsize::new(0);

#[derive(Debug)]
pub struct Session {
    key: usize,
    dom: Ty,
    cod: Ty,
    mode: Mode,
    types: Vec<Ob>,
    uses: Vec<usize>,
    log: Vec<Application>,
    /// Unused ports in planar order, maintained in monoidal mode.
    live: Vec<usize>,
}

impl Session {
    pub fn open(dom: Ty, cod: Ty, mode: Mode) -> (Session, Vec<PortRef>) {
        let mut s = Session {
            key: SESSIONS.fetch_add(1, Ordering::Relaxed),
            dom: dom.clone(),
            cod,
            mode,
            types: Vec::new(),
            uses: Vec::new(),
            log: Vec::new(),
            live: Vec::new(),
        };
        let ports = dom.objects().iter().map(|ob| s.fresh(ob)).collect();
        s.live = (0..dom.len()).collect();
        (s, ports)
    }

    fn fresh(&mut self, ob: &Ob) -> PortRef {
        self.types.push(ob.clone());
        self.uses.push(0);
        PortRef {
            session: self.key,
            id: self.types.len() - 1,
            ty: ob.clone(),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn use_count(&self, p: &PortRef) -> usize {
        self.uses.get(p.id).copied().unwrap_or(0)
    }

    pub fn log(&self) -> &[Application] {
        &self.log
    }

    fn check(&self, ports: &[PortRef], expected: &Ty, context: &str) -> Result<Vec<usize>> {
        if ports.len() != expected.len() {
            return Err(Error::Arity {
                context: context.into(),
                expected: expected.len(),
                found: ports.len(),
            });
        }
        let mut ids = Vec::with_capacity(ports.len());
        for (p, ob) in ports.iter().zip(expected.objects()) {
            if p.session != self.key || p.id >= self.types.len() {
                return Err(Error::UnknownPort(p.id));
            }
            if &self.types[p.id] != ob {
                return Err(Error::TypeMismatch {
                    context: context.into(),
                    expected: ob.to_string(),
                    found: self.types[p.id].to_string(),
                });
            }
            ids.push(p.id);
        }
        if self.mode != Mode::Markov {
            for (k, &id) in ids.iter().enumerate() {
                if self.uses[id] > 0 || ids[..k].contains(&id) {
                    return Err(Error::PortReuse(id));
                }
            }
        }
        Ok(ids)
    }

    fn allowed(&self, b: &DiagramBox) -> bool {
        match (b.as_structural(), self.mode) {
            (None, _) => true,
            (Some(_), Mode::Monoidal) => false,
            (Some(s), Mode::Symmetric) => matches!(s, Structural::Swap { .. }),
            (Some(s), Mode::Markov) => {
                matches!(s, Structural::Swap { .. } | Structural::Copy { .. } | Structural::Discard { .. })
            }
        }
    }

    /// Where `ids` sit among the unused ports, if they form a contiguous run
    /// in order.
    fn run_position(&self, ids: &[usize]) -> Result<usize> {
        let Some(first) = ids.first() else {
            return Ok(self.live.len());
        };
        let start = self.live.iter().position(|p| p == first).ok_or(Error::PortReuse(*first))?;
        if self.live.get(start..start + ids.len()) != Some(ids) {
            return Err(Error::OrderViolation(format!(
                "ports {ids:?} are not adjacent and in order among the unused ports {:?}",
                self.live
            )));
        }
        Ok(start)
    }

    /// Applies a single box (a diagram with exactly one box) to the given
    /// input ports and returns its output ports.
    pub fn apply(&mut self, b: &Diagram, inputs: &[PortRef]) -> Result<Vec<PortRef>> {
        let boxes: Vec<&DiagramBox> = b.boxes().collect();
        let [single] = boxes.as_slice() else {
            return Err(Error::Validation(format!("expected a single box, found {}", boxes.len())));
        };
        self.apply_box(single, inputs)
    }

    pub fn apply_box(&mut self, b: &DiagramBox, inputs: &[PortRef]) -> Result<Vec<PortRef>> {
        if !self.allowed(b) {
            return Err(unsupported(format!("{} in {:?} mode", b.name(), self.mode)));
        }
        let ids = self.check(inputs, &b.dom(), &b.name())?;
        let start = match self.mode {
            Mode::Monoidal => Some(self.run_position(&ids)?),
            _ => None,
        };
        for &id in &ids {
            self.uses[id] += 1;
        }
        let outputs: Vec<PortRef> = b.cod().objects().iter().map(|ob| self.fresh(ob)).collect();
        let out_ids: Vec<usize> = outputs.iter().map(|p| p.id).collect();
        if let Some(start) = start {
            self.live.splice(start..start + ids.len(), out_ids.iter().copied());
        }
        self.log.push(Application {
            b: b.clone(),
            inputs: ids,
            outputs: out_ids,
        });
        Ok(outputs)
    }

    /// Ends the session, returning `outputs` as the codomain.
    pub fn finalize(mut self, outputs: &[PortRef]) -> Result<Diagram> {
        let cod = self.cod.clone();
        let ids = self.check(outputs, &cod, "codomain")?;
        if self.mode == Mode::Monoidal && self.live != ids {
            return Err(Error::OrderViolation(format!(
                "the codomain must be the unused ports {:?} in order, found {ids:?}",
                self.live
            )));
        }
        for &id in &ids {
            self.uses[id] += 1;
        }
        if self.mode != Mode::Markov {
            if let Some(unused) = self.uses.iter().position(|&u| u == 0) {
                return Err(Error::UnusedPort(unused));
            }
        }
        let plan = Plan {
            dom_wires: (0..self.dom.len()).collect(),
            dom: self.dom,
            cod,
            boxes: self.log.iter().map(|a| a.b.clone()).collect(),
            box_wires: self.log.into_iter().map(|a| (a.inputs, a.outputs)).collect(),
            cod_wires: ids,
            n_spiders: self.types.len(),
        };
        emit_causal(&plan, CopyStyle::Markov)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hypergraph;
    use crate::planar::{gen, Equality};

    #[test]
    fn opening_hands_out_typed_ports() {
        let (_, ports) = Session::open(Ty::from("x y"), Ty::from("y"), Mode::Markov);
        let types: Vec<&str> = ports.iter().map(|p| p.ty().name.as_str()).collect();
        assert_eq!(types, vec!["x", "y"]);
        let (_, none) = Session::open(Ty::unit(), Ty::unit(), Mode::Monoidal);
        assert!(none.is_empty());
    }

    #[test]
    fn pass_through_is_identity() {
        for mode in [Mode::Monoidal, Mode::Symmetric, Mode::Markov] {
            let (s, ports) = Session::open(Ty::from("x"), Ty::from("x"), mode);
            assert_eq!(s.finalize(&ports).unwrap(), Diagram::id(Ty::from("x")));
        }
    }

    #[test]
    fn single_box() {
        let f = gen("f", "x", "y");
        let (mut s, ports) = Session::open(Ty::from("x"), Ty::from("y"), Mode::Monoidal);
        let out = s.apply(&f, &ports).unwrap();
        assert_eq!(s.finalize(&out).unwrap(), f);
    }

    #[test]
    fn copy_and_discard_layout() {
        let x = Ob::new("x");
        let f = gen("f", "x x", "y");
        let (mut s, ports) = Session::open(Ty::from("x x"), Ty::from("y"), Mode::Markov);
        let (a, b) = (ports[0].clone(), ports[1].clone());
        s.apply(&f, &[b.clone(), a.clone()]).unwrap();
        let out = s.apply(&f, &[a.clone(), b.clone()]).unwrap();
        assert_eq!((s.use_count(&a), s.use_count(&b)), (2, 2));
        let d = s.finalize(&out).unwrap();
        let copy = Diagram::from(Structural::copy(x.clone(), 2));
        let middle = Diagram::from(Structural::swap(x.clone(), x.clone()))
            .then(&f)
            .unwrap()
            .then(&Diagram::from(Structural::discard(Ob::new("y"))))
            .unwrap();
        let expected = copy
            .tensor(&copy)
            .then(&Diagram::id(Ty::from("x")).tensor(&middle).tensor(&Diagram::id(Ty::from("x"))))
            .unwrap()
            .then(&f)
            .unwrap();
        assert!(d.equal(&expected, Equality::Hypergraph).unwrap());
        assert_eq!(d, expected);
    }

    #[test]
    fn linearity_is_enforced() {
        let f = gen("f", "x x", "y");
        let (mut s, ports) = Session::open(Ty::from("x x"), Ty::from("y y"), Mode::Symmetric);
        s.apply(&f, &[ports[1].clone(), ports[0].clone()]).unwrap();
        let err = s.apply(&f, &[ports[0].clone(), ports[1].clone()]).unwrap_err();
        assert_eq!(err, Error::PortReuse(0));

        let (s, _) = Session::open(Ty::from("x"), Ty::unit(), Mode::Symmetric);
        assert_eq!(s.finalize(&[]).unwrap_err(), Error::UnusedPort(0));
    }

    #[test]
    fn monoidal_mode_forbids_reordering() {
        let f = gen("f", "x x", "y");
        let (mut s, ports) = Session::open(Ty::from("x x"), Ty::from("y"), Mode::Monoidal);
        let err = s.apply(&f, &[ports[1].clone(), ports[0].clone()]).unwrap_err();
        assert!(matches!(err, Error::OrderViolation(_)));
        let out = s.apply(&f, &ports).unwrap();
        assert_eq!(s.finalize(&out).unwrap(), f);
    }

    #[test]
    fn symmetric_mode_swaps() {
        let f = gen("f", "x", "y");
        let g = gen("g", "z", "w");
        let (mut s, ports) = Session::open(Ty::from("x z"), Ty::from("w y"), Mode::Symmetric);
        let y = s.apply(&f, &ports[..1]).unwrap();
        let w = s.apply(&g, &ports[1..]).unwrap();
        let d = s.finalize(&[w[0].clone(), y[0].clone()]).unwrap();
        let h = Hypergraph::from_diagram(&d).unwrap();
        assert!(h.is_monogamous() && h.is_causal());
        let expected = f.tensor(&g).then(&Diagram::from(Structural::swap(Ob::new("y"), Ob::new("w")))).unwrap();
        assert!(d.equal(&expected, Equality::Hypergraph).unwrap());
    }

    #[test]
    fn type_errors() {
        let f = gen("f", "y", "y");
        let (mut s, ports) = Session::open(Ty::from("x"), Ty::from("x"), Mode::Markov);
        assert!(matches!(s.apply(&f, &ports), Err(Error::TypeMismatch { .. })));
        let (other, _) = Session::open(Ty::from("x"), Ty::from("x"), Mode::Markov);
        assert!(matches!(other.finalize(&ports), Err(Error::UnknownPort(0))));
    }
}
