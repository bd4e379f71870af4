//! Interchangers and the planar normal form.

use super::{gen, Diagram, DiagramBox, Layer, Side, Ty};
use crate::error::{Error, Result};

/// The layer with `b` acting at `offset` on the wires of `ty`.
pub(crate) fn layer_at(ty: &Ty, offset: usize, b: DiagramBox) -> Layer {
    let end = offset + b.dom().len();
    Layer::new(ty.slice(0..offset), b, ty.slice(end..ty.len()))
}

fn single(layers: &[Layer], i: usize) -> Result<(DiagramBox, usize)> {
    layers[i]
        .single()
        .map(|(b, offset)| (b.clone(), offset))
        .ok_or_else(|| Error::NotInterchangeable {
            index: i.min(layers.len().saturating_sub(2)),
            reason: format!("layer {i} holds more than one box"),
        })
}

/// Exchanges layers `i` and `i + 1` in place. `side` says where the box of
/// layer `i + 1` sits relative to the box of layer `i`; it only matters when
/// both placements are possible, i.e. for boxes touching at a zero-width
/// boundary.
fn swap_layers(layers: &mut [Layer], i: usize, side: Side) -> Result<()> {
    if i + 1 >= layers.len() {
        return Err(Error::NotInterchangeable {
            index: i,
            reason: format!("the diagram has only {} layers", layers.len()),
        });
    }
    let (upper, a) = single(layers, i)?;
    let (lower, b) = single(layers, i + 1)?;
    let (upper_dom, upper_cod) = (upper.dom().len(), upper.cod().len());
    let (lower_dom, lower_cod) = (lower.dom().len(), lower.cod().len());
    let top = layers[i].dom();
    let (new_upper, new_lower) = match side {
        Side::Right if b >= a + upper_cod => {
            let lower_offset = b - upper_cod + upper_dom;
            let new_upper = layer_at(&top, lower_offset, lower);
            let new_lower = layer_at(&new_upper.cod(), a, upper);
            (new_upper, new_lower)
        }
        Side::Left if b + lower_dom <= a => {
            let new_upper = layer_at(&top, b, lower);
            let upper_offset = a - lower_dom + lower_cod;
            let new_lower = layer_at(&new_upper.cod(), upper_offset, upper);
            (new_upper, new_lower)
        }
        _ => {
            return Err(Error::NotInterchangeable {
                index: i,
                reason: format!(
                    "{lower} at wire {b} is not {} of {upper} at wires {a}..{}",
                    if side == Side::Left { "left" } else { "right" },
                    a + upper_cod
                ),
            })
        }
    };
    layers[i] = new_upper;
    layers[i + 1] = new_lower;
    Ok(())
}

/// Whether the box of layer `i + 1` ends at or before the start of the box
/// of layer `i`, so that the normal form moves it up. Two scalars at the same
/// offset would swap forever and are left alone.
fn moves_up(layers: &[Layer], i: usize) -> bool {
    let (Some((upper, a)), Some((lower, b))) = (layers[i].single(), layers[i + 1].single()) else {
        return false;
    };
    let is_scalar = |d: &DiagramBox| d.dom().is_empty() && d.cod().is_empty();
    b + lower.dom().len() <= a && !(a == b && is_scalar(upper) && is_scalar(lower))
}

impl Diagram {
    /// Applies an interchanger to layers `i` and `i + 1`; see [`Side`].
    pub fn interchange(&self, i: usize, side: Side) -> Result<Diagram> {
        let mut layers = self.inside.clone();
        swap_layers(&mut layers, i, side)?;
        Ok(Diagram {
            inside: layers,
            dom: self.dom.clone(),
            cod: self.cod.clone(),
        })
    }

    /// The sides on which layers `i` and `i + 1` can be interchanged.
    pub fn interchange_sides(&self, i: usize) -> Vec<Side> {
        [Side::Left, Side::Right]
            .into_iter()
            .filter(|&side| {
                let mut layers = self.inside.clone();
                swap_layers(&mut layers, i, side).is_ok()
            })
            .collect()
    }

    /// Moves boxes up past boxes on their right until no interchanger
    /// applies, sweeping the layers from top to bottom.
    ///
    /// Canonical for boundary-connected diagrams: two such diagrams are equal
    /// in the free monoidal category iff their normal forms are equal.
    /// Floating scalars and other disconnected components may end up in
    /// different but equivalent positions.
    pub fn normal_form(&self) -> Diagram {
        let mut layers = self.split_layers().inside;
        let mut moved = true;
        while moved {
            moved = false;
            for i in 0..layers.len().saturating_sub(1) {
                if moves_up(&layers, i) {
                    swap_layers(&mut layers, i, Side::Left).expect("moves_up implies a left interchange");
                    moved = true;
                }
            }
        }
        Diagram {
            inside: layers,
            dom: self.dom.clone(),
            cod: self.cod.clone(),
        }
    }
}

/// The spiral of the given even length: the worst case for normalisation.
///
/// Starting from a state `u: Ty() -> x`, it winds `n = length / 2 - 1` copies
/// of `f: Ty() -> x @ x` outwards, closes with `u†` and then unwinds `n`
/// copies of `f†`.
pub fn spiral(length: usize) -> Result<Diagram> {
    if length < 4 || length % 2 != 0 {
        return Err(Error::InvalidLength(length));
    }
    let x = Ty::from("x");
    let f = gen("f", Ty::unit(), x.pow(2));
    let u = gen("u", Ty::unit(), x.clone());
    let n = length / 2 - 1;
    let mut diagram = u.clone();
    for i in 0..n {
        diagram = diagram.then(&f.whisker_left(&x.pow(i)).whisker_right(&x.pow(i + 1)))?;
    }
    diagram = diagram.then(&u.dagger().whisker_left(&x.pow(n)).whisker_right(&x.pow(n)))?;
    for i in 0..n {
        let m = n - i - 1;
        diagram = diagram.then(&f.dagger().whisker_left(&x.pow(m)).whisker_right(&x.pow(m)))?;
    }
    Ok(diagram)
}
