use std::collections::HashMap;

use super::Hypergraph;
use crate::free_category::Ob;

/// A partial bijection between the spiders of two hypergraphs.
struct Matching {
    forward: Vec<Option<usize>>,
    backward: Vec<Option<usize>>,
}

impl Matching {
    /// Pairs each spider in `left` with the one in `right` at the same
    /// position. Returns the newly paired spiders, or `None` on a conflict
    /// (after undoing its own changes).
    fn extend(&mut self, left: &[usize], right: &[usize]) -> Option<Vec<usize>> {
        if left.len() != right.len() {
            return None;
        }
        let mut added = Vec::new();
        for (&a, &b) in left.iter().zip(right) {
            match (self.forward[a], self.backward[b]) {
                (Some(x), _) if x == b => {}
                (None, None) => {
                    self.forward[a] = Some(b);
                    self.backward[b] = Some(a);
                    added.push(a);
                }
                _ => {
                    self.undo(&added);
                    return None;
                }
            }
        }
        Some(added)
    }

    fn undo(&mut self, added: &[usize]) {
        for &a in added {
            if let Some(b) = self.forward[a].take() {
                self.backward[b] = None;
            }
        }
    }
}

impl Hypergraph {
    /// Whether the two hypergraphs are equal up to renaming spiders and
    /// reordering boxes. Box labels, spider types and the order of ports on
    /// each box and on the boundary are preserved.
    pub fn is_isomorphic(&self, other: &Hypergraph) -> bool {
        if self.dom != other.dom
            || self.cod != other.cod
            || self.boxes.len() != other.boxes.len()
            || self.n_spiders() != other.n_spiders()
        {
            return false;
        }
        let mut sorted_self = self.spider_types.clone();
        let mut sorted_other = other.spider_types.clone();
        sorted_self.sort();
        sorted_other.sort();
        if sorted_self != sorted_other {
            return false;
        }
        let mut matching = Matching {
            forward: vec![None; self.n_spiders()],
            backward: vec![None; other.n_spiders()],
        };
        if matching.extend(&self.dom_wires, &other.dom_wires).is_none()
            || matching.extend(&self.cod_wires, &other.cod_wires).is_none()
        {
            return false;
        }
        // Candidate boxes of `other` for each box of `self`, by label.
        let mut by_label: HashMap<&crate::planar::DiagramBox, Vec<usize>> = HashMap::new();
        for (j, b) in other.boxes.iter().enumerate() {
            by_label.entry(b).or_default().push(j);
        }
        let mut candidates = Vec::with_capacity(self.boxes.len());
        for b in &self.boxes {
            match by_label.get(b) {
                Some(c) => candidates.push(c.clone()),
                None => return false,
            }
        }
        let order = self.search_order();
        let mut used = vec![false; other.boxes.len()];
        self.backtrack(other, &order, 0, &candidates, &mut used, &mut matching)
    }

    /// Boxes ordered so that each one shares spiders with the boundary or
    /// with earlier boxes whenever possible.
    fn search_order(&self) -> Vec<usize> {
        let n = self.boxes.len();
        let mut known = vec![false; self.n_spiders()];
        for &s in self.dom_wires.iter().chain(&self.cod_wires) {
            known[s] = true;
        }
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let score = |b: usize| {
                let (ins, outs) = &self.box_wires[b];
                ins.iter().chain(outs).filter(|&&s| known[s]).count()
            };
            let next = (0..n)
                .filter(|&b| !placed[b])
                .max_by_key(|&b| (score(b), std::cmp::Reverse(b)))
                .expect("boxes remain");
            placed[next] = true;
            let (ins, outs) = &self.box_wires[next];
            for &s in ins.iter().chain(outs) {
                known[s] = true;
            }
            order.push(next);
        }
        order
    }

    fn backtrack(
        &self,
        other: &Hypergraph,
        order: &[usize],
        depth: usize,
        candidates: &[Vec<usize>],
        used: &mut [bool],
        matching: &mut Matching,
    ) -> bool {
        let Some(&i) = order.get(depth) else {
            return self.isolated_match(other, matching);
        };
        let (ins, outs) = &self.box_wires[i];
        for &j in &candidates[i] {
            if used[j] {
                continue;
            }
            let (other_ins, other_outs) = &other.box_wires[j];
            let Some(mut added) = matching.extend(ins, other_ins) else {
                continue;
            };
            match matching.extend(outs, other_outs) {
                Some(more) => added.extend(more),
                None => {
                    matching.undo(&added);
                    continue;
                }
            }
            if added.iter().any(|&a| self.spider_types[a] != other.spider_types[matching.forward[a].unwrap()]) {
                matching.undo(&added);
                continue;
            }
            used[j] = true;
            if self.backtrack(other, order, depth + 1, candidates, used, matching) {
                return true;
            }
            used[j] = false;
            matching.undo(&added);
        }
        false
    }

    /// Spiders untouched by boxes and boundary are isolated on both sides;
    /// they match when their types agree as multisets.
    fn isolated_match(&self, other: &Hypergraph, matching: &Matching) -> bool {
        let left_mapped = matching.forward.iter().enumerate().filter_map(|(a, b)| b.map(|b| (a, b)));
        for (a, b) in left_mapped {
            if self.spider_types[a] != other.spider_types[b] {
                return false;
            }
        }
        let rest = |types: &[Ob], mapped: &[Option<usize>]| {
            let mut r: Vec<Ob> = types
                .iter()
                .zip(mapped)
                .filter(|(_, m)| m.is_none())
                .map(|(t, _)| t.clone())
                .collect();
            r.sort();
            r
        };
        rest(&self.spider_types, &matching.forward) == rest(&other.spider_types, &matching.backward)
    }
}
