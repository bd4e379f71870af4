use std::fmt::Write;

use crate::planar::{Diagram, DiagramBox};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Walks the layers, calling `on_box(layer, index, offset, box)` for each box
/// and `on_edge(source, target, label)` for each wire segment. Nodes are named
/// `in{i}`, `box{k}` and `out{i}`.
fn walk(d: &Diagram, mut on_box: impl FnMut(usize, usize, usize, &DiagramBox), mut on_edge: impl FnMut(&str, &str, &str)) {
    let mut wires: Vec<(String, String)> = d
        .dom()
        .objects()
        .iter()
        .enumerate()
        .map(|(i, ob)| (format!("in{i}"), ob.to_string()))
        .collect();
    let mut k = 0;
    for (row, layer) in d.layers().iter().enumerate() {
        let mut offset = layer.left().len();
        for (b, right) in layer.boxes() {
            let node = format!("box{k}");
            on_box(row, k, offset, b);
            let (n_in, n_out) = (b.dom().len(), b.cod().len());
            for (source, label) in wires.drain(offset..offset + n_in) {
                on_edge(&source, &node, &label);
            }
            let outputs = b.cod().objects().iter().map(|ob| (node.clone(), ob.to_string())).collect::<Vec<_>>();
            wires.splice(offset..offset, outputs);
            offset += n_out + right.len();
            k += 1;
        }
    }
    for (i, (source, label)) in wires.iter().enumerate() {
        on_edge(source, &format!("out{i}"), label);
    }
}

/// Graphviz source: one node per box and per boundary wire, one edge per
/// wire segment.
pub fn render_dot(d: &Diagram) -> String {
    let mut out = String::from("digraph diagram {\n  rankdir=TB;\n");
    for (i, ob) in d.dom().objects().iter().enumerate() {
        writeln!(out, "  in{i} [shape=none, label=\"{}\"];", escape(&ob.to_string())).unwrap();
    }
    let mut edges = String::new();
    walk(
        d,
        |_, k, _, b| {
            let shape = if b.as_structural().is_some() { "ellipse" } else { "box" };
            writeln!(out, "  box{k} [shape={shape}, label=\"{}\"];", escape(&b.name())).unwrap();
        },
        |source, target, label| {
            writeln!(edges, "  {source} -> {target} [label=\"{}\"];", escape(label)).unwrap();
        },
    );
    for (i, ob) in d.cod().objects().iter().enumerate() {
        writeln!(out, "  out{i} [shape=none, label=\"{}\"];", escape(&ob.to_string())).unwrap();
    }
    out.push_str(&edges);
    out.push_str("}\n");
    out
}

/// TikZ source with one row per layer: boundary wires at the top and bottom
/// rows, each box centred over the wires it consumes.
pub fn render_tikz(d: &Diagram) -> String {
    let mut out = String::from("\\begin{tikzpicture}[yscale=-1]\n");
    for (i, ob) in d.dom().objects().iter().enumerate() {
        writeln!(out, "  \\node (in{i}) at ({i}, 0) {{${ob}$}};").unwrap();
    }
    let mut edges = String::new();
    walk(
        d,
        |row, k, offset, b| {
            let width = b.dom().len().max(b.cod().len()).max(1) as f64;
            let x = offset as f64 + (width - 1.0) / 2.0;
            writeln!(out, "  \\node[draw] (box{k}) at ({x}, {}) {{${}$}};", row + 1, b.name()).unwrap();
        },
        |source, target, _| {
            writeln!(edges, "  \\draw ({source}) -- ({target});").unwrap();
        },
    );
    let bottom = d.layers().len() + 1;
    for (i, ob) in d.cod().objects().iter().enumerate() {
        writeln!(out, "  \\node (out{i}) at ({i}, {bottom}) {{${ob}$}};").unwrap();
    }
    out.push_str(&edges);
    out.push_str("\\end{tikzpicture}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{gen, Ty};

    #[test]
    fn identity_golden() {
        let expected = "digraph diagram {\n  rankdir=TB;\n  in0 [shape=none, label=\"x\"];\n  out0 [shape=none, label=\"x\"];\n  in0 -> out0 [label=\"x\"];\n}\n";
        assert_eq!(render_dot(&Diagram::id(Ty::from("x"))), expected);
    }

    #[test]
    fn one_node_per_box() {
        let d = gen("f", "x", "y z").then(&gen("g", "y", "z").tensor(&gen("h", "z", "z"))).unwrap();
        let dot = render_dot(&d);
        assert_eq!(dot.matches("shape=box").count(), 3);
        assert_eq!(dot.matches(" -> ").count(), 5);
        assert_eq!(dot, render_dot(&d));
        let tikz = render_tikz(&d);
        assert_eq!(tikz.matches("\\node[draw]").count(), 3);
    }
}
