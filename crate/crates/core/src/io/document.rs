use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::free_category::{Generator, Ob};
use crate::hypergraph::Hypergraph;
use crate::planar::{Bubble, Diagram, DiagramBox, Layer, Side, Trace, Ty};
use crate::structure::{self, Structural, Structure};

pub const VERSION: &str = "1";

/// A JSON value together with its location, for error messages.
#[derive(Clone, Copy)]
pub(crate) struct Node<'a> {
    value: &'a Value,
    path: &'a str,
}

impl<'a> Node<'a> {
    pub(crate) fn root(value: &'a Value) -> Self {
        Node { value, path: "$" }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        Error::Schema {
            path: self.path.to_string(),
            message: message.into(),
        }
    }

    pub(crate) fn value(&self) -> &'a Value {
        self.value
    }

    pub(crate) fn get(&self, key: &str) -> Result<(Value, String)> {
        self.opt(key)?.ok_or_else(|| self.error(format!("missing field {key:?}")))
    }

    pub(crate) fn opt(&self, key: &str) -> Result<Option<(Value, String)>> {
        let object = self.value.as_object().ok_or_else(|| self.error("expected an object"))?;
        Ok(object.get(key).map(|v| (v.clone(), format!("{}.{key}", self.path))))
    }

    pub(crate) fn str(&self) -> Result<&'a str> {
        self.value.as_str().ok_or_else(|| self.error("expected a string"))
    }

    pub(crate) fn usize(&self) -> Result<usize> {
        self.value
            .as_u64()
            .map(|n| n as usize)
            .ok_or_else(|| self.error("expected a natural number"))
    }

    pub(crate) fn bool(&self) -> Result<bool> {
        self.value.as_bool().ok_or_else(|| self.error("expected a boolean"))
    }

    pub(crate) fn array(&self) -> Result<&'a [Value]> {
        self.value
            .as_array()
            .map(Vec::as_slice)
            .ok_or_else(|| self.error("expected an array"))
    }

    pub(crate) fn ty(&self) -> Result<Ty> {
        Ty::parse(self.str()?).ok_or_else(|| self.error("expected a type such as \"x y.r\""))
    }

    pub(crate) fn ob(&self) -> Result<Ob> {
        Ob::parse(self.str()?).ok_or_else(|| self.error("expected an object such as \"x.r\""))
    }
}

/// Runs `f` on the child at `key`.
fn field<T>(node: Node, key: &str, f: impl FnOnce(Node) -> Result<T>) -> Result<T> {
    let (value, path) = node.get(key)?;
    f(Node { value: &value, path: &path })
}

fn opt_field<T>(node: Node, key: &str, f: impl FnOnce(Node) -> Result<T>) -> Result<Option<T>> {
    match node.opt(key)? {
        Some((value, path)) => f(Node { value: &value, path: &path }).map(Some),
        None => Ok(None),
    }
}

fn items<T>(node: Node, mut f: impl FnMut(Node) -> Result<T>) -> Result<Vec<T>> {
    node.array()?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let path = format!("{}[{i}]", node.path);
            f(Node { value: v, path: &path })
        })
        .collect()
}

pub(crate) fn ty_text(ty: &Ty) -> String {
    ty.objects().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// A box declaration: its undaggered type and optional payload.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxDecl {
    pub dom: Ty,
    pub cod: Ty,
    pub payload: Option<Value>,
}

/// A parsed document.
#[derive(Clone, Debug)]
pub struct Document {
    pub version: String,
    pub structure: Option<Structure>,
    pub boxes: BTreeMap<String, BoxDecl>,
    pub diagram: Diagram,
    /// Present when the body was given in hypergraph form.
    pub hypergraph: Option<Hypergraph>,
}

impl Document {
    /// The hypergraph of the document, as given or computed from the diagram.
    pub fn to_hypergraph(&self) -> Result<Hypergraph> {
        match &self.hypergraph {
            Some(h) => Ok(h.clone()),
            None => Hypergraph::from_diagram(&self.diagram),
        }
    }
}

struct Reader {
    boxes: BTreeMap<String, BoxDecl>,
}

impl Reader {
    fn box_ref(&self, node: Node) -> Result<DiagramBox> {
        let kind = field(node, "kind", |n| n.str().map(str::to_string))?;
        let ob = |key: &str| field(node, key, |n| n.ob());
        let flag = |key: &str| opt_field(node, key, |n| n.bool()).map(Option::unwrap_or_default);
        let count = |key: &str| field(node, key, |n| n.usize());
        let invalid = |e: Error| match e {
            Error::Schema { .. } => e,
            other => node.error(other.to_string()),
        };
        let s = match kind.as_str() {
            "box" => {
                let name = field(node, "name", |n| n.str().map(str::to_string))?;
                let decl = self
                    .boxes
                    .get(&name)
                    .ok_or_else(|| node.error(format!("box {name:?} is not declared in the signature")))?;
                let mut g = Generator::new(name, decl.dom.clone(), decl.cod.clone());
                if let Some(p) = &decl.payload {
                    g = g.with_payload(p.clone());
                }
                if flag("dagger")? {
                    g = g.dagger();
                }
                return Ok(DiagramBox::Gen(g));
            }
            "bubble" => {
                let name = field(node, "name", |n| n.str().map(str::to_string))?;
                let arg = field(node, "arg", |n| self.diagram(n))?;
                return Ok(DiagramBox::Bubble(Bubble { name, arg: Arc::new(arg) }));
            }
            "trace" => {
                let body = field(node, "body", |n| self.diagram(n))?;
                let traced = field(node, "traced", |n| n.ty())?;
                let side = field(node, "side", side)?;
                let d = structure::trace(&body, traced.len(), side).map_err(invalid)?;
                let b = d.boxes().next().cloned().expect("a trace box");
                if let DiagramBox::Trace(t) = &b {
                    if t.traced != traced {
                        return Err(node.error(format!("traced wires have type {}, not {traced}", t.traced)));
                    }
                }
                return Ok(b);
            }
            "swap" => Structural::swap(ob("left")?, ob("right")?),
            "braid" => Structural::Braid {
                left: ob("left")?,
                right: ob("right")?,
                inverse: flag("inverse")?,
            },
            "twist" => Structural::Twist {
                ob: ob("ob")?,
                inverse: flag("inverse")?,
            },
            "cup" => Structural::cup(ob("left")?, ob("right")?).map_err(invalid)?,
            "cap" => Structural::cap(ob("left")?, ob("right")?).map_err(invalid)?,
            "spider" => Structural::spider(count("legs_in")?, count("legs_out")?, ob("ob")?),
            "copy" => Structural::Copy {
                ob: ob("ob")?,
                legs: count("legs")?,
                is_dagger: flag("dagger")?,
            },
            "discard" => Structural::Discard {
                ob: ob("ob")?,
                is_dagger: flag("dagger")?,
            },
            other => return Err(node.error(format!("unknown box kind {other:?}"))),
        };
        Ok(DiagramBox::Structural(s))
    }

    /// A diagram in layer form: `{"dom": ..., "layers": [...]}`.
    fn diagram(&self, node: Node) -> Result<Diagram> {
        let dom = field(node, "dom", |n| n.ty())?;
        let layers = field(node, "layers", |n| items(n, |l| self.layer(l)))?;
        let d = Diagram::from_layers(dom, layers).map_err(|e| Error::Validation(format!("at {}: {e}", node.path)))?;
        if let Some(cod) = opt_field(node, "cod", |n| n.ty())? {
            if &cod != d.cod() {
                return Err(Error::Validation(format!(
                    "at {}: the layers end in {}, not the declared codomain {cod}",
                    node.path,
                    d.cod()
                )));
            }
        }
        Ok(d)
    }

    fn layer(&self, node: Node) -> Result<Layer> {
        let left = field(node, "left", |n| n.ty())?;
        let first = field(node, "box", |n| self.box_ref(n))?;
        let right = field(node, "right", |n| n.ty())?;
        let mut boxes = vec![(first, right)];
        if let Some(more) = opt_field(node, "more", |n| {
            items(n, |m| Ok((field(m, "box", |b| self.box_ref(b))?, field(m, "right", |r| r.ty())?)))
        })? {
            boxes.extend(more);
        }
        Layer::with_boxes(left, boxes).map_err(|e| node.error(e.to_string()))
    }

    fn expression(&self, node: Node) -> Result<Diagram> {
        let obj = node.value().as_object().ok_or_else(|| node.error("expected an object"))?;
        let wrap = |e: Error| match e {
            Error::Schema { .. } => e,
            other => Error::Validation(format!("at {}: {other}", node.path)),
        };
        if obj.contains_key("kind") {
            return Ok(Diagram::from(self.box_ref(node)?));
        }
        let pair = |key: &str| -> Result<(Ty, Ty)> {
            field(node, key, |n| {
                let parts = items(n, |t| t.ty())?;
                match parts.as_slice() {
                    [a, b] => Ok((a.clone(), b.clone())),
                    _ => Err(n.error("expected two types")),
                }
            })
        };
        let key = obj.keys().next().map(String::as_str).unwrap_or("");
        if obj.len() != 1 {
            return Err(node.error("an expression has exactly one key, or a \"kind\""));
        }
        match key {
            "id" => Ok(Diagram::id(field(node, "id", |n| n.ty())?)),
            "then" => {
                let parts = field(node, "then", |n| items(n, |p| self.expression(p)))?;
                let (first, rest) = parts.split_first().ok_or_else(|| node.error("empty composition"))?;
                Diagram::then_all(first, rest).map_err(wrap)
            }
            "tensor" => {
                let parts = field(node, "tensor", |n| items(n, |p| self.expression(p)))?;
                Ok(Diagram::tensor_all(&parts))
            }
            "dagger" => Ok(field(node, "dagger", |n| self.expression(n))?.dagger()),
            "bubble" => field(node, "bubble", |n| {
                let name = field(n, "name", |m| m.str().map(str::to_string))?;
                Ok(field(n, "arg", |m| self.expression(m))?.bubble(name))
            }),
            "trace" => field(node, "trace", |n| {
                let arg = field(n, "arg", |m| self.expression(m))?;
                let wires = opt_field(n, "n", |m| m.usize())?.unwrap_or(1);
                let side = opt_field(n, "side", side)?.unwrap_or(Side::Right);
                arg.trace(wires, side).map_err(wrap)
            }),
            "swap_types" => {
                let (a, b) = pair("swap_types")?;
                Ok(structure::swap_types(&a, &b))
            }
            "cups" => {
                let (a, b) = pair("cups")?;
                structure::cups(&a, &b).map_err(wrap)
            }
            "caps" => {
                let (a, b) = pair("caps")?;
                structure::caps(&a, &b).map_err(wrap)
            }
            "copies" => field(node, "copies", |n| {
                structure::copy_types(&field(n, "ty", |m| m.ty())?, field(n, "legs", |m| m.usize())?).map_err(wrap)
            }),
            "spiders" => field(node, "spiders", |n| {
                structure::spiders_types(
                    field(n, "legs_in", |m| m.usize())?,
                    field(n, "legs_out", |m| m.usize())?,
                    &field(n, "ty", |m| m.ty())?,
                )
                .map_err(wrap)
            }),
            other => Err(node.error(format!("unknown expression {other:?}"))),
        }
    }

    fn hypergraph(&self, node: Node) -> Result<Hypergraph> {
        let dom = field(node, "dom", |n| n.ty())?;
        let cod = field(node, "cod", |n| n.ty())?;
        let labels = |n: Node| items(n, |w| Ok(label(w.value())));
        let dom_wires = field(node, "dom_wires", labels)?;
        let cod_wires = field(node, "cod_wires", labels)?;
        let boxes = field(node, "boxes", |n| {
            items(n, |b| {
                Ok((
                    field(b, "box", |r| self.box_ref(r))?,
                    (field(b, "inputs", labels)?, field(b, "outputs", labels)?),
                ))
            })
        })?;
        let spiders: Vec<(String, Ob)> = field(node, "spider_types", |n| match n.value() {
            Value::Array(_) => items(n, |t| Ok((label(t.value()), t.ob()?.base())))
                .map(|v| v.into_iter().enumerate().map(|(i, (_, ob))| (i.to_string(), ob)).collect()),
            Value::Object(map) => map
                .iter()
                .map(|(k, v)| {
                    let path = format!("{}.{k}", n.path);
                    Ok((k.clone(), Node { value: v, path: &path }.ob()?.base()))
                })
                .collect(),
            _ => Err(n.error("expected an array or an object of types")),
        })?;
        let (boxes, box_wires): (Vec<_>, Vec<_>) = boxes.into_iter().unzip();
        Hypergraph::labelled(dom, cod, boxes, &dom_wires, &box_wires, &cod_wires, &spiders)
            .map_err(|e| Error::Validation(format!("at {}: {e}", node.path)))
    }
}

fn label(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn side(node: Node) -> Result<Side> {
    match node.str()? {
        "left" => Ok(Side::Left),
        "right" => Ok(Side::Right),
        other => Err(node.error(format!("unknown side {other:?}"))),
    }
}

fn side_text(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
    }
}

fn signature(node: Node) -> Result<BTreeMap<String, BoxDecl>> {
    let mut boxes = BTreeMap::new();
    if let Some(decls) = opt_field(node, "boxes", |n| {
        items(n, |b| {
            Ok((
                field(b, "name", |m| m.str().map(str::to_string))?,
                BoxDecl {
                    dom: field(b, "dom", |m| m.ty())?,
                    cod: field(b, "cod", |m| m.ty())?,
                    payload: b.opt("payload")?.map(|(v, _)| v),
                },
            ))
        })
    })? {
        for (name, decl) in decls {
            if boxes.insert(name.clone(), decl).is_some() {
                return Err(node.error(format!("box {name:?} is declared twice")));
            }
        }
    }
    Ok(boxes)
}

/// Parses and validates a document.
pub fn parse_document(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Schema {
        path: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let root = Node::root(&value);
    opt_field(root, "version", |n| match n.str()? {
        VERSION => Ok(()),
        other => Err(n.error(format!("unsupported version {other:?}"))),
    })?;
    let structure = opt_field(root, "structure", |n| {
        Structure::parse(n.str()?).ok_or_else(|| n.error("unknown structure"))
    })?;
    let boxes = opt_field(root, "signature", signature)?.unwrap_or_default();
    let reader = Reader { boxes };
    let (diagram, hypergraph) = field(root, "body", |body| {
        if let Some(d) = opt_field(body, "layers", |n| reader.diagram(n))? {
            return Ok((d, None));
        }
        if let Some(d) = opt_field(body, "expression", |n| reader.expression(n))? {
            return Ok((d, None));
        }
        if let Some(h) = opt_field(body, "hypergraph", |n| reader.hypergraph(n))? {
            return Ok((h.to_diagram()?, Some(h)));
        }
        Err(body.error("expected one of \"layers\", \"expression\" or \"hypergraph\""))
    })?;
    if let Some(declared) = structure {
        let needed = diagram.structure()?;
        if !needed.is_below(declared) {
            return Err(Error::Validation(format!(
                "the diagram needs a {needed} category but the document declares {declared}"
            )));
        }
    }
    Ok(Document {
        version: VERSION.into(),
        structure,
        boxes: reader.boxes,
        diagram,
        hypergraph,
    })
}

pub fn parse_diagram(text: &str) -> Result<Diagram> {
    parse_document(text).map(|d| d.diagram)
}

struct Writer {
    boxes: BTreeMap<String, BoxDecl>,
}

impl Writer {
    fn declare(&mut self, g: &Generator<Ty>) -> Result<()> {
        let g = if g.is_dagger { g.dagger() } else { g.clone() };
        let decl = BoxDecl {
            dom: g.dom.clone(),
            cod: g.cod.clone(),
            payload: g.payload.clone(),
        };
        match self.boxes.get(&g.name) {
            Some(existing) if *existing != decl => Err(Error::Validation(format!(
                "box {:?} occurs with two different signatures",
                g.name
            ))),
            _ => {
                self.boxes.insert(g.name.clone(), decl);
                Ok(())
            }
        }
    }

    fn box_ref(&mut self, b: &DiagramBox) -> Result<Value> {
        Ok(match b {
            DiagramBox::Gen(g) => {
                self.declare(g)?;
                let mut v = json!({"kind": "box", "name": g.name});
                if g.is_dagger {
                    v["dagger"] = json!(true);
                }
                v
            }
            DiagramBox::Bubble(bubble) => json!({"kind": "bubble", "name": bubble.name, "arg": self.diagram(&bubble.arg)?}),
            DiagramBox::Trace(Trace { body, traced, side }) => json!({
                "kind": "trace",
                "body": self.diagram(body)?,
                "traced": ty_text(traced),
                "side": side_text(*side),
            }),
            DiagramBox::Structural(s) => match s {
                Structural::Swap { left, right } => json!({"kind": "swap", "left": left.to_string(), "right": right.to_string()}),
                Structural::Braid { left, right, inverse } => {
                    json!({"kind": "braid", "left": left.to_string(), "right": right.to_string(), "inverse": inverse})
                }
                Structural::Twist { ob, inverse } => json!({"kind": "twist", "ob": ob.to_string(), "inverse": inverse}),
                Structural::Cup { left, right } => json!({"kind": "cup", "left": left.to_string(), "right": right.to_string()}),
                Structural::Cap { left, right } => json!({"kind": "cap", "left": left.to_string(), "right": right.to_string()}),
                Structural::Spider { legs_in, legs_out, ob } => {
                    json!({"kind": "spider", "legs_in": legs_in, "legs_out": legs_out, "ob": ob.to_string()})
                }
                Structural::Copy { ob, legs, is_dagger } => {
                    json!({"kind": "copy", "ob": ob.to_string(), "legs": legs, "dagger": is_dagger})
                }
                Structural::Discard { ob, is_dagger } => json!({"kind": "discard", "ob": ob.to_string(), "dagger": is_dagger}),
            },
        })
    }

    fn diagram(&mut self, d: &Diagram) -> Result<Value> {
        let mut layers = Vec::new();
        for layer in d.layers() {
            let mut boxes = layer.boxes().iter();
            let (first, right) = boxes.next().expect("a layer has a box");
            let mut v = json!({
                "left": ty_text(layer.left()),
                "box": self.box_ref(first)?,
                "right": ty_text(right),
            });
            let more = boxes
                .map(|(b, r)| Ok(json!({"box": self.box_ref(b)?, "right": ty_text(r)})))
                .collect::<Result<Vec<_>>>()?;
            if !more.is_empty() {
                v["more"] = Value::Array(more);
            }
            layers.push(v);
        }
        Ok(json!({"dom": ty_text(d.dom()), "cod": ty_text(d.cod()), "layers": layers}))
    }

    fn signature(&self) -> Value {
        let mut objects: Vec<String> = Vec::new();
        let boxes: Vec<Value> = self
            .boxes
            .iter()
            .map(|(name, decl)| {
                for ob in decl.dom.objects().iter().chain(decl.cod.objects()) {
                    objects.push(ob.name.clone());
                }
                let mut v = json!({"name": name, "dom": ty_text(&decl.dom), "cod": ty_text(&decl.cod)});
                if let Some(p) = &decl.payload {
                    v["payload"] = p.clone();
                }
                v
            })
            .collect();
        objects.sort();
        objects.dedup();
        json!({"objects": objects, "boxes": boxes})
    }
}

fn envelope(structure: Option<Structure>, signature: Value, body: Value) -> Result<String> {
    let mut doc = Map::new();
    doc.insert("version".into(), json!(VERSION));
    if let Some(s) = structure {
        doc.insert("structure".into(), json!(s.name()));
    }
    doc.insert("signature".into(), signature);
    doc.insert("body".into(), body);
    let mut text = serde_json::to_string_pretty(&Value::Object(doc)).expect("values serialise");
    text.push('\n');
    Ok(text)
}

/// The canonical layer-form document of a diagram.
pub fn print_document(d: &Diagram) -> Result<String> {
    let mut w = Writer { boxes: BTreeMap::new() };
    let body = json!({"layers": w.diagram(d)?});
    envelope(d.structure().ok(), w.signature(), body)
}

/// A hypergraph-form document, with spiders numbered.
pub fn print_hypergraph(h: &Hypergraph) -> Result<String> {
    let mut w = Writer { boxes: BTreeMap::new() };
    let boxes = h
        .boxes()
        .iter()
        .zip(h.box_wires())
        .map(|(b, (ins, outs))| Ok(json!({"box": w.box_ref(b)?, "inputs": ins, "outputs": outs})))
        .collect::<Result<Vec<_>>>()?;
    let body = json!({"hypergraph": {
        "dom": ty_text(h.dom()),
        "cod": ty_text(h.cod()),
        "dom_wires": h.dom_wires(),
        "cod_wires": h.cod_wires(),
        "boxes": boxes,
        "spider_types": h.spider_types().iter().map(ToString::to_string).collect::<Vec<_>>(),
    }});
    envelope(None, w.signature(), body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::gen;

    fn sample() -> Diagram {
        let f = gen("f", "x", "y z");
        let g = gen("g", "y", "z");
        let h = gen("h", "z", "z");
        f.then(&g.tensor(&h)).unwrap()
    }

    #[test]
    fn layer_form_round_trip() {
        let d = sample();
        let text = print_document(&d).unwrap();
        let doc = parse_document(&text).unwrap();
        assert_eq!(doc.diagram, d);
        let value: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["body"]["layers"]["layers"].as_array().unwrap().len(), 3);
        assert_eq!(print_document(&doc.diagram).unwrap(), text);
    }

    #[test]
    fn expression_form_agrees_with_layers() {
        let text = r#"{
            "version": "1",
            "signature": {"boxes": [
                {"name": "f", "dom": "x", "cod": "y z"},
                {"name": "g", "dom": "y", "cod": "z"},
                {"name": "h", "dom": "z", "cod": "z"}]},
            "body": {"expression": {"then": [
                {"kind": "box", "name": "f"},
                {"tensor": [{"kind": "box", "name": "g"}, {"kind": "box", "name": "h"}]}]}}
        }"#;
        assert_eq!(parse_diagram(text).unwrap(), sample());
    }

    #[test]
    fn broken_boundaries_are_reported() {
        let text = r#"{"signature": {"boxes": [{"name": "f", "dom": "x", "cod": "y"}]},
            "body": {"layers": {"dom": "x", "layers": [
                {"left": "", "box": {"kind": "box", "name": "f"}, "right": ""},
                {"left": "", "box": {"kind": "box", "name": "f"}, "right": ""}]}}}"#;
        assert!(matches!(parse_diagram(text), Err(Error::Validation(_))));
        let text = r#"{"body": {"layers": {"dom": "x", "layers": [{"left": "", "box": {"kind": "box", "name": "f"}, "right": ""}]}}}"#;
        match parse_diagram(text) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "$.body.layers.layers[0].box"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_diagram("{"), Err(Error::Schema { .. })));
    }

    #[test]
    fn declared_structure_is_checked() {
        let d = Diagram::from(Structural::swap("x", "y"));
        let text = print_document(&d).unwrap().replace("\"symmetric\"", "\"monoidal\"");
        assert!(matches!(parse_document(&text), Err(Error::Validation(_))));
    }

    #[test]
    fn hypergraph_form() {
        let text = r#"{"signature": {"boxes": [{"name": "f", "dom": "x", "cod": "y"}]},
            "body": {"hypergraph": {"dom": "x", "cod": "y",
                "dom_wires": ["a"], "cod_wires": ["b"],
                "boxes": [{"box": {"kind": "box", "name": "f"}, "inputs": ["a"], "outputs": ["b"]}],
                "spider_types": {"a": "x", "b": "y", "c": "x"}}}}"#;
        let doc = parse_document(text).unwrap();
        let h = doc.hypergraph.unwrap();
        assert_eq!(h.isolated_spiders().len(), 1);
        let again = parse_document(&print_hypergraph(&h).unwrap()).unwrap();
        assert!(again.hypergraph.unwrap().is_isomorphic(&h));
    }

    #[test]
    fn structural_boxes_round_trip() {
        let x = Ob::new("x");
        let parts = [
            Diagram::from(Structural::braid(x.clone(), x.r())),
            Diagram::from(Structural::Twist { ob: x.clone(), inverse: true }),
            Diagram::from(Structural::cup(x.r(), x.clone()).unwrap()),
            Diagram::from(Structural::spider(2, 0, x.clone())),
            Diagram::from(Structural::copy(x.clone(), 3)).dagger(),
            gen("f", "x", "x").bubble("not"),
            gen("f", "x x", "x").trace(1, Side::Left).unwrap(),
        ];
        for d in parts {
            let text = print_document(&d).unwrap();
            assert_eq!(parse_diagram(&text).unwrap(), d, "{text}");
        }
    }
}
