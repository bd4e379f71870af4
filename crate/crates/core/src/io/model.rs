use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

use crate::error::{Error, Result};
use crate::planar::{Diagram, DiagramBox, Ty};
use crate::semantics::{builtin, FunctionModel, Kind, Poly, Rig, RigTensor, TensorModel, Value, Wire};

/// Dimensions of an object: one wire or a word of wires.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Dims {
    One(usize),
    Word(Vec<usize>),
}

impl Dims {
    pub fn word(&self) -> Vec<usize> {
        match self {
            Dims::One(n) => vec![*n],
            Dims::Word(w) => w.clone(),
        }
    }
}

fn default_rig() -> String {
    "bool".into()
}

/// Interpretations of the objects and boxes of a signature.
///
/// Tensor semantics read `rig`, `objects` and `boxes` (nested arrays, inputs
/// first, row-major). Function semantics read `functions` (names of builtin
/// functions) and `seeds` (initial values of traced wires, by object name).
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    #[serde(default = "default_rig")]
    pub rig: String,
    #[serde(default)]
    pub objects: BTreeMap<String, Dims>,
    #[serde(default)]
    pub boxes: BTreeMap<String, Json>,
    #[serde(default)]
    pub functions: BTreeMap<String, String>,
    #[serde(default)]
    pub seeds: BTreeMap<String, Value>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub max_iters: Option<usize>,
}

pub fn parse_model(text: &str) -> Result<ModelDocument> {
    serde_json::from_str(text).map_err(|e| Error::Schema {
        path: format!("model line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })
}

/// The undaggered generators of a diagram, including those inside bubbles
/// and traces, by name.
pub fn generators(d: &Diagram) -> Result<BTreeMap<String, (Ty, Ty)>> {
    fn walk(d: &Diagram, out: &mut BTreeMap<String, (Ty, Ty)>) -> Result<()> {
        for b in d.boxes() {
            match b {
                DiagramBox::Gen(g) => {
                    let g = if g.is_dagger { g.dagger() } else { g.clone() };
                    let sig = (g.dom.clone(), g.cod.clone());
                    if let Some(old) = out.insert(g.name.clone(), sig.clone()) {
                        if old != sig {
                            return Err(Error::Validation(format!("box {:?} has two signatures", g.name)));
                        }
                    }
                }
                DiagramBox::Bubble(bubble) => walk(&bubble.arg, out)?,
                DiagramBox::Trace(t) => walk(&t.body, out)?,
                DiagramBox::Structural(_) => {}
            }
        }
        Ok(())
    }
    let mut out = BTreeMap::new();
    walk(d, &mut out)?;
    Ok(out)
}

impl ModelDocument {
    fn dims(&self, ty: &Ty) -> Result<Vec<usize>> {
        let mut dims = Vec::new();
        for ob in ty.objects() {
            let d = self
                .objects
                .get(&ob.name)
                .ok_or_else(|| Error::MissingMapping(format!("object {}", ob.name)))?;
            dims.extend(d.word());
        }
        Ok(dims)
    }

    pub fn tensor_model<R: Rig>(&self, d: &Diagram) -> Result<TensorModel<R>> {
        let mut model = TensorModel::new();
        for (name, dims) in &self.objects {
            if dims.word().contains(&0) {
                return Err(Error::Validation(format!("object {name} has a zero dimension")));
            }
            model = model.object(name.clone(), dims.word());
        }
        for (name, (dom, cod)) in generators(d)? {
            let entries = self
                .boxes
                .get(&name)
                .ok_or_else(|| Error::MissingMapping(format!("box {name}")))?;
            let tensor = RigTensor::from_json(self.dims(&dom)?, self.dims(&cod)?, entries).map_err(|e| match e {
                Error::ShapeMismatch { expected, found, .. } => Error::ShapeMismatch {
                    name: name.clone(),
                    expected,
                    found,
                },
                other => other,
            })?;
            model = model.arrow(name, tensor);
        }
        Ok(model)
    }

    pub fn function_model(&self, d: &Diagram) -> Result<FunctionModel> {
        let mut model = FunctionModel::new();
        if let Some(t) = self.tolerance {
            model.category.tolerance = t;
        }
        if let Some(m) = self.max_iters {
            model.category.max_iters = m;
        }
        for (name, seed) in &self.seeds {
            model = model.object(name.clone(), Wire::new(Kind::Any).seeded(*seed));
        }
        for (name, (dom, cod)) in generators(d)? {
            let f = self
                .functions
                .get(&name)
                .ok_or_else(|| Error::MissingMapping(format!("function for box {name}")))?;
            model = model.arrow(name, builtin(f, dom.len(), cod.len())?);
        }
        Ok(model)
    }

    fn tensor_text<R: Rig>(&self, d: &Diagram) -> Result<String> {
        let t = self.tensor_model::<R>(d)?.eval(d)?;
        let value = if t.dom().is_empty() && t.cod().is_empty() {
            t.entries()[0].to_json()
        } else {
            serde_json::json!({"dom": t.dom(), "cod": t.cod(), "entries": t.to_json()})
        };
        Ok(value.to_string())
    }

    /// Evaluates `d` as a tensor over the model's rig and prints the result:
    /// scalars as a bare value, other tensors as nested arrays.
    pub fn eval_tensor_text(&self, d: &Diagram) -> Result<String> {
        match self.rig.as_str() {
            "bool" => self.tensor_text::<bool>(d),
            "float" => self.tensor_text::<f64>(d),
            "int" => self.tensor_text::<BigInt>(d),
            "poly" => self.tensor_text::<Poly>(d),
            other => Err(Error::RigMismatch(format!("unknown rig {other:?}"))),
        }
    }

    /// Evaluates `d` as a function and applies it to `inputs`.
    pub fn eval_function_text(&self, d: &Diagram, inputs: &[Value]) -> Result<String> {
        let outputs = self.function_model(d)?.eval(d)?.call(inputs)?;
        Ok(serde_json::to_string(&outputs).expect("values serialise"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::gen;

    #[test]
    fn tensor_models() {
        let m = parse_model(r#"{"rig": "float", "objects": {"x": 2}, "boxes": {"f": [[1, 2], [3, 4]]}}"#).unwrap();
        let f = gen("f", "x", "x");
        assert_eq!(m.eval_tensor_text(&f.then(&f).unwrap()).unwrap(), r#"{"cod":[2],"dom":[2],"entries":[[7.0,10.0],[15.0,22.0]]}"#);
        let bad = parse_model(r#"{"rig": "float", "objects": {"x": 2}, "boxes": {"f": [1, 2, 3]}}"#).unwrap();
        match bad.eval_tensor_text(&f) {
            Err(Error::ShapeMismatch { name, .. }) => assert_eq!(name, "f"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_model(r#"{"rigg": "bool"}"#).is_err());
    }

    #[test]
    fn function_models() {
        let m = parse_model(r#"{"functions": {"n": "nand"}}"#).unwrap();
        let n = gen("n", "b b", "b");
        let out = m.eval_function_text(&n, &[Value::Bool(true), Value::Int(1)]).unwrap();
        assert_eq!(out, "[false]");
    }
}
