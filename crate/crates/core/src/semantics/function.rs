use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{unsupported, Error, Result};
use crate::free_category::{Category, Functor, Generator, Ob};
use crate::planar::{Diagram, Monoidal, Side, Ty};

/// A runtime value flowing along a wire.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Int(i64),
    Float(f64),
}

impl Value {
    /// Booleans, with the integers 0 and 1 read as false and true.
    pub fn as_bool(&self) -> Option<bool> {
        match *self {
            Value::Bool(b) => Some(b),
            Value::Int(0) => Some(false),
            Value::Int(1) => Some(true),
            _ => None,
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Value::Int(n) => Some(n as f64),
            Value::Float(x) => Some(x),
            Value::Bool(_) => None,
        }
    }

    /// Distance used to detect convergence of feedback loops.
    pub fn distance(&self, other: &Value) -> f64 {
        match (self.as_f64(), other.as_f64()) {
            (Some(a), Some(b)) => (a - b).abs(),
            _ if self == other => 0.0,
            _ => f64::INFINITY,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Int(n) => write!(f, "{n}"),
            Value::Float(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Bool,
    Int,
    Float,
    #[default]
    Any,
}

/// The type of one wire: a value kind and an optional seed for feedback.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Wire {
    pub kind: Kind,
    pub seed: Option<Value>,
}

impl Wire {
    pub fn new(kind: Kind) -> Self {
        Wire { kind, seed: None }
    }

    pub fn seeded(self, seed: Value) -> Self {
        Wire {
            seed: Some(seed),
            ..self
        }
    }
}

type Body = Arc<dyn Fn(&[Value]) -> Result<Vec<Value>> + Send + Sync>;

/// A function from a tuple of values to a tuple of values.
#[derive(Clone)]
pub struct FnArrow {
    dom: Vec<Wire>,
    cod: Vec<Wire>,
    body: Body,
}

impl fmt::Debug for FnArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FnArrow({} -> {})", self.dom.len(), self.cod.len())
    }
}

fn any(n: usize) -> Vec<Wire> {
    vec![Wire::default(); n]
}

impl FnArrow {
    pub fn new(
        dom: Vec<Wire>,
        cod: Vec<Wire>,
        body: impl Fn(&[Value]) -> Result<Vec<Value>> + Send + Sync + 'static,
    ) -> Self {
        FnArrow {
            dom,
            cod,
            body: Arc::new(body),
        }
    }

    /// A function on untyped wires.
    pub fn untyped(
        dom: usize,
        cod: usize,
        body: impl Fn(&[Value]) -> Result<Vec<Value>> + Send + Sync + 'static,
    ) -> Self {
        Self::new(any(dom), any(cod), body)
    }

    pub fn id(dom: Vec<Wire>) -> Self {
        let cod = dom.clone();
        Self::new(dom, cod, |xs| Ok(xs.to_vec()))
    }

    pub fn dom(&self) -> &[Wire] {
        &self.dom
    }

    pub fn cod(&self) -> &[Wire] {
        &self.cod
    }

    pub fn call(&self, inputs: &[Value]) -> Result<Vec<Value>> {
        if inputs.len() != self.dom.len() {
            return Err(Error::Arity {
                context: "function input".into(),
                expected: self.dom.len(),
                found: inputs.len(),
            });
        }
        let outputs = (self.body)(inputs)?;
        if outputs.len() != self.cod.len() {
            return Err(Error::Arity {
                context: "function output".into(),
                expected: self.cod.len(),
                found: outputs.len(),
            });
        }
        Ok(outputs)
    }

    pub fn then(&self, other: &FnArrow) -> Result<FnArrow> {
        if self.cod.len() != other.dom.len() {
            return Err(Error::Arity {
                context: "composition".into(),
                expected: self.cod.len(),
                found: other.dom.len(),
            });
        }
        let (f, g) = (self.clone(), other.clone());
        Ok(Self::new(self.dom.clone(), other.cod.clone(), move |xs| g.call(&f.call(xs)?)))
    }

    /// Runs `self` on the first inputs, then `other` on the rest.
    pub fn tensor(&self, other: &FnArrow) -> FnArrow {
        let (f, g) = (self.clone(), other.clone());
        let split = self.dom.len();
        Self::new(
            [&self.dom[..], &other.dom].concat(),
            [&self.cod[..], &other.cod].concat(),
            move |xs| {
                let mut out = f.call(&xs[..split])?;
                out.extend(g.call(&xs[split..])?);
                Ok(out)
            },
        )
    }

    pub fn swap(a: &[Wire], b: &[Wire]) -> FnArrow {
        let split = a.len();
        Self::new([a, b].concat(), [b, a].concat(), move |xs| {
            Ok([&xs[split..], &xs[..split]].concat())
        })
    }

    /// `legs` copies of the whole input tuple, one after the other.
    pub fn copy(x: &[Wire], legs: usize) -> FnArrow {
        Self::new(x.to_vec(), x.repeat(legs), move |xs| Ok(xs.repeat(legs)))
    }
}

/// Iterates `f` with the feedback wires on `side` starting from `seeds` until
/// two successive feedback values are within `tolerance`. Returns the
/// remaining outputs of the last run and the number of runs.
pub fn fixpoint(
    f: &FnArrow,
    inputs: &[Value],
    seeds: &[Value],
    side: Side,
    tolerance: f64,
    max_iters: usize,
) -> Result<(Vec<Value>, usize)> {
    let n = seeds.len();
    if n > f.cod.len() {
        return Err(Error::Arity {
            context: "traced outputs".into(),
            expected: n,
            found: f.cod.len(),
        });
    }
    let mut feedback = seeds.to_vec();
    for iteration in 1..=max_iters {
        let all = match side {
            Side::Left => [&feedback[..], inputs].concat(),
            Side::Right => [inputs, &feedback[..]].concat(),
        };
        let mut outputs = f.call(&all)?;
        let next = match side {
            Side::Left => outputs.drain(..n).collect::<Vec<_>>(),
            Side::Right => outputs.split_off(outputs.len() - n),
        };
        let converged = next.iter().zip(&feedback).all(|(a, b)| a.distance(b) < tolerance);
        if converged {
            return Ok((outputs, iteration));
        }
        feedback = next;
    }
    Err(Error::NonConvergence { iterations: max_iters })
}

/// The trace of `f` on `n = seeds.len()` wires, computed as a fixed point.
pub fn fixpoint_trace(f: &FnArrow, seeds: Vec<Value>, side: Side, tolerance: f64, max_iters: usize) -> Result<FnArrow> {
    let n = seeds.len();
    if n > f.dom.len() || n > f.cod.len() {
        return Err(Error::Arity {
            context: "trace".into(),
            expected: n,
            found: f.dom.len().min(f.cod.len()),
        });
    }
    let (dom, cod) = match side {
        Side::Left => (f.dom[n..].to_vec(), f.cod[n..].to_vec()),
        Side::Right => (f.dom[..f.dom.len() - n].to_vec(), f.cod[..f.cod.len() - n].to_vec()),
    };
    let f = f.clone();
    Ok(FnArrow::new(dom, cod, move |xs| {
        fixpoint(&f, xs, &seeds, side, tolerance, max_iters).map(|(out, _)| out)
    }))
}

/// Functions on tuples, with tuple concatenation as tensor. Traces are fixed
/// points seeded from the traced wires.
#[derive(Clone, Copy, Debug)]
pub struct FunctionCategory {
    pub tolerance: f64,
    pub max_iters: usize,
}

impl Default for FunctionCategory {
    fn default() -> Self {
        FunctionCategory {
            tolerance: 1e-12,
            max_iters: 100_000,
        }
    }
}

impl Category for FunctionCategory {
    type Ob = Vec<Wire>;
    type Ar = FnArrow;

    fn id(&self, x: &Vec<Wire>) -> FnArrow {
        FnArrow::id(x.clone())
    }
    fn then(&self, f: &FnArrow, g: &FnArrow) -> Result<FnArrow> {
        f.then(g)
    }
    fn dom(&self, f: &FnArrow) -> Vec<Wire> {
        f.dom.clone()
    }
    fn cod(&self, f: &FnArrow) -> Vec<Wire> {
        f.cod.clone()
    }
}

impl Monoidal for FunctionCategory {
    fn unit(&self) -> Vec<Wire> {
        vec![]
    }
    fn tensor_ob(&self, a: &Vec<Wire>, b: &Vec<Wire>) -> Vec<Wire> {
        [&a[..], b].concat()
    }
    fn tensor(&self, f: &FnArrow, g: &FnArrow) -> Result<FnArrow> {
        Ok(f.tensor(g))
    }
    fn swap(&self, a: &Vec<Wire>, b: &Vec<Wire>) -> Result<FnArrow> {
        Ok(FnArrow::swap(a, b))
    }
    fn braid(&self, a: &Vec<Wire>, b: &Vec<Wire>, _inverse: bool) -> Result<FnArrow> {
        Ok(FnArrow::swap(a, b))
    }
    fn twist(&self, a: &Vec<Wire>, _inverse: bool) -> Result<FnArrow> {
        Ok(FnArrow::id(a.clone()))
    }
    fn spiders(&self, legs_in: usize, legs_out: usize, x: &Vec<Wire>) -> Result<FnArrow> {
        match (legs_in, legs_out) {
            (1, n) => Ok(FnArrow::copy(x, n)),
            (0, 0) => Ok(FnArrow::id(vec![])),
            _ => Err(unsupported(format!("spider with {legs_in} inputs in functions"))),
        }
    }
    fn trace(&self, f: &FnArrow, traced: &Vec<Wire>, side: Side) -> Result<FnArrow> {
        let seeds = traced
            .iter()
            .map(|w| w.seed.ok_or_else(|| Error::Validation("a traced wire has no seed".into())))
            .collect::<Result<Vec<_>>>()?;
        fixpoint_trace(f, seeds, side, self.tolerance, self.max_iters)
    }
}

/// Wires for objects and functions for boxes, looked up by name.
#[derive(Clone, Debug, Default)]
pub struct FunctionModel {
    pub objects: HashMap<String, Wire>,
    pub boxes: HashMap<String, FnArrow>,
    pub category: FunctionCategory,
}

impl FunctionModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(mut self, name: impl Into<String>, wire: Wire) -> Self {
        self.objects.insert(name.into(), wire);
        self
    }

    pub fn arrow(mut self, name: impl Into<String>, f: FnArrow) -> Self {
        self.boxes.insert(name.into(), f);
        self
    }

    /// The functor defined by the model. Objects without an entry are sent to
    /// a single untyped wire.
    pub fn functor(&self) -> Functor<FunctionCategory> {
        let objects = self.objects.clone();
        let boxes = self.boxes.clone();
        Functor::new(
            move |x: &Ob| Ok(vec![objects.get(&x.name).copied().unwrap_or_default()]),
            move |g: &Generator<Ty>| {
                let f = boxes
                    .get(&g.name)
                    .ok_or_else(|| Error::MissingMapping(format!("box {}", g.name)))?;
                for (expected, found) in [(g.dom.len(), f.dom.len()), (g.cod.len(), f.cod.len())] {
                    if expected != found {
                        return Err(Error::Arity {
                            context: g.name.clone(),
                            expected,
                            found,
                        });
                    }
                }
                Ok(f.clone())
            },
            self.category,
        )
    }

    pub fn eval(&self, d: &Diagram) -> Result<FnArrow> {
        eval_function(&self.functor(), d)
    }
}

pub fn eval_function(functor: &Functor<FunctionCategory>, d: &Diagram) -> Result<FnArrow> {
    functor.apply(d)
}

fn bools(xs: &[Value]) -> Result<Vec<bool>> {
    xs.iter()
        .map(|x| x.as_bool().ok_or_else(|| Error::Validation(format!("{x} is not a boolean"))))
        .collect()
}

fn numbers(xs: &[Value]) -> Result<Vec<f64>> {
    xs.iter()
        .map(|x| x.as_f64().ok_or_else(|| Error::Validation(format!("{x} is not a number"))))
        .collect()
}

fn arithmetic(op: fn(i64, i64) -> Option<i64>, fop: fn(f64, f64) -> f64) -> impl Fn(&[Value]) -> Result<Vec<Value>> {
    move |xs| match (xs[0], xs[1]) {
        (Value::Int(a), Value::Int(b)) => match op(a, b) {
            Some(c) => Ok(vec![Value::Int(c)]),
            None => Ok(vec![Value::Float(fop(a as f64, b as f64))]),
        },
        _ => {
            let v = numbers(xs)?;
            Ok(vec![Value::Float(fop(v[0], v[1]))])
        }
    }
}

/// Names accepted by [`builtin`].
pub const BUILTINS: &[&str] = &[
    "id", "copy", "discard", "swap", "not", "and", "or", "nand", "xor", "add", "sub", "mul", "div", "neg", "one",
    "zero", "true", "false", "const:<json>",
];

/// A named function of the given arity, for model files where code cannot be
/// serialised.
pub fn builtin(name: &str, dom: usize, cod: usize) -> Result<FnArrow> {
    let arity = |d: usize, c: usize| -> Result<()> {
        let (expected, found) = if d != dom { (d, dom) } else { (c, cod) };
        if expected == found {
            return Ok(());
        }
        Err(Error::Arity {
            context: format!("builtin {name} ({d} -> {c})"),
            expected,
            found,
        })
    };
    let constant = |v: Value| -> Result<FnArrow> {
        arity(0, 1)?;
        Ok(FnArrow::untyped(0, 1, move |_| Ok(vec![v])))
    };
    let binary_bool = |op: fn(bool, bool) -> bool| -> Result<FnArrow> {
        arity(2, 1)?;
        Ok(FnArrow::untyped(2, 1, move |xs| {
            let b = bools(xs)?;
            Ok(vec![Value::Bool(op(b[0], b[1]))])
        }))
    };
    match name {
        "id" => {
            arity(dom, dom)?;
            Ok(FnArrow::id(any(dom)))
        }
        "copy" => {
            arity(1, cod)?;
            Ok(FnArrow::copy(&any(1), cod))
        }
        "discard" => {
            arity(dom, 0)?;
            Ok(FnArrow::untyped(dom, 0, |_| Ok(vec![])))
        }
        "swap" => {
            arity(2, 2)?;
            Ok(FnArrow::swap(&any(1), &any(1)))
        }
        "not" => {
            arity(1, 1)?;
            Ok(FnArrow::untyped(1, 1, |xs| Ok(vec![Value::Bool(!bools(xs)?[0])])))
        }
        "and" => binary_bool(|a, b| a && b),
        "or" => binary_bool(|a, b| a || b),
        "nand" => binary_bool(|a, b| !(a && b)),
        "xor" => binary_bool(|a, b| a != b),
        "add" => {
            arity(2, 1)?;
            Ok(FnArrow::untyped(2, 1, arithmetic(i64::checked_add, |a, b| a + b)))
        }
        "sub" => {
            arity(2, 1)?;
            Ok(FnArrow::untyped(2, 1, arithmetic(i64::checked_sub, |a, b| a - b)))
        }
        "mul" => {
            arity(2, 1)?;
            Ok(FnArrow::untyped(2, 1, arithmetic(i64::checked_mul, |a, b| a * b)))
        }
        "div" => {
            arity(2, 1)?;
            Ok(FnArrow::untyped(2, 1, |xs| {
                let v = numbers(xs)?;
                Ok(vec![Value::Float(v[0] / v[1])])
            }))
        }
        "neg" => {
            arity(1, 1)?;
            Ok(FnArrow::untyped(1, 1, |xs| match xs[0] {
                Value::Int(n) => Ok(vec![Value::Int(-n)]),
                x => Ok(vec![Value::Float(-numbers(&[x])?[0])]),
            }))
        }
        "one" => constant(Value::Int(1)),
        "zero" => constant(Value::Int(0)),
        "true" => constant(Value::Bool(true)),
        "false" => constant(Value::Bool(false)),
        _ => match name.strip_prefix("const:") {
            Some(text) => {
                let v: Value = serde_json::from_str(text).map_err(|e| Error::Schema {
                    path: format!("function {name}"),
                    message: e.to_string(),
                })?;
                constant(v)
            }
            None => Err(Error::MissingMapping(format!("builtin function {name}"))),
        },
    }
}
