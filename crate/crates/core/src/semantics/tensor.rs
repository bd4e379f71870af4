use std::collections::HashMap;

use serde_json::Value;

use super::matrix::{negate_entries, RigMatrix};
use super::rig::Rig;
use crate::error::{Error, Result};
use crate::free_category::{Category, Functor, Generator, Ob};
use crate::planar::{Diagram, Monoidal, Side, Ty};

/// A word of dimensions; its product is the flat size.
pub type DimWord = Vec<usize>;

fn size(dims: &[usize]) -> usize {
    dims.iter().product()
}

/// A matrix whose rows and columns are multi-indices over dimension words,
/// flattened row-major. Tensor is the Kronecker product.
#[derive(Clone, PartialEq, Debug)]
pub struct RigTensor<R> {
    dom: DimWord,
    cod: DimWord,
    matrix: RigMatrix<R>,
}

impl<R: Rig> RigTensor<R> {
    pub fn new(dom: DimWord, cod: DimWord, entries: Vec<R>) -> Result<Self> {
        let matrix = RigMatrix::new(size(&dom), size(&cod), entries)?;
        Ok(RigTensor { dom, cod, matrix })
    }

    pub fn from_matrix(dom: DimWord, cod: DimWord, matrix: RigMatrix<R>) -> Result<Self> {
        if (matrix.dom(), matrix.cod()) != (size(&dom), size(&cod)) {
            return Err(Error::ShapeMismatch {
                name: "tensor".into(),
                expected: format!("{:?} -> {:?}", dom, cod),
                found: format!("{}x{}", matrix.dom(), matrix.cod()),
            });
        }
        Ok(RigTensor { dom, cod, matrix })
    }

    fn from_fn(dom: DimWord, cod: DimWord, f: impl Fn(usize, usize) -> R) -> Self {
        let matrix = RigMatrix::from_fn(size(&dom), size(&cod), f);
        RigTensor { dom, cod, matrix }
    }

    fn delta(dom: DimWord, cod: DimWord, pred: impl Fn(usize, usize) -> bool) -> Self {
        Self::from_fn(dom, cod, |i, j| if pred(i, j) { R::one() } else { R::zero() })
    }

    pub fn id(dims: &[usize]) -> Self {
        Self::delta(dims.to_vec(), dims.to_vec(), |i, j| i == j)
    }

    pub fn zeros(dom: DimWord, cod: DimWord) -> Self {
        Self::from_fn(dom, cod, |_, _| R::zero())
    }

    pub fn scalar(x: R) -> Self {
        Self::from_fn(vec![], vec![], |_, _| x.clone())
    }

    pub fn dom(&self) -> &[usize] {
        &self.dom
    }

    pub fn cod(&self) -> &[usize] {
        &self.cod
    }

    pub fn matrix(&self) -> &RigMatrix<R> {
        &self.matrix
    }

    pub fn entries(&self) -> &[R] {
        self.matrix.entries()
    }

    pub fn get(&self, input: usize, output: usize) -> &R {
        self.matrix.get(input, output)
    }

    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.cod != other.dom {
            return Err(Error::ShapeMismatch {
                name: "composition".into(),
                expected: format!("{:?}", self.cod),
                found: format!("{:?}", other.dom),
            });
        }
        Ok(RigTensor {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            matrix: self.matrix.then(&other.matrix)?,
        })
    }

    /// `self ; id(left) ⊗ g ⊗ id(right)`, without building the layer.
    pub fn then_whiskered(&self, left: &[usize], g: &Self, right: &[usize]) -> Result<Self> {
        let expected = [left, &g.dom[..], right].concat();
        if self.cod != expected {
            return Err(Error::ShapeMismatch {
                name: "composition".into(),
                expected: format!("{expected:?}"),
                found: format!("{:?}", self.cod),
            });
        }
        let size = |w: &[usize]| w.iter().product::<usize>();
        let (n_left, n_right) = (size(left), size(right));
        let (n_in, n_out) = (size(&g.dom), size(&g.cod));
        let rows = size(&self.dom);
        let (width_in, width_out) = (n_left * n_in * n_right, n_left * n_out * n_right);
        let mut entries = vec![R::zero(); rows * width_out];
        let source = self.entries();
        let box_entries = g.entries();
        for a in 0..rows {
            for l in 0..n_left {
                for x in 0..n_in {
                    for r in 0..n_right {
                        let v = &source[a * width_in + (l * n_in + x) * n_right + r];
                        if v.is_zero() {
                            continue;
                        }
                        for y in 0..n_out {
                            let w = &box_entries[x * n_out + y];
                            if w.is_zero() {
                                continue;
                            }
                            let slot = &mut entries[a * width_out + (l * n_out + y) * n_right + r];
                            *slot = slot.add(&v.mul(w));
                        }
                    }
                }
            }
        }
        RigTensor::new(self.dom.clone(), [left, &g.cod[..], right].concat(), entries)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        RigTensor {
            dom: [&self.dom[..], &other.dom].concat(),
            cod: [&self.cod[..], &other.cod].concat(),
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    pub fn dagger(&self) -> Self {
        RigTensor {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            matrix: self.matrix.transpose(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (&self.dom, &self.cod) != (&other.dom, &other.cod) {
            return Err(Error::ShapeMismatch {
                name: "sum".into(),
                expected: format!("{:?} -> {:?}", self.dom, self.cod),
                found: format!("{:?} -> {:?}", other.dom, other.cod),
            });
        }
        Ok(RigTensor {
            matrix: self.matrix.add(&other.matrix)?,
            ..self.clone()
        })
    }

    pub fn map(&self, f: impl Fn(&R) -> R) -> Self {
        RigTensor {
            matrix: self.matrix.map(f),
            ..self.clone()
        }
    }

    pub fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.matrix.approx_eq(&other.matrix, tolerance)
    }

    /// The permutation `a ⊗ b -> b ⊗ a`.
    pub fn swap(a: &[usize], b: &[usize]) -> Self {
        let (sa, sb) = (size(a), size(b));
        let dom = [a, b].concat();
        let cod = [b, a].concat();
        Self::delta(dom, cod, |i, j| j == (i % sb) * sa + i / sb)
    }

    /// The generalised Kronecker delta with `legs_in` inputs and `legs_out`
    /// outputs of type `dims`: one exactly when all legs carry the same index.
    pub fn spiders(legs_in: usize, legs_out: usize, dims: &[usize]) -> Self {
        let s = size(dims);
        if legs_in == 0 && legs_out == 0 {
            return Self::scalar((0..s).fold(R::zero(), |acc, _| acc.add(&R::one())));
        }
        let all_equal = move |mut index: usize, legs: usize| -> Option<usize> {
            if legs == 0 {
                return None;
            }
            let first = index % s;
            for _ in 0..legs {
                if index % s != first {
                    return Some(usize::MAX);
                }
                index /= s;
            }
            Some(first)
        };
        let dom: DimWord = dims.repeat(legs_in);
        let cod: DimWord = dims.repeat(legs_out);
        Self::delta(dom, cod, |i, j| match (all_equal(i, legs_in), all_equal(j, legs_out)) {
            (Some(usize::MAX), _) | (_, Some(usize::MAX)) => false,
            (Some(x), Some(y)) => x == y,
            _ => true,
        })
    }

    /// The pairing `left ⊗ right -> 1`, one on matching flat indices.
    pub fn cup(left: &[usize], right: &[usize]) -> Result<Self> {
        check_paired(left, right)?;
        let s = size(right);
        Ok(Self::delta([left, right].concat(), vec![], |i, _| i / s == i % s))
    }

    pub fn cap(left: &[usize], right: &[usize]) -> Result<Self> {
        Ok(Self::cup(left, right)?.dagger())
    }

    /// Sums over the diagonal of `n` traced wires on the given side.
    pub fn partial_trace(&self, n: usize, side: Side) -> Result<Self> {
        let mismatch = || Error::ShapeMismatch {
            name: "partial trace".into(),
            expected: format!("{n} matching wires on the {side:?} side"),
            found: format!("{:?} -> {:?}", self.dom, self.cod),
        };
        if n > self.dom.len() || n > self.cod.len() {
            return Err(mismatch());
        }
        let (traced, dom, cod) = match side {
            Side::Left => (&self.dom[..n], &self.dom[n..], &self.cod[n..]),
            Side::Right => {
                let (dl, cl) = (self.dom.len() - n, self.cod.len() - n);
                (&self.dom[dl..], &self.dom[..dl], &self.cod[..cl])
            }
        };
        let other = match side {
            Side::Left => &self.cod[..n],
            Side::Right => &self.cod[self.cod.len() - n..],
        };
        if traced != other {
            return Err(mismatch());
        }
        let (t, a, b) = (size(traced), size(dom), size(cod));
        Ok(Self::from_fn(dom.to_vec(), cod.to_vec(), |i, j| {
            (0..t).fold(R::zero(), |acc, k| {
                let entry = match side {
                    Side::Left => self.get(k * a + i, k * b + j),
                    Side::Right => self.get(i * t + k, j * t + k),
                };
                acc.add(entry)
            })
        }))
    }

    /// Entrywise negation, for rigs that have one.
    pub fn negate(&self) -> Result<Self> {
        let entries = negate_entries(self.entries(), "negation")?;
        Self::new(self.dom.clone(), self.cod.clone(), entries)
    }

    /// Reads nested (or flat) arrays in row-major order, inputs first.
    pub fn from_json(dom: DimWord, cod: DimWord, value: &Value) -> Result<Self> {
        fn flatten<'a>(v: &'a Value, out: &mut Vec<&'a Value>) {
            match v {
                Value::Array(items) => items.iter().for_each(|x| flatten(x, out)),
                _ => out.push(v),
            }
        }
        let mut leaves = Vec::new();
        flatten(value, &mut leaves);
        let entries = leaves.into_iter().map(R::from_json).collect::<Result<Vec<_>>>()?;
        Self::new(dom, cod, entries)
    }

    /// Nested arrays with one level per wire, inputs first.
    pub fn to_json(&self) -> Value {
        fn nest<R: Rig>(dims: &[usize], entries: &[R]) -> Value {
            match dims.split_first() {
                None => entries[0].to_json(),
                Some((&d, rest)) => {
                    let chunk = size(rest);
                    Value::Array((0..d).map(|k| nest(rest, &entries[k * chunk..(k + 1) * chunk])).collect())
                }
            }
        }
        nest(&[&self.dom[..], &self.cod].concat(), self.entries())
    }
}

fn check_paired(left: &[usize], right: &[usize]) -> Result<()> {
    if size(left) != size(right) {
        return Err(Error::ShapeMismatch {
            name: "cup".into(),
            expected: format!("{left:?}"),
            found: format!("{right:?}"),
        });
    }
    Ok(())
}

/// Tensors over a rig with the Kronecker product. Braids are interpreted as
/// swaps, twists as identities and traces as partial traces.
#[derive(Clone, Copy, Debug, Default)]
pub struct TensorCategory<R>(std::marker::PhantomData<R>);

impl<R: Rig> TensorCategory<R> {
    pub fn new() -> Self {
        TensorCategory(std::marker::PhantomData)
    }
}

impl<R: Rig> Category for TensorCategory<R> {
    type Ob = DimWord;
    type Ar = RigTensor<R>;

    fn id(&self, x: &DimWord) -> RigTensor<R> {
        RigTensor::id(x)
    }
    fn then(&self, f: &RigTensor<R>, g: &RigTensor<R>) -> Result<RigTensor<R>> {
        f.then(g)
    }
    fn dom(&self, f: &RigTensor<R>) -> DimWord {
        f.dom.clone()
    }
    fn cod(&self, f: &RigTensor<R>) -> DimWord {
        f.cod.clone()
    }
    fn dagger(&self, f: &RigTensor<R>) -> Result<RigTensor<R>> {
        Ok(f.dagger())
    }
    fn sum(&self, terms: Vec<RigTensor<R>>, dom: &DimWord, cod: &DimWord) -> Result<RigTensor<R>> {
        terms
            .iter()
            .try_fold(RigTensor::zeros(dom.clone(), cod.clone()), |acc, t| acc.add(t))
    }
    fn bubble(&self, arg: &RigTensor<R>, name: &str) -> Result<RigTensor<R>> {
        let entries = negate_entries(arg.entries(), name)?;
        RigTensor::new(arg.dom.clone(), arg.cod.clone(), entries)
    }
}

impl<R: Rig> Monoidal for TensorCategory<R> {
    fn unit(&self) -> DimWord {
        vec![]
    }
    fn tensor_ob(&self, a: &DimWord, b: &DimWord) -> DimWord {
        [&a[..], b].concat()
    }
    fn tensor(&self, f: &RigTensor<R>, g: &RigTensor<R>) -> Result<RigTensor<R>> {
        Ok(f.tensor(g))
    }
    fn swap(&self, a: &DimWord, b: &DimWord) -> Result<RigTensor<R>> {
        Ok(RigTensor::swap(a, b))
    }
    fn braid(&self, a: &DimWord, b: &DimWord, _inverse: bool) -> Result<RigTensor<R>> {
        Ok(RigTensor::swap(a, b))
    }
    fn twist(&self, a: &DimWord, _inverse: bool) -> Result<RigTensor<R>> {
        Ok(RigTensor::id(a))
    }
    fn cup(&self, left: &DimWord, right: &DimWord) -> Result<RigTensor<R>> {
        RigTensor::cup(left, right)
    }
    fn cap(&self, left: &DimWord, right: &DimWord) -> Result<RigTensor<R>> {
        RigTensor::cap(left, right)
    }
    fn spiders(&self, legs_in: usize, legs_out: usize, x: &DimWord) -> Result<RigTensor<R>> {
        Ok(RigTensor::spiders(legs_in, legs_out, x))
    }
    fn trace(&self, f: &RigTensor<R>, traced: &DimWord, side: Side) -> Result<RigTensor<R>> {
        f.partial_trace(traced.len(), side)
    }
    fn then_whiskered(&self, f: &RigTensor<R>, left: &DimWord, g: &RigTensor<R>, right: &DimWord) -> Result<RigTensor<R>> {
        f.then_whiskered(left, g, right)
    }
}

/// Dimensions for objects and tensors for boxes, looked up by name. Windings
/// are ignored, so `x.r` and `x.l` have the dimensions of `x`.
#[derive(Clone, Debug)]
pub struct TensorModel<R> {
    pub objects: HashMap<String, DimWord>,
    pub boxes: HashMap<String, RigTensor<R>>,
}

impl<R: Rig> Default for TensorModel<R> {
    fn default() -> Self {
        TensorModel {
            objects: HashMap::new(),
            boxes: HashMap::new(),
        }
    }
}

impl<R: Rig> TensorModel<R> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(mut self, name: impl Into<String>, dims: DimWord) -> Self {
        self.objects.insert(name.into(), dims);
        self
    }

    pub fn arrow(mut self, name: impl Into<String>, tensor: RigTensor<R>) -> Self {
        self.boxes.insert(name.into(), tensor);
        self
    }

    fn dims(objects: &HashMap<String, DimWord>, ty: &Ty) -> Result<DimWord> {
        let mut dims = Vec::new();
        for ob in ty.objects() {
            let d = objects
                .get(&ob.name)
                .ok_or_else(|| Error::MissingMapping(format!("object {}", ob.name)))?;
            dims.extend(d);
        }
        Ok(dims)
    }

    /// The functor defined by the model. Box images must have the shape given
    /// by their signature.
    pub fn functor(&self) -> Functor<TensorCategory<R>> {
        let objects = self.objects.clone();
        let boxes = self.boxes.clone();
        let ob_objects = objects.clone();
        Functor::new(
            move |x: &Ob| {
                ob_objects
                    .get(&x.name)
                    .cloned()
                    .ok_or_else(|| Error::MissingMapping(format!("object {}", x.name)))
            },
            move |g: &Generator<Ty>| {
                let image = boxes
                    .get(&g.name)
                    .ok_or_else(|| Error::MissingMapping(format!("box {}", g.name)))?;
                let dom = Self::dims(&objects, &g.dom)?;
                let cod = Self::dims(&objects, &g.cod)?;
                if size(&dom) != size(image.dom()) || size(&cod) != size(image.cod()) {
                    return Err(Error::ShapeMismatch {
                        name: g.name.clone(),
                        expected: format!("{dom:?} -> {cod:?}"),
                        found: format!("{:?} -> {:?}", image.dom(), image.cod()),
                    });
                }
                RigTensor::from_matrix(dom, cod, image.matrix().clone())
            },
            TensorCategory::new(),
        )
    }

    pub fn eval(&self, d: &Diagram) -> Result<RigTensor<R>> {
        eval_tensor(&self.functor(), d)
    }
}

pub fn eval_tensor<R: Rig>(functor: &Functor<TensorCategory<R>>, d: &Diagram) -> Result<RigTensor<R>> {
    functor.apply(d)
}

pub fn partial_trace<R: Rig>(t: &RigTensor<R>, n: usize) -> Result<RigTensor<R>> {
    t.partial_trace(n, Side::Left)
}

pub fn bool_negation_bubble<R: Rig>(t: &RigTensor<R>) -> Result<RigTensor<R>> {
    t.negate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::gen;

    #[test]
    fn whiskered_composition_matches_the_layer() {
        let f = RigTensor::<f64>::new(vec![2], vec![2, 3, 2], (0..24).map(|k| k as f64 - 7.0).collect()).unwrap();
        let g = RigTensor::<f64>::new(vec![3], vec![2], vec![1.0, -2.0, 0.0, 3.0, 5.0, 0.5]).unwrap();
        let layer = RigTensor::id(&[2]).tensor(&g).tensor(&RigTensor::id(&[2]));
        let dense = f.then(&layer).unwrap();
        assert!(f.then_whiskered(&[2], &g, &[2]).unwrap().approx_eq(&dense, 0.0));
        assert!(f.then_whiskered(&[2, 3], &g, &[]).is_err());
    }

    #[test]
    fn identity_is_the_identity_matrix() {
        let model = TensorModel::<f64>::new().object("x", vec![3]);
        let t = model.eval(&Diagram::id(Ty::from("x"))).unwrap();
        assert_eq!(t.matrix(), &RigMatrix::id(3));
    }

    #[test]
    fn full_trace_counts_dimension() {
        let t = partial_trace(&RigTensor::<f64>::id(&[4]), 1).unwrap();
        assert_eq!(t.entries(), &[4.0]);
        let b = partial_trace(&RigTensor::<bool>::id(&[4]), 1).unwrap();
        assert_eq!(b.entries(), &[true]);
        let m = RigTensor::<f64>::new(vec![2], vec![2], vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(partial_trace(&m, 0).unwrap(), m);
    }

    #[test]
    fn trace_of_swap_matches_loops() {
        let d = 3;
        let swap = RigTensor::<f64>::swap(&[d], &[d]);
        for side in [Side::Left, Side::Right] {
            let t = swap.partial_trace(1, side).unwrap();
            for i in 0..d {
                for j in 0..d {
                    let mut expected = 0.0;
                    for k in 0..d {
                        let (input, output) = match side {
                            Side::Left => ((k, i), (k, j)),
                            Side::Right => ((i, k), (j, k)),
                        };
                        // The swap sends (a, b) to (b, a).
                        if output == (input.1, input.0) {
                            expected += 1.0;
                        }
                    }
                    assert_eq!(*t.get(i, j), expected);
                }
            }
            assert_eq!(t.matrix(), &RigMatrix::id(3));
        }
        assert!(swap.partial_trace(1, Side::Left).is_ok());
        let rect = RigTensor::<f64>::zeros(vec![2, 3], vec![3, 2]);
        assert!(rect.partial_trace(1, Side::Left).is_err());
    }

    #[test]
    fn spiders_are_deltas() {
        let s = RigTensor::<f64>::spiders(2, 1, &[2]);
        assert_eq!(s.entries(), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        let fused = RigTensor::<f64>::spiders(1, 2, &[3]).then(&RigTensor::spiders(2, 2, &[3])).unwrap();
        assert_eq!(fused, RigTensor::spiders(1, 2, &[3]));
        assert_eq!(RigTensor::<f64>::spiders(1, 1, &[3]), RigTensor::id(&[3]));
        assert_eq!(RigTensor::<f64>::spiders(0, 0, &[3]).entries(), &[3.0]);
    }

    #[test]
    fn snake_is_identity() {
        let cup = RigTensor::<f64>::cup(&[3], &[3]).unwrap();
        let cap = RigTensor::<f64>::cap(&[3], &[3]).unwrap();
        let id = RigTensor::<f64>::id(&[3]);
        let snake = cap.tensor(&id).then(&id.tensor(&cup)).unwrap();
        assert_eq!(snake, id);
    }

    #[test]
    fn shape_errors_name_the_box() {
        let f = gen("f", "x", "x");
        let model = TensorModel::<f64>::new()
            .object("x", vec![2])
            .arrow("f", RigTensor::zeros(vec![3], vec![2]));
        match model.eval(&f) {
            Err(Error::ShapeMismatch { name, .. }) => assert_eq!(name, "f"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn negation() {
        let t = RigTensor::<bool>::new(vec![2], vec![], vec![true, true]).unwrap();
        assert_eq!(bool_negation_bubble(&t).unwrap().entries(), &[false, false]);
        assert_eq!(t.negate().unwrap().negate().unwrap(), t);
        assert!(matches!(RigTensor::<f64>::id(&[2]).negate(), Err(Error::RigMismatch(_))));
    }

    #[test]
    fn json_round_trip() {
        let p = serde_json::json!([[0, 1], [0, 0]]);
        let t = RigTensor::<bool>::from_json(vec![], vec![2, 2], &p).unwrap();
        assert_eq!(t.entries(), &[false, true, false, false]);
        let back = RigTensor::<bool>::from_json(vec![], vec![2, 2], &t.to_json()).unwrap();
        assert_eq!(back, t);
        assert!(RigTensor::<bool>::from_json(vec![], vec![3], &p).is_err());
    }
}
