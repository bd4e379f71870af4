use std::collections::HashMap;

use rand::Rng;
use strandcat::io::generators;
use strandcat::random::{self, Net};
use strandcat::semantics::{FnArrow, FunctionModel, Poly, RigTensor, TensorModel, Value};
use strandcat::structure::{expand_braiding, kauffman_rule};
use strandcat::wiring::Mode;
use strandcat::{gallery, Diagram, DiagramBox, Hypergraph, Structural};

fn bits(mut k: usize, n: usize) -> Vec<bool> {
    let mut out = vec![false; n];
    for slot in out.iter_mut().rev() {
        *slot = k & 1 == 1;
        k >>= 1;
    }
    out
}

fn index(values: &[bool]) -> usize {
    values.iter().fold(0, |acc, &b| acc * 2 + usize::from(b))
}

/// Random truth tables for the generators of `d`, as functions and as
/// boolean relations.
fn models(rng: &mut impl Rng, d: &Diagram) -> (FunctionModel, TensorModel<bool>) {
    let (mut functions, mut relations) = (FunctionModel::new(), TensorModel::new());
    for ob in ["x", "y"] {
        relations = relations.object(ob, vec![2]);
    }
    for (name, (dom, cod)) in generators(d).unwrap() {
        let (n, m) = (dom.len(), cod.len());
        let table: Vec<usize> = (0..1 << n).map(|_| rng.gen_range(0..1 << m)).collect();
        let lookup = table.clone();
        functions = functions.arrow(
            name.clone(),
            FnArrow::untyped(n, m, move |xs| {
                let input: Vec<bool> = xs.iter().map(|x| x.as_bool().unwrap()).collect();
                Ok(bits(lookup[index(&input)], m).into_iter().map(Value::Bool).collect())
            }),
        );
        let entries = (0..1 << (n + m)).map(|k| table[k >> m] == k & ((1 << m) - 1)).collect();
        relations = relations.arrow(name, RigTensor::new(vec![2; n], vec![2; m], entries).unwrap());
    }
    (functions, relations)
}

#[test]
fn functions_and_relations_agree() {
    let mut rng = random::rng(40);
    for case in 0..150 {
        let n = rng.gen_range(0..=5);
        let d = if case % 2 == 0 {
            let net = Net::random(&mut rng, Mode::Markov, n);
            net.diagram(&net.topological_order(&mut rng).unwrap()).unwrap()
        } else {
            let width = rng.gen_range(1..=3);
            let dom = random::word(&mut rng, width);
            random::planar_from(&mut rng, dom, n, 4)
        };
        let (functions, relations) = models(&mut rng, &d);
        let f = functions.eval(&d).unwrap();
        let t = relations.eval(&d).unwrap();
        let (n_in, n_out) = (d.dom().len(), d.cod().len());
        for input in 0..1 << n_in {
            let xs: Vec<Value> = bits(input, n_in).into_iter().map(Value::Bool).collect();
            let ys: Vec<bool> = f.call(&xs).unwrap().iter().map(|v| v.as_bool().unwrap()).collect();
            for output in 0..1 << n_out {
                assert_eq!(*t.get(input, output), output == index(&ys), "case {case}\n{d}");
            }
        }
    }
}

#[test]
fn kauffman_terms_count_loops() {
    let sum = expand_braiding(&gallery::kauffman_link(), kauffman_rule()).unwrap();
    let model = TensorModel::<Poly>::new()
        .object("x", vec![2])
        .arrow("A", RigTensor::scalar(Poly::var()));
    let functor = model.functor();
    let total = functor.apply_sum(&sum).unwrap();
    let mut expected: HashMap<usize, i64> = HashMap::new();
    for term in sum.terms() {
        let scalars = term.boxes().filter(|b| matches!(b, DiagramBox::Gen(_))).count();
        assert!(term.boxes().all(|b| !matches!(b.as_structural(), Some(Structural::Braid { .. }))));
        let loops = Hypergraph::from_diagram(term).unwrap().isolated_spiders().len();
        *expected.entry(scalars).or_default() += 2i64.pow(loops as u32);
    }
    let value = &total.entries()[0];
    for (power, coefficient) in expected {
        assert_eq!(value.coefficients()[power], coefficient.into(), "t^{power} in {value}");
    }
}
