use rand::Rng;
use strandcat::hypergraph::{Hypergraph, Layout};
use strandcat::random::{self, Net};
use strandcat::wiring::Mode;
use strandcat::{gallery, Diagram};

const TOLERANCE: f64 = 1e-9;

#[test]
fn layouts_round_trip_up_to_isomorphism() {
    let mut rng = random::rng(10);
    for case in 0..300 {
        let h = random::hypergraph(&mut rng);
        for layout in [Layout::Auto, Layout::Frobenius] {
            let d = h.to_diagram_with(layout).unwrap_or_else(|e| panic!("case {case}: {e}"));
            let back = Hypergraph::from_diagram(&d).unwrap();
            assert!(back.is_isomorphic(&h), "case {case} {layout:?}\n{d}");
        }
    }
}

#[test]
fn evaluation_does_not_depend_on_the_layout() {
    let mut rng = random::rng(11);
    for case in 0..150 {
        let h = random::hypergraph(&mut rng);
        let auto = h.to_diagram().unwrap();
        let frobenius = h.to_diagram_with(Layout::Frobenius).unwrap();
        let model = random::float_model(&mut rng, &auto, 3);
        let (a, b) = (model.eval(&auto).unwrap(), model.eval(&frobenius).unwrap());
        assert!(a.approx_eq(&b, TOLERANCE), "case {case}\n{auto}\n{frobenius}");
    }
}

#[test]
fn diagrams_survive_the_round_trip() {
    let mut rng = random::rng(12);
    for case in 0..200 {
        let mode = if case % 2 == 0 { Mode::Symmetric } else { Mode::Markov };
        let n = rng.gen_range(0..=6);
        let net = Net::random(&mut rng, mode, n);
        let d = net.diagram(&net.topological_order(&mut rng).unwrap()).unwrap();
        let h = Hypergraph::from_diagram(&d).unwrap();
        assert!(h.is_isomorphic(&net.hypergraph()), "case {case}");
        let again = h.to_diagram().unwrap();
        let model = random::float_model(&mut rng, &d, 3);
        assert!(
            model.eval(&d).unwrap().approx_eq(&model.eval(&again).unwrap(), TOLERANCE),
            "case {case}\n{d}\n{again}"
        );
    }
}

#[test]
fn predicates_are_invariant_under_isomorphism() {
    let mut rng = random::rng(13);
    for _ in 0..200 {
        let h = random::hypergraph(&mut rng);
        let mut order: Vec<usize> = (0..h.boxes().len()).collect();
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut rng);
        let p = h.permute_boxes(&order);
        assert!(p.is_isomorphic(&h));
        assert_eq!(p.is_causal(), h.is_causal());
        assert_eq!(p.is_monogamous(), h.is_monogamous());
        assert_eq!(p.is_bijective(), h.is_bijective());
        assert_eq!(p.is_left_monogamous(), h.is_left_monogamous());
    }
}

#[test]
fn dagger_is_an_involution() {
    let mut rng = random::rng(14);
    for _ in 0..200 {
        let h = random::hypergraph(&mut rng);
        assert!(h.dagger().dagger().is_isomorphic(&h));
    }
}

#[test]
fn composites_of_diagrams_compose_hypergraphs() {
    let (left, right) = gallery::symmetric_pair();
    let g = strandcat::gen("k", "x z", "x");
    let compose = |d: &Diagram| Hypergraph::from_diagram(&d.then(&g).unwrap()).unwrap();
    let glued = Hypergraph::from_diagram(&left).unwrap().then(&Hypergraph::from_diagram(&g).unwrap()).unwrap();
    assert!(compose(&left).is_isomorphic(&glued));
    assert!(compose(&right).is_isomorphic(&glued));
}
