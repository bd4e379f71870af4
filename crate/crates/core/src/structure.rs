//! Structural boxes, the lattice of structures and the coherence rewrites
//! that live on top of planar diagrams.
//!
//! A diagram does not carry a structure tag. Its [`Structure`] is computed
//! from the structural boxes it contains: the least entry of the lattice whose
//! features cover them.

use std::fmt::{self, Display};
use std::ops::BitOr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{unsupported, Error, Result};
use crate::free_category::{Category, Functor, Generator, Morphism, Ob, Sum};
use crate::planar::{gen, Diagram, DiagramBox, Layer, Monoidal, Side, Trace, Ty};

/// Boxes whose meaning is fixed by the structure rather than by a functor.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Structural {
    /// `left ⊗ right -> right ⊗ left`, symmetric.
    Swap { left: Ob, right: Ob },
    /// `left ⊗ right -> right ⊗ left`; the inverse braiding when `inverse`.
    Braid { left: Ob, right: Ob, inverse: bool },
    Twist { ob: Ob, inverse: bool },
    /// `left ⊗ right -> Ty()`.
    Cup { left: Ob, right: Ob },
    /// `Ty() -> left ⊗ right`.
    Cap { left: Ob, right: Ob },
    Spider { legs_in: usize, legs_out: usize, ob: Ob },
    /// `ob -> ob^legs`, or `ob^legs -> ob` when daggered.
    Copy { ob: Ob, legs: usize, is_dagger: bool },
    /// `ob -> Ty()`, or `Ty() -> ob` when daggered.
    Discard { ob: Ob, is_dagger: bool },
}

impl Structural {
    pub fn swap(left: impl Into<Ob>, right: impl Into<Ob>) -> Self {
        Structural::Swap { left: left.into(), right: right.into() }
    }

    pub fn braid(left: impl Into<Ob>, right: impl Into<Ob>) -> Self {
        Structural::Braid { left: left.into(), right: right.into(), inverse: false }
    }

    pub fn twist(ob: impl Into<Ob>) -> Self {
        Structural::Twist { ob: ob.into(), inverse: false }
    }

    /// A cup on two objects with the same name. Any windings are accepted;
    /// [`Structure`] records which axioms the pairing needs.
    pub fn cup(left: impl Into<Ob>, right: impl Into<Ob>) -> Result<Self> {
        let (left, right) = (left.into(), right.into());
        check_pair("cup", &left, &right)?;
        Ok(Structural::Cup { left, right })
    }

    pub fn cap(left: impl Into<Ob>, right: impl Into<Ob>) -> Result<Self> {
        let (left, right) = (left.into(), right.into());
        check_pair("cap", &left, &right)?;
        Ok(Structural::Cap { left, right })
    }

    pub fn spider(legs_in: usize, legs_out: usize, ob: impl Into<Ob>) -> Self {
        Structural::Spider { legs_in, legs_out, ob: ob.into() }
    }

    pub fn copy(ob: impl Into<Ob>, legs: usize) -> Self {
        Structural::Copy { ob: ob.into(), legs, is_dagger: false }
    }

    pub fn discard(ob: impl Into<Ob>) -> Self {
        Structural::Discard { ob: ob.into(), is_dagger: false }
    }

    pub fn dom(&self) -> Ty {
        match self {
            Structural::Swap { left, right } | Structural::Braid { left, right, .. } => {
                Ty::new(vec![left.clone(), right.clone()])
            }
            Structural::Twist { ob, .. } => Ty::from(ob),
            Structural::Cup { left, right } => Ty::new(vec![left.clone(), right.clone()]),
            Structural::Cap { .. } => Ty::unit(),
            Structural::Spider { legs_in, ob, .. } => Ty::from(ob).pow(*legs_in),
            Structural::Copy { ob, legs, is_dagger } => Ty::from(ob).pow(if *is_dagger { *legs } else { 1 }),
            Structural::Discard { ob, is_dagger } => Ty::from(ob).pow(if *is_dagger { 0 } else { 1 }),
        }
    }

    pub fn cod(&self) -> Ty {
        match self {
            Structural::Swap { left, right } | Structural::Braid { left, right, .. } => {
                Ty::new(vec![right.clone(), left.clone()])
            }
            Structural::Twist { ob, .. } => Ty::from(ob),
            Structural::Cup { .. } => Ty::unit(),
            Structural::Cap { left, right } => Ty::new(vec![left.clone(), right.clone()]),
            Structural::Spider { legs_out, ob, .. } => Ty::from(ob).pow(*legs_out),
            Structural::Copy { ob, legs, is_dagger } => Ty::from(ob).pow(if *is_dagger { 1 } else { *legs }),
            Structural::Discard { ob, is_dagger } => Ty::from(ob).pow(if *is_dagger { 1 } else { 0 }),
        }
    }

    pub fn dagger(&self) -> Self {
        match self.clone() {
            Structural::Swap { left, right } => Structural::Swap { left: right, right: left },
            Structural::Braid { left, right, inverse } => Structural::Braid { left: right, right: left, inverse: !inverse },
            Structural::Twist { ob, inverse } => Structural::Twist { ob, inverse: !inverse },
            Structural::Cup { left, right } => Structural::Cap { left, right },
            Structural::Cap { left, right } => Structural::Cup { left, right },
            Structural::Spider { legs_in, legs_out, ob } => Structural::Spider { legs_in: legs_out, legs_out: legs_in, ob },
            Structural::Copy { ob, legs, is_dagger } => Structural::Copy { ob, legs, is_dagger: !is_dagger },
            Structural::Discard { ob, is_dagger } => Structural::Discard { ob, is_dagger: !is_dagger },
        }
    }

    pub(crate) fn features(&self) -> Features {
        match self {
            Structural::Swap { .. } => Features::SWAP,
            Structural::Braid { .. } => Features::BRAID,
            Structural::Twist { .. } => Features::TWIST,
            Structural::Cup { left, right } => pairing(left, right, &left.r()),
            Structural::Cap { left, right } => pairing(left, right, &left.l()),
            Structural::Spider { .. } => Features::SPIDER,
            Structural::Copy { is_dagger: false, .. } | Structural::Discard { is_dagger: false, .. } => Features::COPY,
            Structural::Copy { .. } | Structural::Discard { .. } => Features::SPIDER,
        }
    }
}

fn check_pair(kind: &str, left: &Ob, right: &Ob) -> Result<()> {
    if left.name != right.name {
        return Err(Error::TypeMismatch {
            context: kind.into(),
            expected: format!("an adjoint of {left}"),
            found: right.to_string(),
        });
    }
    Ok(())
}

/// Rigid when `right` is the expected adjoint, pivotal when it differs by an
/// even winding, self-dual otherwise.
fn pairing(left: &Ob, right: &Ob, adjoint: &Ob) -> Features {
    if right == adjoint {
        Features::RIGID
    } else if (right.z - adjoint.z) % 2 == 0 {
        Features::RIGID | Features::PIVOTAL
    } else {
        Features::SELF_DUAL
    }
    .union(if left.name == right.name { Features::empty() } else { Features::SELF_DUAL })
}

impl Display for Structural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Structural::Swap { left, right } => write!(f, "Swap({left}, {right})"),
            Structural::Braid { left, right, inverse: false } => write!(f, "Braid({left}, {right})"),
            Structural::Braid { left, right, inverse: true } => write!(f, "Braid({right}, {left})†"),
            Structural::Twist { ob, inverse } => write!(f, "Twist({ob}){}", if *inverse { "†" } else { "" }),
            Structural::Cup { left, right } => write!(f, "Cup({left}, {right})"),
            Structural::Cap { left, right } => write!(f, "Cap({left}, {right})"),
            Structural::Spider { legs_in, legs_out, ob } => write!(f, "Spider({legs_in}, {legs_out}, {ob})"),
            Structural::Copy { ob, legs, is_dagger } => {
                write!(f, "Copy({ob}, {legs}){}", if *is_dagger { "†" } else { "" })
            }
            Structural::Discard { ob, is_dagger } => write!(f, "Discard({ob}){}", if *is_dagger { "†" } else { "" }),
        }
    }
}

/// The kinds of structural boxes a diagram uses.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Features(u16);

impl Features {
    pub const BRAID: Features = Features(1);
    pub const TWIST: Features = Features(1 << 1);
    pub const SWAP: Features = Features(1 << 2);
    pub const TRACE: Features = Features(1 << 3);
    pub const RIGID: Features = Features(1 << 4);
    pub const PIVOTAL: Features = Features(1 << 5);
    pub const SELF_DUAL: Features = Features(1 << 6);
    pub const SPIDER: Features = Features(1 << 7);
    pub const COPY: Features = Features(1 << 8);

    pub const fn empty() -> Self {
        Features(0)
    }

    pub const fn union(self, other: Features) -> Self {
        Features(self.0 | other.0)
    }

    pub const fn contains(self, other: Features) -> bool {
        self.0 & other.0 == other.0
    }
}

impl BitOr for Features {
    type Output = Features;

    fn bitor(self, rhs: Features) -> Features {
        self.union(rhs)
    }
}

/// The lattice of structures, from free monoidal categories up to hypergraph
/// categories.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Structure {
    Monoidal,
    Braided,
    Balanced,
    Symmetric,
    Traced,
    Rigid,
    Pivotal,
    Ribbon,
    Compact,
    Frobenius,
    Markov,
}

impl Structure {
    /// Every structure, ordered so that the first one admitting a feature set
    /// is the least one.
    pub const ALL: [Structure; 11] = [
        Structure::Monoidal,
        Structure::Traced,
        Structure::Braided,
        Structure::Rigid,
        Structure::Symmetric,
        Structure::Balanced,
        Structure::Pivotal,
        Structure::Markov,
        Structure::Compact,
        Structure::Ribbon,
        Structure::Frobenius,
    ];

    pub fn features(self) -> Features {
        use Features as F;
        match self {
            Structure::Monoidal => F::empty(),
            Structure::Braided => F::BRAID,
            Structure::Balanced => F::BRAID | F::TWIST | F::TRACE,
            Structure::Symmetric => F::SWAP | F::TRACE,
            Structure::Traced => F::TRACE,
            Structure::Rigid => F::RIGID,
            Structure::Pivotal => F::RIGID | F::PIVOTAL | F::TRACE,
            Structure::Ribbon => F::RIGID | F::PIVOTAL | F::TRACE | F::BRAID | F::TWIST,
            Structure::Compact => F::RIGID | F::PIVOTAL | F::TRACE | F::SWAP,
            Structure::Frobenius => {
                F::RIGID | F::PIVOTAL | F::TRACE | F::SWAP | F::SELF_DUAL | F::SPIDER | F::COPY
            }
            Structure::Markov => F::SWAP | F::COPY | F::TRACE,
        }
    }

    pub fn admits(self, features: Features) -> bool {
        self.features().contains(features)
    }

    /// Whether every diagram of `self` is also a diagram of `other`.
    pub fn is_below(self, other: Structure) -> bool {
        other.admits(self.features())
    }

    /// The least structure admitting the features, if any.
    pub fn minimal(features: Features) -> Option<Structure> {
        Structure::ALL.into_iter().find(|s| s.admits(features))
    }

    /// The least structure above both, if any.
    pub fn join(self, other: Structure) -> Option<Structure> {
        Structure::minimal(self.features() | other.features())
    }

    pub fn name(self) -> &'static str {
        match self {
            Structure::Monoidal => "monoidal",
            Structure::Braided => "braided",
            Structure::Balanced => "balanced",
            Structure::Symmetric => "symmetric",
            Structure::Traced => "traced",
            Structure::Rigid => "rigid",
            Structure::Pivotal => "pivotal",
            Structure::Ribbon => "ribbon",
            Structure::Compact => "compact",
            Structure::Frobenius => "frobenius",
            Structure::Markov => "markov",
        }
    }

    pub fn parse(name: &str) -> Option<Structure> {
        Structure::ALL.into_iter().find(|s| s.name() == name)
    }
}

impl Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn boxed(s: Structural) -> Diagram {
    Diagram::from(s)
}

fn id(ty: &Ty) -> Diagram {
    Diagram::id(ty.clone())
}

fn compose(parts: &[Diagram]) -> Result<Diagram> {
    let (first, rest) = parts.split_first().expect("at least one part");
    Diagram::then_all(first, rest)
}

/// Symmetry on words: `x ⊗ y -> y ⊗ x` made of [`Structural::Swap`] boxes.
pub fn swap_types(x: &Ty, y: &Ty) -> Diagram {
    crossing(x, y, &|a, b| Structural::swap(a.clone(), b.clone()))
}

/// Braiding on words, or its inverse.
pub fn braid_types(x: &Ty, y: &Ty, inverse: bool) -> Diagram {
    crossing(x, y, &|a, b| Structural::Braid { left: a.clone(), right: b.clone(), inverse })
}

fn crossing(x: &Ty, y: &Ty, cross: &dyn Fn(&Ob, &Ob) -> Structural) -> Diagram {
    if x.is_empty() {
        return id(y);
    }
    if y.is_empty() {
        return id(x);
    }
    if x.len() == 1 {
        let (y0, ys) = (y.slice(0..1), y.slice(1..y.len()));
        let first = boxed(cross(&x.objects()[0], &y0.objects()[0])).whisker_right(&ys);
        let rest = crossing(x, &ys, cross).whisker_left(&y0);
        return first.then(&rest).expect("crossings compose");
    }
    let (x0, xs) = (x.slice(0..1), x.slice(1..x.len()));
    let first = crossing(&xs, y, cross).whisker_left(&x0);
    let rest = crossing(&x0, y, cross).whisker_right(&xs);
    first.then(&rest).expect("crossings compose")
}

/// The permutation sending input wire `perm[j]` to output position `j`, as
/// adjacent swaps. Uses exactly as many swaps as `perm` has inversions.
pub fn permute(word: &Ty, perm: &[usize]) -> Result<Diagram> {
    let n = word.len();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::Validation(format!("{perm:?} is not a permutation of {n} wires")));
    }
    let mut current: Vec<usize> = (0..n).collect();
    let mut objects = word.objects().to_vec();
    let mut result = id(word);
    for (j, &target) in perm.iter().enumerate() {
        let mut p = current.iter().position(|&w| w == target).expect("permutation");
        while p > j {
            let ty = Ty::new(objects.clone());
            let swap = Structural::swap(objects[p - 1].clone(), objects[p].clone());
            let layer = Layer::new(ty.slice(0..p - 1), swap, ty.slice(p + 1..n));
            result = result.then(&Diagram::from_layers(ty, vec![layer])?)?;
            current.swap(p - 1, p);
            objects.swap(p - 1, p);
            p -= 1;
        }
    }
    Ok(result)
}

fn interleave(k: usize, n: usize) -> Vec<usize> {
    // Output r * k + i carries copy r of object i, input i * n + r.
    (0..n * k).map(|j| (j % k) * n + j / k).collect()
}

/// Copies a word `n` times: `x -> x^n`, with outputs grouped as whole words.
pub fn copy_types(x: &Ty, n: usize) -> Result<Diagram> {
    if n == 0 {
        return Ok(discard_types(x));
    }
    if n == 1 || x.is_empty() {
        return Ok(id(&x.pow(n.min(1))));
    }
    let copies: Vec<Diagram> = x.objects().iter().map(|ob| boxed(Structural::copy(ob.clone(), n))).collect();
    let grouped = Diagram::tensor_all(&copies);
    let perm = permute(grouped.cod(), &interleave(x.len(), n))?;
    grouped.then(&perm)
}

pub fn discard_types(x: &Ty) -> Diagram {
    let discards: Vec<Diagram> = x.objects().iter().map(|ob| boxed(Structural::discard(ob.clone()))).collect();
    Diagram::tensor_all(&discards)
}

/// Spiders on words: `x^legs_in -> x^legs_out`, one spider per object.
pub fn spiders_types(legs_in: usize, legs_out: usize, x: &Ty) -> Result<Diagram> {
    let k = x.len();
    let spiders: Vec<Diagram> = x
        .objects()
        .iter()
        .map(|ob| boxed(Structural::spider(legs_in, legs_out, ob.clone())))
        .collect();
    let body = Diagram::tensor_all(&spiders);
    if k <= 1 {
        return Ok(body);
    }
    // Group the incoming copies object by object: inverse of the interleaving.
    let inter = interleave(k, legs_in);
    let mut gather = vec![0; inter.len()];
    for (j, &i) in inter.iter().enumerate() {
        gather[i] = j;
    }
    let before = permute(&x.pow(legs_in), &gather)?;
    let after = permute(body.cod(), &interleave(k, legs_out))?;
    compose(&[before, body, after])
}

/// Nested cups `left ⊗ right -> Ty()`, pairing the last object of `left` with
/// the first of `right`, and so on outwards.
pub fn cups(left: &Ty, right: &Ty) -> Result<Diagram> {
    if left.len() != right.len() {
        return Err(Error::TypeMismatch {
            context: "cups".into(),
            expected: format!("{} objects", left.len()),
            found: right.to_string(),
        });
    }
    let n = left.len();
    let mut result = id(&left.tensor(right));
    for i in 0..n {
        let (outer_left, outer_right) = (left.slice(0..n - i - 1), right.slice(i + 1..n));
        let cup = Structural::cup(left.objects()[n - i - 1].clone(), right.objects()[i].clone())?;
        let layer = Layer::new(outer_left.clone(), cup, outer_right.clone());
        result = result.then(&Diagram::from_layers(result.cod().clone(), vec![layer])?)?;
    }
    Ok(result)
}

/// Nested caps `Ty() -> left ⊗ right`, innermost last.
pub fn caps(left: &Ty, right: &Ty) -> Result<Diagram> {
    if left.len() != right.len() {
        return Err(Error::TypeMismatch {
            context: "caps".into(),
            expected: format!("{} objects", left.len()),
            found: right.to_string(),
        });
    }
    let n = left.len();
    let mut result = id(&Ty::unit());
    for i in 0..n {
        let cap = Structural::cap(left.objects()[i].clone(), right.objects()[n - i - 1].clone())?;
        let layer = Layer::new(left.slice(0..i), cap, right.slice(n - i..n));
        result = result.then(&Diagram::from_layers(result.cod().clone(), vec![layer])?)?;
    }
    Ok(result)
}

/// Right transpose `f.r: cod.r -> dom.r`.
pub fn transpose_r(f: &Diagram) -> Result<Diagram> {
    let (x, y) = (f.dom(), f.cod());
    compose(&[
        caps(&x.r(), x)?.whisker_right(&y.r()),
        f.whisker_left(&x.r()).whisker_right(&y.r()),
        cups(y, &y.r())?.whisker_left(&x.r()),
    ])
}

/// Left transpose `f.l: cod.l -> dom.l`.
pub fn transpose_l(f: &Diagram) -> Result<Diagram> {
    let (x, y) = (f.dom(), f.cod());
    compose(&[
        caps(x, &x.l())?.whisker_left(&y.l()),
        f.whisker_left(&y.l()).whisker_right(&x.l()),
        cups(&y.l(), y)?.whisker_right(&x.l()),
    ])
}

/// The trace of `d` over `n` wires on the given side. The traced wires must
/// have the same types in the domain and the codomain.
pub fn trace(d: &Diagram, n: usize, side: Side) -> Result<Diagram> {
    let (dom, cod) = (d.dom(), d.cod());
    if n > dom.len() || n > cod.len() {
        return Err(Error::Arity {
            context: "trace".into(),
            expected: n,
            found: dom.len().min(cod.len()),
        });
    }
    let (traced_dom, traced_cod) = match side {
        Side::Left => (dom.slice(0..n), cod.slice(0..n)),
        Side::Right => (dom.slice(dom.len() - n..dom.len()), cod.slice(cod.len() - n..cod.len())),
    };
    if traced_dom != traced_cod {
        return Err(Error::TypeMismatch {
            context: "trace".into(),
            expected: traced_dom.to_string(),
            found: traced_cod.to_string(),
        });
    }
    let features = d.features();
    if features.contains(Features::BRAID) && !features.contains(Features::TWIST) {
        return Err(unsupported("traces of braided diagrams need a balanced structure"));
    }
    Ok(Diagram::from(DiagramBox::Trace(Trace {
        body: Arc::new(d.clone()),
        traced: traced_dom,
        side,
    })))
}

impl Diagram {
    pub fn trace(&self, n: usize, side: Side) -> Result<Diagram> {
        trace(self, n, side)
    }
}

/// A zigzag found in a diagram: the cap at layer `cap` and the cup at layer
/// `cup` share the wire that runs between them.
struct Snake {
    cap: usize,
    cup: usize,
    /// True when the cap's left leg is the middle strand.
    left_leg: bool,
    /// Position of the middle strand in the domain of each layer strictly
    /// between the cap and the cup.
    strand: Vec<usize>,
}

fn offset_of(layer: &Layer) -> (&DiagramBox, usize) {
    layer.single().expect("split layers hold one box")
}

fn find_snake(layers: &[Layer]) -> Option<Snake> {
    for (c, layer) in layers.iter().enumerate() {
        let (DiagramBox::Structural(Structural::Cap { left: cap_left, right: cap_right }), p) = offset_of(layer) else {
            continue;
        };
        for left_leg in [true, false] {
            let mut pos = if left_leg { p } else { p + 1 };
            let mut strand = Vec::new();
            for (j, lower) in layers.iter().enumerate().skip(c + 1) {
                let (b, q) = offset_of(lower);
                let (dw, cw) = (b.dom().len(), b.cod().len());
                if pos < q {
                    strand.push(pos);
                    continue;
                }
                if pos >= q + dw {
                    strand.push(pos);
                    pos = pos - dw + cw;
                    continue;
                }
                let port = pos - q;
                if let DiagramBox::Structural(Structural::Cup { left: cup_left, right: cup_right }) = b {
                    // The zigzag straightens to an identity only when the outer
                    // wires have equal types.
                    let fits = if left_leg {
                        port == 1 && cup_left == cap_right
                    } else {
                        port == 0 && cup_right == cap_left
                    };
                    if fits {
                        return Some(Snake { cap: c, cup: j, left_leg, strand });
                    }
                }
                break;
            }
        }
    }
    None
}

/// Brings the cap and cup of a snake together with interchangers, moving the
/// boxes on the cap's side of the middle strand above the cap and the others
/// below the cup, then removes both.
fn yank(layers: &mut Vec<Layer>, snake: Snake) -> Result<()> {
    // For each layer in between: does it belong above the cap?
    let mut above: Vec<bool> = layers[snake.cap + 1..snake.cup]
        .iter()
        .zip(&snake.strand)
        .map(|(layer, &pos)| {
            let (b, q) = offset_of(layer);
            let is_left = q + b.dom().len() <= pos;
            is_left == snake.left_leg
        })
        .collect();
    // Boxes above the cap and the cup itself all sit on this side of the
    // boxes they are interchanged with.
    let side = if snake.left_leg { Side::Left } else { Side::Right };
    let (mut c, mut u) = (snake.cap, snake.cup);
    while u > c + 1 {
        if above[0] {
            swap_adjacent(layers, c, side)?;
            above.remove(0);
            c += 1;
        } else if !above[above.len() - 1] {
            swap_adjacent(layers, u - 1, side)?;
            above.pop();
            u -= 1;
        } else {
            let k = above.windows(2).position(|w| !w[0] && w[1]).expect("a below box precedes an above box");
            swap_adjacent(layers, c + 1 + k, side)?;
            above.swap(k, k + 1);
        }
    }
    layers.drain(c..=u);
    Ok(())
}

fn swap_adjacent(layers: &mut [Layer], i: usize, side: Side) -> Result<()> {
    let dom = layers[i].dom();
    let pair = Diagram::from_layers(dom, layers[i..i + 2].to_vec())?;
    let swapped = pair.interchange(0, side)?;
    layers[i..i + 2].clone_from_slice(swapped.layers());
    Ok(())
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Removes every zigzag whose outer wires have equal types, by the snake
/// equations. Zigzags whose windings do not cancel are left in place.
pub fn snake_removal(d: &Diagram) -> Result<Diagram> {
    let mut layers = d.split_layers().layers().to_vec();
    while let Some(snake) = find_snake(&layers) {
        yank(&mut layers, snake)?;
    }
    Diagram::from_layers(d.dom().clone(), layers)
}

/// A rule rewriting the braiding of two objects into a formal sum.
pub type BraidRule = Arc<dyn Fn(&Ob, &Ob) -> Result<Sum<Diagram>> + Send + Sync>;

/// Planar diagrams with formal sums, where tensor and composition distribute.
/// Braids are expanded by `rule` when one is given.
#[derive(Clone, Default)]
pub struct DiagramSums {
    pub rule: Option<BraidRule>,
}

impl Category for DiagramSums {
    type Ob = Ty;
    type Ar = Sum<Diagram>;

    fn id(&self, x: &Ty) -> Sum<Diagram> {
        Sum::single(id(x))
    }
    fn then(&self, f: &Sum<Diagram>, g: &Sum<Diagram>) -> Result<Sum<Diagram>> {
        f.then(g)
    }
    fn dom(&self, f: &Sum<Diagram>) -> Ty {
        f.dom().clone()
    }
    fn cod(&self, f: &Sum<Diagram>) -> Ty {
        f.cod().clone()
    }
    fn dagger(&self, f: &Sum<Diagram>) -> Result<Sum<Diagram>> {
        Ok(Morphism::dagger(f))
    }
    fn sum(&self, terms: Vec<Sum<Diagram>>, dom: &Ty, cod: &Ty) -> Result<Sum<Diagram>> {
        let flat = terms.iter().flat_map(|t| t.terms().iter().cloned()).collect();
        Sum::new(flat, dom.clone(), cod.clone())
    }
    fn bubble(&self, arg: &Sum<Diagram>, name: &str) -> Result<Sum<Diagram>> {
        let term = arg
            .clone()
            .into_single()
            .ok_or_else(|| unsupported(format!("bubble {name} around a sum")))?;
        Ok(Sum::single(term.bubble(name)))
    }
}

impl Monoidal for DiagramSums {
    fn unit(&self) -> Ty {
        Ty::unit()
    }
    fn tensor_ob(&self, a: &Ty, b: &Ty) -> Ty {
        a.tensor(b)
    }
    fn tensor(&self, f: &Sum<Diagram>, g: &Sum<Diagram>) -> Result<Sum<Diagram>> {
        let mut terms = Vec::new();
        for a in f.terms() {
            for b in g.terms() {
                terms.push(a.tensor(b));
            }
        }
        Sum::new(terms, f.dom().tensor(g.dom()), f.cod().tensor(g.cod()))
    }
    fn swap(&self, a: &Ty, b: &Ty) -> Result<Sum<Diagram>> {
        Ok(Sum::single(swap_types(a, b)))
    }
    fn braid(&self, a: &Ty, b: &Ty, inverse: bool) -> Result<Sum<Diagram>> {
        let Some(rule) = &self.rule else {
            return Ok(Sum::single(braid_types(a, b, inverse)));
        };
        let (a, b) = match (a.objects(), b.objects()) {
            ([a], [b]) => (a, b),
            _ => return Err(unsupported("braid rules act on single objects")),
        };
        if inverse {
            Ok(Morphism::dagger(&rule(b, a)?))
        } else {
            rule(a, b)
        }
    }
    fn twist(&self, a: &Ty, inverse: bool) -> Result<Sum<Diagram>> {
        match a.objects() {
            [ob] => Ok(Sum::single(boxed(Structural::Twist { ob: ob.clone(), inverse }))),
            _ => Err(unsupported("twists of words")),
        }
    }
    fn cup(&self, left: &Ty, right: &Ty) -> Result<Sum<Diagram>> {
        Ok(Sum::single(cups(left, right)?))
    }
    fn cap(&self, left: &Ty, right: &Ty) -> Result<Sum<Diagram>> {
        Ok(Sum::single(caps(left, right)?))
    }
    fn spiders(&self, legs_in: usize, legs_out: usize, x: &Ty) -> Result<Sum<Diagram>> {
        Ok(Sum::single(spiders_types(legs_in, legs_out, x)?))
    }
    fn copy(&self, x: &Ty, legs: usize) -> Result<Sum<Diagram>> {
        Ok(Sum::single(copy_types(x, legs)?))
    }
    fn discard(&self, x: &Ty) -> Result<Sum<Diagram>> {
        Ok(Sum::single(discard_types(x)))
    }
    fn trace(&self, f: &Sum<Diagram>, traced: &Ty, side: Side) -> Result<Sum<Diagram>> {
        let terms = f
            .terms()
            .iter()
            .map(|t| trace(t, traced.len(), side))
            .collect::<Result<Vec<_>>>()?;
        let strip = |ty: &Ty| match side {
            Side::Left => ty.slice(traced.len()..ty.len()),
            Side::Right => ty.slice(0..ty.len() - traced.len()),
        };
        Sum::new(terms, strip(f.dom()), strip(f.cod()))
    }
}

/// The functor on planar diagrams that expands braids by `rule` and leaves
/// everything else in place.
pub fn expand_braiding(d: &Diagram, rule: BraidRule) -> Result<Sum<Diagram>> {
    let functor: Functor<DiagramSums> = Functor::new(
        |ob: &Ob| Ok(Ty::from(ob)),
        |g: &Generator<Ty>| Ok(Sum::single(Diagram::from(g.clone()))),
        DiagramSums { rule: Some(rule) },
    );
    functor.apply(d)
}

/// The scalar `A` of the Kauffman bracket.
pub fn kauffman_scalar() -> Diagram {
    gen("A", Ty::unit(), Ty::unit())
}

/// The Kauffman bracket skein relation:
/// `Braid(x, y) = A ⊗ id(x ⊗ y) + Cup(x, y) ; A† ; Cap(y, x)`.
pub fn kauffman_rule() -> BraidRule {
    Arc::new(|x: &Ob, y: &Ob| {
        let a = kauffman_scalar();
        let xy = Ty::new(vec![x.clone(), y.clone()]);
        let smooth = a.tensor(&id(&xy));
        let turn = compose(&[
            boxed(Structural::cup(x.clone(), y.clone())?),
            a.dagger(),
            boxed(Structural::cap(y.clone(), x.clone())?),
        ])?;
        Sum::new(vec![smooth, turn], xy, Ty::new(vec![y.clone(), x.clone()]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::Equality;

    fn x() -> Ob {
        Ob::new("x")
    }

    #[test]
    fn dagger_of_structural_boxes() {
        let swap = Structural::swap("a", "b");
        assert_eq!(swap.dagger(), Structural::swap("b", "a"));
        assert_eq!(swap.dagger().dom(), swap.cod());
        let cup = Structural::cup(x(), x().r()).unwrap();
        assert_eq!(cup.dagger(), Structural::cap(x(), x().r()).unwrap());
        let copy = Structural::copy(x(), 3);
        assert_eq!(copy.dagger().dom().len(), 3);
        assert_eq!(copy.dagger().dagger(), copy);
        let braid = Structural::braid("a", "b");
        assert_eq!(braid.dagger().dom(), braid.cod());
        assert_eq!(braid.dagger().dagger(), braid);
    }

    #[test]
    fn cups_need_matching_names() {
        assert!(matches!(Structural::cup("x", "y"), Err(Error::TypeMismatch { .. })));
        assert!(Structural::cap("x", "x").is_ok());
    }

    #[test]
    fn structure_of_pairings() {
        let rigid = Diagram::from(Structural::cup(x(), x().r()).unwrap());
        assert_eq!(rigid.structure().unwrap(), Structure::Rigid);
        let pivotal = Diagram::from(Structural::cup(x().r(), x()).unwrap());
        assert_eq!(pivotal.structure().unwrap(), Structure::Pivotal);
        let self_dual = Diagram::from(Structural::cup(x(), x()).unwrap());
        assert_eq!(self_dual.structure().unwrap(), Structure::Frobenius);
        let cap = Diagram::from(Structural::cap(x(), x().l()).unwrap());
        assert_eq!(cap.structure().unwrap(), Structure::Rigid);
    }

    #[test]
    fn lattice_order() {
        assert_eq!(Structure::minimal(Features::empty()), Some(Structure::Monoidal));
        assert_eq!(Structure::minimal(Features::SWAP), Some(Structure::Symmetric));
        assert_eq!(Structure::minimal(Features::BRAID | Features::TWIST), Some(Structure::Balanced));
        assert_eq!(Structure::minimal(Features::SWAP | Features::COPY), Some(Structure::Markov));
        assert_eq!(Structure::minimal(Features::BRAID | Features::SWAP), None);
        assert_eq!(Structure::Markov.join(Structure::Rigid), Some(Structure::Frobenius));
        for s in Structure::ALL {
            assert!(Structure::Monoidal.is_below(s));
            assert!(s.is_below(s));
            assert_eq!(Structure::parse(s.name()), Some(s));
        }
        assert!(Structure::Symmetric.is_below(Structure::Compact));
        assert!(!Structure::Braided.is_below(Structure::Symmetric));
    }

    #[test]
    fn swap_types_is_an_involution_up_to_hypergraphs() {
        let (a, b) = (Ty::parse("a b").unwrap(), Ty::parse("c").unwrap());
        let s = swap_types(&a, &b);
        assert_eq!(s.dom(), &a.tensor(&b));
        assert_eq!(s.cod(), &b.tensor(&a));
        assert_eq!(s.count_boxes(), 2);
        let round = s.then(&swap_types(&b, &a)).unwrap();
        assert!(round.equal(&id(&a.tensor(&b)), Equality::Hypergraph).unwrap());
    }

    #[test]
    fn permutations_use_one_swap_per_inversion() {
        let word = Ty::parse("a b c d").unwrap();
        let p = permute(&word, &[3, 2, 1, 0]).unwrap();
        assert_eq!(p.count_boxes(), 6);
        assert_eq!(p.cod(), &Ty::parse("d c b a").unwrap());
        assert!(permute(&word, &[0, 0, 1, 2]).is_err());
        assert_eq!(permute(&word, &[0, 1, 2, 3]).unwrap(), id(&word));
    }

    #[test]
    fn copies_of_words() {
        let word = Ty::parse("a b").unwrap();
        let c = copy_types(&word, 2).unwrap();
        assert_eq!(c.cod(), &Ty::parse("a b a b").unwrap());
        assert_eq!(c.count_boxes(), 3);
        assert_eq!(copy_types(&word, 0).unwrap().cod(), &Ty::unit());
        assert_eq!(copy_types(&word, 1).unwrap(), id(&word));
        let s = spiders_types(2, 3, &word).unwrap();
        assert_eq!(s.dom(), &word.pow(2));
        assert_eq!(s.cod(), &word.pow(3));
    }

    #[test]
    fn nested_cups_and_caps() {
        let t = Ty::parse("a b").unwrap();
        let c = cups(&t, &t.r()).unwrap();
        assert_eq!(c.dom(), &t.tensor(&t.r()));
        assert_eq!(c.structure().unwrap(), Structure::Rigid);
        let k = caps(&t, &t.l()).unwrap();
        assert_eq!(k.cod(), &t.tensor(&t.l()));
        assert_eq!(k.structure().unwrap(), Structure::Rigid);
    }

    #[test]
    fn snakes_straighten() {
        let f = gen("f", Ty::parse("a b").unwrap(), Ty::parse("c").unwrap());
        let transposed = transpose_l(&transpose_r(&f).unwrap()).unwrap();
        assert_eq!(transposed.dom(), f.dom());
        assert_ne!(transposed, f);
        assert_eq!(snake_removal(&transposed).unwrap(), f);

    }

    #[test]
    fn zigzag_identities() {
        let t = Ty::from("x");
        // Cap(x, x.l) ⊗ x ; x ⊗ Cup(x.l, x) = id(x)
        let left = compose(&[
            caps(&t, &t.l()).unwrap().whisker_right(&t),
            cups(&t.l(), &t).unwrap().whisker_left(&t),
        ])
        .unwrap();
        assert_eq!(snake_removal(&left).unwrap(), id(&t));
        // x ⊗ Cap(x.r, x) ; Cup(x, x.r) ⊗ x = id(x)
        let right = compose(&[
            caps(&t.r(), &t).unwrap().whisker_left(&t),
            cups(&t, &t.r()).unwrap().whisker_right(&t),
        ])
        .unwrap();
        assert_eq!(snake_removal(&right).unwrap(), id(&t));
        // The outer wires x.r.r and x differ: left alone.
        let twisted = compose(&[
            boxed(Structural::cap(x(), x().l()).unwrap()).whisker_right(&t.r().r()),
            boxed(Structural::cup(x().l(), x().r().r()).unwrap()).whisker_left(&t),
        ])
        .unwrap();
        assert_eq!(snake_removal(&twisted).unwrap(), twisted);
    }

    #[test]
    fn traces_check_types() {
        let f = gen("f", Ty::parse("a b").unwrap(), Ty::parse("c b").unwrap());
        let t = f.trace(1, Side::Right).unwrap();
        assert_eq!(t.dom(), &Ty::from("a"));
        assert_eq!(t.cod(), &Ty::from("c"));
        assert_eq!(t.structure().unwrap(), Structure::Traced);
        assert!(matches!(f.trace(1, Side::Left), Err(Error::TypeMismatch { .. })));
        assert!(f.trace(3, Side::Left).is_err());
        let braid = Diagram::from(Structural::braid("a", "a"));
        assert!(matches!(braid.trace(1, Side::Right), Err(Error::Unsupported(_))));
    }

    #[test]
    fn kauffman_expansion_has_two_terms_per_braid() {
        let b = Diagram::from(Structural::braid("x", "x"));
        let sum = expand_braiding(&b, kauffman_rule()).unwrap();
        assert_eq!(sum.terms().len(), 2);
        assert_eq!(sum.terms()[0].count_boxes(), 1);
        assert_eq!(sum.terms()[1].count_boxes(), 3);
        let two = b.then(&b).unwrap();
        assert_eq!(expand_braiding(&two, kauffman_rule()).unwrap().terms().len(), 4);
        let inverse = b.dagger();
        let sum = expand_braiding(&inverse, kauffman_rule()).unwrap();
        assert_eq!(sum.terms()[0], kauffman_scalar().dagger().tensor(&id(&Ty::parse("x x").unwrap())));
    }
}
