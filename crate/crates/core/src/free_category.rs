//! Free (dagger) categories.
//!
//! An arrow is a [`Path`]: a list of composable generators together with a
//! domain and a codomain. Identities are empty paths and composition is list
//! concatenation, so the unit and associativity laws hold on the nose. The
//! planar diagrams of [`crate::planar`] reuse [`Path`] with layers as
//! generators.
//!
//! Formal [`Sum`]s of parallel arrows give enrichment in commutative monoids and
//! [`FreeBubble`]s wrap a whole arrow inside a box, which is how unary operators
//! on homsets are encoded.

use std::collections::HashMap;
use std::fmt::{self, Debug, Display};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde_json::Value;

use crate::error::{unsupported, Error, Result};

/// A generating object, optionally wound into left (`z < 0`) or right
/// (`z > 0`) adjoints.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ob {
    pub name: String,
    pub z: i32,
}

impl Ob {
    pub fn new(name: impl Into<String>) -> Self {
        Ob {
            name: name.into(),
            z: 0,
        }
    }

    /// Right adjoint.
    pub fn r(&self) -> Self {
        Ob {
            name: self.name.clone(),
            z: self.z + 1,
        }
    }

    /// Left adjoint.
    pub fn l(&self) -> Self {
        Ob {
            name: self.name.clone(),
            z: self.z - 1,
        }
    }

    /// The same object with its winding erased.
    pub fn base(&self) -> Self {
        Ob::new(self.name.clone())
    }

    /// Parses `x`, `x.r`, `x.l.l`, ...
    pub fn parse(text: &str) -> Option<Self> {
        let mut parts = text.split('.');
        let name = parts.next().filter(|n| !n.is_empty())?;
        let mut z = 0;
        for suffix in parts {
            match suffix {
                "r" => z += 1,
                "l" => z -= 1,
                _ => return None,
            }
        }
        Some(Ob {
            name: name.to_string(),
            z,
        })
    }
}

impl Display for Ob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        let suffix = if self.z > 0 { ".r" } else { ".l" };
        for _ in 0..self.z.unsigned_abs() {
            f.write_str(suffix)?;
        }
        Ok(())
    }
}

impl Debug for Ob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ob({self})")
    }
}

impl From<&str> for Ob {
    fn from(name: &str) -> Self {
        Ob::new(name)
    }
}

/// Anything with a domain, a codomain and a dagger that can sit inside a
/// [`Path`].
pub trait Morphism: Clone + Eq + Hash + Debug + Display {
    type Ob: Clone + Eq + Hash + Debug + Display;

    fn dom(&self) -> Self::Ob;
    fn cod(&self) -> Self::Ob;
    fn dagger(&self) -> Self;
}

/// A generating arrow. Equality covers every field, payload included; hashing
/// ignores the payload.
#[derive(Clone, PartialEq, Eq)]
pub struct Generator<O> {
    pub name: String,
    pub dom: O,
    pub cod: O,
    pub is_dagger: bool,
    pub payload: Option<Value>,
}

impl<O> Generator<O> {
    pub fn new(name: impl Into<String>, dom: impl Into<O>, cod: impl Into<O>) -> Self {
        Generator {
            name: name.into(),
            dom: dom.into(),
            cod: cod.into(),
            is_dagger: false,
            payload: None,
        }
    }

    pub fn with_payload(mut self, payload: Value) -> Self {
        self.payload = Some(payload);
        self
    }
}

impl<O: Clone> Generator<O> {
    pub fn dagger(&self) -> Self {
        Generator {
            name: self.name.clone(),
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            is_dagger: !self.is_dagger,
            payload: self.payload.clone(),
        }
    }

    /// The undaggered generator this one was obtained from.
    pub fn undagger(&self) -> Self {
        if self.is_dagger {
            self.dagger()
        } else {
            self.clone()
        }
    }
}

impl<O: Hash> Hash for Generator<O> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.name.hash(state);
        self.dom.hash(state);
        self.cod.hash(state);
        self.is_dagger.hash(state);
    }
}

impl<O> Display for Generator<O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if self.is_dagger {
            f.write_str("†")?;
        }
        Ok(())
    }
}

impl<O: Display> Debug for Generator<O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Box({self}: {} -> {})", self.dom, self.cod)
    }
}

impl Morphism for Generator<Ob> {
    type Ob = Ob;

    fn dom(&self) -> Ob {
        self.dom.clone()
    }
    fn cod(&self) -> Ob {
        self.cod.clone()
    }
    fn dagger(&self) -> Self {
        Generator::dagger(self)
    }
}

/// An arrow of the free category generated by `M`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Path<M: Morphism> {
    pub(crate) inside: Vec<M>,
    pub(crate) dom: M::Ob,
    pub(crate) cod: M::Ob,
}

impl<M: Morphism> Path<M> {
    pub fn id(dom: M::Ob) -> Self {
        Path {
            inside: Vec::new(),
            cod: dom.clone(),
            dom,
        }
    }

    pub fn from_cell(cell: M) -> Self {
        Path {
            dom: cell.dom(),
            cod: cell.cod(),
            inside: vec![cell],
        }
    }

    /// Builds a path from its parts, checking that consecutive cells compose.
    pub fn new(inside: Vec<M>, dom: M::Ob, cod: M::Ob) -> Result<Self> {
        let mut current = dom.clone();
        for cell in &inside {
            if cell.dom() != current {
                return Err(Error::CompositionMismatch {
                    cod: current.to_string(),
                    dom: cell.dom().to_string(),
                    boxes: cell.to_string(),
                });
            }
            current = cell.cod();
        }
        if current != cod {
            return Err(Error::CompositionMismatch {
                cod: current.to_string(),
                dom: cod.to_string(),
                boxes: "<codomain>".into(),
            });
        }
        Ok(Path { inside, dom, cod })
    }

    pub fn inside(&self) -> &[M] {
        &self.inside
    }

    pub fn dom(&self) -> &M::Ob {
        &self.dom
    }

    pub fn cod(&self) -> &M::Ob {
        &self.cod
    }

    pub fn len(&self) -> usize {
        self.inside.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inside.is_empty()
    }

    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.cod != other.dom {
            return Err(Error::CompositionMismatch {
                cod: self.cod.to_string(),
                dom: other.dom.to_string(),
                boxes: format!("{self} ; {other}"),
            });
        }
        let mut inside = self.inside.clone();
        inside.extend(other.inside.iter().cloned());
        Ok(Path {
            inside,
            dom: self.dom.clone(),
            cod: other.cod.clone(),
        })
    }

    /// Composes a sequence of paths left to right.
    pub fn then_all<'a>(first: &Self, rest: impl IntoIterator<Item = &'a Self>) -> Result<Self>
    where
        M: 'a,
    {
        rest.into_iter().try_fold(first.clone(), |acc, next| acc.then(next))
    }

    pub fn dagger(&self) -> Self {
        Path {
            inside: self.inside.iter().rev().map(M::dagger).collect(),
            dom: self.cod.clone(),
            cod: self.dom.clone(),
        }
    }
}

impl<M: Morphism> Morphism for Path<M> {
    type Ob = M::Ob;

    fn dom(&self) -> M::Ob {
        self.dom.clone()
    }
    fn cod(&self) -> M::Ob {
        self.cod.clone()
    }
    fn dagger(&self) -> Self {
        Path::dagger(self)
    }
}

impl<M: Morphism> Display for Path<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inside.is_empty() {
            return write!(f, "Id({})", self.dom);
        }
        for (i, cell) in self.inside.iter().enumerate() {
            if i > 0 {
                f.write_str(" >> ")?;
            }
            write!(f, "{cell}")?;
        }
        Ok(())
    }
}

impl<M: Morphism> Debug for Path<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Path")
            .field("inside", &self.inside)
            .field("dom", &self.dom)
            .field("cod", &self.cod)
            .finish()
    }
}

/// A formal sum of parallel arrows. Terms are never sums themselves; the sum
/// with no terms is the zero arrow.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Sum<A: Morphism> {
    terms: Vec<A>,
    dom: A::Ob,
    cod: A::Ob,
}

impl<A: Morphism> Sum<A> {
    pub fn new(terms: Vec<A>, dom: A::Ob, cod: A::Ob) -> Result<Self> {
        for term in &terms {
            if term.dom() != dom || term.cod() != cod {
                return Err(Error::NotParallel {
                    expected: format!("{dom} -> {cod}"),
                    found: format!("{} -> {}", term.dom(), term.cod()),
                });
            }
        }
        Ok(Sum { terms, dom, cod })
    }

    pub fn zero(dom: A::Ob, cod: A::Ob) -> Self {
        Sum {
            terms: Vec::new(),
            dom,
            cod,
        }
    }

    pub fn single(term: A) -> Self {
        Sum {
            dom: term.dom(),
            cod: term.cod(),
            terms: vec![term],
        }
    }

    pub fn terms(&self) -> &[A] {
        &self.terms
    }

    pub fn dom(&self) -> &A::Ob {
        &self.dom
    }

    pub fn cod(&self) -> &A::Ob {
        &self.cod
    }

    /// Concatenates the terms of two parallel sums. `zero + f` is `f`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Sum::new(terms, self.dom.clone(), self.cod.clone())
    }

    /// The single term, when there is exactly one.
    pub fn into_single(self) -> Option<A> {
        if self.terms.len() == 1 {
            self.terms.into_iter().next()
        } else {
            None
        }
    }

    /// Composition distributes over the terms on both sides, so that
    /// `(f + f') ; (g + g') == f;g + f;g' + f';g + f';g'` with terms ordered
    /// lexicographically.
    pub fn then_with(&self, other: &Self, compose: impl Fn(&A, &A) -> Result<A>) -> Result<Self> {
        if self.cod != other.dom {
            return Err(Error::CompositionMismatch {
                cod: self.cod.to_string(),
                dom: other.dom.to_string(),
                boxes: "<sum>".into(),
            });
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for f in &self.terms {
            for g in &other.terms {
                terms.push(compose(f, g)?);
            }
        }
        Ok(Sum {
            terms,
            dom: self.dom.clone(),
            cod: other.cod.clone(),
        })
    }

    pub fn map_terms(&self, f: impl Fn(&A) -> A, dom: A::Ob, cod: A::Ob) -> Self {
        Sum {
            terms: self.terms.iter().map(f).collect(),
            dom,
            cod,
        }
    }
}

impl<M: Morphism> Sum<Path<M>> {
    pub fn then(&self, other: &Self) -> Result<Self> {
        self.then_with(other, Path::then)
    }

    /// `f ; (g + g') == f;g + f;g'`.
    pub fn precompose(&self, f: &Path<M>) -> Result<Self> {
        Sum::single(f.clone()).then(self)
    }

    /// `(f + f') ; g == f;g + f';g`.
    pub fn postcompose(&self, g: &Path<M>) -> Result<Self> {
        self.then(&Sum::single(g.clone()))
    }
}

impl<A: Morphism> Morphism for Sum<A> {
    type Ob = A::Ob;

    fn dom(&self) -> A::Ob {
        self.dom.clone()
    }
    fn cod(&self) -> A::Ob {
        self.cod.clone()
    }
    fn dagger(&self) -> Self {
        Sum {
            terms: self.terms.iter().map(A::dagger).collect(),
            dom: self.cod.clone(),
            cod: self.dom.clone(),
        }
    }
}

impl<A: Morphism> Display for Sum<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "zero({}, {})", self.dom, self.cod);
        }
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({term})")?;
        }
        Ok(())
    }
}

/// A box whose content is a whole arrow.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FreeBubble {
    pub name: String,
    pub arg: Arc<Path<FreeBox>>,
}

/// Generators of the free category: plain boxes and bubbles.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FreeBox {
    Gen(Generator<Ob>),
    Bubble(FreeBubble),
}

impl Morphism for FreeBox {
    type Ob = Ob;

    fn dom(&self) -> Ob {
        match self {
            FreeBox::Gen(g) => g.dom.clone(),
            FreeBox::Bubble(b) => b.arg.dom.clone(),
        }
    }

    fn cod(&self) -> Ob {
        match self {
            FreeBox::Gen(g) => g.cod.clone(),
            FreeBox::Bubble(b) => b.arg.cod.clone(),
        }
    }

    fn dagger(&self) -> Self {
        match self {
            FreeBox::Gen(g) => FreeBox::Gen(g.dagger()),
            FreeBox::Bubble(b) => FreeBox::Bubble(FreeBubble {
                name: b.name.clone(),
                arg: Arc::new(b.arg.dagger()),
            }),
        }
    }
}

impl Display for FreeBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FreeBox::Gen(g) => write!(f, "{g}"),
            FreeBox::Bubble(b) => write!(f, "{}({})", b.name, b.arg),
        }
    }
}

/// Arrows of the free category on [`Ob`] and [`Generator`].
pub type Arrow = Path<FreeBox>;

impl From<Generator<Ob>> for Arrow {
    fn from(g: Generator<Ob>) -> Self {
        Path::from_cell(FreeBox::Gen(g))
    }
}

impl Arrow {
    pub fn bubble(&self, name: impl Into<String>) -> Arrow {
        Path::from_cell(FreeBox::Bubble(FreeBubble {
            name: name.into(),
            arg: Arc::new(self.clone()),
        }))
    }
}

/// A category given by its operations on objects and arrows.
///
/// Only identity and composition are required; the other operations default
/// to an unsupported-structure error.
pub trait Category {
    type Ob: Clone + PartialEq + Debug;
    type Ar: Clone + Debug;

    fn id(&self, x: &Self::Ob) -> Self::Ar;
    fn then(&self, f: &Self::Ar, g: &Self::Ar) -> Result<Self::Ar>;
    fn dom(&self, f: &Self::Ar) -> Self::Ob;
    fn cod(&self, f: &Self::Ar) -> Self::Ob;

    fn dagger(&self, _f: &Self::Ar) -> Result<Self::Ar> {
        Err(unsupported("dagger"))
    }

    fn sum(&self, _terms: Vec<Self::Ar>, _dom: &Self::Ob, _cod: &Self::Ob) -> Result<Self::Ar> {
        Err(unsupported("formal sums"))
    }

    fn bubble(&self, _arg: &Self::Ar, name: &str) -> Result<Self::Ar> {
        Err(unsupported(format!("bubble {name}")))
    }
}

/// The free category itself, as a codomain for functors.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeCategory;

impl Category for FreeCategory {
    type Ob = Ob;
    type Ar = Arrow;

    fn id(&self, x: &Ob) -> Arrow {
        Path::id(x.clone())
    }
    fn then(&self, f: &Arrow, g: &Arrow) -> Result<Arrow> {
        f.then(g)
    }
    fn dom(&self, f: &Arrow) -> Ob {
        f.dom.clone()
    }
    fn cod(&self, f: &Arrow) -> Ob {
        f.cod.clone()
    }
    fn dagger(&self, f: &Arrow) -> Result<Arrow> {
        Ok(f.dagger())
    }
    fn bubble(&self, arg: &Arrow, name: &str) -> Result<Arrow> {
        Ok(arg.bubble(name))
    }
}

type ObMap<T> = Arc<dyn Fn(&Ob) -> Result<T> + Send + Sync>;
type ArMap<O, T> = Arc<dyn Fn(&Generator<O>) -> Result<T> + Send + Sync>;

/// A functor out of a free category, given by an object map, a map on
/// generators and a codomain category.
///
/// `O` is the object type of the generators: [`Ob`] for the free category,
/// [`crate::planar::Ty`] for planar diagrams.
pub struct Functor<C: Category, O = crate::planar::Ty> {
    ob: ObMap<C::Ob>,
    ar: ArMap<O, C::Ar>,
    pub cod: C,
}

impl<C: Category, O> Clone for Functor<C, O>
where
    C: Clone,
{
    fn clone(&self) -> Self {
        Functor {
            ob: self.ob.clone(),
            ar: self.ar.clone(),
            cod: self.cod.clone(),
        }
    }
}

impl<C: Category, O> Functor<C, O> {
    pub fn new(
        ob: impl Fn(&Ob) -> Result<C::Ob> + Send + Sync + 'static,
        ar: impl Fn(&Generator<O>) -> Result<C::Ar> + Send + Sync + 'static,
        cod: C,
    ) -> Self {
        Functor {
            ob: Arc::new(ob),
            ar: Arc::new(ar),
            cod,
        }
    }

    /// A functor defined by finite tables. Generators are looked up by value;
    /// missing entries raise [`Error::MissingMapping`].
    pub fn from_maps(ob: HashMap<Ob, C::Ob>, ar: HashMap<Generator<O>, C::Ar>, cod: C) -> Self
    where
        C::Ob: Send + Sync + 'static,
        C::Ar: Send + Sync + 'static,
        O: Eq + Hash + Display + Send + Sync + 'static,
    {
        Functor::new(
            move |x: &Ob| {
                ob.get(x)
                    .cloned()
                    .ok_or_else(|| Error::MissingMapping(format!("object {x}")))
            },
            move |g: &Generator<O>| {
                ar.get(g)
                    .cloned()
                    .ok_or_else(|| Error::MissingMapping(format!("box {g}: {} -> {}", g.dom, g.cod)))
            },
            cod,
        )
    }

    pub fn map_ob(&self, x: &Ob) -> Result<C::Ob> {
        (self.ob)(x)
    }

    /// Image of a generator. Daggered generators are sent to the dagger of the
    /// image of their undaggered version.
    pub fn map_generator(&self, g: &Generator<O>) -> Result<C::Ar>
    where
        O: Clone,
    {
        if g.is_dagger {
            let image = (self.ar)(&g.dagger())?;
            self.cod.dagger(&image)
        } else {
            (self.ar)(g)
        }
    }
}

impl<C: Category> Functor<C, Ob> {
    pub fn apply(&self, f: &Arrow) -> Result<C::Ar> {
        let mut result = self.cod.id(&self.map_ob(&f.dom)?);
        for cell in &f.inside {
            let image = match cell {
                FreeBox::Gen(g) => self.map_generator(g)?,
                FreeBox::Bubble(b) => self.cod.bubble(&self.apply(&b.arg)?, &b.name)?,
            };
            result = self.cod.then(&result, &image)?;
        }
        Ok(result)
    }

    pub fn apply_sum(&self, s: &Sum<Arrow>) -> Result<C::Ar> {
        let terms = s.terms.iter().map(|t| self.apply(t)).collect::<Result<Vec<_>>>()?;
        self.cod
            .sum(terms, &self.map_ob(&s.dom)?, &self.map_ob(&s.cod)?)
    }
}

impl Functor<FreeCategory, Ob> {
    /// The identity functor on the free category.
    pub fn identity() -> Self {
        Functor::new(|x: &Ob| Ok(x.clone()), |g: &Generator<Ob>| Ok(Arrow::from(g.clone())), FreeCategory)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gen(name: &str, dom: &str, cod: &str) -> Generator<Ob> {
        Generator::new(name, Ob::new(dom), Ob::new(cod))
    }

    #[test]
    fn identity_is_a_unit() {
        let f = Arrow::from(gen("f", "x", "y"));
        let id_x = Arrow::id(Ob::new("x"));
        assert_eq!(id_x.then(&f).unwrap(), f);
        assert_eq!(f.then(&Arrow::id(Ob::new("y"))).unwrap(), f);
    }

    #[test]
    fn composition_concatenates() {
        let (f, g) = (gen("f", "x", "y"), gen("g", "y", "z"));
        let fg = Arrow::from(f.clone()).then(&Arrow::from(g.clone())).unwrap();
        assert_eq!(fg.inside(), &[FreeBox::Gen(f), FreeBox::Gen(g)]);
        assert_eq!(fg.dom(), &Ob::new("x"));
        assert_eq!(fg.cod(), &Ob::new("z"));
    }

    #[test]
    fn composition_mismatch_names_the_types() {
        let f = Arrow::from(gen("f", "x", "y"));
        let h = Arrow::from(gen("h", "z", "w"));
        match f.then(&h) {
            Err(Error::CompositionMismatch { cod, dom, boxes }) => {
                assert_eq!((cod.as_str(), dom.as_str()), ("y", "z"));
                assert!(boxes.contains('f') && boxes.contains('h'));
            }
            other => panic!("expected mismatch, got {other:?}"),
        }
    }

    #[test]
    fn dagger_reverses_and_toggles() {
        let (f, g) = (gen("f", "x", "y"), gen("g", "y", "z"));
        let fg = Arrow::from(f.clone()).then(&Arrow::from(g.clone())).unwrap();
        let dag = fg.dagger();
        assert_eq!(dag.inside(), &[FreeBox::Gen(g.dagger()), FreeBox::Gen(f.dagger())]);
        assert_eq!(dag.dom(), &Ob::new("z"));
        assert_eq!(dag.dagger(), fg);
        assert_eq!(Arrow::id(Ob::new("x")).dagger(), Arrow::id(Ob::new("x")));
    }

    #[test]
    fn sums_distribute_on_the_nose() {
        let f = Arrow::from(gen("f", "x", "y"));
        let f_ = Arrow::from(gen("f_", "x", "y"));
        let g = Arrow::from(gen("g", "y", "z"));
        let g_ = Arrow::from(gen("g_", "y", "z"));
        let sum_g = Sum::new(vec![g.clone(), g_.clone()], Ob::new("y"), Ob::new("z")).unwrap();
        let left = sum_g.precompose(&f).unwrap();
        assert_eq!(left.terms(), &[f.then(&g).unwrap(), f.then(&g_).unwrap()]);

        let sum_f = Sum::new(vec![f.clone(), f_.clone()], Ob::new("x"), Ob::new("y")).unwrap();
        let right = sum_f.postcompose(&g).unwrap();
        assert_eq!(right.terms(), &[f.then(&g).unwrap(), f_.then(&g).unwrap()]);

        let zero = Sum::<Arrow>::zero(Ob::new("y"), Ob::new("z"));
        let absorbed = zero.precompose(&f).unwrap();
        assert_eq!(absorbed, Sum::zero(Ob::new("x"), Ob::new("z")));

        let mismatch = Sum::single(Arrow::from(gen("h", "w", "z"))).precompose(&f);
        assert!(matches!(mismatch, Err(Error::CompositionMismatch { .. })));
    }

    #[test]
    fn zero_is_a_unit_for_addition() {
        let f = Arrow::from(gen("f", "x", "y"));
        let zero = Sum::zero(Ob::new("x"), Ob::new("y"));
        assert_eq!(zero.add(&Sum::single(f.clone())).unwrap().into_single(), Some(f));
    }

    #[test]
    fn sums_require_parallel_terms() {
        let f = Arrow::from(gen("f", "x", "y"));
        let g = Arrow::from(gen("g", "x", "z"));
        assert!(matches!(
            Sum::new(vec![f, g], Ob::new("x"), Ob::new("y")),
            Err(Error::NotParallel { .. })
        ));
    }

    #[test]
    fn identity_functor_is_identity() {
        let f = Arrow::from(gen("f", "x", "y"))
            .then(&Arrow::from(gen("g", "y", "z")).bubble("neg"))
            .unwrap();
        assert_eq!(Functor::identity().apply(&f).unwrap(), f);
        let id = Arrow::id(Ob::new("x"));
        assert_eq!(Functor::identity().apply(&id).unwrap(), id);
    }

    #[test]
    fn missing_mapping_names_the_box() {
        let functor: Functor<FreeCategory, Ob> =
            Functor::from_maps(HashMap::from([(Ob::new("x"), Ob::new("x"))]), HashMap::new(), FreeCategory);
        let err = functor.apply(&Arrow::from(gen("f", "x", "y"))).unwrap_err();
        assert!(matches!(err, Error::MissingMapping(ref s) if s.contains('f')));
    }

    #[test]
    fn objects_parse_and_print() {
        for text in ["x", "x.r", "x.l.l", "long_name.r.r"] {
            assert_eq!(Ob::parse(text).unwrap().to_string(), text);
        }
        assert_eq!(Ob::parse("x.r.l"), Some(Ob::new("x")));
        assert_eq!(Ob::parse("x.q"), None);
        assert_eq!(Ob::new("x").r().l(), Ob::new("x"));
    }

    /// A random composable path over the objects `o0..o3` and the signature
    /// `f{i}{j}: oi -> oj`.
    fn path_strategy(start: usize) -> impl Strategy<Value = (Arrow, usize)> {
        proptest::collection::vec(0usize..4, 0..5).prop_map(move |targets| {
            let mut arrow = Arrow::id(Ob::new(format!("o{start}")));
            let mut at = start;
            for t in targets {
                let g = gen(&format!("f{at}{t}"), &format!("o{at}"), &format!("o{t}"));
                arrow = arrow.then(&Arrow::from(g)).unwrap();
                at = t;
            }
            (arrow, at)
        })
    }

    fn triple() -> impl Strategy<Value = (Arrow, Arrow, Arrow)> {
        (0usize..4).prop_flat_map(|a| {
            path_strategy(a).prop_flat_map(|(f, b)| {
                path_strategy(b).prop_flat_map(move |(g, c)| {
                    let f = f.clone();
                    path_strategy(c).prop_map(move |(h, _)| (f.clone(), g.clone(), h))
                })
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig {
            rng_seed: proptest::test_runner::RngSeed::Fixed(crate::random::seed()),
            ..ProptestConfig::default()
        })]

        #[test]
        fn composition_is_associative((f, g, h) in triple()) {
            let left = f.then(&g).unwrap().then(&h).unwrap();
            let right = f.then(&g.then(&h).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn dagger_is_contravariant((f, g, _h) in triple()) {
            let fg = f.then(&g).unwrap();
            prop_assert_eq!(fg.dagger(), g.dagger().then(&f.dagger()).unwrap());
            prop_assert_eq!(fg.dagger().dagger(), fg);
        }

        #[test]
        fn functors_preserve_composition((f, g, _h) in triple(), seed in 0u64..1000) {
            // Sends every generator f{i}{j} to a path of length depending on the seed.
            let functor = Functor::new(
                |x: &Ob| Ok(Ob::new(format!("F{}", x.name))),
                move |b: &Generator<Ob>| {
                    let dom = Ob::new(format!("F{}", b.dom.name));
                    let cod = Ob::new(format!("F{}", b.cod.name));
                    let mid = Ob::new(format!("M{seed}"));
                    let first = Generator::new(format!("{}a", b.name), dom, mid.clone());
                    let second = Generator::new(format!("{}b", b.name), mid, cod);
                    Arrow::from(first).then(&Arrow::from(second))
                },
                FreeCategory,
            );
            let image = functor.apply(&f.then(&g).unwrap()).unwrap();
            prop_assert_eq!(image, functor.apply(&f).unwrap().then(&functor.apply(&g).unwrap()).unwrap());
            let id = Arrow::id(f.dom().clone());
            prop_assert_eq!(functor.apply(&id).unwrap(), Arrow::id(functor.map_ob(f.dom()).unwrap()));
        }
    }
}
