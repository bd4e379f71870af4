use super::{Diagram, DiagramBox, Layer, Side, Ty};
use crate::error::{unsupported, Result};
use crate::free_category::{Category, Functor, Ob, Sum};
use crate::structure::Structural;

/// A (pre)monoidal category, optionally with the structural morphisms that
/// functors send structural boxes to. Missing structure is reported as an
/// unsupported-structure error when a diagram needs it.
pub trait Monoidal: Category {
    fn unit(&self) -> Self::Ob;
    fn tensor_ob(&self, a: &Self::Ob, b: &Self::Ob) -> Self::Ob;
    fn tensor(&self, f: &Self::Ar, g: &Self::Ar) -> Result<Self::Ar>;

    fn swap(&self, _a: &Self::Ob, _b: &Self::Ob) -> Result<Self::Ar> {
        Err(unsupported("swap"))
    }

    /// The braiding `a ⊗ b -> b ⊗ a`, or its inverse `a ⊗ b -> b ⊗ a` read
    /// as the dagger of the braiding of `b` and `a`.
    fn braid(&self, _a: &Self::Ob, _b: &Self::Ob, _inverse: bool) -> Result<Self::Ar> {
        Err(unsupported("braid"))
    }

    fn twist(&self, _a: &Self::Ob, _inverse: bool) -> Result<Self::Ar> {
        Err(unsupported("twist"))
    }

    fn cup(&self, _left: &Self::Ob, _right: &Self::Ob) -> Result<Self::Ar> {
        Err(unsupported("cup"))
    }

    fn cap(&self, _left: &Self::Ob, _right: &Self::Ob) -> Result<Self::Ar> {
        Err(unsupported("cap"))
    }

    fn spiders(&self, _legs_in: usize, _legs_out: usize, _x: &Self::Ob) -> Result<Self::Ar> {
        Err(unsupported("spiders"))
    }

    fn copy(&self, x: &Self::Ob, legs: usize) -> Result<Self::Ar> {
        self.spiders(1, legs, x)
    }

    fn discard(&self, x: &Self::Ob) -> Result<Self::Ar> {
        self.spiders(1, 0, x)
    }

    /// `f ; left ⊗ g ⊗ right`. Categories with a cheaper way to act on part
    /// of a codomain override this.
    fn then_whiskered(&self, f: &Self::Ar, left: &Self::Ob, g: &Self::Ar, right: &Self::Ob) -> Result<Self::Ar> {
        let layer = self.tensor(&self.tensor(&self.id(left), g)?, &self.id(right))?;
        self.then(f, &layer)
    }

    /// Feedback of the `traced` wires on the given side of `f`.
    fn trace(&self, _f: &Self::Ar, _traced: &Self::Ob, _side: Side) -> Result<Self::Ar> {
        Err(unsupported("trace"))
    }
}

impl<C: Monoidal> Functor<C, Ty> {
    pub fn map_ty(&self, ty: &Ty) -> Result<C::Ob> {
        ty.objects().iter().try_fold(self.cod.unit(), |acc, ob| {
            Ok(self.cod.tensor_ob(&acc, &self.map_ob(ob)?))
        })
    }

    fn map_single(&self, ob: &Ob) -> Result<C::Ob> {
        self.map_ob(ob)
    }

    pub fn map_structural(&self, s: &Structural) -> Result<C::Ar> {
        let cod = &self.cod;
        match s {
            Structural::Swap { left, right } => cod.swap(&self.map_single(left)?, &self.map_single(right)?),
            Structural::Braid { left, right, inverse } => {
                cod.braid(&self.map_single(left)?, &self.map_single(right)?, *inverse)
            }
            Structural::Twist { ob, inverse } => cod.twist(&self.map_single(ob)?, *inverse),
            Structural::Cup { left, right } => cod.cup(&self.map_single(left)?, &self.map_single(right)?),
            Structural::Cap { left, right } => cod.cap(&self.map_single(left)?, &self.map_single(right)?),
            Structural::Spider { legs_in, legs_out, ob } => cod.spiders(*legs_in, *legs_out, &self.map_single(ob)?),
            Structural::Copy { ob, legs, is_dagger: false } => cod.copy(&self.map_single(ob)?, *legs),
            Structural::Copy { ob, legs, is_dagger: true } => cod.spiders(*legs, 1, &self.map_single(ob)?),
            Structural::Discard { ob, is_dagger: false } => cod.discard(&self.map_single(ob)?),
            Structural::Discard { ob, is_dagger: true } => cod.spiders(0, 1, &self.map_single(ob)?),
        }
    }

    pub fn map_box(&self, b: &DiagramBox) -> Result<C::Ar> {
        match b {
            DiagramBox::Gen(g) => self.map_generator(g),
            DiagramBox::Structural(s) => self.map_structural(s),
            DiagramBox::Bubble(bubble) => self.cod.bubble(&self.apply(&bubble.arg)?, &bubble.name),
            DiagramBox::Trace(t) => self.cod.trace(&self.apply(&t.body)?, &self.map_ty(&t.traced)?, t.side),
        }
    }

    /// The image of a layer: identities on the whiskers tensored with the
    /// images of the boxes, left to right.
    pub fn map_layer(&self, layer: &Layer) -> Result<C::Ar> {
        let mut image = self.cod.id(&self.map_ty(layer.left())?);
        for (b, right) in layer.boxes() {
            image = self.cod.tensor(&image, &self.map_box(b)?)?;
            image = self.cod.tensor(&image, &self.cod.id(&self.map_ty(right)?))?;
        }
        Ok(image)
    }

    pub fn apply(&self, d: &Diagram) -> Result<C::Ar> {
        let mut result = self.cod.id(&self.map_ty(d.dom())?);
        for layer in d.layers() {
            result = match layer.single() {
                Some((b, _)) => {
                    let (left, right) = (self.map_ty(layer.left())?, self.map_ty(layer.right())?);
                    self.cod.then_whiskered(&result, &left, &self.map_box(b)?, &right)?
                }
                None => self.cod.then(&result, &self.map_layer(layer)?)?,
            };
        }
        Ok(result)
    }

    pub fn apply_sum(&self, s: &Sum<Diagram>) -> Result<C::Ar> {
        let terms = s.terms().iter().map(|t| self.apply(t)).collect::<Result<Vec<_>>>()?;
        self.cod.sum(terms, &self.map_ty(s.dom())?, &self.map_ty(s.cod())?)
    }
}
