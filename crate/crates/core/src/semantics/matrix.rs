use super::rig::Rig;
use crate::error::{unsupported, Error, Result};
use crate::free_category::Category;
use crate::planar::{Monoidal, Side};

/// A `dom × cod` matrix over a rig, stored row-major. Rows are indexed by the
/// domain, so composition `f ; g` is the matrix product `f · g`.
#[derive(Clone, PartialEq, Debug)]
pub struct RigMatrix<R> {
    dom: usize,
    cod: usize,
    entries: Vec<R>,
}

fn shape_error(name: &str, expected: impl ToString, found: impl ToString) -> Error {
    Error::ShapeMismatch {
        name: name.into(),
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

impl<R: Rig> RigMatrix<R> {
    pub fn new(dom: usize, cod: usize, entries: Vec<R>) -> Result<Self> {
        if entries.len() != dom * cod {
            return Err(shape_error("matrix", format!("{} entries", dom * cod), entries.len()));
        }
        Ok(RigMatrix { dom, cod, entries })
    }

    pub fn from_fn(dom: usize, cod: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let entries = (0..dom).flat_map(|i| (0..cod).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        RigMatrix { dom, cod, entries }
    }

    pub fn zeros(dom: usize, cod: usize) -> Self {
        RigMatrix {
            dom,
            cod,
            entries: vec![R::zero(); dom * cod],
        }
    }

    pub fn id(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.cod + j]
    }

    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.cod != other.dom {
            return Err(shape_error("composition", self.cod, other.dom));
        }
        let mut out = Self::zeros(self.dom, other.cod);
        for i in 0..self.dom {
            for k in 0..self.cod {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cod {
                    let e = &mut out.entries[i * other.cod + j];
                    *e = e.add(&a.mul(other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.dom, self.cod) != (other.dom, other.cod) {
            return Err(shape_error(
                "sum",
                format!("{}x{}", self.dom, self.cod),
                format!("{}x{}", other.dom, other.cod),
            ));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        Ok(RigMatrix { entries, ..*self })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_fn(self.dom + other.dom, self.cod + other.cod, |i, j| {
            match (i.checked_sub(self.dom), j.checked_sub(self.cod)) {
                (None, None) => self.get(i, j).clone(),
                (Some(i), Some(j)) => other.get(i, j).clone(),
                _ => R::zero(),
            }
        })
    }

    /// Kronecker product, with the index of `self` most significant.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.dom * other.dom, self.cod * other.cod, |i, j| {
            self.get(i / other.dom, j / other.cod).mul(other.get(i % other.dom, j % other.cod))
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cod, self.dom, |i, j| self.get(j, i).clone())
    }

    pub fn map(&self, f: impl Fn(&R) -> R) -> Self {
        RigMatrix {
            entries: self.entries.iter().map(f).collect(),
            ..*self
        }
    }

    pub fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        (self.dom, self.cod) == (other.dom, other.cod)
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a.approx_eq(b, tolerance))
    }

    /// The Kleene star `I + M + M² + ...` of a square matrix, by
    /// Floyd-Warshall elimination. For booleans this is the reflexive
    /// transitive closure.
    pub fn star(&self) -> Result<Self> {
        if self.dom != self.cod {
            return Err(shape_error("star", "a square matrix", format!("{}x{}", self.dom, self.cod)));
        }
        let n = self.dom;
        let mut m = self.clone();
        for k in 0..n {
            let s = m.get(k, k).star().ok_or_else(|| rig_without_star::<R>())?;
            let old = m.clone();
            for i in 0..n {
                let left = old.get(i, k).mul(&s);
                if left.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let e = &mut m.entries[i * n + j];
                    *e = e.add(&left.mul(old.get(k, j)));
                }
            }
        }
        m.add(&Self::id(n))
    }

    /// Feedback through the direct sum: with the traced block of size `n` on
    /// the given side, `A + B · D* · C` where `D` maps traced inputs to traced
    /// outputs.
    pub fn closure_trace(&self, n: usize, side: Side) -> Result<Self> {
        if n > self.dom || n > self.cod {
            return Err(shape_error(
                "trace",
                format!("at least {n} rows and columns"),
                format!("{}x{}", self.dom, self.cod),
            ));
        }
        let (a, b) = (self.dom - n, self.cod - n);
        let (rest_row, rest_col, fb_row, fb_col) = match side {
            Side::Left => (n, n, 0, 0),
            Side::Right => (0, 0, a, b),
        };
        let block = |rows: usize, cols: usize, r0: usize, c0: usize| {
            Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
        };
        let direct = block(a, b, rest_row, rest_col);
        let into_loop = block(a, n, rest_row, fb_col);
        let around = block(n, n, fb_row, fb_col);
        let out_of_loop = block(n, b, fb_row, rest_col);
        direct.add(&into_loop.then(&around.star()?)?.then(&out_of_loop)?)
    }
}

fn rig_without_star<R: Rig>() -> Error {
    Error::RigMismatch(format!("the {} rig has no Kleene star", R::NAME))
}

pub fn direct_sum<R: Rig>(a: &RigMatrix<R>, b: &RigMatrix<R>) -> RigMatrix<R> {
    a.direct_sum(b)
}

/// Trace over the first `n` rows and columns by reflexive transitive closure
/// of the feedback relation.
pub fn bool_closure_trace(m: &RigMatrix<bool>, n: usize) -> Result<RigMatrix<bool>> {
    m.closure_trace(n, Side::Left)
}

/// Matrices with direct sum as tensor. Objects are natural numbers and the
/// trace is the closure trace, so it needs a rig with a Kleene star.
#[derive(Clone, Copy, Debug, Default)]
pub struct MatrixCategory<R>(std::marker::PhantomData<R>);

impl<R: Rig> MatrixCategory<R> {
    pub fn new() -> Self {
        MatrixCategory(std::marker::PhantomData)
    }
}

impl<R: Rig> Category for MatrixCategory<R> {
    type Ob = usize;
    type Ar = RigMatrix<R>;

    fn id(&self, x: &usize) -> RigMatrix<R> {
        RigMatrix::id(*x)
    }
    fn then(&self, f: &RigMatrix<R>, g: &RigMatrix<R>) -> Result<RigMatrix<R>> {
        f.then(g)
    }
    fn dom(&self, f: &RigMatrix<R>) -> usize {
        f.dom
    }
    fn cod(&self, f: &RigMatrix<R>) -> usize {
        f.cod
    }
    fn dagger(&self, f: &RigMatrix<R>) -> Result<RigMatrix<R>> {
        Ok(f.transpose())
    }
    fn sum(&self, terms: Vec<RigMatrix<R>>, dom: &usize, cod: &usize) -> Result<RigMatrix<R>> {
        terms.iter().try_fold(RigMatrix::zeros(*dom, *cod), |acc, t| acc.add(t))
    }
    fn bubble(&self, arg: &RigMatrix<R>, name: &str) -> Result<RigMatrix<R>> {
        negate_entries(arg.entries(), name).map(|entries| RigMatrix { entries, ..*arg })
    }
}

pub(crate) fn negate_entries<R: Rig>(entries: &[R], name: &str) -> Result<Vec<R>> {
    entries
        .iter()
        .map(|x| x.negate())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::RigMismatch(format!("bubble {name}: the {} rig has no negation", R::NAME)))
}

impl<R: Rig> Monoidal for MatrixCategory<R> {
    fn unit(&self) -> usize {
        0
    }
    fn tensor_ob(&self, a: &usize, b: &usize) -> usize {
        a + b
    }
    fn tensor(&self, f: &RigMatrix<R>, g: &RigMatrix<R>) -> Result<RigMatrix<R>> {
        Ok(f.direct_sum(g))
    }
    fn swap(&self, a: &usize, b: &usize) -> Result<RigMatrix<R>> {
        let (a, b) = (*a, *b);
        Ok(RigMatrix::from_fn(a + b, a + b, |i, j| {
            let target = if i < a { b + i } else { i - a };
            if j == target {
                R::one()
            } else {
                R::zero()
            }
        }))
    }
    fn braid(&self, a: &usize, b: &usize, inverse: bool) -> Result<RigMatrix<R>> {
        if inverse {
            self.swap(b, a).map(|s| s.transpose())
        } else {
            self.swap(a, b)
        }
    }
    fn twist(&self, a: &usize, _inverse: bool) -> Result<RigMatrix<R>> {
        Ok(RigMatrix::id(*a))
    }
    fn spiders(&self, _legs_in: usize, _legs_out: usize, _x: &usize) -> Result<RigMatrix<R>> {
        Err(unsupported("spiders in matrices with direct sum"))
    }
    fn trace(&self, f: &RigMatrix<R>, traced: &usize, side: Side) -> Result<RigMatrix<R>> {
        f.closure_trace(*traced, side)
    }
}
