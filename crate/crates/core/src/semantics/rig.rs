use std::fmt::{self, Debug, Display};

use num_bigint::BigInt;
use serde_json::Value;

use crate::error::{Error, Result};

/// A semiring: two monoid structures, with `mul` distributing over `add` and
/// `zero` absorbing.
pub trait Rig: Clone + PartialEq + Debug + Send + Sync + 'static {
    const NAME: &'static str;
    /// Whether [`Rig::negate`] is defined, making bubbles evaluable.
    const HAS_NEGATION: bool = false;
    const IS_COMMUTATIVE: bool = true;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    fn negate(&self) -> Option<Self> {
        None
    }

    /// The Kleene star `1 + x + x² + ...`, when the rig is closed.
    fn star(&self) -> Option<Self> {
        None
    }

    fn approx_eq(&self, other: &Self, _tolerance: f64) -> bool {
        self == other
    }

    fn from_json(value: &Value) -> Result<Self>;
    fn to_json(&self) -> Value;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

fn bad_entry(rig: &str, value: &Value) -> Error {
    Error::Schema {
        path: "entry".into(),
        message: format!("{value} is not a {rig} value"),
    }
}

impl Rig for bool {
    const NAME: &'static str = "bool";
    const HAS_NEGATION: bool = true;

    fn zero() -> Self {
        false
    }
    fn one() -> Self {
        true
    }
    fn add(&self, other: &Self) -> Self {
        *self || *other
    }
    fn mul(&self, other: &Self) -> Self {
        *self && *other
    }
    fn negate(&self) -> Option<Self> {
        Some(!*self)
    }
    fn star(&self) -> Option<Self> {
        Some(true)
    }
    fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::Bool(b) => Ok(*b),
            Value::Number(n) if n.as_u64() == Some(0) => Ok(false),
            Value::Number(n) if n.as_u64() == Some(1) => Ok(true),
            _ => Err(bad_entry(Self::NAME, value)),
        }
    }
    fn to_json(&self) -> Value {
        Value::Bool(*self)
    }
}

impl Rig for f64 {
    const NAME: &'static str = "float";

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        (self - other).abs() <= tolerance
    }
    fn from_json(value: &Value) -> Result<Self> {
        value.as_f64().ok_or_else(|| bad_entry(Self::NAME, value))
    }
    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self).map_or(Value::Null, Value::Number)
    }
}

impl Rig for BigInt {
    const NAME: &'static str = "int";

    fn zero() -> Self {
        BigInt::from(0)
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::Number(n) if n.is_i64() => Ok(BigInt::from(n.as_i64().unwrap())),
            Value::Number(n) if n.is_u64() => Ok(BigInt::from(n.as_u64().unwrap())),
            Value::String(s) => s.parse().map_err(|_| bad_entry(Self::NAME, value)),
            _ => Err(bad_entry(Self::NAME, value)),
        }
    }
    fn to_json(&self) -> Value {
        match i64::try_from(self) {
            Ok(n) => Value::from(n),
            Err(_) => Value::String(self.to_string()),
        }
    }
}

/// Univariate polynomials with integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn new(coefficients: impl IntoIterator<Item = impl Into<BigInt>>) -> Self {
        let mut c: Vec<BigInt> = coefficients.into_iter().map(Into::into).collect();
        while c.last().is_some_and(|x| *x == BigInt::from(0)) {
            c.pop();
        }
        Poly(c)
    }

    /// The indeterminate.
    pub fn var() -> Self {
        Poly::new([0, 1])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::new([c.into()])
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::from(0), |acc, c| acc * x + c)
    }
}

impl Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != BigInt::from(0))
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}t"),
                _ => format!("{c}t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl Rig for Poly {
    const NAME: &'static str = "poly";

    fn zero() -> Self {
        Poly(Vec::new())
    }
    fn one() -> Self {
        Poly::constant(1)
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let zero = BigInt::from(0);
        Poly::new((0..n).map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero)))
    }
    fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return Poly::zero();
        }
        let mut c = vec![BigInt::from(0); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
    fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::Array(items) => Ok(Poly::new(items.iter().map(BigInt::from_json).collect::<Result<Vec<_>>>()?)),
            _ => Ok(Poly::constant(BigInt::from_json(value)?)),
        }
    }
    fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(Rig::to_json).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn laws<R: Rig>(a: &R, b: &R, c: &R) {
        assert_eq!(a.add(&b.add(c)), a.add(b).add(c));
        assert_eq!(a.mul(&b.mul(c)), a.mul(b).mul(c));
        assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
        assert_eq!(a.add(b).mul(c), a.mul(c).add(&b.mul(c)));
        assert_eq!(a.mul(&R::zero()), R::zero());
        assert_eq!(R::zero().mul(a), R::zero());
        assert_eq!(a.add(&R::zero()), *a);
        assert_eq!(a.mul(&R::one()), *a);
        if R::IS_COMMUTATIVE {
            assert_eq!(a.add(b), b.add(a));
            assert_eq!(a.mul(b), b.mul(a));
        }
    }

    fn poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(-5i64..5, 0..4).prop_map(Poly::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig {
            rng_seed: proptest::test_runner::RngSeed::Fixed(crate::random::seed()),
            ..ProptestConfig::default()
        })]

        #[test]
        fn bool_laws(a: bool, b: bool, c: bool) { laws(&a, &b, &c) }

        #[test]
        fn int_laws(a in -100i64..100, b in -100i64..100, c in -100i64..100) {
            laws(&BigInt::from(a), &BigInt::from(b), &BigInt::from(c))
        }

        #[test]
        fn poly_laws(a in poly(), b in poly(), c in poly()) { laws(&a, &b, &c) }

        #[test]
        fn float_laws_on_integers(a in -100i32..100, b in -100i32..100, c in -100i32..100) {
            laws(&f64::from(a), &f64::from(b), &f64::from(c))
        }
    }

    #[test]
    fn poly_arithmetic() {
        let t = Poly::var();
        let p = t.add(&Poly::one()).mul(&t.add(&Poly::one()));
        assert_eq!(p, Poly::new([1, 2, 1]));
        assert_eq!(p.eval(&BigInt::from(3)), BigInt::from(16));
        assert_eq!(p.to_string(), "1 + 2t + 1t^2");
        assert_eq!(Poly::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn json_entries() {
        assert!(bool::from_json(&Value::from(1)).unwrap());
        assert!(bool::from_json(&Value::from(2)).is_err());
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(BigInt::from_json(&big.to_json()).unwrap(), big);
    }
}
